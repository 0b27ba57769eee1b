// polykit: exact-arithmetic toolkit for lattice-polytope column calculus,
// doubling spectra, elementary-automorphism identities and the balanced
// polygon classification.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <polykit/classify.hpp>
#include <polykit/io.hpp>
#include <polykit/steinberg.hpp>

using namespace polykit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;

struct Options {
  bool json = false;
  unsigned long long seed = 1;
};

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i)
    s += v[i].to_string() + (i + 1 < v.size() ? "," : "");
  return s + ")";
}

std::string facet_str(const Facet& f) {
  std::string s = "(";
  for (size_t i = 0; i < f.a.size(); ++i)
    s += f.a[i].to_string() + (i + 1 < f.a.size() ? "," : "");
  return s + " | " + f.b.to_string() + ")";
}

Json columns_json(const Polytope& p, const ColumnTable& t) {
  Json cols = Json::array();
  for (const ColumnVector& c : t.columns) {
    Json cj;
    cj["v"] = vec_json(c.v);
    cj["base_facet"] = c.base_facet;
    cols.push_back(cj);
  }
  Json prods = Json::array();
  for (const auto& [uv, k] : t.products) {
    Json pj;
    pj["u"] = uv.first;
    pj["v"] = uv.second;
    pj["uv"] = k;
    prods.push_back(pj);
  }
  Json doc;
  doc["columns"] = cols;
  doc["products"] = prods;
  Json fs = Json::array();
  for (const Facet& f : p.facets) {
    Json fj;
    fj["a"] = vec_json(f.a);
    fj["b"] = f.b.to_ll();
    fs.push_back(fj);
  }
  doc["facets"] = fs;
  return doc;
}

Polytope load(const std::string& path) {
  std::string warning;
  Polytope p = load_polytope(path, &warning);
  if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
  return p;
}

void emit(const Options& opt, const Json& doc, const std::string& text) {
  if (opt.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_cols(const Options& opt, const std::string& file) {
  Polytope p = load(file);
  ColumnTable t = column_vectors(p);
  Json doc = columns_json(p, t);
  doc["command"] = "cols";
  std::string text = "Col(P): " + std::to_string(t.columns.size()) +
                     " column vector(s)\n";
  for (const ColumnVector& c : t.columns)
    text += "  " + vec_str(c.v) + "  base facet " +
            std::to_string(c.base_facet) + " " +
            facet_str(p.facets[c.base_facet]) + "\n";
  if (t.columns.empty()) text += "  note: Col(P) is empty\n";
  emit(opt, doc, text);
  return kExitOk;
}

int cmd_products(const Options& opt, const std::string& file) {
  Polytope p = load(file);
  ColumnTable t = column_vectors(p);
  Json doc = columns_json(p, t);
  doc["command"] = "products";
  std::string text =
      "partial products: " + std::to_string(t.products.size()) + "\n";
  for (const auto& [uv, k] : t.products)
    text += "  " + vec_str(t.columns[uv.first].v) + " * " +
            vec_str(t.columns[uv.second].v) + " = " + vec_str(t.columns[k].v) +
            "\n";
  if (t.columns.empty()) text += "  note: Col(P) is empty\n";
  emit(opt, doc, text);
  return kExitOk;
}

int cmd_cb(const Options& opt, const std::string& file) {
  Polytope p = load(file);
  ColumnTable t = column_vectors(p);
  if (t.columns.empty()) {
    emit(opt, Json{{"command", "cb"}, {"error", "empty Col"}},
         "note: Col(P) is empty; no CB matrix\n");
    return kExitPrecondition;
  }
  CBMatrix cb = cb_matrix(p, t);
  Json doc;
  doc["command"] = "cb";
  Json rows = Json::array();
  for (const Vec& v : cb.row_vectors) rows.push_back(vec_json(v));
  doc["rows"] = rows;
  doc["base_facets"] = cb.base_facets;
  Json ent = Json::array();
  for (const auto& row : cb.entries.m) ent.push_back(vec_json(row));
  doc["entries"] = ent;
  std::string text = "CB(P): " + std::to_string(cb.entries.rows) + " x " +
                     std::to_string(cb.entries.cols) + "\n";
  for (size_t r = 0; r < cb.entries.rows; ++r) {
    text += "  " + vec_str(cb.row_vectors[r]) + " :";
    for (size_t c = 0; c < cb.entries.cols; ++c)
      text += " " + cb.entries.m[r][c].to_string();
    text += "\n";
  }
  emit(opt, doc, text);
  return kExitOk;
}

int cmd_double(const Options& opt, const std::string& file, size_t facet,
               const std::string& out) {
  Polytope p = load(file);
  ColumnTable t = column_vectors(p);
  DoubledPolytope d = double_along(p, facet);
  LiftedColumns lift = lift_columns(d, t);
  if (!d.equations_hold()) return kExitVerifyFail;
  Json doc = emit_polytope(d.result);
  doc["provenance"] = {{"facet", facet}, {"pivot", vec_json(d.pivot)}};
  std::string text = "doubled along facet " + std::to_string(facet) + " " +
                     facet_str(p.facets[facet]) + "; dim " +
                     std::to_string(d.result.dim) + ", " +
                     std::to_string(d.result.facets.size()) + " facets\n";
  if (!lift.complete) {
    size_t geo = column_vectors(d.result).columns.size();
    text += "warning: extra columns beyond the lifted set (" +
            std::to_string(geo) + " vs " +
            std::to_string(lift.table.columns.size()) + " lifted)\n";
    doc["warning"] = "extra columns";
  }
  if (!out.empty()) {
    std::ofstream os(out);
    os << doc.dump(2) << "\n";
    text += "wrote " + out + "\n";
    std::cout << text;
  } else {
    emit(opt, doc, text + doc.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_spectrum(const Options& opt, const std::string& file, size_t depth,
                 const std::string& outdir) {
  Polytope p = load(file);
  Spectrum s = spectrum(p, depth);
  Json ledger = Json::array();
  for (const auto& e : s.ledger.entries) {
    Json ej;
    ej["born_step"] = e.born_step;
    ej["vector"] = vec_json(e.seed_vector);
    ej["decomposed_at"] = e.decomposed_at;
    ledger.push_back(ej);
  }
  std::string text;
  Json doc;
  doc["command"] = "spectrum";
  doc["depth"] = depth;
  Json nodes = Json::array();
  for (const SpectrumNode& node : s.nodes) {
    Json nj = emit_spectrum_node(node);
    text += "step " + std::to_string(node.step) + ": dim " +
            std::to_string(node.polytope().dim) + ", " +
            std::to_string(node.table().columns.size()) + " columns\n";
    if (!outdir.empty()) {
      std::filesystem::create_directories(outdir);
      std::string path = outdir + "/node_" + std::to_string(node.step) + ".json";
      std::ofstream os(path);
      os << nj.dump(2) << "\n";
      text += "  wrote " + path + "\n";
    }
    nodes.push_back(nj);
  }
  doc["nodes"] = nodes;
  doc["ledger"] = ledger;
  if (!outdir.empty()) {
    std::string path = outdir + "/ledger.json";
    std::ofstream os(path);
    os << ledger.dump(2) << "\n";
    text += "wrote " + path + "\n";
  }
  emit(opt, doc, text);
  return kExitOk;
}

int cmd_classify(const Options& opt, const std::string& file) {
  Polytope p = load(file);
  if (p.dim != 2) {
    std::cerr << "classify: input is not a polygon\n";
    return kExitUsage;
  }
  PolygonClass c = classify_polygon(p);
  Json doc;
  doc["command"] = "classify";
  doc["class"] = tag_name(c.tag);
  doc["column_count"] = c.column_count;
  Json wit = Json::array();
  for (const Vec& v : c.witness) wit.push_back(vec_json(v));
  doc["witness"] = wit;
  std::string text = std::string("class ") + tag_name(c.tag) + " (" +
                     std::to_string(c.column_count) + " column(s))\n";
  for (const Vec& v : c.witness) text += "  " + vec_str(v) + "\n";
  emit(opt, doc, text);
  return kExitOk;
}

int cmd_equiv(const Options& opt, const std::string& f1, const std::string& f2,
              const std::string& mode) {
  Polytope p = load(f1), q = load(f2);
  Json doc;
  doc["command"] = "equiv";
  doc["mode"] = mode;
  std::string text;
  if (mode == "proj") {
    bool eq = projectively_equivalent(p, q);
    doc["equivalent"] = eq;
    text = std::string("projectively equivalent: ") + (eq ? "yes" : "no") + "\n";
  } else {
    auto mu = e_equivalent(p, q);
    doc["equivalent"] = mu.has_value();
    text = std::string("E-equivalent: ") + (mu ? "yes" : "no") + "\n";
    if (mu) {
      doc["bijection"] = *mu;
      ColumnTable tp = column_vectors(p), tq = column_vectors(q);
      for (size_t i = 0; i < mu->size(); ++i)
        text += "  " + vec_str(tp.columns[i].v) + " -> " +
                vec_str(tq.columns[(*mu)[i]].v) + "\n";
    }
  }
  emit(opt, doc, text);
  return kExitOk;
}

// --- verify subsuites ------------------------------------------------------

struct VerifyOut {
  Json lines = Json::array();
  std::string text;
  bool all_pass = true;
  void add(const std::string& name, bool pass, const std::string& extra = "") {
    Json l;
    l["check"] = name;
    l["pass"] = pass;
    if (!extra.empty()) l["detail"] = extra;
    lines.push_back(l);
    text += std::string(pass ? "pass" : "FAIL") + "  " + name +
            (extra.empty() ? "" : "  [" + extra + "]") + "\n";
    all_pass &= pass;
  }
};

template <class F>
void for_scalar_pairs(const RingSpec& rs, unsigned long long seed, F&& f) {
  // enumerate all pairs over small finite rings, sample otherwise
  if (rs.kind == RingSpec::Kind::Mod && rs.modulus <= Int(6)) {
    long long m = rs.modulus.to_ll();
    for (long long a = 0; a < m; ++a)
      for (long long b = 0; b < m; ++b) f(Int(a), Int(b));
    return;
  }
  unsigned long long state = seed;
  auto rnd = [&]() {
    state += 0x9e3779b97f4a7c15ull;
    unsigned long long z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  for (int i = 0; i < 16; ++i)
    f(Int(static_cast<long long>(rnd() % 9) - 4),
      Int(static_cast<long long>(rnd() % 9) - 4));
}

int verify_comrel_cmd(const Options& opt, const std::string& file,
                      const RingSpec& rs) {
  Polytope p = load(file);
  ColumnTable t = column_vectors(p);
  if (t.columns.empty()) {
    std::cerr << "verify comrel: Col(P) is empty\n";
    return kExitPrecondition;
  }
  VerifyOut out;
  auto run_pair = [&](const ColumnVector& u, const ColumnVector& v) {
    std::string name = "comrel " + vec_str(u.v) + "," + vec_str(v.v);
    if (rs.kind == RingSpec::Kind::Poly) {
      LaurentRing ring(rs.vars);
      ComrelReport rep = verify_comrel(p, ring, u, v, ring.var(rs.vars[0]),
                                       ring.var(rs.vars.at(1)));
      out.add(name, rep.pass, "branch " + std::to_string(rep.branch));
    } else if (rs.kind == RingSpec::Kind::Mod) {
      ModRing ring{rs.modulus};
      bool pass = true;
      for_scalar_pairs(rs, opt.seed, [&](const Int& a, const Int& b) {
        pass &= verify_comrel(p, ring, u, v, ring.from_int(a), ring.from_int(b))
                    .pass;
      });
      out.add(name, pass);
    } else {
      IntRing ring;
      bool pass = true;
      for_scalar_pairs(rs, opt.seed, [&](const Int& a, const Int& b) {
        pass &= verify_comrel(p, ring, u, v, a, b).pass;
      });
      out.add(name, pass);
    }
  };
  for (const ColumnVector& u : t.columns)
    for (const ColumnVector& v : t.columns) {
      if (vec_is_zero(vec_add(u.v, v.v))) continue;
      run_pair(u, v);
    }
  Json doc;
  doc["command"] = "verify";
  doc["check"] = "comrel";
  doc["lines"] = out.lines;
  doc["pass"] = out.all_pass;
  emit(opt, doc, out.text);
  return out.all_pass ? kExitOk : kExitVerifyFail;
}

int verify_pi_cmd(const Options& opt, const std::string& file, size_t depth) {
  Polytope p = load(file);
  VerifyOut out;
  auto run_node = [&](const Polytope& q, const ColumnTable& t,
                      const std::string& label) {
    PiCheckReport rep = pi_check(q, t, presentation(q, t));
    for (const auto& line : rep.lines)
      out.add(label + " " + line.relation, line.pass);
  };
  ColumnTable t0 = column_vectors(p);
  if (t0.columns.empty()) {
    std::cerr << "verify pi: Col(P) is empty\n";
    return kExitPrecondition;
  }
  run_node(p, t0, "node0");
  if (depth > 0) {
    Spectrum s = spectrum(p, depth);
    for (const SpectrumNode& node : s.nodes)
      run_node(node.polytope(), node.table(),
               "node" + std::to_string(node.step));
  }
  Json doc;
  doc["command"] = "verify";
  doc["check"] = "pi";
  doc["lines"] = out.lines;
  doc["pass"] = out.all_pass;
  emit(opt, doc, out.text);
  return out.all_pass ? kExitOk : kExitVerifyFail;
}

int verify_afemb_cmd(const Options& opt, const std::string& file) {
  Polytope p = load(file);
  ColumnTable t = column_vectors(p);
  if (t.columns.empty()) {
    std::cerr << "verify afemb: Col(P) is empty\n";
    return kExitPrecondition;
  }
  VerifyOut out;
  std::set<size_t> bases;
  for (const ColumnVector& c : t.columns) bases.insert(c.base_facet);
  for (size_t f : bases) {
    AfembReport rep = same_base_embedding_check(p, f, opt.seed);
    out.add("afemb facet " + std::to_string(f), rep.pass());
  }
  Json doc;
  doc["command"] = "verify";
  doc["check"] = "afemb";
  doc["lines"] = out.lines;
  doc["pass"] = out.all_pass;
  emit(opt, doc, out.text);
  return out.all_pass ? kExitOk : kExitVerifyFail;
}

int verify_trivcen_star_cmd(const Options& opt, const std::string& file) {
  Polytope p = load(file);
  ColumnTable t = column_vectors(p);
  if (t.columns.empty()) {
    std::cerr << "verify trivcen-star: Col(P) is empty\n";
    return kExitPrecondition;
  }
  VerifyOut out;
  for (const ColumnVector& c : t.columns) {
    ToricStarReport rep = toric_conjugation_check(p, c);
    out.add("trivcen-star " + vec_str(c.v), rep.pass(),
            rep.ratio_independent ? "" : "ratio depends on z");
  }
  Json doc;
  doc["command"] = "verify";
  doc["check"] = "trivcen-star";
  doc["lines"] = out.lines;
  doc["pass"] = out.all_pass;
  emit(opt, doc, out.text);
  return out.all_pass ? kExitOk : kExitVerifyFail;
}

int verify_welldef_cmd(const Options& opt, const std::string& file) {
  Polytope p = load(file);
  VerifyOut out;
  for (size_t f1 = 0; f1 < p.facets.size(); ++f1)
    for (size_t f2 = f1 + 1; f2 < p.facets.size(); ++f2) {
      bool ok = reorder_iso_verified(p, {f1, f2}, {1, 0});
      out.add("welldef facets " + std::to_string(f1) + "," +
                  std::to_string(f2),
              ok);
    }
  Json doc;
  doc["command"] = "verify";
  doc["check"] = "welldef";
  doc["lines"] = out.lines;
  doc["pass"] = out.all_pass;
  emit(opt, doc, out.text);
  return out.all_pass ? kExitOk : kExitVerifyFail;
}

int verify_colbal_cmd(const Options& opt, const std::string& file) {
  Polytope p = load(file);
  ColumnTable t = column_vectors(p);
  VerifyOut out;
  for (const Facet& f : p.facets) {
    DoubledPolytope d = double_along(p, f.id);
    LiftedColumns lift = lift_columns(d, t);
    std::vector<Vec> lifted, geo;
    for (const ColumnVector& c : lift.table.columns) lifted.push_back(c.v);
    for (const ColumnVector& c : column_vectors(d.result).columns)
      geo.push_back(c.v);
    bool subset = std::includes(geo.begin(), geo.end(), lifted.begin(),
                                lifted.end(), LexLess{});
    bool pass = lift.complete ? lifted == geo : subset;
    out.add("colbal facet " + std::to_string(f.id), pass,
            lift.complete ? "complete"
                          : "incomplete lift (" + std::to_string(geo.size()) +
                                " vs " + std::to_string(lifted.size()) + ")");
  }
  Json doc;
  doc["command"] = "verify";
  doc["check"] = "colbal";
  doc["lines"] = out.lines;
  doc["pass"] = out.all_pass;
  emit(opt, doc, out.text);
  return out.all_pass ? kExitOk : kExitVerifyFail;
}

int verify_nfiltun_cmd(const Options& opt, const std::string& file,
                       const RingSpec& rs) {
  Polytope p = load(file);
  ColumnTable t = column_vectors(p);
  std::optional<std::pair<ColumnVector, ColumnVector>> pair;
  for (const ColumnVector& c : t.columns) {
    auto neg = t.index_of(vec_neg(c.v));
    if (neg) pair = {c, t.columns[*neg]};
  }
  if (!pair) {
    std::cerr << "verify nfiltun: needs an invertible column pair\n";
    return kExitPrecondition;
  }
  DoubledPolytope d = double_along(p, pair->first.base_facet);
  const Polytope& q = d.result;
  ColumnTable tq = column_vectors(q);
  ColumnVector v = tq.columns[*tq.index_of(d.embed_minus(pair->first.v))];
  ColumnVector mv = tq.columns[*tq.index_of(d.embed_minus(pair->second.v))];
  std::vector<Vec> minus_copy;
  for (const Vec& x : q.lattice_points)
    if (q.facets[d.minus_facet].height(x).is_zero()) minus_copy.push_back(x);

  bool global = false, restricted = false, two_is_zero = false;
  auto run = [&](auto ring) {
    AutoWord<decltype(ring)> eps = weyl_square_word(ring, v, mv);
    AutoWord<decltype(ring)> id;
    global = words_equal(q, ring, eps, id);
    restricted = words_agree_on(q, ring, eps, id, minus_copy,
                                comm_convention().left_to_right);
    two_is_zero = ring.is_zero(ring.from_int(Int(2)));
  };
  if (rs.kind == RingSpec::Kind::Mod)
    run(ModRing{rs.modulus});
  else if (rs.kind == RingSpec::Kind::Poly)
    run(LaurentRing{rs.vars});
  else
    run(IntRing{});

  VerifyOut out;
  out.add("restriction to the parent copy is the identity", restricted);
  out.add(std::string("global identity iff 2 = 0 (here 2 ") +
              (two_is_zero ? "= 0)" : "!= 0)"),
          global == two_is_zero);
  Json doc;
  doc["command"] = "verify";
  doc["check"] = "nfiltun";
  doc["global_identity"] = global;
  doc["restricted_identity"] = restricted;
  doc["lines"] = out.lines;
  doc["pass"] = out.all_pass;
  emit(opt, doc, out.text);
  return out.all_pass ? kExitOk : kExitVerifyFail;
}

int verify_matrix_model_cmd(const Options& opt, const std::string& cls,
                            size_t j, size_t t, const RingSpec& rs) {
  if (cls.size() != 1 || (cls != "b" && cls != "c" && cls != "d")) {
    std::cerr << "verify matrix-model: class must be b, c or d\n";
    return kExitUsage;
  }
  IndexModel im = index_model(cls[0], j, t);
  VerifyOut out;
  out.add("relations (symbolic)", model_relations_hold_symbolic(im));
  if (rs.kind == RingSpec::Kind::Mod) {
    ModRing ring{rs.modulus};
    bool pass = true;
    for_scalar_pairs(rs, opt.seed, [&](const Int& a, const Int& b) {
      pass &= model_relations_hold_over(im, ring, ring.from_int(a),
                                        ring.from_int(b));
    });
    out.add("relations over mod:" + rs.modulus.to_string(), pass);
  } else if (rs.kind == RingSpec::Kind::Integers) {
    IntRing ring;
    bool pass = true;
    for_scalar_pairs(rs, opt.seed, [&](const Int& a, const Int& b) {
      pass &= model_relations_hold_over(im, ring, a, b);
    });
    out.add("relations over int", pass);
  }
  LaurentRing lring({"lambda", "mu"});
  bool shape = true;
  for (const auto& [i, k] : im.gens)
    shape &= im.matrix_in_shape(lring,
                                im.realize(lring, i, k, lring.var("lambda")));
  out.add("block shape", shape);
  if (j >= 2) {
    UvReport uv = uv_subgroup_checks(cls[0], j, t);
    out.add("U/V commute", uv.commute);
    out.add("U/V injective", uv.injective);
    out.add("centrality (B must be zero)", uv.centrality);
  }
  Json doc;
  doc["command"] = "verify";
  doc["check"] = "matrix-model";
  doc["class"] = cls;
  doc["j"] = j;
  doc["t"] = t;
  doc["lines"] = out.lines;
  doc["pass"] = out.all_pass;
  emit(opt, doc, out.text);
  return out.all_pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polykit: column calculus of lattice polytopes"};
  app.require_subcommand(1);
  Options opt;
  if (const char* env = std::getenv("POLYKIT_SEED"))
    opt.seed = std::strtoull(env, nullptr, 10);
  app.add_flag("--json", opt.json, "emit the structured report");
  app.add_option("--seed", opt.seed, "seed for sampled scalar tuples");

  std::string file, file2, out_path, outdir, mode = "e", check, cls = "b";
  std::string ring_str;
  size_t facet = 0, depth = 1, jtrunc = 2, tparam = 1;

  auto* c_cols = app.add_subcommand("cols", "column vectors with base facets");
  c_cols->add_option("file", file)->required();
  auto* c_prod = app.add_subcommand("products", "the partial product table");
  c_prod->add_option("file", file)->required();
  auto* c_cb = app.add_subcommand("cb", "the CB matrix");
  c_cb->add_option("file", file)->required();
  auto* c_dbl = app.add_subcommand("double", "double along a facet");
  c_dbl->add_option("file", file)->required();
  c_dbl->add_option("--facet", facet, "facet id")->required();
  c_dbl->add_option("--out", out_path, "output file");
  auto* c_spec = app.add_subcommand("spectrum", "doubling spectrum");
  c_spec->add_option("file", file)->required();
  c_spec->add_option("--depth", depth, "number of doublings")->required();
  c_spec->add_option("--outdir", outdir, "directory for node files");
  auto* c_ver = app.add_subcommand("verify", "run a named verification suite");
  c_ver->add_option("check", check,
                    "comrel|pi|afemb|trivcen-star|welldef|colbal|nfiltun|"
                    "matrix-model")
      ->required();
  c_ver->add_option("file", file, "polytope file (not for matrix-model)");
  c_ver->add_option("--ring", ring_str, "int | mod:<m> | poly:<vars>");
  c_ver->add_option("--class", cls, "polygon class b|c|d (matrix-model)");
  c_ver->add_option("--j", jtrunc, "truncation (matrix-model)");
  c_ver->add_option("--t", tparam, "class d parameter (matrix-model)");
  c_ver->add_option("--depth", depth, "spectrum depth (pi)");
  auto* c_cls = app.add_subcommand("classify", "polygon classification");
  c_cls->add_option("file", file)->required();
  auto* c_eq = app.add_subcommand("equiv", "E- or projective equivalence");
  c_eq->add_option("fileP", file)->required();
  c_eq->add_option("fileQ", file2)->required();
  c_eq->add_option("--mode", mode, "e | proj")
      ->check(CLI::IsMember({"e", "proj"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_cols->parsed()) return cmd_cols(opt, file);
    if (c_prod->parsed()) return cmd_products(opt, file);
    if (c_cb->parsed()) return cmd_cb(opt, file);
    if (c_dbl->parsed()) return cmd_double(opt, file, facet, out_path);
    if (c_spec->parsed()) return cmd_spectrum(opt, file, depth, outdir);
    if (c_cls->parsed()) return cmd_classify(opt, file);
    if (c_eq->parsed()) return cmd_equiv(opt, file, file2, mode);
    if (c_ver->parsed()) {
      RingSpec rs;
      rs.kind = RingSpec::Kind::Poly;
      rs.vars = {"lambda", "mu"};
      if (check == "nfiltun" || check == "matrix-model")
        rs.kind = RingSpec::Kind::Integers;
      if (!ring_str.empty()) {
        auto parsed = RingSpec::parse(ring_str);
        if (!parsed) {
          std::cerr << "unknown ring descriptor: " << ring_str << "\n";
          return kExitUsage;
        }
        rs = *parsed;
      }
      if (rs.kind == RingSpec::Kind::Poly && rs.vars.size() < 2)
        rs.vars.push_back(rs.vars.empty() ? "lambda" : "mu");
      if (check == "comrel") return verify_comrel_cmd(opt, file, rs);
      if (check == "pi") return verify_pi_cmd(opt, file, depth);
      if (check == "afemb") return verify_afemb_cmd(opt, file);
      if (check == "trivcen-star") return verify_trivcen_star_cmd(opt, file);
      if (check == "welldef") return verify_welldef_cmd(opt, file);
      if (check == "colbal") return verify_colbal_cmd(opt, file);
      if (check == "nfiltun") return verify_nfiltun_cmd(opt, file, rs);
      if (check == "matrix-model")
        return verify_matrix_model_cmd(opt, cls, jtrunc, tparam, rs);
      std::cerr << "unknown check: " << check << "\n";
      return kExitUsage;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const AlgebraError& e) {
    std::cerr << "internal verification fault: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitUsage;
}
