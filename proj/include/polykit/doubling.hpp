#ifndef POLYKIT_DOUBLING_HPP
#define POLYKIT_DOUBLING_HPP

#include <deque>
#include <map>
#include <optional>

#include "columns.hpp"

namespace polykit {

/// The doubling P^□_F in the concrete pivot model: minus copy (x,0), bar copy
/// (x - ht_F(x) p', ht_F(x)) with <a_F, p'> = 1, inside Z^{dim+1}.
struct DoubledPolytope {
  Polytope parent;
  size_t facet_used = 0;
  Vec pivot;
  Polytope result;
  std::map<size_t, size_t> psi;  // parent facet id (!= used) -> result facet id
  size_t minus_facet = 0;        // result facet supported by the parent copy
  size_t bar_facet = 0;          // result facet supported by the rotated copy
  ColumnVector delta_plus, delta_minus;

  Vec embed_minus(const Vec& x) const {
    Vec y = x;
    y.push_back(Int(0));
    return y;
  }
  Vec embed_bar(const Vec& x) const {
    Int h = parent.facets[facet_used].height(x);
    Vec y(x.size() + 1);
    for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] - h * pivot[i];
    y[x.size()] = h;
    return y;
  }
  /// linear part of the bar embedding, on difference vectors
  Vec bar_linear(const Vec& v) const {
    Int h = parent.facets[facet_used].pair(v);
    Vec y(v.size() + 1);
    for (size_t i = 0; i < v.size(); ++i) y[i] = v[i] - h * pivot[i];
    y[v.size()] = h;
    return y;
  }

  /// The three doubling equations, checked numerically.
  bool equations_hold() const {
    const Facet& dp_base = result.facets[delta_plus.base_facet];
    (void)dp_base;
    for (const auto& [g, rg] : psi) {
      if (!result.facets[rg].pair(delta_plus.v).is_zero()) return false;
      if (!result.facets[rg].pair(delta_minus.v).is_zero()) return false;
      for (const Vec& z : parent.lattice_points)  // parent pairings survive
        if (parent.facets[g].pair(z) != result.facets[rg].pair(embed_minus(z)))
          return false;
    }
    if (result.facets[minus_facet].pair(delta_plus.v) != Int(1)) return false;
    if (result.facets[bar_facet].pair(delta_minus.v) != Int(1)) return false;
    if (delta_minus.v != vec_neg(delta_plus.v)) return false;
    return true;
  }
};

inline DoubledPolytope double_along(const Polytope& p, size_t facet_id,
                                    std::optional<Vec> pivot_override = {}) {
  if (facet_id >= p.facets.size()) throw PreconditionError("no such facet");
  DoubledPolytope d;
  d.parent = p;
  d.facet_used = facet_id;
  const Facet& f = p.facets[facet_id];
  d.pivot = pivot_override ? *pivot_override : solve_unit_value(f.a);
  if (!dot(f.a, d.pivot).is_one()) throw PreconditionError("invalid pivot");
  size_t n = p.dim;

  std::vector<Vec> verts;
  for (const Vec& v : p.vertices) {
    verts.push_back(d.embed_minus(v));
    verts.push_back(d.embed_bar(v));
  }
  std::vector<Vec> pts;
  for (const Vec& x : p.lattice_points) {
    Int h = f.height(x);
    Vec cur = d.embed_minus(x);
    pts.push_back(cur);
    for (Int i(1); i <= h; i += Int(1)) {
      for (size_t k = 0; k < n; ++k) cur[k] -= d.pivot[k];
      cur[n] += Int(1);
      pts.push_back(cur);
    }
  }
  std::vector<std::pair<Vec, Int>> ineqs;
  Vec bar_form = f.a;
  bar_form.push_back(Int(0));
  ineqs.emplace_back(bar_form, f.b);
  Vec minus_form(n + 1, Int(0));
  minus_form[n] = Int(1);
  ineqs.emplace_back(minus_form, Int(0));
  for (const Facet& g : p.facets) {
    if (g.id == facet_id) continue;
    Vec psi_form = g.a;
    psi_form.push_back(dot(g.a, d.pivot));
    ineqs.emplace_back(psi_form, g.b);
  }

  // completeness of the structural lattice-point set follows from the parent
  // invariant: any integral (y,h) satisfying the forms has x = y + h p' in P,
  // so (y,h) = (x,0) + h delta+ with 0 <= h <= ht_F(x). Re-enumerate only in
  // low dimension, where the bounding box is cheap.
  d.result = assemble_polytope(
      n + 1, verts, ineqs, pts,
      LatticeBasisChange{IntMatrix::identity(n + 1), Vec(n + 1, Int(0))},
      /*trust_lattice_points=*/n + 1 > 3);

  auto locate = [&](const Vec& a, const Int& b) {
    for (const Facet& g : d.result.facets)
      if (g.a == a && g.b == b) return g.id;
    throw PreconditionError("facet form lost in assembly");
  };
  d.bar_facet = locate(bar_form, f.b);
  d.minus_facet = locate(minus_form, Int(0));
  for (const Facet& g : p.facets) {
    if (g.id == facet_id) continue;
    Vec psi_form = g.a;
    psi_form.push_back(dot(g.a, d.pivot));
    d.psi[g.id] = locate(psi_form, g.b);
  }
  assert(d.result.facets.size() == p.facets.size() + 1);

  Vec dplus(n + 1);
  for (size_t k = 0; k < n; ++k) dplus[k] = -d.pivot[k];
  dplus[n] = Int(1);
  auto bplus = find_base(d.result, dplus);
  auto bminus = find_base(d.result, vec_neg(dplus));
  assert(bplus && *bplus == d.bar_facet);
  assert(bminus && *bminus == d.minus_facet);
  d.delta_plus = ColumnVector{dplus, *bplus};
  d.delta_minus = ColumnVector{vec_neg(dplus), *bminus};
  assert(d.equations_hold());
  return d;
}

/// Provenance of a lifted column: member of Col(P)^- and/or Col(P)^| (with
/// the parent column index), or one of delta+-.
struct LiftProvenance {
  bool from_minus = false;
  bool from_bar = false;
  bool is_delta_plus = false;
  bool is_delta_minus = false;
  std::optional<size_t> parent_minus;  // parent column index giving v^-
  std::optional<size_t> parent_bar;    // parent column index giving v^|
};

struct LiftedColumns {
  ColumnTable table;  // table over the doubled polytope, lex order
  std::vector<LiftProvenance> provenance;  // parallel to table.columns
  bool complete = false;  // this IS Col(result); see lift_columns
};

/// Col(P)^- ∪ Col(P)^| ∪ {delta+, delta-} with provenance. The set is all of
/// Col(P^□_F) when the parent is balanced and every parent column has height
/// <= 1 over F; base facets of balanced polytopes always qualify, so every
/// spectrum doubling is complete. (Doubling a balanced polytope along a
/// facet carrying a column at height 2 genuinely creates extra columns.)
inline LiftedColumns lift_columns(const DoubledPolytope& d,
                                  const ColumnTable& parent_table,
                                  bool with_products = true) {
  std::vector<Vec> vecs;
  for (const ColumnVector& c : parent_table.columns) {
    vecs.push_back(d.embed_minus(c.v));
    vecs.push_back(d.bar_linear(c.v));
  }
  vecs.push_back(d.delta_plus.v);
  vecs.push_back(d.delta_minus.v);
  LiftedColumns out;
  out.table = make_column_table(d.result, vecs, with_products);
  out.provenance.resize(out.table.columns.size());
  for (size_t i = 0; i < parent_table.columns.size(); ++i) {
    const Vec& pv = parent_table.columns[i].v;
    auto im = out.table.index_of(d.embed_minus(pv));
    auto ib = out.table.index_of(d.bar_linear(pv));
    assert(im && ib);
    out.provenance[*im].from_minus = true;
    out.provenance[*im].parent_minus = i;
    out.provenance[*ib].from_bar = true;
    out.provenance[*ib].parent_bar = i;
  }
  {
    auto ip = out.table.index_of(d.delta_plus.v);
    auto im = out.table.index_of(d.delta_minus.v);
    assert(ip && im);
    out.provenance[*ip].is_delta_plus = true;
    out.provenance[*im].is_delta_minus = true;
  }
  out.complete = is_balanced(d.parent, parent_table);
  for (size_t i = 0; i < parent_table.columns.size(); ++i)
    if (parent_table.heights.m[d.facet_used][i] > Int(1)) out.complete = false;
  return out;
}

/// The product rules under doubling: products propagate to both copies,
/// decompositions v^- = delta+ v^| and v^| = delta- v^- appear for columns
/// based at the doubled facet, and invertible pairs produce the deltas.
/// (The table itself is always computed from the heights, which is the
/// complete product structure.)
inline bool check_lift_products(const DoubledPolytope& d,
                                const ColumnTable& parent_table,
                                const LiftedColumns& lift) {
  const ColumnTable& t = lift.table;
  auto idx = [&](const Vec& v) {
    auto i = t.index_of(v);
    assert(i);
    return *i;
  };
  // w = uv  <=>  w^- = u^- v^-  <=>  w^| = u^| v^| (both directions)
  for (size_t i = 0; i < parent_table.columns.size(); ++i)
    for (size_t j = 0; j < parent_table.columns.size(); ++j) {
      if (parent_table.products.count({i, j})) continue;
      const Vec& u = parent_table.columns[i].v;
      const Vec& v = parent_table.columns[j].v;
      if (vec_is_zero(vec_add(u, v))) continue;
      if (t.products.count({idx(d.embed_minus(u)), idx(d.embed_minus(v))}))
        return false;
      if (t.products.count({idx(d.bar_linear(u)), idx(d.bar_linear(v))}))
        return false;
    }
  for (const auto& [uv, k] : parent_table.products) {
    const Vec& u = parent_table.columns[uv.first].v;
    const Vec& v = parent_table.columns[uv.second].v;
    const Vec& w = parent_table.columns[k].v;
    if (t.products.count({idx(d.embed_minus(u)), idx(d.embed_minus(v))}) == 0)
      return false;
    if (t.products.at({idx(d.embed_minus(u)), idx(d.embed_minus(v))}) !=
        idx(d.embed_minus(w)))
      return false;
    if (t.products.count({idx(d.bar_linear(u)), idx(d.bar_linear(v))}) == 0)
      return false;
    if (t.products.at({idx(d.bar_linear(u)), idx(d.bar_linear(v))}) !=
        idx(d.bar_linear(w)))
      return false;
  }
  size_t dp = idx(d.delta_plus.v), dm = idx(d.delta_minus.v);
  for (const ColumnVector& c : parent_table.columns) {
    if (c.base_facet != d.facet_used) continue;
    size_t vm = idx(d.embed_minus(c.v)), vb = idx(d.bar_linear(c.v));
    // v^- = delta+ v^| and v^| = delta- v^-
    if (t.products.count({dp, vb}) == 0 || t.products.at({dp, vb}) != vm)
      return false;
    if (t.products.count({dm, vm}) == 0 || t.products.at({dm, vm}) != vb)
      return false;
    // invertible pair: v^- (-v)^| = delta+ and v^| (-v^-) = delta-
    auto neg = parent_table.index_of(vec_neg(c.v));
    if (neg) {
      size_t nb = idx(d.bar_linear(vec_neg(c.v)));
      size_t nm = idx(d.embed_minus(vec_neg(c.v)));
      if (t.products.count({vm, nb}) == 0 || t.products.at({vm, nb}) != dp)
        return false;
      if (t.products.count({vb, nm}) == 0 || t.products.at({vb, nm}) != dm)
        return false;
    }
  }
  return true;
}

/// One node of a doubling spectrum.
struct SpectrumNode {
  size_t step = 0;            // 1-based doubling index
  size_t doubled_facet = 0;   // facet id in the previous polytope
  DoubledPolytope dbl;
  LiftedColumns lift;
  const Polytope& polytope() const { return dbl.result; }
  const ColumnTable& table() const { return lift.table; }
};

/// Decomposition ledger: for every column ever seen, the steps at which its
/// base facet was the doubled facet.
struct SpectrumLedger {
  struct Entry {
    size_t born_step = 0;  // 0 = seed
    Vec seed_vector;       // vector at birth
    Vec current;           // vector in the newest node's coordinates
    std::vector<size_t> decomposed_at;
  };
  std::vector<Entry> entries;
};

struct Spectrum {
  Polytope seed;
  ColumnTable seed_table;
  std::vector<SpectrumNode> nodes;
  SpectrumLedger ledger;
};

/// Builds a depth-step doubling spectrum with the FIFO round-robin policy:
/// pop a column, double along its base facet (decomposing every column that
/// shares it), re-queue it, and append newly created columns in canonical
/// order. Restricted to balanced seeds so the lifted tables stay complete.
inline Spectrum spectrum(const Polytope& p, size_t depth,
                         bool with_products = true) {
  Spectrum s;
  s.seed = p;
  s.seed_table = column_vectors(p, with_products);
  if (s.seed_table.columns.empty())
    throw PreconditionError("seed has no column vectors");
  if (!is_balanced(p, s.seed_table))
    throw PreconditionError("seed is not balanced");

  std::deque<size_t> queue;
  for (size_t i = 0; i < s.seed_table.columns.size(); ++i) {
    SpectrumLedger::Entry e;
    e.born_step = 0;
    e.seed_vector = s.seed_table.columns[i].v;
    e.current = e.seed_vector;
    s.ledger.entries.push_back(e);
    queue.push_back(i);
  }

  const Polytope* cur = &p;
  const ColumnTable* cur_table = &s.seed_table;
  for (size_t step = 1; step <= depth; ++step) {
    size_t popped = queue.front();
    queue.pop_front();
    auto base = find_base(*cur, s.ledger.entries[popped].current);
    assert(base);
    SpectrumNode node;
    node.step = step;
    node.doubled_facet = *base;
    node.dbl = double_along(*cur, *base);
    node.lift = lift_columns(node.dbl, *cur_table, with_products);
    assert(node.lift.complete);  // balancedness persists (checked next)
    // non-balanced nodes would break the completeness guarantee
    if (!is_balanced(node.dbl.result, node.lift.table))
      throw PreconditionError("spectrum node lost balancedness");

    // ledger: every column based at the doubled facet is decomposed here
    for (auto& e : s.ledger.entries) {
      auto b = find_base(*cur, e.current);
      assert(b);
      if (*b == *base) e.decomposed_at.push_back(step);
    }
    for (auto& e : s.ledger.entries) e.current = node.dbl.embed_minus(e.current);
    // append the new columns (bar images off the doubled facet and deltas)
    for (size_t i = 0; i < node.lift.table.columns.size(); ++i) {
      const Vec& v = node.lift.table.columns[i].v;
      bool is_old = false;
      for (const auto& e : s.ledger.entries) is_old |= e.current == v;
      if (is_old) continue;
      SpectrumLedger::Entry e;
      e.born_step = step;
      e.seed_vector = v;
      e.current = v;
      s.ledger.entries.push_back(e);
      queue.push_back(s.ledger.entries.size() - 1);
    }
    queue.push_back(popped);
    s.nodes.push_back(std::move(node));
    cur = &s.nodes.back().dbl.result;
    cur_table = &s.nodes.back().lift.table;
  }
  return s;
}

/// One chain of iterated doublings along an ordered facet list (later steps
/// double the Psi-images of the chosen facets).
struct DoublingChain {
  std::vector<DoubledPolytope> steps;
  // per original facet label (position in the input list), its facet id in
  // the final polytope for surviving structure, plus each step's minus/bar
  // facet ids pushed forward to the end
  std::map<size_t, size_t> final_orig;           // untouched parent facets
  std::vector<size_t> final_minus, final_bar;    // per step, in final ids
  std::vector<Vec> delta_plus_final;             // per step, padded to final
  const Polytope& final_polytope() const { return steps.back().result; }
};

inline DoublingChain double_chain(const Polytope& p,
                                  const std::vector<size_t>& facet_ids) {
  DoublingChain ch;
  std::vector<std::optional<size_t>> tracked(facet_ids.size());
  for (size_t j = 0; j < facet_ids.size(); ++j) {
    if (facet_ids[j] >= p.facets.size())
      throw PreconditionError("no such facet");
    tracked[j] = facet_ids[j];
  }
  std::map<size_t, size_t> orig;  // other parent facets
  for (const Facet& f : p.facets) {
    bool chosen = false;
    for (size_t id : facet_ids) chosen |= id == f.id;
    if (!chosen) orig[f.id] = f.id;
  }
  std::vector<std::pair<size_t, size_t>> minus_bar;  // current ids per step
  const Polytope* cur = &p;
  for (size_t i = 0; i < facet_ids.size(); ++i) {
    assert(tracked[i]);
    DoubledPolytope d = double_along(*cur, *tracked[i]);
    for (size_t j = i + 1; j < facet_ids.size(); ++j)
      tracked[j] = d.psi.at(*tracked[j]);
    for (auto& [k, v] : orig) v = d.psi.at(v);
    for (auto& [m, b] : minus_bar) {
      m = d.psi.at(m);
      b = d.psi.at(b);
    }
    minus_bar.emplace_back(d.minus_facet, d.bar_facet);
    ch.steps.push_back(std::move(d));
    cur = &ch.steps.back().result;
  }
  ch.final_orig = orig;
  for (auto& [m, b] : minus_bar) {
    ch.final_minus.push_back(m);
    ch.final_bar.push_back(b);
  }
  size_t final_dim = cur->dim;
  for (size_t i = 0; i < ch.steps.size(); ++i) {
    Vec dp = ch.steps[i].delta_plus.v;
    dp.resize(final_dim, Int(0));
    ch.delta_plus_final.push_back(dp);
  }
  return ch;
}

/// The reordering isomorphism Theta between the chains over (F_1..F_m) and
/// (F_sigma(1)..F_sigma(m)): extract heights by delta- descents, land in P,
/// re-ascend with permuted heights.
struct ReorderIso {
  DoublingChain chain_a, chain_b;
  std::map<Vec, Vec, LexLess> theta;  // lattice points of A_m -> B_m
};

inline ReorderIso reorder_iso(const Polytope& p,
                              const std::vector<size_t>& facet_ids,
                              const std::vector<size_t>& sigma) {
  assert(sigma.size() == facet_ids.size());
  std::vector<size_t> permuted;
  for (size_t i : sigma) permuted.push_back(facet_ids.at(i));
  ReorderIso iso;
  iso.chain_a = double_chain(p, facet_ids);
  iso.chain_b = double_chain(p, permuted);
  size_t m = facet_ids.size();
  for (const Vec& x : iso.chain_a.final_polytope().lattice_points) {
    // descend: h_i is the last coordinate at stage i (the minus facet of
    // every double_along is the last-coordinate form)
    std::vector<Int> h(m);
    Vec curp = x;
    for (size_t i = m; i-- > 0;) {
      Int hi = curp.back();
      h[i] = hi;
      const Vec& piv = iso.chain_a.steps[i].pivot;
      Vec down(curp.size() - 1);
      for (size_t k = 0; k + 1 < curp.size(); ++k) down[k] = curp[k] + hi * piv[k];
      assert(iso.chain_a.steps[i].parent.is_lattice_point(down) ||
             iso.chain_a.steps[i].parent.contains(down));
      curp = down;
    }
    // ascend along chain B with permuted heights
    Vec z = curp;
    for (size_t i = 0; i < m; ++i) {
      const DoubledPolytope& st = iso.chain_b.steps[i];
      Int hi = h[sigma[i]];
      Vec up = st.embed_minus(z);
      for (size_t k = 0; k + 1 < up.size(); ++k) up[k] -= hi * st.pivot[k];
      up[up.size() - 1] += hi;
      if (!st.result.is_lattice_point(up))
        throw GeometryError("Theta lands outside the target polytope");
      z = up;
    }
    iso.theta[x] = z;
  }
  return iso;
}

/// Full verification that Theta is a lattice isomorphism: bijective onto the
/// target's lattice points, affine with unimodular linear part, and
/// height-preserving under the relabeling that matches chain B's step i with
/// chain A's step sigma(i).
inline bool reorder_iso_verified(const Polytope& p,
                                 const std::vector<size_t>& facet_ids,
                                 const std::vector<size_t>& sigma) {
  ReorderIso iso = reorder_iso(p, facet_ids, sigma);
  const Polytope& A = iso.chain_a.final_polytope();
  const Polytope& B = iso.chain_b.final_polytope();
  if (iso.theta.size() != A.lattice_points.size()) return false;
  std::vector<Vec> images;
  for (const auto& [x, y] : iso.theta) images.push_back(y);
  std::sort(images.begin(), images.end(), lex_less);
  if (images != B.lattice_points) return false;

  size_t dim = A.dim;
  std::vector<Vec> frame{A.lattice_points[0]};
  for (const Vec& x : A.lattice_points) {
    if (frame.size() == dim + 1) break;
    std::vector<Vec> t = frame;
    t.push_back(x);
    if (detail::affine_rank(t) == t.size() - 1) frame = t;
  }
  if (frame.size() != dim + 1) return false;
  IntMatrix fm(dim, dim), gm(dim, dim);
  for (size_t j = 0; j < dim; ++j)
    for (size_t i = 0; i < dim; ++i) {
      fm.m[i][j] = frame[j + 1][i] - frame[0][i];
      gm.m[i][j] = iso.theta.at(frame[j + 1])[i] - iso.theta.at(frame[0])[i];
    }
  IntMatrix lin(dim, dim);
  for (size_t i = 0; i < dim; ++i) {
    auto x = solve_square(fm.transpose(), gm.m[i]);
    if (!x) return false;
    lin.m[i] = *x;
  }
  if (!lin.det().abs().is_one()) return false;
  Vec shift = vec_sub(iso.theta.at(frame[0]), lin.apply(frame[0]));
  for (const auto& [x, y] : iso.theta)
    if (vec_add(lin.apply(x), shift) != y) return false;

  std::vector<size_t> inv(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
  for (const auto& [x, y] : iso.theta) {
    for (const auto& [g, fa] : iso.chain_a.final_orig)
      if (A.facets[fa].height(x) !=
          B.facets[iso.chain_b.final_orig.at(g)].height(y))
        return false;
    for (size_t j = 0; j < sigma.size(); ++j) {
      if (A.facets[iso.chain_a.final_minus[j]].height(x) !=
          B.facets[iso.chain_b.final_minus[inv[j]]].height(y))
        return false;
      if (A.facets[iso.chain_a.final_bar[j]].height(x) !=
          B.facets[iso.chain_b.final_bar[inv[j]]].height(y))
        return false;
    }
  }
  return true;
}

struct FacetizeResult {
  std::vector<Vec> chain;          // x_0 .. x_k, x_i in the i-th polytope
  std::vector<DoubledPolytope> steps;
  const Polytope& final_polytope() const { return steps.back().result; }
  std::vector<size_t> final_bases;  // base facet id in the final polytope of
                                    // each requested column (lifted)
};

/// Moves x onto (the extensions of) the base facets of the given columns by
/// successive doublings: x_i = x_{i-1} + ht_{v_i}(x_{i-1}) delta_i^+.
inline FacetizeResult facetize(const Polytope& p, const Vec& x,
                               const std::vector<ColumnVector>& vs) {
  if (!p.is_lattice_point(x)) throw PreconditionError("x not a lattice point");
  FacetizeResult r;
  r.chain.push_back(x);
  Polytope cur = p;
  std::vector<Vec> lifted;  // the columns in current coordinates
  for (const ColumnVector& c : vs) lifted.push_back(c.v);
  Vec curx = x;
  for (size_t i = 0; i < vs.size(); ++i) {
    auto base = find_base(cur, lifted[i]);
    assert(base);
    Int h = cur.facets[*base].height(curx);
    DoubledPolytope d = double_along(cur, *base);
    Vec nx = d.embed_minus(curx);
    for (size_t k = 0; k + 1 < nx.size(); ++k) nx[k] -= h * d.pivot[k];
    nx[nx.size() - 1] += h;
    assert(d.result.is_lattice_point(nx));
    curx = nx;
    for (Vec& v : lifted) v = d.embed_minus(v);
    cur = d.result;
    r.chain.push_back(curx);
    r.steps.push_back(std::move(d));
  }
  for (const Vec& v : lifted) {
    auto base = find_base(cur, v);
    assert(base);
    r.final_bases.push_back(*base);
  }
  return r;
}

}  // namespace polykit

#endif
