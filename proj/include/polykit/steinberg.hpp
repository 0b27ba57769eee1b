#ifndef POLYKIT_STEINBERG_HPP
#define POLYKIT_STEINBERG_HPP

#include <sstream>

#include "algebra.hpp"
#include "doubling.hpp"

namespace polykit {

/// Relations of the polytopal Steinberg presentation attached to a column
/// table: one additivity family per column, and per unordered pair with
/// u+v != 0 either a binomial commutator relation (when a product exists) or
/// a trivial one (when u+v is not a column). Pairs with u = -v carry no
/// relation.
struct StRelation {
  enum class Kind { Additivity, Commutator, Trivial } kind;
  size_t a = 0, b = 0;  // column indices in the table (a only, for Additivity)
  int branch = 0;       // Commutator: 1 = ab exists, 2 = ba exists
  Int n;                // Commutator: the height <P_b,a> resp. <P_a,b>
};

struct SteinbergPresentation {
  size_t generators = 0;  // one x_c^* family per column
  std::vector<StRelation> relations;
};

inline SteinbergPresentation presentation(const Polytope& p,
                                          const ColumnTable& t) {
  SteinbergPresentation pres;
  pres.generators = t.columns.size();
  for (size_t c = 0; c < t.columns.size(); ++c)
    pres.relations.push_back(StRelation{StRelation::Kind::Additivity, c, c, 0, Int(0)});
  for (size_t a = 0; a < t.columns.size(); ++a)
    for (size_t b = a + 1; b < t.columns.size(); ++b) {
      Vec sum = vec_add(t.columns[a].v, t.columns[b].v);
      if (vec_is_zero(sum)) continue;
      if (t.products.count({a, b})) {
        Int n = p.facets[t.columns[b].base_facet].pair(t.columns[a].v);
        pres.relations.push_back(
            StRelation{StRelation::Kind::Commutator, a, b, 1, n});
      } else if (t.products.count({b, a})) {
        Int n = p.facets[t.columns[a].base_facet].pair(t.columns[b].v);
        pres.relations.push_back(
            StRelation{StRelation::Kind::Commutator, a, b, 2, n});
      } else {
        assert(!t.contains(sum));  // exactly one product exists otherwise
        pres.relations.push_back(
            StRelation{StRelation::Kind::Trivial, a, b, 0, Int(0)});
      }
    }
  return pres;
}

struct PiCheckReport {
  struct Line {
    std::string relation;
    bool pass = false;
  };
  std::vector<Line> lines;
  bool all_pass = true;
};

/// pi: x_v^lam -> e_v^lam maps every relation to the identity; verified
/// symbolically over Z[lambda,mu].
inline PiCheckReport pi_check(const Polytope& p, const ColumnTable& t,
                              const SteinbergPresentation& pres) {
  PiCheckReport rep;
  LaurentRing ring({"lambda", "mu"});
  LaurentPoly lam = ring.var("lambda"), mu = ring.var("mu");
  auto vec_str = [](const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i)
      s += v[i].to_string() + (i + 1 < v.size() ? "," : "");
    return s + ")";
  };
  for (const StRelation& r : pres.relations) {
    PiCheckReport::Line line;
    if (r.kind == StRelation::Kind::Additivity) {
      const ColumnVector& c = t.columns[r.a];
      AutoWord<LaurentRing> two, one;
      two.letters = {Letter<LaurentRing>::elementary(c, lam),
                     Letter<LaurentRing>::elementary(c, mu)};
      one.letters = {Letter<LaurentRing>::elementary(c, ring.add(lam, mu))};
      line.pass = words_equal(p, ring, two, one);
      line.relation = "additivity x_" + vec_str(c.v);
    } else {
      ComrelReport cr =
          verify_comrel(p, ring, t.columns[r.a], t.columns[r.b], lam, mu);
      line.pass = cr.pass;
      line.relation =
          std::string(r.kind == StRelation::Kind::Trivial ? "trivial " : "") +
          "[x_" + vec_str(t.columns[r.a].v) + ", x_" +
          vec_str(t.columns[r.b].v) + "]";
    }
    rep.all_pass &= line.pass;
    rep.lines.push_back(line);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Matrix models of the stable groups for polygon classes b, c, d at a finite
// truncation j (Steinberg symbols x_{ik}^lam realized as I + lam E at a
// calibrated position).

template <class R>
struct RingMatrix {
  size_t n = 0;
  std::vector<std::vector<typename R::Elem>> m;
  static RingMatrix identity(const R& ring, size_t n) {
    RingMatrix a;
    a.n = n;
    a.m.assign(n, std::vector<typename R::Elem>(n, ring.zero()));
    for (size_t i = 0; i < n; ++i) a.m[i][i] = ring.one();
    return a;
  }
  static RingMatrix elementary(const R& ring, size_t n, size_t r, size_t c,
                               const typename R::Elem& lam) {
    RingMatrix a = identity(ring, n);
    a.m[r][c] = ring.add(a.m[r][c], lam);
    return a;
  }
  RingMatrix mul(const R& ring, const RingMatrix& o) const {
    RingMatrix r;
    r.n = n;
    r.m.assign(n, std::vector<typename R::Elem>(n, ring.zero()));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        if (ring.is_zero(m[i][k])) continue;
        for (size_t j = 0; j < n; ++j)
          r.m[i][j] = ring.add(r.m[i][j], ring.mul(m[i][k], o.m[k][j]));
      }
    return r;
  }
  bool eq(const R& ring, const RingMatrix& o) const {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (!ring.eq(m[i][j], o.m[i][j])) return false;
    return true;
  }
};

/// Index model for the block matrix groups: abstract indices split into the
/// blocks A (size j), B (size j, classes b and c), and the origin/Id_t block.
struct IndexModel {
  char cls = 'b';
  size_t j = 0, t = 0;
  size_t size = 0;                 // matrix dimension
  size_t a_count = 0, b_count = 0, o_count = 0;
  bool transposed = false;         // x_{ik} placed at (pos k, pos i)
  int bracket = 0;                 // 0: a b a' b', 1: a' b' a b,
                                   // 2: b a b' a', 3: b' a' b a
  // abstract generator index pairs (matrix indices after block layout)
  std::vector<std::pair<size_t, size_t>> gens;

  size_t block_of(size_t idx) const {
    if (idx < a_count) return 0;
    if (idx < a_count + b_count) return 1;
    return 2;
  }
  std::pair<size_t, size_t> place(size_t i, size_t k) const {
    return transposed ? std::make_pair(k, i) : std::make_pair(i, k);
  }
  /// block shape of the displayed model: off-diagonal entries allowed at
  /// (A,A), (B,B), (A,B), (A,origin), (B,origin); origin block is Id.
  bool position_allowed(size_t r, size_t c) const {
    if (r == c) return block_of(r) != 2;  // origin diagonal stays 1
    size_t br = block_of(r), bc = block_of(c);
    if (br == 2) return false;
    if (br == bc) return true;
    return br < bc;  // upper blocks only
  }
  template <class R>
  bool matrix_in_shape(const R& ring, const RingMatrix<R>& mat) const {
    for (size_t r = 0; r < size; ++r)
      for (size_t c = 0; c < size; ++c) {
        if (r == c && block_of(r) == 2 && !ring.eq(mat.m[r][c], ring.one()))
          return false;
        if (r != c && !position_allowed(r, c) && !ring.is_zero(mat.m[r][c]))
          return false;
      }
    return true;
  }
  template <class R>
  RingMatrix<R> realize(const R& ring, size_t i, size_t k,
                        const typename R::Elem& lam) const {
    auto [r, c] = place(i, k);
    return RingMatrix<R>::elementary(ring, size, r, c, lam);
  }
  template <class R>
  RingMatrix<R> bracket_of(const R& ring, const RingMatrix<R>& a,
                           const RingMatrix<R>& b, const RingMatrix<R>& ai,
                           const RingMatrix<R>& bi) const {
    switch (bracket) {
      case 0: return a.mul(ring, b).mul(ring, ai).mul(ring, bi);
      case 1: return ai.mul(ring, bi).mul(ring, a).mul(ring, b);
      case 2: return b.mul(ring, a).mul(ring, bi).mul(ring, ai);
      default: return bi.mul(ring, ai).mul(ring, b).mul(ring, a);
    }
  }
};

namespace detail {

inline std::vector<std::pair<size_t, size_t>> model_gen_pairs(char cls, size_t j,
                                                              size_t t) {
  std::vector<std::pair<size_t, size_t>> gens;
  auto add_block = [&](size_t lo1, size_t n1, size_t lo2, size_t n2) {
    for (size_t i = 0; i < n1; ++i)
      for (size_t k = 0; k < n2; ++k)
        if (lo1 + i != lo2 + k) gens.emplace_back(lo1 + i, lo2 + k);
  };
  size_t A = 0, B = j, O = 2 * j;
  if (cls == 'b') {
    add_block(A, j, A, j);
    add_block(B, j, A, j);
    add_block(B, j, B, j);
  } else if (cls == 'c') {
    add_block(A, j, A, j);
    add_block(B, j, A, j);
    add_block(B, j, B, j);
    add_block(O, 1, A, j);
    add_block(O, 1, B, j);
  } else {
    assert(cls == 'd');
    O = j;
    add_block(A, j, A, j);
    add_block(O, t, A, j);
  }
  return gens;
}

/// All Steinberg relations of the index set, verified as matrices over the
/// given ring with the given scalars.
template <class R>
bool model_relations_hold(const IndexModel& im, const R& ring,
                          const typename R::Elem& lam,
                          const typename R::Elem& mu) {
  // additivity
  for (const auto& [i, k] : im.gens) {
    RingMatrix<R> a = im.realize(ring, i, k, lam);
    RingMatrix<R> b = im.realize(ring, i, k, mu);
    RingMatrix<R> s = im.realize(ring, i, k, ring.add(lam, mu));
    if (!a.mul(ring, b).eq(ring, s)) return false;
  }
  for (const auto& [i, jx] : im.gens)
    for (const auto& [k, l] : im.gens) {
      if (i == k && jx == l) continue;
      RingMatrix<R> a = im.realize(ring, i, jx, lam);
      RingMatrix<R> b = im.realize(ring, k, l, mu);
      RingMatrix<R> ai = im.realize(ring, i, jx, ring.neg(lam));
      RingMatrix<R> bi = im.realize(ring, k, l, ring.neg(mu));
      RingMatrix<R> br = im.bracket_of(ring, a, b, ai, bi);
      if (jx == k && i != l) {
        bool in_set = false;
        for (const auto& g : im.gens) in_set |= g.first == i && g.second == l;
        if (!in_set) return false;  // index set must be product-closed
        RingMatrix<R> rhs = im.realize(ring, i, l, ring.mul(lam, mu));
        if (!br.eq(ring, rhs)) return false;
      } else if (jx != k && i != l) {
        if (!br.eq(ring, RingMatrix<R>::identity(ring, im.size))) return false;
      }  // i == l, jx != k: no relation
    }
  return true;
}

}  // namespace detail

/// Builds the truncated matrix model for class b, c or d. The placement
/// (direct vs transposed) and the bracket order are calibrated once: the
/// combination must satisfy every Steinberg relation and keep all generators
/// inside the displayed block shape, simultaneously for b, c and d. All
/// passing combinations share one placement; the first is frozen.
inline IndexModel index_model(char cls, size_t j, size_t t = 1) {
  if (j < 1) throw PreconditionError("truncation j must be >= 1");
  if (cls == 'd' && t < 1) throw PreconditionError("class d needs t >= 1");
  if (cls != 'b' && cls != 'c' && cls != 'd')
    throw PreconditionError("class must be b, c or d");

  static const std::pair<bool, int> frozen = [] {
    LaurentRing ring({"lambda", "mu"});
    LaurentPoly lam = ring.var("lambda"), mu = ring.var("mu");
    std::vector<std::pair<bool, int>> hits;
    for (bool transposed : {false, true})
      for (int bracket : {0, 1, 2, 3}) {
        bool ok = true;
        for (char c : {'b', 'c', 'd'}) {
          IndexModel im;
          im.cls = c;
          im.j = 2;
          im.t = 2;
          im.a_count = 2;
          im.b_count = c == 'd' ? 0 : 2;
          im.o_count = c == 'b' ? 0 : (c == 'c' ? 1 : 2);
          im.size = im.a_count + im.b_count + im.o_count;
          im.transposed = transposed;
          im.bracket = bracket;
          im.gens = detail::model_gen_pairs(c, 2, 2);
          ok = ok && detail::model_relations_hold(im, ring, lam, mu);
          for (const auto& [i, k] : im.gens)
            ok = ok && im.matrix_in_shape(ring, im.realize(ring, i, k, lam));
          if (!ok) break;
        }
        if (ok) hits.emplace_back(transposed, bracket);
      }
    if (hits.empty())
      throw AlgebraError("no consistent matrix placement exists");
    for (const auto& h : hits)
      if (h.first != hits[0].first)
        throw AlgebraError("matrix placement calibration inconsistent");
    return hits[0];
  }();

  IndexModel im;
  im.cls = cls;
  im.j = j;
  im.t = t;
  im.a_count = j;
  im.b_count = cls == 'd' ? 0 : j;
  im.o_count = cls == 'b' ? 0 : (cls == 'c' ? 1 : t);
  im.size = im.a_count + im.b_count + im.o_count;
  im.transposed = frozen.first;
  im.bracket = frozen.second;
  im.gens = detail::model_gen_pairs(cls, j, t);
  return im;
}

/// Relations of the model over a ring, with symbolic scalars by default.
inline bool model_relations_hold_symbolic(const IndexModel& im) {
  LaurentRing ring({"lambda", "mu"});
  return detail::model_relations_hold(im, ring, ring.var("lambda"),
                                      ring.var("mu"));
}

template <class R>
bool model_relations_hold_over(const IndexModel& im, const R& ring,
                               const typename R::Elem& lam,
                               const typename R::Elem& mu) {
  return detail::model_relations_hold(im, ring, lam, mu);
}

struct UvReport {
  bool commute = false;        // within-family commutativity
  bool injective = false;      // tuple map injective into the matrix group
  bool centrality = false;     // only the identity upper-block element is
                               // central against the diagonal generators
  bool pass() const { return commute && injective && centrality; }
};

/// The finite-truncation content of the centrality argument: the families
/// into a fixed target column (U) and out of a fixed source row (V) are
/// abelian and embed tuples injectively; an upper-block unipotent commuting
/// with every diagonal-block generator is the identity, derived as exact
/// linear constraints. Requires j >= 2 so the diagonal blocks act.
inline UvReport uv_subgroup_checks(char cls, size_t j, size_t t = 1) {
  if (j < 2) throw PreconditionError("uv checks need j >= 2");
  IndexModel im = index_model(cls, j, t);
  ModRing ring{Int(4)};
  UvReport rep;

  // families: same target (column of the symbol), same source (row)
  std::vector<std::vector<std::pair<size_t, size_t>>> families;
  for (size_t target = 0; target < im.size; ++target) {
    std::vector<std::pair<size_t, size_t>> fam;
    for (const auto& g : im.gens)
      if (g.second == target) fam.push_back(g);
    if (fam.size() > 1) families.push_back(fam);
  }
  for (size_t source = 0; source < im.size; ++source) {
    std::vector<std::pair<size_t, size_t>> fam;
    for (const auto& g : im.gens)
      if (g.first == source) fam.push_back(g);
    if (fam.size() > 1) families.push_back(fam);
  }

  rep.commute = true;
  rep.injective = true;
  for (const auto& fam : families) {
    for (size_t x = 0; x < fam.size(); ++x)
      for (size_t y = x + 1; y < fam.size(); ++y) {
        RingMatrix<ModRing> a =
            im.realize(ring, fam[x].first, fam[x].second, Int(1));
        RingMatrix<ModRing> b =
            im.realize(ring, fam[y].first, fam[y].second, Int(3));
        rep.commute = rep.commute && a.mul(ring, b).eq(ring, b.mul(ring, a));
      }
    // exhaustive injectivity over Z/4 tuples (products built incrementally)
    size_t r = fam.size();
    std::vector<std::string> sigs;
    auto descend = [&](auto&& self, size_t depth,
                       const RingMatrix<ModRing>& acc) -> void {
      if (depth == r) {
        std::string sig;
        for (const auto& row : acc.m)
          for (const auto& e : row) sig += e.to_string() + ",";
        sigs.push_back(std::move(sig));
        return;
      }
      for (long long v = 0; v < 4; ++v)
        self(self, depth + 1,
             acc.mul(ring, im.realize(ring, fam[depth].first,
                                      fam[depth].second, Int(v))));
    };
    descend(descend, 0, RingMatrix<ModRing>::identity(ring, im.size));
    size_t total = sigs.size();
    std::sort(sigs.begin(), sigs.end());
    sigs.erase(std::unique(sigs.begin(), sigs.end()), sigs.end());
    rep.injective = rep.injective && sigs.size() == total;
  }

  // centrality: B supported on the strict upper blocks; commuting with
  // I + E_{rc} for every diagonal-block generator gives, entrywise,
  //   delta_{r,p} B[c][k] = delta_{k,c} B[p][r]  =>  row c and column r of B
  // vanish off the diagonal. Check that every allowed upper position is hit.
  std::set<std::pair<size_t, size_t>> support;
  for (size_t r = 0; r < im.size; ++r)
    for (size_t c = 0; c < im.size; ++c)
      if (r != c && im.block_of(r) != im.block_of(c) && im.position_allowed(r, c))
        support.insert({r, c});
  std::set<std::pair<size_t, size_t>> killed;
  for (const auto& g : im.gens) {
    auto [r, c] = im.place(g.first, g.second);
    if (im.block_of(r) != im.block_of(c)) continue;  // diagonal blocks only
    for (size_t k = 0; k < im.size; ++k) {
      if (k != c && support.count({c, k})) killed.insert({c, k});
      if (k != r && support.count({k, r})) killed.insert({k, r});
    }
  }
  rep.centrality = killed == support;
  return rep;
}

/// The combinatorial column model behind the quadrangle's spectrum: points
/// x_1..x_m with marked j0, differences admissible exactly on the four zones.
struct SpecquadModel {
  long long m = 0, j0 = 0;

  /// 1-based indices; (j1,j2) admissible iff x_{j1} - x_{j2} is a column.
  bool admissible(long long j1, long long j2) const {
    if (j1 == j2) return false;
    auto z1 = [&](long long a, long long b) {
      return 1 <= a && a <= j0 - 1 && 1 <= b && b <= j0 - 1;
    };
    auto z2 = [&](long long a, long long b) {
      return j0 <= a && a <= m && 1 <= b && b <= j0 - 1;
    };
    auto z3 = [&](long long a, long long b) {
      return j0 <= a && a <= m - 1 && j0 <= b && b <= m - 1;
    };
    auto z4 = [&](long long a, long long b) {
      return a == m && 1 <= b && b <= m - 1;
    };
    return z1(j1, j2) || z2(j1, j2) || z3(j1, j2) || z4(j1, j2);
  }

  /// the proof's composability condition: admissible pairs factor through a
  /// middle index
  bool composable(long long i, long long k) const {
    if (!admissible(i, k)) return false;
    for (long long j = 1; j <= m; ++j)
      if (j != i && j != k && admissible(i, j) && admissible(j, k)) return true;
    return false;
  }
};

inline SpecquadModel specquad_zones(long long m, long long j0) {
  if (!(1 < j0 && j0 < m)) throw PreconditionError("need 1 < j0 < m");
  return SpecquadModel{m, j0};
}

}  // namespace polykit

#endif
