#ifndef POLYKIT_COLUMNS_HPP
#define POLYKIT_COLUMNS_HPP

#include <map>
#include <optional>

#include "polytope.hpp"

namespace polykit {

/// Column vector with its (unique) base facet: <base,v> = -1 and <G,v> >= 0
/// for every other facet G.
struct ColumnVector {
  Vec v;
  size_t base_facet = 0;
};

/// Base facet per the facet criterion, or nothing.
inline std::optional<size_t> find_base(const Polytope& p, const Vec& v) {
  std::optional<size_t> base;
  for (const Facet& f : p.facets) {
    Int h = f.pair(v);
    if (h == Int(-1)) {
      if (base) return std::nullopt;  // two facets at -1 cannot both be >= 0
      base = f.id;
    } else if (h.is_neg()) {
      return std::nullopt;
    }
  }
  return base;
}

/// Col(P) with the partial product and the full facet-height matrix.
struct ColumnTable {
  std::vector<ColumnVector> columns;  // lex-sorted by vector
  // (i,j) -> k meaning v_i v_j = v_k; present iff v_i+v_j != 0 and
  // <base(v_j), v_i> > 0
  std::map<std::pair<size_t, size_t>, size_t> products;
  IntMatrix heights;  // heights.m[f][c] = <F_f, v_c>, all facets x columns

  std::optional<size_t> index_of(const Vec& v) const {
    size_t lo = 0, hi = columns.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (lex_less(columns[mid].v, v))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < columns.size() && columns[lo].v == v) return lo;
    return std::nullopt;
  }

  bool contains(const Vec& v) const { return index_of(v).has_value(); }
};

inline ColumnTable make_column_table(const Polytope& p, std::vector<Vec> vecs,
                                     bool with_products = true) {
  std::sort(vecs.begin(), vecs.end(), lex_less);
  vecs.erase(std::unique(vecs.begin(), vecs.end()), vecs.end());
  ColumnTable t;
  for (const Vec& v : vecs) {
    auto base = find_base(p, v);
    assert(base);
    t.columns.push_back(ColumnVector{v, *base});
  }
  t.heights = IntMatrix(p.facets.size(), t.columns.size());
  for (size_t f = 0; f < p.facets.size(); ++f)
    for (size_t c = 0; c < t.columns.size(); ++c)
      t.heights.m[f][c] = p.facets[f].pair(t.columns[c].v);
  if (with_products) {
    for (size_t i = 0; i < t.columns.size(); ++i)
      for (size_t j = 0; j < t.columns.size(); ++j) {
        const ColumnVector &u = t.columns[i], &v = t.columns[j];
        Vec sum = vec_add(u.v, v.v);
        if (vec_is_zero(sum)) continue;
        if (t.heights.m[v.base_facet][i].signum() <= 0) continue;
        auto k = t.index_of(sum);
        if (!k) {
          // u+v is a genuine column (base = base(u)) that the caller chose
          // not to include; tables over subsets of Col(P) stay partial
          assert(find_base(p, sum));
          continue;
        }
        assert(t.columns[*k].base_facet == u.base_facet);
        t.products[{i, j}] = *k;
      }
  }
  return t;
}

/// Col(P) by the facet criterion over all differences of lattice points
/// (complete: a column vector moves some off-facet lattice point into P).
inline ColumnTable column_vectors(const Polytope& p, bool with_products = true) {
  std::vector<Vec> cand;
  for (const Vec& x : p.lattice_points)
    for (const Vec& y : p.lattice_points) {
      if (x == y) continue;
      Vec v = vec_sub(x, y);
      if (find_base(p, v)) cand.push_back(v);
    }
  return make_column_table(p, std::move(cand), with_products);
}

/// Displacement-definition oracle: the facet F such that x+v in P for every
/// lattice point x in P \ F. Independent of the facet criterion; used to
/// cross-check column_vectors.
inline std::optional<size_t> is_column_geometric(const Polytope& p, const Vec& v) {
  if (vec_is_zero(v)) throw PreconditionError("v = 0");
  for (const Facet& f : p.facets) {
    bool ok = true;
    for (const Vec& x : p.lattice_points) {
      if (f.height(x).is_zero()) continue;
      if (!p.is_lattice_point(vec_add(x, v))) {
        ok = false;
        break;
      }
    }
    if (ok) return f.id;
  }
  return std::nullopt;
}

/// Partial product: some(u+v) iff u+v != 0 and <base(v),u> > 0; the result's
/// base facet is base(u).
inline std::optional<ColumnVector> product(const Polytope& p,
                                           const ColumnVector& u,
                                           const ColumnVector& v) {
  Vec sum = vec_add(u.v, v.v);
  if (vec_is_zero(sum)) return std::nullopt;
  if (p.facets[v.base_facet].pair(u.v).signum() <= 0) return std::nullopt;
  auto base = find_base(p, sum);
  assert(base && *base == u.base_facet);
  return ColumnVector{sum, *base};
}

/// -v in Col(P), cross-checked against the two-facet height criterion:
/// <F,v> = -1, <G,v> = 1, zero on every other facet.
inline bool is_invertible(const Polytope& p, const ColumnVector& v) {
  bool direct = find_base(p, vec_neg(v.v)).has_value();
  size_t minus1 = 0, plus1 = 0, other = 0;
  for (const Facet& f : p.facets) {
    Int h = f.pair(v.v);
    if (h == Int(-1))
      ++minus1;
    else if (h == Int(1))
      ++plus1;
    else if (!h.is_zero())
      ++other;
  }
  bool criterion = minus1 == 1 && plus1 == 1 && other == 0;
  assert(direct == criterion);
  return direct;
}

/// Balanced: <F_u, v> <= 1 over base facets of column vectors. The absolute
/// bound |<F_u, v>| <= 1 is equivalent and asserted.
inline bool is_balanced(const Polytope& p, const ColumnTable& t) {
  std::set<size_t> bases;
  for (const ColumnVector& c : t.columns) bases.insert(c.base_facet);
  bool le1 = true, abs1 = true;
  for (size_t f : bases)
    for (size_t c = 0; c < t.columns.size(); ++c) {
      const Int& h = t.heights.m[f][c];
      if (h > Int(1)) le1 = false;
      if (h.abs() > Int(1)) abs1 = false;
    }
  assert(le1 == abs1);
  return le1;
}

/// Heights of all column vectors against the base facets only; the
/// E-equivalence invariant.
struct CBMatrix {
  std::vector<Vec> row_vectors;      // columns of P, lex order
  std::vector<size_t> base_facets;   // ascending facet ids
  IntMatrix entries;                 // entries.m[r][c] = <F_c, v_r>
};

inline CBMatrix cb_matrix(const Polytope& p, const ColumnTable& t) {
  if (t.columns.empty()) throw PreconditionError("empty Col(P)");
  CBMatrix cb;
  std::set<size_t> bases;
  for (const ColumnVector& c : t.columns) bases.insert(c.base_facet);
  cb.base_facets.assign(bases.begin(), bases.end());
  cb.entries = IntMatrix(t.columns.size(), cb.base_facets.size());
  for (size_t r = 0; r < t.columns.size(); ++r) {
    cb.row_vectors.push_back(t.columns[r].v);
    for (size_t c = 0; c < cb.base_facets.size(); ++c)
      cb.entries.m[r][c] = p.facets[cb.base_facets[c]].pair(t.columns[r].v);
  }
  return cb;
}

}  // namespace polykit

#endif
