#ifndef POLYKIT_CLASSIFY_HPP
#define POLYKIT_CLASSIFY_HPP

#include "columns.hpp"

namespace polykit {

inline bool is_balanced(const Polytope& p) {
  ColumnTable t = column_vectors(p);
  return is_balanced(p, t);
}

enum class PolygonTag { a, b, c, d, e, f, no_columns, not_balanced };

inline const char* tag_name(PolygonTag t) {
  switch (t) {
    case PolygonTag::a: return "a";
    case PolygonTag::b: return "b";
    case PolygonTag::c: return "c";
    case PolygonTag::d: return "d";
    case PolygonTag::e: return "e";
    case PolygonTag::f: return "f";
    case PolygonTag::no_columns: return "no_columns";
    default: return "not_balanced";
  }
}

/// Classification result with the witnessing column data.
struct PolygonClass {
  PolygonTag tag = PolygonTag::no_columns;
  std::vector<Vec> witness;            // the u,v,w assignment (per class)
  std::optional<size_t> shared_base;   // class d
  size_t column_count = 0;
};

/// The balanced-polygon classifier, decided purely by the column/product
/// signature: (a) three inverse pairs, (b) u,±v,w with uv=w and w(-v)=u,
/// (c) u,v,w with the single product uv=w, (d) one shared base edge,
/// (e) two inverse pairs with no products, (f) two productless columns on
/// distinct base edges.
inline PolygonClass classify_polygon(const Polytope& p) {
  if (p.dim != 2) throw PreconditionError("classify_polygon needs a polygon");
  ColumnTable t = column_vectors(p);
  PolygonClass out;
  out.column_count = t.columns.size();
  if (t.columns.empty()) {
    out.tag = PolygonTag::no_columns;
    return out;
  }
  if (!is_balanced(p, t)) {
    out.tag = PolygonTag::not_balanced;
    return out;
  }
  size_t n = t.columns.size();
  std::vector<std::optional<size_t>> neg(n);
  size_t paired = 0;
  for (size_t i = 0; i < n; ++i) {
    neg[i] = t.index_of(vec_neg(t.columns[i].v));
    if (neg[i]) ++paired;
  }
  std::set<size_t> bases;
  for (const ColumnVector& c : t.columns) bases.insert(c.base_facet);
  size_t products = t.products.size();

  if (n == 6 && paired == 6) {
    out.tag = PolygonTag::a;
    for (const ColumnVector& c : t.columns) out.witness.push_back(c.v);
    return out;
  }
  if (n == 4 && paired == 2) {
    // locate the +-v pair; the other two are u (with uv = w) and w
    std::optional<size_t> vi;
    for (size_t i = 0; i < n; ++i)
      if (neg[i]) vi = i;
    std::vector<size_t> rest;
    for (size_t i = 0; i < n; ++i)
      if (!neg[i]) rest.push_back(i);
    if (vi && rest.size() == 2) {
      for (size_t v : {*vi, *neg[*vi]}) {
        size_t mv = *t.index_of(vec_neg(t.columns[v].v));
        for (size_t u : rest)
          for (size_t w : rest) {
            if (u == w) continue;
            bool uv_w = t.products.count({u, v}) && t.products.at({u, v}) == w;
            bool wmv_u =
                t.products.count({w, mv}) && t.products.at({w, mv}) == u;
            if (uv_w && wmv_u) {
              out.tag = PolygonTag::b;
              out.witness = {t.columns[u].v, t.columns[v].v, t.columns[w].v};
              return out;
            }
          }
      }
    }
  }
  if (n == 3 && paired == 0 && products == 1) {
    auto [uv, w] = *t.products.begin();
    out.tag = PolygonTag::c;
    out.witness = {t.columns[uv.first].v, t.columns[uv.second].v,
                   t.columns[w].v};
    return out;
  }
  if (bases.size() == 1) {
    // no products possible with one shared base (heights there are all -1)
    assert(products == 0);
    out.tag = PolygonTag::d;
    out.shared_base = *bases.begin();
    for (const ColumnVector& c : t.columns) out.witness.push_back(c.v);
    return out;
  }
  if (n == 4 && paired == 4 && products == 0) {
    out.tag = PolygonTag::e;
    for (const ColumnVector& c : t.columns) out.witness.push_back(c.v);
    return out;
  }
  if (n == 2 && paired == 0 && products == 0 && bases.size() == 2) {
    out.tag = PolygonTag::f;
    for (const ColumnVector& c : t.columns) out.witness.push_back(c.v);
    return out;
  }
  // unreachable for balanced polygons by the classification theorem
  throw GeometryError("balanced polygon escapes the classification");
}

/// E-equivalence search: a bijection mu preserving base-facet heights
/// (<P_w,v> = <Q_mu(w),mu(v)>) and partial products; first hit in canonical
/// order, or nothing.
inline std::optional<std::vector<size_t>> e_equivalent(const Polytope& p,
                                                       const Polytope& q) {
  ColumnTable tp = column_vectors(p), tq = column_vectors(q);
  if (tp.columns.empty() || tq.columns.empty())
    throw PreconditionError("E-equivalence needs nonempty column sets");
  if (!is_balanced(p, tp) || !is_balanced(q, tq))
    throw PreconditionError("E-equivalence is defined for balanced polytopes");
  size_t n = tp.columns.size();
  if (n != tq.columns.size()) return std::nullopt;
  std::vector<size_t> mu(n);
  for (size_t i = 0; i < n; ++i) mu[i] = i;
  do {
    bool ok = true;
    for (size_t v = 0; v < n && ok; ++v)
      for (size_t w = 0; w < n && ok; ++w) {
        Int hp = tp.heights.m[tp.columns[w].base_facet][v];
        Int hq = tq.heights.m[tq.columns[mu[w]].base_facet][mu[v]];
        ok = hp == hq;
      }
    for (size_t v = 0; v < n && ok; ++v)
      for (size_t w = 0; w < n && ok; ++w) {
        auto it = tp.products.find({v, w});
        auto jt = tq.products.find({mu[v], mu[w]});
        if ((it == tp.products.end()) != (jt == tq.products.end()))
          ok = false;
        else if (it != tp.products.end() && mu[it->second] != jt->second)
          ok = false;
      }
    if (ok) return mu;
  } while (std::next_permutation(mu.begin(), mu.end()));
  return std::nullopt;
}

inline bool projectively_equivalent(const Polytope& p, const Polytope& q) {
  if (p.dim != q.dim) throw PreconditionError("dimension mismatch");
  return fans_equal(normal_fan(p), normal_fan(q));
}

}  // namespace polykit

#endif
