#ifndef POLYKIT_POLYTOPE_HPP
#define POLYKIT_POLYTOPE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "intlin.hpp"

namespace polykit {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Facet support data: the primitive form a with <a,x> >= b on the polytope,
/// minimum b attained exactly on the facet.
struct Facet {
  Vec a;
  Int b;
  size_t id = 0;

  /// ht_F(x) = <a,x> - b
  Int height(const Vec& x) const { return dot(a, x) - b; }
  /// linear pairing <F,v> on difference vectors
  Int pair(const Vec& v) const { return dot(a, v); }
};

/// Lattice polytope in normalized coordinates: the lattice points affinely
/// generate Z^dim. Immutable after construction.
struct Polytope {
  size_t dim = 0;
  std::vector<Vec> vertices;        // canonical (lex-sorted) order
  std::vector<Facet> facets;        // canonical order, ids = positions
  std::vector<Vec> lattice_points;  // lex-sorted
  LatticeBasisChange normalization; // normalized -> user coordinates

  bool contains(const Vec& x) const {
    for (const Facet& f : facets)
      if (f.height(x).is_neg()) return false;
    return true;
  }

  bool is_lattice_point(const Vec& x) const {
    return std::binary_search(lattice_points.begin(), lattice_points.end(), x,
                              lex_less);
  }

  const Facet& facet(size_t id) const { return facets.at(id); }

  std::vector<Vec> facet_points(size_t id) const {
    std::vector<Vec> pts;
    for (const Vec& x : lattice_points)
      if (facets[id].height(x).is_zero()) pts.push_back(x);
    return pts;
  }
};

namespace detail {

inline std::vector<Vec> dedupe_sorted(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline size_t affine_rank(const std::vector<Vec>& pts) {
  if (pts.empty()) return 0;
  IntMatrix d(pts.size() - 1, pts[0].size());
  for (size_t i = 1; i < pts.size(); ++i) d.m[i - 1] = vec_sub(pts[i], pts[0]);
  return d.rank();
}

// Facet inequalities of a full-dimensional polytope, dim <= 3, by exact
// brute force over vertex subsets spanning candidate hyperplanes.
inline std::vector<std::pair<Vec, Int>> hull_facets(
    const std::vector<Vec>& verts, size_t dim) {
  std::vector<std::pair<Vec, Int>> out;
  auto consider = [&](const std::vector<Vec>& plane_pts) {
    if (affine_rank(plane_pts) != dim - 1) return;
    // interior reference: any vertex off the plane
    Vec a;
    Int b;
    try {
      Vec inside;
      {
        IntMatrix d(plane_pts.size() - 1, dim);
        for (size_t i = 1; i < plane_pts.size(); ++i)
          d.m[i - 1] = vec_sub(plane_pts[i], plane_pts[0]);
        IntMatrix k = kernel_basis(d.rows ? d : IntMatrix(0, dim));
        if (k.cols != 1) return;
        Vec n0 = k.col(0);
        Int b0 = dot(n0, plane_pts[0]);
        bool has_pos = false, has_neg = false;
        for (const Vec& v : verts) {
          int s = (dot(n0, v) - b0).signum();
          has_pos |= s > 0;
          has_neg |= s < 0;
        }
        if (has_pos && has_neg) return;  // not supporting
        if (!has_pos && !has_neg) return;
        a = has_pos ? n0 : vec_neg(n0);
        b = has_pos ? b0 : -b0;
      }
    } catch (const PreconditionError&) {
      return;
    }
    out.emplace_back(a, b);
  };
  size_t n = verts.size();
  if (dim == 1) {
    for (const Vec& v : verts) consider({v});
  } else if (dim == 2) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) consider({verts[i], verts[j]});
  } else {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k)
          consider({verts[i], verts[j], verts[k]});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return lex_less(x.first, y.first);
    return x.second < y.second;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Vec> enumerate_lattice_points(
    const std::vector<std::pair<Vec, Int>>& ineqs,
    const std::vector<Vec>& verts, size_t dim) {
  // integer bounding box from the vertices, then inequality filter
  Vec lo = verts[0], hi = verts[0];
  for (const Vec& v : verts)
    for (size_t i = 0; i < dim; ++i) {
      if (v[i] < lo[i]) lo[i] = v[i];
      if (v[i] > hi[i]) hi[i] = v[i];
    }
  std::vector<Vec> pts;
  Vec cur = lo;
  while (true) {
    bool ok = true;
    for (const auto& [a, b] : ineqs)
      if (dot(a, cur) < b) {
        ok = false;
        break;
      }
    if (ok) pts.push_back(cur);
    size_t i = 0;
    while (i < dim) {
      cur[i] += Int(1);
      if (cur[i] <= hi[i]) break;
      cur[i] = lo[i];
      ++i;
    }
    if (i == dim) break;
  }
  if (dim == 0) pts = {Vec{}};
  return detail::dedupe_sorted(pts);
}

}  // namespace detail

/// Assembles a verified Polytope from already-normalized data. Checks: forms
/// primitive and supporting with each facet's tight point set of affine rank
/// dim-1, every vertex tight on >= dim facets, lattice point set consistent
/// with the inequality description.
inline Polytope assemble_polytope(size_t dim, std::vector<Vec> vertices,
                                  std::vector<std::pair<Vec, Int>> ineqs,
                                  std::vector<Vec> lattice_points,
                                  LatticeBasisChange normalization,
                                  bool trust_lattice_points = false) {
  Polytope p;
  p.dim = dim;
  p.vertices = detail::dedupe_sorted(std::move(vertices));
  p.normalization = std::move(normalization);
  std::sort(ineqs.begin(), ineqs.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return lex_less(x.first, y.first);
    return x.second < y.second;
  });
  ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
  for (size_t i = 0; i < ineqs.size(); ++i)
    p.facets.push_back(Facet{ineqs[i].first, ineqs[i].second, i});
  p.lattice_points = detail::dedupe_sorted(std::move(lattice_points));

  for (const Facet& f : p.facets) {
    if (dim > 0 && !gcd_of(f.a).is_one())
      throw GeometryError("facet form not primitive");
    std::vector<Vec> tight;
    for (const Vec& x : p.lattice_points) {
      Int h = f.height(x);
      if (h.is_neg()) throw GeometryError("lattice point outside facet");
      if (h.is_zero()) tight.push_back(x);
    }
    if (tight.empty() || detail::affine_rank(tight) != dim - 1)
      throw GeometryError("facet not supporting on a (dim-1)-set");
  }
  // keep only extreme points: the forms tight at a vertex must span rank dim
  // (repeated or mid-face input points are normalized away, not an error)
  {
    std::vector<Vec> extreme;
    for (const Vec& v : p.vertices) {
      if (!p.is_lattice_point(v))
        throw GeometryError("vertex not a lattice point");
      std::vector<Vec> tight_forms;
      for (const Facet& f : p.facets)
        if (f.height(v).is_zero()) tight_forms.push_back(f.a);
      if (IntMatrix::from_rows(tight_forms).rank() == dim) extreme.push_back(v);
    }
    if (extreme.empty()) throw GeometryError("no extreme points");
    p.vertices = std::move(extreme);
  }
  if (!trust_lattice_points) {
    std::vector<Vec> enumerated =
        detail::enumerate_lattice_points(ineqs, p.vertices, dim);
    if (enumerated != p.lattice_points)
      throw GeometryError("lattice points disagree with inequalities");
  }
  return p;
}

/// Builds a normalized polytope from user-coordinate vertices. For dim <= 3
/// facets come from an exact hull; higher dimensions require caller-supplied
/// inequalities (verified here).
inline Polytope build_polytope(
    const std::vector<Vec>& user_vertices,
    const std::vector<std::pair<Vec, Int>>& user_facets = {}) {
  if (user_vertices.empty()) throw PreconditionError("no vertices");
  std::vector<Vec> verts = detail::dedupe_sorted(user_vertices);

  // Step 1: coordinates on the saturated affine hull lattice, so the lattice
  // points computed next are exactly Aff(P) ∩ Z^n.
  size_t n = verts[0].size();
  IntMatrix diffs(verts.size() - 1, n);
  for (size_t i = 1; i < verts.size(); ++i)
    diffs.m[i - 1] = vec_sub(verts[i], verts[0]);
  IntMatrix sat = saturation_basis(diffs);
  size_t d = sat.cols;
  LatticeBasisChange hull_change{sat, verts[0]};
  std::vector<Vec> hverts;
  for (const Vec& v : verts) hverts.push_back(hull_change.forward(v));

  std::vector<std::pair<Vec, Int>> ineqs;
  if (!user_facets.empty()) {
    for (const auto& [a, b] : user_facets) {
      // translate the user form onto hull coordinates: a ∘ basis
      Vec ah(d, Int(0));
      for (size_t j = 0; j < d; ++j) ah[j] = dot(a, sat.col(j));
      Int bh = b - dot(a, verts[0]);
      Int g = gcd_of(ah);
      if (g.is_zero()) continue;  // form constant on the hull
      bool divides = true;
      Vec ap(d);
      for (size_t j = 0; j < d; ++j) {
        Int q, r;
        Int::tdiv_qr(ah[j], g, q, r);
        ap[j] = q;
      }
      Int q, r;
      Int::tdiv_qr(bh, g, q, r);
      if (!r.is_zero()) divides = false;
      if (!divides) throw GeometryError("supplied facet not primitive on the lattice");
      ineqs.emplace_back(ap, q);
    }
  } else if (d <= 3) {
    ineqs = detail::hull_facets(hverts, d);
  } else {
    throw PreconditionError("dim > 3 requires supplied facets");
  }

  std::vector<Vec> lpts =
      d == 0 ? std::vector<Vec>{Vec{}}
             : detail::enumerate_lattice_points(ineqs, hverts, d);

  // Step 2: renormalize onto the affine lattice generated by the lattice
  // points themselves (§-convention: L_P affinely generates Z^dim).
  auto [inner_change, d2] = normalize_affine_lattice(lpts);
  if (d2 != d) throw GeometryError("lattice points do not span the hull");
  std::vector<Vec> npts, nverts;
  for (const Vec& x : lpts) npts.push_back(inner_change.forward(x));
  for (const Vec& v : hverts) nverts.push_back(inner_change.forward(v));
  std::vector<std::pair<Vec, Int>> nineqs;
  for (const auto& [a, b] : ineqs) {
    Vec an(d, Int(0));
    for (size_t j = 0; j < d; ++j) an[j] = dot(a, inner_change.basis.col(j));
    Int bn = b - dot(a, inner_change.translation);
    Int g = gcd_of(an);
    if (g.is_zero()) continue;
    Vec ap(d);
    for (size_t j = 0; j < d; ++j) ap[j] = Int::div_exact(an[j], g);
    // offsets stay attained, so they divide as well once the point set is
    // the full lattice slice
    Int q, r;
    Int::tdiv_qr(bn, g, q, r);
    if (!r.is_zero()) throw GeometryError("non-integral facet offset");
    nineqs.emplace_back(ap, q);
  }

  // total normalization: user -> hull -> inner
  IntMatrix total_basis = hull_change.basis * inner_change.basis;
  Vec total_tr = hull_change.back(inner_change.translation);
  return assemble_polytope(d, nverts, nineqs, npts,
                           LatticeBasisChange{total_basis, total_tr});
}

inline Int height(const Polytope& p, const Facet& f, const Vec& x) {
  (void)p;
  return f.height(x);
}

/// Normal fan data: per-vertex maximal cones as sets of primitive facet
/// normals, with completeness checked combinatorially.
struct NormalFan {
  // one entry per vertex: sorted set of facet normals tight there
  std::vector<std::vector<Vec>> cones;
  std::vector<Vec> normals;  // all facet normals, sorted
};

inline NormalFan normal_fan(const Polytope& p) {
  NormalFan fan;
  for (const Facet& f : p.facets) fan.normals.push_back(f.a);
  std::sort(fan.normals.begin(), fan.normals.end(), lex_less);
  for (const Vec& v : p.vertices) {
    std::vector<Vec> cone;
    for (const Facet& f : p.facets)
      if (f.height(v).is_zero()) cone.push_back(f.a);
    std::sort(cone.begin(), cone.end(), lex_less);
    fan.cones.push_back(cone);
  }
  std::sort(fan.cones.begin(), fan.cones.end(),
            [](const std::vector<Vec>& a, const std::vector<Vec>& b) {
              return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                                  b.end(), lex_less);
            });
  // completeness, combinatorially: every facet normal appears in some
  // maximal cone, and every ridge (a common tight facet set of corank 1)
  // bounds exactly two maximal cones
  for (const Vec& a : fan.normals) {
    bool found = false;
    for (const auto& cone : fan.cones)
      found |= std::binary_search(cone.begin(), cone.end(), a, lex_less);
    if (!found) throw GeometryError("facet normal missing from fan");
  }
  for (size_t i = 0; i < p.vertices.size(); ++i)
    for (size_t j = i + 1; j < p.vertices.size(); ++j) {
      std::vector<Vec> common;
      for (const Facet& f : p.facets)
        if (f.height(p.vertices[i]).is_zero() &&
            f.height(p.vertices[j]).is_zero())
          common.push_back(f.a);
      if (IntMatrix::from_rows(common).rank() != p.dim - 1) continue;
      size_t sharing = 0;
      for (const Vec& v : p.vertices) {
        bool all = true;
        for (const Facet& f : p.facets) {
          bool tight_ij = f.height(p.vertices[i]).is_zero() &&
                          f.height(p.vertices[j]).is_zero();
          if (tight_ij && !f.height(v).is_zero()) all = false;
        }
        sharing += all;
      }
      if (sharing != 2)
        throw GeometryError("fan ridge not shared by exactly two cones");
    }
  return fan;
}

inline bool fans_equal(const NormalFan& f1, const NormalFan& f2) {
  return f1.normals == f2.normals && f1.cones == f2.cones;
}

/// Affine unimodular map x -> linear*x + shift.
struct AffineMap {
  IntMatrix linear;
  Vec shift;
  Vec apply(const Vec& x) const { return vec_add(linear.apply(x), shift); }
};

/// All affine unimodular maps carrying P onto P and permuting its lattice
/// points; found by brute force over vertex permutations.
inline std::vector<AffineMap> lattice_symmetries(const Polytope& p) {
  std::vector<AffineMap> out;
  size_t nv = p.vertices.size();
  size_t d = p.dim;
  if (d == 0) return {AffineMap{IntMatrix::identity(0), Vec{}}};
  // affine frame: d+1 vertices in general position
  std::vector<size_t> frame;
  {
    std::vector<Vec> acc;
    for (size_t i = 0; i < nv && frame.size() < d + 1; ++i) {
      std::vector<Vec> t = acc;
      t.push_back(p.vertices[i]);
      if (detail::affine_rank(t) == t.size() - 1) {
        acc = t;
        frame.push_back(i);
      }
    }
    if (frame.size() != d + 1) throw GeometryError("degenerate vertex set");
  }
  IntMatrix fm(d, d);
  for (size_t j = 0; j < d; ++j)
    for (size_t i = 0; i < d; ++i)
      fm.m[i][j] = p.vertices[frame[j + 1]][i] - p.vertices[frame[0]][i];
  std::vector<size_t> perm(nv);
  for (size_t i = 0; i < nv; ++i) perm[i] = i;
  do {
    // solve linear * (v_{f_j} - v_{f_0}) = img_j - img_0 for all frame cols
    IntMatrix rhs(d, d);
    for (size_t j = 0; j < d; ++j)
      for (size_t i = 0; i < d; ++i)
        rhs.m[i][j] =
            p.vertices[perm[frame[j + 1]]][i] - p.vertices[perm[frame[0]]][i];
    // linear = rhs * fm^{-1}; integral only if fm | rhs
    Int dfm = fm.det();
    if (dfm.is_zero()) continue;
    bool ok = true;
    IntMatrix lin(d, d);
    for (size_t i = 0; i < d && ok; ++i) {
      // row i of lin solves lin_row * fm = rhs_row  =>  fm^T x = rhs_row
      auto x = solve_square(fm.transpose(), rhs.m[i]);
      if (!x) {
        ok = false;
        break;
      }
      lin.m[i] = *x;
    }
    if (!ok) continue;
    if (!lin.det().abs().is_one()) continue;
    Vec shift = vec_sub(p.vertices[perm[frame[0]]], lin.apply(p.vertices[frame[0]]));
    AffineMap map{lin, shift};
    for (size_t i = 0; i < nv && ok; ++i)
      ok = map.apply(p.vertices[i]) == p.vertices[perm[i]];
    if (!ok) continue;
    std::vector<Vec> img;
    for (const Vec& x : p.lattice_points) img.push_back(map.apply(x));
    if (detail::dedupe_sorted(img) != p.lattice_points) continue;
    out.push_back(map);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Cartesian product of polytopes; facets are the padded facets of the
/// factors, so no hull computation is needed in any dimension.
inline Polytope product(const Polytope& p, const Polytope& q) {
  size_t d = p.dim + q.dim;
  std::vector<Vec> verts;
  for (const Vec& a : p.vertices)
    for (const Vec& b : q.vertices) {
      Vec v = a;
      v.insert(v.end(), b.begin(), b.end());
      verts.push_back(v);
    }
  std::vector<std::pair<Vec, Int>> ineqs;
  for (const Facet& f : p.facets) {
    Vec a = f.a;
    a.resize(d, Int(0));
    ineqs.emplace_back(a, f.b);
  }
  for (const Facet& f : q.facets) {
    Vec a(p.dim, Int(0));
    a.insert(a.end(), f.a.begin(), f.a.end());
    ineqs.emplace_back(a, f.b);
  }
  std::vector<Vec> pts;
  for (const Vec& a : p.lattice_points)
    for (const Vec& b : q.lattice_points) {
      Vec v = a;
      v.insert(v.end(), b.begin(), b.end());
      pts.push_back(v);
    }
  return assemble_polytope(d, verts, ineqs, pts,
                           LatticeBasisChange{IntMatrix::identity(d), Vec(d, Int(0))},
                           /*trust_lattice_points=*/true);
}

}  // namespace polykit

#endif
