#ifndef POLYKIT_INTLIN_HPP
#define POLYKIT_INTLIN_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "bigint.hpp"

namespace polykit {

using Vec = std::vector<Int>;

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Vec vec_add(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec vec_neg(const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vec vec_scale(const Int& c, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Int dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool vec_is_zero(const Vec& a) {
  for (const Int& x : a)
    if (!x.is_zero()) return false;
  return true;
}

/// Strict lexicographic order; the canonical order used for columns,
/// facets and every reproducible table in the library.
inline bool lex_less(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    int c = Int::cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

struct LexLess {
  bool operator()(const Vec& a, const Vec& b) const { return lex_less(a, b); }
};

inline Int gcd_of(const Vec& a) {
  Int g(0);
  for (const Int& x : a) g = Int::gcd(g, x);
  return g;
}

/// Dense matrix of exact integers, row major.
struct IntMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Vec> m;

  IntMatrix() = default;
  IntMatrix(size_t r, size_t c) : rows(r), cols(c), m(r, Vec(c, Int(0))) {}

  static IntMatrix identity(size_t n) {
    IntMatrix a(n, n);
    for (size_t i = 0; i < n; ++i) a.m[i][i] = Int(1);
    return a;
  }
  static IntMatrix from_rows(std::vector<Vec> rs) {
    IntMatrix a;
    a.rows = rs.size();
    a.cols = rs.empty() ? 0 : rs[0].size();
    a.m = std::move(rs);
    return a;
  }

  Int& at(size_t i, size_t j) { return m[i][j]; }
  const Int& at(size_t i, size_t j) const { return m[i][j]; }

  Vec col(size_t j) const {
    Vec c(rows);
    for (size_t i = 0; i < rows; ++i) c[i] = m[i][j];
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) t.m[j][i] = m[i][j];
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    assert(a.cols == b.rows);
    IntMatrix r(a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
      for (size_t k = 0; k < a.cols; ++k) {
        if (a.m[i][k].is_zero()) continue;
        for (size_t j = 0; j < b.cols; ++j)
          r.m[i][j] += a.m[i][k] * b.m[k][j];
      }
    return r;
  }

  Vec apply(const Vec& v) const {
    assert(v.size() == cols);
    Vec r(rows, Int(0));
    for (size_t i = 0; i < rows; ++i) r[i] = dot(m[i], v);
    return r;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.m == b.m;
  }

  /// Fraction-free Bareiss determinant.
  Int det() const {
    assert(rows == cols);
    size_t n = rows;
    if (n == 0) return Int(1);
    std::vector<Vec> a = m;
    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
      if (a[k][k].is_zero()) {
        size_t p = k + 1;
        while (p < n && a[p][k].is_zero()) ++p;
        if (p == n) return Int(0);
        std::swap(a[k], a[p]);
        sign = -sign;
      }
      for (size_t i = k + 1; i < n; ++i)
        for (size_t j = k + 1; j < n; ++j)
          a[i][j] = Int::div_exact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
      prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
  }

  size_t rank() const {
    std::vector<Vec> a = m;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
      size_t p = r;
      while (p < rows && a[p][c].is_zero()) ++p;
      if (p == rows) continue;
      std::swap(a[r], a[p]);
      for (size_t i = r + 1; i < rows; ++i) {
        if (a[i][c].is_zero()) continue;
        Int g = Int::gcd(a[r][c], a[i][c]);
        Int fr = Int::div_exact(a[i][c], g), fi = Int::div_exact(a[r][c], g);
        for (size_t j = c; j < cols; ++j)
          a[i][j] = a[i][j] * fi - a[r][j] * fr;
      }
      ++r;
    }
    return r;
  }
};

/// Solves A x = b exactly over the integers for square nonsingular A
/// (Cramer with Bareiss determinants). Returns nothing when the rational
/// solution is not integral.
inline std::optional<Vec> solve_square(const IntMatrix& a, const Vec& b) {
  assert(a.rows == a.cols && b.size() == a.rows);
  Int d = a.det();
  if (d.is_zero()) return std::nullopt;
  size_t n = a.rows;
  Vec x(n);
  for (size_t j = 0; j < n; ++j) {
    IntMatrix aj = a;
    for (size_t i = 0; i < n; ++i) aj.m[i][j] = b[i];
    Int dj = aj.det();
    Int q, r;
    Int::tdiv_qr(dj, d, q, r);
    if (!r.is_zero()) return std::nullopt;
    x[j] = q;
  }
  return x;
}

/// Inverse of a unimodular matrix (|det| = 1); exact.
inline IntMatrix unimodular_inverse(const IntMatrix& a) {
  assert(a.rows == a.cols);
  size_t n = a.rows;
  assert(a.det().abs().is_one());
  IntMatrix inv(n, n);
  for (size_t j = 0; j < n; ++j) {
    Vec e(n, Int(0));
    e[j] = Int(1);
    auto x = solve_square(a, e);
    assert(x);
    for (size_t i = 0; i < n; ++i) inv.m[i][j] = (*x)[i];
  }
  return inv;
}

/// Affine lattice isomorphism between Z^d (normalized coordinates) and the
/// coset translation + column-lattice(basis) inside Z^n (user coordinates).
/// When basis is square it is a unimodular change of basis and the usual
/// invariants forward.inverse = id, |det| = 1 hold literally.
struct LatticeBasisChange {
  IntMatrix basis;  // n x d, columns are the lattice basis (canonical HNF)
  Vec translation;  // size n

  size_t ambient_dim() const { return basis.rows; }
  size_t lattice_dim() const { return basis.cols; }
  bool is_square() const { return basis.rows == basis.cols; }

  /// normalized -> user
  Vec back(const Vec& y) const {
    assert(y.size() == basis.cols);
    Vec r = translation;
    for (size_t i = 0; i < basis.rows; ++i) r[i] += dot(basis.m[i], y);
    return r;
  }

  /// user -> normalized; nothing if x is not on the affine lattice.
  std::optional<Vec> try_forward(const Vec& x) const {
    assert(x.size() == basis.rows);
    Vec rhs = vec_sub(x, translation);
    size_t d = basis.cols;
    if (d == 0) return vec_is_zero(rhs) ? std::optional<Vec>(Vec{}) : std::nullopt;
    // solve on d independent rows, then verify all of them
    std::vector<size_t> sel = independent_rows();
    IntMatrix sub(d, d);
    Vec sb(d);
    for (size_t i = 0; i < d; ++i) {
      sub.m[i] = basis.m[sel[i]];
      sb[i] = rhs[sel[i]];
    }
    auto y = solve_square(sub, sb);
    if (!y) return std::nullopt;
    if (back(*y) != x) return std::nullopt;
    return y;
  }

  Vec forward(const Vec& x) const {
    auto y = try_forward(x);
    if (!y) throw PreconditionError("point not on the affine lattice");
    return *y;
  }

  IntMatrix inverse_matrix() const {
    assert(is_square());
    return unimodular_inverse(basis);
  }

private:
  std::vector<size_t> independent_rows() const {
    size_t d = basis.cols;
    std::vector<size_t> sel;
    IntMatrix acc(0, d);
    for (size_t i = 0; i < basis.rows && sel.size() < d; ++i) {
      IntMatrix t = acc;
      t.m.push_back(basis.m[i]);
      t.rows++;
      if (t.rank() == t.rows) {
        acc = t;
        sel.push_back(i);
      }
    }
    assert(sel.size() == d);
    return sel;
  }
};

struct HnfResult {
  IntMatrix h;             // h = m * u
  IntMatrix u;             // unimodular cofactor (column operations)
  LatticeBasisChange change() const {
    return LatticeBasisChange{u, Vec(u.rows, Int(0))};
  }
};

/// Canonical column-style Hermite normal form: h = m * u with u unimodular.
/// Nonzero columns of h form the canonical basis of the column lattice of m:
/// pivots positive and strictly descending the staircase, entries left of a
/// pivot reduced into [0, pivot).
inline HnfResult hermite_normal_form(const IntMatrix& mat) {
  IntMatrix h = mat;
  IntMatrix u = IntMatrix::identity(mat.cols);
  size_t piv = 0;
  auto colop2 = [&](size_t c1, size_t c2, const Int& a, const Int& b,
                    const Int& c, const Int& d) {
    // (C1, C2) <- (a C1 + b C2, c C1 + d C2), ad - bc = +-1
    for (IntMatrix* mp : {&h, &u}) {
      for (size_t i = 0; i < mp->rows; ++i) {
        Int x = mp->m[i][c1], y = mp->m[i][c2];
        mp->m[i][c1] = a * x + b * y;
        mp->m[i][c2] = c * x + d * y;
      }
    }
  };
  auto addmul = [&](size_t dst, size_t src, const Int& q) {
    // C_dst <- C_dst + q C_src
    for (IntMatrix* mp : {&h, &u})
      for (size_t i = 0; i < mp->rows; ++i)
        mp->m[i][dst] += q * mp->m[i][src];
  };
  for (size_t row = 0; row < mat.rows && piv < mat.cols; ++row) {
    // gather the row's weight into column piv
    for (size_t c = piv + 1; c < mat.cols; ++c) {
      if (h.m[row][c].is_zero()) continue;
      if (h.m[row][piv].is_zero()) {
        colop2(piv, c, Int(0), Int(1), Int(1), Int(0));  // swap
        continue;
      }
      Int x, y;
      Int g = Int::gcd_ext(h.m[row][piv], h.m[row][c], x, y);
      Int ap = Int::div_exact(h.m[row][piv], g);
      Int cp = Int::div_exact(h.m[row][c], g);
      colop2(piv, c, x, y, -cp, ap);
    }
    if (h.m[row][piv].is_zero()) continue;
    if (h.m[row][piv].is_neg()) {
      for (IntMatrix* mp : {&h, &u})
        for (size_t i = 0; i < mp->rows; ++i) mp->m[i][piv] = -mp->m[i][piv];
    }
    // reduce earlier columns in this row into [0, pivot)
    for (size_t k = 0; k < piv; ++k) {
      Int q, r;
      Int::fdiv_qr(h.m[row][k], h.m[row][piv], q, r);
      if (!q.is_zero()) addmul(k, piv, -q);
    }
    ++piv;
  }
  return HnfResult{h, u};
}

/// Basis of the integer kernel {x in Z^n : m x = 0}; saturated by
/// construction (columns of the HNF cofactor matching zero columns of h).
inline IntMatrix kernel_basis(const IntMatrix& mat) {
  HnfResult hr = hermite_normal_form(mat);
  std::vector<size_t> zero_cols;
  for (size_t c = 0; c < mat.cols; ++c) {
    bool allz = true;
    for (size_t r = 0; r < mat.rows && allz; ++r)
      allz = hr.h.m[r][c].is_zero();
    if (allz) zero_cols.push_back(c);
  }
  IntMatrix k(mat.cols, zero_cols.size());
  for (size_t j = 0; j < zero_cols.size(); ++j)
    for (size_t i = 0; i < mat.cols; ++i) k.m[i][j] = hr.u.m[i][zero_cols[j]];
  return k;
}

/// Basis of the saturation (R-span of the rows of d) ∩ Z^n.
inline IntMatrix saturation_basis(const IntMatrix& d) {
  IntMatrix forms = kernel_basis(d);            // covectors vanishing on rows
  return kernel_basis(forms.transpose());       // their common integer kernel
}

/// Normalizes a point set onto the smallest affine sublattice containing it:
/// returns the change (user <-> Z^d) and d.
inline std::pair<LatticeBasisChange, size_t> normalize_affine_lattice(
    const std::vector<Vec>& points) {
  if (points.empty()) throw PreconditionError("no points");
  const Vec& z0 = points[0];
  size_t n = z0.size();
  IntMatrix diffs(points.size() - 1, n);
  for (size_t i = 1; i < points.size(); ++i)
    diffs.m[i - 1] = vec_sub(points[i], z0);
  // canonical basis of the difference lattice via column HNF of diffs^T
  HnfResult hr = hermite_normal_form(diffs.transpose());
  size_t d = 0;
  for (size_t c = 0; c < hr.h.cols; ++c) {
    bool allz = true;
    for (size_t r = 0; r < hr.h.rows && allz; ++r) allz = hr.h.m[r][c].is_zero();
    if (!allz) ++d;
  }
  IntMatrix basis(n, d);
  for (size_t c = 0; c < d; ++c)
    for (size_t i = 0; i < n; ++i) basis.m[i][c] = hr.h.m[i][c];
  return {LatticeBasisChange{basis, z0}, d};
}

/// Primitive support form through the given hyperplane points, positive on
/// inside_point: gcd(a) = 1, <a,k> = b for every kernel point, <a,inside> > b.
inline std::pair<Vec, Int> primitive_form(const std::vector<Vec>& kernel_points,
                                          const Vec& inside_point) {
  if (kernel_points.empty()) throw PreconditionError("empty kernel");
  size_t n = inside_point.size();
  IntMatrix diffs(kernel_points.size() - 1, n);
  for (size_t i = 1; i < kernel_points.size(); ++i)
    diffs.m[i - 1] = vec_sub(kernel_points[i], kernel_points[0]);
  IntMatrix k = kernel_basis(diffs.rows ? diffs : IntMatrix(0, n));
  if (k.cols != 1)
    throw PreconditionError("kernel is not of codimension 1");
  Vec a = k.col(0);
  assert(gcd_of(a).is_one());
  Int b = dot(a, kernel_points[0]);
  Int inside_val = dot(a, inside_point);
  if (inside_val == b) throw PreconditionError("inside point on hyperplane");
  if (inside_val < b) {
    a = vec_neg(a);
    b = -b;
  }
  return {a, b};
}

/// Canonical p with <a,p> = 1; left-to-right extended Euclid over the
/// coordinates. pre: gcd(a) = 1.
inline Vec solve_unit_value(const Vec& a) {
  Int g(0);
  Vec p(a.size(), Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    Int x, y;
    Int g2 = Int::gcd_ext(g, a[i], x, y);
    for (size_t j = 0; j < i; ++j) p[j] *= x;
    p[i] = y;
    g = g2;
  }
  if (!g.is_one()) throw PreconditionError("form is not primitive");
  assert(dot(a, p).is_one());
  return p;
}

}  // namespace polykit

#endif
