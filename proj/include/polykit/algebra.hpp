#ifndef POLYKIT_ALGEBRA_HPP
#define POLYKIT_ALGEBRA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "columns.hpp"
#include "rings.hpp"

namespace polykit {

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Monomials of R[P] are exponent vectors in Z^{dim+1}: a lattice point x is
/// (x,1), a column vector v is (v,0); the last coordinate is the degree.
using Monomial = Vec;

inline Monomial point_monomial(const Vec& x) {
  Monomial m = x;
  m.push_back(Int(1));
  return m;
}

/// Linearly extended height of a monomial over facet F: <a,z> - deg * b.
inline Int mono_height(const Facet& f, const Monomial& m) {
  size_t d = m.size() - 1;
  Int s(0);
  for (size_t i = 0; i < d; ++i) s += f.a[i] * m[i];
  return s - m[d] * f.b;
}

/// Geometric containment: the monomial lies in deg * P.
inline bool mono_in_degree_scaled(const Polytope& p, const Monomial& m) {
  for (const Facet& f : p.facets)
    if (mono_height(f, m).is_neg()) return false;
  return true;
}

/// Finite coefficient map over monomials; zero coefficients never stored.
template <class R>
struct Element {
  std::map<Monomial, typename R::Elem, LexLess> terms;

  static Element unit(const R& ring, const Monomial& m) {
    Element e;
    e.terms[m] = ring.one();
    return e;
  }

  void add_term(const R& ring, const Monomial& m, const typename R::Elem& c) {
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (!ring.is_zero(c)) terms[m] = c;
    } else {
      it->second = ring.add(it->second, c);
      if (ring.is_zero(it->second)) terms.erase(it);
    }
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.terms == b.terms;
  }
};

/// Product in R[P]: monomials add exponentwise (degrees add).
template <class R>
Element<R> mul_elements(const R& ring, const Element<R>& a,
                        const Element<R>& b) {
  Element<R> r;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms)
      r.add_term(ring, vec_add(ma, mb), ring.mul(ca, cb));
  return r;
}

/// One letter of an automorphism word: an elementary automorphism e_v^lam or
/// a toric (monomial-scaling) automorphism given by unit character values on
/// the standard basis of Z^{dim+1}.
template <class R>
struct Letter {
  enum class Kind { Elementary, Toric } kind;
  ColumnVector col;                          // Elementary
  typename R::Elem lam{};                    // Elementary
  std::vector<typename R::Elem> char_vals;   // Toric, size dim+1
  std::vector<typename R::Elem> char_invs;   // Toric

  static Letter elementary(ColumnVector c, typename R::Elem l) {
    Letter lt{Kind::Elementary, std::move(c), std::move(l), {}, {}};
    return lt;
  }
  static Letter toric(const R& ring, std::vector<typename R::Elem> vals) {
    Letter lt{Kind::Toric, {}, {}, std::move(vals), {}};
    for (const auto& v : lt.char_vals) {
      auto inv = ring.try_invert(v);
      if (!inv) throw AlgebraError("toric character value is not a unit");
      lt.char_invs.push_back(*inv);
    }
    return lt;
  }

  Letter inverse(const R& ring) const {
    Letter lt = *this;
    if (kind == Kind::Elementary) {
      lt.lam = ring.neg(lam);
    } else {
      std::swap(lt.char_vals, lt.char_invs);
    }
    return lt;
  }
};

template <class R>
struct AutoWord {
  std::vector<Letter<R>> letters;

  AutoWord inverse(const R& ring) const {
    AutoWord w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.push_back(it->inverse(ring));
    return w;
  }

  friend AutoWord operator*(const AutoWord& a, const AutoWord& b) {
    AutoWord w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
  }
};

/// e_v^lam on an element: every monomial m with height h = ht_v(m) maps to
/// sum_i C(h,i) lam^i (m + i v). Output monomials are verified inside
/// deg * P (endpoints suffice: facet values are linear in i).
template <class R>
Element<R> apply_elementary(const Polytope& p, const R& ring,
                            const ColumnVector& col,
                            const typename R::Elem& lam, const Element<R>& e) {
  const Facet& base = p.facets[col.base_facet];
  Element<R> out;
  for (const auto& [m, c] : e.terms) {
    Int h = mono_height(base, m);
    if (h.is_neg()) throw AlgebraError("monomial below its base facet");
    Monomial top = m;
    for (size_t i = 0; i + 1 < m.size(); ++i) top[i] += h * col.v[i];
    if (!mono_in_degree_scaled(p, m) || !mono_in_degree_scaled(p, top))
      throw AlgebraError("monomial escapes deg * P");
    typename R::Elem pw = ring.one();
    Monomial cur = m;
    for (Int i(0); i <= h; i += Int(1)) {
      typename R::Elem coeff =
          ring.mul(c, ring.mul(ring.from_int(Int::binomial(h, i)), pw));
      out.add_term(ring, cur, coeff);
      pw = ring.mul(pw, lam);
      for (size_t k = 0; k + 1 < cur.size(); ++k) cur[k] += col.v[k];
    }
  }
  return out;
}

template <class R>
Element<R> apply_toric(const R& ring, const std::vector<typename R::Elem>& vals,
                       const std::vector<typename R::Elem>& invs,
                       const Element<R>& e) {
  Element<R> out;
  for (const auto& [m, c] : e.terms) {
    assert(m.size() == vals.size());
    typename R::Elem s = ring.one();
    for (size_t i = 0; i < m.size(); ++i) {
      if (!m[i].fits_ll()) throw AlgebraError("exponent overflow");
      long long ei = m[i].to_ll();
      const typename R::Elem& base = ei >= 0 ? vals[i] : invs[i];
      for (long long k = 0; k < std::abs(ei); ++k) s = ring.mul(s, base);
    }
    out.add_term(ring, m, ring.mul(c, s));
  }
  return out;
}

template <class R>
Element<R> apply_letter(const Polytope& p, const R& ring, const Letter<R>& lt,
                        const Element<R>& e) {
  if (lt.kind == Letter<R>::Kind::Elementary)
    return apply_elementary(p, ring, lt.col, lt.lam, e);
  return apply_toric(ring, lt.char_vals, lt.char_invs, e);
}

/// Composition convention resolved by calibration (see comm_convention).
struct CommConvention {
  bool inverse_first;   // bracket [a,b] = a^-1 b^-1 a b instead of a b a^-1 b^-1
  bool left_to_right;   // words applied first-letter-first instead of last-first
};

template <class R>
Element<R> apply_word_with(const Polytope& p, const R& ring,
                           const AutoWord<R>& w, Element<R> e,
                           bool left_to_right) {
  if (left_to_right) {
    for (const Letter<R>& lt : w.letters) e = apply_letter(p, ring, lt, e);
  } else {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      e = apply_letter(p, ring, *it, e);
  }
  return e;
}

const CommConvention& comm_convention();  // defined after verify machinery

/// Letters applied per the calibrated composition convention.
template <class R>
Element<R> apply_word(const Polytope& p, const R& ring, const AutoWord<R>& w,
                      const Element<R>& e) {
  return apply_word_with(p, ring, w, e, comm_convention().left_to_right);
}

template <class R>
bool words_agree_on(const Polytope& p, const R& ring, const AutoWord<R>& w1,
                    const AutoWord<R>& w2, const std::vector<Vec>& pts,
                    bool left_to_right) {
  for (const Vec& x : pts) {
    Element<R> gen = Element<R>::unit(ring, point_monomial(x));
    if (!(apply_word_with(p, ring, w1, gen, left_to_right) ==
          apply_word_with(p, ring, w2, gen, left_to_right)))
      return false;
  }
  return true;
}

/// Equality of automorphism words, decided on the degree-1 generators
/// (they generate R[P], so this is sound and exact).
template <class R>
bool words_equal(const Polytope& p, const R& ring, const AutoWord<R>& w1,
                 const AutoWord<R>& w2) {
  return words_agree_on(p, ring, w1, w2, p.lattice_points,
                        comm_convention().left_to_right);
}

template <class R>
AutoWord<R> bracket_word(const R& ring, const AutoWord<R>& a,
                         const AutoWord<R>& b, bool inverse_first) {
  if (inverse_first) return a.inverse(ring) * b.inverse(ring) * a * b;
  return a * b * a.inverse(ring) * b.inverse(ring);
}

/// The right-hand side of the commutator theorem for the ordered pair (u,v):
/// product of e_{u+iv}^{-C(n,i) lam mu^i} when uv exists (n = <P_v,u>), the
/// mirrored product when vu exists (n = <P_u,v>), the empty word when
/// u+v is not a column vector.
template <class R>
AutoWord<R> commutator_rhs(const Polytope& p, const R& ring,
                           const ColumnVector& u, const ColumnVector& v,
                           const typename R::Elem& lam,
                           const typename R::Elem& mu) {
  if (vec_is_zero(vec_add(u.v, v.v)))
    throw PreconditionError("u = -v is outside the theorem");
  AutoWord<R> w;
  auto emit = [&](const ColumnVector& a, const ColumnVector& b,
                  const typename R::Elem& s, const typename R::Elem& t,
                  bool negate) {
    // prod_{i=1..n} e_{a+ib}^{sign C(n,i) s t^i}, n = <P_b, a>
    Int n = p.facets[b.base_facet].pair(a.v);
    typename R::Elem tp = ring.one();
    Vec cur = a.v;
    for (Int i(1); i <= n; i += Int(1)) {
      tp = ring.mul(tp, t);
      for (size_t k = 0; k < cur.size(); ++k) cur[k] += b.v[k];
      auto base = find_base(p, cur);
      assert(base);  // u+iv stays a column for i up to the height
      typename R::Elem coeff =
          ring.mul(ring.from_int(Int::binomial(n, i)), ring.mul(s, tp));
      if (negate) coeff = ring.neg(coeff);
      w.letters.push_back(Letter<R>::elementary(ColumnVector{cur, *base}, coeff));
    }
  };
  if (product(p, u, v)) {
    emit(u, v, lam, mu, /*negate=*/true);
  } else if (product(p, v, u)) {
    emit(v, u, mu, lam, /*negate=*/false);
  } else {
    // otherwise u+v is not a column vector; empty word
    assert(!find_base(p, vec_add(u.v, v.v)));
  }
  return w;
}

namespace detail {

template <class R>
bool comrel_holds_with(const Polytope& p, const R& ring, const ColumnVector& u,
                       const ColumnVector& v, const typename R::Elem& lam,
                       const typename R::Elem& mu, const CommConvention& conv) {
  AutoWord<R> a, b;
  a.letters.push_back(Letter<R>::elementary(u, lam));
  b.letters.push_back(Letter<R>::elementary(v, mu));
  AutoWord<R> lhs = bracket_word(ring, a, b, conv.inverse_first);
  AutoWord<R> rhs = commutator_rhs(p, ring, u, v, lam, mu);
  return words_agree_on(p, ring, lhs, rhs, p.lattice_points, conv.left_to_right);
}

inline Polytope calibration_quadrangle() {
  return build_polytope({Vec{Int(0), Int(0)}, Vec{Int(3), Int(0)},
                         Vec{Int(1), Int(2)}, Vec{Int(0), Int(1)}});
}
inline Polytope calibration_triangle() {
  return build_polytope(
      {Vec{Int(0), Int(0)}, Vec{Int(2), Int(0)}, Vec{Int(0), Int(1)}});
}

}  // namespace detail

/// The commutator/composition convention is not forced a priori; exactly one
/// of the four combinations satisfies the commutator theorem on both the
/// n = 1 quadrangle and the n = 2 triangle. Calibrated once and frozen.
inline const CommConvention& comm_convention() {
  static const CommConvention conv = [] {
    LaurentRing ring({"lambda", "mu"});
    LaurentPoly lam = ring.var("lambda"), mu = ring.var("mu");
    Polytope pc = detail::calibration_quadrangle();
    Polytope tri = detail::calibration_triangle();
    ColumnTable tc = column_vectors(pc), tt = column_vectors(tri);
    ColumnVector uc = tc.columns[*tc.index_of(Vec{Int(0), Int(-1)})];
    ColumnVector vc = tc.columns[*tc.index_of(Vec{Int(1), Int(0)})];
    ColumnVector ut = tt.columns[*tt.index_of(Vec{Int(0), Int(-1)})];
    ColumnVector vt = tt.columns[*tt.index_of(Vec{Int(1), Int(0)})];
    std::optional<CommConvention> found;
    int hits = 0;
    for (bool inv_first : {false, true})
      for (bool l2r : {false, true}) {
        CommConvention c{inv_first, l2r};
        if (detail::comrel_holds_with(pc, ring, uc, vc, lam, mu, c) &&
            detail::comrel_holds_with(tri, ring, ut, vt, lam, mu, c)) {
          found = c;
          ++hits;
        }
      }
    if (hits != 1)
      throw AlgebraError("commutator convention calibration not unique");
    return *found;
  }();
  return conv;
}

struct ComrelReport {
  int branch = 0;  // 1: uv exists, 2: vu exists, 3: u+v not a column
  bool pass = false;
};

/// Symbolic (or any exact-ring) verification of the commutator theorem for
/// one ordered pair.
template <class R>
ComrelReport verify_comrel(const Polytope& p, const R& ring,
                           const ColumnVector& u, const ColumnVector& v,
                           const typename R::Elem& lam,
                           const typename R::Elem& mu) {
  ComrelReport rep;
  if (product(p, u, v))
    rep.branch = 1;
  else if (product(p, v, u))
    rep.branch = 2;
  else
    rep.branch = 3;
  rep.pass = detail::comrel_holds_with(p, ring, u, v, lam, mu, comm_convention());
  return rep;
}

/// (e_v^1 ∘ e_{-v}^{-1} ∘ e_v^1)^2 for an invertible column pair; the element
/// behind the non-embedding phenomenon on the second layer.
template <class R>
AutoWord<R> weyl_square_word(const R& ring, const ColumnVector& v,
                             const ColumnVector& minus_v) {
  AutoWord<R> w;
  for (int rep = 0; rep < 2; ++rep) {
    w.letters.push_back(Letter<R>::elementary(v, ring.one()));
    w.letters.push_back(Letter<R>::elementary(minus_v, ring.neg(ring.one())));
    w.letters.push_back(Letter<R>::elementary(v, ring.one()));
  }
  return w;
}

struct AfembReport {
  bool pairwise_commute = false;
  bool inverse_formula = false;
  bool additive = false;
  bool injective = false;
  bool samples_distinct = false;
  bool pass() const {
    return pairwise_commute && inverse_formula && additive && injective &&
           samples_distinct;
  }
};

/// Verifies that the columns with base facet f embed the additive group R^s:
/// symbolic commutation, the product-inverse formula, additivity, exact
/// injectivity on the coefficient level, plus seeded integer sampling.
inline AfembReport same_base_embedding_check(const Polytope& p, size_t facet_id,
                                             unsigned long long seed = 1) {
  ColumnTable table = column_vectors(p);
  std::vector<ColumnVector> cols;
  for (const ColumnVector& c : table.columns)
    if (c.base_facet == facet_id) cols.push_back(c);
  if (cols.empty()) throw PreconditionError("no column with this base facet");
  size_t s = cols.size();
  AfembReport rep;

  std::vector<std::string> names;
  for (size_t i = 0; i < s; ++i) names.push_back("n" + std::to_string(i));
  for (size_t i = 0; i < s; ++i) names.push_back("m" + std::to_string(i));
  LaurentRing ring(names);
  std::vector<LaurentPoly> nu, nu2;
  for (size_t i = 0; i < s; ++i) nu.push_back(ring.var(names[i]));
  for (size_t i = 0; i < s; ++i) nu2.push_back(ring.var(names[s + i]));
  auto word_of = [&](const std::vector<LaurentPoly>& scal) {
    AutoWord<LaurentRing> w;
    for (size_t i = 0; i < s; ++i)
      w.letters.push_back(Letter<LaurentRing>::elementary(cols[i], scal[i]));
    return w;
  };

  rep.pairwise_commute = true;
  for (size_t i = 0; i < s; ++i)
    for (size_t j = i + 1; j < s; ++j) {
      AutoWord<LaurentRing> ij, ji;
      ij.letters = {Letter<LaurentRing>::elementary(cols[i], nu[i]),
                    Letter<LaurentRing>::elementary(cols[j], nu[j])};
      ji.letters = {Letter<LaurentRing>::elementary(cols[j], nu[j]),
                    Letter<LaurentRing>::elementary(cols[i], nu[i])};
      rep.pairwise_commute =
          rep.pairwise_commute && words_equal(p, ring, ij, ji);
    }

  std::vector<LaurentPoly> neg_nu, sum_nu;
  for (size_t i = 0; i < s; ++i) neg_nu.push_back(ring.neg(nu[i]));
  for (size_t i = 0; i < s; ++i) sum_nu.push_back(ring.add(nu[i], nu2[i]));
  rep.inverse_formula =
      words_equal(p, ring, word_of(nu) * word_of(neg_nu), AutoWord<LaurentRing>{});
  rep.additive = words_equal(p, ring, word_of(nu) * word_of(nu2), word_of(sum_nu));

  // injectivity: at any height-1 point x over f the image coefficient of
  // x+v_i is the bare variable nu_i, so word(nu) = id forces nu = 0 in every
  // commutative ring
  rep.injective = true;
  const Facet& f = p.facets[facet_id];
  for (size_t i = 0; i < s; ++i) {
    bool witness = false;
    for (const Vec& x : p.lattice_points) {
      if (f.height(x) != Int(1)) continue;
      Element<LaurentRing> img = apply_word(
          p, ring, word_of(nu), Element<LaurentRing>::unit(ring, point_monomial(x)));
      Monomial target = point_monomial(vec_add(x, cols[i].v));
      auto it = img.terms.find(target);
      if (it != img.terms.end() && it->second == nu[i]) witness = true;
      if (witness) break;
    }
    rep.injective = rep.injective && witness;
  }

  // seeded integer tuples: distinct tuples give distinct automorphisms
  IntRing zring;
  unsigned long long state = seed;
  auto rnd = [&]() {
    state += 0x9e3779b97f4a7c15ull;
    unsigned long long z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  std::vector<std::vector<long long>> tuples;
  for (int t = 0; t < 6; ++t) {
    std::vector<long long> tu;
    for (size_t i = 0; i < s; ++i)
      tu.push_back(static_cast<long long>(rnd() % 11) - 5);
    tuples.push_back(tu);
  }
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  std::vector<std::string> sigs;
  for (const auto& tu : tuples) {
    AutoWord<IntRing> w;
    for (size_t i = 0; i < s; ++i)
      w.letters.push_back(Letter<IntRing>::elementary(cols[i], Int(tu[i])));
    std::string sig;
    for (const Vec& x : p.lattice_points) {
      Element<IntRing> img = apply_word(
          p, zring, w, Element<IntRing>::unit(zring, point_monomial(x)));
      for (const auto& [m, c] : img.terms) {
        for (const Int& e : m) sig += e.to_string() + ",";
        sig += ":" + c.to_string() + ";";
      }
      sig += "|";
    }
    sigs.push_back(sig);
  }
  std::sort(sigs.begin(), sigs.end());
  rep.samples_distinct =
      std::unique(sigs.begin(), sigs.end()) == sigs.end();
  return rep;
}

struct ToricStarReport {
  bool ratio_independent = false;
  bool conjugation_ok = false;
  bool pass() const { return ratio_independent && conjugation_ok; }
};

/// Conjugation of an elementary automorphism by a symbolic unit character:
/// alpha ∘ e_w^1 ∘ alpha^{-1} = e_w^{alpha(w)}, with alpha(w) computed as the
/// ratio alpha(z w)/alpha(z), checked for independence over all
/// admissible z.
inline ToricStarReport toric_conjugation_check(const Polytope& p,
                                               const ColumnVector& w) {
  size_t d1 = p.dim + 1;
  std::vector<std::string> names;
  for (size_t i = 0; i < d1; ++i) names.push_back("t" + std::to_string(i));
  LaurentRing ring(names);
  std::vector<LaurentPoly> vals, invs;
  for (size_t i = 0; i < d1; ++i) {
    vals.push_back(ring.var(names[i]));
    invs.push_back(*ring.try_invert(vals.back()));
  }
  auto chi = [&](const Monomial& m) {
    LaurentPoly s = ring.one();
    for (size_t i = 0; i < d1; ++i) {
      long long e = m[i].to_ll();
      const LaurentPoly& b = e >= 0 ? vals[i] : invs[i];
      for (long long k = 0; k < std::abs(e); ++k) s = ring.mul(s, b);
    }
    return s;
  };

  ToricStarReport rep;
  const Facet& base = p.facets[w.base_facet];
  std::optional<LaurentPoly> ratio;
  rep.ratio_independent = true;
  for (const Vec& z : p.lattice_points) {
    if (base.height(z).signum() <= 0) continue;  // z on base facet: z+w may leave P
    LaurentPoly num = chi(point_monomial(vec_add(z, w.v)));
    LaurentPoly den_inv = *ring.try_invert(chi(point_monomial(z)));
    LaurentPoly r = ring.mul(num, den_inv);
    if (!ratio)
      ratio = r;
    else
      rep.ratio_independent = rep.ratio_independent && (*ratio == r);
  }
  if (!ratio) throw PreconditionError("no lattice point off the base facet");

  // alpha ∘ e_w^1 ∘ alpha^{-1} with alpha applied last under the calibrated
  // application order
  Letter<LaurentRing> alpha = Letter<LaurentRing>::toric(ring, vals);
  Letter<LaurentRing> alpha_inv = alpha.inverse(ring);
  Letter<LaurentRing> ew = Letter<LaurentRing>::elementary(w, ring.one());
  AutoWord<LaurentRing> lhs, rhs;
  if (comm_convention().left_to_right)
    lhs.letters = {alpha_inv, ew, alpha};
  else
    lhs.letters = {alpha, ew, alpha_inv};
  rhs.letters.push_back(Letter<LaurentRing>::elementary(w, *ratio));
  rep.conjugation_ok = words_equal(p, ring, lhs, rhs);
  return rep;
}

}  // namespace polykit

#endif
