#include <doctest.h>

#include <polykit/algebra.hpp>

#include "corpus.hpp"

using namespace polykit;
using corpus::pt;

namespace {

ColumnVector col_of(const Polytope& p, const ColumnTable& t,
                    std::initializer_list<long long> v) {
  auto i = t.index_of(pt(v));
  REQUIRE(i.has_value());
  return t.columns[*i];
}

template <class R>
AutoWord<R> single(const ColumnVector& c, const typename R::Elem& lam) {
  AutoWord<R> w;
  w.letters.push_back(Letter<R>::elementary(c, lam));
  return w;
}

}  // namespace

TEST_CASE("calibration resolves a unique commutator convention") {
  CHECK_NOTHROW(comm_convention());
  // the unique convention is function composition: words apply their
  // rightmost letter first, and [a,b] = a b a^-1 b^-1
  CHECK(!comm_convention().left_to_right);
  CHECK(!comm_convention().inverse_first);
}

TEST_CASE("coefficient rings: exact equality and unit inversion") {
  SUBCASE("mod ring") {
    ModRing m6{Int(6)};
    CHECK(m6.from_int(Int(-1)) == Int(5));
    CHECK(m6.mul(Int(4), Int(5)) == Int(2));
    CHECK(!m6.try_invert(Int(2)).has_value());
    auto inv = m6.try_invert(Int(5));
    REQUIRE(inv.has_value());
    CHECK(m6.mul(*inv, Int(5)) == m6.one());
  }
  SUBCASE("Laurent ring") {
    LaurentRing r({"x", "y"});
    LaurentPoly x = r.var("x"), y = r.var("y");
    // (x+y)^2 = x^2 + 2xy + y^2
    LaurentPoly s = r.add(x, y);
    LaurentPoly sq = r.mul(s, s);
    LaurentPoly expect = r.add(
        r.add(r.mul(x, x), r.mul(r.from_int(Int(2)), r.mul(x, y))),
        r.mul(y, y));
    CHECK(sq == expect);
    // cancellation prunes zero coefficients
    CHECK(r.is_zero(r.sub(sq, expect)));
    // units are +- monomials and invert exactly
    auto inv = r.try_invert(r.mul(x, x));
    REQUIRE(inv.has_value());
    CHECK(r.mul(*inv, r.mul(x, x)) == r.one());
    CHECK(!r.try_invert(s).has_value());
    // binomial scaling goes through from_int
    CHECK(r.mul(r.from_int(Int::binomial(Int(4), Int(2))), r.one()) ==
          r.from_int(Int(6)));
  }
  SUBCASE("descriptor strings") {
    CHECK(RingSpec::parse("int").has_value());
    auto m = RingSpec::parse("mod:7");
    REQUIRE(m.has_value());
    CHECK(m->modulus == Int(7));
    auto p = RingSpec::parse("poly:lambda,mu,nu");
    REQUIRE(p.has_value());
    CHECK(p->vars == std::vector<std::string>{"lambda", "mu", "nu"});
    CHECK(!RingSpec::parse("mod:1").has_value());
    CHECK(!RingSpec::parse("poly:").has_value());
    CHECK(!RingSpec::parse("field:9").has_value());
  }
}

TEST_CASE("apply_elementary: stated examples") {
  Polytope p = corpus::delta2x2();
  ColumnTable t = column_vectors(p);
  ColumnVector v = col_of(p, t, {1, 0});
  IntRing zz;

  SUBCASE("2Δ2, v=(1,0), λ=1 on (0,1;1) gives (0,1;1)+(1,1;1)") {
    Element<IntRing> e =
        Element<IntRing>::unit(zz, point_monomial(pt({0, 1})));
    Element<IntRing> out = apply_elementary(p, zz, v, Int(1), e);
    REQUIRE(out.terms.size() == 2);
    CHECK(out.terms.at(point_monomial(pt({0, 1}))) == Int(1));
    CHECK(out.terms.at(point_monomial(pt({1, 1}))) == Int(1));
  }
  SUBCASE("λ=0 is the identity") {
    for (const Vec& x : p.lattice_points) {
      Element<IntRing> e = Element<IntRing>::unit(zz, point_monomial(x));
      CHECK(apply_elementary(p, zz, v, Int(0), e) == e);
    }
  }
  SUBCASE("e_v^λ then e_v^{-λ} is the identity on degree-1 monomials") {
    for (const auto& [name, q] : corpus::all()) {
      ColumnTable tq = column_vectors(q);
      for (const ColumnVector& c : tq.columns)
        for (const Vec& x : q.lattice_points) {
          Element<IntRing> e = Element<IntRing>::unit(zz, point_monomial(x));
          Element<IntRing> round = apply_elementary(
              q, zz, c, Int(-3), apply_elementary(q, zz, c, Int(3), e));
          CHECK(round == e);
        }
    }
  }
}

TEST_CASE("elementary letters are ring homomorphisms (degree-2 oracle)") {
  // e(x·y) = e(x)·e(y): the binomial action on degree-2 monomials must agree
  // with the convolution of the degree-1 actions
  for (const auto& name : {std::string("p_c"), std::string("2delta2")}) {
    Polytope p = name == "p_c" ? corpus::p_c() : corpus::delta2x2();
    ColumnTable t = column_vectors(p);
    IntRing zz;
    for (const ColumnVector& c : t.columns)
      for (const Vec& x : p.lattice_points)
        for (const Vec& y : p.lattice_points) {
          Monomial m2 = vec_add(point_monomial(x), point_monomial(y));
          Element<IntRing> e2 = Element<IntRing>::unit(zz, m2);
          Element<IntRing> direct = apply_elementary(p, zz, c, Int(2), e2);
          Element<IntRing> ex = apply_elementary(
              p, zz, c, Int(2), Element<IntRing>::unit(zz, point_monomial(x)));
          Element<IntRing> ey = apply_elementary(
              p, zz, c, Int(2), Element<IntRing>::unit(zz, point_monomial(y)));
          CHECK(direct == mul_elements(zz, ex, ey));
        }
  }
}

TEST_CASE("grading and containment") {
  Polytope p = corpus::p_c();
  ColumnTable t = column_vectors(p);
  IntRing zz;
  for (const ColumnVector& c : t.columns)
    for (const Vec& x : p.lattice_points) {
      Element<IntRing> img = apply_elementary(
          p, zz, c, Int(1), Element<IntRing>::unit(zz, point_monomial(x)));
      for (const auto& [m, coeff] : img.terms) {
        CHECK(m.back() == Int(1));                 // grading preserved
        CHECK(mono_in_degree_scaled(p, m));        // inside deg * P
      }
    }
}

TEST_CASE("apply_word: empty word and additivity in the scalar") {
  Polytope p = corpus::p_c();
  ColumnTable t = column_vectors(p);
  ColumnVector u = col_of(p, t, {0, -1});
  LaurentRing ring({"lambda", "mu"});
  LaurentPoly lam = ring.var("lambda"), mu = ring.var("mu");

  AutoWord<LaurentRing> empty;
  for (const Vec& x : p.lattice_points) {
    Element<LaurentRing> e =
        Element<LaurentRing>::unit(ring, point_monomial(x));
    CHECK(apply_word(p, ring, empty, e) == e);
  }
  // e_u^λ ∘ e_u^μ = e_u^{λ+μ}
  CHECK(words_equal(p, ring, single<LaurentRing>(u, lam) * single<LaurentRing>(u, mu),
                    single<LaurentRing>(u, ring.add(lam, mu))));
  // trailing e_v^0 does not change the word
  AutoWord<LaurentRing> w = single<LaurentRing>(u, lam);
  AutoWord<LaurentRing> w0 = w;
  w0.letters.push_back(Letter<LaurentRing>::elementary(u, ring.zero()));
  CHECK(words_equal(p, ring, w, w0));
}

TEST_CASE("letter followed by its formal inverse is the identity") {
  Polytope p = corpus::delta2x2();
  ColumnTable t = column_vectors(p);
  LaurentRing ring({"lambda"});
  AutoWord<LaurentRing> empty;
  for (const ColumnVector& c : t.columns) {
    AutoWord<LaurentRing> w = single<LaurentRing>(c, ring.var("lambda"));
    CHECK(words_equal(p, ring, w * w.inverse(ring), empty));
  }
  // toric letter as well
  std::vector<LaurentPoly> vals;
  LaurentRing tring({"t0", "t1", "t2"});
  for (auto name : {"t0", "t1", "t2"}) vals.push_back(tring.var(name));
  AutoWord<LaurentRing> tw;
  tw.letters.push_back(Letter<LaurentRing>::toric(tring, vals));
  AutoWord<LaurentRing> tempty;
  CHECK(words_equal(p, tring, tw * tw.inverse(tring), tempty));
}

TEST_CASE("sign-switch element (second-layer phenomenon on 2Δ2)") {
  Polytope p = corpus::delta2x2();
  ColumnTable t = column_vectors(p);
  ColumnVector v = col_of(p, t, {1, 0});
  ColumnVector mv = col_of(p, t, {-1, 0});

  SUBCASE("over Z: fixes layers y=0 and y=2, negates layer y=1") {
    IntRing zz;
    AutoWord<IntRing> eps = weyl_square_word(zz, v, mv);
    AutoWord<IntRing> empty;
    CHECK(!words_equal(p, zz, eps, empty));
    for (const Vec& x : p.lattice_points) {
      Element<IntRing> img = apply_word(
          p, zz, eps, Element<IntRing>::unit(zz, point_monomial(x)));
      REQUIRE(img.terms.size() == 1);
      CHECK(img.terms.begin()->first == point_monomial(x));
      Int expected = x[1] == Int(1) ? Int(-1) : Int(1);
      CHECK(img.terms.begin()->second == expected);
    }
    // restricted to the bottom edge it is the identity
    std::vector<Vec> bottom;
    for (const Vec& x : p.lattice_points)
      if (x[1].is_zero()) bottom.push_back(x);
    CHECK(words_agree_on(p, zz, eps, empty, bottom,
                         comm_convention().left_to_right));
  }
  SUBCASE("over Z/2 it is globally the identity") {
    ModRing m2{Int(2)};
    AutoWord<ModRing> eps = weyl_square_word(m2, v, mv);
    CHECK(words_equal(p, m2, eps, AutoWord<ModRing>{}));
  }
}

TEST_CASE("commutator_rhs: stated examples") {
  LaurentRing ring({"lambda", "mu"});
  LaurentPoly lam = ring.var("lambda"), mu = ring.var("mu");

  SUBCASE("P_c: single letter e_w^{-λμ}") {
    Polytope p = corpus::p_c();
    ColumnTable t = column_vectors(p);
    AutoWord<LaurentRing> rhs = commutator_rhs(
        p, ring, col_of(p, t, {0, -1}), col_of(p, t, {1, 0}), lam, mu);
    REQUIRE(rhs.letters.size() == 1);
    CHECK(rhs.letters[0].col.v == pt({1, -1}));
    CHECK(rhs.letters[0].lam == ring.neg(ring.mul(lam, mu)));
  }
  SUBCASE("essential triangle: e_{(1,-1)}^{-2λμ} · e_{(2,-1)}^{-λμ²} (n = 2)") {
    Polytope p = corpus::ess_tri();
    ColumnTable t = column_vectors(p);
    AutoWord<LaurentRing> rhs = commutator_rhs(
        p, ring, col_of(p, t, {0, -1}), col_of(p, t, {1, 0}), lam, mu);
    REQUIRE(rhs.letters.size() == 2);
    CHECK(rhs.letters[0].col.v == pt({1, -1}));
    CHECK(rhs.letters[0].lam ==
          ring.neg(ring.mul(ring.from_int(Int(2)), ring.mul(lam, mu))));
    CHECK(rhs.letters[1].col.v == pt({2, -1}));
    CHECK(rhs.letters[1].lam ==
          ring.neg(ring.mul(lam, ring.mul(mu, mu))));
  }
  SUBCASE("unit square: parallel base facets commute, empty word") {
    Polytope p = corpus::unit_square();
    ColumnTable t = column_vectors(p);
    AutoWord<LaurentRing> rhs = commutator_rhs(
        p, ring, col_of(p, t, {1, 0}), col_of(p, t, {0, 1}), lam, mu);
    CHECK(rhs.letters.empty());
  }
  SUBCASE("u = -v rejected") {
    Polytope p = corpus::unit_square();
    ColumnTable t = column_vectors(p);
    CHECK_THROWS_AS(commutator_rhs(p, ring, col_of(p, t, {1, 0}),
                                   col_of(p, t, {-1, 0}), lam, mu),
                    PreconditionError);
  }
}

TEST_CASE("verify_comrel: quadrangle, essential triangle, pyramid") {
  LaurentRing ring({"lambda", "mu"});
  LaurentPoly lam = ring.var("lambda"), mu = ring.var("mu");

  Polytope pc = corpus::p_c();
  ColumnTable tc = column_vectors(pc);
  auto rep = verify_comrel(pc, ring, col_of(pc, tc, {0, -1}),
                           col_of(pc, tc, {1, 0}), lam, mu);
  CHECK(rep.branch == 1);
  CHECK(rep.pass);

  Polytope et = corpus::ess_tri();
  ColumnTable tt = column_vectors(et);
  rep = verify_comrel(et, ring, col_of(et, tt, {0, -1}),
                      col_of(et, tt, {1, 0}), lam, mu);
  CHECK(rep.branch == 1);
  CHECK(rep.pass);

  Polytope pyr = corpus::pyramid();
  ColumnTable tp = column_vectors(pyr);
  rep = verify_comrel(pyr, ring, col_of(pyr, tp, {1, 0, 0}),
                      col_of(pyr, tp, {0, 1, 0}), lam, mu);
  CHECK(rep.branch == 3);
  CHECK(rep.pass);
}

TEST_CASE("verify_comrel: every ordered pair of every corpus polytope") {
  LaurentRing ring({"lambda", "mu"});
  LaurentPoly lam = ring.var("lambda"), mu = ring.var("mu");
  for (const auto& [name, p] : corpus::all()) {
    CAPTURE(name);
    ColumnTable t = column_vectors(p);
    for (const ColumnVector& u : t.columns)
      for (const ColumnVector& v : t.columns) {
        if (vec_is_zero(vec_add(u.v, v.v))) continue;
        CHECK(verify_comrel(p, ring, u, v, lam, mu).pass);
      }
  }
}

TEST_CASE("verify_comrel specializes to finite rings") {
  Polytope p = corpus::ess_tri();
  ColumnTable t = column_vectors(p);
  for (long long m : {2, 3, 4}) {
    ModRing ring{Int(m)};
    for (long long a = 0; a < m; ++a)
      for (long long b = 0; b < m; ++b)
        CHECK(verify_comrel(p, ring, col_of(p, t, {0, -1}),
                            col_of(p, t, {1, 0}), Int(a), Int(b))
                  .pass);
  }
}

TEST_CASE("same_base_embedding_check: stated examples") {
  SUBCASE("P_{d,2}: three columns on the bottom edge") {
    Polytope p = corpus::p_d(2);
    ColumnTable t = column_vectors(p);
    CHECK(same_base_embedding_check(p, t.columns[0].base_facet).pass());
  }
  SUBCASE("single column: trivially passes") {
    Polytope p = corpus::tri_single();
    ColumnTable t = column_vectors(p);
    CHECK(same_base_embedding_check(p, t.columns[0].base_facet).pass());
  }
  SUBCASE("delta2: two columns per base facet") {
    Polytope p = corpus::delta2();
    ColumnTable t = column_vectors(p);
    std::set<size_t> bases;
    for (const ColumnVector& c : t.columns) bases.insert(c.base_facet);
    for (size_t f : bases) CHECK(same_base_embedding_check(p, f).pass());
  }
}

TEST_CASE("toric conjugation: all columns of P_c and the unit square") {
  for (Polytope p : {corpus::p_c(), corpus::unit_square()}) {
    ColumnTable t = column_vectors(p);
    for (const ColumnVector& c : t.columns) {
      ToricStarReport rep = toric_conjugation_check(p, c);
      CHECK(rep.ratio_independent);
      CHECK(rep.conjugation_ok);
    }
  }
}

TEST_CASE("apply_elementary rejects corrupted monomials") {
  Polytope p = corpus::p_c();
  ColumnTable t = column_vectors(p);
  ColumnVector u = col_of(p, t, {0, -1});
  IntRing zz;
  Element<IntRing> bad;
  bad.terms[point_monomial(pt({0, -5}))] = Int(1);  // below the base facet
  CHECK_THROWS_AS(apply_elementary(p, zz, u, Int(1), bad), AlgebraError);
}
