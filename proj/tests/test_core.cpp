#include <doctest.h>

#include <polykit/bigint.hpp>
#include <polykit/intlin.hpp>

using namespace polykit;

namespace {

// deterministic PRNG for property tests
struct Rng {
  unsigned long long s;
  explicit Rng(unsigned long long seed) : s(seed) {}
  unsigned long long next() {
    s += 0x9e3779b97f4a7c15ull;
    unsigned long long z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<unsigned long long>(hi - lo + 1));
  }
};

Vec V(std::initializer_list<long long> xs) {
  Vec v;
  for (long long x : xs) v.push_back(Int(x));
  return v;
}

}  // namespace

TEST_CASE("Int arithmetic agrees with __int128 on small values") {
  Rng rng(1);
  for (int iter = 0; iter < 4000; ++iter) {
    long long a = rng.range(-1000000000ll, 1000000000ll);
    long long b = rng.range(-1000000000ll, 1000000000ll);
    Int A(a), B(b);
    CHECK((A + B).to_ll() == a + b);
    CHECK((A - B).to_ll() == a - b);
    CHECK((A * B) == Int(static_cast<long long>(static_cast<__int128>(a) * b)));
    if (b != 0) {
      Int q, r;
      Int::tdiv_qr(A, B, q, r);
      CHECK(q.to_ll() == a / b);
      CHECK(r.to_ll() == a % b);
      Int fq, fr;
      Int::fdiv_qr(A, B, fq, fr);
      CHECK(fq * B + fr == A);
      if (b > 0) {
        CHECK(!fr.is_neg());
        CHECK(fr < B);
      }
    }
  }
}

TEST_CASE("Int promotes through 64-bit overflow and divides back exactly") {
  Int big = Int::pow(Int(10), 25);  // > 2^64
  CHECK(big.to_string() == "10000000000000000000000000");
  Int x = big * Int(7) + Int(123);
  Int q, r;
  Int::tdiv_qr(x, big, q, r);
  CHECK(q == Int(7));
  CHECK(r == Int(123));
  CHECK(Int::from_string("-10000000000000000000000000") == -big);
  // multi-limb divisor path
  Int a = Int::pow(Int(2), 130) + Int(77);
  Int b = Int::pow(Int(2), 70) + Int(3);
  Int::tdiv_qr(a, b, q, r);
  CHECK(q * b + r == a);
  CHECK(r.abs() < b.abs());
  CHECK(!r.is_neg());
  // factorial oracle
  Int f(1);
  for (int i = 2; i <= 30; ++i) f *= Int(i);
  CHECK(f.to_string() == "265252859812191058636308480000000");
}

TEST_CASE("Int gcd and binomial") {
  CHECK(Int::gcd(Int(12), Int(-18)) == Int(6));
  CHECK(Int::gcd(Int(0), Int(0)) == Int(0));
  Int x, y;
  Int g = Int::gcd_ext(Int(240), Int(46), x, y);
  CHECK(g == Int(2));
  CHECK(Int(240) * x + Int(46) * y == g);
  CHECK(Int::binomial(Int(10), Int(3)) == Int(120));
  CHECK(Int::binomial(Int(3), Int(5)) == Int(0));
  CHECK(Int::binomial(Int(40), Int(20)) == Int::from_string("137846528820"));
}

namespace {

bool is_column_hnf(const IntMatrix& h) {
  // staircase of positive pivots; entries left of a pivot reduced into
  // [0, pivot); zero columns trail
  long long last_pivot_row = -1;
  size_t c = 0;
  for (; c < h.cols; ++c) {
    size_t r = 0;
    while (r < h.rows && h.m[r][c].is_zero()) ++r;
    if (r == h.rows) break;  // zero column: all later ones must be zero too
    if (static_cast<long long>(r) <= last_pivot_row) return false;
    if (h.m[r][c].is_neg()) return false;
    for (size_t k = 0; k < c; ++k) {
      if (h.m[r][k].is_neg()) return false;
      if (h.m[r][k] >= h.m[r][c]) return false;
    }
    last_pivot_row = static_cast<long long>(r);
  }
  for (; c < h.cols; ++c)
    for (size_t r = 0; r < h.rows; ++r)
      if (!h.m[r][c].is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("hermite_normal_form: stated examples") {
  SUBCASE("identity") {
    IntMatrix id = IntMatrix::identity(2);
    HnfResult hr = hermite_normal_form(id);
    CHECK(hr.h == id);
    CHECK(hr.u == id);
  }
  SUBCASE("zero matrix") {
    IntMatrix z(2, 2);
    HnfResult hr = hermite_normal_form(z);
    CHECK(hr.h == z);
    CHECK(hr.u == IntMatrix::identity(2));
  }
  SUBCASE("[[2,4],[1,3]] keeps |det| = 2") {
    IntMatrix m = IntMatrix::from_rows({V({2, 4}), V({1, 3})});
    HnfResult hr = hermite_normal_form(m);
    CHECK(hr.h.det().abs() == Int(2));
    CHECK(hr.u.det().abs() == Int(1));
    CHECK(m * hr.u == hr.h);
    CHECK(is_column_hnf(hr.h));
  }
}

TEST_CASE("hermite_normal_form: canonical form and idempotence on random matrices") {
  Rng rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    size_t rows = 1 + rng.next() % 4, cols = 1 + rng.next() % 4;
    IntMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) m.m[i][j] = Int(rng.range(-9, 9));
    HnfResult hr = hermite_normal_form(m);
    CHECK(m * hr.u == hr.h);
    CHECK(hr.u.det().abs().is_one());
    CHECK(is_column_hnf(hr.h));
    // idempotent
    HnfResult hr2 = hermite_normal_form(hr.h);
    CHECK(hr2.h == hr.h);
    if (rows == cols) CHECK(hr.h.det().abs() == m.det().abs());
  }
}

TEST_CASE("kernel_basis is a saturated kernel") {
  IntMatrix m = IntMatrix::from_rows({V({2, 4, 6})});
  IntMatrix k = kernel_basis(m);
  CHECK(k.cols == 2);
  for (size_t j = 0; j < k.cols; ++j) CHECK(dot(m.m[0], k.col(j)).is_zero());
  // (1,1) is in the rational kernel's saturation iff integral combos reach it:
  // 2x+4y+6z=0 has primitive solutions spanning all of ker ∩ Z^3
  IntMatrix two_rows = IntMatrix::from_rows({V({1, 0, -1}), V({0, 2, -2})});
  IntMatrix k2 = kernel_basis(two_rows);
  CHECK(k2.cols == 1);
  Vec v = k2.col(0);
  CHECK(gcd_of(v).is_one());  // saturated: (1,1,1) not (2,2,2)
}

TEST_CASE("normalize_affine_lattice: stated examples") {
  SUBCASE("even sublattice") {
    auto [change, d] =
        normalize_affine_lattice({V({0, 0}), V({2, 0}), V({0, 2})});
    CHECK(d == 2);
    std::vector<Vec> img = {change.forward(V({0, 0})), change.forward(V({2, 0})),
                            change.forward(V({0, 2}))};
    std::sort(img.begin(), img.end(), lex_less);
    std::vector<Vec> expect = {V({0, 0}), V({0, 1}), V({1, 0})};
    CHECK(img == expect);
    // round trip
    CHECK(change.back(change.forward(V({2, 0}))) == V({2, 0}));
    // off-lattice point rejected
    CHECK(!change.try_forward(V({1, 0})).has_value());
  }
  SUBCASE("1d identity") {
    auto [change, d] = normalize_affine_lattice({V({0}), V({1}), V({2})});
    CHECK(d == 1);
    CHECK(change.forward(V({2})) == V({2}));
  }
  SUBCASE("single point") {
    auto [change, d] = normalize_affine_lattice({V({5, 7})});
    CHECK(d == 0);
    CHECK(change.forward(V({5, 7})) == Vec{});
  }
  SUBCASE("re-normalizing is the identity change") {
    auto [change, d] =
        normalize_affine_lattice({V({1, 1}), V({3, 1}), V({1, 5}), V({2, 3})});
    std::vector<Vec> img;
    for (const Vec& p :
         std::vector<Vec>{V({1, 1}), V({3, 1}), V({1, 5}), V({2, 3})})
      img.push_back(change.forward(p));
    auto [change2, d2] = normalize_affine_lattice(img);
    CHECK(d2 == d);
    for (const Vec& p : img) CHECK(change2.forward(p) == p);
  }
}

TEST_CASE("primitive_form: stated examples") {
  SUBCASE("span (1,1) through origin, inside (1,0)") {
    auto [a, b] = primitive_form({V({0, 0}), V({1, 1})}, V({1, 0}));
    CHECK(a == V({1, -1}));
    CHECK(b == Int(0));
  }
  SUBCASE("x-axis through origin, inside (0,3)") {
    auto [a, b] = primitive_form({V({0, 0}), V({1, 0})}, V({0, 3}));
    CHECK(a == V({0, 1}));
    CHECK(b == Int(0));
  }
  SUBCASE("line through (-2,0),(0,1), inside (0,0)") {
    auto [a, b] = primitive_form({V({-2, 0}), V({0, 1})}, V({0, 0}));
    CHECK(a == V({1, -2}));
    CHECK(b == Int(-2));
  }
  SUBCASE("sign is fixed by any interior point") {
    auto [a1, b1] = primitive_form({V({0, 0}), V({1, 1})}, V({5, 2}));
    auto [a2, b2] = primitive_form({V({0, 0}), V({1, 1})}, V({1, 0}));
    CHECK(a1 == a2);
    CHECK(b1 == b2);
  }
  SUBCASE("kernel of wrong codimension rejected") {
    CHECK_THROWS_AS(primitive_form({V({0, 0, 0}), V({1, 0, 0})}, V({0, 0, 1})),
                    PreconditionError);
  }
}

TEST_CASE("solve_unit_value: stated examples") {
  CHECK(solve_unit_value(V({1, 0})) == V({1, 0}));
  CHECK(solve_unit_value(V({-1, 0})) == V({-1, 0}));
  Vec p = solve_unit_value(V({2, 3}));
  CHECK(dot(V({2, 3}), p).is_one());
  CHECK(p == V({-1, 1}));  // canonical left-to-right extended Euclid
  CHECK_THROWS_AS(solve_unit_value(V({2, 4})), PreconditionError);
  // deterministic across arbitrary primitive covectors
  Rng rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    Vec a;
    for (int i = 0; i < 3; ++i) a.push_back(Int(rng.range(-8, 8)));
    if (!gcd_of(a).is_one()) continue;
    Vec p1 = solve_unit_value(a);
    CHECK(dot(a, p1).is_one());
    CHECK(solve_unit_value(a) == p1);
  }
}

TEST_CASE("solve_square and unimodular_inverse") {
  IntMatrix a = IntMatrix::from_rows({V({2, 1}), V({1, 1})});
  auto x = solve_square(a, V({3, 2}));
  REQUIRE(x.has_value());
  CHECK(*x == V({1, 1}));
  CHECK(a.det() == Int(1));
  IntMatrix inv = unimodular_inverse(a);
  CHECK(a * inv == IntMatrix::identity(2));
  // non-integral solution rejected
  IntMatrix b = IntMatrix::from_rows({V({2, 0}), V({0, 2})});
  CHECK(!solve_square(b, V({1, 0})).has_value());
}
