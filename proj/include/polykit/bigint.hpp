#ifndef POLYKIT_BIGINT_HPP
#define POLYKIT_BIGINT_HPP

#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

namespace polykit {

/// Exact signed arbitrary-precision integer.
///
/// Values that fit in 64 bits stay in an inline fast path; everything else
/// promotes to a sign + 32-bit-limb magnitude. The library never touches
/// floating point.
class Int {
public:
  Int() = default;
  Int(int v) : small_(v) {}
  Int(long v) : small_(v) {}
  Int(long long v) : small_(v) {}
  Int(unsigned v) : small_(static_cast<long long>(v)) {}

  static Int from_string(const std::string& s) {
    Int r;
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    assert(i < s.size());
    for (; i < s.size(); ++i) {
      assert(s[i] >= '0' && s[i] <= '9');
      r = r * Int(10) + Int(s[i] - '0');
    }
    return neg ? -r : r;
  }

  bool is_small() const { return mag_.empty(); }
  bool is_zero() const { return is_small() ? small_ == 0 : false; }
  bool is_one() const { return is_small() && small_ == 1; }
  bool is_neg() const { return is_small() ? small_ < 0 : sign_ < 0; }

  /// -1, 0, +1
  int signum() const {
    if (is_small()) return small_ < 0 ? -1 : (small_ > 0 ? 1 : 0);
    return sign_;
  }

  /// Valid only when the value fits; asserted.
  long long to_ll() const {
    assert(is_small());
    return small_;
  }
  bool fits_ll() const { return is_small(); }

  friend bool operator==(const Int& a, const Int& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Int& a, const Int& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Int& a, const Int& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Int& a, const Int& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Int& a, const Int& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Int& a, const Int& b) { return cmp(a, b) >= 0; }

  friend Int operator-(const Int& a) {
    if (a.is_small() && a.small_ != INT64_MIN) {
      Int r;
      r.small_ = -a.small_;
      return r;
    }
    Int r = a.to_big();
    r.sign_ = -r.sign_;
    r.normalize();
    return r;
  }

  friend Int operator+(const Int& a, const Int& b) {
    if (a.is_small() && b.is_small()) {
      long long r;
      if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Int(r);
    }
    return add_big(a.to_big(), b.to_big(), false);
  }
  friend Int operator-(const Int& a, const Int& b) {
    if (a.is_small() && b.is_small()) {
      long long r;
      if (!__builtin_sub_overflow(a.small_, b.small_, &r)) return Int(r);
    }
    return add_big(a.to_big(), b.to_big(), true);
  }
  friend Int operator*(const Int& a, const Int& b) {
    if (a.is_small() && b.is_small()) {
      long long r;
      if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Int(r);
    }
    Int ba = a.to_big(), bb = b.to_big();
    Int r;
    if (ba.sign_ == 0 || bb.sign_ == 0) return Int(0);
    r.sign_ = ba.sign_ * bb.sign_;
    r.mag_ = mag_mul(ba.mag_, bb.mag_);
    r.normalize();
    return r;
  }

  Int& operator+=(const Int& b) { return *this = *this + b; }
  Int& operator-=(const Int& b) { return *this = *this - b; }
  Int& operator*=(const Int& b) { return *this = *this * b; }

  /// Truncated division (C semantics): q = trunc(a/b), r = a - q*b.
  static void tdiv_qr(const Int& a, const Int& b, Int& q, Int& r) {
    assert(!b.is_zero());
    if (a.is_small() && b.is_small() &&
        !(a.small_ == INT64_MIN && b.small_ == -1)) {
      q = Int(a.small_ / b.small_);
      r = Int(a.small_ % b.small_);
      return;
    }
    Int ba = a.to_big(), bb = b.to_big();
    std::vector<uint32_t> qm, rm;
    mag_divmod(ba.mag_, bb.mag_, qm, rm);
    q = Int();
    q.small_ = 0;
    q.sign_ = ba.sign_ * bb.sign_;
    q.mag_ = std::move(qm);
    q.normalize();
    r = Int();
    r.sign_ = ba.sign_;
    r.mag_ = std::move(rm);
    r.normalize();
  }

  /// Floored division: q = floor(a/b), 0 <= r < |b| when b > 0.
  static void fdiv_qr(const Int& a, const Int& b, Int& q, Int& r) {
    tdiv_qr(a, b, q, r);
    if (!r.is_zero() && (r.is_neg() != b.is_neg())) {
      q -= Int(1);
      r += b;
    }
  }

  friend Int operator/(const Int& a, const Int& b) {
    Int q, r;
    tdiv_qr(a, b, q, r);
    return q;
  }
  friend Int operator%(const Int& a, const Int& b) {
    Int q, r;
    tdiv_qr(a, b, q, r);
    return r;
  }

  /// Exact division; asserts that b divides a.
  static Int div_exact(const Int& a, const Int& b) {
    Int q, r;
    tdiv_qr(a, b, q, r);
    assert(r.is_zero());
    return q;
  }

  Int abs() const { return is_neg() ? -*this : *this; }

  static Int gcd(Int a, Int b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
      Int r = a % b;
      a = b;
      b = r;
    }
    return a;
  }

  /// g = gcd(a,b) >= 0 with a*x + b*y = g (classical extended Euclid,
  /// deterministic coefficients).
  static Int gcd_ext(const Int& a, const Int& b, Int& x, Int& y) {
    if (b.is_zero()) {
      if (a.is_neg()) {
        x = Int(-1);
        y = Int(0);
        return -a;
      }
      x = a.is_zero() ? Int(0) : Int(1);
      y = Int(0);
      return a;
    }
    Int q, r;
    tdiv_qr(a, b, q, r);
    Int x1, y1;
    Int g = gcd_ext(b, r, x1, y1);
    x = y1;
    y = x1 - q * y1;
    return g;
  }

  static Int binomial(const Int& n, const Int& k) {
    assert(!n.is_neg() && !k.is_neg());
    if (k > n) return Int(0);
    Int r(1);
    for (Int i(1); i <= k; i += Int(1)) {
      r = div_exact(r * (n - k + i), i);
    }
    return r;
  }

  static Int pow(const Int& b, long long e) {
    assert(e >= 0);
    Int r(1);
    for (long long i = 0; i < e; ++i) r *= b;
    return r;
  }

  std::string to_string() const {
    if (is_small()) return std::to_string(small_);
    std::vector<uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
      // divide magnitude by 10^9, emit remainder
      uint64_t rem = 0;
      for (size_t i = m.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | m[i];
        m[i] = static_cast<uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (!m.empty() && m.back() == 0) m.pop_back();
      std::string chunk = std::to_string(rem);
      if (m.empty()) {
        digits = chunk + digits;
      } else {
        digits = std::string(9 - chunk.size(), '0') + chunk + digits;
      }
    }
    if (digits.empty()) digits = "0";
    return (sign_ < 0 ? "-" : "") + digits;
  }

  friend std::ostream& operator<<(std::ostream& os, const Int& v) {
    return os << v.to_string();
  }

  static int cmp(const Int& a, const Int& b) {
    if (a.is_small() && b.is_small())
      return a.small_ < b.small_ ? -1 : (a.small_ > b.small_ ? 1 : 0);
    Int ba = a.to_big(), bb = b.to_big();
    if (ba.sign_ != bb.sign_) return ba.sign_ < bb.sign_ ? -1 : 1;
    int c = mag_cmp(ba.mag_, bb.mag_);
    return ba.sign_ >= 0 ? c : -c;
  }

private:
  long long small_ = 0;          // value when mag_ is empty
  int sign_ = 0;                 // -1/0/+1 when mag_ is non-empty
  std::vector<uint32_t> mag_;    // little-endian base-2^32 magnitude

  Int to_big() const {
    if (!is_small()) return *this;
    Int r;
    unsigned long long m;
    if (small_ < 0) {
      r.sign_ = -1;
      m = static_cast<unsigned long long>(-(small_ + 1)) + 1ull;
    } else {
      r.sign_ = small_ > 0 ? 1 : 0;
      m = static_cast<unsigned long long>(small_);
    }
    while (m) {
      r.mag_.push_back(static_cast<uint32_t>(m));
      m >>= 32;
    }
    r.small_ = 0;
    return r;
  }

  void normalize() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) {
      sign_ = 0;
      small_ = 0;
      return;
    }
    if (mag_.size() <= 2) {
      unsigned long long m = mag_[0];
      if (mag_.size() == 2) m |= static_cast<unsigned long long>(mag_[1]) << 32;
      if (sign_ > 0 && m <= static_cast<unsigned long long>(INT64_MAX)) {
        small_ = static_cast<long long>(m);
        mag_.clear();
        sign_ = 0;
      } else if (sign_ < 0 &&
                 m <= static_cast<unsigned long long>(INT64_MAX) + 1ull) {
        small_ = (m == static_cast<unsigned long long>(INT64_MAX) + 1ull)
                     ? INT64_MIN
                     : -static_cast<long long>(m);
        mag_.clear();
        sign_ = 0;
      }
    }
  }

  static int mag_cmp(const std::vector<uint32_t>& a,
                     const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  static std::vector<uint32_t> mag_add(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      uint64_t s = carry;
      if (i < a.size()) s += a[i];
      if (i < b.size()) s += b[i];
      r[i] = static_cast<uint32_t>(s);
      carry = s >> 32;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // requires |a| >= |b|
  static std::vector<uint32_t> mag_sub(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      int64_t s = static_cast<int64_t>(a[i]) - borrow -
                  (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
      if (s < 0) {
        s += (1ll << 32);
        borrow = 1;
      } else {
        borrow = 0;
      }
      r[i] = static_cast<uint32_t>(s);
    }
    assert(borrow == 0);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  static std::vector<uint32_t> mag_mul(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + r[i + j] + carry;
        r[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      size_t k = i + b.size();
      while (carry) {
        uint64_t cur = r[k] + carry;
        r[k] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // Knuth algorithm D on magnitudes; q = a / b, r = a mod b.
  static void mag_divmod(const std::vector<uint32_t>& a,
                         const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    assert(!b.empty());
    if (mag_cmp(a, b) < 0) {
      q.clear();
      r = a;
      return;
    }
    if (b.size() == 1) {
      q.assign(a.size(), 0);
      uint64_t rem = 0;
      for (size_t i = a.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | a[i];
        q[i] = static_cast<uint32_t>(cur / b[0]);
        rem = cur % b[0];
      }
      while (!q.empty() && q.back() == 0) q.pop_back();
      r.clear();
      if (rem) r.push_back(static_cast<uint32_t>(rem));
      return;
    }
    // normalize so the top limb of the divisor has its high bit set
    int shift = __builtin_clz(b.back());
    std::vector<uint32_t> u(a.size() + 1, 0), v(b.size(), 0);
    for (size_t i = a.size(); i-- > 0;) {
      u[i + 1] |= shift ? (a[i] >> (32 - shift)) : 0;
      u[i] |= a[i] << shift;
    }
    for (size_t i = b.size(); i-- > 0;) {
      if (i + 1 < b.size() && shift) v[i + 1] |= b[i] >> (32 - shift);
      v[i] |= b[i] << shift;
    }
    size_t n = v.size(), m = u.size() - n;
    q.assign(m, 0);
    for (size_t j = m; j-- > 0;) {
      uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
      uint64_t qhat = num / v[n - 1];
      uint64_t rhat = num % v[n - 1];
      while (qhat >= (1ull << 32) ||
             qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
        --qhat;
        rhat += v[n - 1];
        if (rhat >= (1ull << 32)) break;
      }
      // multiply-subtract
      int64_t borrow = 0;
      uint64_t carry = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t p = qhat * v[i] + carry;
        carry = p >> 32;
        int64_t t = static_cast<int64_t>(u[i + j]) -
                    static_cast<int64_t>(p & 0xffffffffull) - borrow;
        if (t < 0) {
          t += (1ll << 32);
          borrow = 1;
        } else {
          borrow = 0;
        }
        u[i + j] = static_cast<uint32_t>(t);
      }
      int64_t t = static_cast<int64_t>(u[j + n]) -
                  static_cast<int64_t>(carry) - borrow;
      if (t < 0) {
        // qhat was one too large; add back
        t += (1ll << 32);
        --qhat;
        uint64_t c2 = 0;
        for (size_t i = 0; i < n; ++i) {
          uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
          u[i + j] = static_cast<uint32_t>(s);
          c2 = s >> 32;
        }
        t += static_cast<int64_t>(c2);
        t &= 0xffffffffll;
      }
      u[j + n] = static_cast<uint32_t>(t);
      q[j] = static_cast<uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    r.assign(u.begin(), u.begin() + n);
    if (shift) {
      for (size_t i = 0; i < r.size(); ++i) {
        r[i] >>= shift;
        if (i + 1 < n) r[i] |= u[i + 1] << (32 - shift);
      }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
  }

  static Int add_big(const Int& a, const Int& b, bool negate_b) {
    int bsign = negate_b ? -b.sign_ : b.sign_;
    Int r;
    if (a.sign_ == 0) {
      r.sign_ = bsign;
      r.mag_ = b.mag_;
    } else if (bsign == 0) {
      r.sign_ = a.sign_;
      r.mag_ = a.mag_;
    } else if (a.sign_ == bsign) {
      r.sign_ = a.sign_;
      r.mag_ = mag_add(a.mag_, b.mag_);
    } else {
      int c = mag_cmp(a.mag_, b.mag_);
      if (c == 0) return Int(0);
      if (c > 0) {
        r.sign_ = a.sign_;
        r.mag_ = mag_sub(a.mag_, b.mag_);
      } else {
        r.sign_ = bsign;
        r.mag_ = mag_sub(b.mag_, a.mag_);
      }
    }
    r.normalize();
    return r;
  }
};

}  // namespace polykit

#endif
