#ifndef POLYKIT_RINGS_HPP
#define POLYKIT_RINGS_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bigint.hpp"

namespace polykit {

/// Coefficient ring of exact integers.
struct IntRing {
  using Elem = Int;
  static constexpr const char* name() { return "int"; }
  Elem zero() const { return Int(0); }
  Elem one() const { return Int(1); }
  Elem from_int(const Int& n) const { return n; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::optional<Elem> try_invert(const Elem& a) const {
    if (a == Int(1) || a == Int(-1)) return a;
    return std::nullopt;
  }
  std::string str(const Elem& a) const { return a.to_string(); }
};

/// Integers modulo m, representatives normalized into [0, m).
struct ModRing {
  Int m;
  explicit ModRing(Int modulus) : m(std::move(modulus)) {
    assert(m > Int(1));
  }
  using Elem = Int;
  Elem norm(const Int& a) const {
    Int q, r;
    Int::fdiv_qr(a, m, q, r);
    return r;
  }
  Elem zero() const { return Int(0); }
  Elem one() const { return norm(Int(1)); }
  Elem from_int(const Int& n) const { return norm(n); }
  Elem add(const Elem& a, const Elem& b) const { return norm(a + b); }
  Elem sub(const Elem& a, const Elem& b) const { return norm(a - b); }
  Elem neg(const Elem& a) const { return norm(-a); }
  Elem mul(const Elem& a, const Elem& b) const { return norm(a * b); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::optional<Elem> try_invert(const Elem& a) const {
    Int x, y;
    Int g = Int::gcd_ext(a, m, x, y);
    if (!g.is_one()) return std::nullopt;
    return norm(x);
  }
  std::string str(const Elem& a) const { return a.to_string(); }
};

/// Sparse multivariate Laurent polynomial over Z; exponents may be negative,
/// so unit-valued symbolic characters are expressible (t and 1/t).
struct LaurentPoly {
  // exponent vector (one slot per ring variable) -> coefficient
  std::map<std::vector<long long>, Int> terms;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms == b.terms;
  }
};

/// Z[x1^+-1, ..., xk^+-1] with named indeterminates.
struct LaurentRing {
  std::vector<std::string> vars;
  explicit LaurentRing(std::vector<std::string> names) : vars(std::move(names)) {}

  using Elem = LaurentPoly;

  Elem zero() const { return {}; }
  Elem one() const { return from_int(Int(1)); }
  Elem from_int(const Int& n) const {
    Elem e;
    if (!n.is_zero()) e.terms[std::vector<long long>(vars.size(), 0)] = n;
    return e;
  }
  Elem var(const std::string& name) const {
    return monomial(name, 1, Int(1));
  }
  Elem monomial(const std::string& name, long long exp, const Int& coeff) const {
    size_t idx = 0;
    while (idx < vars.size() && vars[idx] != name) ++idx;
    assert(idx < vars.size());
    Elem e;
    std::vector<long long> ev(vars.size(), 0);
    ev[idx] = exp;
    if (!coeff.is_zero()) e.terms[ev] = coeff;
    return e;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (const auto& [ev, c] : b.terms) {
      auto it = r.terms.find(ev);
      if (it == r.terms.end()) {
        r.terms[ev] = c;
      } else {
        it->second += c;
        if (it->second.is_zero()) r.terms.erase(it);
      }
    }
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r;
    for (const auto& [ev, c] : a.terms) r.terms[ev] = -c;
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r;
    for (const auto& [ea, ca] : a.terms)
      for (const auto& [eb, cb] : b.terms) {
        std::vector<long long> ev(vars.size());
        for (size_t i = 0; i < vars.size(); ++i) ev[i] = ea[i] + eb[i];
        Int c = ca * cb;
        auto it = r.terms.find(ev);
        if (it == r.terms.end()) {
          if (!c.is_zero()) r.terms[ev] = c;
        } else {
          it->second += c;
          if (it->second.is_zero()) r.terms.erase(it);
        }
      }
    return r;
  }
  bool is_zero(const Elem& a) const { return a.terms.empty(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::optional<Elem> try_invert(const Elem& a) const {
    // units are the single terms +-x^e
    if (a.terms.size() != 1) return std::nullopt;
    const auto& [ev, c] = *a.terms.begin();
    if (c != Int(1) && c != Int(-1)) return std::nullopt;
    Elem r;
    std::vector<long long> inv(ev.size());
    for (size_t i = 0; i < ev.size(); ++i) inv[i] = -ev[i];
    r.terms[inv] = c;
    return r;
  }
  std::string str(const Elem& a) const {
    if (a.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [ev, c] : a.terms) {
      if (!first) os << " + ";
      first = false;
      os << c.to_string();
      for (size_t i = 0; i < vars.size(); ++i)
        if (ev[i] != 0) os << "*" << vars[i] << "^" << ev[i];
    }
    return os.str();
  }
};

/// Ring descriptor strings: `int`, `mod:<m>`, `poly:<comma separated names>`.
struct RingSpec {
  enum class Kind { Integers, Mod, Poly } kind = Kind::Integers;
  Int modulus;
  std::vector<std::string> vars;

  static std::optional<RingSpec> parse(const std::string& s) {
    RingSpec r;
    if (s == "int") {
      r.kind = Kind::Integers;
      return r;
    }
    if (s.rfind("mod:", 0) == 0) {
      r.kind = Kind::Mod;
      std::string v = s.substr(4);
      if (v.empty()) return std::nullopt;
      for (char c : v)
        if (c < '0' || c > '9') return std::nullopt;
      r.modulus = Int::from_string(v);
      if (r.modulus <= Int(1)) return std::nullopt;
      return r;
    }
    if (s.rfind("poly:", 0) == 0) {
      r.kind = Kind::Poly;
      std::string rest = s.substr(5);
      std::string cur;
      for (char c : rest) {
        if (c == ',') {
          if (!cur.empty()) r.vars.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (!cur.empty()) r.vars.push_back(cur);
      if (r.vars.empty()) return std::nullopt;
      return r;
    }
    return std::nullopt;
  }
};

}  // namespace polykit

#endif
