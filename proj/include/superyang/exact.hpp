// SPDX-License-Identifier: MIT
// Exact scalars: GMP rationals, dense univariate polynomials, univariate
// rational functions with full gcd normalization, and sparse polynomials in
// the six spectral variables u, v, u1, u2, v1, v2.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace superyang {

using Rat = mpq_class;

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

// mpq_class(p, q) is not reduced automatically.
inline Rat canonical(Rat x) {
  x.canonicalize();
  return x;
}
inline Rat rat(long p, long q = 1) { return canonical(Rat(p, q)); }

// Accepts "p", "p/q", "-p/q".  Anything else is rejected.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false, digit = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] == '/') {
      if (slash || !digit) throw std::invalid_argument("bad rational '" + s + "'");
      slash = true;
      digit = false;
    } else if (std::isdigit(static_cast<unsigned char>(s[k]))) {
      digit = true;
    } else {
      throw std::invalid_argument("bad rational '" + s + "'");
    }
  }
  if (!digit) throw std::invalid_argument("bad rational '" + s + "'");
  Rat r;
  std::string t = s[0] == '+' ? s.substr(1) : s;
  if (r.set_str(t, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

// Always "p/q", also for integers, so report fields have one shape.
inline std::string rat_str(const Rat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline std::string rat_short(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// ---------------------------------------------------------------- UPoly

class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rat& c) {  // NOLINT: implicit on purpose
    if (sgn(c) != 0) c_.push_back(canonical(c));
  }
  UPoly(int c) : UPoly(Rat(c)) {}  // NOLINT
  explicit UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly x() { return UPoly(std::vector<Rat>{Rat(0), Rat(1)}); }
  static UPoly monomial(const Rat& c, int k) {
    std::vector<Rat> v(static_cast<std::size_t>(k) + 1);
    v[static_cast<std::size_t>(k)] = c;
    return UPoly(std::move(v));
  }
  // x - r
  static UPoly linear_root(const Rat& r) { return UPoly(std::vector<Rat>{Rat(-r), Rat(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Rat coeff(int k) const {
    if (k < 0 || k > degree()) return Rat(0);
    return c_[static_cast<std::size_t>(k)];
  }
  const Rat& lead() const { return c_.back(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat eval(const Rat& t) const {
    Rat acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    Rat l = lead();
    for (auto& c : r.c_) c /= l;
    return r;
  }

  UPoly& operator+=(const UPoly& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size());
    for (std::size_t k = 0; k < b.c_.size(); ++k) c_[k] += b.c_[k];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size());
    for (std::size_t k = 0; k < b.c_.size(); ++k) c_[k] -= b.c_[k];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(UPoly a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly& operator*=(const UPoly& b) { return *this = *this * b; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // a = q*b + r, deg r < deg b
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<Rat> r = a.c_;
    std::vector<Rat> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = r.size(); k-- > db;) {
      if (sgn(r[k]) == 0) continue;
      Rat t = r[k] / b.c_[db];
      q[k - db] = t;
      for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= t * b.c_[j];
    }
    r.resize(db);
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

  // monic gcd; gcd(0,0) = 0
  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  // returns (g, s, t) with s*a + t*b = g, g monic
  static std::array<UPoly, 3> ext_gcd(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      UPoly s2 = s0 - q * s1;
      s0 = std::move(s1);
      s1 = std::move(s2);
      UPoly t2 = t0 - q * t1;
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rat l = r0.lead();
    UPoly inv(Rat(1) / l);
    return {r0 * inv, s0 * inv, t0 * inv};
  }

  // p(x) -> p(c*x + s)
  UPoly compose_linear(const Rat& c, const Rat& s) const {
    UPoly lin(std::vector<Rat>{s, c});
    UPoly acc;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * lin + UPoly(c_[k]);
    return acc;
  }

  std::string str(const std::string& var = "u") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (sgn(c_[k]) == 0) continue;
      Rat c = c_[k];
      if (!first) os << (sgn(c) < 0 ? " - " : " + ");
      else if (sgn(c) < 0) os << "-";
      Rat a = abs(c);
      if (k == 0 || a != 1) os << rat_short(a);
      if (k > 0) os << var;
      if (k > 1) os << "^" << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    for (auto& c : c_) c.canonicalize();
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

inline bool is_zero(const UPoly& p) { return p.is_zero(); }

// ---------------------------------------------------------------- RatFun

// Univariate rational function num/den, gcd(num,den) = 1, den monic.
class RatFun {
 public:
  RatFun() : num_(), den_(1) {}
  RatFun(const Rat& c) : num_(c), den_(1) {}  // NOLINT
  RatFun(int c) : num_(c), den_(1) {}          // NOLINT
  RatFun(const UPoly& p) : num_(p), den_(1) {} // NOLINT
  RatFun(UPoly n, UPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static RatFun x() { return RatFun(UPoly::x()); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  // deg num - deg den; very negative for zero
  int degree() const { return is_zero() ? -(1 << 20) : num_.degree() - den_.degree(); }

  RatFun& operator+=(const RatFun& b) {
    if (b.is_zero()) return *this;
    if (den_ == b.den_) {
      num_ += b.num_;
      normalize();
      return *this;
    }
    num_ = num_ * b.den_ + b.num_ * den_;
    den_ = den_ * b.den_;
    normalize();
    return *this;
  }
  RatFun& operator-=(const RatFun& b) { return *this += -b; }
  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator-(RatFun a) {
    a.num_ = -a.num_;
    return a;
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    if (a.is_polynomial() && b.is_polynomial()) {
      RatFun r;
      r.num_ = a.num_ * b.num_;
      return r;
    }
    if (a.is_polynomial() && a.num_.is_constant()) {
      RatFun r = b;
      r.num_ = r.num_ * a.num_;
      return r;
    }
    if (b.is_polynomial() && b.num_.is_constant()) {
      RatFun r = a;
      r.num_ = r.num_ * b.num_;
      return r;
    }
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  RatFun& operator*=(const RatFun& b) { return *this = *this * b; }
  RatFun inverse() const {
    if (is_zero()) throw std::domain_error("division by zero rational function");
    return RatFun(den_, num_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }
  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  Rat eval(const Rat& t, const std::string& var = "u") const {
    Rat d = den_.eval(t);
    if (sgn(d) == 0) {
      UPoly lin = UPoly::linear_root(t);
      int mult = 0;
      UPoly rest = den_;
      while (!rest.is_zero() && (rest % lin).is_zero()) {
        rest = rest / lin;
        ++mult;
      }
      std::string f = "(" + lin.str(var) + ")";
      if (mult > 1) f += "^" + std::to_string(mult);
      throw PoleError("pole at " + var + " = " + rat_short(t) + ": denominator factor " + f +
                      " vanishes");
    }
    return num_.eval(t) / d;
  }
  Rat eval(const std::map<std::string, Rat>& assignment, const std::string& var = "u") const {
    auto it = assignment.find(var);
    if (it == assignment.end()) throw std::invalid_argument("no value for variable " + var);
    return eval(it->second, var);
  }

  // f(c*x + s)
  RatFun compose_linear(const Rat& c, const Rat& s) const {
    return RatFun(num_.compose_linear(c, s), den_.compose_linear(c, s));
  }

  std::string str(const std::string& var = "u") const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
  }

  void normalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = UPoly(1);
      return;
    }
    if (den_.degree() > 0) {
      UPoly g = UPoly::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    Rat l = den_.lead();
    if (l != 1) {
      UPoly inv(Rat(1) / l);
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

 private:
  UPoly num_, den_;
};

inline bool is_zero(const RatFun& f) { return f.is_zero(); }

// ---------------------------------------------------------------- MPoly

enum Var : int { U = 0, V = 1, U1 = 2, U2 = 3, V1 = 4, V2 = 5 };
constexpr int kNumVars = 6;
inline const char* var_name(int v) {
  static const char* names[kNumVars] = {"u", "v", "u1", "u2", "v1", "v2"};
  return names[v];
}
inline int var_from_name(const std::string& s) {
  for (int k = 0; k < kNumVars; ++k)
    if (s == var_name(k)) return k;
  throw std::invalid_argument("unknown variable " + s);
}

using Mono = std::array<int, kNumVars>;

// Sparse polynomial over the fixed variable order (u, v, u1, u2, v1, v2);
// std::map keeps monomials in lexicographic order.
class MPoly {
 public:
  MPoly() = default;
  MPoly(const Rat& c) {  // NOLINT
    if (!superyang::is_zero(c)) t_[Mono{}] = canonical(c);
  }
  MPoly(int c) : MPoly(Rat(c)) {}  // NOLINT
  static MPoly var(int v) {
    MPoly p;
    Mono m{};
    m[v] = 1;
    p.t_[m] = 1;
    return p;
  }
  static MPoly monomial(const Rat& c, const Mono& m) {
    MPoly p;
    if (!superyang::is_zero(c)) p.t_[m] = canonical(c);
    return p;
  }
  // univariate p evaluated at the polynomial x
  static MPoly substitute(const UPoly& p, const MPoly& x) {
    MPoly acc;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * x + MPoly(p.coeffs()[k]);
    return acc;
  }

  bool is_zero() const { return t_.empty(); }
  const std::map<Mono, Rat>& terms() const { return t_; }

  MPoly& operator+=(const MPoly& b) {
    for (const auto& [m, c] : b.t_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& b) {
    for (const auto& [m, c] : b.t_) add_term(m, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(MPoly a) {
    for (auto& kv : a.t_) kv.second = -kv.second;
    return a;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) {
        Mono m;
        for (int k = 0; k < kNumVars; ++k) m[k] = ma[k] + mb[k];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  MPoly& operator*=(const MPoly& b) { return *this = *this * b; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

  int degree_in(int v) const {
    int d = 0;
    for (const auto& kv : t_) d = std::max(d, kv.first[v]);
    return d;
  }
  bool uses(int v) const {
    for (const auto& kv : t_)
      if (kv.first[v] != 0) return true;
    return false;
  }

  Rat eval(const std::map<std::string, Rat>& assignment) const {
    Rat acc = 0;
    for (const auto& [m, c] : t_) {
      Rat term = c;
      for (int k = 0; k < kNumVars; ++k) {
        if (m[k] == 0) continue;
        auto it = assignment.find(var_name(k));
        if (it == assignment.end())
          throw std::invalid_argument(std::string("no value for variable ") + var_name(k));
        for (int e = 0; e < m[k]; ++e) term *= it->second;
      }
      acc += term;
    }
    return acc;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [m, c] = *it;
      bool constant = true;
      for (int e : m)
        if (e) constant = false;
      if (!first) os << (sgn(c) < 0 ? " - " : " + ");
      else if (sgn(c) < 0) os << "-";
      Rat a = abs(c);
      bool wrote = false;
      if (constant || a != 1) {
        os << rat_short(a);
        wrote = true;
      }
      for (int k = 0; k < kNumVars; ++k) {
        if (!m[k]) continue;
        if (wrote) os << "*";
        os << var_name(k);
        if (m[k] > 1) os << "^" << m[k];
        wrote = true;
      }
      first = false;
    }
    return os.str();
  }

 private:
  void add_term(const Mono& m, const Rat& c) {
    if (superyang::is_zero(c)) return;
    auto [it, fresh] = t_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (superyang::is_zero(it->second)) t_.erase(it);
    }
  }
  std::map<Mono, Rat> t_;
};

inline bool is_zero(const MPoly& p) { return p.is_zero(); }

}  // namespace superyang
