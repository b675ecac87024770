// SPDX-License-Identifier: MIT
// Truncated Laurent series in up to six spectral variables.
//
// Every axis carries a box [lo, hi] of stored exponents and two flags.
// zero_below / zero_above mean "all coefficients beyond the box in that
// direction vanish, whatever the other exponents are".  Outside the box in an
// unflagged direction a coefficient is unknown, never zero.
#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "superyang/exact.hpp"
#include "superyang/matrix.hpp"

namespace superyang {

struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownCoefficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Window {
  int lo = 0, hi = 0;
  int size() const { return hi - lo + 1; }
  bool contains(int e) const { return lo <= e && e <= hi; }
  friend bool operator==(const Window& a, const Window& b) { return a.lo == b.lo && a.hi == b.hi; }
};

struct Axis {
  int var = U;
  Window w;
  bool zero_below = false;
  bool zero_above = false;
  // support bounds; beyond them the series vanishes
  long long sup_lo() const { return zero_below ? w.lo : LLONG_MIN / 4; }
  long long sup_hi() const { return zero_above ? w.hi : LLONG_MAX / 4; }
};

enum class Expansion { Auto, AtInfinity, AtZero };

// coefficient ring helpers
inline Rat cmul(const Rat& a, const Rat& b) { return a * b; }
inline MatQ cmul(const Rat& a, const MatQ& b) {
  MatQ r = b;
  return r.scale(a);
}
inline MatQ cmul(const MatQ& a, const Rat& b) {
  MatQ r = a;
  return r.scale(b);
}
inline MatQ cmul(const MatQ& a, const MatQ& b) { return a * b; }
inline void cmul_add(Rat& r, const Rat& a, const Rat& b) { r += a * b; }
inline void cmul_add(MatQ& r, const MatQ& a, const MatQ& b) { MatQ::mul_add(r, a, b); }
inline void cmul_add(MatQ& r, const Rat& a, const MatQ& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (!is_zero(b(i, j))) r(i, j) += a * b(i, j);
}
inline void cmul_add(MatQ& r, const MatQ& a, const Rat& b) { cmul_add(r, b, a); }
inline Rat czero(const Rat&, const Rat&) { return Rat(0); }
inline MatQ czero(const Rat&, const MatQ& b) { return MatQ(b.rows(), b.cols()); }
inline MatQ czero(const MatQ& a, const Rat&) { return MatQ(a.rows(), a.cols()); }
inline MatQ czero(const MatQ& a, const MatQ& b) { return MatQ(a.rows(), b.cols()); }
inline Rat cinverse(const Rat& a) {
  if (is_zero(a)) throw SingularError("Gauss pivot singular: leading coefficient is zero");
  return 1 / a;
}
inline MatQ cinverse(const MatQ& a) {
  try {
    return inverse(a);
  } catch (const SingularError&) {
    throw SingularError("Gauss pivot singular: leading coefficient not invertible");
  }
}
inline Rat cone(const Rat&) { return Rat(1); }
inline MatQ cone(const MatQ& a) { return MatQ::identity(a.rows()); }

template <class C>
class TruncSeries {
 public:
  enum class Loc { Inside, Zero, Unknown };

  TruncSeries() = default;
  TruncSeries(std::vector<Axis> axes, C zero) : axes_(std::move(axes)), zero_(std::move(zero)) {
    std::sort(axes_.begin(), axes_.end(), [](const Axis& a, const Axis& b) { return a.var < b.var; });
    for (std::size_t k = 0; k + 1 < axes_.size(); ++k)
      if (axes_[k].var == axes_[k + 1].var) throw std::invalid_argument("repeated series variable");
    std::size_t n = 1;
    strides_.assign(axes_.size(), 1);
    for (std::size_t k = axes_.size(); k-- > 0;) {
      if (axes_[k].w.lo > axes_[k].w.hi)
        throw WindowError(std::string("truncation exhausted in variable ") + var_name(axes_[k].var));
      strides_[k] = n;
      n *= static_cast<std::size_t>(axes_[k].w.size());
    }
    data_.assign(n, zero_);
  }

  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t nvars() const { return axes_.size(); }
  const C& zero() const { return zero_; }
  std::size_t size() const { return data_.size(); }
  bool is_delta() const { return delta_; }
  void mark_delta() { delta_ = true; }

  int axis_of(int var) const {
    for (std::size_t k = 0; k < axes_.size(); ++k)
      if (axes_[k].var == var) return static_cast<int>(k);
    return -1;
  }
  std::vector<int> vars() const {
    std::vector<int> v;
    for (const auto& a : axes_) v.push_back(a.var);
    return v;
  }

  // exponents are given per axis (in axis order)
  Loc locate(const int* e, std::size_t& idx) const {
    bool unknown = false;
    idx = 0;
    for (std::size_t k = 0; k < axes_.size(); ++k) {
      const Axis& a = axes_[k];
      if (e[k] < a.w.lo) {
        if (a.zero_below) return Loc::Zero;
        unknown = true;
      } else if (e[k] > a.w.hi) {
        if (a.zero_above) return Loc::Zero;
        unknown = true;
      } else {
        idx += static_cast<std::size_t>(e[k] - a.w.lo) * strides_[k];
      }
    }
    return unknown ? Loc::Unknown : Loc::Inside;
  }
  Loc locate(const std::vector<int>& e, std::size_t& idx) const { return locate(e.data(), idx); }
  bool known(const std::vector<int>& e) const {
    std::size_t i;
    return locate(e, i) != Loc::Unknown;
  }
  // nullptr for a known zero outside the box; throws if unknown
  const C* get(const int* e) const {
    std::size_t i;
    switch (locate(e, i)) {
      case Loc::Inside: return &data_[i];
      case Loc::Zero: return nullptr;
      default: break;
    }
    throw UnknownCoefficient("coefficient outside the validity window");
  }
  C at(const std::vector<int>& e) const {
    const C* p = get(e.data());
    return p ? *p : zero_;
  }
  C& ref(const std::vector<int>& e) {
    std::size_t i;
    if (locate(e, i) != Loc::Inside) throw std::out_of_range("exponent outside the series box");
    return data_[i];
  }
  C& ref_index(std::size_t i) { return data_[i]; }
  const C& at_index(std::size_t i) const { return data_[i]; }

  // exponent tuple of a flat index
  std::vector<int> exponents(std::size_t idx) const {
    std::vector<int> e(axes_.size());
    for (std::size_t k = 0; k < axes_.size(); ++k) {
      e[k] = axes_[k].w.lo + static_cast<int>(idx / strides_[k]);
      idx %= strides_[k];
    }
    return e;
  }

  TruncSeries& scale(const Rat& s) {
    for (auto& c : data_) c = cmul(s, c);
    delta_ = false;
    return *this;
  }
  TruncSeries operator-() const {
    TruncSeries r = *this;
    r.scale(Rat(-1));
    return r;
  }

  template <class F>
  auto map(F f) const {
    using D = decltype(f(zero_));
    TruncSeries<D> r(axes_, f(zero_));
    for (std::size_t i = 0; i < data_.size(); ++i) r.ref_index(i) = f(data_[i]);
    return r;
  }

  // first nonzero stored coefficient (lexicographic in exponents)
  std::optional<std::size_t> first_nonzero() const {
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!is_zero(data_[i])) return i;
    return std::nullopt;
  }
  bool is_zero_series() const { return !first_nonzero().has_value(); }

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::vector<C> data_;
  C zero_{};
  bool delta_ = false;
};

using SeriesQ = TruncSeries<Rat>;
using SeriesM = TruncSeries<MatQ>;

// ----------------------------------------------------------- construction

inline SeriesQ constant_series(const Rat& c) {
  SeriesQ s({}, Rat(0));
  s.ref({}) = c;
  return s;
}
inline SeriesM constant_series(const MatQ& c) {
  SeriesM s({}, MatQ(c.rows(), c.cols()));
  s.ref({}) = c;
  return s;
}

// polynomial with both zero flags on every axis it uses
inline SeriesQ poly_series(const MPoly& p) {
  std::vector<Axis> axes;
  for (int v = 0; v < kNumVars; ++v) {
    if (!p.uses(v)) continue;
    int lo = INT_MAX, hi = 0;
    for (const auto& kv : p.terms()) lo = std::min(lo, kv.first[v]);
    hi = p.degree_in(v);
    axes.push_back(Axis{v, Window{lo, hi}, true, true});
  }
  SeriesQ s(axes, Rat(0));
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> e;
    for (const auto& a : axes) e.push_back(m[a.var]);
    s.ref(e) = c;
  }
  return s;
}

// sum_k c_k u^k, matrix polynomial; both flags
inline SeriesM matrix_poly_series(const std::vector<std::pair<Mono, MatQ>>& terms) {
  if (terms.empty()) throw std::invalid_argument("empty matrix polynomial");
  std::vector<Axis> axes;
  for (int v = 0; v < kNumVars; ++v) {
    int lo = INT_MAX, hi = INT_MIN;
    bool used = false;
    for (const auto& t : terms) {
      lo = std::min(lo, t.first[v]);
      hi = std::max(hi, t.first[v]);
      if (t.first[v]) used = true;
    }
    if (used) axes.push_back(Axis{v, Window{lo, hi}, true, true});
  }
  const MatQ& z = terms.front().second;
  SeriesM s(axes, MatQ(z.rows(), z.cols()));
  for (const auto& [m, c] : terms) {
    std::vector<int> e;
    for (const auto& a : axes) e.push_back(m[a.var]);
    s.ref(e) += c;
  }
  return s;
}

namespace detail {

// coefficients q_0..q_M of num(w)/den(w) as a power series, den(0) != 0
inline std::vector<Rat> power_series_quotient(const std::vector<Rat>& num, const std::vector<Rat>& den,
                                              int M) {
  std::vector<Rat> q(static_cast<std::size_t>(std::max(M + 1, 0)));
  const Rat& d0 = den[0];
  for (int j = 0; j <= M; ++j) {
    Rat acc = j < static_cast<int>(num.size()) ? num[static_cast<std::size_t>(j)] : Rat(0);
    for (int i = 1; i <= j && i < static_cast<int>(den.size()); ++i)
      acc -= den[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j - i)];
    q[static_cast<std::size_t>(j)] = acc / d0;
  }
  return q;
}

// Laurent coefficients at infinity: map exponent -> value for exponents in [-N, deg]
inline std::vector<Rat> laurent_at_infinity(const RatFun& f, int N, int& top) {
  if (f.is_zero()) {
    top = -N;
    return {Rat(0)};
  }
  const auto& n = f.num().coeffs();
  const auto& d = f.den().coeffs();
  int a = f.num().degree(), b = f.den().degree();
  top = a - b;
  std::vector<Rat> nr(n.rbegin(), n.rend()), dr(d.rbegin(), d.rend());
  int M = top + N;  // exponents top, top-1, ..., -N
  if (M < 0) {
    top = -N;
    return {Rat(0)};
  }
  return power_series_quotient(nr, dr, M);  // q_j is the coefficient of u^{top-j}
}

}  // namespace detail

// Expansion in descending powers; box [-N, deg f], zero above.
inline SeriesQ expand_at_infinity(const RatFun& f, int N, int var = U) {
  if (N < 0) throw std::invalid_argument("truncation order must be nonnegative");
  int top;
  auto q = detail::laurent_at_infinity(f, N, top);
  SeriesQ s({Axis{var, Window{-N, top}, false, true}}, Rat(0));
  for (std::size_t j = 0; j < q.size(); ++j) s.ref({top - static_cast<int>(j)}) = q[j];
  return s;
}

inline SeriesM expand_at_infinity(const MatF& f, int N, int var = U) {
  if (N < 0) throw std::invalid_argument("truncation order must be nonnegative");
  int top = -N;
  for (const auto& e : f.data())
    if (!e.is_zero()) top = std::max(top, e.degree());
  SeriesM s({Axis{var, Window{-N, top}, false, true}}, MatQ(f.rows(), f.cols()));
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) {
      if (f(i, j).is_zero()) continue;
      int t;
      auto q = detail::laurent_at_infinity(f(i, j), N, t);
      for (std::size_t k = 0; k < q.size(); ++k)
        if (!is_zero(q[k])) s.ref({t - static_cast<int>(k)})(i, j) = q[k];
    }
  return s;
}

inline void require_regular_at_zero(const RatFun& f, const char* what = "function") {
  if (sgn(f.den().coeff(0)) == 0)
    throw PoleError(std::string(what) + " has a pole at 0; move the evaluation point");
}

// Taylor expansion at 0; box [0, N], zero below.
inline SeriesQ expand_at_zero(const RatFun& f, int N, int var = U) {
  if (N < 0) throw std::invalid_argument("truncation order must be nonnegative");
  require_regular_at_zero(f);
  auto q = detail::power_series_quotient(f.num().coeffs(), f.den().coeffs(), N);
  SeriesQ s({Axis{var, Window{0, N}, true, false}}, Rat(0));
  for (int j = 0; j <= N; ++j) s.ref({j}) = q[static_cast<std::size_t>(j)];
  return s;
}

inline SeriesM expand_at_zero(const MatF& f, int N, int var = U) {
  if (N < 0) throw std::invalid_argument("truncation order must be nonnegative");
  SeriesM s({Axis{var, Window{0, N}, true, false}}, MatQ(f.rows(), f.cols()));
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) {
      if (f(i, j).is_zero()) continue;
      require_regular_at_zero(f(i, j), "operator entry");
      auto q = detail::power_series_quotient(f(i, j).num().coeffs(), f(i, j).den().coeffs(), N);
      for (int k = 0; k <= N; ++k)
        if (!is_zero(q[static_cast<std::size_t>(k)])) s.ref({k})(i, j) = q[static_cast<std::size_t>(k)];
    }
  return s;
}

// delta(a - b) = sum_k a^k b^{-k-1}; box [-N, N] x [-N-1, N-1]
inline SeriesQ delta_series(int N, int var_a = U, int var_b = V) {
  if (N < 0) throw std::invalid_argument("truncation order must be nonnegative");
  if (var_a >= var_b) throw std::invalid_argument("delta_series expects var_a before var_b");
  SeriesQ s({Axis{var_a, Window{-N, N}, false, false}, Axis{var_b, Window{-N - 1, N - 1}, false, false}},
            Rat(0));
  for (int k = -N; k <= N; ++k) s.ref({k, -k - 1}) = 1;
  s.mark_delta();
  return s;
}

// 1/(u - v + c) expanded at u = infinity: sum_k (v - c)^k u^{-k-1}, or at
// v = infinity: -sum_k (u + c)^k v^{-k-1}; k = 0..K.
inline SeriesQ expand_inverse_difference(const Rat& c, int K, bool at_u_infinity = true) {
  int big = at_u_infinity ? U : V, small = at_u_infinity ? V : U;
  Rat shift = at_u_infinity ? Rat(-c) : c;
  Rat sgn_all = at_u_infinity ? Rat(1) : Rat(-1);
  std::vector<Axis> axes{Axis{big, Window{-K - 1, -1}, false, true}, Axis{small, Window{0, K}, true, false}};
  SeriesQ s(axes, Rat(0));
  for (int k = 0; k <= K; ++k) {
    Rat binom = 1;
    for (int j = 0; j <= k; ++j) {
      Rat pw = 1;
      for (int t = 0; t < k - j; ++t) pw *= shift;
      std::vector<int> e(2);
      e[static_cast<std::size_t>(s.axis_of(big))] = -k - 1;
      e[static_cast<std::size_t>(s.axis_of(small))] = j;
      s.ref(e) = sgn_all * binom * pw;
      binom = binom * (k - j) / (j + 1);
    }
  }
  return s;
}

// ----------------------------------------------------------- arithmetic

namespace detail {

inline Axis point_axis(int var) { return Axis{var, Window{0, 0}, true, true}; }

template <class C>
TruncSeries<C> with_axes(const TruncSeries<C>& s, const std::vector<int>& vars) {
  // embed s into a larger variable set: missing variables enter as exponent 0
  std::vector<Axis> axes = s.axes();
  for (int v : vars)
    if (s.axis_of(v) < 0) axes.push_back(point_axis(v));
  if (axes.size() == s.nvars()) return s;
  TruncSeries<C> r(axes, s.zero());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto e = s.exponents(i);
    std::vector<int> f(r.nvars(), 0);
    for (std::size_t k = 0; k < s.nvars(); ++k) f[static_cast<std::size_t>(r.axis_of(s.axes()[k].var))] = e[k];
    r.ref(f) = s.at_index(i);
  }
  return r;
}

}  // namespace detail

// s + sign*t on the region where both are known
template <class C>
TruncSeries<C> add_scaled(const TruncSeries<C>& s0, const TruncSeries<C>& t0, int sign) {
  std::vector<int> vars = s0.vars();
  for (int v : t0.vars())
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  auto s = detail::with_axes(s0, vars);
  auto t = detail::with_axes(t0, vars);
  std::vector<Axis> axes;
  for (std::size_t k = 0; k < s.nvars(); ++k) {
    const Axis& a = s.axes()[k];
    const Axis& b = t.axes()[static_cast<std::size_t>(t.axis_of(a.var))];
    long long klo = std::max(a.zero_below ? LLONG_MIN / 4 : a.w.lo, b.zero_below ? LLONG_MIN / 4 : b.w.lo);
    long long khi = std::min(a.zero_above ? LLONG_MAX / 4 : a.w.hi, b.zero_above ? LLONG_MAX / 4 : b.w.hi);
    long long lo = std::max<long long>(klo, std::min(a.w.lo, b.w.lo));
    long long hi = std::min<long long>(khi, std::max(a.w.hi, b.w.hi));
    if (lo > hi)
      throw WindowError(std::string("truncation exhausted in variable ") + var_name(a.var));
    axes.push_back(Axis{a.var, Window{static_cast<int>(lo), static_cast<int>(hi)},
                        a.zero_below && b.zero_below, a.zero_above && b.zero_above});
  }
  TruncSeries<C> r(axes, s.zero());
  std::vector<int> es(r.nvars()), et(r.nvars());
  for (std::size_t i = 0; i < r.size(); ++i) {
    auto e = r.exponents(i);
    for (std::size_t k = 0; k < r.nvars(); ++k) {
      es[static_cast<std::size_t>(s.axis_of(r.axes()[k].var))] = e[k];
      et[static_cast<std::size_t>(t.axis_of(r.axes()[k].var))] = e[k];
    }
    const C* x = s.get(es.data());
    const C* y = t.get(et.data());
    C& out = r.ref_index(i);
    if (x) out = *x;
    if (y) {
      if (sign > 0) out += *y;
      else out -= *y;
    }
  }
  return r;
}

template <class C>
TruncSeries<C> operator+(const TruncSeries<C>& s, const TruncSeries<C>& t) {
  return add_scaled(s, t, 1);
}
template <class C>
TruncSeries<C> operator-(const TruncSeries<C>& s, const TruncSeries<C>& t) {
  return add_scaled(s, t, -1);
}

namespace detail {

// exactness of a shared-variable convolution at result exponent e
struct SplitRange {
  bool empty = false;
  bool ok = false;
  long long lo = 0, hi = 0;  // range of the s-exponent
};
inline SplitRange split_range(const Axis& a, const Axis& b, long long e) {
  SplitRange r;
  long long lo = std::max(a.sup_lo(), e - b.sup_hi());
  long long hi = std::min(a.sup_hi(), e - b.sup_lo());
  if (lo > hi) {
    r.empty = r.ok = true;
    return r;
  }
  r.lo = lo;
  r.hi = hi;
  r.ok = lo >= a.w.lo && hi <= a.w.hi && e - hi >= b.w.lo && e - lo <= b.w.hi;
  return r;
}

template <class A, class B>
auto delta_mul(const TruncSeries<A>& d, const TruncSeries<B>& t, bool delta_left) {
  using R = decltype(cmul(d.zero(), t.zero()));
  const Axis& ax0 = d.axes()[0];
  const Axis& ax1 = d.axes()[1];
  bool shares0 = t.axis_of(ax0.var) >= 0, shares1 = t.axis_of(ax1.var) >= 0;
  const Axis& free_ax = shares0 ? ax1 : ax0;  // owned by delta only
  const Axis& bound_ax = shares0 ? ax0 : ax1;
  const Axis& tb = t.axes()[static_cast<std::size_t>(t.axis_of(bound_ax.var))];
  (void)shares1;
  // result exponent l on the bound axis needs k + l + 1 known in t for every k
  long long klo = tb.zero_below ? LLONG_MIN / 4 : tb.w.lo;
  long long khi = tb.zero_above ? LLONG_MAX / 4 : tb.w.hi;
  long long lo = std::max<long long>(bound_ax.w.lo, klo - free_ax.w.lo - 1);
  long long hi = std::min<long long>(bound_ax.w.hi, khi - free_ax.w.hi - 1);
  if (lo > hi)
    throw WindowError(std::string("truncation exhausted in variable ") + var_name(bound_ax.var));
  std::vector<Axis> axes;
  axes.push_back(Axis{free_ax.var, free_ax.w, false, false});
  axes.push_back(Axis{bound_ax.var, Window{static_cast<int>(lo), static_cast<int>(hi)}, false, false});
  for (const auto& a : t.axes())
    if (a.var != bound_ax.var) axes.push_back(a);
  R z = delta_left ? czero(d.zero(), t.zero()) : czero(t.zero(), d.zero());
  TruncSeries<R> r(axes, z);
  std::vector<int> et(t.nvars());
  int fr = r.axis_of(free_ax.var), br = r.axis_of(bound_ax.var);
  for (std::size_t i = 0; i < r.size(); ++i) {
    auto e = r.exponents(i);
    for (std::size_t k = 0; k < t.nvars(); ++k) {
      int v = t.axes()[k].var;
      if (v == bound_ax.var) et[k] = e[static_cast<std::size_t>(fr)] + e[static_cast<std::size_t>(br)] + 1;
      else et[k] = e[static_cast<std::size_t>(r.axis_of(v))];
    }
    const B* y = t.get(et.data());
    if (y) r.ref_index(i) = delta_left ? cmul(Rat(1), *y) : cmul(*y, Rat(1));
  }
  return r;
}

}  // namespace detail

// Product of series.  Disjoint variables: outer product.  Shared variables:
// convolution restricted to exponents where every contributing term is known.
template <class A, class B>
auto series_mul(const TruncSeries<A>& s, const TruncSeries<B>& t) {
  using R = decltype(cmul(s.zero(), t.zero()));
  auto shared_count = [](const auto& x, const auto& y) {
    int c = 0;
    for (const auto& a : x.axes())
      if (y.axis_of(a.var) >= 0) ++c;
    return c;
  };
  if constexpr (std::is_same_v<A, Rat>) {
    if (s.is_delta() && shared_count(s, t) == 1) return detail::delta_mul(s, t, true);
  }
  if constexpr (std::is_same_v<B, Rat>) {
    if (t.is_delta() && shared_count(t, s) == 1) {
      auto r = detail::delta_mul(t, s, false);
      return TruncSeries<R>(r);
    }
  }

  std::vector<Axis> axes;
  struct Role {
    int rs = -1, rt = -1;  // axis indices in s and t
  };
  std::vector<Role> roles;
  std::vector<int> all = s.vars();
  for (int v : t.vars())
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  std::sort(all.begin(), all.end());
  for (int v : all) {
    Role ro{s.axis_of(v), t.axis_of(v)};
    roles.push_back(ro);
    if (ro.rt < 0) {
      axes.push_back(s.axes()[static_cast<std::size_t>(ro.rs)]);
    } else if (ro.rs < 0) {
      axes.push_back(t.axes()[static_cast<std::size_t>(ro.rt)]);
    } else {
      const Axis& a = s.axes()[static_cast<std::size_t>(ro.rs)];
      const Axis& b = t.axes()[static_cast<std::size_t>(ro.rt)];
      int lo = INT_MAX, hi = INT_MIN;
      for (long long e = static_cast<long long>(a.w.lo) + b.w.lo; e <= static_cast<long long>(a.w.hi) + b.w.hi;
           ++e) {
        auto sr = detail::split_range(a, b, e);
        if (sr.ok && !sr.empty) {
          lo = std::min(lo, static_cast<int>(e));
          hi = std::max(hi, static_cast<int>(e));
        }
      }
      if (lo > hi) throw WindowError(std::string("truncation exhausted in variable ") + var_name(v));
      axes.push_back(Axis{v, Window{lo, hi}, a.zero_below && b.zero_below, a.zero_above && b.zero_above});
    }
  }
  TruncSeries<R> r(axes, czero(s.zero(), t.zero()));
  std::vector<int> es(s.nvars()), et(t.nvars());
  std::vector<int> shared;
  for (std::size_t k = 0; k < roles.size(); ++k)
    if (roles[k].rs >= 0 && roles[k].rt >= 0) shared.push_back(static_cast<int>(k));
  for (std::size_t i = 0; i < r.size(); ++i) {
    auto e = r.exponents(i);
    std::vector<detail::SplitRange> ranges;
    bool vanish = false;
    for (std::size_t k = 0; k < roles.size(); ++k) {
      if (roles[k].rs >= 0 && roles[k].rt < 0) es[static_cast<std::size_t>(roles[k].rs)] = e[k];
      if (roles[k].rt >= 0 && roles[k].rs < 0) et[static_cast<std::size_t>(roles[k].rt)] = e[k];
    }
    for (int k : shared) {
      auto sr = detail::split_range(s.axes()[static_cast<std::size_t>(roles[static_cast<std::size_t>(k)].rs)],
                                    t.axes()[static_cast<std::size_t>(roles[static_cast<std::size_t>(k)].rt)],
                                    e[static_cast<std::size_t>(k)]);
      if (sr.empty) vanish = true;
      ranges.push_back(sr);
    }
    if (vanish) continue;
    R& out = r.ref_index(i);
    // odometer over the shared splits
    std::vector<long long> cur(shared.size());
    for (std::size_t q = 0; q < shared.size(); ++q) cur[q] = ranges[q].lo;
    while (true) {
      for (std::size_t q = 0; q < shared.size(); ++q) {
        const Role& ro = roles[static_cast<std::size_t>(shared[q])];
        es[static_cast<std::size_t>(ro.rs)] = static_cast<int>(cur[q]);
        et[static_cast<std::size_t>(ro.rt)] = static_cast<int>(e[static_cast<std::size_t>(shared[q])] - cur[q]);
      }
      const A* x = s.get(es.data());
      const B* y = t.get(et.data());
      if (x && y && !is_zero(*x) && !is_zero(*y)) cmul_add(out, *x, *y);
      std::size_t q = shared.size();
      bool done = true;
      while (q-- > 0) {
        if (++cur[q] <= ranges[q].hi) {
          done = false;
          break;
        }
        cur[q] = ranges[q].lo;
      }
      if (done) break;
    }
  }
  return r;
}

// Inverse of a one-variable series whose leading coefficient (top exponent
// for expansions at infinity, bottom exponent for expansions at zero) is
// invertible.
template <class C>
TruncSeries<C> series_inverse(const TruncSeries<C>& s, Expansion dir = Expansion::Auto) {
  if (s.nvars() == 0) {
    TruncSeries<C> r = s;
    r.ref({}) = cinverse(s.at({}));
    return r;
  }
  if (s.nvars() != 1) throw std::invalid_argument("series_inverse needs a one-variable series");
  const Axis& a = s.axes()[0];
  if (dir == Expansion::Auto) {
    if (a.zero_above && !a.zero_below) dir = Expansion::AtInfinity;
    else if (a.zero_below && !a.zero_above) dir = Expansion::AtZero;
    else if (a.zero_above && a.zero_below && a.w.lo == a.w.hi) dir = Expansion::AtInfinity;
    else throw std::invalid_argument("series_inverse: expansion direction is ambiguous");
  }
  const int M = a.w.hi - a.w.lo;
  std::vector<C> coef(static_cast<std::size_t>(M + 1));
  if (dir == Expansion::AtInfinity) {
    if (!a.zero_above) throw std::invalid_argument("series_inverse at infinity needs a series bounded above");
    for (int j = 0; j <= M; ++j) coef[static_cast<std::size_t>(j)] = s.at({a.w.hi - j});
  } else {
    if (!a.zero_below) throw std::invalid_argument("series_inverse at zero needs a series bounded below");
    for (int j = 0; j <= M; ++j) coef[static_cast<std::size_t>(j)] = s.at({a.w.lo + j});
  }
  C inv0 = cinverse(coef[0]);
  std::vector<C> b(static_cast<std::size_t>(M + 1), s.zero());
  b[0] = inv0;
  for (int j = 1; j <= M; ++j) {
    C acc = s.zero();
    for (int i = 1; i <= j; ++i) cmul_add(acc, coef[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j - i)]);
    b[static_cast<std::size_t>(j)] = -cmul(inv0, acc);
  }
  if (dir == Expansion::AtInfinity) {
    int top = -a.w.hi;
    TruncSeries<C> r({Axis{a.var, Window{top - M, top}, false, true}}, s.zero());
    for (int j = 0; j <= M; ++j) r.ref({top - j}) = b[static_cast<std::size_t>(j)];
    return r;
  }
  int bot = -a.w.lo;
  TruncSeries<C> r({Axis{a.var, Window{bot, bot + M}, true, false}}, s.zero());
  for (int j = 0; j <= M; ++j) r.ref({bot + j}) = b[static_cast<std::size_t>(j)];
  return r;
}

// rename the variables of a series (same order of axes after sorting)
template <class C>
TruncSeries<C> rename(const TruncSeries<C>& s, const std::vector<std::pair<int, int>>& map) {
  std::vector<Axis> axes = s.axes();
  for (auto& a : axes)
    for (const auto& [from, to] : map)
      if (a.var == from) {
        a.var = to;
        break;
      }
  TruncSeries<C> r(axes, s.zero());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto e = s.exponents(i);
    std::vector<int> f(r.nvars());
    for (std::size_t k = 0; k < s.nvars(); ++k) {
      int v = axes[k].var;
      f[static_cast<std::size_t>(r.axis_of(v))] = e[k];
    }
    r.ref(f) = s.at_index(i);
  }
  if (s.is_delta()) r.mark_delta();
  return r;
}

// Restrict to a smaller box (flags are kept only where the box edge is kept).
template <class C>
TruncSeries<C> restrict_box(const TruncSeries<C>& s, const std::vector<Window>& box) {
  std::vector<Axis> axes = s.axes();
  for (std::size_t k = 0; k < axes.size(); ++k) {
    Window w{std::max(axes[k].w.lo, box[k].lo), std::min(axes[k].w.hi, box[k].hi)};
    if (w.lo != axes[k].w.lo) axes[k].zero_below = false;
    if (w.hi != axes[k].w.hi) axes[k].zero_above = false;
    axes[k].w = w;
  }
  TruncSeries<C> r(axes, s.zero());
  for (std::size_t i = 0; i < r.size(); ++i) r.ref_index(i) = s.at(r.exponents(i));
  return r;
}

}  // namespace superyang
