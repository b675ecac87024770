// SPDX-License-Identifier: MIT
// Sums of ordered operator products of one- and multi-variable series with
// scalar polynomial prefactors and formal delta factors.  Coefficients are
// computed on demand, so products in independent variables never build a
// full multi-dimensional table.
#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "superyang/report.hpp"
#include "superyang/series.hpp"

namespace superyang {

struct Factor {
  const SeriesM* s = nullptr;
  std::vector<int> vars;  // relation variable of each axis of the series
  bool delta = false;     // delta(vars[0] - vars[1]), scalar
  const SeriesQ* q = nullptr;  // scalar series instead of an operator series

  const std::vector<Axis>& axes() const { return q ? q->axes() : s->axes(); }
};

inline Factor F(const SeriesM& s, int var) {
  if (s.nvars() != 1) throw std::invalid_argument("F() expects a one-variable series");
  return Factor{&s, {var}, false};
}
inline Factor F(const SeriesM& s) {  // keep the series' own variables
  return Factor{&s, s.vars(), false};
}
inline Factor Delta(int a, int b) { return Factor{nullptr, {a, b}, true}; }
inline Factor Scalar(const SeriesQ& q) { return Factor{nullptr, q.vars(), false, &q}; }

struct Term {
  Rat coef = 1;
  MPoly pre = MPoly(1);
  std::vector<Factor> factors;
};

class Expr {
 public:
  Expr() = default;
  Expr& add(const Rat& coef, const MPoly& pre, std::vector<Factor> fs) {
    if (!is_zero(coef) && !pre.is_zero()) terms_.push_back(Term{coef, pre, std::move(fs)});
    return *this;
  }
  Expr& add(const Rat& coef, std::vector<Factor> fs) { return add(coef, MPoly(1), std::move(fs)); }
  Expr& operator+=(const Expr& o) {
    for (const auto& t : o.terms_) terms_.push_back(t);
    return *this;
  }
  Expr& operator-=(const Expr& o) {
    for (auto t : o.terms_) {
      t.coef = -t.coef;
      terms_.push_back(t);
    }
    return *this;
  }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

namespace detail {

struct Slot {
  int factor;
  int axis;
};

// coefficient of the ordered product at exponents y (indexed by variable id);
// returns false if unknown, sets zero flag if it vanishes identically there
inline bool product_coeff(const Term& t, const std::array<int, kNumVars>& y, std::size_t rows,
                          std::size_t cols, MatQ& out, bool& is_zero_out) {
  is_zero_out = false;
  std::array<std::vector<Slot>, kNumVars> slots;
  int delta_idx = -1;
  for (std::size_t f = 0; f < t.factors.size(); ++f) {
    const Factor& fa = t.factors[f];
    if (fa.delta) {
      if (delta_idx >= 0) throw std::invalid_argument("at most one delta factor per term");
      delta_idx = static_cast<int>(f);
      continue;
    }
    for (std::size_t k = 0; k < fa.vars.size(); ++k)
      slots[static_cast<std::size_t>(fa.vars[k])].push_back(Slot{static_cast<int>(f), static_cast<int>(k)});
  }
  std::array<long long, kNumVars> target{};
  for (int w = 0; w < kNumVars; ++w) target[static_cast<std::size_t>(w)] = y[static_cast<std::size_t>(w)];
  std::array<bool, kNumVars> consumed{};
  if (delta_idx >= 0) {
    int a = t.factors[static_cast<std::size_t>(delta_idx)].vars[0];
    int b = t.factors[static_cast<std::size_t>(delta_idx)].vars[1];
    int free_v, bound_v;
    if (slots[static_cast<std::size_t>(a)].empty()) {
      free_v = a;
      bound_v = b;
    } else if (slots[static_cast<std::size_t>(b)].empty()) {
      free_v = b;
      bound_v = a;
    } else {
      throw std::invalid_argument("delta factor shares both variables with other factors");
    }
    // delta exponent on free_v is y[free_v]; on bound_v it is -y[free_v]-1
    consumed[static_cast<std::size_t>(free_v)] = true;
    target[static_cast<std::size_t>(bound_v)] -= -static_cast<long long>(y[static_cast<std::size_t>(free_v)]) - 1;
  }
  // per variable: exponent ranges of each slot
  struct Range {
    long long lo, hi;
  };
  std::array<std::vector<Range>, kNumVars> ranges;
  bool unknown = false;
  for (int w = 0; w < kNumVars; ++w) {
    auto& sl = slots[static_cast<std::size_t>(w)];
    long long T = target[static_cast<std::size_t>(w)];
    if (sl.empty()) {
      if (!consumed[static_cast<std::size_t>(w)] && T != 0) {
        is_zero_out = true;
        return true;
      }
      continue;
    }
    long long sum_lo = 0, sum_hi = 0;
    bool inf_lo = false, inf_hi = false;
    std::vector<const Axis*> ax;
    for (const auto& s : sl) {
      const Axis& a = t.factors[static_cast<std::size_t>(s.factor)].axes()[static_cast<std::size_t>(s.axis)];
      ax.push_back(&a);
      if (a.zero_below) sum_lo += a.w.lo;
      else inf_lo = true;
      if (a.zero_above) sum_hi += a.w.hi;
      else inf_hi = true;
    }
    if ((!inf_lo && T < sum_lo) || (!inf_hi && T > sum_hi)) {
      is_zero_out = true;
      return true;
    }
    for (std::size_t j = 0; j < sl.size(); ++j) {
      const Axis& a = *ax[j];
      // bounds from the other slots
      long long others_lo = 0, others_hi = 0;
      bool olo_inf = false, ohi_inf = false;
      for (std::size_t l = 0; l < sl.size(); ++l) {
        if (l == j) continue;
        if (ax[l]->zero_below) others_lo += ax[l]->w.lo;
        else olo_inf = true;
        if (ax[l]->zero_above) others_hi += ax[l]->w.hi;
        else ohi_inf = true;
      }
      long long lo = a.zero_below ? a.w.lo : LLONG_MIN / 4;
      long long hi = a.zero_above ? a.w.hi : LLONG_MAX / 4;
      if (!ohi_inf) lo = std::max(lo, T - others_hi);
      if (!olo_inf) hi = std::min(hi, T - others_lo);
      if (lo > hi) {
        is_zero_out = true;
        return true;
      }
      if (lo < a.w.lo || hi > a.w.hi) unknown = true;  // unknown contributions
      ranges[static_cast<std::size_t>(w)].push_back(Range{lo, hi});
    }
  }
  if (unknown) return false;
  // enumerate all compositions
  std::vector<std::vector<int>> exps(t.factors.size());
  for (std::size_t f = 0; f < t.factors.size(); ++f) exps[f].assign(t.factors[f].vars.size(), 0);
  out = MatQ(rows, cols);
  bool any = false;
  std::vector<int> order;
  for (int w = 0; w < kNumVars; ++w)
    if (!slots[static_cast<std::size_t>(w)].empty()) order.push_back(w);
  MatQ acc;
  // recursive lambda over (variable position, slot position, remaining)
  auto rec = [&](auto&& self, std::size_t vi, std::size_t si, long long remaining) -> void {
    if (vi == order.size()) {
      // product in factor order; scalar factors commute out
      Rat scal = 1;
      for (std::size_t f = 0; f < t.factors.size(); ++f) {
        if (!t.factors[f].q) continue;
        const Rat* x = t.factors[f].q->get(exps[f].data());
        if (!x || is_zero(*x)) return;
        scal *= *x;
      }
      bool first = true;
      for (std::size_t f = 0; f < t.factors.size(); ++f) {
        if (t.factors[f].delta || t.factors[f].q) continue;
        const MatQ* c = t.factors[f].s->get(exps[f].data());
        if (!c || c->is_zero()) return;
        if (first) {
          acc = *c;
          first = false;
        } else {
          acc = acc * *c;
          if (acc.is_zero()) return;
        }
      }
      if (first) acc = MatQ::identity(rows);
      if (scal != 1) acc.scale(scal);
      out += acc;
      any = true;
      return;
    }
    int w = order[vi];
    const auto& sl = slots[static_cast<std::size_t>(w)];
    const auto& rg = ranges[static_cast<std::size_t>(w)];
    if (si == 0) remaining = target[static_cast<std::size_t>(w)];
    if (si + 1 == sl.size()) {
      if (remaining < rg[si].lo || remaining > rg[si].hi) return;
      exps[static_cast<std::size_t>(sl[si].factor)][static_cast<std::size_t>(sl[si].axis)] = static_cast<int>(remaining);
      self(self, vi + 1, 0, 0);
      return;
    }
    for (long long e = rg[si].lo; e <= rg[si].hi; ++e) {
      exps[static_cast<std::size_t>(sl[si].factor)][static_cast<std::size_t>(sl[si].axis)] = static_cast<int>(e);
      self(self, vi, si + 1, remaining - e);
    }
  };
  rec(rec, 0, 0, 0);
  if (!any) is_zero_out = true;
  return true;
}

}  // namespace detail

struct EvalResult {
  bool known = false;
  MatQ value;
};

// Coefficient of the whole sum at exponents y; unknown if any term is unknown.
inline EvalResult eval_expr(const Expr& e, const std::array<int, kNumVars>& y, std::size_t dim) {
  EvalResult r;
  r.value = MatQ(dim, dim);
  MatQ part;
  for (const auto& t : e.terms()) {
    for (const auto& [m, c] : t.pre.terms()) {
      std::array<int, kNumVars> z = y;
      for (int w = 0; w < kNumVars; ++w) z[static_cast<std::size_t>(w)] -= m[static_cast<std::size_t>(w)];
      bool zero;
      if (!detail::product_coeff(t, z, dim, dim, part, zero)) return r;
      if (zero) continue;
      Rat k = c * t.coef;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          if (!is_zero(part(i, j))) r.value(i, j) += k * part(i, j);
    }
  }
  r.known = true;
  return r;
}

struct ResidualScan {
  long long compared = 0, unknown = 0;
  std::optional<Witness> witness;
};

// Scan a box of exponents for nonzero coefficients of e.  vars/box give the
// relation variables in report order.
inline ResidualScan scan_zero(const Expr& e, const std::vector<int>& vars, const std::vector<Window>& box,
                              std::size_t dim) {
  ResidualScan s;
  std::array<int, kNumVars> y{};
  std::vector<int> cur(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) cur[k] = box[k].lo;
  while (true) {
    for (std::size_t k = 0; k < vars.size(); ++k) y[static_cast<std::size_t>(vars[k])] = cur[k];
    auto r = eval_expr(e, y, dim);
    if (!r.known) {
      ++s.unknown;
    } else {
      ++s.compared;
      if (!s.witness && !r.value.is_zero()) {
        Witness w;
        for (std::size_t k = 0; k < vars.size(); ++k) w.exponents.emplace_back(var_name(vars[k]), cur[k]);
        for (std::size_t i = 0; i < dim && w.row < 0; ++i)
          for (std::size_t j = 0; j < dim; ++j)
            if (!is_zero(r.value(i, j))) {
              w.row = static_cast<long>(i);
              w.col = static_cast<long>(j);
              w.value = rat_str(r.value(i, j));
              break;
            }
        s.witness = w;
      }
    }
    std::size_t k = vars.size();
    bool done = true;
    while (k-- > 0) {
      if (++cur[k] <= box[k].hi) {
        done = false;
        break;
      }
      cur[k] = box[k].lo;
    }
    if (done || vars.empty()) break;
  }
  return s;
}

inline void fill_report(CheckReport& rep, const ResidualScan& s, const std::vector<int>& vars,
                        const std::vector<Window>& box) {
  rep.window.clear();
  for (std::size_t k = 0; k < vars.size(); ++k) rep.window.emplace_back(var_name(vars[k]), box[k]);
  rep.compared = s.compared;
  if (s.witness) {
    rep.status = Status::Fail;
    rep.witness = s.witness;
    rep.reason = "nonzero residual coefficient";
  } else if (s.compared == 0) {
    rep.status = Status::Fail;
    rep.reason = "no coefficient is determined on the window (divergent or exhausted product)";
    Witness w;
    w.note = "every coefficient in the window depends on unknown data";
    rep.witness = w;
  } else {
    rep.status = Status::Pass;
  }
}

// Equality of two series on the region where both are known.
inline CheckReport compare_series(const SeriesM& a, const SeriesM& b, CheckReport rep) {
  try {
    SeriesM d = a - b;
    rep.window.clear();
    for (const auto& ax : d.axes()) rep.window.emplace_back(var_name(ax.var), ax.w);
    rep.compared = static_cast<long long>(d.size());
    auto nz = d.first_nonzero();
    if (nz) {
      Witness w;
      auto e = d.exponents(*nz);
      for (std::size_t k = 0; k < e.size(); ++k) w.exponents.emplace_back(var_name(d.axes()[k].var), e[k]);
      const MatQ& m = d.at_index(*nz);
      for (std::size_t i = 0; i < m.rows() && w.row < 0; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (!is_zero(m(i, j))) {
            w.row = static_cast<long>(i);
            w.col = static_cast<long>(j);
            w.value = rat_str(m(i, j));
            break;
          }
      rep.witness = w;
      rep.status = Status::Fail;
      rep.reason = "series differ";
    } else {
      rep.status = Status::Pass;
    }
  } catch (const std::exception& ex) {
    rep.status = Status::Error;
    rep.reason = ex.what();
  }
  return rep;
}

}  // namespace superyang
