// SPDX-License-Identifier: MIT
// Checks on the formal delta distribution and on the two expansions of 1/(u-a).
#pragma once

#include <vector>

#include "superyang/report.hpp"
#include "superyang/terms.hpp"

namespace superyang {

// (u - v) delta(u - v) = 0 on the window of the product.
inline CheckReport check_delta_annihilated(int N) {
  CheckReport r;
  r.suite = "series";
  r.name = "difference-times-delta";
  r.param("order", std::to_string(N));
  try {
    SeriesQ p = series_mul(poly_series(MPoly::var(U) - MPoly::var(V)), delta_series(N));
    r.compared = static_cast<long long>(p.size());
    for (const auto& a : p.axes()) r.window.emplace_back(var_name(a.var), a.w);
    if (p.size() == 0) return r.fail("empty window");
    if (auto nz = p.first_nonzero()) {
      Witness w;
      auto e = p.exponents(*nz);
      for (std::size_t k = 0; k < e.size(); ++k) w.exponents.emplace_back(var_name(p.axes()[k].var), e[k]);
      w.value = rat_str(p.at_index(*nz));
      r.witness = w;
      return r.fail("nonzero coefficient");
    }
  } catch (const std::exception& ex) {
    r.status = Status::Error;
    r.reason = ex.what();
  }
  return r;
}

// expand_inf(1/(u-a)) - expand_0(1/(u-a)) = sum_k a^k u^{-k-1}, coefficient by
// coefficient against the directly computed powers of a.
inline CheckReport check_expansion_difference(const Rat& a, int N) {
  CheckReport r;
  r.suite = "series";
  r.name = "expansion-difference";
  r.param("a", rat_str(a)).param("order", std::to_string(N));
  try {
    RatFun f(UPoly(Rat(1)), UPoly(std::vector<Rat>{-a, 1}));
    SeriesQ d = expand_at_infinity(f, N) - expand_at_zero(f, N);
    const Window w = d.axes()[0].w;
    r.window.emplace_back(var_name(U), w);
    for (int e = w.lo; e <= w.hi; ++e) {
      int k = -e - 1;
      Rat want = 1;
      for (int i = 0; i < (k < 0 ? -k : k); ++i) want *= a;
      if (k < 0) want = 1 / want;
      ++r.compared;
      if (d.at({e}) != want) {
        Witness wit;
        wit.exponents.emplace_back(var_name(U), e);
        wit.value = rat_str(d.at({e}) - want);
        r.witness = wit;
        return r.fail("coefficient differs from a^k");
      }
    }
  } catch (const std::exception& ex) {
    r.status = Status::Error;
    r.reason = ex.what();
  }
  return r;
}

inline std::vector<CheckReport> check_formal_delta() {
  std::vector<CheckReport> out;
  for (int N : {2, 4, 8}) out.push_back(check_delta_annihilated(N));
  for (long a : {2L, -3L}) out.push_back(check_expansion_difference(Rat(a), 4));
  return out;
}

}  // namespace superyang
