// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <random>

#include "superyang/series.hpp"

using namespace superyang;

namespace {

RatFun lin(const Rat& c0, const Rat& c1) { return RatFun(UPoly(std::vector<Rat>{c0, c1})); }
RatFun inv_lin(long a) { return RatFun(1) / lin(Rat(-a), 1); }  // 1/(u-a)

}  // namespace

TEST(Expand, AtInfinityExamples) {
  auto s = expand_at_infinity(inv_lin(2), 3);
  EXPECT_EQ(s.axes()[0].w, (Window{-3, -1}));
  EXPECT_EQ(s.at({-1}), Rat(1));
  EXPECT_EQ(s.at({-2}), Rat(2));
  EXPECT_EQ(s.at({-3}), Rat(4));
  EXPECT_EQ(s.at({0}), Rat(0));  // known zero above
  EXPECT_THROW(s.at({-4}), UnknownCoefficient);

  auto t = expand_at_infinity(RatFun::x() / lin(1, 1), 2);  // hbar = 1/2
  EXPECT_EQ(t.at({0}), Rat(1));
  EXPECT_EQ(t.at({-1}), Rat(-1));
  EXPECT_EQ(t.at({-2}), Rat(1));
  // multiply back by (u + 1): u, then unknown past the window
  auto back = series_mul(t, poly_series(MPoly::var(U) + MPoly(1)));
  EXPECT_EQ(back.at({1}), Rat(1));
  EXPECT_EQ(back.at({0}), Rat(0));
  EXPECT_EQ(back.at({-1}), Rat(0));

  auto c = expand_at_infinity(RatFun(1), 4);
  EXPECT_EQ(c.at({0}), Rat(1));
  for (int k = -4; k < 0; ++k) EXPECT_EQ(c.at({k}), Rat(0));
}

TEST(Expand, AtZeroExamples) {
  auto s = expand_at_zero(inv_lin(2), 2);
  EXPECT_EQ(s.at({0}), rat(-1, 2));
  EXPECT_EQ(s.at({1}), rat(-1, 4));
  EXPECT_EQ(s.at({2}), rat(-1, 8));
  EXPECT_EQ(s.at({-1}), Rat(0));
  EXPECT_THROW(s.at({3}), UnknownCoefficient);
  EXPECT_THROW(expand_at_zero(RatFun(1) / RatFun::x(), 2), PoleError);
  auto t = expand_at_zero(lin(1, -1) / lin(1, 1), 1);
  EXPECT_EQ(t.at({0}), Rat(1));
  EXPECT_EQ(t.at({1}), Rat(-2));
}

TEST(Delta, Support) {
  auto d = delta_series(1);
  int nz = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!is_zero(d.at_index(i))) {
      ++nz;
      auto e = d.exponents(i);
      EXPECT_EQ(e[0] + e[1], -1);
    }
  EXPECT_EQ(nz, 3);
  EXPECT_EQ(d.at({-1, 0}), Rat(1));
  EXPECT_EQ(d.at({0, -1}), Rat(1));
  EXPECT_EQ(d.at({1, -2}), Rat(1));
}

TEST(Delta, AnnihilatedByDifference) {
  for (int N : {2, 4, 8}) {
    auto r = series_mul(poly_series(MPoly::var(U) - MPoly::var(V)), delta_series(N));
    ASSERT_GT(r.size(), 0u);
    EXPECT_TRUE(r.is_zero_series()) << "N=" << N;
  }
}

TEST(Delta, ExpansionDifference) {
  for (long a : {2L, -3L}) {
    const int N = 4;
    auto diff = expand_at_infinity(inv_lin(a), N) - expand_at_zero(inv_lin(a), N);
    const Window& w = diff.axes()[0].w;
    EXPECT_EQ(w, (Window{-N, N}));
    for (int e = w.lo; e <= w.hi; ++e) {
      int k = -e - 1;  // a^k u^{-k-1}
      Rat want = 1;
      for (int i = 0; i < std::abs(k); ++i) want *= Rat(a);
      if (k < 0) want = 1 / want;
      EXPECT_EQ(diff.at({e}), want) << "a=" << a << " e=" << e;
    }
  }
}

TEST(Delta, TimesOneVariableSeries) {
  const int N = 4;
  auto k = expand_at_infinity(inv_lin(3), N, V);
  auto d = delta_series(N);
  auto r = series_mul(d, k);
  int checked = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    auto e = r.exponents(i);
    int p = e[0], q = e[1];
    // direct double sum: sum_k [p = k] k_{q + k + 1}
    Rat want = 0;
    for (int kk = -N; kk <= N; ++kk)
      if (kk == p) want += k.at({q + kk + 1});
    EXPECT_EQ(r.at_index(i), want) << p << "," << q;
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(Mul, Telescoping) {
  const int N = 6;
  SeriesQ s({Axis{U, Window{0, N}, true, false}}, Rat(0));
  for (int k = 0; k <= N; ++k) s.ref({k}) = 1;
  auto r = series_mul(s, poly_series(MPoly(1) - MPoly::var(U)));
  EXPECT_EQ(r.axes()[0].w, (Window{0, N}));
  EXPECT_EQ(r.at({0}), Rat(1));
  for (int k = 1; k <= N; ++k) EXPECT_EQ(r.at({k}), Rat(0));
  EXPECT_THROW(r.at({N + 1}), UnknownCoefficient);
}

TEST(Mul, IndependentVariablesOuterProduct) {
  auto s = expand_at_infinity(inv_lin(2), 3, U);
  auto t = expand_at_zero(inv_lin(5), 3, V);
  auto r = series_mul(s, t);
  for (int p = -3; p <= -1; ++p)
    for (int q = 0; q <= 3; ++q) EXPECT_EQ(r.at({p, q}), s.at({p}) * t.at({q}));
}

TEST(Inverse, Examples) {
  auto one = series_inverse(expand_at_infinity(RatFun(1), 3));
  EXPECT_EQ(one.at({0}), Rat(1));
  RatFun f = lin(-2, 1) / lin(-3, 1);
  auto inv = series_inverse(expand_at_infinity(f, 5));
  auto direct = expand_at_infinity(f.inverse(), 5);
  for (int e = inv.axes()[0].w.lo; e <= inv.axes()[0].w.hi; ++e) EXPECT_EQ(inv.at({e}), direct.at({e}));
  SeriesQ z({Axis{U, Window{0, 3}, true, false}}, Rat(0));
  z.ref({1}) = 1;
  EXPECT_THROW(series_inverse(z), std::domain_error);
}

namespace {

// random one-variable rational expansions in u or v
struct RandomSeries {
  std::mt19937_64 rng{11};
  SeriesQ make(int N, int var) {
    std::uniform_int_distribution<int> d(-6, 6);
    Rat a = d(rng), b = d(rng);
    while (a == 0) a = d(rng);
    RatFun f = lin(a, 1) / lin(b == a ? b + 1 : b, 1);
    if (rng() % 2) return expand_at_infinity(f, N, var);
    if (sgn(f.den().coeff(0)) == 0) return expand_at_infinity(f, N, var);
    return expand_at_zero(f, N, var);
  }
};

}  // namespace

TEST(Mul, WindowSoundness) {
  RandomSeries g;
  for (int t = 0; t < 100; ++t) {
    auto seed = g.rng();
    auto build = [&](int N) {
      RandomSeries h;
      h.rng.seed(seed);
      int v1 = U, v2 = (seed % 3 == 0) ? V : U;
      auto a = h.make(N, v1);
      auto b = h.make(N, v2);
      return series_mul(a, b);
    };
    SeriesQ small, big;
    try {
      small = build(5);
    } catch (const WindowError&) {
      continue;
    }
    big = build(7);
    for (std::size_t i = 0; i < small.size(); ++i) {
      auto e = small.exponents(i);
      ASSERT_TRUE(big.known(e));
      ASSERT_EQ(small.at_index(i), big.at(e));
    }
  }
}

TEST(Mul, AssociativeOnOverlap) {
  RandomSeries g;
  for (int t = 0; t < 30; ++t) {
    auto a = g.make(6, U), b = g.make(6, V), c = g.make(6, U);
    SeriesQ l, r;
    try {
      l = series_mul(series_mul(a, b), c);
      r = series_mul(a, series_mul(b, c));
    } catch (const WindowError&) {
      continue;
    }
    for (std::size_t i = 0; i < l.size(); ++i) {
      auto e = l.exponents(i);
      if (r.known(e)) ASSERT_EQ(l.at_index(i), r.at(e));
    }
  }
}

TEST(Mul, ExhaustedWindowNamesVariable) {
  SeriesQ a({Axis{U, Window{0, 2}, true, false}}, Rat(0));
  SeriesQ b({Axis{U, Window{-2, 0}, false, true}}, Rat(0));
  try {
    series_mul(a, b);
    FAIL() << "expected a window error";
  } catch (const WindowError& e) {
    EXPECT_NE(std::string(e.what()).find("variable u"), std::string::npos);
  }
}
