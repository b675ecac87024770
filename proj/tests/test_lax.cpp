// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include "superyang/lax.hpp"

using namespace superyang;

namespace {

void expect_all_pass(const std::vector<CheckReport>& v) {
  for (const auto& r : v) EXPECT_EQ(r.status, Status::Pass) << r.key() << ": " << r.reason;
}

}  // namespace

TEST(EvalModule, ExcludedPoints) {
  GradedDims d(1, 1);
  Rat h = rat(1, 2);
  EXPECT_THROW(EvalModule(d, Rat(0), h), std::invalid_argument);
  EXPECT_THROW(EvalModule(d, Rat(1), h), std::invalid_argument);
  EXPECT_THROW(EvalModule(d, Rat(-1), h), std::invalid_argument);
  EXPECT_THROW(EvalModule(d, Rat(3), h, Rat(1)), std::invalid_argument);
  EXPECT_NO_THROW(EvalModule(d, Rat(3), h));
}

TEST(BuildLax, ConstantCoefficientAtInfinity) {
  EvalModule m(GradedDims(1, 1), Rat(3), rat(1, 2));
  LaxOperator L = build_eval_lax(m, +1, 4);
  EXPECT_EQ(L.L.axes()[0].w, (Window{-4, 0}));
  SeriesM b11 = L.block(0, 0);
  EXPECT_TRUE(b11.at({0}).is_identity());
  // ((u-3) I + P)/(u-2) at infinity: next coefficient is (1 I + P) restricted to the block
  MatQ P = permutation_op(GradedDims(1, 1));
  MatQ c1 = L.L.at({-1});
  EXPECT_EQ(c1, MatQ(P - MatQ::identity(4)));
  LaxOperator Lm = build_eval_lax(m, -1, 4);
  EXPECT_EQ(Lm.L.axes()[0].w, (Window{0, 4}));
}

TEST(BuildLax, PoleAtExpansionCenter) {
  // a - 2h = 0 puts the pole of 1/(u - a + 2h) at u = 0; the module guard rejects it first
  GradedDims d(1, 1);
  EXPECT_THROW(build_eval_lax(EvalModule(d, Rat(1), rat(1, 2)), -1, 4), std::invalid_argument);
  QuantumSpace q(d, rat(1, 2), {Rat(3)});
  EXPECT_NO_THROW(build_eval_lax(q, -1, 4));
}

// L+ - L- = residue * sum_k r^k u^{-k-1} with r = a - 2h and residue 2h (P - I).
TEST(BuildLax, ExpansionsDifferByDelta) {
  GradedDims d(2, 1);
  Rat h = rat(1, 2), a = Rat(3), r = a - 2 * h;
  const int N = 5;
  EvalModule m(d, a, h);
  SeriesM diff = build_eval_lax(m, +1, N).L - build_eval_lax(m, -1, N).L;
  MatQ res = MatQ(permutation_op(d) - MatQ::identity(9));
  res.scale(2 * h);
  for (int e = -N; e <= N; ++e) {
    int k = -e - 1;
    Rat pw = 1;
    for (int t = 0; t < std::abs(k); ++t) pw *= r;
    if (k < 0) pw = 1 / pw;
    MatQ want = res;
    want.scale(pw);
    EXPECT_EQ(diff.at({e}), want) << e;
  }
}

TEST(Monodromy, TwoSiteIsGradedProduct) {
  GradedDims d(1, 1);
  QuantumSpace q(d, rat(1, 2), {Rat(3), Rat(5)});
  MatF L = rational_lax(q);
  EXPECT_EQ(L.rows(), 8u);
  EXPECT_TRUE(weight_conserving(L, Grading(d) * q.grading));
}

TEST(Rll, Gl11TwoPoints) {
  QuantumSpace q(GradedDims(1, 1), rat(1, 2), {Rat(3), Rat(5)});
  auto v = check_rll(q, RllOptions{8});
  expect_all_pass(v);
  EXPECT_GE(v.size(), 20u);
}

TEST(Rll, Gl11SinglePoint) {
  QuantumSpace q(GradedDims(1, 1), rat(1, 2), {Rat(3)});
  expect_all_pass(check_rll(q, RllOptions{6}));
}
