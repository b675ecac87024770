// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <random>

#include "superyang/exact.hpp"
#include "superyang/graded.hpp"

using namespace superyang;

namespace {

RatFun lin(const Rat& c0, const Rat& c1) { return RatFun(UPoly(std::vector<Rat>{c0, c1})); }

}  // namespace

TEST(Rat, ParseAndPrint) {
  EXPECT_EQ(rat_str(parse_rat("6/4")), "3/2");
  EXPECT_EQ(rat_str(parse_rat("-2")), "-2/1");
  EXPECT_EQ(rat_short(parse_rat("-2")), "-2");
  EXPECT_THROW(parse_rat("3/-7"), std::invalid_argument);
  EXPECT_THROW(parse_rat("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rat("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rat(""), std::invalid_argument);
  EXPECT_THROW(parse_rat("1.5"), std::invalid_argument);
}

TEST(RatFun, ArithmeticExamples) {
  Rat h(1, 2);
  RatFun den = lin(2 * h, 1);
  RatFun a = RatFun::x() / den, b = RatFun(2 * h) / den;
  EXPECT_EQ(a + b, RatFun(1));
  RatFun odd = lin(2 * h, -1) / den;
  EXPECT_EQ(odd.eval(Rat(0)), Rat(1));
  EXPECT_EQ(odd.eval(Rat(1)), Rat(0));
  EXPECT_EQ(a.eval(Rat(2)), Rat(2, 3));
  RatFun pole = RatFun(1) / lin(-3, 1);
  EXPECT_EQ(pole * lin(-3, 1), RatFun(1));
  EXPECT_THROW(b.eval(Rat(-1)), PoleError);
  try {
    b.eval(Rat(-1));
  } catch (const PoleError& e) {
    EXPECT_NE(std::string(e.what()).find("(u + 1)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(RatFun(1) / RatFun(), std::domain_error);
}

TEST(RatFun, FieldAxiomsRandomized) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  auto poly = [&]() {
    std::vector<Rat> c;
    int deg = static_cast<int>(rng() % 3);
    for (int k = 0; k <= deg; ++k) c.push_back(rat(d(rng), 1 + static_cast<long>(rng() % 3)));
    return UPoly(c);
  };
  auto rf = [&]() {
    UPoly q = poly();
    while (q.is_zero()) q = poly();
    return RatFun(poly(), q);
  };
  for (int t = 0; t < 1000; ++t) {
    RatFun x = rf(), y = rf(), z = rf();
    ASSERT_EQ((x + y) + z, x + (y + z));
    ASSERT_EQ((x * y) * z, x * (y * z));
    ASSERT_EQ(x * (y + z), x * y + x * z);
    ASSERT_EQ(x - x, RatFun());
    if (!y.is_zero()) ASSERT_EQ((x / y) * y, x);
    RatFun n(x.num(), x.den());
    ASSERT_EQ(n.num(), x.num());
    ASSERT_EQ(n.den(), x.den());
    if (!x.is_zero()) ASSERT_EQ(x.den().lead(), Rat(1));
  }
}

TEST(UPoly, ExtendedGcd) {
  UPoly a = UPoly::linear_root(2) * UPoly::linear_root(3);
  UPoly b = UPoly::linear_root(2) * UPoly::linear_root(-1);
  auto [g, s, t] = UPoly::ext_gcd(a, b);
  EXPECT_EQ(g, UPoly::linear_root(2));
  EXPECT_EQ(s * a + t * b, g);
}

TEST(MPoly, LexOrderAndEval) {
  MPoly u = MPoly::var(U), v = MPoly::var(V);
  MPoly p = (u - v) * (u + v) - u * u;
  EXPECT_EQ(p, -(v * v));
  EXPECT_EQ(p.eval({{"v", Rat(3)}}), Rat(-9));
  EXPECT_EQ(MPoly::substitute(UPoly::linear_root(1), u - v), u - v - MPoly(1));
}

TEST(GradedDims, Parity) {
  GradedDims d21(2, 1), d11(1, 1);
  EXPECT_EQ(d21.parity(1), 0);
  EXPECT_EQ(d21.parity(3), 1);
  EXPECT_EQ(d11.parity(2), 1);
  EXPECT_THROW(d21.parity(4), std::out_of_range);
  EXPECT_THROW(d21.parity(0), std::out_of_range);
  EXPECT_THROW(GradedDims(0, 0), std::invalid_argument);
  EXPECT_THROW(GradedDims(-1, 2), std::invalid_argument);
}

TEST(GradedKron, IdentityAndUnitProduct) {
  GradedDims d(1, 1);
  Grading g(d);
  MatQ I = MatQ::identity(2);
  EXPECT_TRUE(graded_kron(I, g, I, g).is_identity());
  auto E = [&](int i, int j) { return matrix_unit(d, i, j); };
  MatQ lhs = graded_kron(E(2, 1), g, E(2, 1), g) * graded_kron(E(1, 2), g, E(1, 2), g);
  EXPECT_EQ(lhs, -graded_kron(E(2, 2), g, E(2, 2), g));
}

TEST(GradedKron, CompositionSignLawExhaustive) {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {3, 0}, {0, 3}, {1, 0}}) {
    GradedDims d(m, n);
    Grading g(d);
    int N = d.size();
    auto par = [&](int i, int j) { return (d.parity(i) + d.parity(j)) & 1; };
    for (int a1 = 1; a1 <= N; ++a1)
      for (int a2 = 1; a2 <= N; ++a2)
        for (int b1 = 1; b1 <= N; ++b1)
          for (int b2 = 1; b2 <= N; ++b2)
            for (int c1 = 1; c1 <= N; ++c1)
              for (int c2 = 1; c2 <= N; ++c2)
                for (int e1 = 1; e1 <= N; ++e1)
                  for (int e2 = 1; e2 <= N; ++e2) {
                    MatQ A = matrix_unit(d, a1, a2), B = matrix_unit(d, b1, b2);
                    MatQ C = matrix_unit(d, c1, c2), D = matrix_unit(d, e1, e2);
                    MatQ lhs = graded_kron(A, g, B, g) * graded_kron(C, g, D, g);
                    MatQ rhs = graded_kron(MatQ(A * C), g, MatQ(B * D), g);
                    if (par(b1, b2) * par(c1, c2)) rhs = -rhs;
                    ASSERT_EQ(lhs, rhs) << d.str();
                  }
  }
}

// Basis-vector oracle for P: v_a (x) v_b -> (-1)^{[a][b]} v_b (x) v_a.
TEST(PermutationOp, BasisActionAndUnitSum) {
  GradedDims d(1, 1);
  MatQ P = permutation_op(d);
  EXPECT_EQ(P(3, 3), Rat(-1));  // v2 (x) v2 -> -v2 (x) v2
  EXPECT_EQ(P(2, 1), Rat(1));   // v1 (x) v2 -> v2 (x) v1
  Grading g(d);
  MatQ S(4, 4);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      MatQ t = graded_kron(matrix_unit(d, i, j), g, matrix_unit(d, j, i), g);
      if (d.parity(j)) t = -t;
      S += t;
    }
  EXPECT_EQ(S, P);
}

TEST(PermutationOp, InvolutionsUpToFive) {
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; m + n <= 5; ++n) {
      if (m + n == 0) continue;
      GradedDims d(m, n);
      MatQ P = permutation_op(d), th = theta_op(d);
      EXPECT_TRUE((P * P).is_identity());
      EXPECT_TRUE((th * th).is_identity());
      Grading g = Grading(d) * Grading(d);
      EXPECT_TRUE(weight_conserving(P, g));
      EXPECT_TRUE(weight_conserving(th, g));
    }
}

TEST(ThetaOp, Examples) {
  MatQ th = theta_op(GradedDims(1, 1));
  EXPECT_EQ(th(0, 0), Rat(1));
  EXPECT_EQ(th(1, 1), Rat(1));
  EXPECT_EQ(th(2, 2), Rat(1));
  EXPECT_EQ(th(3, 3), Rat(-1));
  MatQ t21 = theta_op(GradedDims(2, 1));
  int neg = 0;
  for (std::size_t i = 0; i < 9; ++i) neg += t21(i, i) == Rat(-1);
  EXPECT_EQ(neg, 1);
  EXPECT_EQ(t21(8, 8), Rat(-1));
}
