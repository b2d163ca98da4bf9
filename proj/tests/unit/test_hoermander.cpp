#include <gtest/gtest.h>

#include <cmath>

#include "multisle/hoermander.hpp"

using namespace msle;

TEST(Brackets, ClosedFormExamples) {
  const auto g1 = closed_form_bracket(BoundaryConfig({0, 1}), 1);
  EXPECT_EQ(g1(0), 0.0);
  EXPECT_DOUBLE_EQ(g1(1), 2.0);
  const auto g2 = closed_form_bracket(BoundaryConfig({0, 1, 2, 3}), 2);
  EXPECT_DOUBLE_EQ(g2(1), 2.0);
  EXPECT_DOUBLE_EQ(g2(2), 2.0 / 8.0);
  EXPECT_DOUBLE_EQ(g2(3), 2.0 / 27.0);
}

TEST(Brackets, ConsecutiveRatios) {
  const BoundaryConfig c({-1, 0.5, 2, 3.5, 4, 7});
  for (int k = 1; k < 5; ++k) {
    const auto a = closed_form_bracket(c, k);
    const auto b = closed_form_bracket(c, k + 1);
    for (int i = 1; i < 6; ++i) EXPECT_NEAR(b(i) / a(i), 1.0 / (c[i] - c[0]), 1e-14);
  }
}

TEST(Brackets, ConstantsFollowRecursion) {
  EXPECT_DOUBLE_EQ(bracket_constant(4.0, 1), 2.0);
  EXPECT_DOUBLE_EQ(bracket_constant(4.0, 3), 8.0 * 6.0);
  EXPECT_DOUBLE_EQ(bracket_constant(3.0, 0), 1.0);
}

TEST(Brackets, NumericParallelToClosedForm) {
  const BoundaryConfig c({0, 1, 2, 3});
  for (int k = 1; k <= 3; ++k) {
    const auto num = numeric_bracket(c, k);
    const auto exact = closed_form_bracket(c, k);
    EXPECT_GT(parallelism(num, exact), 1.0 - 1e-8);
    EXPECT_LT(std::acos(std::min(1.0, parallelism(num, exact))), 1e-6);
    const double scale = bracket_constant(3.0, k);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(num(i) / (scale * exact(i)), 1.0, 1e-5);
  }
}

TEST(Brackets, SelfBracketVanishes) {
  const BracketSystem sys(BoundaryConfig({0, 1, 2, 3}), 3.0);
  ExtVector x(4);
  x << 0, 1, 2, 3;
  const auto v = lie_bracket(sys.a1(), sys.a1(), x, 1e-3L);
  EXPECT_LT(static_cast<double>(v.norm()), 1e-10);
}

TEST(Brackets, FieldsHaveExpectedSupport) {
  const BracketSystem sys(BoundaryConfig({0, 1, 2, 4}), 3.0);
  ExtVector x(4);
  x << 0, 1, 2, 4;
  const auto a1 = sys.a1()(x);
  const auto a0 = sys.a0()(x);
  EXPECT_NEAR(static_cast<double>(a1(0)), std::sqrt(3.0), 1e-15);
  for (int i = 1; i < 4; ++i) EXPECT_EQ(a1(i), 0.0L);
  EXPECT_EQ(a0(0), 0.0L);
  EXPECT_NEAR(static_cast<double>(a0(3)), 0.5, 1e-15);
}

TEST(Rank, Examples) {
  EXPECT_EQ(hoermander_rank(BoundaryConfig({0, 1})).rank, 2);
  const auto r = hoermander_rank(BoundaryConfig({0, 1, 2, 3}));
  EXPECT_EQ(r.rank, 4);
  EXPECT_TRUE(r.vandermonde_nonzero);
  EXPECT_NEAR(r.vandermonde_det_lu / r.vandermonde_det_formula, 1.0, 1e-8);
}

TEST(Rank, FullOnRandomConfigs) {
  Rng rng(31);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      const auto c = random_config(n, rng);
      EXPECT_EQ(hoermander_rank(c).rank, 2 * n);
      for (int k = 1; k < 2 * n; ++k) EXPECT_GT(parallelism(numeric_bracket(c, k), closed_form_bracket(c, k)), 1.0 - 1e-8);
    }
}

TEST(Rank, OtherLaunchIndex) {
  const BoundaryConfig c({0, 1, 2.5, 3});
  const auto r = hoermander_rank(c, 4.0, 2);
  EXPECT_EQ(r.rank, 4);
  BracketOptions opt;
  opt.kappa = 4.0;
  opt.j = 2;
  EXPECT_GT(parallelism(numeric_bracket(c, 2, opt), closed_form_bracket(c, 2, 2)), 1.0 - 1e-8);
}
