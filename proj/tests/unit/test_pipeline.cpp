#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qmoduli/pipeline.hpp"

namespace qmoduli {
namespace {

TEST(ModuliFan, ChamberWeightGivesBlowup) {
  auto r = moduli_fan(blowup_quiver(3, 1), Weight::of({-1, -1, 2}));
  EXPECT_EQ(r.status, ModuliStatus::ok);
  EXPECT_TRUE(r.fine);
  EXPECT_EQ(r.generation_degree, std::optional<Int>(1));
  EXPECT_TRUE(r.stabilized);
  EXPECT_EQ(r.polytope_dimension, 3);
  ASSERT_TRUE(r.fan.has_value());
  auto iso = fans_isomorphic(*r.fan, blowup_fan(3, 1));
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(oracle::valid_witness(*r.fan, blowup_fan(3, 1), *iso));
}

TEST(ModuliFan, WallWeightGivesProjectiveSpace) {
  auto r = moduli_fan(blowup_quiver(2, 0), Weight::of({-1, 0, 1}));
  EXPECT_FALSE(r.fine);
  ASSERT_TRUE(r.fan.has_value());
  EXPECT_TRUE(fans_isomorphic(*r.fan, projective_space_fan(2)).has_value());
}

TEST(ModuliFan, EmptyAndDegenerate) {
  auto empty = moduli_fan(kronecker_quiver(2), Weight::of({1, -1}));
  EXPECT_EQ(empty.status, ModuliStatus::empty);
  EXPECT_FALSE(empty.fan.has_value());
  auto degenerate = moduli_fan(blowup_quiver(2, 0), Weight::of({0, -1, 1}));
  EXPECT_EQ(degenerate.status, ModuliStatus::degenerate);
  EXPECT_FALSE(degenerate.diagnostics.empty());
}

TEST(Maps, PushforwardAndTautological) {
  // n = 2, m = 0: arrows x0, e, x1, x2.
  ThinRep rep{{Rational(2), Rational(3), Rational(5), Rational(7)}};
  EXPECT_EQ(pushforward_rep(2, 0, rep).values, (RationalVector{2, 15, 21}));

  EChartPoint e{{Rational(1)}, {Rational(2), Rational(3)}};
  auto t = tautological_rep(2, 0, e);
  EXPECT_EQ(t.values, (RationalVector{1, 0, 2, 3}));
  EXPECT_EQ(projection(2, 0, e), (RationalVector{1, 0, 0}));

  ComplementPoint c{{Rational(1), Rational(2), Rational(3)}};
  EXPECT_EQ(tautological_rep(2, 0, c).values, (RationalVector{1, 1, 2, 3}));
  EXPECT_EQ(projection(2, 0, c), (RationalVector{1, 2, 3}));

  EXPECT_THROW(tautological_rep(2, 0, ComplementPoint{{Rational(1), Rational(0), Rational(0)}}), std::invalid_argument);
  EXPECT_THROW(tautological_rep(2, 0, EChartPoint{{Rational(0)}, {Rational(1), Rational(0)}}), std::invalid_argument);
}

TEST(Sampler, SeededAndReproducible) {
  PointSampler a(3, 1, 7), b(3, 1, 7);
  for (int i = 0; i < 5; ++i) {
    auto pa = a.e_chart();
    auto pb = b.e_chart();
    EXPECT_EQ(pa.a, pb.a);
    EXPECT_EQ(pa.b, pb.b);
  }
  PointSampler c(3, 1, 7);
  for (int i = 0; i < 50; ++i) {
    EXPECT_NE(c.nonzero_rational(), 0);
  }
}

TEST(Checks, CommuteLocusBlowdownContraction) {
  EXPECT_TRUE(verify_commute(3, 0, 1, 2, 30).ok());
  auto locus = exceptional_locus(3, 0, 1, 2);
  EXPECT_TRUE(locus.ok);
  EXPECT_EQ(locus.face.dimension, 2);
  auto down = blowdown_check(3, 1, 2, 3);
  EXPECT_TRUE(down.ok) << down.reason;
  EXPECT_TRUE(down.star_subdivision);
  EXPECT_TRUE(down.contracted_is_exceptional);
  EXPECT_TRUE(theta_prime_contraction(3, 1, 2, 10).ok());
}

TEST(VerifyAll, PassesAndRejectsBadParameters) {
  auto report = verify_all(2, 0, 1, 2, VerifyOptions{20, default_seed, 1});
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.stages.size(), 10U);
  EXPECT_THROW(verify_all(2, 0, 2, 1), std::invalid_argument);
  EXPECT_THROW(verify_all(2, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(verify_all(2, 1, 1, 2), std::invalid_argument);
}

}  // namespace
}  // namespace qmoduli
