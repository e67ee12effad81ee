#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qmoduli/stability.hpp"

namespace qmoduli {
namespace {

std::vector<bool> flags(const ZeroPattern& p) {
  std::vector<bool> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = p.nonzero(i);
  }
  return out;
}

std::array<std::size_t, 3> counts(const PatternClassification& c) {
  return {c.count(Stability::stable), c.count(Stability::strictly_semistable), c.count(Stability::unstable)};
}

std::array<std::size_t, 3> brute_counts(const Quiver& q, const Weight& w) {
  std::array<std::size_t, 3> out{};
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << q.arrow_count()); ++bits) {
    ++out[static_cast<std::size_t>(oracle::stability(q, flags(ZeroPattern(q.arrow_count(), bits)), w))];
  }
  return out;
}

TEST(ZeroPattern, ParseAndPrint) {
  auto p = ZeroPattern::parse("1011");
  EXPECT_TRUE(p.nonzero(0));
  EXPECT_FALSE(p.nonzero(1));
  EXPECT_EQ(p.bits(), 0b1101U);
  EXPECT_EQ(p.to_string(), "1011");
  EXPECT_EQ(p.with(1, true), ZeroPattern::all_nonzero(4));
  EXPECT_THROW(ZeroPattern::parse("10x"), std::invalid_argument);
}

TEST(Semistability, KroneckerHasOneUnstablePattern) {
  auto c = classify_patterns(kronecker_quiver(2), Weight::of({-1, 1}));
  EXPECT_EQ(counts(c), (std::array<std::size_t, 3>{7, 0, 1}));
  EXPECT_EQ(c.classes[0], Stability::unstable);
}

TEST(Semistability, BlowupChamberWeightCounts) {
  auto q = blowup_quiver(2, 0);
  auto w = Weight::of({-1, -1, 2});
  EXPECT_EQ(counts(classify_patterns(q, w)), brute_counts(q, w));
  EXPECT_EQ(counts(classify_patterns(q, w)), (std::array<std::size_t, 3>{9, 0, 7}));
}

TEST(Semistability, WallWeightCounts) {
  auto q = blowup_quiver(2, 0);
  auto w = Weight::of({-1, 0, 1});
  EXPECT_EQ(counts(classify_patterns(q, w)), brute_counts(q, w));
  EXPECT_EQ(counts(classify_patterns(q, w)), (std::array<std::size_t, 3>{6, 5, 5}));
}

TEST(Semistability, AllNonzeroBlowupRepIsStable) {
  // x0 and e both nonzero: only {3} and {2,3} are subrepresentation supports.
  auto q = blowup_quiver(2, 0);
  auto p = ZeroPattern::all_nonzero(4);
  auto supports = subrep_supports(q, p);
  std::vector<SupportSet> expected{SupportSet::of({3}), SupportSet::of({2, 3})};
  std::sort(supports.begin(), supports.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(supports, expected);
  EXPECT_EQ(semistability(q, p, Weight::of({-1, -1, 2})), Stability::stable);
}

TEST(Classify, WorkerCountDoesNotChangeResult) {
  auto q = blowup_quiver(5, 2);
  auto w = Weight::of({-2, -1, 3});
  ClassifyOptions one, many;
  many.jobs = 4;
  EXPECT_EQ(classify_patterns(q, w, one).classes, classify_patterns(q, w, many).classes);
}

TEST(Classify, EnumerationBound) {
  ClassifyOptions options;
  options.max_arrows = 4;
  EXPECT_THROW(classify_patterns(blowup_quiver(3, 0), Weight::of({-1, -1, 2}), options), std::length_error);
}

TEST(FineModuli, SubsetSums) {
  EXPECT_TRUE(fine_moduli_check(Weight::of({-1, -1, 2})));
  EXPECT_TRUE(fine_moduli_check(Weight::of({-2, -1, 3})));
  EXPECT_FALSE(fine_moduli_check(Weight::of({-1, 0, 1})));
  EXPECT_FALSE(fine_moduli_check(Weight::of({-1, 1, -2, 2})));
}

TEST(ClosedForm, ThetaPrimeCriterion) {
  // n = 2, m = 0: arrows x0, e, x1, x2.
  EXPECT_TRUE(theta_prime_semistable(2, 0, ZeroPattern::parse("1000")));
  EXPECT_TRUE(theta_prime_semistable(2, 0, ZeroPattern::parse("0110")));
  EXPECT_FALSE(theta_prime_semistable(2, 0, ZeroPattern::parse("0100")));
  EXPECT_FALSE(theta_prime_semistable(2, 0, ZeroPattern::parse("0011")));
}

TEST(Chambers, BlowupPlane) {
  auto d = chamber_decomposition(blowup_quiver(2, 0));
  EXPECT_EQ(d.walls.size(), 6U);
  EXPECT_EQ(d.hyperplane_normals.size(), 3U);
  EXPECT_EQ(d.chambers.size(), 6U);
  auto inside = d.chamber_of(Weight::of({-1, -1, 2}));
  ASSERT_TRUE(inside.has_value());
  EXPECT_EQ(d.chamber_of(Weight::of({-2, -1, 3})), inside);
  EXPECT_FALSE(d.chamber_of(Weight::of({-1, 0, 1})).has_value());
  EXPECT_FALSE(d.walls_containing(Weight::of({-1, 0, 1})).empty());
  for (const auto& c : d.chambers) {
    EXPECT_EQ(d.chamber_of(c.representative), std::optional<std::size_t>(&c - d.chambers.data()));
  }
}

TEST(Chambers, TooManyVertices) {
  Quiver q(5, {{1, 2, "a"}, {2, 3, "b"}, {3, 4, "c"}, {4, 5, "d"}});
  EXPECT_THROW(chamber_decomposition(q), std::length_error);
}

}  // namespace
}  // namespace qmoduli
