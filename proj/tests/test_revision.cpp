#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pcdisc/report_json.hpp"
#include "pcdisc/revision.hpp"

using namespace pcdisc;
using pcdisc::testing::example_matrix;
using pcdisc::testing::revised_matrix;

namespace {

// Bundles compared through their full-precision JSON form.
nlohmann::json snapshot(const RevisionSession& s) { return interchange::bundle(s.bundle()); }

}  // namespace

TEST(RevisionSession, OpenOnExample) {
  const auto s = RevisionSession::open(example_matrix());
  EXPECT_EQ(s.history().size(), 1u);
  EXPECT_TRUE(s.step_log().empty());
  EXPECT_NEAR(s.bundle().discrepancy.global, 0.475, 1e-3);
  EXPECT_NEAR(s.bundle().saaty, 0.04, 0.005);
  EXPECT_FALSE(s.bundle().cop.poip_violations.empty());
  EXPECT_FALSE(s.bundle().triads.is_consistent);
}

TEST(RevisionSession, OpenOnTwoByTwo) {
  const auto s = RevisionSession::open(PCMatrix::from_rows({{1, 3}, {1 / 3.0, 1}}));
  EXPECT_NEAR(s.bundle().discrepancy.global, 0.0, 1e-12);
  EXPECT_TRUE(s.bundle().cop.pop_safe);
  EXPECT_TRUE(s.bundle().cop.poip_safe);
}

TEST(RevisionSession, OpenOnConsistent) {
  const std::vector<double> w{4, 3, 2, 1};
  const auto s = RevisionSession::open(PCMatrix::from_weights(w));
  EXPECT_NEAR(s.bundle().discrepancy.global, 0.0, 1e-12);
  EXPECT_TRUE(s.bundle().cop.pop_violations.empty());
  EXPECT_TRUE(s.bundle().cop.poip_violations.empty());
  EXPECT_NEAR(s.suggest().local_discrepancy, 0.0, 1e-12);
}

TEST(RevisionSession, SuggestionPointsAtWorstEntry) {
  const auto s = RevisionSession::open(example_matrix());
  const auto& sug = s.suggest();
  EXPECT_EQ(sug.position, (IndexPair{2, 3}));
  EXPECT_EQ(sug.current_value, 5.0);
  EXPECT_NEAR(sug.local_discrepancy, 0.475, 1e-3);
  // Ratio of the reference weights 0.139 / 0.041.
  EXPECT_NEAR(sug.consistent_target, 0.139 / 0.041, 0.02);
  const auto& mu = s.bundle().ranking;
  EXPECT_DOUBLE_EQ(sug.consistent_target, mu[2] / mu[3]);
}

TEST(RevisionSession, ConsistentTargetZeroesEpsilonUnderCurrentRanking) {
  for (const auto& m : pcdisc::testing::random_corpus(100, 5)) {
    const auto s = RevisionSession::open(m);
    const auto& sug = s.suggest();
    const auto patched = m.with_entry(sug.position.i, sug.position.j, sug.consistent_target);
    EXPECT_NEAR(epsilon(patched, s.bundle().ranking, sug.position.i, sug.position.j), 1.0, 1e-12);
  }
}

TEST(RevisionSession, SecondSuggestionAfterFirstRevision) {
  const auto s = RevisionSession::open(example_matrix()).apply(2, 3, 3.0);
  EXPECT_EQ(s.suggest().position, (IndexPair{0, 1}));
}

TEST(RevisionSession, TwoRevisionsReachSafeMatrix) {
  const auto s = RevisionSession::open(example_matrix()).apply(2, 3, 3.0).apply(0, 1, 1.5);
  EXPECT_EQ(s.matrix(), revised_matrix());
  EXPECT_NEAR(s.bundle().discrepancy.global, 0.149, 1e-3);
  EXPECT_TRUE(s.bundle().cop.pop_safe);
  EXPECT_TRUE(s.bundle().cop.poip_safe);
  ASSERT_EQ(s.step_log().size(), 2u);
  EXPECT_EQ(s.step_log()[0].old_value, 5.0);
  EXPECT_EQ(s.step_log()[0].new_value, 3.0);
  EXPECT_EQ(s.step_log()[1].old_value, 2.5);
  EXPECT_EQ(s.history().size(), 3u);
}

TEST(RevisionSession, ApplySameValueGrowsHistoryOnly) {
  const auto s0 = RevisionSession::open(example_matrix());
  const auto s1 = s0.apply(0, 1, 2.5);
  EXPECT_EQ(s1.history().size(), 2u);
  EXPECT_EQ(snapshot(s1), snapshot(s0));
}

TEST(RevisionSession, ApplyErrors) {
  const auto s = RevisionSession::open(example_matrix());
  EXPECT_THROW((void)s.apply(1, 1, 2.0), ValidationError);
  EXPECT_THROW((void)s.apply(0, 1, 0.0), ValidationError);
  EXPECT_THROW((void)s.apply(0, 1, -3.0), ValidationError);
}

TEST(RevisionSession, UndoRestoresBundles) {
  const auto s0 = RevisionSession::open(example_matrix());
  const auto s1 = s0.apply(2, 3, 3.0);
  const auto s2 = s1.apply(0, 1, 1.5);

  const auto back1 = s2.undo();
  EXPECT_EQ(back1.matrix()(2, 3), 3.0);
  EXPECT_EQ(back1.matrix()(0, 1), 2.5);
  EXPECT_EQ(snapshot(back1), snapshot(RevisionSession::open(example_matrix().with_entry(2, 3, 3.0))));
  EXPECT_EQ(back1.step_log().size(), 1u);

  const auto back0 = back1.undo();
  EXPECT_EQ(snapshot(back0), snapshot(s0));
  EXPECT_EQ(back0.history().size(), 1u);
  EXPECT_TRUE(back0.step_log().empty());
}

TEST(RevisionSession, UndoOnFreshSessionFails) {
  EXPECT_THROW((void)RevisionSession::open(example_matrix()).undo(), UndoError);
}

TEST(RevisionSession, Deterministic) {
  const auto a = RevisionSession::open(example_matrix()).apply(2, 3, 3.0).apply(0, 1, 1.5);
  const auto b = RevisionSession::open(example_matrix()).apply(2, 3, 3.0).apply(0, 1, 1.5);
  EXPECT_EQ(snapshot(a).dump(), snapshot(b).dump());
}

TEST(RevisionSession, LogMatchesHistory) {
  std::mt19937_64 rng(9);
  auto s = RevisionSession::open(pcdisc::testing::random_reciprocal(5, rng));
  std::uniform_real_distribution<double> value(0.2, 8.0);
  for (int k = 0; k < 20; ++k) {
    const std::size_t i = rng() % 5;
    const std::size_t j = (i + 1 + rng() % 4) % 5;
    s = (k % 4 == 3) ? s.undo() : s.apply(i, j, value(rng));
    EXPECT_EQ(s.step_log().size() + 1, s.history().size());
    for (const auto& m : s.history()) {
      for (std::size_t r = 0; r < 5; ++r) {
        EXPECT_EQ(m(r, r), 1.0);
        for (std::size_t c = r + 1; c < 5; ++c) EXPECT_DOUBLE_EQ(m(c, r) * m(r, c), 1.0);
      }
    }
  }
}

// Applying the consistent target at the worst entry never raises the global
// discrepancy measured under the ranking it was computed from.
TEST(RevisionSession, ConsistentTargetNeverRaisesDiscrepancyUnderOldRanking) {
  for (const auto& m : pcdisc::testing::random_corpus(200, 17)) {
    const auto s = RevisionSession::open(m);
    const auto& sug = s.suggest();
    const auto patched = m.with_entry(sug.position.i, sug.position.j, sug.consistent_target);
    EXPECT_LE(local_discrepancy_matrix(patched, s.bundle().ranking).global, s.bundle().discrepancy.global + 1e-12);
  }
}

TEST(RevisionSession, GeometricMeanOption) {
  const auto s = RevisionSession::open(example_matrix(), {{}, RankingMethod::geometric_mean});
  EXPECT_EQ(s.bundle().ranking.method, RankingMethod::geometric_mean);
  EXPECT_NEAR(s.bundle().saaty, 0.04, 0.005);  // always from the eigenvalue
  EXPECT_EQ(s.apply(2, 3, 3.0).bundle().ranking.method, RankingMethod::geometric_mean);
}
