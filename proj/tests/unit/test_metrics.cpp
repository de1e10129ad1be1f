#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gazesweep/error.hpp"
#include "gazesweep/metrics.hpp"
#include "test_support.hpp"

using namespace gazesweep;
using namespace gazesweep::testing;

namespace {

RecurrenceMatrix from_rows(const std::vector<std::string>& rows) {
  RecurrenceMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.set(i, j, rows[i][j] == '1');
  return m;
}

Scanpath shifted(const Scanpath& sp, double dx, double dy) {
  std::vector<Fixation> f;
  for (const Fixation& p : sp.fixations()) f.emplace_back(p.x() + dx, p.y() + dy);
  return Scanpath(std::move(f));
}

}  // namespace

TEST(Dtw, Examples) {
  const Scanpath a = make_scanpath({{0.1, 0.2}, {0.5, 0.5}, {0.9, 0.1}});
  EXPECT_EQ(dtw(a, a), 0.0);
  EXPECT_DOUBLE_EQ(dtw(make_scanpath({{0, 0}}), make_scanpath({{0.3, 0.4}})), 0.5);
  EXPECT_DOUBLE_EQ(dtw(make_scanpath({{0, 0}, {1, 0}}), make_scanpath({{0, 0}})), 1.0);
}

TEST(Dtw, MatchesExhaustiveSearch) {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> len(1, 6);
  for (int k = 0; k < 200; ++k) {
    const Scanpath a = random_scanpath(rng, len(rng));
    const Scanpath b = random_scanpath(rng, len(rng));
    EXPECT_NEAR(dtw(a, b), dtw_exhaustive(a, b), 1e-9);
    EXPECT_NEAR(dtw(a, b), dtw(b, a), 1e-12);
    EXPECT_GE(dtw(a, b), 0.0);
  }
}

TEST(Eyenalysis, Examples) {
  const Scanpath a = make_scanpath({{0, 0}, {1, 1}});
  const Scanpath b = make_scanpath({{0, 0}});
  EXPECT_NEAR(eyenalysis(a, b), std::sqrt(2.0) / 3.0, 1e-15);
  EXPECT_NEAR(eyenalysis(a, b), 0.4714, 5e-5);
  EXPECT_EQ(eyenalysis(a, a), 0.0);
}

TEST(Eyenalysis, MatchesDirectAndIsSymmetricAndBounded) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> len(1, 12);
  for (int k = 0; k < 200; ++k) {
    const Scanpath a = random_scanpath(rng, len(rng));
    const Scanpath b = random_scanpath(rng, len(rng));
    EXPECT_NEAR(eyenalysis(a, b), eyenalysis_direct(a, b), 1e-12);
    EXPECT_NEAR(eyenalysis(a, b), eyenalysis(b, a), 1e-15);
    double max_d = 0.0;
    for (const Fixation& p : a.fixations())
      for (const Fixation& q : b.fixations()) max_d = std::max(max_d, point_distance(p, q));
    EXPECT_LE(eyenalysis(a, b), max_d + 1e-15);
  }
}

TEST(CrossRecurrence, Examples) {
  const Scanpath three = make_scanpath({{0.1, 0.1}, {0.5, 0.5}, {0.9, 0.9}});
  const RecurrenceMatrix id = cross_recurrence_matrix(three, three, {0.1, 2});
  EXPECT_EQ(id, from_rows({"100", "010", "001"}));

  const Scanpath same = make_scanpath({{0.3, 0.3}, {0.3, 0.3}});
  EXPECT_EQ(cross_recurrence_matrix(same, same, {0.1, 2}), from_rows({"11", "11"}));

  const RecurrenceMatrix col = cross_recurrence_matrix(make_scanpath({{0, 0}, {0.5, 0}}),
                                                       make_scanpath({{0, 0.05}}), {0.1, 2});
  EXPECT_EQ(col, from_rows({"1", "0"}));

  // Threshold is inclusive.
  const RecurrenceMatrix edge = cross_recurrence_matrix(make_scanpath({{0, 0}}),
                                                        make_scanpath({{0.25, 0}}), {0.25, 2});
  EXPECT_TRUE(edge.at(0, 0));
}

TEST(Determinism, Examples) {
  const Scanpath three = make_scanpath({{0.1, 0.1}, {0.5, 0.5}, {0.9, 0.9}});
  EXPECT_EQ(determinism(three, three, {0.1, 2}), 100.0);
  EXPECT_EQ(determinism(from_rows({"000", "010", "000"}), 2), 0.0);
  EXPECT_EQ(determinism(from_rows({"1000", "0100", "0001", "0000"}), 2), 200.0 / 3.0);
  EXPECT_EQ(determinism(from_rows({"1001", "0100", "0000", "1000"}), 2), 50.0);
  EXPECT_EQ(determinism(from_rows({"00", "00"}), 2), 0.0);
}

TEST(Laminarity, Examples) {
  EXPECT_EQ(laminarity(from_rows({"100", "010", "001"}), 2), 0.0);
  // b is one point repeated at a_1: a full column of ones.
  const Scanpath a = make_scanpath({{0.2, 0.2}, {0.2, 0.2}, {0.2, 0.2}, {0.2, 0.2}});
  const Scanpath b = make_scanpath({{0.2, 0.2}});
  EXPECT_EQ(laminarity(a, b, {0.1, 2}), 50.0);
  EXPECT_EQ(laminarity(from_rows({"111", "111", "111"}), 2), 100.0);
  EXPECT_EQ(laminarity(from_rows({"00", "00"}), 2), 0.0);
}

TEST(RunCounting, MatchesNaiveOracle) {
  std::mt19937 rng(55);
  std::uniform_int_distribution<int> dim(1, 12);
  std::uniform_real_distribution<double> dens(0.05, 0.9);
  for (int k = 0; k < 300; ++k) {
    const RecurrenceMatrix m = random_matrix(rng, dim(rng), dim(rng), dens(rng));
    for (int L : {2, 3, 4}) {
      EXPECT_EQ(determinism(m, L), naive_determinism(m, L));
      EXPECT_EQ(laminarity(m, L), naive_laminarity(m, L));
    }
    EXPECT_GE(determinism(m, 2), 0.0);
    EXPECT_LE(determinism(m, 2), 100.0);
    EXPECT_LE(laminarity(m, 2), 100.0);
  }
}

TEST(Metrics, TranslationInvariant) {
  std::mt19937 rng(8);
  for (int k = 0; k < 50; ++k) {
    std::vector<std::pair<double, double>> pa;
    std::vector<std::pair<double, double>> pb;
    std::uniform_real_distribution<double> u(0.0, 0.5);
    for (int i = 0; i < 7; ++i) pa.emplace_back(u(rng), u(rng));
    for (int i = 0; i < 5; ++i) pb.emplace_back(u(rng), u(rng));
    const Scanpath a = make_scanpath(pa);
    const Scanpath b = make_scanpath(pb);
    const MetricReport r0 = compare(a, b, {0.15, 2});
    const MetricReport r1 = compare(shifted(a, 0.25, 0.5), shifted(b, 0.25, 0.5), {0.15, 2});
    EXPECT_NEAR(r0.dtw, r1.dtw, 1e-12);
    EXPECT_NEAR(r0.eyenalysis, r1.eyenalysis, 1e-12);
    // Recurrence can flip only for distances within rounding of rho.
    EXPECT_EQ(r0.recurrence_count, r1.recurrence_count);
    EXPECT_EQ(r0.determinism_pct, r1.determinism_pct);
    EXPECT_EQ(r0.laminarity_pct, r1.laminarity_pct);
  }
}

TEST(Metrics, CompareScalesDistancesOnly) {
  const Scanpath a = make_scanpath({{0.1, 0.1}, {0.4, 0.1}});
  const Scanpath b = make_scanpath({{0.1, 0.15}, {0.45, 0.1}});
  const MetricReport r1 = compare(a, b, {0.1, 2});
  const MetricReport r2 = compare(a, b, {0.1, 2}, 2.25);
  EXPECT_DOUBLE_EQ(r2.dtw, 2.25 * r1.dtw);
  EXPECT_DOUBLE_EQ(r2.eyenalysis, 2.25 * r1.eyenalysis);
  EXPECT_EQ(r1.determinism_pct, r2.determinism_pct);
  EXPECT_EQ(r1.recurrence_count, 2);
  EXPECT_EQ(r1.determinism_pct, 100.0);
}

TEST(Metrics, SinglePointScanpathsAreDefined) {
  const Scanpath a = make_scanpath({{0.5, 0.5}});
  const MetricReport r = compare(a, a, {});
  EXPECT_EQ(r.dtw, 0.0);
  EXPECT_EQ(r.eyenalysis, 0.0);
  EXPECT_EQ(r.determinism_pct, 0.0);
  EXPECT_EQ(r.laminarity_pct, 0.0);
  EXPECT_EQ(r.recurrence_count, 1);
}

TEST(RecurrenceConfig, Validation) {
  EXPECT_THROW((RecurrenceConfig{0.0, 2}.validate()), ValidationError);
  EXPECT_THROW((RecurrenceConfig{0.1, 1}.validate()), ValidationError);
  EXPECT_THROW(compare(make_scanpath({{0, 0}}), make_scanpath({{0, 0}}), {-1.0, 2}), ValidationError);
}
