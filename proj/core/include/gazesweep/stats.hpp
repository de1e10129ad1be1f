#pragma once

#include <span>
#include <string>
#include <vector>

namespace gazesweep {

struct PairedTestResult {
  double t_statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;  ///< two-tailed
  double cohens_d = 0.0; ///< paired d_z = mean(d) / sd(d)
  int n_pairs = 0;

  friend bool operator==(const PairedTestResult&, const PairedTestResult&) = default;
};

/// Paired Student t-test on d = x - y. Throws ValidationError on length
/// mismatch, fewer than two pairs, or zero variance of the differences.
PairedTestResult paired_t_test(std::span<const double> x, std::span<const double> y);

/// Two-tailed p-value of a t statistic with `df` degrees of freedom.
double student_t_two_tailed_p(double t, double df);

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  ///< sample (n-1) standard deviation; 0 when n == 1
  int n = 0;
  bool degenerate() const noexcept { return n < 2; }

  friend bool operator==(const Summary&, const Summary&) = default;
};

/// Mean and sample SD; throws ValidationError for an empty sample.
Summary summarize(std::span<const double> values);

/// One observation tagged with its configuration and group (GUI type).
struct GroupedValue {
  std::string config;
  std::string group;
  double value = 0.0;
};

struct AggregateRow {
  std::string config;
  std::string group;
  Summary summary;
};

inline constexpr const char* kAllGroup = "all";

/// Mean +- SD per (config, group) plus an "all" group per config, sorted by
/// config, then group. Input order does not affect the output.
std::vector<AggregateRow> aggregate(std::span<const GroupedValue> values);

}  // namespace gazesweep
