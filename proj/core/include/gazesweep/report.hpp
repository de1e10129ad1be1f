#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gazesweep/sweep.hpp"

namespace gazesweep {

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(std::string_view s);

/// Run settings echoed into run_metadata.json.
struct RunMetadata {
  std::string backend;
  RolloutConfig defaults;
  EvalOptions options;
  std::string manifest_path;
};

/// `config,gui_type,metric,mean,sd,n`, one line per row (header only when
/// there are no rows). Numbers use the shortest round-trip form.
std::string results_csv(const SweepResult& result);

/// `config_a,config_b,metric,t,df,p,cohens_d,n_pairs`.
std::string paired_tests_csv(const SweepResult& result);

/// Full result document: axis, configs, rows, tests, diagnostics.
std::string results_json(const SweepResult& result);

/// Parameters, defaults and per-config success counts. The worker count is
/// deliberately left out so serial and parallel runs write identical files.
std::string run_metadata_json(const SweepResult& result, const RunMetadata& meta);

/// Inverse of results_json.
SweepResult sweep_result_from_json(std::string_view json_text);

/// Write results.csv + paired_tests.csv (Csv) or results.json (Json), plus
/// run_metadata.json, into `out_dir` (created if missing). Returns the paths
/// written.
std::vector<std::filesystem::path> emit(const SweepResult& result, const RunMetadata& meta,
                                        ReportFormat format,
                                        const std::filesystem::path& out_dir);

}  // namespace gazesweep
