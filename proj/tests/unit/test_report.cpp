#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "gazesweep/error.hpp"
#include "gazesweep/fixture.hpp"
#include "gazesweep/report.hpp"
#include "gazesweep/version.hpp"
#include "test_support.hpp"

namespace gazesweep {
namespace {

namespace fs = std::filesystem;
using testing::read_file;

SweepResult sample_result() {
  SweepResult r;
  r.axis = "ior_compare";
  RolloutConfig a;
  a.decay = DecayKind::BaselineLinear;
  RolloutConfig b;
  b.gamma = 0.3;
  r.configs = {{"ior=linear", a, 225, 225}, {"ior=gamma", b, 225, 225}};
  r.rows = {{"ior=linear", "web", "dtw", 4.25, 0.5, 3},
            {"ior=linear", "all", "dtw", 1.0 / 3.0, 0.0, 1},
            {"ior=gamma", "all", "laminarity", 12.5, 2.0, 3}};
  r.tests = {{"ior=linear", "ior=gamma", "dtw", {2.5, 2, 0.13, 1.443, 3}}};
  ImageOutcome ok;
  ok.image_id = "web_1";
  ok.ok = true;
  ok.n_viewers = 3;
  ok.fallback_steps = 1;
  ok.message = "rollout fell back";
  ok.metrics = {4.0, 0.1, 50.0, 12.5};
  ImageOutcome bad;
  bad.image_id = "poster_1";
  bad.gui_type = GuiType::Poster;
  bad.message = "cannot decode";
  r.diagnostics = {{"ior=linear", {ok, bad}}, {"ior=gamma", {ok}}};
  return r;
}

TEST(ResultsCsv, EmptyIsHeaderOnly) {
  EXPECT_EQ(results_csv(SweepResult{}), "config,gui_type,metric,mean,sd,n\n");
  EXPECT_EQ(paired_tests_csv(SweepResult{}), "config_a,config_b,metric,t,df,p,cohens_d,n_pairs\n");
}

TEST(ResultsCsv, RowsUseShortestRoundTrip) {
  const std::string csv = results_csv(sample_result());
  EXPECT_EQ(csv,
            "config,gui_type,metric,mean,sd,n\n"
            "ior=linear,web,dtw,4.25,0.5,3\n"
            "ior=linear,all,dtw,0.3333333333333333,0,1\n"
            "ior=gamma,all,laminarity,12.5,2,3\n");
  EXPECT_EQ(paired_tests_csv(sample_result()),
            "config_a,config_b,metric,t,df,p,cohens_d,n_pairs\n"
            "ior=linear,ior=gamma,dtw,2.5,2,0.13,1.443,3\n");
}

TEST(ResultsCsv, QuotesAwkwardConfigIds) {
  SweepResult r;
  r.rows = {{"a,b", "all", "dtw", 1, 0, 1}};
  EXPECT_EQ(results_csv(r), "config,gui_type,metric,mean,sd,n\n\"a,b\",all,dtw,1,0,1\n");
}

TEST(ResultsJson, RoundTrips) {
  const SweepResult r = sample_result();
  const std::string text = results_json(r);
  EXPECT_EQ(sweep_result_from_json(text), r);
  const auto doc = nlohmann::json::parse(text);
  EXPECT_TRUE(doc.at("partial_failure").get<bool>());
  EXPECT_EQ(doc["diagnostics"][0]["failed"], 1);
  EXPECT_THROW(sweep_result_from_json("{"), ParseError);
  EXPECT_THROW(sweep_result_from_json("{\"axis\":\"x\"}"), ParseError);
}

TEST(RunMetadata, RecordsSettingsButNotThreads) {
  RunMetadata meta;
  meta.backend = "file";
  meta.options.threads = 8;
  meta.options.partition = Partition::Test;
  const auto doc = nlohmann::json::parse(run_metadata_json(sample_result(), meta));
  EXPECT_EQ(doc["version"], kVersion);
  EXPECT_EQ(doc["backend"], "file");
  EXPECT_EQ(doc["partition"], "test");
  EXPECT_EQ(doc["recurrence"]["min_line_len"], meta.options.recurrence.min_line_len);
  EXPECT_EQ(doc["configs"].size(), 2u);
  EXPECT_EQ(doc["diagnostics"][0]["fallback_steps"], 1);
  EXPECT_EQ(doc["diagnostics"][0]["failures"][0]["image_id"], "poster_1");
  EXPECT_FALSE(doc.contains("threads"));
  EXPECT_EQ(run_metadata_json(sample_result(), meta).find("\"threads\""), std::string::npos);

  meta.options.threads = 1;
  EXPECT_EQ(nlohmann::json::parse(run_metadata_json(sample_result(), meta)), doc);
}

TEST(Emit, WritesTheRequestedFiles) {
  const fs::path dir = testing::make_temp_dir("emit") / "nested";
  const auto csv = emit(sample_result(), {}, ReportFormat::Csv, dir);
  ASSERT_EQ(csv.size(), 3u);
  EXPECT_EQ(read_file(dir / "results.csv"), results_csv(sample_result()));
  EXPECT_TRUE(fs::exists(dir / "paired_tests.csv"));
  EXPECT_TRUE(fs::exists(dir / "run_metadata.json"));
  const auto json = emit(sample_result(), {}, ReportFormat::Json, dir);
  ASSERT_EQ(json.size(), 2u);
  EXPECT_EQ(sweep_result_from_json(read_file(dir / "results.json")), sample_result());
  EXPECT_THROW(parse_report_format("xlsx"), ValidationError);
}

// Frozen output of the gamma sweep over the 12-image fixture with density
// file saliency. Regenerate with
//   gazesweep fixture --out F && gazesweep sweep --manifest F/manifest.json
//     --axis gamma --backend file --out O
// when a deliberate numeric change lands.
TEST(Golden, GammaSweepOverFixture) {
  const fs::path dir = testing::make_temp_dir("golden");
  const DatasetManifest m = load_manifest(write_fixture(dir));
  EvalOptions opts;
  const SweepResult r =
      run_sweep(m, SweepGrid{}, SweepAxis::Gamma, RolloutConfig{}, DensityFileSource(), opts);
  EXPECT_EQ(results_csv(r), read_file(testing::data_dir() / "golden_gamma_results.csv"));
}

}  // namespace
}  // namespace gazesweep
