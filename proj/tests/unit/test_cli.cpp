#include <sys/wait.h>

#include <cstdlib>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "test_support.hpp"

namespace gazesweep {
namespace {

namespace fs = std::filesystem;
using testing::read_file;
using testing::write_file;

int run(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string("\"") + GAZESWEEP_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::make_temp_dir("cli");
    ASSERT_EQ(run("fixture --count 4 --out \"" + (dir_ / "fx").string() + "\"", log()), 0)
        << read_file(log());
    manifest_ = dir_ / "fx" / "manifest.json";
  }

  fs::path log() const { return dir_ / "log.txt"; }
  std::string m() const { return "--manifest \"" + manifest_.string() + "\""; }
  std::string out(const std::string& name) const {
    return "--out \"" + (dir_ / name).string() + "\"";
  }

  fs::path dir_;
  fs::path manifest_;
};

TEST_F(CliTest, SweepSucceeds) {
  ASSERT_EQ(run("sweep " + m() + " --axis gamma --gammas 0.1,0.5 --backend file " + out("o"), log()),
            0)
      << read_file(log());
  const std::string csv = read_file(dir_ / "o" / "results.csv");
  EXPECT_EQ(csv.rfind("config,gui_type,metric,mean,sd,n\n", 0), 0u);
  EXPECT_NE(csv.find("gamma=0.5,all,dtw,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "o" / "run_metadata.json"));
}

TEST_F(CliTest, ValidationErrorsExitOne) {
  EXPECT_EQ(run("sweep " + m() + " --axis zoom " + out("o"), log()), 1);
  EXPECT_NE(read_file(log()).find("zoom"), std::string::npos);
  EXPECT_EQ(run("sweep --manifest /nonexistent/manifest.json --axis gamma " + out("o"), log()), 1);
  EXPECT_EQ(run("sweep " + m() + " --axis gamma --gammas 1.5 " + out("o"), log()), 1);
  EXPECT_EQ(run("bogus", log()), 1);
  EXPECT_EQ(run("--version", log()), 0);
}

TEST_F(CliTest, BrokenImageExitsTwo) {
  // Corrupt one screenshot; the others still evaluate.
  write_file(dir_ / "fx" / "images" / "desktop_1.png", "not a png");
  EXPECT_EQ(run("sweep " + m() + " --axis gamma --gammas 0.5 --side 64 " + out("o"), log()), 2)
      << read_file(log());
  const auto meta = nlohmann::json::parse(read_file(dir_ / "o" / "run_metadata.json"));
  EXPECT_TRUE(meta["partial_failure"].get<bool>());
  EXPECT_EQ(meta["diagnostics"][0]["failed"], 1);
}

TEST_F(CliTest, ConfigFileAppliesAndFlagsWin) {
  const fs::path cfg = dir_ / "cfg.json";
  write_file(cfg, nlohmann::json{{"sweep",
                                  {{"axis", "radius"},
                                   {"radii", {0.05, 0.2}},
                                   {"backend", "file"},
                                   {"n", 5}}}}
                      .dump());
  ASSERT_EQ(run("--config \"" + cfg.string() + "\" sweep " + m() + " " + out("a"), log()), 0)
      << read_file(log());
  const auto a = nlohmann::json::parse(read_file(dir_ / "a" / "run_metadata.json"));
  EXPECT_EQ(a["axis"], "radius");
  EXPECT_EQ(a["configs"].size(), 2u);
  EXPECT_EQ(a["defaults"]["n_fixations"], 5);

  ASSERT_EQ(run("--config \"" + cfg.string() + "\" sweep " + m() + " --n 7 --radii 0.1 " + out("b"),
                log()),
            0)
      << read_file(log());
  const auto b = nlohmann::json::parse(read_file(dir_ / "b" / "run_metadata.json"));
  EXPECT_EQ(b["configs"].size(), 1u);
  EXPECT_EQ(b["defaults"]["n_fixations"], 7);
  EXPECT_EQ(b["backend"], "file");
}

TEST_F(CliTest, RolloutAndEval) {
  const fs::path map = dir_ / "fx" / "maps" / "web_1.txt";
  const fs::path pred = dir_ / "pred.csv";
  ASSERT_EQ(run("rollout \"" + map.string() + "\" --n 5 --side 45 --out \"" + pred.string() + "\"",
                log()),
            0)
      << read_file(log());
  EXPECT_NE(read_file(pred).find("model,4,"), std::string::npos);
  ASSERT_EQ(run("eval \"" + pred.string() + "\" \"" +
                    (dir_ / "fx" / "scanpaths" / "web_1.csv").string() + "\"",
                log()),
            0)
      << read_file(log());
  EXPECT_NE(read_file(log()).find("dtw"), std::string::npos);
}

TEST_F(CliTest, AnalyzeVisits) {
  const fs::path csv = dir_ / "visits.csv";
  ASSERT_EQ(run("analyze visits " + m() + " --backend file --out \"" + csv.string() + "\"", log()),
            0)
      << read_file(log());
  const std::string text = read_file(csv);
  EXPECT_EQ(text.rfind("source,category,", 0), 0u);
  EXPECT_NE(text.find("ground_truth,face,"), std::string::npos);
  EXPECT_NE(text.find("improved,text,"), std::string::npos);
}

}  // namespace
}  // namespace gazesweep
