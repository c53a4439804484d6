// Copyright 2026 The syndrome-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synlab/harness.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "synlab/geometry.hpp"

namespace synlab {
namespace {

std::string body(const std::string& csv) { return csv.substr(csv.find('\n') + 1); }

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("synlab_" + name);
  std::ofstream(path) << text;
  return path.string();
}

ExperimentConfig small(ExperimentMode mode) {
  ExperimentConfig cfg;
  cfg.mode = mode;
  cfg.q = 4;
  cfg.n = 8;
  cfg.r = 4;
  cfg.e = 1;
  cfg.eplus = 2;
  cfg.trials = 3;
  cfg.samples = 60;
  return cfg;
}

TEST(Config, ParsesKeyValueText) {
  ConfigMap m = parse_config_text("# comment\n q = 8 \n\nn=12 # trailing\nmode = gap-space\n");
  EXPECT_EQ(m.size(), 3u);
  EXPECT_EQ(m.at("q"), "8");
  EXPECT_EQ(m.at("n"), "12");
  ExperimentConfig cfg;
  apply_config(cfg, m);
  EXPECT_EQ(cfg.q, 8u);
  EXPECT_EQ(cfg.n, 12u);
  EXPECT_EQ(cfg.mode, ExperimentMode::kSpaceGap);
  apply_config(cfg, {{"R", "1/3"}, {"n", "10"}});
  EXPECT_EQ(cfg.r, 7u);  // ceil(20/3)
}

TEST(Config, RejectsMalformedInput) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kNotFound;
  };
  EXPECT_EQ(code_of([] { parse_config_text("q 8\n"); }), ErrorCode::kConfigError);
  ExperimentConfig cfg;
  EXPECT_EQ(code_of([&] { apply_config(cfg, {{"colour", "red"}}); }), ErrorCode::kConfigError);
  EXPECT_EQ(code_of([&] { apply_config(cfg, {{"q", "-3"}}); }), ErrorCode::kConfigError);
  EXPECT_EQ(code_of([&] { apply_config(cfg, {{"format", "xml"}}); }), ErrorCode::kConfigError);
  EXPECT_EQ(code_of([&] { load_config_file("/nonexistent/synlab.conf"); }),
            ErrorCode::kConfigError);
}

TEST(Config, PrecedenceDefaultsFileEnvCli) {
  const std::string env_file = temp_file("env.conf", "q = 8\nn = 10\nr = 5\n");
  const std::string flag_file = temp_file("flag.conf", "q = 5\nn = 9\n");

  ExperimentConfig d = resolve_config({}, std::nullopt, nullptr);
  EXPECT_EQ(d.q, ExperimentConfig{}.q);

  ExperimentConfig from_env = resolve_config({}, std::nullopt, env_file.c_str());
  EXPECT_EQ(from_env.q, 8u);
  EXPECT_EQ(from_env.r, 5u);

  // The explicit flag replaces the environment file entirely.
  ExperimentConfig from_flag = resolve_config({}, flag_file, env_file.c_str());
  EXPECT_EQ(from_flag.q, 5u);
  EXPECT_EQ(from_flag.n, 9u);
  EXPECT_EQ(from_flag.r, ExperimentConfig{}.r);

  ExperimentConfig cli = resolve_config({{"q", "7"}}, flag_file, env_file.c_str());
  EXPECT_EQ(cli.q, 7u);
  EXPECT_EQ(cli.n, 9u);

  ExperimentConfig empty_env = resolve_config({}, std::nullopt, "");
  EXPECT_EQ(empty_env.q, ExperimentConfig{}.q);
}

TEST(Config, ValidationAndBudget) {
  ExperimentConfig cfg = small(ExperimentMode::kLineGap);
  EXPECT_NO_THROW(validate_config(cfg));
  cfg.q = 6;
  EXPECT_THROW(validate_config(cfg), Error);
  cfg = small(ExperimentMode::kLineGap);
  cfg.e = 3;
  cfg.eplus = 2;
  EXPECT_THROW(validate_config(cfg), Error);
  cfg = small(ExperimentMode::kLineGap);
  cfg.budget = 100;
  EXPECT_THROW(run_experiment(cfg), BudgetExceeded);
  cfg.budget = estimate_cost(cfg);
  EXPECT_NO_THROW(validate_config(cfg));
}

TEST(Harness, DeterministicAcrossRunsAndJobs) {
  for (ExperimentMode mode : {ExperimentMode::kLineGap, ExperimentMode::kSpaceCa}) {
    ExperimentConfig cfg = small(mode);
    cfg.degree = 2;
    cfg.records = RecordFilter::kAll;
    const std::string a = records_to_csv(run_experiment(cfg), "t1");
    const std::string b = records_to_csv(run_experiment(cfg), "t2");
    EXPECT_NE(a, b);  // timestamps differ
    EXPECT_EQ(body(a), body(b));
    cfg.jobs = 2;
    EXPECT_EQ(body(records_to_csv(run_experiment(cfg), "t3")), body(a));
    cfg.master_seed = 99;
    EXPECT_NE(body(records_to_csv(run_experiment(cfg), "t4")), body(a));
  }
}

TEST(Harness, ZeroTrials) {
  ExperimentConfig cfg = small(ExperimentMode::kSpaceGap);
  cfg.trials = 0;
  ExperimentResult res = run_experiment(cfg);
  EXPECT_TRUE(res.records.empty());
  EXPECT_EQ(res.summary.trials, 0u);
  EXPECT_FALSE(res.summary.failed());
  const std::string csv = records_to_csv(res, "now");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  nlohmann::json j = result_to_json(res, "now");
  EXPECT_TRUE(j["records"].empty());
  EXPECT_EQ(j["summary"]["trials"], 0);
  EXPECT_TRUE(j["summary"]["max_bad_count"].is_null());
}

TEST(Harness, RecordsMatchSummaryAndFilter) {
  ExperimentConfig cfg = small(ExperimentMode::kLineGap);
  cfg.records = RecordFilter::kAll;
  ExperimentResult all = run_experiment(cfg);
  EXPECT_EQ(all.records.size(), cfg.trials * cfg.samples);
  EXPECT_EQ(all.summary.objects, all.records.size());
  std::uint64_t hist_total = 0;
  for (const auto& [count, objects] : all.summary.histogram) hist_total += objects;
  EXPECT_EQ(hist_total, all.summary.objects);
  std::size_t nontrivial = 0;
  for (const TrialRecord& r : all.records) {
    EXPECT_EQ(r.total_points, cfg.q);
    EXPECT_LE(r.count_in_ball, r.total_points);
    if (r.count_in_ball >= 2) ++nontrivial;
    EXPECT_EQ(r.verdict, r.contained_bigball ? "contained" : "outside");
  }
  cfg.records = RecordFilter::kNontrivial;
  ExperimentResult some = run_experiment(cfg);
  EXPECT_EQ(some.records.size(), nontrivial);
  EXPECT_EQ(some.summary.objects, all.summary.objects);
  EXPECT_EQ(some.summary.histogram, all.summary.histogram);
}

TEST(Harness, FullLineEnumerationCoversEveryLine) {
  ExperimentConfig cfg = small(ExperimentMode::kLineGap);
  cfg.q = 2;
  cfg.n = 6;
  cfg.r = 3;
  cfg.trials = 1;
  cfg.enumeration = Enumeration::kFull;
  cfg.records = RecordFilter::kAll;
  ExperimentResult res = run_experiment(cfg);
  EXPECT_EQ(res.records.size(), syndrome_line_count(2, 3));
}

TEST(Harness, OneDimensionalSpacesMatchLines) {
  ExperimentConfig line = small(ExperimentMode::kLineGap);
  line.records = RecordFilter::kAll;
  ExperimentConfig space = line;
  space.mode = ExperimentMode::kSpaceGap;
  space.degree = 1;
  ExperimentResult a = run_experiment(line);
  ExperimentResult b = run_experiment(space);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].count_in_ball, b.records[i].count_in_ball) << i;
    EXPECT_EQ(a.records[i].contained_bigball, b.records[i].contained_bigball) << i;
  }
}

TEST(Harness, AttachedNoSlackLine) {
  ExperimentConfig cfg = small(ExperimentMode::kLineGap);
  cfg.q = 8;
  cfg.n = 12;
  cfg.r = 8;
  cfg.e = 1;
  cfg.eplus = 1;
  cfg.samples = 10;
  cfg.attach_no_slack = true;
  ExperimentResult res = run_experiment(cfg);
  std::size_t seen = 0;
  for (const TrialRecord& r : res.records) {
    if (r.object_kind != "no_slack_line") continue;
    ++seen;
    EXPECT_GE(r.count_in_ball, 2u);
    if (r.d != "inf" && std::stoul(r.d) >= 2 * cfg.e + 2) EXPECT_FALSE(r.contained_bigball);
  }
  EXPECT_EQ(seen, cfg.trials);
}

TEST(Harness, CaDecisionImpliesContainment) {
  ExperimentConfig cfg = small(ExperimentMode::kSpaceCa);
  cfg.q = 3;
  cfg.n = 7;
  cfg.r = 4;
  cfg.degree = 2;
  cfg.records = RecordFilter::kAll;
  ExperimentResult res = run_experiment(cfg);
  EXPECT_FALSE(res.summary.failed());
  EXPECT_EQ(res.summary.ca_true + res.summary.ca_false, res.summary.objects);
  for (const TrialRecord& r : res.records) {
    if (r.ca_decision == "true") EXPECT_TRUE(r.contained_bigball);
    if (r.verdict.rfind("threshold", 0) == 0) {
      EXPECT_EQ(r.ca_decision, "false");
      EXPECT_GE(r.count_in_ball, 2u);
    }
  }
}

TEST(Harness, CurveCaRuns) {
  ExperimentConfig cfg = small(ExperimentMode::kCurveCa);
  cfg.q = 5;
  cfg.n = 8;
  cfg.r = 4;
  cfg.degree = 2;
  cfg.samples = 40;
  ExperimentResult res = run_experiment(cfg);
  EXPECT_FALSE(res.summary.failed());
  EXPECT_EQ(res.summary.objects, cfg.trials * cfg.samples);
  EXPECT_GT(res.summary.candidates, 0u);
  // l * floor(3/2) = 2 is exceeded by three points on some curves, which
  // stay within l * 3/2.
  EXPECT_GT(res.summary.threshold_floored_only, 0u);
  EXPECT_EQ(res.summary.threshold_counterexamples, 0u);
}

TEST(Harness, NoSlackCertificates) {
  ExperimentConfig cfg = small(ExperimentMode::kNoSlack);
  cfg.q = 8;
  cfg.n = 12;
  cfg.r = 8;
  cfg.e = 1;
  cfg.eplus = 1;
  ExperimentResult res = run_experiment(cfg);
  EXPECT_EQ(res.records.size(), cfg.trials);
  EXPECT_EQ(res.summary.certified, cfg.trials);
  for (const TrialRecord& r : res.records) {
    EXPECT_EQ(r.verdict, "certified");
    EXPECT_FALSE(r.contained_bigball);
    EXPECT_GE(r.count_in_ball, 2u);
  }
}

TEST(Harness, ReduceDemo) {
  for (ObjectKind kind : {ObjectKind::kLine, ObjectKind::kSpace, ObjectKind::kCurve}) {
    ExperimentConfig cfg = small(ExperimentMode::kReduceDemo);
    cfg.q = 7;
    cfg.n = 12;
    cfg.r = 6;
    cfg.e = 3;
    cfg.eplus = 3;
    cfg.degree = 2;
    cfg.demo_kind = kind;
    ExperimentResult res = run_experiment(cfg);
    EXPECT_EQ(res.summary.reduction_failures, 0u) << object_kind_name(kind);
    EXPECT_EQ(res.summary.reductions_ok + res.summary.infeasible, cfg.trials);
    EXPECT_GT(res.summary.reductions_ok, 0u);
  }
}

TEST(Harness, PlannerThresholdAttached) {
  ExperimentConfig cfg = small(ExperimentMode::kLineGap);
  apply_config(cfg, {{"plan_rate", "1/2"}, {"plan_eps", "1/10"}, {"plan_rho", "1/5"}});
  ASSERT_TRUE(cfg.plan.has_value());
  ExperimentResult res = run_experiment(cfg);
  EXPECT_FALSE(res.summary.planner_threshold.empty());
  for (const TrialRecord& r : res.records) EXPECT_EQ(r.planner_threshold, res.summary.planner_threshold);
}

TEST(Harness, CsvAndJsonShape) {
  ExperimentConfig cfg = small(ExperimentMode::kLineGap);
  cfg.trials = 1;
  ExperimentResult res = run_experiment(cfg);
  const std::string csv = records_to_csv(res, "2026-01-01T00:00:00Z");
  EXPECT_EQ(csv.rfind("# synlab gap-line generated 2026-01-01T00:00:00Z\n", 0), 0u);
  EXPECT_NE(csv.find("\ntrial_index,code_seed,q,n,r,d,object_kind"), std::string::npos);
  nlohmann::json j = result_to_json(res, "x");
  EXPECT_EQ(j["records"].size(), res.records.size());
  EXPECT_EQ(j["mode"], "gap-line");
  EXPECT_TRUE(j["summary"].contains("histogram"));
}

}  // namespace
}  // namespace synlab
