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

// Seeded experiments over random codes. Every record is a pure function of
// (config, master seed, trial index), trials run on a worker pool, and the
// merged output is sorted by (trial_index, object_id).

#ifndef SYNLAB_HARNESS_HPP_
#define SYNLAB_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "synlab/code.hpp"
#include "synlab/planner.hpp"

namespace synlab {

enum class ExperimentMode {
  kLineGap,
  kSpaceGap,
  kSpaceCa,
  kCurveCa,
  kNoSlack,
  kReduceDemo,
};

std::string mode_name(ExperimentMode m);
ExperimentMode parse_mode(const std::string& s);

enum class Enumeration { kFull, kSampled };
enum class OutputFormat { kCsv, kJson };
// kNontrivial keeps objects with at least two points in H_E, plus every
// record of the no-slack and reduce-demo modes.
enum class RecordFilter { kNontrivial, kAll };

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::kLineGap;
  std::uint32_t q = 4;
  std::size_t n = 8;
  std::size_t r = 4;
  std::size_t e = 1;
  std::size_t eplus = 2;
  std::size_t degree = 1;          // m for spaces, l for curves
  ObjectKind demo_kind = ObjectKind::kLine;  // reduce-demo only
  std::uint64_t trials = 4;
  std::uint64_t master_seed = 1;
  Enumeration enumeration = Enumeration::kSampled;
  std::uint64_t samples = 1000;    // objects per trial when sampled
  std::uint64_t budget = kDefaultBudget;
  std::size_t jobs = 1;
  std::string out;                 // empty: stdout
  OutputFormat format = OutputFormat::kCsv;
  RecordFilter records = RecordFilter::kNontrivial;
  bool attach_no_slack = false;    // line-gap: add one no-slack line per trial
  std::optional<PlanInputs> plan;  // planner threshold for verdicts
};

using ConfigMap = std::map<std::string, std::string>;

// key = value lines, '#' starts a comment. kConfigError names the line.
ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

// Unknown keys and malformed values throw kConfigError.
void apply_config(ExperimentConfig& cfg, const ConfigMap& values);

// Defaults, then the file (from `config_flag`, else `env_path`), then the
// command-line values.
ExperimentConfig resolve_config(const ConfigMap& cli,
                                const std::optional<std::string>& config_flag,
                                const char* env_path);

// Operation estimate used for up-front rejection.
std::uint64_t estimate_cost(const ExperimentConfig& cfg);

// kConfigError for inconsistent parameters, BudgetExceeded (with the
// estimate) when the run would exceed the budget.
void validate_config(const ExperimentConfig& cfg);

struct TrialRecord {
  std::uint64_t trial_index = 0;
  std::uint64_t code_seed = 0;
  std::uint32_t q = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::string d;                   // "inf", a number, or "" when not computed
  std::string object_kind;
  std::uint64_t object_id = 0;
  std::uint64_t count_in_ball = 0;
  std::uint64_t total_points = 0;
  bool contained_bigball = false;
  std::string ca_decision;         // "true", "false" or ""
  std::string planner_threshold;
  std::string verdict;
};

struct ExperimentSummary {
  std::uint64_t trials = 0;
  std::uint64_t objects = 0;
  std::uint64_t records = 0;
  std::uint64_t contained = 0;
  std::optional<std::uint64_t> max_bad_count;   // over non-contained objects
  std::map<std::uint64_t, std::uint64_t> histogram;  // count -> objects
  std::string planner_threshold;
  std::uint64_t above_threshold = 0;            // empirical, not a failure
  std::uint64_t ca_true = 0;
  std::uint64_t ca_false = 0;
  std::uint64_t candidates = 0;                 // no CA and count >= 2
  std::uint64_t threshold_holds = 0;
  std::uint64_t threshold_not_applicable = 0;
  std::uint64_t threshold_counterexamples = 0;  // failures
  // Above the floored bound but within the unfloored one; not failures.
  std::uint64_t threshold_floored_only = 0;
  std::map<std::size_t, std::uint64_t> rank_excess;  // t - h of witnesses
  std::uint64_t certified = 0;
  std::uint64_t certificate_failures = 0;       // failures
  std::uint64_t no_code = 0;
  std::uint64_t reductions_ok = 0;
  std::uint64_t reduction_failures = 0;         // failures
  std::uint64_t infeasible = 0;

  bool failed() const {
    return threshold_counterexamples + certificate_failures + reduction_failures > 0;
  }
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  ExperimentSummary summary;
  double wall_ms = 0.0;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Records for one trial, exactly as run_experiment produces them.
std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg,
                                   std::uint64_t trial_index);

// The first line is a '#' comment carrying the timestamp; everything after
// it is deterministic.
std::string records_to_csv(const ExperimentResult& res,
                           const std::string& timestamp);
// "generated" carries the timestamp; the rest is deterministic.
nlohmann::json result_to_json(const ExperimentResult& res,
                              const std::string& timestamp);
nlohmann::json summary_to_json(const ExperimentSummary& s);

std::string current_timestamp();

}  // namespace synlab

#endif  // SYNLAB_HARNESS_HPP_
