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

// synlab: command-line front end.
//
// Exit codes: 0 success, 1 suite or certificate failure, 2 rejected
// configuration or budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "synlab/harness.hpp"
#include "synlab/planner.hpp"
#include "synlab/selftest.hpp"

namespace {

using namespace synlab;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kRejected = 2;

struct Common {
  ConfigMap cli;
  std::optional<std::string> config_path;
};

void add_value(CLI::App* app, Common& c, const std::string& flag, const std::string& key,
               const std::string& help) {
  app->add_option_function<std::string>(
      flag, [&c, key](const std::string& v) { c.cli[key] = v; }, help);
}

void add_experiment_options(CLI::App* app, Common& c) {
  app->add_option_function<std::string>(
      "--config", [&c](const std::string& v) { c.config_path = v; },
      "key=value config file (overrides SYNLAB_CONFIG)");
  add_value(app, c, "--seed", "seed", "master seed");
  add_value(app, c, "--out", "out", "output path (default stdout)");
  add_value(app, c, "--format", "format", "csv or json");
  add_value(app, c, "--jobs", "jobs", "worker threads");
  add_value(app, c, "--budget", "budget", "operation cap");
  add_value(app, c, "-q,--q", "q", "field size");
  add_value(app, c, "-n,--n", "n", "code length");
  add_value(app, c, "-r,--r", "r", "parity checks");
  add_value(app, c, "--R", "R", "rate; sets r = ceil((1-R) n)");
  add_value(app, c, "-E,--E", "E", "inner radius");
  add_value(app, c, "--Eplus", "Eplus", "outer radius");
  add_value(app, c, "--trials", "trials", "number of codes");
  add_value(app, c, "--samples", "samples", "objects per code in sampled mode");
  add_value(app, c, "--enumeration", "enumeration", "full or sampled");
  add_value(app, c, "--records", "records", "nontrivial or all");
  add_value(app, c, "--plan-rate", "plan_rate", "attach a plan: rate");
  add_value(app, c, "--plan-eps", "plan_eps", "attach a plan: epsilon");
  add_value(app, c, "--plan-rho", "plan_rho", "attach a plan: rho");
  add_value(app, c, "--plan-mode", "plan_mode", "two-radius or one-radius");
  add_value(app, c, "--plan-kind", "plan_kind", "line, space or curve");
}

std::string kind_name_for_plan(ExperimentMode m) {
  switch (m) {
    case ExperimentMode::kSpaceGap:
    case ExperimentMode::kSpaceCa: return "space";
    case ExperimentMode::kCurveCa: return "curve";
    default: return "line";
  }
}

int run_mode(ExperimentMode mode, Common& c) {
  c.cli["mode"] = mode_name(mode);
  if (c.cli.count("plan_rate") && !c.cli.count("plan_kind"))
    c.cli["plan_kind"] = kind_name_for_plan(mode);
  ExperimentConfig cfg;
  ExperimentResult res;
  try {
    cfg = resolve_config(c.cli, c.config_path, std::getenv("SYNLAB_CONFIG"));
    validate_config(cfg);
  } catch (const Error& e) {
    std::cerr << "synlab: " << e.what() << "\n";
    return kRejected;
  }
  try {
    res = run_experiment(cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "synlab: " << e.what() << "\n";
    return kRejected;
  }
  const std::string ts = current_timestamp();
  const std::string body = cfg.format == OutputFormat::kCsv
                               ? records_to_csv(res, ts)
                               : result_to_json(res, ts).dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "synlab: cannot write " << cfg.out << "\n";
      return kRejected;
    }
    f << body;
  }
  nlohmann::json s = summary_to_json(res.summary);
  s["wall_ms"] = res.wall_ms;
  std::cerr << s.dump() << "\n";
  return res.summary.failed() ? kFailed : kOk;
}

PlanKind parse_plan_kind(const std::string& s) {
  if (s == "line") return PlanKind::kLine;
  if (s == "space") return PlanKind::kSpace;
  if (s == "curve") return PlanKind::kCurve;
  throw Error(ErrorCode::kConfigError, "kind must be line, space or curve");
}

RadiusMode parse_radius_mode(const std::string& s) {
  if (s == "two-radius") return RadiusMode::kTwoRadius;
  if (s == "one-radius") return RadiusMode::kOneRadius;
  throw Error(ErrorCode::kConfigError, "mode must be two-radius or one-radius");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synlab: syndrome-space proximity gap laboratory"};
  app.require_subcommand(1);
  int code = kOk;

  // plan
  std::string p_kind = "line", p_mode = "two-radius", p_rate = "1/2", p_eps = "1/10",
              p_rho = "1/10", p_format = "text";
  std::size_t p_degree = 1;
  std::optional<std::size_t> p_n;
  CLI::App* plan = app.add_subcommand("plan", "parameter plan for one recipe");
  plan->add_option("--kind", p_kind, "line, space or curve");
  plan->add_option("--mode", p_mode, "two-radius or one-radius");
  plan->add_option("--rate,--R", p_rate, "code rate");
  plan->add_option("--eps", p_eps, "epsilon");
  plan->add_option("--rho", p_rho, "radius fraction");
  plan->add_option("--degree,-m,-l", p_degree, "space dimension or curve degree");
  plan->add_option("-n,--n", p_n, "code length (needed for one-radius)");
  plan->add_option("--format", p_format, "text or json");
  plan->callback([&] {
    try {
      PlanInputs in;
      in.kind = parse_plan_kind(p_kind);
      in.mode = parse_radius_mode(p_mode);
      in.rate = parse_ratio(p_rate);
      in.eps = parse_ratio(p_eps);
      in.rho = parse_ratio(p_rho);
      in.degree = p_degree;
      in.n = p_n;
      Plan p = make_plan(in);
      if (p_format == "json") std::cout << plan_to_json(p).dump(2) << "\n";
      else std::cout << plan_to_text(p);
      code = p.stable ? kOk : kFailed;
    } catch (const Error& e) {
      std::cerr << "synlab: " << e.what() << "\n";
      code = kRejected;
    }
  });

  // audit
  std::string a_kind = "all", a_mode = "all";
  std::size_t a_steps = 20;
  CLI::App* audit = app.add_subcommand("audit", "proof-exponent audit over the standard grid");
  audit->add_option("--kind", a_kind, "line, space, curve or all");
  audit->add_option("--mode", a_mode, "two-radius, one-radius or all");
  audit->add_option("--rho-steps", a_steps, "rho points per (R, eps)");
  audit->callback([&] {
    try {
      AuditGrid grid;
      grid.rho_steps = a_steps;
      bool ok = true;
      for (PlanKind k : {PlanKind::kLine, PlanKind::kSpace, PlanKind::kCurve}) {
        if (a_kind != "all" && parse_plan_kind(a_kind) != k) continue;
        for (RadiusMode m : {RadiusMode::kTwoRadius, RadiusMode::kOneRadius}) {
          if (a_mode != "all" && parse_radius_mode(a_mode) != m) continue;
          AuditReport rep = run_exponent_audit(k, m, grid);
          std::cout << (rep.ok() ? "PASS " : "FAIL ") << plan_kind_name(k) << " "
                    << radius_mode_name(m) << ": " << rep.checked << " checked, " << rep.skipped
                    << " skipped, max exponent " << rep.max_exponent.str(8) << ", "
                    << rep.unstable << " unstable\n";
          for (const std::string& v : rep.violations) std::cout << "  " << v << "\n";
          ok = ok && rep.ok();
        }
      }
      code = ok ? kOk : kFailed;
    } catch (const Error& e) {
      std::cerr << "synlab: " << e.what() << "\n";
      code = kRejected;
    }
  });

  // experiments
  struct Sub {
    const char* name;
    ExperimentMode mode;
    const char* help;
  };
  const Sub subs[] = {
      {"gap-line", ExperimentMode::kLineGap, "line proximity-gap statistics"},
      {"gap-space", ExperimentMode::kSpaceGap, "affine-space proximity-gap statistics"},
      {"ca-space", ExperimentMode::kSpaceCa, "correlated agreement on affine spaces"},
      {"ca-curve", ExperimentMode::kCurveCa, "correlated agreement on polynomial curves"},
      {"no-slack", ExperimentMode::kNoSlack, "certified no-slack obstructions"},
      {"reduce-demo", ExperimentMode::kReduceDemo, "synthetic witnesses through rank reduction"},
  };
  std::map<std::string, Common> commons;
  for (const Sub& s : subs) {
    Common& c = commons[s.name];
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_experiment_options(sub, c);
    if (s.mode == ExperimentMode::kSpaceGap || s.mode == ExperimentMode::kSpaceCa)
      add_value(sub, c, "-m,--m", "m", "space dimension");
    if (s.mode == ExperimentMode::kCurveCa) add_value(sub, c, "-l,--l", "l", "curve degree");
    if (s.mode == ExperimentMode::kReduceDemo) {
      add_value(sub, c, "--object", "object", "line, space or curve");
      add_value(sub, c, "--degree", "degree", "space dimension or curve degree");
    }
    if (s.mode == ExperimentMode::kLineGap)
      sub->add_flag_callback("--attach-no-slack", [&c] { c.cli["attach_no_slack"] = "true"; },
                             "add one certified no-slack line per code");
    const ExperimentMode mode = s.mode;
    sub->callback([&c, mode, &code] { code = run_mode(mode, c); });
  }

  // selftest
  std::string s_level = "quick", s_format = "text";
  std::vector<std::string> s_suites;
  std::optional<std::size_t> s_mutate;
  std::uint64_t s_seed = SelftestOptions{}.seed;
  CLI::App* selftest = app.add_subcommand("selftest", "built-in invariant suites");
  selftest->add_option("--level", s_level, "quick or full");
  selftest->add_option("--suite", s_suites, "run only these suites");
  selftest->add_option("--seed", s_seed, "suite seed");
  selftest->add_option("--format", s_format, "text or json");
  selftest->add_option("--mutate-field", s_mutate, "corrupt one multiplication table entry");
  selftest->callback([&] {
    try {
      SelftestOptions opt;
      opt.level = parse_selftest_level(s_level);
      opt.only = s_suites;
      opt.seed = s_seed;
      opt.corrupt_field_entry = s_mutate;
      SelftestReport rep = run_selftest(opt);
      if (s_format == "json") std::cout << selftest_to_json(rep).dump(2) << "\n";
      else std::cout << selftest_to_text(rep);
      code = rep.ok() ? kOk : kFailed;
    } catch (const Error& e) {
      std::cerr << "synlab: " << e.what() << "\n";
      code = kRejected;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kRejected;
  }
  return code;
}
