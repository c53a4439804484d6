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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "synlab/adversarial.hpp"
#include "synlab/agreement.hpp"
#include "synlab/ball.hpp"
#include "synlab/geometry.hpp"
#include "synlab/rng.hpp"
#include "synlab/witness.hpp"

namespace synlab {
namespace {

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorCode::kConfigError, msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; }))
    config_error(key + ": expected a non-negative integer, got '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    config_error(key + ": out of range: '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  config_error(key + ": expected true/false, got '" + v + "'");
}

ObjectKind parse_kind(const std::string& key, const std::string& v) {
  if (v == "line") return ObjectKind::kLine;
  if (v == "space") return ObjectKind::kSpace;
  if (v == "curve") return ObjectKind::kCurve;
  config_error(key + ": expected line, space or curve, got '" + v + "'");
}

PlanInputs& plan_of(ExperimentConfig& cfg) {
  if (!cfg.plan) cfg.plan = PlanInputs{};
  return *cfg.plan;
}

Ratio ratio_value(const std::string& v) {
  try {
    return parse_ratio(v);
  } catch (const Error& e) {
    config_error(e.what());
  }
}

}  // namespace

std::string mode_name(ExperimentMode m) {
  switch (m) {
    case ExperimentMode::kLineGap: return "gap-line";
    case ExperimentMode::kSpaceGap: return "gap-space";
    case ExperimentMode::kSpaceCa: return "ca-space";
    case ExperimentMode::kCurveCa: return "ca-curve";
    case ExperimentMode::kNoSlack: return "no-slack";
    case ExperimentMode::kReduceDemo: return "reduce-demo";
  }
  return "?";
}

ExperimentMode parse_mode(const std::string& s) {
  for (ExperimentMode m : {ExperimentMode::kLineGap, ExperimentMode::kSpaceGap,
                           ExperimentMode::kSpaceCa, ExperimentMode::kCurveCa,
                           ExperimentMode::kNoSlack, ExperimentMode::kReduceDemo})
    if (mode_name(m) == s) return m;
  if (s == "line-gap") return ExperimentMode::kLineGap;
  if (s == "space-gap") return ExperimentMode::kSpaceGap;
  if (s == "space-ca") return ExperimentMode::kSpaceCa;
  if (s == "curve-ca") return ExperimentMode::kCurveCa;
  if (s == "no-slack-demo") return ExperimentMode::kNoSlack;
  config_error("unknown mode '" + s + "'");
}

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      config_error("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) config_error("line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) config_error("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

void apply_config(ExperimentConfig& cfg, const ConfigMap& values) {
  std::optional<Ratio> rate;
  for (const auto& [key, v] : values) {
    if (key == "mode") cfg.mode = parse_mode(v);
    else if (key == "R") rate = ratio_value(v);
    else if (key == "q") cfg.q = static_cast<std::uint32_t>(parse_u64(key, v));
    else if (key == "n") cfg.n = parse_u64(key, v);
    else if (key == "r") cfg.r = parse_u64(key, v);
    else if (key == "E" || key == "e") cfg.e = parse_u64(key, v);
    else if (key == "Eplus" || key == "eplus") cfg.eplus = parse_u64(key, v);
    else if (key == "m" || key == "l" || key == "degree") cfg.degree = parse_u64(key, v);
    else if (key == "object") cfg.demo_kind = parse_kind(key, v);
    else if (key == "trials") cfg.trials = parse_u64(key, v);
    else if (key == "seed" || key == "master_seed") cfg.master_seed = parse_u64(key, v);
    else if (key == "enumeration") {
      if (v == "full") cfg.enumeration = Enumeration::kFull;
      else if (v == "sampled") cfg.enumeration = Enumeration::kSampled;
      else config_error("enumeration: expected full or sampled, got '" + v + "'");
    } else if (key == "samples") cfg.samples = parse_u64(key, v);
    else if (key == "budget") cfg.budget = parse_u64(key, v);
    else if (key == "jobs") cfg.jobs = parse_u64(key, v);
    else if (key == "out") cfg.out = v;
    else if (key == "format") {
      if (v == "csv") cfg.format = OutputFormat::kCsv;
      else if (v == "json") cfg.format = OutputFormat::kJson;
      else config_error("format: expected csv or json, got '" + v + "'");
    } else if (key == "records") {
      if (v == "all") cfg.records = RecordFilter::kAll;
      else if (v == "nontrivial") cfg.records = RecordFilter::kNontrivial;
      else config_error("records: expected all or nontrivial, got '" + v + "'");
    } else if (key == "attach_no_slack") cfg.attach_no_slack = parse_bool(key, v);
    else if (key == "plan_rate") plan_of(cfg).rate = ratio_value(v);
    else if (key == "plan_eps") plan_of(cfg).eps = ratio_value(v);
    else if (key == "plan_rho") plan_of(cfg).rho = ratio_value(v);
    else if (key == "plan_kind") {
      ObjectKind k = parse_kind(key, v);
      plan_of(cfg).kind = k == ObjectKind::kLine    ? PlanKind::kLine
                          : k == ObjectKind::kSpace ? PlanKind::kSpace
                                                    : PlanKind::kCurve;
    } else if (key == "plan_mode") {
      if (v == "two-radius") plan_of(cfg).mode = RadiusMode::kTwoRadius;
      else if (v == "one-radius") plan_of(cfg).mode = RadiusMode::kOneRadius;
      else config_error("plan_mode: expected two-radius or one-radius, got '" + v + "'");
    } else {
      config_error("unknown key '" + key + "'");
    }
  }
  if (rate) {
    // r = ceil((1 - R) n), applied after n.
    if (rate->num > rate->den) config_error("R must be at most 1");
    const BigInt num = BigInt(rate->den - rate->num) * BigInt(cfg.n);
    if (values.count("r")) config_error("give r or R, not both");
    cfg.r = static_cast<std::size_t>((num + rate->den - 1) / rate->den);
  }
}

ExperimentConfig resolve_config(const ConfigMap& cli,
                                const std::optional<std::string>& config_flag,
                                const char* env_path) {
  ExperimentConfig cfg;
  std::optional<std::string> path = config_flag;
  if (!path && env_path != nullptr && *env_path != '\0') path = std::string(env_path);
  if (path) apply_config(cfg, load_config_file(*path));
  apply_config(cfg, cli);
  return cfg;
}

namespace {

std::uint64_t object_count(const ExperimentConfig& cfg) {
  if (cfg.mode == ExperimentMode::kNoSlack || cfg.mode == ExperimentMode::kReduceDemo) return 1;
  if (cfg.enumeration == Enumeration::kSampled) return cfg.samples;
  const std::uint64_t q = cfg.q;
  switch (cfg.mode) {
    case ExperimentMode::kLineGap:
      return syndrome_line_count(cfg.q, cfg.r);
    case ExperimentMode::kSpaceGap:
    case ExperimentMode::kSpaceCa: {
      // q^(r-m) times the Gaussian binomial [r choose m]_q.
      if (cfg.degree > cfg.r) return 0;
      std::uint64_t num = 1, den = 1;
      for (std::size_t i = 0; i < cfg.degree; ++i) {
        num = sat_mul(num, sat_pow(q, cfg.r - i) - 1);
        den = sat_mul(den, sat_pow(q, i + 1) - 1);
      }
      if (num == kSaturated || den == kSaturated) return kSaturated;
      return sat_mul(num / den, sat_pow(q, cfg.r - cfg.degree));
    }
    case ExperimentMode::kCurveCa:
      return sat_pow(q, cfg.r * (cfg.degree + 1));
    default:
      return 1;
  }
}

std::uint64_t points_per_object(const ExperimentConfig& cfg) {
  if (cfg.mode == ExperimentMode::kSpaceGap || cfg.mode == ExperimentMode::kSpaceCa)
    return sat_pow(cfg.q, cfg.degree);
  return cfg.q;
}

bool ca_mode(ExperimentMode m) {
  return m == ExperimentMode::kSpaceCa || m == ExperimentMode::kCurveCa;
}

}  // namespace

std::uint64_t estimate_cost(const ExperimentConfig& cfg) {
  const std::uint64_t q = cfg.q;
  const std::uint64_t k = cfg.n > cfg.r ? cfg.n - cfg.r : 0;
  const std::uint64_t dist = std::min(sat_mul(sat_pow(q, k), cfg.n),
                                      sat_mul(sat_support_count(cfg.n, cfg.r + 1), cfg.r + 1));
  const std::uint64_t ball =
      sat_mul(sat_ball_volume(cfg.n, cfg.q, std::min(cfg.eplus, cfg.n)), cfg.r + 1);
  std::uint64_t per_object = sat_mul(points_per_object(cfg), cfg.r + 1);
  if (ca_mode(cfg.mode))
    per_object = sat_add(per_object,
                         sat_mul(sat_support_count(cfg.n, std::min(cfg.eplus, cfg.n)), cfg.r + 1));
  std::uint64_t per_trial = sat_add(dist, ball);
  if (cfg.mode == ExperimentMode::kNoSlack) per_trial = sat_mul(dist, 100);
  per_trial = sat_add(per_trial, sat_mul(object_count(cfg), per_object));
  return sat_mul(std::max<std::uint64_t>(cfg.trials, 1), per_trial);
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.q < 2) config_error("q must be a prime power >= 2");
  (void)make_field(cfg.q);
  if (cfg.r == 0 || cfg.r > cfg.n) config_error("need 1 <= r <= n");
  if (!(cfg.e <= cfg.eplus && cfg.eplus <= cfg.n)) config_error("need E <= Eplus <= n");
  if (cfg.degree == 0) config_error("degree (m or l) must be >= 1");
  if (cfg.jobs == 0) config_error("jobs must be >= 1");
  if (sat_pow(cfg.q, cfg.r) > (1ull << 36)) config_error("q^r too large for syndrome tables");
  if ((cfg.mode == ExperimentMode::kSpaceGap || cfg.mode == ExperimentMode::kSpaceCa) &&
      cfg.degree > cfg.r)
    config_error("space dimension m exceeds r");
  if (cfg.mode == ExperimentMode::kNoSlack && !(cfg.e + 1 < cfg.n))
    config_error("no-slack needs E + 1 < n");
  if (cfg.attach_no_slack && cfg.mode == ExperimentMode::kLineGap && !(cfg.e + 1 < cfg.n))
    config_error("attach_no_slack needs E + 1 < n");
  if (cfg.plan) {
    PlanInputs in = *cfg.plan;
    in.degree = cfg.degree;
    in.n = cfg.n;
    try {
      (void)make_plan(in);
    } catch (const Error& e) {
      config_error(std::string("plan: ") + e.what());
    }
  }
  const std::uint64_t est = estimate_cost(cfg);
  if (est > cfg.budget) throw BudgetExceeded(est, cfg.budget, "experiment " + mode_name(cfg.mode));
}

namespace {

struct Threshold {
  BigInt num;
  std::uint64_t den = 1;
  std::string text;
  // count / total > num / den
  bool above(std::uint64_t count, std::uint64_t total) const {
    return BigInt(count) * den > num * BigInt(total);
  }
};

std::optional<Threshold> threshold_for(const ExperimentConfig& cfg) {
  if (!cfg.plan) return std::nullopt;
  PlanInputs in = *cfg.plan;
  in.degree = cfg.degree;
  in.n = cfg.n;
  Plan p = make_plan(in);
  Threshold t;
  t.num = p.threshold.value;
  // Spaces in gap mode use the line-to-space ratio K/(q-1).
  t.den = cfg.mode == ExperimentMode::kSpaceGap ? cfg.q - 1 : cfg.q;
  t.text = t.num.str() + "/" + std::to_string(t.den);
  return t;
}

struct TrialOutput {
  std::vector<TrialRecord> records;
  ExperimentSummary summary;
};

Vec random_vec(Rng& rng, std::uint32_t q, std::size_t len) {
  Vec v(len);
  for (auto& x : v) x = static_cast<Elem>(rng.below(q));
  return v;
}

Vec random_nonzero(Rng& rng, std::uint32_t q, std::size_t len) {
  Vec v;
  do v = random_vec(rng, q, len);
  while (is_zero(v));
  return v;
}

// Even-numbered samples pass through two H_E points when H_E has two.
AffineObject sample_object(const Field& f, ObjectKind kind, std::size_t degree,
                           std::size_t r, const std::vector<Vec>& he,
                           std::uint64_t j, Rng& rng) {
  const std::uint32_t q = f.q();
  const bool pair = j % 2 == 0 && he.size() >= 2;
  Vec p0, p1;
  if (pair) {
    std::size_t i1 = rng.below(he.size());
    std::size_t i2 = rng.below(he.size() - 1);
    if (i2 >= i1) ++i2;
    p0 = he[i1];
    p1 = he[i2];
  }
  if (kind == ObjectKind::kCurve) {
    std::vector<Vec> c(degree + 1);
    c[0] = pair ? p0 : random_vec(rng, q, r);
    for (std::size_t i = 2; i <= degree; ++i) c[i] = random_vec(rng, q, r);
    if (pair) {
      // Passes through p1 at alpha = 1.
      Vec rest = p1;
      for (std::size_t i = 0; i <= degree; ++i)
        if (i != 1) rest = vec_sub(f, rest, c[i]);
      c[1] = rest;
    } else {
      c[1] = random_vec(rng, q, r);
    }
    return make_curve(c);
  }
  Vec base = pair ? p0 : random_vec(rng, q, r);
  std::vector<Vec> dirs;
  dirs.push_back(pair ? vec_sub(f, p1, p0) : random_nonzero(rng, q, r));
  for (std::size_t i = 1; i < degree; ++i) dirs.push_back(random_vec(rng, q, r));
  if (kind == ObjectKind::kLine) return make_line(base, dirs[0]);
  return make_space(base, dirs);
}

std::string distance_text(const std::optional<MinDistance>& d) {
  return d ? d->to_string() : std::string();
}

class TrialRunner {
 public:
  TrialRunner(const ExperimentConfig& cfg, std::uint64_t index)
      : cfg_(cfg),
        index_(index),
        seed_(derive_seed(cfg.master_seed, "trial", index)),
        field_(make_field(cfg.q)),
        threshold_(threshold_for(cfg)) {}

  TrialOutput run() {
    switch (cfg_.mode) {
      case ExperimentMode::kNoSlack: run_no_slack(); break;
      case ExperimentMode::kReduceDemo: run_reduce_demo(); break;
      default: run_objects(); break;
    }
    out_.summary.trials = 1;
    return std::move(out_);
  }

 private:
  TrialRecord base_record() const {
    TrialRecord rec;
    rec.trial_index = index_;
    rec.code_seed = seed_;
    rec.q = cfg_.q;
    rec.n = cfg_.n;
    rec.r = cfg_.r;
    rec.d = distance_text(distance_);
    if (threshold_) rec.planner_threshold = threshold_->text;
    return rec;
  }

  void measure_distance(const LinearCode& code) {
    try {
      DistanceResult dr = min_distance(code, cfg_.budget);
      code.store_distance(dr);
      distance_ = dr.distance;
    } catch (const BudgetExceeded&) {
      distance_.reset();
    }
  }

  void keep(TrialRecord rec, bool nontrivial) {
    if (cfg_.records == RecordFilter::kNontrivial && !nontrivial) return;
    ++out_.summary.records;
    out_.records.push_back(std::move(rec));
  }

  ObjectKind object_kind() const {
    switch (cfg_.mode) {
      case ExperimentMode::kLineGap: return ObjectKind::kLine;
      case ExperimentMode::kCurveCa: return ObjectKind::kCurve;
      default: return ObjectKind::kSpace;
    }
  }

  void run_objects() {
    const Field& f = *field_;
    LinearCode code = sample_code(cfg_.n, cfg_.r, field_, seed_);
    measure_distance(code);
    std::vector<SyndromeSet> balls = enumerate_balls_up_to(code, cfg_.eplus, cfg_.budget);
    const SyndromeSet& be = balls[cfg_.e];
    const SyndromeSet& bp = balls[cfg_.eplus];
    std::vector<Vec> he;
    for (std::uint64_t key : be.sorted_keys()) he.push_back(be.codec().decode(key));

    const ObjectKind kind = object_kind();
    const std::size_t degree = kind == ObjectKind::kLine ? 1 : cfg_.degree;
    std::uint64_t next_id = 0;
    auto handle = [&](const AffineObject& obj, std::uint64_t id, const std::string& label) {
      process(code, obj, id, label, be, bp);
      next_id = id + 1;
    };

    if (cfg_.enumeration == Enumeration::kFull) {
      if (kind == ObjectKind::kLine) {
        std::vector<SyndromeLine> lines = enumerate_syndrome_lines(f, cfg_.r, nullptr, cfg_.budget);
        for (std::size_t i = 0; i < lines.size(); ++i)
          handle(make_line(lines[i].s0, lines[i].s1), i, "line");
      } else if (kind == ObjectKind::kSpace) {
        std::vector<Flat> flats = enumerate_flats(f, cfg_.r, degree, cfg_.budget);
        for (std::size_t i = 0; i < flats.size(); ++i)
          handle(make_space(flats[i].base, flats[i].dirs), i, "space");
      } else {
        VectorCodec codec(cfg_.q, cfg_.r * (degree + 1));
        for (std::uint64_t id = 0; id < codec.space_size(); ++id) {
          Vec flat = codec.decode(id);
          std::vector<Vec> c(degree + 1);
          for (std::size_t i = 0; i <= degree; ++i)
            c[i].assign(flat.begin() + i * cfg_.r, flat.begin() + (i + 1) * cfg_.r);
          handle(make_curve(c), id, "curve");
        }
      }
    } else {
      Rng rng(derive_seed(seed_, "objects", 0));
      for (std::uint64_t j = 0; j < cfg_.samples; ++j)
        handle(sample_object(f, kind, degree, cfg_.r, he, j, rng), j, object_kind_name(kind));
    }

    if (cfg_.mode == ExperimentMode::kLineGap && cfg_.attach_no_slack) {
      const std::size_t k = std::min<std::size_t>(cfg_.e + 1, cfg_.q - 1);
      std::vector<Elem> alphas(k);
      for (std::size_t i = 0; i < k; ++i) alphas[i] = static_cast<Elem>(i);
      NoSlackInstance inst = build_no_slack_pair(f, cfg_.n, cfg_.e, k, alphas);
      handle(make_line(code.syndrome(inst.x1), code.syndrome(inst.x2)), next_id, "no_slack_line");
    }
  }

  void process(const LinearCode& code, const AffineObject& obj, std::uint64_t id,
               const std::string& label, const SyndromeSet& be, const SyndromeSet& bp) {
    const Field& f = *field_;
    GapReport g = gap_check_object(f, obj, be, bp, cfg_.budget);
    const bool by_set = obj.kind == ObjectKind::kSpace;
    TrialRecord rec = base_record();
    rec.object_kind = label;
    rec.object_id = id;
    rec.count_in_ball = by_set ? g.set_count : g.eval_count;
    rec.total_points = by_set ? g.set_size : g.eval_total;
    rec.contained_bigball = g.contained;

    ExperimentSummary& s = out_.summary;
    ++s.objects;
    ++s.histogram[rec.count_in_ball];
    if (g.contained) ++s.contained;
    else if (!s.max_bad_count || rec.count_in_ball > *s.max_bad_count)
      s.max_bad_count = rec.count_in_ball;
    const bool above = threshold_ && threshold_->above(rec.count_in_ball, rec.total_points);

    if (!ca_mode(cfg_.mode)) {
      rec.verdict = g.contained ? "contained" : (above ? "above_threshold" : "outside");
      if (above && !g.contained) ++s.above_threshold;
      const bool nontrivial = rec.count_in_ball >= 2 || label == "no_slack_line";
      keep(std::move(rec), nontrivial);
      return;
    }

    CAResult ca = ca_decide(code, obj.coeffs, cfg_.eplus, cfg_.budget);
    rec.ca_decision = ca.decision ? "true" : "false";
    if (ca.decision) {
      ++s.ca_true;
      rec.verdict = "ca";
    } else {
      ++s.ca_false;
      if (above) ++s.above_threshold;
      rec.verdict = "no_ca";
      if (rec.count_in_ball >= 2) {
        ++s.candidates;
        rec.verdict = check_candidate(code, obj, be);
      }
    }
    const bool nontrivial = rec.count_in_ball >= 2;
    keep(std::move(rec), nontrivial);
  }

  // Witness from the stored H_E preimages, then the rank threshold.
  std::string check_candidate(const LinearCode& code, const AffineObject& obj,
                              const SyndromeSet& be) {
    const Field& f = *field_;
    ExperimentSummary& s = out_.summary;
    WitnessMatrix w;
    w.target = obj;
    w.design.kind = obj.kind;
    w.design.degree = obj.degree();
    w.e = cfg_.e;
    std::vector<Vec> cols;
    for (const DesignPoint& p : all_design_points(f, obj.kind, obj.degree())) {
      if (const Vec* pre = be.preimage(evaluate(f, obj, p))) {
        w.design.points.push_back(p);
        cols.push_back(*pre);
      }
    }
    w.x = Matrix::from_columns(cols, cfg_.n);
    const std::size_t t = rank(f, w.x);
    const std::size_t h = coefficient_rank(f, obj);
    if (t >= h) ++s.rank_excess[t - h];
    if (!distance_) {
      ++s.threshold_not_applicable;
      return "threshold_na";
    }
    ThresholdReport rep = threshold_check(w, code, cfg_.eplus, true, *distance_);
    switch (rep.verdict) {
      case ThresholdVerdict::kHolds: ++s.threshold_holds; return "threshold_holds";
      case ThresholdVerdict::kNotApplicable: ++s.threshold_not_applicable; return "threshold_na";
      case ThresholdVerdict::kCounterexample:
        if (rep.unfloored_holds) {
          ++s.threshold_floored_only;
          return "threshold_floored_only";
        }
        ++s.threshold_counterexamples;
        return "threshold_counterexample";
    }
    return "threshold_na";
  }

  void run_no_slack() {
    const Field& f = *field_;
    TrialRecord rec = base_record();
    rec.object_kind = "no_slack_line";
    rec.total_points = cfg_.q;
    ExperimentSummary& s = out_.summary;
    ++s.objects;
    std::optional<CodeSearch> found;
    try {
      found = find_code_with_distance(cfg_.n, cfg_.r, field_, 2 * cfg_.e + 2, 100, seed_,
                                      cfg_.budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotFound) throw;
    }
    if (!found) {
      ++s.no_code;
      rec.verdict = "no_code";
      keep(std::move(rec), true);
      return;
    }
    distance_ = found->distance;
    rec.d = distance_text(distance_);
    rec.code_seed = found->seed;
    const std::size_t k = std::min<std::size_t>(cfg_.e + 1, cfg_.q - 1);
    Rng rng(derive_seed(seed_, "alphas", 0));
    std::vector<std::size_t> idx = rng.subset(cfg_.q, k);
    std::vector<Elem> alphas(idx.begin(), idx.end());
    rng.shuffle(alphas);
    NoSlackInstance inst =
        build_no_slack_pair(f, cfg_.n, cfg_.e, k, alphas, CoordinatePolicy::kPermutation, rng.next());
    SyndromeSet be = enumerate_ball(found->code, cfg_.e, cfg_.budget);
    ViolationCertificate cert = certify_violation(found->code, inst, &be, cfg_.budget);
    const bool ok = cert.holds() && recheck_certificate(found->code, cert, cfg_.budget);
    rec.count_in_ball = cert.count;
    rec.contained_bigball = !cert.excluded_outside;
    rec.verdict = ok ? "certified" : "certificate_failed";
    ++s.histogram[cert.count];
    if (ok) ++s.certified;
    else ++s.certificate_failures;
    if (!rec.contained_bigball && (!s.max_bad_count || cert.count > *s.max_bad_count))
      s.max_bad_count = cert.count;
    keep(std::move(rec), true);
  }

  void run_reduce_demo() {
    const Field& f = *field_;
    LinearCode code = sample_code(cfg_.n, cfg_.r, field_, seed_);
    measure_distance(code);
    const ObjectKind kind = cfg_.demo_kind;
    const std::size_t degree = kind == ObjectKind::kLine ? 1 : cfg_.degree;
    TrialRecord rec = base_record();
    rec.object_kind = object_kind_name(kind);
    ExperimentSummary& s = out_.summary;
    ++s.objects;

    SynthRequest req;
    req.kind = kind;
    req.degree = degree;
    req.target_rank = degree + 2 + index_ % 3;
    const std::uint64_t points =
        kind == ObjectKind::kSpace ? sat_pow(cfg_.q, degree) : cfg_.q;
    req.k = static_cast<std::size_t>(std::min<std::uint64_t>(points, req.target_rank + 3));
    req.e = cfg_.e;
    req.seed = derive_seed(seed_, "synth", 0);
    req.cap = cfg_.budget;
    std::optional<WitnessMatrix> w;
    try {
      w = synth_witness(code, req);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasibleBudget) throw;
    }
    if (!w) {
      ++s.infeasible;
      rec.verdict = "infeasible";
      keep(std::move(rec), true);
      return;
    }
    rec.count_in_ball = w->k();
    bool ok = true;
    try {
      std::optional<std::size_t> d;
      if (distance_ && !distance_->is_infinite()) d = distance_->value();
      BaseParametrization base = reduce_to_base(*w, code, d);
      rec.total_points = base.retained.size();
      for (std::size_t i = 0; i < base.coeffs.size(); ++i)
        ok = ok && code.syndrome(base.coeffs[i]) == w->target.coeffs[i];
      AffineObject param{kind, base.coeffs};
      for (std::size_t j = 0; j < base.retained.size(); ++j)
        ok = ok && evaluate(f, param, base.witness.design.points[j]) == base.witness.x.col(j);
      for (const ReductionCertificate& c : base.chain)
        ok = ok && (c.already_lower() || c.retained.size() >= c.retained_bound);
    } catch (const Error&) {
      ok = false;
    }
    rec.verdict = ok ? "reduced" : "reduction_failed";
    if (ok) ++s.reductions_ok;
    else ++s.reduction_failures;
    ++s.histogram[rec.count_in_ball];
    keep(std::move(rec), true);
  }

  const ExperimentConfig& cfg_;
  std::uint64_t index_;
  std::uint64_t seed_;
  FieldPtr field_;
  std::optional<Threshold> threshold_;
  std::optional<MinDistance> distance_;
  TrialOutput out_;
};

void merge_into(ExperimentSummary& into, const ExperimentSummary& s) {
  into.trials += s.trials;
  into.objects += s.objects;
  into.records += s.records;
  into.contained += s.contained;
  if (s.max_bad_count && (!into.max_bad_count || *s.max_bad_count > *into.max_bad_count))
    into.max_bad_count = s.max_bad_count;
  for (const auto& [k, v] : s.histogram) into.histogram[k] += v;
  into.above_threshold += s.above_threshold;
  into.ca_true += s.ca_true;
  into.ca_false += s.ca_false;
  into.candidates += s.candidates;
  into.threshold_holds += s.threshold_holds;
  into.threshold_not_applicable += s.threshold_not_applicable;
  into.threshold_counterexamples += s.threshold_counterexamples;
  into.threshold_floored_only += s.threshold_floored_only;
  for (const auto& [k, v] : s.rank_excess) into.rank_excess[k] += v;
  into.certified += s.certified;
  into.certificate_failures += s.certificate_failures;
  into.no_code += s.no_code;
  into.reductions_ok += s.reductions_ok;
  into.reduction_failures += s.reduction_failures;
  into.infeasible += s.infeasible;
}

}  // namespace

std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg, std::uint64_t trial_index) {
  return TrialRunner(cfg, trial_index).run().records;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialOutput> outputs(cfg.trials);
  std::vector<std::exception_ptr> errors(cfg.trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next++; i < cfg.trials; i = next++) {
      try {
        outputs[i] = TrialRunner(cfg, i).run();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::min<std::uint64_t>(cfg.jobs, std::max<std::uint64_t>(cfg.trials, 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  ExperimentResult res;
  res.config = cfg;
  res.summary.planner_threshold = threshold_for(cfg) ? threshold_for(cfg)->text : "";
  for (TrialOutput& o : outputs) {
    merge_into(res.summary, o.summary);
    for (TrialRecord& r : o.records) res.records.push_back(std::move(r));
  }
  std::stable_sort(res.records.begin(), res.records.end(),
                   [](const TrialRecord& a, const TrialRecord& b) {
                     return std::tie(a.trial_index, a.object_id) <
                            std::tie(b.trial_index, b.object_id);
                   });
  res.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return res;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json record_json(const TrialRecord& r) {
  return {{"trial_index", r.trial_index},
          {"code_seed", r.code_seed},
          {"q", r.q},
          {"n", r.n},
          {"r", r.r},
          {"d", r.d},
          {"object_kind", r.object_kind},
          {"object_id", r.object_id},
          {"count_in_ball", r.count_in_ball},
          {"total_points", r.total_points},
          {"contained_bigball", r.contained_bigball},
          {"ca_decision", r.ca_decision},
          {"planner_threshold", r.planner_threshold},
          {"verdict", r.verdict}};
}

}  // namespace

std::string records_to_csv(const ExperimentResult& res, const std::string& timestamp) {
  std::ostringstream os;
  os << "# synlab " << mode_name(res.config.mode) << " generated " << timestamp << "\n";
  os << "trial_index,code_seed,q,n,r,d,object_kind,object_id,count_in_ball,total_points,"
        "contained_bigball,ca_decision,planner_threshold,verdict\n";
  for (const TrialRecord& r : res.records) {
    os << r.trial_index << ',' << r.code_seed << ',' << r.q << ',' << r.n << ',' << r.r << ','
       << quoted(r.d) << ',' << quoted(r.object_kind) << ',' << r.object_id << ','
       << r.count_in_ball << ',' << r.total_points << ','
       << (r.contained_bigball ? "true" : "false") << ',' << quoted(r.ca_decision) << ','
       << quoted(r.planner_threshold) << ',' << quoted(r.verdict) << '\n';
  }
  return os.str();
}

nlohmann::json summary_to_json(const ExperimentSummary& s) {
  nlohmann::json j;
  j["trials"] = s.trials;
  j["objects"] = s.objects;
  j["records"] = s.records;
  j["contained"] = s.contained;
  j["max_bad_count"] = s.max_bad_count ? nlohmann::json(*s.max_bad_count) : nlohmann::json();
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [k, v] : s.histogram) hist[std::to_string(k)] = v;
  j["histogram"] = hist;
  j["planner_threshold"] = s.planner_threshold;
  j["above_threshold"] = s.above_threshold;
  j["ca_true"] = s.ca_true;
  j["ca_false"] = s.ca_false;
  j["candidates"] = s.candidates;
  j["threshold_holds"] = s.threshold_holds;
  j["threshold_not_applicable"] = s.threshold_not_applicable;
  j["threshold_counterexamples"] = s.threshold_counterexamples;
  j["threshold_floored_only"] = s.threshold_floored_only;
  nlohmann::json ranks = nlohmann::json::object();
  for (const auto& [k, v] : s.rank_excess) ranks[std::to_string(k)] = v;
  j["rank_excess"] = ranks;
  j["certified"] = s.certified;
  j["certificate_failures"] = s.certificate_failures;
  j["no_code"] = s.no_code;
  j["reductions_ok"] = s.reductions_ok;
  j["reduction_failures"] = s.reduction_failures;
  j["infeasible"] = s.infeasible;
  j["failed"] = s.failed();
  return j;
}

nlohmann::json result_to_json(const ExperimentResult& res, const std::string& timestamp) {
  nlohmann::json j;
  j["generated"] = timestamp;
  j["mode"] = mode_name(res.config.mode);
  j["master_seed"] = res.config.master_seed;
  nlohmann::json recs = nlohmann::json::array();
  for (const TrialRecord& r : res.records) recs.push_back(record_json(r));
  j["records"] = recs;
  j["summary"] = summary_to_json(res.summary);
  return j;
}

std::string current_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace synlab
