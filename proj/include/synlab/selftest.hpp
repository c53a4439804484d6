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

// Built-in invariant suites at fixed seeds. Failures are collected, never
// thrown.

#ifndef SYNLAB_SELFTEST_HPP_
#define SYNLAB_SELFTEST_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace synlab {

enum class SelftestLevel { kQuick, kFull };

SelftestLevel parse_selftest_level(const std::string& s);

struct SelftestOptions {
  SelftestLevel level = SelftestLevel::kQuick;
  std::uint64_t seed = 20260101;
  // Corrupts one multiplication table entry in every field the field suite
  // checks.
  std::optional<std::size_t> corrupt_field_entry;
  std::vector<std::string> only;  // suite names; empty runs all
};

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> messages;  // first few failures
  double ms = 0.0;

  bool ok() const { return failures == 0; }
};

struct SelftestReport {
  SelftestLevel level = SelftestLevel::kQuick;
  std::vector<SuiteResult> suites;
  double ms = 0.0;

  bool ok() const;
  std::vector<std::string> failed_suites() const;
};

const std::vector<std::string>& selftest_suite_names();

SelftestReport run_selftest(const SelftestOptions& opt);

std::string selftest_to_text(const SelftestReport& rep);
nlohmann::json selftest_to_json(const SelftestReport& rep);

}  // namespace synlab

#endif  // SYNLAB_SELFTEST_HPP_
