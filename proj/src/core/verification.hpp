#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/json_io.hpp"

namespace svf {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

enum class CheckStatus { Pass, Fail, Skipped };

const char* to_string(CheckStatus status);

struct CheckRecord {
  std::string id;
  CheckStatus status = CheckStatus::Pass;
  std::string reference;    // the property being checked
  std::string detail;       // short summary of what was measured
  Json witness;             // null unless FAIL
  std::string skip_reason;  // empty unless SKIPPED
  double wall_ms = 0;
};

struct VerificationReport {
  std::string suite;
  ModelSpec spec;
  std::uint64_t seed = kDefaultSeed;
  std::vector<CheckRecord> checks;

  bool any_fail() const;
};

/// algebra, ideals, filtration, automorphisms, exceptional, all
const std::vector<std::string>& suite_names();

VerificationReport run_suite(const LieModel& m, const std::string& suite,
                             std::uint64_t seed = kDefaultSeed);

Json to_json(const VerificationReport& report);
VerificationReport report_from_json(const Json& j);

}  // namespace svf
