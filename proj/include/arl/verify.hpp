#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arl/random.hpp"
#include "json.hpp"

namespace arl {

enum class Property {
  KernelBound,
  MittagLeffler,
  NormalForm,
  Phi,
  ChoiceIndependence,
  RightExact,
  Faithful,
  ZlRoundTrip,
  TensorLimit,
  Comparison,
  TorsionFree,
};

const char* to_string(Property p);
/// Generator settings each property uses unless overridden.
GenParams default_params(Property p);

struct PropertyResult {
  Property property;
  std::string status;  // Pass, Fail or Unknown
  std::string recipe;  // how the instance was generated
  nlohmann::ordered_json certificate;
  std::string detail;
};

/// Runs one property on the instance determined by (seed, index). Never throws.
PropertyResult check_property(Property p, std::uint64_t seed, std::uint64_t index, const GenParams& params);
inline PropertyResult check_property(Property p, std::uint64_t seed, std::uint64_t index) {
  return check_property(p, seed, index, default_params(p));
}

/// Smaller failing parameters: fewer levels first, then smaller exponents.
GenParams shrink_failure(Property p, std::uint64_t seed, std::uint64_t index, GenParams params);

const std::vector<std::string>& suite_names();
/// Throws Usage for an unknown suite.
const std::vector<Property>& suite_properties(const std::string& suite);

struct CaseReport {
  std::uint64_t index = 0;
  std::string status;
  std::vector<PropertyResult> results;
  nlohmann::ordered_json witness;  // minimized failure, null when passing
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseReport> cases;
  std::size_t passed = 0, failed = 0, unknown = 0;
};

CaseReport run_case(const std::string& suite, std::uint64_t seed, std::uint64_t index);
/// Throws Usage when cases is 0.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::size_t cases, unsigned threads = 1);

/// JSON Lines: header, one line per case in index order, summary. Deterministic.
std::string render_report(const SuiteReport& report);

struct ReplayOutcome {
  std::size_t checked = 0;
  std::size_t mismatched = 0;
  std::vector<std::string> messages;
  bool ok() const { return checked > 0 && mismatched == 0; }
};

/// Regenerates every case of a rendered report and compares it with the recorded line.
ReplayOutcome replay_report(const std::string& text);

}  // namespace arl
