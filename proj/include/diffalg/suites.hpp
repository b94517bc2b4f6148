#pragma once

// Named verification suites run by `diffalg verify`. Each assertion carries a
// short anchor naming the statement it checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace diffalg {

struct SuiteAssertion {
  std::string anchor;
  bool passed = false;
  std::string detail;
};

/// A known mismatch between a stated value and the computed one that the
/// suite reports without failing.
struct Discrepancy {
  std::string anchor;
  std::string stated;
  std::string computed;
};

struct SuiteReport {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  double seconds = 0;
  std::vector<SuiteAssertion> assertions;
  std::vector<Discrepancy> discrepancies;
  /// Smallest failing input found by a randomized assertion.
  std::optional<std::string> counterexample;

  bool passed() const;
};

struct SuiteOptions {
  std::optional<int> trials;  ///< suite default when unset
  std::uint64_t seed = 7;
};

const std::vector<std::string>& suite_names();
/// Errc::ParseError for an unknown suite name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

nlohmann::json to_json(const SuiteReport& report);
std::string to_text(const SuiteReport& report);

}  // namespace diffalg
