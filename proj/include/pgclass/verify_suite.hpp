#pragma once

// Batch checks over the corpus and over directories of presentation files.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace pgclass {

struct SuiteRecord {
  std::string check;     // e.g. "verdict.gvz"
  std::string group;     // corpus label, file name, or "-"
  int p = 0;
  std::string status;    // "pass", "fail" or "skip"
  std::string citation;  // the result being checked
  std::string detail;    // computed values, or the reason for a skip
};

struct SuiteSummary {
  std::size_t pass = 0, fail = 0, skip = 0;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteRecord> records;

  SuiteSummary summary() const;
  bool passed() const { return summary().fail == 0; }
};

struct SuiteOptions {
  int threads = 1;
  /// Called once per finished task with a short description; calls are serialized.
  std::function<void(const std::string&)> progress;
};

/// Every corpus check for each prime: exact table verification, flatness,
/// expected verdicts, degree and center properties, lifting from quotients,
/// direct products, isoclinism on small groups, and the counting formulas.
/// Entries whose presentations need a larger prime are recorded as skipped.
/// Output order depends only on the arguments.
SuiteResult run_classification_suite(const std::vector<int>& primes, const SuiteOptions& opt = {});

struct CensusExpectations {
  std::optional<std::size_t> total;                // number of files
  std::optional<std::size_t> nested_nonabelian;    // non-abelian nested GVZ-groups
  std::optional<std::size_t> nested_with_abelian;  // nested GVZ-groups, abelian ones included
};

/// Classifies every regular file in dir (sorted by name). Files that fail to
/// parse or classify become failing records; all files must share one order.
SuiteResult run_ingested_census(const std::filesystem::path& dir, const CensusExpectations& expect,
                                const SuiteOptions& opt = {});

/// {suite, records: [{check, group, p, status, citation, detail}], summary: {pass, fail, skip, total}}
nlohmann::ordered_json to_json(const SuiteResult& r);

}  // namespace pgclass
