#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace etube {

/// Outcome of a property check. Verdict is pass iff there are no violations.
struct VerifierReport {
  std::string name;
  std::size_t samples_run = 0;
  std::size_t skipped = 0;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;

  bool passed() const { return violations.empty(); }

  void violation(std::string what) { violations.push_back(std::move(what)); }
  void error(double e) {
    if (e > max_error) max_error = e;
  }
  /// Associative merge used when combining per-chunk reports.
  void merge(const VerifierReport& other);
};

/// Structured text document, one `key: value` per line.
std::string to_text(const VerifierReport& r);
/// One-line summary, e.g. "c_convexity: PASS (200 samples, 0 violations)".
std::string summary_line(const VerifierReport& r);

}  // namespace etube
