#include "etube/report.hpp"

#include <algorithm>
#include <sstream>

#include "etube/format.hpp"

namespace etube {

void VerifierReport::merge(const VerifierReport& other) {
  samples_run += other.samples_run;
  skipped += other.skipped;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  max_error = std::max(max_error, other.max_error);
  tolerance = std::max(tolerance, other.tolerance);
}

std::string to_text(const VerifierReport& r) {
  std::ostringstream out;
  out << "name: " << r.name << "\n";
  out << "verdict: " << (r.passed() ? "pass" : "fail") << "\n";
  out << "samples_run: " << r.samples_run << "\n";
  out << "skipped: " << r.skipped << "\n";
  out << "violations: " << r.violations.size() << "\n";
  out << "max_error: " << format_double(r.max_error) << "\n";
  out << "tolerance: " << format_double(r.tolerance) << "\n";
  out << "seed: " << r.seed << "\n";
  for (const auto& v : r.violations) out << "violation: " << v << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  return out.str();
}

std::string summary_line(const VerifierReport& r) {
  std::ostringstream out;
  out << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.samples_run << " samples, "
      << r.violations.size() << " violations";
  if (r.skipped > 0) out << ", " << r.skipped << " skipped";
  out << ")";
  return out.str();
}

}  // namespace etube
