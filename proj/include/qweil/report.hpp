#ifndef QWEIL_REPORT_HPP
#define QWEIL_REPORT_HPP

#include <string>
#include <vector>

namespace qweil {

struct CheckResult {
  std::string name;
  std::string paper_anchor;
  bool pass = false;
  std::string witness;  // offending input and both sides, on failure
  double wall_ms = 0.0;
};

struct Report {
  std::string algebra;
  std::string command;
  std::vector<CheckResult> checks;  // assembled in name order
  double seconds = 0.0;

  int passed() const;
  int failed() const;
  void sort_by_name();

  /// Machine format. Timing fields are deliberately absent so identical
  /// configurations produce byte-identical output.
  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace qweil

#endif
