#ifndef QWEIL_VERIFY_HPP
#define QWEIL_VERIFY_HPP

#include "qweil/relative.hpp"
#include "qweil/report.hpp"

#include <functional>

namespace qweil {

struct CheckOutcome {
  bool pass = false;
  std::string witness;
};

struct CheckSpec {
  std::string name;
  std::string paper_anchor;
  std::function<CheckOutcome()> run;
};

struct VerifyConfig {
  QuadraticLieAlgebra algebra;
  int max_degree = 4;
  int jobs = 1;
  std::string suite = "all";  // core | weil | relative | all
};

/// Check families; every check is self-contained and safe to run concurrently.
std::vector<CheckSpec> checks_core(const QuadraticLieAlgebra& L, int max_degree);
std::vector<CheckSpec> checks_weil(const QuadraticLieAlgebra& L, int max_degree);
std::vector<CheckSpec> checks_relative(const QuadraticLieAlgebra& L, int max_degree);

/// Runs the checks (optionally in parallel) and assembles a name-ordered report.
Report run_checks(const std::string& algebra_name, const std::string& command,
                  std::vector<CheckSpec> specs, int jobs);

Report run_verify(const VerifyConfig& config);

/// Single named checks used by the per-topic CLI commands.
std::vector<CheckSpec> checks_validate(const QuadraticLieAlgebra& L);
std::vector<CheckSpec> checks_duflo(const QuadraticLieAlgebra& L, int degree);
std::vector<CheckSpec> checks_dirac(const QuadraticLieAlgebra& L);
std::vector<CheckSpec> checks_dirac_square(const QuadraticLieAlgebra& L);
std::vector<CheckSpec> checks_hc(const QuadraticLieAlgebra& L, int cap);
std::vector<CheckSpec> checks_vogan(const QuadraticLieAlgebra& L);
std::vector<CheckSpec> checks_rouviere(const QuadraticLieAlgebra& L, int cap);
std::vector<CheckSpec> checks_rigidity(const QuadraticLieAlgebra& L, int cap);

/// Parses a Weil-algebra monomial from whitespace-separated tokens
/// x<i> (odd), bx<i> (Koszul even), hx<i> (curvature even); bx and hx may not
/// be mixed in one monomial. Returns the element in the matching presentation.
Element parse_weil_monomial(const WeilContext& W, const std::string& text);

}  // namespace qweil

#endif
