// qweil: exact computer algebra for quadratic Lie algebras - Weil algebras,
// quantization maps, cubic Dirac operators, Harish-Chandra projections and
// the Duflo-Rouviere map, with machine-checkable verification suites.
#include <CLI11.hpp>

#include "qweil/verify.hpp"

#include <iostream>

using namespace qweil;

namespace {

struct Options {
  std::string input;
  std::string catalog_name = "sl2";
  std::string format = "text";
  int max_degree = 4;
  int jobs = 1;
};

QuadraticLieAlgebra load_algebra(const Options& opt) {
  if (!opt.input.empty()) {
    auto L = load_lie_json(opt.input);
    auto rep = L.validate();
    if (!rep.structure_ok()) {
      std::string what = "input failed validation: " + rep.issues[0].check + " at " +
                         rep.issues[0].witness;
      throw std::invalid_argument(what);
    }
    return L;
  }
  return catalog_algebra(opt.catalog_name);
}

int emit(const Report& rep, const Options& opt, const std::string& preamble = "") {
  if (opt.format == "json") {
    std::cout << rep.to_json();
  } else {
    if (!preamble.empty()) std::cout << preamble;
    std::cout << rep.to_text();
  }
  if (rep.failed() > 0) {
    for (const auto& c : rep.checks)
      if (!c.pass) {
        std::cerr << "first failing check: " << c.name << " [" << c.paper_anchor
                  << "]\n";
        break;
      }
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computer algebra for quadratic Lie algebras"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--input", opt.input, "Lie-algebra specification file (JSON)");
  app.add_option("--catalog", opt.catalog_name, "catalog algebra name (default sl2)");
  app.add_option("--max-degree", opt.max_degree, "truncation degree for checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", opt.jobs, "run independent checks concurrently")
      ->check(CLI::PositiveNumber);

  auto* cmd_validate = app.add_subcommand("validate", "structure and form checks");
  int duflo_degree = 4;
  auto* cmd_duflo = app.add_subcommand("duflo", "Duflo map checks on invariants");
  cmd_duflo->add_option("degree", duflo_degree, "total degree cap")->required(false);
  auto* cmd_dirac = app.add_subcommand("dirac", "cubic Dirac element and its brackets");
  auto* cmd_dirac2 = app.add_subcommand("dirac-square", "Prop 5.4 square identity");
  std::string quantize_arg;
  auto* cmd_quantize =
      app.add_subcommand("quantize", "quantize a Weil monomial (tokens x0 bx1 hx2)");
  cmd_quantize->add_option("monomial", quantize_arg, "whitespace-separated generators")
      ->required();
  auto* cmd_hc = app.add_subcommand("hc", "Harish-Chandra projection checks");
  auto* cmd_vogan = app.add_subcommand("vogan", "Vogan cocycle checks");
  auto* cmd_rouviere = app.add_subcommand("rouviere", "Duflo-Rouviere checks");
  auto* cmd_rigidity = app.add_subcommand("rigidity", "Theorem 3.1 homotopy checks");
  std::string suite = "all";
  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  cmd_verify->add_option("--suite", suite, "core | weil | relative | all")
      ->check(CLI::IsMember({"core", "weil", "relative", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    QuadraticLieAlgebra L = load_algebra(opt);
    std::string preamble;
    Report rep;
    if (cmd_validate->parsed()) {
      rep = run_checks(L.name(), "validate", checks_validate(L), opt.jobs);
    } else if (cmd_duflo->parsed()) {
      rep = run_checks(L.name(), "duflo", checks_duflo(L, duflo_degree), opt.jobs);
    } else if (cmd_dirac->parsed()) {
      if (L.b_nondegenerate()) {
        NCWeilContext N(L);
        preamble = "D = " + N.dirac().str() + "\n";
      }
      rep = run_checks(L.name(), "dirac", checks_dirac(L), opt.jobs);
    } else if (cmd_dirac2->parsed()) {
      {
        NCWeilContext N(L);
        preamble = "D^2 = " + N.ncw().mul(N.dirac(), N.dirac()).str() +
                   "\ntrace term tr(Cas)/48 = " +
                   rat_to_string(N.env().casimir_trace() / 48) + "\n";
      }
      rep = run_checks(L.name(), "dirac-square", checks_dirac_square(L), opt.jobs);
    } else if (cmd_quantize->parsed()) {
      NCWeilContext N(L);
      Element w = parse_weil_monomial(N.weil(), quantize_arg);
      Element q = N.quantize(w);
      preamble = "Q(" + quantize_arg + ") = " + q.str() + "\n";
      std::vector<CheckSpec> specs;
      specs.push_back({"quantize-chain-on-input", "Lemma 4.2",
                       [&N, w]() -> CheckOutcome {
                         Element lhs = (w.algebra() == &N.weil().curv())
                                           ? N.quantize(N.weil().d_curv(w))
                                           : N.quantize(N.weil().d_kosz(w));
                         Element rhs = N.d(N.quantize(w));
                         if (lhs == rhs) return {true, ""};
                         return {false, "Q(dw) != d Q(w)"};
                       }});
      rep = run_checks(L.name(), "quantize", std::move(specs), 1);
    } else if (cmd_hc->parsed()) {
      auto specs = checks_hc(L, opt.max_degree);
      if (specs.empty())
        throw std::invalid_argument("hc requires a triangular decomposition");
      rep = run_checks(L.name(), "hc", std::move(specs), opt.jobs);
    } else if (cmd_vogan->parsed()) {
      auto specs = checks_vogan(L);
      if (specs.empty())
        throw std::invalid_argument("vogan requires a quadratic subalgebra");
      rep = run_checks(L.name(), "vogan", std::move(specs), opt.jobs);
    } else if (cmd_rouviere->parsed()) {
      auto specs = checks_rouviere(L, opt.max_degree);
      if (specs.empty())
        throw std::invalid_argument("rouviere requires a symmetric pair (eps*B = -B)");
      rep = run_checks(L.name(), "rouviere", std::move(specs), opt.jobs);
    } else if (cmd_rigidity->parsed()) {
      rep = run_checks(L.name(), "rigidity", checks_rigidity(L, opt.max_degree),
                       opt.jobs);
    } else if (cmd_verify->parsed()) {
      VerifyConfig cfg{L, opt.max_degree, opt.jobs, suite};
      rep = run_verify(cfg);
    }
    return emit(rep, opt, preamble);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
