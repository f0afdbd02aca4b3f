#ifndef QWEIL_ENVELOPING_HPP
#define QWEIL_ENVELOPING_HPP

#include "qweil/algebra.hpp"
#include "qweil/lie.hpp"
#include "qweil/series.hpp"

#include <memory>

namespace qweil {

/// Degree-truncated polynomial on g (element of the completed dual symmetric
/// algebra), acting on S(g) as an infinite-order differential operator.
struct TruncatedDualSeries {
  Element poly;  // in the dual coordinate algebra
  int order = 0;
};

/// Enveloping algebra U(g) with PBW normal form, the symmetric algebra S(g),
/// dual-series operators, Duflo factor and Duflo map, Casimir.
class EnvelopingContext {
 public:
  explicit EnvelopingContext(const QuadraticLieAlgebra& L);

  const QuadraticLieAlgebra& lie() const { return *L_; }
  const Algebra& uea() const { return *uea_; }
  const Algebra& sym() const { return *sym_; }
  const Algebra& dual() const { return *dual_; }

  Element u_vector(const RatVector& v) const { return lin(*uea_, v); }
  Element sym_vector(const RatVector& v) const { return lin(*sym_, v); }

  /// PBW symmetrization S(g) -> U(g) (plain 1/k! average, all factors even).
  Element sym_to_uea(const Element& p) const;

  /// F-hat(p): each dual monomial mu_{a_1}...mu_{a_m} acts as the composition
  /// of coordinate derivations.
  Element apply_dual_operator(const Element& F, const Element& p) const;
  Element apply_dual_operator(const TruncatedDualSeries& F, const Element& p) const {
    return apply_dual_operator(F.poly, p);
  }

  Element dual_from_poly(const std::map<std::vector<int>, Rational>& poly) const;

  /// J^{1/2} truncated at degree M: exp(1/2 sum b_{2k} tr(ad^{2k})).
  TruncatedDualSeries duflo_factor(int M) const;

  /// Duflo map: sym_U o J^{1/2}-hat, truncation M >= deg p.
  Element duflo_map(const Element& p, int M) const;

  /// Cas = sum_a e_a e^a in PBW form and its adjoint trace
  /// sum_a tr(ad_{e_a} ad_{e^a}); requires nondegenerate B.
  Element casimir() const;
  Rational casimir_trace() const;

  /// Derivation extension of ad_zeta.
  Element adjoint_uea(const RatVector& zeta, const Element& x) const;
  Element adjoint_sym(const RatVector& zeta, const Element& x) const;
  bool invariant_uea(const Element& x) const;
  bool invariant_sym(const Element& x) const;

  /// Basis of g-invariant polynomials of the exact degree, by exact nullspace.
  std::vector<Element> invariant_sym_basis(int degree) const;

 private:
  static Element lin(const Algebra& A, const RatVector& v);
  Element adjoint_on(const Algebra& A, const RatVector& zeta, const Element& x) const;

  const QuadraticLieAlgebra* L_;
  std::unique_ptr<Algebra> uea_;
  std::unique_ptr<Algebra> sym_;
  std::unique_ptr<Algebra> dual_;
};

/// Truncated multivariate exponential of a dual/symmetric polynomial with
/// zero constant term; keeps words of length <= M.
Element poly_exp_truncated(const Algebra& A, const Element& x, int M);

Element degree_truncate(const Element& x, int M);

}  // namespace qweil

#endif
