#ifndef QWEIL_LIE_HPP
#define QWEIL_LIE_HPP

#include "qweil/rational.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qweil {

/// Index data for g = n_- + k + n_+ splittings and quadratic/isotropic
/// subalgebra markings. Indices refer to the algebra basis after the optional
/// rational base change has been applied.
struct SubalgebraDecomposition {
  std::vector<int> k_indices;
  std::vector<int> n_minus;
  std::vector<int> n_plus;
  std::optional<RatMatrix> basis_change;  // columns = new basis in old coords
};

struct ValidationIssue {
  std::string check;     // antisymmetry | jacobi | b-symmetry | b-invariance | b-nondegeneracy
  std::string witness;   // first violating triple, if any
};

struct ValidationReport {
  bool antisymmetry = true;
  bool jacobi = true;
  bool b_symmetric = true;
  bool b_invariant = true;
  bool b_nondegenerate = true;
  std::vector<ValidationIssue> issues;

  bool structure_ok() const { return antisymmetry && jacobi && b_symmetric && b_invariant; }
  bool all_ok() const { return structure_ok() && b_nondegenerate; }
};

/// Finite-dimensional Lie algebra over Q with structure constants and an
/// invariant symmetric bilinear form, [e_a, e_b] = sum_k c[a][b][k] e_k.
class QuadraticLieAlgebra {
 public:
  QuadraticLieAlgebra(std::string name, int dim);

  const std::string& name() const { return name_; }
  int dim() const { return n_; }

  void set_bracket(int a, int b, int k, const Rational& c);  // antisymmetric completion
  void set_bracket_raw(int a, int b, int k, const Rational& c);  // no completion
  void set_bilinear(int a, int b, const Rational& v);        // symmetric completion

  const Rational& c(int a, int b, int k) const { return c_[(a * n_ + b) * n_ + k]; }
  const RatMatrix& bilinear() const { return B_; }

  RatVector bracket(const RatVector& x, const RatVector& y) const;
  RatVector basis_vector(int a) const;

  /// Matrix of ad_xi = [xi, .] in the basis.
  RatMatrix ad_matrix(const RatVector& xi) const;
  RatMatrix ad_basis(int a) const;

  bool b_nondegenerate() const;
  /// Dual basis matrix G with e^a = sum_b G(a,b) e_b, B(e_a, e^b) = delta.
  RatMatrix dual_basis_matrix() const;

  ValidationReport validate() const;

  /// New algebra with basis e'_a = sum_b M(b,a) e_b (columns of M).
  QuadraticLieAlgebra change_basis(const RatMatrix& M, const std::string& new_name) const;

  /// Restriction to a subalgebra spanned by basis vectors `indices`
  /// (must be bracket-closed).
  QuadraticLieAlgebra subalgebra(const std::vector<int>& indices,
                                 const std::string& sub_name) const;

  std::optional<SubalgebraDecomposition> decomposition;

 private:
  std::string name_;
  int n_;
  std::vector<Rational> c_;
  RatMatrix B_;
};

/// Polynomial xi -> tr(ad_xi^m) as coefficients on dual monomials: the map
/// sends a non-decreasing multi-index (a_1 <= ... <= a_m) to the coefficient
/// of mu^{a_1}...mu^{a_m}. m must be even and >= 2.
std::map<std::vector<int>, Rational> trace_power_polynomial(const QuadraticLieAlgebra& L, int m);

/// Entries of the symbolic matrix power (ad_xi)^k as coordinate polynomials,
/// row-major n x n; each polynomial maps a non-decreasing multi-index to its
/// coefficient.
std::vector<std::map<std::vector<int>, Rational>> symbolic_ad_power(
    const QuadraticLieAlgebra& L, int k);

/// Same, with the ad matrices restricted to reading the trace over a block
/// and xi ranging over the span of `xi_indices` (coefficients on multi-indices
/// into xi_indices-coordinates). Used for the Duflo-Rouviere J_p factor.
std::map<std::vector<int>, Rational> trace_power_polynomial_block(
    const QuadraticLieAlgebra& L, int m, const std::vector<int>& xi_indices,
    const std::vector<int>& trace_indices, const Rational& scale);

/// Double extension of Medina-Revoy: g = s x| (a + s*), with cocycle
/// <omega(a1,a2), xi> = B_a(xi.a1, a2). The action must consist of derivations
/// of `a` preserving B_a (validated). Basis order: s, a, s*.
QuadraticLieAlgebra double_extension(const QuadraticLieAlgebra& a,
                                     const QuadraticLieAlgebra& s,
                                     const std::vector<RatMatrix>& action,
                                     const std::string& name);

/// Quadratic Lie algebra on k + k* from an invariant C in Wedge^3 k:
/// k a subalgebra, [xi, mu] = coadjoint action, [mu, mu'] = C(mu, mu', .).
/// C is given by coefficients on strictly increasing triples (a<b<c).
/// Invariance of C and the Jacobi identity are validated; throws on failure.
/// Basis order: k (0..k-1), k* (k..2k-1). The involution (+1 on k, -1 on k*)
/// satisfies eps*B = -B.
QuadraticLieAlgebra from_cubic(const QuadraticLieAlgebra& k,
                               const std::map<std::array<int, 3>, Rational>& C,
                               const std::string& name);

struct CatalogEntry {
  QuadraticLieAlgebra algebra;
  std::string description;
};

/// Named catalog of validated quadratic Lie algebras with their
/// decompositions where one is used.
std::vector<CatalogEntry> catalog();
const QuadraticLieAlgebra& catalog_algebra(const std::string& name);

/// Lie-algebra specification file (JSON) loader; see README for the schema.
QuadraticLieAlgebra load_lie_json(const std::string& path);

}  // namespace qweil

#endif
