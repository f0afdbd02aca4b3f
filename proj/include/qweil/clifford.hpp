#ifndef QWEIL_CLIFFORD_HPP
#define QWEIL_CLIFFORD_HPP

#include "qweil/algebra.hpp"
#include "qweil/lie.hpp"

#include <memory>

namespace qweil {

/// Exterior algebra on n odd generators (free super-commutative, odd part).
std::unique_ptr<Algebra> make_exterior_algebra(int n, const std::string& tag);

/// Clifford algebra of a symmetric bilinear form: generator relation
/// x_a x_b + x_b x_a = B(a,b), so x_a x_a = B(a,a)/2.
std::unique_ptr<Algebra> make_clifford_algebra(const RatMatrix& B, const std::string& tag);

/// Linear element sum_a v(a) x_a.
Element vector_element(const Algebra& A, const RatVector& v, int offset = 0);

/// lambda(M) = 1/2 sum_{ij} M(i,j) x_i ^ x_j for a skew matrix M.
Element wedge_from_skew(const Algebra& ext, const RatMatrix& M);

/// Finite exponential of an even element of an exterior-type algebra.
Element ext_exp(const Algebra& ext, const Element& x);

/// Contraction of a form-side exterior element against x, with pairing
/// P(a, b) between form-side generator a and x-side generator b;
/// iota(alpha ^ beta) = iota(alpha) o iota(beta), iota of a generator is the
/// odd derivation x_b -> P(a, b).
Element contract(const Element& alpha, const Element& x, const RatMatrix& P);

/// Contraction by a single vector mu on the form side: iota_{sum mu_a x^a}.
Element contract_vector(const RatVector& mu, const Element& x, const RatMatrix& P);

struct ContractExpResult {
  Rational scalar;    // det^{1/2}(I + A B), fixed by the degree-0 coefficient
  Element quadratic;  // lambda(B (I + A B)^{-1})
};

/// Computes iota(exp lambda(A)) exp lambda(B) literally in the exterior
/// algebra, extracts the degree-0 part, and verifies the identity
/// iota(exp lambda(A)) exp lambda(B) = det^{1/2}(I+AB) exp lambda(B(I+AB)^{-1})
/// exactly. A: V -> V*, Bm: V* -> V, both skew; throws on singular I + A Bm.
ContractExpResult contract_exponentials(const RatMatrix& A, const RatMatrix& Bm);

/// Exterior and Clifford algebras of a quadratic Lie algebra, with the
/// Chevalley quantization pair and the gamma and lambda maps.
class CliffordContext {
 public:
  explicit CliffordContext(const QuadraticLieAlgebra& L);

  const QuadraticLieAlgebra& lie() const { return *L_; }
  const Algebra& ext() const { return *ext_; }
  const Algebra& cl() const { return *cl_; }

  Element cl_vector(const RatVector& v) const { return vector_element(*cl_, v); }
  Element ext_vector(const RatVector& v) const { return vector_element(*ext_, v); }

  /// Chevalley quantization: symmetrization of each wedge monomial into Cl.
  Element quantize(const Element& x) const;
  /// Inverse of quantize, by degree-descending triangular elimination.
  Element symbol(const Element& x) const;

  /// gamma(zeta) = 1/2 sum_a [zeta, e_a] e^a in Cl; requires nondegenerate B.
  Element gamma(const RatVector& zeta) const;
  Element gamma_basis(int a) const;
  /// Partial sum over a subset of basis indices (gamma^p for subalgebra work).
  Element gamma_partial(const RatVector& zeta, const std::vector<int>& indices) const;

  /// lambda(zeta) = 1/2 sum_a [zeta, e_a] ^ e^a in the exterior algebra,
  /// so that quantize(lambda(zeta)) = gamma(zeta).
  Element lambda(const RatVector& zeta) const;

  /// Adjoint-action derivation L_zeta on Cl (or ext), extending ad_zeta.
  Element adjoint_cl(const RatVector& zeta, const Element& x) const;
  Element adjoint_ext(const RatVector& zeta, const Element& x) const;

 private:
  const QuadraticLieAlgebra* L_;
  std::unique_ptr<Algebra> ext_;
  std::unique_ptr<Algebra> cl_;
  RatMatrix dual_;  // B^{-1} when nondegenerate
  bool has_dual_;
};

/// The spec-level lambda over g*: the degree-2 form with
/// iota_xi lambda(mu) = -ad*_xi mu, (ad*_xi mu)(zeta) = mu([xi, zeta]).
/// Lives in an exterior algebra over dual-basis generators.
Element lambda_dual(const QuadraticLieAlgebra& L, const Algebra& ext_dual,
                    const RatVector& mu);

/// (ad*_xi mu) coordinates in the dual basis: value mu([xi, e_b]) at slot b.
RatVector coad_paper(const QuadraticLieAlgebra& L, const RatVector& xi, const RatVector& mu);

}  // namespace qweil

#endif
