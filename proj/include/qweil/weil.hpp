#ifndef QWEIL_WEIL_HPP
#define QWEIL_WEIL_HPP

#include "qweil/algebra.hpp"
#include "qweil/clifford.hpp"
#include "qweil/enveloping.hpp"
#include "qweil/lie.hpp"

#include <memory>

namespace qweil {

/// Tensor square of an algebra: generators of the left leg keep their ids,
/// right-leg ids are offset; legs super-commute with zero bracket.
std::unique_ptr<Algebra> make_tensor_algebra(const Algebra& A, const Algebra& B,
                                             const std::string& tag);

/// The commutative Weil algebra of a quadratic Lie algebra, in both the
/// curvature presentation (generators zeta-hat even, zeta odd) and the Koszul
/// presentation (zeta-bar even, zeta odd). Generators are indexed by the
/// basis of g under the B-identification of g* with g; even generators occupy
/// ids 0..n-1, odd generators ids n..2n-1.
class WeilContext {
 public:
  explicit WeilContext(const QuadraticLieAlgebra& L);

  const QuadraticLieAlgebra& lie() const { return *L_; }
  int dim() const { return n_; }
  const Algebra& curv() const { return *curv_; }
  const Algebra& kosz() const { return *kosz_; }

  uint16_t even_id(int a) const { return uint16_t(a); }
  uint16_t odd_id(int a) const { return uint16_t(n_ + a); }

  Element even_vector(const Algebra& A, const RatVector& v) const;
  Element odd_vector(const Algebra& A, const RatVector& v) const;

  /// lambda(e_a) = 1/2 sum_b [e_a, e_b] ^ e^b as a word in the odd generators.
  Element lambda_odd(const Algebra& A, int a) const;
  Element lambda_odd(const Algebra& A, const RatVector& zeta) const;

  /// Exact mutually inverse presentation changes: hat = bar - lambda.
  Element curv_to_kosz(const Element& x) const;
  Element kosz_to_curv(const Element& x) const;

  // g-da operators, curvature presentation:
  //   iota_xi hat = 0, iota_xi zeta = B(xi, zeta), d zeta = hat + lambda(zeta)
  Element d_curv(const Element& x) const;
  Element iota_curv(const RatVector& xi, const Element& x) const;
  Element lie_curv(const RatVector& xi, const Element& x) const;

  // g-da operators, Koszul presentation: d zeta = zeta-bar, d zeta-bar = 0;
  // deformed contraction iota^t: bar -> [xi, zeta] (odd), zeta -> t B(xi, zeta)
  Element d_kosz(const Element& x) const;
  Element iota_kosz(const RatVector& xi, const Element& x) const {
    return iota_kosz_t(xi, Rational(1), x);
  }
  Element iota_kosz_t(const RatVector& xi, const Rational& t, const Element& x) const;
  Element lie_kosz(const RatVector& xi, const Element& x) const;

  bool is_horizontal_curv(const Element& x) const;  // no odd generators
  bool is_invariant(const Element& x, bool koszul) const;

  /// Odd operator s with s(bar) = zeta, s(zeta) = 0, extended as derivation.
  Element koszul_s(const Element& x) const;
  /// Standard homotopy h = s / (word length) off the unit: [d, h] = id - i pi.
  Element koszul_homotopy(const Element& x) const;

  /// sum_a hat_a hat^a, the quadratic Casimir polynomial inside W (curvature).
  Element weil_casimir() const;
  /// h(sum hat hat) computed through the homotopy operator (Koszul coords).
  Element transgression_via_h() const;
  /// Closed formula sum bar_a zeta^a - (2/3) sum lambda(e_a) zeta^a.
  Element transgression_closed() const;

  // Hopf structure on the Koszul presentation
  const Algebra& tensor_sq() const { return *wxw_; }
  Element coproduct(const Element& kosz_elem) const;
  Rational counit(const Element& kosz_elem) const { return kosz_elem.scalar_part(); }
  Element tensor_emb0(const Element& kosz_elem) const;
  Element tensor_emb1(const Element& kosz_elem) const;
  Element tensor_d(const Element& x) const;  // d(x)1 + 1(x)d on W (x) W
  Element tensor_counit0(const Element& x) const;  // (pi (x) id), back into kosz

  std::vector<Word> kosz_monomials_up_to(int cap) const;

 private:
  Derivation make_d_curv() const;

  const QuadraticLieAlgebra* L_;
  int n_;
  RatMatrix dual_;
  std::unique_ptr<Algebra> curv_;
  std::unique_ptr<Algebra> kosz_;
  std::unique_ptr<Algebra> wxw_;
  std::unique_ptr<Derivation> dcurv_;
};

}  // namespace qweil

#endif
