#ifndef QWEIL_RELATIVE_HPP
#define QWEIL_RELATIVE_HPP

#include "qweil/gda.hpp"

namespace qweil {

struct RelCheck {
  std::string name;
  bool ok = false;
  std::string witness;
};

/// g with a quadratic subalgebra k (B|k nondegenerate) and p = k-orthogonal,
/// index-aligned after the decomposition's optional base change.
/// Basis indices of k within g are k_idx(); the subalgebra carries its own
/// contexts over the restricted structure constants and form.
class RelativePair {
 public:
  explicit RelativePair(const QuadraticLieAlgebra& L);
  virtual ~RelativePair() = default;

  const QuadraticLieAlgebra& lie_g() const { return Lg_; }
  const QuadraticLieAlgebra& lie_k() const { return Lk_; }
  const NCWeilContext& G() const { return *G_; }
  const NCWeilContext& K() const { return *K_; }
  const std::vector<int>& k_idx() const { return k_idx_; }
  const std::vector<int>& p_idx() const { return p_idx_; }

  /// gamma^p(zeta) = (p-part of gamma) for zeta given in g-coordinates.
  Element gamma_p(const RatVector& zeta_g) const;

  /// The k-da homomorphism NCW(k) -> NCW(g): cl -> cl,
  /// hat_k -> hat_g + gamma^p.
  Element embed_ncweil(const Element& x) const;

  /// chi: U(k) -> NCW(g), the restriction of embed_ncweil to the horizontal
  /// subalgebra; image lies in U(g) (x) Cl(p).
  Element chi(const Element& z_uk) const;

  /// D_{g,k} = D_g - D_k.
  const Element& relative_dirac() const { return rel_dirac_; }

  /// x supported in U(g) (x) Cl(p), k-invariant, k-horizontal.
  bool is_k_basic_clp(const Element& x) const;

  std::vector<RelCheck> relative_dirac_square_check() const;
  RelCheck vogan_cocycle_check(const Element& z_uk) const;

 protected:
  QuadraticLieAlgebra Lg_;
  QuadraticLieAlgebra Lk_;
  std::vector<int> k_idx_, p_idx_;
  std::vector<int> pos_in_k_;  // g-index -> k-position or -1
  std::unique_ptr<NCWeilContext> G_, K_;
  Element rel_dirac_;
};

/// Triangular decomposition g = n_- + k + n_+ with isotropic k-invariant
/// subalgebras n_pm; carries the Harish-Chandra projections kappa_U,
/// kappa_Cl, kappa_W in the adapted normal form and the tau-shift.
class TriangularPair : public RelativePair {
 public:
  explicit TriangularPair(const QuadraticLieAlgebra& L);

  const std::vector<int>& n_minus() const { return n_minus_; }
  const std::vector<int>& n_plus() const { return n_plus_; }

  Element kappa_U(const Element& x_ug) const;    // U(g) -> U(k)
  Element kappa_Cl(const Element& x_clg) const;  // Cl(g) -> Cl(k)
  Element kappa_W(const Element& x_ncwg) const;  // NCW(g) -> NCW(k)

  /// tau(zeta) = zeta - 1/2 Tr_{n_+}(ad_zeta), extended as an algebra
  /// automorphism of U(k); tau_inverse is the opposite shift.
  Element tau(const Element& z_uk) const;
  Element tau_inverse(const Element& z_uk) const;

  /// (i) kappa_W = (tau o kappa_U) (x) kappa_Cl on monomials of degree <= cap;
  /// (ii) kappa_W(D_g) = D_k; (iii) the kappas are k-ds homomorphisms;
  /// (iv) tau o kappa_U o duflo_g = duflo_k o kappa_S on invariants of degree
  /// <= cap, with the unshifted kappa_U as a negative control.
  std::vector<RelCheck> hc_diagram_checks(int cap) const;

  /// Coordinate projection S(g) -> S(k).
  Element kappa_S(const Element& p_sg) const;

 private:
  Element adapted_to_uk(const Element& x) const;
  Element adapted_to_clk(const Element& x) const;

  std::vector<int> n_minus_, n_plus_;
  std::vector<uint16_t> u_pos_;    // g-index -> adapted U generator id
  std::vector<uint16_t> cl_pos_;   // g-index -> adapted Cl generator id
  std::vector<uint16_t> wbar_pos_, wcl_pos_;  // g-index -> adapted Koszul ids
  std::vector<int> region_;        // g-index -> 0 (n_-), 1 (k), 2 (n_+)
  std::unique_ptr<Algebra> adU_;   // adapted-order U(g)
  std::unique_ptr<Algebra> adCl_;  // adapted-order Cl(g)
  std::unique_ptr<Algebra> adW_;   // adapted-order Koszul presentation of NCW(g)
  std::vector<Rational> tau_shift_;  // 1/2 Tr_{n_+} ad_{e_k}
};

/// Symmetric pair with eps*B = -B: k and p are both isotropic, B pairs them;
/// carries the quotient U(g)/U(g) k^f and the Duflo-Rouviere map.
class SymmetricPair {
 public:
  explicit SymmetricPair(const QuadraticLieAlgebra& L);

  const QuadraticLieAlgebra& lie_g() const { return Lg_; }
  const NCWeilContext& G() const { return *G_; }
  const std::vector<int>& k_idx() const { return k_idx_; }
  const std::vector<int>& p_idx() const { return p_idx_; }
  const Algebra& adapted_u() const { return *adU_; }
  Rational f_character(int k_pos) const { return f_[size_t(k_pos)]; }

  /// U(g) element in the adapted (p before k) PBW order.
  Element to_adapted(const Element& x_ug) const;
  /// Rewrites every trailing k-factor xi to -f(xi); result supported on
  /// p-only monomials of the adapted order.
  Element quotient_reduce(const Element& x) const;
  Element quotient_reduce_ug(const Element& x_ug) const {
    return quotient_reduce(to_adapted(x_ug));
  }

  /// S(p) elements are S(g) elements supported on p-indices.
  bool is_sp(const Element& p_sg) const;
  bool k_invariant_sym(const Element& p_sg) const;
  bool k_invariant_quotient(const Element& reduced) const;
  std::vector<Element> invariant_sp_basis(int degree) const;

  /// J_p^{1/2} operator from tr((2 ad)^{2m}|_p) block traces, then PBW
  /// symmetrization and quotient reduction.
  Element jp_half(int M) const;  // dual series on p-coordinates (S(g)* carrier)
  Element rouviere_map(const Element& p_sg, int M) const;

  std::vector<RelCheck> rouviere_multiplicativity_check(int cap) const;
  RelCheck ideal_kill_check(int maxdeg) const;

 private:
  QuadraticLieAlgebra Lg_;
  std::vector<int> k_idx_, p_idx_;
  std::vector<uint16_t> u_pos_;  // g-index -> adapted generator id
  std::vector<Rational> f_;      // f(e_k) = 1/2 tr_k(ad_{e_k})
  std::unique_ptr<NCWeilContext> G_;
  std::unique_ptr<Algebra> adU_;
};

/// Quotient complex NCW(g) / NCW(g) k-tilde for an isotropic subalgebra k
/// with co-isotropic invariant complement p, with the induced differential
/// [D, .] and the Chern-Weil cocycle check through the connection
/// k* = p-perp c p.
class IsotropicQuotient {
 public:
  IsotropicQuotient(const QuadraticLieAlgebra& L, std::vector<int> k_indices);

  const NCWeilContext& G() const { return *G_; }
  /// class representative: adapted Koszul word with no k-generator
  Element project(const Element& x_adw) const;
  Element from_ncw(const Element& x_ncw) const;  // NCW -> adapted Koszul
  Element d_quot(const Element& x) const;

  std::vector<RelCheck> complex_checks(int cap) const;

 private:
  QuadraticLieAlgebra Lg_;
  std::vector<int> k_idx_, p_idx_, m_idx_;  // m c p only when index-aligned
  std::vector<uint16_t> wbar_pos_, wcl_pos_;
  std::vector<bool> is_k_;
  std::unique_ptr<NCWeilContext> G_;
  std::unique_ptr<Algebra> adW_;
  std::vector<RatVector> theta_;  // connection images in g-coordinates
  Element dirac_adapted_;
};

}  // namespace qweil

#endif
