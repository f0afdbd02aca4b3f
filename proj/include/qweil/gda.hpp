#ifndef QWEIL_GDA_HPP
#define QWEIL_GDA_HPP

#include "qweil/ncweil.hpp"

#include <map>
#include <memory>

namespace qweil {

/// A g-differential algebra: unit, product (through algebra()), differential,
/// contractions and Lie derivatives indexed by the basis of g, and optionally
/// a connection.
class GDA {
 public:
  virtual ~GDA() = default;
  virtual const Algebra& algebra() const = 0;
  virtual int lie_dim() const = 0;
  virtual Element d(const Element& x) const = 0;
  virtual Element iota(int a, const Element& x) const = 0;
  virtual Element lie_der(int a, const Element& x) const = 0;
  /// Connection image of the B-identified generator a; empty when absent.
  virtual Element theta(int a) const = 0;
  Element unit() const { return algebra().unit(); }
};

/// W(g) in the Koszul presentation with the tautological connection.
class WeilGDA : public GDA {
 public:
  explicit WeilGDA(const WeilContext& W) : W_(&W) {}
  const Algebra& algebra() const override { return W_->kosz(); }
  int lie_dim() const override { return W_->dim(); }
  Element d(const Element& x) const override { return W_->d_kosz(x); }
  Element iota(int a, const Element& x) const override {
    return W_->iota_kosz(W_->lie().basis_vector(a), x);
  }
  Element lie_der(int a, const Element& x) const override {
    return W_->lie_kosz(W_->lie().basis_vector(a), x);
  }
  Element theta(int a) const override { return W_->kosz().generator(W_->odd_id(a)); }

 private:
  const WeilContext* W_;
};

/// NCW(g) with its canonical connection (the odd Clifford generators).
class NCWeilGDA : public GDA {
 public:
  explicit NCWeilGDA(const NCWeilContext& N) : N_(&N) {}
  const Algebra& algebra() const override { return N_->ncw(); }
  int lie_dim() const override { return N_->dim(); }
  Element d(const Element& x) const override { return N_->d(x); }
  Element iota(int a, const Element& x) const override {
    return N_->iota(N_->lie().basis_vector(a), x);
  }
  Element lie_der(int a, const Element& x) const override {
    return N_->lie_der(N_->lie().basis_vector(a), x);
  }
  Element theta(int a) const override { return N_->ncw().generator(N_->cl_id(a)); }

 private:
  const NCWeilContext* N_;
};

/// Tensor product of two g-differential algebras over the same g, with
/// d(v (x) v') = dv (x) v' + (-1)^{|v|} v (x) dv' and the same signed rule for
/// contractions. The connection is taken from the chosen leg.
class TensorGDA : public GDA {
 public:
  TensorGDA(const GDA& A, const GDA& B, int theta_leg, const std::string& tag);
  const Algebra& algebra() const override { return *T_; }
  int lie_dim() const override { return A_->lie_dim(); }
  Element d(const Element& x) const override;
  Element iota(int a, const Element& x) const override;
  Element lie_der(int a, const Element& x) const override;
  Element theta(int a) const override;

  Element emb0(const Element& xa) const;
  Element emb1(const Element& xb) const;

 private:
  template <typename OpA, typename OpB>
  Element signed_op(const Element& x, bool odd_op, OpA opa, OpB opb) const;

  const GDA* A_;
  const GDA* B_;
  int theta_leg_;
  std::unique_ptr<Algebra> T_;
  uint16_t offset_;
};

/// Linear map W(g) -> target recorded by images of all Koszul-presentation
/// normal monomials of word length <= cap.
class ConvolutionMap {
 public:
  ConvolutionMap(const WeilContext& W, const GDA& target, int cap, Parity parity);

  const WeilContext& domain() const { return *W_; }
  const GDA& target() const { return *target_; }
  int cap() const { return cap_; }
  Parity parity() const { return parity_; }

  const Element& image(const Word& w) const;
  void set_image(const Word& w, Element v);
  Element operator()(const Element& kosz_elem) const;

  ConvolutionMap& operator+=(const ConvolutionMap& o);
  ConvolutionMap& operator-=(const ConvolutionMap& o);
  friend ConvolutionMap operator+(ConvolutionMap a, const ConvolutionMap& b) { return a += b; }
  friend ConvolutionMap operator-(ConvolutionMap a, const ConvolutionMap& b) { return a -= b; }
  bool is_zero() const;

 private:
  const WeilContext* W_;
  const GDA* target_;
  int cap_;
  Parity parity_;
  std::map<Word, Element, WordLess> images_;
};

/// Unit of the convolution algebra: i_A o pi.
ConvolutionMap conv_unit(const WeilContext& W, const GDA& target, int cap);

/// Convolution product phi1 . phi2 = m_A o (phi1 (x) phi2) o Delta.
ConvolutionMap conv_mul(const ConvolutionMap& f, const ConvolutionMap& g);

/// d(phi) = d_A o phi - (-1)^{|phi|} phi o d_W.
ConvolutionMap conv_d(const ConvolutionMap& f);

/// Deformed contraction iota^t_xi(phi) = iota_xi o phi - (-1)^{|phi|} phi o iota^t_xi.
ConvolutionMap conv_iota_t(const ConvolutionMap& f, int a, const Rational& t);

ConvolutionMap conv_lie(const ConvolutionMap& f, int a);

/// Precompose with the standard Koszul homotopy: m -> f(h(m)).
ConvolutionMap conv_compose_h(const ConvolutionMap& f);

/// Geometric-series inverse of 1_L + c (requires c(1) = 0): sum (-1)^N c^N.
ConvolutionMap conv_geometric_inverse(const ConvolutionMap& c);

/// Characteristic homomorphism for a connection: a Koszul monomial maps to
/// the symmetrized product of theta and d theta images.
ConvolutionMap characteristic_map(const WeilContext& W, const GDA& target, int cap);
ConvolutionMap characteristic_map(const WeilContext& W, const GDA& target, int cap,
                                  const std::vector<Element>& theta_images);

struct GdsHomReport {
  bool ok = true;
  std::string witness;
};
/// Checks that f intertwines d, iota (t = 1) and Lie derivatives on all
/// monomials up to the cap.
GdsHomReport check_gds_hom(const ConvolutionMap& f);

struct RigidityReport {
  bool d_psi_ok = false;        // d(psi) = c0 - c1 up to degree cap-1
  bool lie_psi_ok = false;      // L_xi psi = 0
  bool iota_psi_ok = false;     // iota^1_xi psi = 0
  bool psi_unit_ok = false;     // psi(1) = 0
  std::string witness;
  bool all_ok() const { return d_psi_ok && lie_psi_ok && iota_psi_ok && psi_unit_ok; }
};

/// The Theorem 3.1 homotopy psi = ((c . phi^{-1}) o h) . phi for two g-ds
/// homomorphisms agreeing on the unit; verifies the defining properties on
/// monomials of degree <= cap - 1.
ConvolutionMap rigidity_homotopy(const ConvolutionMap& c0, const ConvolutionMap& c1,
                                 RigidityReport* report);

}  // namespace qweil

#endif
