#include "qweil/gda.hpp"

#include <sstream>

namespace qweil {

TensorGDA::TensorGDA(const GDA& A, const GDA& B, int theta_leg, const std::string& tag)
    : A_(&A), B_(&B), theta_leg_(theta_leg) {
  if (A.lie_dim() != B.lie_dim())
    throw std::invalid_argument("TensorGDA: mismatched Lie algebras");
  T_ = make_tensor_algebra(A.algebra(), B.algebra(), tag);
  offset_ = uint16_t(A.algebra().num_generators());
}

Element TensorGDA::emb0(const Element& xa) const {
  Element out(T_.get());
  for (const auto& [w, c] : xa.terms()) out.add_term(w, c);
  return out;
}

Element TensorGDA::emb1(const Element& xb) const {
  Element out(T_.get());
  for (const auto& [w, c] : xb.terms()) {
    Word nw;
    for (auto g : w) nw.push_back(uint16_t(g + offset_));
    out.add_term(nw, c);
  }
  return out;
}

template <typename OpA, typename OpB>
Element TensorGDA::signed_op(const Element& x, bool odd_op, OpA opa, OpB opb) const {
  Element out(T_.get());
  for (const auto& [w, c] : x.terms()) {
    Word u, v;
    for (auto g : w) (g < offset_ ? u : v).push_back(g);
    Word vb;
    for (auto g : v) vb.push_back(uint16_t(g - offset_));
    Element ua = A_->algebra().monomial(u);
    Element vbb = B_->algebra().monomial(vb);
    Element left = T_->mul(emb0(opa(ua)), emb1(vbb));
    int sign = 1;
    if (odd_op && A_->algebra().word_parity(u) == Parity::odd) sign = -1;
    Element right = T_->mul(emb0(ua), emb1(opb(vbb)));
    out += c * (left + Rational(sign) * right);
  }
  return out;
}

Element TensorGDA::d(const Element& x) const {
  return signed_op(
      x, true, [&](const Element& e) { return A_->d(e); },
      [&](const Element& e) { return B_->d(e); });
}

Element TensorGDA::iota(int a, const Element& x) const {
  return signed_op(
      x, true, [&](const Element& e) { return A_->iota(a, e); },
      [&](const Element& e) { return B_->iota(a, e); });
}

Element TensorGDA::lie_der(int a, const Element& x) const {
  return signed_op(
      x, false, [&](const Element& e) { return A_->lie_der(a, e); },
      [&](const Element& e) { return B_->lie_der(a, e); });
}

Element TensorGDA::theta(int a) const {
  return theta_leg_ == 0 ? emb0(A_->theta(a)) : emb1(B_->theta(a));
}

ConvolutionMap::ConvolutionMap(const WeilContext& W, const GDA& target, int cap,
                               Parity parity)
    : W_(&W), target_(&target), cap_(cap), parity_(parity) {
  for (const auto& w : W.kosz_monomials_up_to(cap)) images_[w] = target.algebra().zero();
}

const Element& ConvolutionMap::image(const Word& w) const {
  auto it = images_.find(w);
  if (it == images_.end())
    throw std::invalid_argument("ConvolutionMap: monomial beyond the cap");
  return it->second;
}

void ConvolutionMap::set_image(const Word& w, Element v) {
  auto it = images_.find(w);
  if (it == images_.end())
    throw std::invalid_argument("ConvolutionMap: monomial beyond the cap");
  it->second = std::move(v);
}

Element ConvolutionMap::operator()(const Element& x) const {
  if (x.algebra() != &W_->kosz())
    throw std::invalid_argument("ConvolutionMap: Koszul-presentation element required");
  Element out = target_->algebra().zero();
  for (const auto& [w, c] : x.terms()) out += c * image(w);
  return out;
}

ConvolutionMap& ConvolutionMap::operator+=(const ConvolutionMap& o) {
  if (o.W_ != W_ || o.target_ != target_ || o.cap_ != cap_ || o.parity_ != parity_)
    throw std::invalid_argument("ConvolutionMap: incompatible maps");
  for (auto& [w, v] : images_) v += o.image(w);
  return *this;
}

ConvolutionMap& ConvolutionMap::operator-=(const ConvolutionMap& o) {
  if (o.W_ != W_ || o.target_ != target_ || o.cap_ != cap_ || o.parity_ != parity_)
    throw std::invalid_argument("ConvolutionMap: incompatible maps");
  for (auto& [w, v] : images_) v -= o.image(w);
  return *this;
}

bool ConvolutionMap::is_zero() const {
  for (const auto& [w, v] : images_)
    if (!v.is_zero()) return false;
  return true;
}

ConvolutionMap conv_unit(const WeilContext& W, const GDA& target, int cap) {
  ConvolutionMap u(W, target, cap, Parity::even);
  u.set_image({}, target.unit());
  return u;
}

ConvolutionMap conv_mul(const ConvolutionMap& f, const ConvolutionMap& g) {
  const WeilContext& W = f.domain();
  if (&g.target() != &f.target() || g.cap() != f.cap())
    throw std::invalid_argument("conv_mul: cap/target mismatch");
  ConvolutionMap out(W, f.target(), f.cap(), f.parity() + g.parity());
  const uint16_t off = uint16_t(2 * W.dim());
  for (const auto& w : W.kosz_monomials_up_to(f.cap())) {
    Element val = f.target().algebra().zero();
    Element delta = W.coproduct(W.kosz().monomial(w));
    for (const auto& [dw, dc] : delta.terms()) {
      Word u, v;
      for (auto gg : dw) (gg < off ? u : v).push_back(gg);
      Word vs;
      for (auto gg : v) vs.push_back(uint16_t(gg - off));
      int sign = 1;
      if (g.parity() == Parity::odd && W.kosz().word_parity(u) == Parity::odd) sign = -1;
      Element fu = f.image(u);
      if (fu.is_zero()) continue;
      Element gv = g.image(vs);
      if (gv.is_zero()) continue;
      val += (dc * Rational(sign)) * f.target().algebra().mul(fu, gv);
    }
    out.set_image(w, val);
  }
  return out;
}

ConvolutionMap conv_d(const ConvolutionMap& f) {
  const WeilContext& W = f.domain();
  ConvolutionMap out(W, f.target(), f.cap(), f.parity() + Parity::odd);
  int sign = f.parity() == Parity::odd ? -1 : 1;
  for (const auto& w : W.kosz_monomials_up_to(f.cap())) {
    Element m = W.kosz().monomial(w);
    Element val = f.target().d(f.image(w)) - Rational(sign) * f(W.d_kosz(m));
    out.set_image(w, val);
  }
  return out;
}

ConvolutionMap conv_iota_t(const ConvolutionMap& f, int a, const Rational& t) {
  const WeilContext& W = f.domain();
  ConvolutionMap out(W, f.target(), f.cap(), f.parity() + Parity::odd);
  int sign = f.parity() == Parity::odd ? -1 : 1;
  RatVector xi = W.lie().basis_vector(a);
  for (const auto& w : W.kosz_monomials_up_to(f.cap())) {
    Element m = W.kosz().monomial(w);
    Element val = f.target().iota(a, f.image(w)) - Rational(sign) * f(W.iota_kosz_t(xi, t, m));
    out.set_image(w, val);
  }
  return out;
}

ConvolutionMap conv_lie(const ConvolutionMap& f, int a) {
  const WeilContext& W = f.domain();
  ConvolutionMap out(W, f.target(), f.cap(), f.parity());
  RatVector xi = W.lie().basis_vector(a);
  for (const auto& w : W.kosz_monomials_up_to(f.cap())) {
    Element m = W.kosz().monomial(w);
    out.set_image(w, f.target().lie_der(a, f.image(w)) - f(W.lie_kosz(xi, m)));
  }
  return out;
}

ConvolutionMap conv_compose_h(const ConvolutionMap& f) {
  const WeilContext& W = f.domain();
  ConvolutionMap out(W, f.target(), f.cap(), f.parity() + Parity::odd);
  for (const auto& w : W.kosz_monomials_up_to(f.cap()))
    out.set_image(w, f(W.koszul_homotopy(W.kosz().monomial(w))));
  return out;
}

ConvolutionMap conv_geometric_inverse(const ConvolutionMap& c) {
  if (!c.image({}).is_zero())
    throw std::invalid_argument("conv_geometric_inverse: c(1) = 0 required");
  const WeilContext& W = c.domain();
  ConvolutionMap acc = conv_unit(W, c.target(), c.cap());
  ConvolutionMap pow = conv_unit(W, c.target(), c.cap());
  for (int N = 1; N <= c.cap(); ++N) {
    pow = conv_mul(pow, c);
    if (pow.is_zero()) break;
    if (N % 2 == 1) {
      acc -= pow;
    } else {
      acc += pow;
    }
  }
  return acc;
}

ConvolutionMap characteristic_map(const WeilContext& W, const GDA& target, int cap) {
  std::vector<Element> thetas;
  for (int a = 0; a < W.dim(); ++a) thetas.push_back(target.theta(a));
  return characteristic_map(W, target, cap, thetas);
}

ConvolutionMap characteristic_map(const WeilContext& W, const GDA& target, int cap,
                                  const std::vector<Element>& theta_images) {
  if (int(theta_images.size()) != W.dim())
    throw std::invalid_argument("characteristic_map: one connection image per basis vector");
  ConvolutionMap out(W, target, cap, Parity::even);
  std::vector<Element> images;
  std::vector<Parity> parities;
  for (int a = 0; a < W.dim(); ++a) {
    images.push_back(target.d(theta_images[size_t(a)]));
    parities.push_back(Parity::even);
  }
  for (int a = 0; a < W.dim(); ++a) {
    images.push_back(theta_images[size_t(a)]);
    parities.push_back(Parity::odd);
  }
  for (const auto& w : W.kosz_monomials_up_to(cap))
    out.set_image(w, symmetrize_word_images(target.algebra(), w, images, parities));
  return out;
}

GdsHomReport check_gds_hom(const ConvolutionMap& f) {
  GdsHomReport rep;
  const WeilContext& W = f.domain();
  for (const auto& w : W.kosz_monomials_up_to(f.cap())) {
    Element m = W.kosz().monomial(w);
    if (!(f(W.d_kosz(m)) == f.target().d(f.image(w)))) {
      rep.ok = false;
      rep.witness = "d fails at " + m.str();
      return rep;
    }
    for (int a = 0; a < W.dim(); ++a) {
      RatVector xi = W.lie().basis_vector(a);
      if (!(f(W.iota_kosz(xi, m)) == f.target().iota(a, f.image(w)))) {
        rep.ok = false;
        rep.witness = "iota fails at " + m.str();
        return rep;
      }
      if (!(f(W.lie_kosz(xi, m)) == f.target().lie_der(a, f.image(w)))) {
        rep.ok = false;
        rep.witness = "L fails at " + m.str();
        return rep;
      }
    }
  }
  return rep;
}

// Operator toolkit on L(W, A) for the basic homotopy. The construction
// follows the Kalkman-shift route: conjugating by U = exp(sum_a theta(e^a)
// iota^E_{e_a}) moves every contraction to the target side, where the
// composition homotopy R_h(phi) = (-1)^{|phi|} phi o h commutes with it; the
// locally nilpotent correction C = [d-tilde, R_h] - (I - Pi) is then absorbed
// by a geometric series. The resulting H satisfies [d, H] = I - Pi-hat,
// [iota_xi, H] = 0 and [L_xi, H] = 0, so psi = H(c0 - c1) is the required
// basic homotopy.
namespace {

ConvolutionMap precompose_iota(const ConvolutionMap& f, int a, const Rational& t) {
  const WeilContext& W = f.domain();
  ConvolutionMap out(W, f.target(), f.cap(), f.parity() + Parity::odd);
  RatVector xi = W.lie().basis_vector(a);
  for (const auto& w : W.kosz_monomials_up_to(f.cap()))
    out.set_image(w, f(W.iota_kosz_t(xi, t, W.kosz().monomial(w))));
  return out;
}

// iota^E_a(phi) = -(-1)^{|phi|} phi o iota^{1,W}_a, so that
// iota^1_a = iota^B_a + iota^E_a with iota^B_a = iota^A_a o phi.
ConvolutionMap iota_E(const ConvolutionMap& f, int a) {
  ConvolutionMap out = precompose_iota(f, a, Rational(1));
  if (f.parity() == Parity::even) {
    ConvolutionMap neg(f.domain(), f.target(), f.cap(), out.parity());
    return neg - out;
  }
  return out;
}

ConvolutionMap left_mult(const Element& x, Parity px, const ConvolutionMap& f) {
  const WeilContext& W = f.domain();
  ConvolutionMap out(W, f.target(), f.cap(), f.parity() + px);
  for (const auto& w : W.kosz_monomials_up_to(f.cap()))
    out.set_image(w, f.target().algebra().mul(x, f.image(w)));
  return out;
}

// The Kalkman operator sum_a theta(e^a) iota^E_{e_a} (even, locally nilpotent).
ConvolutionMap kalkman(const ConvolutionMap& f) {
  const WeilContext& W = f.domain();
  RatMatrix G = W.lie().dual_basis_matrix();
  ConvolutionMap out(W, f.target(), f.cap(), f.parity());
  for (int a = 0; a < W.dim(); ++a) {
    Element theta_dual = f.target().algebra().zero();
    for (int c = 0; c < W.dim(); ++c)
      if (sgn(G(a, c)) != 0) theta_dual += G(a, c) * f.target().theta(c);
    out += left_mult(theta_dual, Parity::odd, iota_E(f, a));
  }
  return out;
}

ConvolutionMap kalkman_exp(const ConvolutionMap& f, bool inverse) {
  ConvolutionMap acc = f;
  ConvolutionMap pow = f;
  Rational fact(1);
  for (int n = 1; n <= 4 * (f.cap() + 1); ++n) {
    pow = kalkman(pow);
    if (pow.is_zero()) break;
    fact *= Rational(n);
    ConvolutionMap term(f.domain(), f.target(), f.cap(), f.parity());
    for (const auto& w : f.domain().kosz_monomials_up_to(f.cap())) {
      Rational s = Rational(1) / fact;
      if (inverse && n % 2 == 1) s = -s;
      term.set_image(w, s * pow.image(w));
    }
    acc += term;
  }
  return acc;
}

ConvolutionMap r_h(const ConvolutionMap& f) {
  ConvolutionMap out = conv_compose_h(f);
  if (f.parity() == Parity::odd) {
    ConvolutionMap neg(f.domain(), f.target(), f.cap(), out.parity());
    return neg - out;
  }
  return out;
}

ConvolutionMap proj_unit(const ConvolutionMap& f) {
  ConvolutionMap out(f.domain(), f.target(), f.cap(), f.parity());
  out.set_image({}, f.image({}));
  return out;
}

}  // namespace

ConvolutionMap rigidity_homotopy(const ConvolutionMap& c0, const ConvolutionMap& c1,
                                 RigidityReport* report) {
  const WeilContext& W = c0.domain();
  if (&c1.target() != &c0.target() || c1.cap() != c0.cap())
    throw std::invalid_argument("rigidity_homotopy: cap/target mismatch");
  if (!(c0.image({}) == c1.image({})))
    throw std::invalid_argument("rigidity_homotopy: maps disagree on the unit");
  {
    auto r0 = check_gds_hom(c0), r1 = check_gds_hom(c1);
    if (!r0.ok || !r1.ok)
      throw std::invalid_argument("rigidity_homotopy: inputs are not g-ds homomorphisms (" +
                                  r0.witness + r1.witness + ")");
  }
  ConvolutionMap c = c0 - c1;

  auto U = [](const ConvolutionMap& f) { return kalkman_exp(f, false); };
  auto Uinv = [](const ConvolutionMap& f) { return kalkman_exp(f, true); };
  auto d_tilde = [&](const ConvolutionMap& f) { return U(conv_d(Uinv(f))); };
  auto C_op = [&](const ConvolutionMap& f) {
    ConvolutionMap comm = d_tilde(r_h(f)) + r_h(d_tilde(f));
    return comm - (f - proj_unit(f));
  };
  auto ipc_inv = [&](const ConvolutionMap& f) {
    ConvolutionMap acc = f;
    ConvolutionMap pow = f;
    for (int k = 1; k <= 4 * (f.cap() + 1); ++k) {
      pow = C_op(pow);
      if (pow.is_zero()) break;
      if (k % 2 == 1)
        acc -= pow;
      else
        acc += pow;
    }
    return acc;
  };
  // H = U^{-1} o R_h o (I + C)^{-1} o U
  ConvolutionMap psi = Uinv(r_h(ipc_inv(U(c))));

  if (report) {
    RigidityReport rep;
    rep.psi_unit_ok = psi.image({}).is_zero();
    rep.d_psi_ok = true;
    rep.lie_psi_ok = true;
    rep.iota_psi_ok = true;
    ConvolutionMap dpsi = conv_d(psi);
    const int check_cap = c0.cap() - 1;
    for (const auto& w : W.kosz_monomials_up_to(check_cap)) {
      if (!(dpsi.image(w) == c.image(w))) {
        rep.d_psi_ok = false;
        rep.witness += "d(psi) != c0 - c1 at " + W.kosz().monomial(w).str() + "; ";
        break;
      }
    }
    for (int a = 0; a < W.dim() && rep.lie_psi_ok && rep.iota_psi_ok; ++a) {
      ConvolutionMap lpsi = conv_lie(psi, a);
      ConvolutionMap ipsi = conv_iota_t(psi, a, Rational(1));
      for (const auto& w : W.kosz_monomials_up_to(check_cap)) {
        if (!lpsi.image(w).is_zero()) {
          rep.lie_psi_ok = false;
          rep.witness += "L psi != 0; ";
          break;
        }
        if (!ipsi.image(w).is_zero()) {
          rep.iota_psi_ok = false;
          rep.witness += "iota psi != 0; ";
          break;
        }
      }
    }
    *report = rep;
  }
  return psi;
}

}  // namespace qweil
