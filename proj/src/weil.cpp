#include "qweil/weil.hpp"

#include <functional>

namespace qweil {

std::unique_ptr<Algebra> make_tensor_algebra(const Algebra& A, const Algebra& B,
                                             const std::string& tag) {
  std::vector<GenInfo> gens;
  const uint16_t off = uint16_t(A.num_generators());
  for (size_t g = 0; g < A.num_generators(); ++g) {
    GenInfo gi = A.gen(uint16_t(g));
    gi.name += "'";
    gens.push_back(gi);
  }
  for (size_t g = 0; g < B.num_generators(); ++g) {
    GenInfo gi = B.gen(uint16_t(g));
    gi.name += "''";
    gens.push_back(gi);
  }
  auto T = std::make_unique<Algebra>(tag, std::move(gens));
  auto remap = [&](const Element& e, uint16_t shift) {
    Element out(T.get());
    for (const auto& [w, c] : e.terms()) {
      Word nw;
      for (auto g : w) nw.push_back(uint16_t(g + shift));
      out.add_term(nw, c);
    }
    return out;
  };
  for (uint16_t a = 0; a < A.num_generators(); ++a)
    for (uint16_t b = 0; b <= a; ++b) {
      const Element& br = A.bracket(a, b);
      if (!br.is_zero()) T->set_bracket(a, b, remap(br, 0));
    }
  for (uint16_t a = 0; a < B.num_generators(); ++a)
    for (uint16_t b = 0; b <= a; ++b) {
      const Element& br = B.bracket(a, b);
      if (!br.is_zero()) T->set_bracket(uint16_t(a + off), uint16_t(b + off), remap(br, off));
    }
  T->finalize();
  return T;
}

static std::unique_ptr<Algebra> make_weil_algebra(int n, const std::string& tag,
                                                  const std::string& even_prefix) {
  std::vector<GenInfo> gens;
  for (int a = 0; a < n; ++a)
    gens.push_back({even_prefix + std::to_string(a), Parity::even, 0, uint16_t(a)});
  for (int a = 0; a < n; ++a)
    gens.push_back({"x" + std::to_string(a), Parity::odd, 1, uint16_t(a)});
  auto A = std::make_unique<Algebra>(tag, std::move(gens));
  A->finalize();
  return A;
}

WeilContext::WeilContext(const QuadraticLieAlgebra& L)
    : L_(&L), n_(L.dim()), dual_(rat_zero_matrix(L.dim(), L.dim())) {
  if (!L.b_nondegenerate())
    throw std::invalid_argument("WeilContext requires nondegenerate B");
  dual_ = L.dual_basis_matrix();
  curv_ = make_weil_algebra(n_, "W(" + L.name() + ")", "hx");
  kosz_ = make_weil_algebra(n_, "Wk(" + L.name() + ")", "bx");
  wxw_ = make_tensor_algebra(*kosz_, *kosz_, "WxW(" + L.name() + ")");
  dcurv_ = std::make_unique<Derivation>(make_d_curv());
}

Element WeilContext::even_vector(const Algebra& A, const RatVector& v) const {
  Element e(&A);
  for (int i = 0; i < n_; ++i)
    if (sgn(v(i)) != 0) e.add_term({even_id(i)}, v(i));
  return e;
}

Element WeilContext::odd_vector(const Algebra& A, const RatVector& v) const {
  Element e(&A);
  for (int i = 0; i < n_; ++i)
    if (sgn(v(i)) != 0) e.add_term({odd_id(i)}, v(i));
  return e;
}

Element WeilContext::lambda_odd(const Algebra& A, int a) const {
  return lambda_odd(A, L_->basis_vector(a));
}

Element WeilContext::lambda_odd(const Algebra& A, const RatVector& zeta) const {
  Element out(&A);
  for (int b = 0; b < n_; ++b) {
    RatVector br = L_->bracket(zeta, L_->basis_vector(b));
    RatVector dual_b = dual_.row(b).transpose();
    out += Rational(1, 2) * A.mul(odd_vector(A, br), odd_vector(A, dual_b));
  }
  return out;
}

Element WeilContext::curv_to_kosz(const Element& x) const {
  std::vector<Element> images;
  for (int a = 0; a < n_; ++a)
    images.push_back(kosz_->generator(even_id(a)) - lambda_odd(*kosz_, a));
  for (int a = 0; a < n_; ++a) images.push_back(kosz_->generator(odd_id(a)));
  return Substitution(curv_.get(), kosz_.get(), images)(x);
}

Element WeilContext::kosz_to_curv(const Element& x) const {
  std::vector<Element> images;
  for (int a = 0; a < n_; ++a)
    images.push_back(curv_->generator(even_id(a)) + lambda_odd(*curv_, a));
  for (int a = 0; a < n_; ++a) images.push_back(curv_->generator(odd_id(a)));
  return Substitution(kosz_.get(), curv_.get(), images)(x);
}

Derivation WeilContext::make_d_curv() const {
  // d zeta_a = hat_a + lambda(e_a); d hat_a = -d(lambda(e_a)), computable
  // because lambda(e_a) is a word in odd generators only.
  std::vector<Element> odd_images;
  for (int a = 0; a < n_; ++a)
    odd_images.push_back(curv_->generator(even_id(a)) + lambda_odd(*curv_, a));
  std::vector<Element> partial(size_t(n_), Element(curv_.get()));
  for (int a = 0; a < n_; ++a) partial.push_back(odd_images[size_t(a)]);
  Derivation d_odd(curv_.get(), Parity::odd, partial);
  std::vector<Element> images;
  for (int a = 0; a < n_; ++a) images.push_back(Rational(-1) * d_odd(lambda_odd(*curv_, a)));
  for (int a = 0; a < n_; ++a) images.push_back(odd_images[size_t(a)]);
  return Derivation(curv_.get(), Parity::odd, images);
}

Element WeilContext::d_curv(const Element& x) const { return (*dcurv_)(x); }

Element WeilContext::iota_curv(const RatVector& xi, const Element& x) const {
  std::vector<Element> images(size_t(n_), Element(curv_.get()));
  for (int a = 0; a < n_; ++a) {
    Rational v(0);
    for (int i = 0; i < n_; ++i) v += xi(i) * L_->bilinear()(i, a);
    images.push_back(curv_->unit(v));
  }
  return Derivation(curv_.get(), Parity::odd, images)(x);
}

static Element lie_on_weil(const WeilContext& W, const Algebra& A, const RatVector& xi,
                           const Element& x) {
  std::vector<Element> images;
  const auto& L = W.lie();
  for (int a = 0; a < W.dim(); ++a)
    images.push_back(W.even_vector(A, L.bracket(xi, L.basis_vector(a))));
  for (int a = 0; a < W.dim(); ++a)
    images.push_back(W.odd_vector(A, L.bracket(xi, L.basis_vector(a))));
  return Derivation(&A, Parity::even, images)(x);
}

Element WeilContext::lie_curv(const RatVector& xi, const Element& x) const {
  return lie_on_weil(*this, *curv_, xi, x);
}

Element WeilContext::lie_kosz(const RatVector& xi, const Element& x) const {
  return lie_on_weil(*this, *kosz_, xi, x);
}

Element WeilContext::d_kosz(const Element& x) const {
  std::vector<Element> images(size_t(n_), Element(kosz_.get()));
  for (int a = 0; a < n_; ++a) images[size_t(a)] = Element(kosz_.get());
  for (int a = 0; a < n_; ++a) images.push_back(kosz_->generator(even_id(a)));
  return Derivation(kosz_.get(), Parity::odd, images)(x);
}

Element WeilContext::iota_kosz_t(const RatVector& xi, const Rational& t,
                                 const Element& x) const {
  std::vector<Element> images;
  for (int a = 0; a < n_; ++a)
    images.push_back(odd_vector(*kosz_, L_->bracket(xi, L_->basis_vector(a))));
  for (int a = 0; a < n_; ++a) {
    Rational v(0);
    for (int i = 0; i < n_; ++i) v += xi(i) * L_->bilinear()(i, a);
    images.push_back(kosz_->unit(t * v));
  }
  return Derivation(kosz_.get(), Parity::odd, images)(x);
}

bool WeilContext::is_horizontal_curv(const Element& x) const {
  for (const auto& [w, c] : x.terms())
    for (auto g : w)
      if (g >= n_) return false;
  return true;
}

bool WeilContext::is_invariant(const Element& x, bool koszul) const {
  for (int a = 0; a < n_; ++a) {
    Element lx = koszul ? lie_kosz(L_->basis_vector(a), x) : lie_curv(L_->basis_vector(a), x);
    if (!lx.is_zero()) return false;
  }
  return true;
}

Element WeilContext::koszul_s(const Element& x) const {
  std::vector<Element> images;
  for (int a = 0; a < n_; ++a) images.push_back(kosz_->generator(odd_id(a)));
  for (int a = 0; a < n_; ++a) images.push_back(Element(kosz_.get()));
  return Derivation(kosz_.get(), Parity::odd, images)(x);
}

Element WeilContext::koszul_homotopy(const Element& x) const {
  if (x.algebra() != kosz_.get())
    throw std::invalid_argument("koszul_homotopy acts on the Koszul presentation");
  Element out(kosz_.get());
  std::map<size_t, Element> by_len;
  for (const auto& [w, c] : x.terms()) {
    auto [it, ins] = by_len.try_emplace(w.size(), Element(kosz_.get()));
    it->second.add_term(w, c);
  }
  for (auto& [len, part] : by_len) {
    if (len == 0) continue;  // h(1) = 0
    out += (Rational(1) / Rational(long(len))) * koszul_s(part);
  }
  return out;
}

Element WeilContext::weil_casimir() const {
  Element out(curv_.get());
  for (int a = 0; a < n_; ++a)
    out += curv_->mul(curv_->generator(even_id(a)),
                      even_vector(*curv_, RatVector(dual_.row(a).transpose())));
  return out;
}

Element WeilContext::transgression_via_h() const {
  return koszul_homotopy(curv_to_kosz(weil_casimir()));
}

Element WeilContext::transgression_closed() const {
  Element out(kosz_.get());
  for (int a = 0; a < n_; ++a) {
    RatVector dual_a = dual_.row(a).transpose();
    out += kosz_->mul(kosz_->generator(even_id(a)), odd_vector(*kosz_, dual_a));
    out += rat(-2, 3) * kosz_->mul(lambda_odd(*kosz_, a), odd_vector(*kosz_, dual_a));
  }
  return out;
}

Element WeilContext::tensor_emb0(const Element& x) const {
  Element out(wxw_.get());
  for (const auto& [w, c] : x.terms()) out.add_term(w, c);
  return out;
}

Element WeilContext::tensor_emb1(const Element& x) const {
  Element out(wxw_.get());
  const uint16_t off = uint16_t(2 * n_);
  for (const auto& [w, c] : x.terms()) {
    Word nw;
    for (auto g : w) nw.push_back(uint16_t(g + off));
    out.add_term(nw, c);
  }
  return out;
}

Element WeilContext::coproduct(const Element& x) const {
  std::vector<Element> images;
  for (int g = 0; g < 2 * n_; ++g)
    images.push_back(wxw_->generator(uint16_t(g)) + wxw_->generator(uint16_t(g + 2 * n_)));
  return Substitution(kosz_.get(), wxw_.get(), images)(x);
}

Element WeilContext::tensor_d(const Element& x) const {
  std::vector<Element> images;
  images.resize(4 * size_t(n_), Element(wxw_.get()));
  for (int a = 0; a < n_; ++a) {
    images[size_t(n_ + a)] = wxw_->generator(uint16_t(a));
    images[size_t(3 * n_ + a)] = wxw_->generator(uint16_t(2 * n_ + a));
  }
  return Derivation(wxw_.get(), Parity::odd, images)(x);
}

Element WeilContext::tensor_counit0(const Element& x) const {
  Element out(kosz_.get());
  const uint16_t off = uint16_t(2 * n_);
  for (const auto& [w, c] : x.terms()) {
    if (!w.empty() && w.front() < off) continue;  // leg-0 part must be scalar
    Word nw;
    for (auto g : w) nw.push_back(uint16_t(g - off));
    out.add_term(nw, c);
  }
  return out;
}

std::vector<Word> WeilContext::kosz_monomials_up_to(int cap) const {
  std::vector<Word> out;
  // even multisets of size i over n_ gens, odd subsets of size j, i + j <= cap
  std::vector<std::vector<Word>> evens(size_t(cap) + 1), odds(size_t(cap) + 1);
  std::function<void(int, int, Word&)> rec_even = [&](int start, int left, Word& cur) {
    evens[cur.size()].push_back(cur);
    if (left == 0) return;
    for (int g = start; g < n_; ++g) {
      cur.push_back(even_id(g));
      rec_even(g, left - 1, cur);
      cur.pop_back();
    }
  };
  std::function<void(int, int, Word&)> rec_odd = [&](int start, int left, Word& cur) {
    odds[cur.size()].push_back(cur);
    if (left == 0) return;
    for (int g = start; g < n_; ++g) {
      cur.push_back(odd_id(g));
      rec_odd(g + 1, left - 1, cur);
      cur.pop_back();
    }
  };
  Word cur;
  rec_even(0, cap, cur);
  rec_odd(0, std::min(cap, n_), cur);
  // dedupe (recursion records prefixes repeatedly)
  for (auto& v : evens) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (auto& v : odds) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (int i = 0; i <= cap; ++i)
    for (int j = 0; i + j <= cap && j <= n_; ++j)
      for (const auto& we : evens[size_t(i)])
        for (const auto& wo : odds[size_t(j)]) {
          Word w = we;
          w.insert(w.end(), wo.begin(), wo.end());
          out.push_back(w);
        }
  std::sort(out.begin(), out.end(), WordLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qweil
