#include "qweil/clifford.hpp"

namespace qweil {

std::unique_ptr<Algebra> make_exterior_algebra(int n, const std::string& tag) {
  std::vector<GenInfo> gens;
  for (int i = 0; i < n; ++i)
    gens.push_back({"x" + std::to_string(i), Parity::odd, 0, uint16_t(i)});
  auto A = std::make_unique<Algebra>(tag, std::move(gens));
  A->finalize();
  return A;
}

std::unique_ptr<Algebra> make_clifford_algebra(const RatMatrix& B, const std::string& tag) {
  const int n = int(B.rows());
  std::vector<GenInfo> gens;
  for (int i = 0; i < n; ++i)
    gens.push_back({"x" + std::to_string(i), Parity::odd, 0, uint16_t(i)});
  auto A = std::make_unique<Algebra>(tag, std::move(gens));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b)
      if (sgn(B(a, b)) != 0) A->set_bracket(uint16_t(a), uint16_t(b), A->unit(B(a, b)));
  A->finalize();
  return A;
}

Element vector_element(const Algebra& A, const RatVector& v, int offset) {
  Element e(&A);
  for (int i = 0; i < v.size(); ++i)
    if (sgn(v(i)) != 0) e.add_term({uint16_t(i + offset)}, v(i));
  return e;
}

Element wedge_from_skew(const Algebra& ext, const RatMatrix& M) {
  const int n = int(M.rows());
  Element e(&ext);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sgn(M(i, j)) != 0) e.add_term({uint16_t(i), uint16_t(j)}, M(i, j));
  return e;
}

Element ext_exp(const Algebra& ext, const Element& x) {
  if (ext.element_parity(x) != Parity::even)
    throw std::invalid_argument("ext_exp: even element required");
  Element acc = ext.unit();
  Element pow = ext.unit();
  Rational fact(1);
  for (size_t k = 1; k <= ext.num_generators(); ++k) {
    pow = ext.mul(pow, x);
    if (pow.is_zero()) break;
    fact *= Rational(long(k));
    acc += (Rational(1) / fact) * pow;
  }
  return acc;
}

Element contract_vector(const RatVector& mu, const Element& x, const RatMatrix& P) {
  const Algebra* A = x.algebra();
  std::vector<Element> images;
  images.reserve(A->num_generators());
  for (size_t b = 0; b < A->num_generators(); ++b) {
    Rational v(0);
    for (int a = 0; a < mu.size(); ++a) v += mu(a) * P(a, int(b));
    images.push_back(A->unit(v));
  }
  return Derivation(A, Parity::odd, images)(x);
}

Element contract(const Element& alpha, const Element& x, const RatMatrix& P) {
  const Algebra* A = x.algebra();
  // precompute generator contractions iota_a as derivations on x's algebra
  std::vector<Derivation> iota;
  for (int a = 0; a < P.rows(); ++a) {
    std::vector<Element> images;
    for (size_t b = 0; b < A->num_generators(); ++b) images.push_back(A->unit(P(a, int(b))));
    iota.emplace_back(A, Parity::odd, std::move(images));
  }
  Element out(A);
  for (const auto& [word, c] : alpha.terms()) {
    Element cur = x;
    for (auto it = word.rbegin(); it != word.rend(); ++it) cur = iota[*it](cur);
    out += c * cur;
  }
  return out;
}

ContractExpResult contract_exponentials(const RatMatrix& A, const RatMatrix& Bm) {
  const int n = int(A.rows());
  if (A.cols() != n || Bm.rows() != n || Bm.cols() != n)
    throw std::invalid_argument("contract_exponentials: dimension mismatch");
  auto check_skew = [&](const RatMatrix& M) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (M(i, j) != -M(j, i)) throw std::invalid_argument("skew map required");
  };
  check_skew(A);
  check_skew(Bm);
  RatMatrix IAB = rat_identity(n) + A * Bm;  // map V* -> V*
  auto inv = try_inverse(IAB);
  if (!inv) throw std::invalid_argument("contract_exponentials: I + AB singular");

  auto extV = make_exterior_algebra(n, "Ext(V)");
  auto extVd = make_exterior_algebra(n, "Ext(V*)");
  Element lamA = wedge_from_skew(*extVd, A);
  Element lamB = wedge_from_skew(*extV, Bm);
  Element lhs = contract(ext_exp(*extVd, lamA), ext_exp(*extV, lamB), rat_identity(n));

  Rational scalar = lhs.scalar_part();
  // the degree-0 coefficient squares to det(I + AB)
  if (scalar * scalar != det(IAB))
    throw std::logic_error("contract_exponentials: degree-0 part is not a square root");
  RatMatrix Bt = Bm * (*inv);
  Element quad = wedge_from_skew(*extV, Bt);
  Element rhs = scalar * ext_exp(*extV, quad);
  if (!(lhs == rhs))
    throw std::logic_error("contract_exponentials: identity failed");
  return {scalar, quad};
}

CliffordContext::CliffordContext(const QuadraticLieAlgebra& L)
    : L_(&L),
      ext_(make_exterior_algebra(L.dim(), "Ext(" + L.name() + ")")),
      cl_(make_clifford_algebra(L.bilinear(), "Cl(" + L.name() + ")")),
      dual_(rat_zero_matrix(L.dim(), L.dim())),
      has_dual_(L.b_nondegenerate()) {
  if (has_dual_) dual_ = L.dual_basis_matrix();
}

Element CliffordContext::quantize(const Element& x) const {
  if (x.algebra() != ext_.get()) throw std::invalid_argument("quantize: exterior element required");
  std::vector<Element> images;
  std::vector<Parity> parities(size_t(L_->dim()), Parity::odd);
  for (int a = 0; a < L_->dim(); ++a) images.push_back(cl_->generator(uint16_t(a)));
  Element out(cl_.get());
  for (const auto& [word, c] : x.terms())
    out += c * symmetrize_word_images(*cl_, word, images, parities);
  return out;
}

Element CliffordContext::symbol(const Element& x) const {
  if (x.algebra() != cl_.get()) throw std::invalid_argument("symbol: Clifford element required");
  Element rest = x;
  Element out(ext_.get());
  while (!rest.is_zero()) {
    size_t top = 0;
    for (const auto& [w, c] : rest.terms()) top = std::max(top, w.size());
    Element lead(ext_.get());
    for (const auto& [w, c] : rest.terms())
      if (w.size() == top) lead.add_term(w, c);
    out += lead;
    rest -= quantize(lead);
  }
  return out;
}

Element CliffordContext::gamma(const RatVector& zeta) const {
  std::vector<int> all(L_->dim());
  for (int i = 0; i < L_->dim(); ++i) all[i] = i;
  return gamma_partial(zeta, all);
}

Element CliffordContext::gamma_basis(int a) const { return gamma(L_->basis_vector(a)); }

Element CliffordContext::gamma_partial(const RatVector& zeta,
                                       const std::vector<int>& indices) const {
  if (!has_dual_) throw std::invalid_argument("gamma requires nondegenerate B");
  Element out(cl_.get());
  for (int a : indices) {
    RatVector br = L_->bracket(zeta, L_->basis_vector(a));
    RatVector dual_a = dual_.row(a).transpose();
    out += Rational(1, 2) * cl_->mul(cl_vector(br), cl_vector(dual_a));
  }
  return out;
}

Element CliffordContext::lambda(const RatVector& zeta) const {
  if (!has_dual_) throw std::invalid_argument("lambda requires nondegenerate B");
  Element out(ext_.get());
  for (int a = 0; a < L_->dim(); ++a) {
    RatVector br = L_->bracket(zeta, L_->basis_vector(a));
    RatVector dual_a = dual_.row(a).transpose();
    out += Rational(1, 2) * ext_->mul(ext_vector(br), ext_vector(dual_a));
  }
  return out;
}

static Element adjoint_on(const Algebra& A, const QuadraticLieAlgebra& L,
                          const RatVector& zeta, const Element& x) {
  std::vector<Element> images;
  for (int b = 0; b < L.dim(); ++b)
    images.push_back(vector_element(A, L.bracket(zeta, L.basis_vector(b))));
  return Derivation(&A, Parity::even, images)(x);
}

Element CliffordContext::adjoint_cl(const RatVector& zeta, const Element& x) const {
  return adjoint_on(*cl_, *L_, zeta, x);
}

Element CliffordContext::adjoint_ext(const RatVector& zeta, const Element& x) const {
  return adjoint_on(*ext_, *L_, zeta, x);
}

RatVector coad_paper(const QuadraticLieAlgebra& L, const RatVector& xi, const RatVector& mu) {
  // (ad*_xi mu)(e_b) = mu([xi, e_b])
  RatVector out = RatVector::Constant(L.dim(), Rational(0));
  for (int b = 0; b < L.dim(); ++b) {
    RatVector br = L.bracket(xi, L.basis_vector(b));
    Rational v(0);
    for (int k = 0; k < L.dim(); ++k) v += mu(k) * br(k);
    out(b) = v;
  }
  return out;
}

Element lambda_dual(const QuadraticLieAlgebra& L, const Algebra& ext_dual,
                    const RatVector& mu) {
  // lambda(mu) = -1/2 sum_a e^a ^ ad*_{e_a} mu
  Element out(&ext_dual);
  for (int a = 0; a < L.dim(); ++a) {
    RatVector co = coad_paper(L, L.basis_vector(a), mu);
    Element ea(&ext_dual);
    ea.add_term({uint16_t(a)}, Rational(1));
    out += Rational(-1, 2) * ext_dual.mul(ea, vector_element(ext_dual, co));
  }
  return out;
}

}  // namespace qweil
