#include "qweil/enveloping.hpp"

namespace qweil {

Element degree_truncate(const Element& x, int M) {
  return x.filtered([M](const Word& w) { return int(w.size()) <= M; });
}

Element poly_exp_truncated(const Algebra& A, const Element& x, int M) {
  if (sgn(x.coeff({})) != 0)
    throw std::invalid_argument("poly_exp_truncated: zero constant term required");
  Element acc = A.unit();
  Element pow = A.unit();
  Rational fact(1);
  for (int k = 1; k <= M; ++k) {
    pow = degree_truncate(A.mul(pow, x), M);
    if (pow.is_zero()) break;
    fact *= Rational(k);
    acc += (Rational(1) / fact) * pow;
  }
  return acc;
}

static std::unique_ptr<Algebra> make_uea_algebra(const QuadraticLieAlgebra& L,
                                                 const std::string& tag) {
  std::vector<GenInfo> gens;
  for (int i = 0; i < L.dim(); ++i)
    gens.push_back({"e" + std::to_string(i), Parity::even, 0, uint16_t(i)});
  auto A = std::make_unique<Algebra>(tag, std::move(gens));
  for (int a = 0; a < L.dim(); ++a)
    for (int b = 0; b < a; ++b) {
      RatVector br = L.bracket(L.basis_vector(a), L.basis_vector(b));
      Element e(A.get());
      for (int k = 0; k < L.dim(); ++k)
        if (sgn(br(k)) != 0) e.add_term({uint16_t(k)}, br(k));
      if (!e.is_zero()) A->set_bracket(uint16_t(a), uint16_t(b), e);
    }
  A->finalize();
  return A;
}

static std::unique_ptr<Algebra> make_commutative_even(int n, const std::string& tag,
                                                      const std::string& gen_prefix) {
  std::vector<GenInfo> gens;
  for (int i = 0; i < n; ++i)
    gens.push_back({gen_prefix + std::to_string(i), Parity::even, 0, uint16_t(i)});
  auto A = std::make_unique<Algebra>(tag, std::move(gens));
  A->finalize();
  return A;
}

EnvelopingContext::EnvelopingContext(const QuadraticLieAlgebra& L)
    : L_(&L),
      uea_(make_uea_algebra(L, "U(" + L.name() + ")")),
      sym_(make_commutative_even(L.dim(), "S(" + L.name() + ")", "e")),
      dual_(make_commutative_even(L.dim(), "Sdual(" + L.name() + ")", "m")) {}

Element EnvelopingContext::lin(const Algebra& A, const RatVector& v) {
  Element e(&A);
  for (int i = 0; i < v.size(); ++i)
    if (sgn(v(i)) != 0) e.add_term({uint16_t(i)}, v(i));
  return e;
}

Element EnvelopingContext::sym_to_uea(const Element& p) const {
  if (p.algebra() != sym_.get())
    throw std::invalid_argument("sym_to_uea: S(g) element required");
  std::vector<Element> images;
  std::vector<Parity> parities(size_t(L_->dim()), Parity::even);
  for (int a = 0; a < L_->dim(); ++a) images.push_back(uea_->generator(uint16_t(a)));
  Element out(uea_.get());
  for (const auto& [w, c] : p.terms())
    out += c * symmetrize_word_images(*uea_, w, images, parities);
  return out;
}

Element EnvelopingContext::apply_dual_operator(const Element& F, const Element& p) const {
  if (F.algebra() != dual_.get())
    throw std::invalid_argument("apply_dual_operator: dual-series element required");
  if (p.algebra() != sym_.get())
    throw std::invalid_argument("apply_dual_operator: S(g) element required");
  Element out(sym_.get());
  for (const auto& [fw, fc] : F.terms()) {
    Element cur = p;
    for (auto a : fw) {
      // d/d e_a on each monomial
      Element next(sym_.get());
      for (const auto& [w, c] : cur.terms()) {
        int count = 0;
        for (auto g : w)
          if (g == a) ++count;
        if (count == 0) continue;
        Word reduced;
        bool removed = false;
        for (auto g : w) {
          if (g == a && !removed) {
            removed = true;
            continue;
          }
          reduced.push_back(g);
        }
        next.add_term(reduced, Rational(count) * c);
      }
      cur = next;
      if (cur.is_zero()) break;
    }
    out += fc * cur;
  }
  return out;
}

Element EnvelopingContext::dual_from_poly(
    const std::map<std::vector<int>, Rational>& poly) const {
  Element e(dual_.get());
  for (const auto& [mono, c] : poly) {
    Word w;
    for (int a : mono) w.push_back(uint16_t(a));
    e.add_term(w, c);
  }
  return e;
}

TruncatedDualSeries EnvelopingContext::duflo_factor(int M) const {
  auto table = series_tables(std::max(M, 2));
  Element expo(dual_.get());
  for (int m = 2; m <= M; m += 2) {
    Rational b = table.b(size_t(m));
    if (sgn(b) == 0) continue;
    expo += (b / 2) * dual_from_poly(trace_power_polynomial(*L_, m));
  }
  expo = degree_truncate(expo, M);
  return {poly_exp_truncated(*dual_, expo, M), M};
}

Element EnvelopingContext::duflo_map(const Element& p, int M) const {
  for (const auto& [w, c] : p.terms())
    if (int(w.size()) > M)
      throw std::invalid_argument("duflo_map: truncation below polynomial degree");
  return sym_to_uea(apply_dual_operator(duflo_factor(M), p));
}

Element EnvelopingContext::casimir() const {
  RatMatrix G = L_->dual_basis_matrix();
  Element out(uea_.get());
  for (int a = 0; a < L_->dim(); ++a)
    out += uea_->mul(uea_->generator(uint16_t(a)), lin(*uea_, RatVector(G.row(a).transpose())));
  return out;
}

Rational EnvelopingContext::casimir_trace() const {
  RatMatrix G = L_->dual_basis_matrix();
  Rational t(0);
  for (int a = 0; a < L_->dim(); ++a) {
    RatMatrix ada = L_->ad_basis(a);
    RatMatrix addual = L_->ad_matrix(RatVector(G.row(a).transpose()));
    t += trace(RatMatrix(ada * addual));
  }
  return t;
}

Element EnvelopingContext::adjoint_on(const Algebra& A, const RatVector& zeta,
                                      const Element& x) const {
  std::vector<Element> images;
  for (int b = 0; b < L_->dim(); ++b)
    images.push_back(lin(A, L_->bracket(zeta, L_->basis_vector(b))));
  return Derivation(&A, Parity::even, images)(x);
}

Element EnvelopingContext::adjoint_uea(const RatVector& zeta, const Element& x) const {
  return adjoint_on(*uea_, zeta, x);
}

Element EnvelopingContext::adjoint_sym(const RatVector& zeta, const Element& x) const {
  return adjoint_on(*sym_, zeta, x);
}

bool EnvelopingContext::invariant_uea(const Element& x) const {
  for (int a = 0; a < L_->dim(); ++a)
    if (!adjoint_uea(L_->basis_vector(a), x).is_zero()) return false;
  return true;
}

bool EnvelopingContext::invariant_sym(const Element& x) const {
  for (int a = 0; a < L_->dim(); ++a)
    if (!adjoint_sym(L_->basis_vector(a), x).is_zero()) return false;
  return true;
}

std::vector<Element> EnvelopingContext::invariant_sym_basis(int degree) const {
  // enumerate degree-d commutative monomials
  std::vector<Word> monos;
  Word cur;
  std::function<void(int, int)> rec = [&](int start, int left) {
    if (left == 0) {
      monos.push_back(cur);
      return;
    }
    for (int g = start; g < L_->dim(); ++g) {
      cur.push_back(uint16_t(g));
      rec(g, left - 1);
      cur.pop_back();
    }
  };
  rec(0, degree);
  std::map<Word, int> index;
  for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = int(i);
  // rows: (basis direction, target monomial), cols: source monomials
  RatMatrix Mrows = rat_zero_matrix(Eigen::Index(L_->dim() * monos.size()),
                                    Eigen::Index(monos.size()));
  for (size_t j = 0; j < monos.size(); ++j) {
    Element m = sym_->monomial(monos[j]);
    for (int d = 0; d < L_->dim(); ++d) {
      Element dm = adjoint_sym(L_->basis_vector(d), m);
      for (const auto& [w, c] : dm.terms())
        Mrows(Eigen::Index(size_t(d) * monos.size() + size_t(index.at(w))), Eigen::Index(j)) = c;
    }
  }
  std::vector<Element> out;
  for (const auto& v : nullspace(Mrows)) {
    Element e(sym_.get());
    for (size_t j = 0; j < monos.size(); ++j)
      if (sgn(v(Eigen::Index(j))) != 0) e.add_term(monos[j], v(Eigen::Index(j)));
    out.push_back(e);
  }
  return out;
}

}  // namespace qweil
