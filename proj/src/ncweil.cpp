#include "qweil/ncweil.hpp"

#include <sstream>

namespace qweil {

static std::unique_ptr<Algebra> make_ncw_algebra(const QuadraticLieAlgebra& L) {
  const int n = L.dim();
  std::vector<GenInfo> gens;
  for (int a = 0; a < n; ++a)
    gens.push_back({"hx" + std::to_string(a), Parity::even, 0, uint16_t(a)});
  for (int a = 0; a < n; ++a)
    gens.push_back({"x" + std::to_string(a), Parity::odd, 1, uint16_t(a)});
  auto A = std::make_unique<Algebra>("NCW(" + L.name() + ")", std::move(gens));
  // [hat_a, hat_b] = hat of [e_a, e_b]
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < a; ++b) {
      RatVector br = L.bracket(L.basis_vector(a), L.basis_vector(b));
      Element e(A.get());
      for (int k = 0; k < n; ++k)
        if (sgn(br(k)) != 0) e.add_term({uint16_t(k)}, br(k));
      if (!e.is_zero()) A->set_bracket(uint16_t(a), uint16_t(b), e);
    }
  // {cl_a, cl_b} = B(a, b); cross brackets [cl, hat] = 0 by default
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b)
      if (sgn(L.bilinear()(a, b)) != 0)
        A->set_bracket(uint16_t(n + a), uint16_t(n + b), A->unit(L.bilinear()(a, b)));
  A->finalize();
  return A;
}

static std::unique_ptr<Algebra> make_sdw_algebra(int n, const std::string& name) {
  std::vector<GenInfo> gens;
  for (int a = 0; a < n; ++a)
    gens.push_back({"m" + std::to_string(a), Parity::even, 0, uint16_t(a)});
  for (int a = 0; a < n; ++a)
    gens.push_back({"w" + std::to_string(a), Parity::odd, 1, uint16_t(a)});
  auto A = std::make_unique<Algebra>("SdW(" + name + ")", std::move(gens));
  A->finalize();
  return A;
}

NCWeilContext::NCWeilContext(const QuadraticLieAlgebra& L)
    : L_(L),
      n_(L.dim()),
      dual_(rat_zero_matrix(L.dim(), L.dim())),
      env_(L_),
      cliff_(L_),
      weil_(L_),
      ncw_(make_ncw_algebra(L_)),
      sdw_(make_sdw_algebra(L.dim(), L.name())),
      dirac_(ncw_.get()) {
  if (!L_.b_nondegenerate())
    throw std::invalid_argument("NCWeilContext requires nondegenerate B");
  dual_ = L_.dual_basis_matrix();
  dirac_ = build_dirac();
}

Element NCWeilContext::hat_vector(const RatVector& v) const {
  Element e(ncw_.get());
  for (int i = 0; i < n_; ++i)
    if (sgn(v(i)) != 0) e.add_term({hat_id(i)}, v(i));
  return e;
}

Element NCWeilContext::cl_vector(const RatVector& v) const {
  Element e(ncw_.get());
  for (int i = 0; i < n_; ++i)
    if (sgn(v(i)) != 0) e.add_term({cl_id(i)}, v(i));
  return e;
}

Element NCWeilContext::from_uea(const Element& u) const {
  if (u.algebra() != &env_.uea()) throw std::invalid_argument("from_uea: U(g) element required");
  Element out(ncw_.get());
  for (const auto& [w, c] : u.terms()) out.add_term(w, c);  // hat ids match U ids
  return out;
}

Element NCWeilContext::from_cl(const Element& x) const {
  if (x.algebra() != &cliff_.cl()) throw std::invalid_argument("from_cl: Cl(g) element required");
  Element out(ncw_.get());
  for (const auto& [w, c] : x.terms()) {
    Word nw;
    for (auto g : w) nw.push_back(uint16_t(g + n_));
    out.add_term(nw, c);
  }
  return out;
}

Element NCWeilContext::to_uea(const Element& x) const {
  Element out(&env_.uea());
  for (const auto& [w, c] : x.terms()) {
    for (auto g : w)
      if (g >= n_) throw std::invalid_argument("to_uea: nontrivial Clifford part");
    out.add_term(w, c);
  }
  return out;
}

Element NCWeilContext::gamma_ncw(const RatVector& zeta) const {
  return from_cl(cliff_.gamma(zeta));
}

Element NCWeilContext::bar_vector(const RatVector& zeta) const {
  return hat_vector(zeta) + gamma_ncw(zeta);
}

Element NCWeilContext::build_dirac() const {
  Element out(ncw_.get());
  for (int a = 0; a < n_; ++a) {
    RatVector dual_a = dual_.row(a).transpose();
    out += ncw_->mul(bar_vector(L_.basis_vector(a)), cl_vector(dual_a));
    out += rat(-2, 3) * ncw_->mul(gamma_ncw(L_.basis_vector(a)), cl_vector(dual_a));
  }
  return out;
}

Element NCWeilContext::iota(const RatVector& xi, const Element& x) const {
  return ncw_->super_commutator(cl_vector(xi), x);
}

Element NCWeilContext::lie_der(const RatVector& xi, const Element& x) const {
  return ncw_->super_commutator(bar_vector(xi), x);
}

Element NCWeilContext::d(const Element& x) const {
  return ncw_->super_commutator(dirac_, x);
}

bool NCWeilContext::is_invariant(const Element& x) const {
  for (int a = 0; a < n_; ++a)
    if (!lie_der(L_.basis_vector(a), x).is_zero()) return false;
  return true;
}

bool NCWeilContext::is_horizontal(const Element& x) const {
  for (int a = 0; a < n_; ++a)
    if (!iota(L_.basis_vector(a), x).is_zero()) return false;
  return true;
}

bool NCWeilContext::cl_part_trivial(const Element& x) const {
  for (const auto& [w, c] : x.terms())
    for (auto g : w)
      if (g >= n_) return false;
  return true;
}

Element NCWeilContext::quantize(const Element& w) const {
  Element k(weil_.kosz().zero());
  if (w.algebra() == &weil_.curv())
    k = weil_.curv_to_kosz(w);
  else if (w.algebra() == &weil_.kosz())
    k = w;
  else
    throw std::invalid_argument("quantize: Weil-algebra element required");
  Element out(ncw_.get());
  std::vector<Element> images;
  std::vector<Parity> parities;
  for (int a = 0; a < n_; ++a) {
    images.push_back(bar_vector(L_.basis_vector(a)));
    parities.push_back(Parity::even);
  }
  for (int a = 0; a < n_; ++a) {
    images.push_back(ncw_->generator(cl_id(a)));
    parities.push_back(Parity::odd);
  }
  for (const auto& [word, c] : k.terms()) {
    {
      std::lock_guard<std::mutex> lock(qmx_);
      auto it = qcache_.find(word);
      if (it != qcache_.end()) {
        out += c * it->second;
        continue;
      }
    }
    Element q = symmetrize_word_images(*ncw_, word, images, parities);
    {
      std::lock_guard<std::mutex> lock(qmx_);
      qcache_.emplace(word, q);
    }
    out += c * q;
  }
  return out;
}

Element NCWeilContext::build_S(int max_deg) const {
  // J^{1/2} leg
  Element J = env_.duflo_factor(max_deg).poly;
  Element Js(sdw_.get());
  for (const auto& [w, c] : J.terms()) Js.add_term(w, c);  // dual ids match
  // r = sum over odd k of c_k lambda_B(ad^k), coefficients polynomial in xi
  auto table = series_tables(size_t(std::max(max_deg, 2)));
  Element r(sdw_.get());
  for (int k = 1; k <= max_deg; k += 2) {
    Rational ck = table.ln_j_prime.at(size_t(k));
    if (sgn(ck) == 0) continue;
    auto N = symbolic_ad_power(L_, k);
    // lambda_B(N) = 1/2 sum_{a,b,c} N(b,a) G(a,c) w_b ^ w_c
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        const auto& entry = N[size_t(b) * size_t(n_) + size_t(a)];
        if (entry.empty()) continue;
        for (int c = 0; c < n_; ++c) {
          if (sgn(dual_(a, c)) == 0 || b == c) continue;
          for (const auto& [mono, coef] : entry) {
            Word w;
            for (int m : mono) w.push_back(uint16_t(m));
            uint16_t wb = uint16_t(n_ + b), wc = uint16_t(n_ + c);
            Rational v = ck * coef * dual_(a, c) / 2;
            if (wb < wc) {
              w.push_back(wb);
              w.push_back(wc);
              r.add_term(w, v);
            } else {
              w.push_back(wc);
              w.push_back(wb);
              r.add_term(w, -v);
            }
          }
        }
      }
  }
  auto dual_degree = [&](const Word& w) {
    int d = 0;
    for (auto g : w)
      if (g < n_) ++d;
    return d;
  };
  auto truncate = [&](const Element& x) {
    return x.filtered([&](const Word& w) { return dual_degree(w) <= max_deg; });
  };
  r = truncate(r);
  Element expr = sdw_->unit();
  Element pow = sdw_->unit();
  Rational fact(1);
  for (int k = 1; k <= std::max(max_deg, n_); ++k) {
    pow = truncate(sdw_->mul(pow, r));
    if (pow.is_zero()) break;
    fact *= Rational(k);
    expr += (Rational(1) / fact) * pow;
  }
  return truncate(sdw_->mul(Js, expr));
}

Element NCWeilContext::iota_S(const Element& w_curv, int max_deg) const {
  if (w_curv.algebra() != &weil_.curv())
    throw std::invalid_argument("iota_S: curvature-presentation element required");
  Element S = build_S(max_deg);
  const Algebra& curv = weil_.curv();
  Element out(&curv);
  for (const auto& [sw, sc] : S.terms()) {
    Word mu_part, wedge_part;
    for (auto g : sw) (g < n_ ? mu_part : wedge_part).push_back(g);
    for (const auto& [ww, wc] : w_curv.terms()) {
      Word hat_part, odd_part;
      for (auto g : ww) (g < n_ ? hat_part : odd_part).push_back(g);
      // dual leg: iterated coordinate derivations on the hat multiset
      Element hats(&curv);
      hats.add_term(hat_part, Rational(1));
      for (auto m : mu_part) {
        Element next(&curv);
        for (const auto& [hw, hc] : hats.terms()) {
          int count = 0;
          for (auto g : hw)
            if (g == m) ++count;
          if (count == 0) continue;
          Word reduced;
          bool removed = false;
          for (auto g : hw) {
            if (g == m && !removed) {
              removed = true;
              continue;
            }
            reduced.push_back(g);
          }
          next.add_term(reduced, Rational(count) * hc);
        }
        hats = next;
        if (hats.is_zero()) break;
      }
      if (hats.is_zero()) continue;
      // wedge leg: B-contraction, iota(y ^ y') = iota(y) o iota(y')
      Element odds(&curv);
      odds.add_term(odd_part, Rational(1));
      for (auto it = wedge_part.rbegin(); it != wedge_part.rend() && !odds.is_zero(); ++it) {
        int b = int(*it) - n_;
        std::vector<Element> images(curv.num_generators(), Element(&curv));
        for (int c = 0; c < n_; ++c)
          images[size_t(n_ + c)] = curv.unit(L_.bilinear()(b, c));
        odds = Derivation(&curv, Parity::odd, images)(odds);
      }
      if (odds.is_zero()) continue;
      out += (sc * wc) * curv.mul(hats, odds);
    }
  }
  return out;
}

Element NCWeilContext::sym_q(const Element& w_curv) const {
  if (w_curv.algebra() != &weil_.curv())
    throw std::invalid_argument("sym_q: curvature-presentation element required");
  Element out(ncw_.get());
  for (const auto& [ww, wc] : w_curv.terms()) {
    Word hat_part, odd_part;
    for (auto g : ww) (g < n_ ? hat_part : odd_part).push_back(g);
    // sym_U on the polynomial part
    Element su = env_.sym_to_uea(env_.sym().monomial(hat_part));
    // Chevalley q on the wedge part
    Word ext_word;
    for (auto g : odd_part) ext_word.push_back(uint16_t(g - n_));
    Element qx = cliff_.quantize(cliff_.ext().monomial(ext_word));
    out += wc * ncw_->mul(from_uea(su), from_cl(qx));
  }
  return out;
}

NCWeilContext::DiracSquareReport NCWeilContext::dirac_square_check() const {
  DiracSquareReport rep;
  Element d2 = ncw_->mul(dirac_, dirac_);
  Element cas = from_uea(env_.casimir());
  Rational tr = env_.casimir_trace();
  Element rhs = Rational(1, 2) * cas + ncw_->unit(tr / 48);
  rep.square_ok = (d2 == rhs);
  Element qcas = quantize(weil_.weil_casimir());
  Element rhs2 = cas + ncw_->unit(tr / 24);
  rep.intermediate_ok = (qcas == rhs2);
  if (!rep.square_ok) rep.witness = "D^2 = " + d2.str() + " expected " + rhs.str();
  if (!rep.intermediate_ok)
    rep.witness += " Q(hat-Casimir) = " + qcas.str() + " expected " + rhs2.str();
  return rep;
}

NCWeilContext::CheckReport NCWeilContext::duflo_factorization_check(int max_deg) const {
  CheckReport rep;
  for (const auto& w : weil_.kosz_monomials_up_to(max_deg)) {
    Element m = weil_.curv().monomial(w);
    Element lhs = quantize(m);
    Element rhs = sym_q(iota_S(m, max_deg));
    ++rep.checked;
    if (!(lhs == rhs)) {
      rep.ok = false;
      std::ostringstream os;
      os << "monomial " << m.str() << ": Q = " << lhs.str() << ", (sym x q) iota(S) = "
         << rhs.str();
      rep.witness = os.str();
      return rep;
    }
    // hat-only monomials: Q agrees with the Duflo map
    bool hat_only = true;
    for (auto g : w)
      if (g >= n_) hat_only = false;
    if (hat_only) {
      Element p = env_.sym().monomial(w);
      Element duf = env_.duflo_map(p, std::max(int(w.size()), max_deg));
      if (!(lhs == from_uea(duf))) {
        rep.ok = false;
        rep.witness = "Duflo restriction mismatch at " + m.str();
        return rep;
      }
    }
  }
  return rep;
}

NCWeilContext::CheckReport NCWeilContext::chain_map_check(int cap) const {
  CheckReport rep;
  for (const auto& w : weil_.kosz_monomials_up_to(cap)) {
    Element m = weil_.curv().monomial(w);
    Element qm = quantize(m);
    ++rep.checked;
    if (!(quantize(weil_.d_curv(m)) == d(qm))) {
      rep.ok = false;
      rep.witness = "d-chain failure at " + m.str();
      return rep;
    }
    for (int a = 0; a < n_; ++a) {
      RatVector xi = L_.basis_vector(a);
      if (!(quantize(weil_.iota_curv(xi, m)) == iota(xi, qm))) {
        rep.ok = false;
        rep.witness = "iota-chain failure at " + m.str();
        return rep;
      }
      if (!(quantize(weil_.lie_curv(xi, m)) == lie_der(xi, qm))) {
        rep.ok = false;
        rep.witness = "L-chain failure at " + m.str();
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace qweil
