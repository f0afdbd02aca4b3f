#include "qweil/relative.hpp"

#include <functional>
#include <sstream>

namespace qweil {

namespace {

std::vector<int> complement(int n, const std::vector<int>& k) {
  std::vector<bool> in_k(size_t(n), false);
  for (int i : k) in_k[size_t(i)] = true;
  std::vector<int> p;
  for (int i = 0; i < n; ++i)
    if (!in_k[size_t(i)]) p.push_back(i);
  return p;
}

bool in_span(const RatVector& v, const std::vector<int>& idx) {
  std::vector<bool> ok(size_t(v.size()), false);
  for (int i : idx) ok[size_t(i)] = true;
  for (int i = 0; i < v.size(); ++i)
    if (!ok[size_t(i)] && sgn(v(i)) != 0) return false;
  return true;
}

QuadraticLieAlgebra apply_base_change(const QuadraticLieAlgebra& L) {
  if (L.decomposition && L.decomposition->basis_change) {
    auto L2 = L.change_basis(*L.decomposition->basis_change, L.name() + "/adapted");
    SubalgebraDecomposition dec = *L.decomposition;
    dec.basis_change.reset();
    L2.decomposition = dec;
    return L2;
  }
  return L;
}

// all monomials of the algebra with word length <= cap (even gens repeat)
std::vector<Word> algebra_monomials_up_to(const Algebra& A, int cap) {
  std::vector<Word> out;
  Word cur;
  std::function<void(uint16_t, int)> rec = [&](uint16_t start, int left) {
    out.push_back(cur);
    if (left == 0) return;
    for (uint16_t g = start; g < A.num_generators(); ++g) {
      if (!cur.empty() && cur.back() == g && A.parity(g) == Parity::odd) continue;
      cur.push_back(g);
      rec(g, left - 1);
      cur.pop_back();
    }
  };
  rec(0, cap);
  std::sort(out.begin(), out.end(), WordLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

RelativePair::RelativePair(const QuadraticLieAlgebra& L)
    : Lg_(apply_base_change(L)), Lk_("k", 1), rel_dirac_() {
  if (!Lg_.decomposition || Lg_.decomposition->k_indices.empty())
    throw std::invalid_argument("RelativePair: decomposition with k required");
  k_idx_ = Lg_.decomposition->k_indices;
  p_idx_ = complement(Lg_.dim(), k_idx_);
  pos_in_k_.assign(size_t(Lg_.dim()), -1);
  for (size_t i = 0; i < k_idx_.size(); ++i) pos_in_k_[size_t(k_idx_[i])] = int(i);

  // B(k, p) = 0 and [k, p] c p
  for (int a : k_idx_)
    for (int b : p_idx_) {
      if (sgn(Lg_.bilinear()(a, b)) != 0)
        throw std::invalid_argument("RelativePair: p is not B-orthogonal to k");
      if (!in_span(Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b)), p_idx_))
        throw std::invalid_argument("RelativePair: [k, p] not contained in p");
    }
  Lk_ = Lg_.subalgebra(k_idx_, Lg_.name() + "|k");
  if (!Lk_.b_nondegenerate())
    throw std::invalid_argument("RelativePair: B|k degenerate");
  G_ = std::make_unique<NCWeilContext>(Lg_);
  K_ = std::make_unique<NCWeilContext>(Lk_);
  rel_dirac_ = G_->dirac() - embed_ncweil(K_->dirac());
}

Element RelativePair::gamma_p(const RatVector& zeta_g) const {
  return G_->from_cl(G_->cliff().gamma_partial(zeta_g, p_idx_));
}

Element RelativePair::embed_ncweil(const Element& x) const {
  const int nk = Lk_.dim();
  std::vector<Element> images;
  for (int i = 0; i < nk; ++i) {
    RatVector zeta = Lg_.basis_vector(k_idx_[size_t(i)]);
    images.push_back(G_->hat_vector(zeta) + gamma_p(zeta));
  }
  for (int i = 0; i < nk; ++i)
    images.push_back(G_->ncw().generator(G_->cl_id(k_idx_[size_t(i)])));
  return Substitution(&K_->ncw(), &G_->ncw(), images)(x);
}

Element RelativePair::chi(const Element& z_uk) const {
  return embed_ncweil(K_->from_uea(z_uk));
}

bool RelativePair::is_k_basic_clp(const Element& x) const {
  const int n = Lg_.dim();
  for (const auto& [w, c] : x.terms())
    for (auto g : w)
      if (g >= n && pos_in_k_[size_t(g - n)] >= 0) return false;
  for (int a : k_idx_) {
    RatVector xi = Lg_.basis_vector(a);
    if (!G_->lie_der(xi, x).is_zero()) return false;
    if (!G_->iota(xi, x).is_zero()) return false;
  }
  return true;
}

std::vector<RelCheck> RelativePair::relative_dirac_square_check() const {
  std::vector<RelCheck> out;
  {
    RelCheck c{"relative-dirac-basic", is_k_basic_clp(rel_dirac_), ""};
    if (!c.ok) c.witness = rel_dirac_.str();
    out.push_back(c);
  }
  {
    Element lhs = G_->ncw().mul(rel_dirac_, rel_dirac_);
    Rational tr_term = (G_->env().casimir_trace() - K_->env().casimir_trace()) / 48;
    Element rhs = Rational(1, 2) * G_->from_uea(G_->env().casimir()) -
                  Rational(1, 2) * chi(K_->env().casimir()) + G_->ncw().unit(tr_term);
    RelCheck c{"relative-dirac-square", lhs == rhs, ""};
    if (!c.ok) c.witness = "D^2 = " + lhs.str() + " expected " + rhs.str();
    out.push_back(c);
  }
  return out;
}

RelCheck RelativePair::vogan_cocycle_check(const Element& z_uk) const {
  if (!K_->env().invariant_uea(z_uk))
    throw std::invalid_argument("vogan_cocycle_check: z is not k-invariant");
  Element bracket = G_->ncw().super_commutator(rel_dirac_, chi(z_uk));
  RelCheck c{"vogan-cocycle", bracket.is_zero(), ""};
  if (!c.ok) c.witness = "[D_rel, chi(z)] = " + bracket.str();
  return c;
}

TriangularPair::TriangularPair(const QuadraticLieAlgebra& L) : RelativePair(L) {
  const auto& dec = *Lg_.decomposition;
  n_minus_ = dec.n_minus;
  n_plus_ = dec.n_plus;
  const int n = Lg_.dim();
  if (int(n_minus_.size() + n_plus_.size() + k_idx_.size()) != n)
    throw std::invalid_argument("TriangularPair: g != n_- + k + n_+");
  region_.assign(size_t(n), 1);
  for (int i : n_minus_) region_[size_t(i)] = 0;
  for (int i : n_plus_) region_[size_t(i)] = 2;
  for (int i : k_idx_)
    if (region_[size_t(i)] != 1)
      throw std::invalid_argument("TriangularPair: overlapping index sets");
  auto check_isotropic = [&](const std::vector<int>& idx, const char* which) {
    for (int a : idx)
      for (int b : idx) {
        if (sgn(Lg_.bilinear()(a, b)) != 0)
          throw std::invalid_argument(std::string("TriangularPair: ") + which +
                                      " not isotropic");
        if (!in_span(Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b)), idx))
          throw std::invalid_argument(std::string("TriangularPair: ") + which +
                                      " not a subalgebra");
      }
    for (int a : k_idx_)
      for (int b : idx)
        if (!in_span(Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b)), idx))
          throw std::invalid_argument(std::string("TriangularPair: ") + which +
                                      " not k-invariant");
  };
  check_isotropic(n_minus_, "n_-");
  check_isotropic(n_plus_, "n_+");

  // adapted enumerations: region-major
  std::vector<int> order;
  for (int i : n_minus_) order.push_back(i);
  for (int i : k_idx_) order.push_back(i);
  for (int i : n_plus_) order.push_back(i);
  u_pos_.assign(size_t(n), 0);
  cl_pos_.assign(size_t(n), 0);
  for (size_t p = 0; p < order.size(); ++p) {
    u_pos_[size_t(order[p])] = uint16_t(p);
    cl_pos_[size_t(order[p])] = uint16_t(p);
  }
  {
    auto gens = std::vector<GenInfo>(size_t(n));
    for (int b = 0; b < n; ++b)
      gens[u_pos_[size_t(b)]] = {"e" + std::to_string(b), Parity::even,
                                 uint8_t(region_[size_t(b)]), uint16_t(b)};
    adU_ = std::make_unique<Algebra>("Uad(" + Lg_.name() + ")", gens);
    for (uint16_t x = 0; x < n; ++x)
      for (uint16_t y = 0; y < x; ++y) {
        int a = adU_->gen(x).index, b = adU_->gen(y).index;
        RatVector br = Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b));
        Element e(adU_.get());
        for (int k = 0; k < n; ++k)
          if (sgn(br(k)) != 0) e.add_term({u_pos_[size_t(k)]}, br(k));
        if (!e.is_zero()) adU_->set_bracket(x, y, e);
      }
    adU_->finalize();
  }
  {
    auto gens = std::vector<GenInfo>(size_t(n));
    for (int b = 0; b < n; ++b)
      gens[cl_pos_[size_t(b)]] = {"x" + std::to_string(b), Parity::odd,
                                  uint8_t(region_[size_t(b)]), uint16_t(b)};
    adCl_ = std::make_unique<Algebra>("Clad(" + Lg_.name() + ")", gens);
    for (uint16_t x = 0; x < n; ++x)
      for (uint16_t y = 0; y <= x; ++y) {
        int a = adCl_->gen(x).index, b = adCl_->gen(y).index;
        if (sgn(Lg_.bilinear()(a, b)) != 0)
          adCl_->set_bracket(x, y, adCl_->unit(Lg_.bilinear()(a, b)));
      }
    adCl_->finalize();
  }
  {
    // Koszul presentation of NCW(g), region-major, bars before cls per region
    wbar_pos_.assign(size_t(n), 0);
    wcl_pos_.assign(size_t(n), 0);
    std::vector<GenInfo> gens;
    auto add_region = [&](const std::vector<int>& idx, uint8_t reg) {
      for (int b : idx) {
        wbar_pos_[size_t(b)] = uint16_t(gens.size());
        gens.push_back({"bx" + std::to_string(b), Parity::even, reg, uint16_t(b)});
      }
      for (int b : idx) {
        wcl_pos_[size_t(b)] = uint16_t(gens.size());
        gens.push_back({"x" + std::to_string(b), Parity::odd, reg, uint16_t(b)});
      }
    };
    add_region(n_minus_, 0);
    add_region(k_idx_, 1);
    add_region(n_plus_, 2);
    adW_ = std::make_unique<Algebra>("Wad(" + Lg_.name() + ")", gens);
    for (uint16_t x = 0; x < adW_->num_generators(); ++x)
      for (uint16_t y = 0; y <= x; ++y) {
        if (x == y && adW_->parity(x) == Parity::even) continue;
        int a = adW_->gen(x).index, b = adW_->gen(y).index;
        bool xbar = adW_->parity(x) == Parity::even;
        bool ybar = adW_->parity(y) == Parity::even;
        Element e(adW_.get());
        if (xbar && ybar) {  // [bar, bar] = bar of bracket
          RatVector br = Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b));
          for (int k = 0; k < n; ++k)
            if (sgn(br(k)) != 0) e.add_term({wbar_pos_[size_t(k)]}, br(k));
        } else if (!xbar && !ybar) {  // {cl, cl} = B
          if (sgn(Lg_.bilinear()(a, b)) != 0) e = adW_->unit(Lg_.bilinear()(a, b));
        } else {  // [bar_a, cl_b] = cl of [a, b]; engine stores [g_x, g_y]
          int bar_idx = xbar ? a : b;
          int cl_idx = xbar ? b : a;
          RatVector br = Lg_.bracket(Lg_.basis_vector(bar_idx), Lg_.basis_vector(cl_idx));
          for (int k = 0; k < n; ++k)
            if (sgn(br(k)) != 0) e.add_term({wcl_pos_[size_t(k)]}, br(k));
          if (!xbar && !e.is_zero()) e *= Rational(-1);  // [cl, bar] = -[bar, cl]
        }
        if (!e.is_zero()) adW_->set_bracket(x, y, e);
      }
    adW_->finalize();
  }
  tau_shift_.clear();
  for (int i : k_idx_) {
    RatMatrix ad = Lg_.ad_basis(i);
    Rational tr(0);
    for (int j : n_plus_) tr += ad(j, j);
    tau_shift_.push_back(tr / 2);
  }
}

Element TriangularPair::kappa_U(const Element& x) const {
  if (x.algebra() != &G_->env().uea())
    throw std::invalid_argument("kappa_U: U(g) element required");
  Element ad(adU_.get());
  for (const auto& [w, c] : x.terms()) {
    Word nw;
    for (auto g : w) nw.push_back(u_pos_[size_t(g)]);
    ad += c * adU_->normalize(nw);
  }
  Element out(&K_->env().uea());
  for (const auto& [w, c] : ad.terms()) {
    bool pure_k = true;
    Word kw;
    for (auto g : w) {
      if (adU_->gen(g).sort != 1) {
        pure_k = false;
        break;
      }
      kw.push_back(uint16_t(pos_in_k_[size_t(adU_->gen(g).index)]));
    }
    if (pure_k) out += c * K_->env().uea().normalize(kw);
  }
  return out;
}

Element TriangularPair::kappa_Cl(const Element& x) const {
  if (x.algebra() != &G_->cliff().cl())
    throw std::invalid_argument("kappa_Cl: Cl(g) element required");
  Element ad(adCl_.get());
  for (const auto& [w, c] : x.terms()) {
    Word nw;
    for (auto g : w) nw.push_back(cl_pos_[size_t(g)]);
    ad += c * adCl_->normalize(nw);
  }
  Element out(&K_->cliff().cl());
  for (const auto& [w, c] : ad.terms()) {
    bool pure_k = true;
    Word kw;
    for (auto g : w) {
      if (adCl_->gen(g).sort != 1) {
        pure_k = false;
        break;
      }
      kw.push_back(uint16_t(pos_in_k_[size_t(adCl_->gen(g).index)]));
    }
    if (pure_k) out += c * K_->cliff().cl().normalize(kw);
  }
  return out;
}

Element TriangularPair::kappa_W(const Element& x) const {
  if (x.algebra() != &G_->ncw())
    throw std::invalid_argument("kappa_W: NCW(g) element required");
  const int n = Lg_.dim();
  // substitution NCW(g) -> adapted Koszul: hat_a -> bar_a - gamma(e_a)
  std::vector<Element> images;
  for (int a = 0; a < n; ++a) {
    Element gam = G_->cliff().gamma_basis(a);
    Element gam_ad(adW_.get());
    for (const auto& [w, c] : gam.terms()) {
      Word nw;
      for (auto g : w) nw.push_back(wcl_pos_[size_t(g)]);
      gam_ad += c * adW_->normalize(nw);
    }
    images.push_back(adW_->generator(wbar_pos_[size_t(a)]) - gam_ad);
  }
  for (int a = 0; a < n; ++a)
    images.push_back(adW_->generator(wcl_pos_[size_t(a)]));
  Element ad = Substitution(&G_->ncw(), adW_.get(), images)(x);
  // keep pure-k words, read them into NCW(k) through bar = hat + gamma^k
  std::vector<Element> back(adW_->num_generators(), Element(&K_->ncw()));
  for (size_t i = 0; i < k_idx_.size(); ++i) {
    int b = k_idx_[i];
    RatVector sub = Lk_.basis_vector(int(i));
    back[wbar_pos_[size_t(b)]] = K_->bar_vector(sub);
    back[wcl_pos_[size_t(b)]] = K_->ncw().generator(K_->cl_id(int(i)));
  }
  Element filtered = ad.filtered([&](const Word& w) {
    for (auto g : w)
      if (adW_->gen(g).sort != 1) return false;
    return true;
  });
  Element out(&K_->ncw());
  for (const auto& [w, c] : filtered.terms()) {
    Element prod = K_->ncw().unit();
    for (auto g : w) prod = K_->ncw().mul(prod, back[g]);
    out += c * prod;
  }
  return out;
}

Element TriangularPair::tau(const Element& z) const {
  std::vector<Element> images;
  for (size_t i = 0; i < k_idx_.size(); ++i)
    images.push_back(K_->env().uea().generator(uint16_t(i)) -
                     K_->env().uea().unit(tau_shift_[i]));
  return Substitution(&K_->env().uea(), &K_->env().uea(), images)(z);
}

Element TriangularPair::tau_inverse(const Element& z) const {
  std::vector<Element> images;
  for (size_t i = 0; i < k_idx_.size(); ++i)
    images.push_back(K_->env().uea().generator(uint16_t(i)) +
                     K_->env().uea().unit(tau_shift_[i]));
  return Substitution(&K_->env().uea(), &K_->env().uea(), images)(z);
}

Element TriangularPair::kappa_S(const Element& p) const {
  Element out(&K_->env().sym());
  for (const auto& [w, c] : p.terms()) {
    bool pure = true;
    Word kw;
    for (auto g : w) {
      if (pos_in_k_[size_t(g)] < 0) {
        pure = false;
        break;
      }
      kw.push_back(uint16_t(pos_in_k_[size_t(g)]));
    }
    if (pure) out.add_term(kw, c);
  }
  return out;
}

std::vector<RelCheck> TriangularPair::hc_diagram_checks(int cap) const {
  std::vector<RelCheck> out;
  const int n = Lg_.dim();
  auto monos = G_->weil().kosz_monomials_up_to(cap);

  {  // (i) kappa_W = (tau o kappa_U) (x) kappa_Cl
    RelCheck c{"hc-kappaW-factorizes", true, ""};
    for (const auto& w : monos) {
      Word hat_part, cl_part;
      for (auto g : w) (g < n ? hat_part : cl_part).push_back(g);
      Word cl_shift;
      for (auto g : cl_part) cl_shift.push_back(uint16_t(g - n));
      Element lhs = kappa_W(G_->ncw().monomial(w));
      Element ku = tau(kappa_U(G_->env().uea().monomial(hat_part)));
      Element kc = kappa_Cl(G_->cliff().cl().monomial(cl_shift));
      Element rhs = K_->ncw().mul(K_->from_uea(ku), K_->from_cl(kc));
      if (!(lhs == rhs)) {
        c.ok = false;
        c.witness = "at " + G_->ncw().monomial(w).str() + ": kappa_W = " + lhs.str() +
                    " vs " + rhs.str();
        break;
      }
    }
    out.push_back(c);
  }
  {  // (ii) kappa_W(D_g) = D_k
    Element img = kappa_W(G_->dirac());
    RelCheck c{"hc-kappaW-dirac", img == K_->dirac(), ""};
    if (!c.ok) c.witness = "kappa_W(D_g) = " + img.str();
    out.push_back(c);
  }
  {  // (iii) kappas are k-ds homomorphisms
    RelCheck c{"hc-kappas-equivariant", true, ""};
    for (const auto& w : monos) {
      Element m = G_->ncw().monomial(w);
      Element km = kappa_W(m);
      if (!(kappa_W(G_->d(m)) == K_->d(km))) {
        c.ok = false;
        c.witness = "d fails at " + m.str();
        break;
      }
      for (size_t i = 0; i < k_idx_.size() && c.ok; ++i) {
        RatVector xi = Lg_.basis_vector(k_idx_[i]);
        RatVector xi_k = Lk_.basis_vector(int(i));
        if (!(kappa_W(G_->iota(xi, m)) == K_->iota(xi_k, km)) ||
            !(kappa_W(G_->lie_der(xi, m)) == K_->lie_der(xi_k, km))) {
          c.ok = false;
          c.witness = "iota/L fails at " + m.str();
        }
      }
      if (!c.ok) break;
    }
    // kappa_U and kappa_Cl commute with the k-adjoint action
    if (c.ok) {
      for (const auto& w : algebra_monomials_up_to(G_->env().uea(), std::min(cap, 3))) {
        Element m = G_->env().uea().monomial(w);
        for (size_t i = 0; i < k_idx_.size(); ++i) {
          RatVector xi = Lg_.basis_vector(k_idx_[i]);
          RatVector xi_k = Lk_.basis_vector(int(i));
          if (!(kappa_U(G_->env().adjoint_uea(xi, m)) ==
                K_->env().adjoint_uea(xi_k, kappa_U(m)))) {
            c.ok = false;
            c.witness = "kappa_U equivariance fails at " + m.str();
            break;
          }
        }
        if (!c.ok) break;
      }
    }
    out.push_back(c);
  }
  {  // (iv) Duflo square with the tau-shift; unshifted kappa_U as control
    RelCheck c{"hc-duflo-square", true, ""};
    bool control_diff = false;
    for (int d = 1; d <= cap; ++d) {
      for (const auto& p : G_->env().invariant_sym_basis(d)) {
        Element lhs = tau(kappa_U(G_->env().duflo_map(p, cap)));
        Element rhs = K_->env().duflo_map(kappa_S(p), cap);
        if (!(lhs == rhs)) {
          c.ok = false;
          c.witness = "fails at invariant " + p.str();
        }
        if (!(kappa_U(G_->env().duflo_map(p, cap)) == rhs)) control_diff = true;
      }
    }
    out.push_back(c);
    bool shift_nonzero = false;
    for (const auto& s : tau_shift_)
      if (sgn(s) != 0) shift_nonzero = true;
    RelCheck ctrl{"hc-rho-shift-needed", !shift_nonzero || control_diff, ""};
    if (!ctrl.ok) ctrl.witness = "unshifted kappa_U already matches; control vacuous";
    out.push_back(ctrl);
  }
  {  // kappa_U is multiplicative on n_- U g n_+ + U k (sampled pairs)
    RelCheck c{"hc-kappaU-multiplicative-on-subalgebra", true, ""};
    std::vector<Element> samples;
    const auto& U = G_->env().uea();
    for (size_t i = 0; i < k_idx_.size(); ++i) {
      samples.push_back(U.generator(uint16_t(k_idx_[i])));
      samples.push_back(U.mul(U.generator(uint16_t(k_idx_[i])),
                              U.generator(uint16_t(k_idx_[0]))));
    }
    for (int a : n_minus_)
      for (int b : n_plus_)
        samples.push_back(U.mul(U.generator(uint16_t(a)), U.generator(uint16_t(b))));
    for (const auto& x : samples)
      for (const auto& y : samples)
        if (!(kappa_U(U.mul(x, y)) == K_->env().uea().mul(kappa_U(x), kappa_U(y)))) {
          c.ok = false;
          c.witness = "fails at " + x.str() + " times " + y.str();
        }
    out.push_back(c);
  }
  return out;
}

SymmetricPair::SymmetricPair(const QuadraticLieAlgebra& L) : Lg_(apply_base_change(L)) {
  if (!Lg_.decomposition || Lg_.decomposition->k_indices.empty())
    throw std::invalid_argument("SymmetricPair: decomposition with k required");
  k_idx_ = Lg_.decomposition->k_indices;
  p_idx_ = complement(Lg_.dim(), k_idx_);
  const int n = Lg_.dim();
  auto check_zero_block = [&](const std::vector<int>& idx, const char* which) {
    for (int a : idx)
      for (int b : idx)
        if (sgn(Lg_.bilinear()(a, b)) != 0)
          throw std::invalid_argument(std::string("SymmetricPair: B|") + which +
                                      " nonzero (eps*B = -B fails)");
  };
  check_zero_block(k_idx_, "k");
  check_zero_block(p_idx_, "p");
  for (int a : k_idx_)
    for (int b : k_idx_)
      if (!in_span(Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b)), k_idx_))
        throw std::invalid_argument("SymmetricPair: k not a subalgebra");
  for (int a : k_idx_)
    for (int b : p_idx_)
      if (!in_span(Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b)), p_idx_))
        throw std::invalid_argument("SymmetricPair: [k, p] not in p");
  for (int a : p_idx_)
    for (int b : p_idx_)
      if (!in_span(Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b)), k_idx_))
        throw std::invalid_argument("SymmetricPair: [p, p] not in k");
  G_ = std::make_unique<NCWeilContext>(Lg_);
  // f(xi) = 1/2 tr_k(ad_xi)
  for (int a : k_idx_) {
    RatMatrix ad = Lg_.ad_basis(a);
    Rational tr(0);
    for (int j : k_idx_) tr += ad(j, j);
    f_.push_back(tr / 2);
  }
  // adapted order: p first, then k
  u_pos_.assign(size_t(n), 0);
  auto gens = std::vector<GenInfo>(size_t(n));
  size_t pos = 0;
  for (int b : p_idx_) {
    u_pos_[size_t(b)] = uint16_t(pos);
    gens[pos] = {"e" + std::to_string(b), Parity::even, 0, uint16_t(b)};
    ++pos;
  }
  for (int b : k_idx_) {
    u_pos_[size_t(b)] = uint16_t(pos);
    gens[pos] = {"e" + std::to_string(b), Parity::even, 1, uint16_t(b)};
    ++pos;
  }
  adU_ = std::make_unique<Algebra>("Uad(" + Lg_.name() + ")", gens);
  for (uint16_t x = 0; x < n; ++x)
    for (uint16_t y = 0; y < x; ++y) {
      int a = adU_->gen(x).index, b = adU_->gen(y).index;
      RatVector br = Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b));
      Element e(adU_.get());
      for (int k = 0; k < n; ++k)
        if (sgn(br(k)) != 0) e.add_term({u_pos_[size_t(k)]}, br(k));
      if (!e.is_zero()) adU_->set_bracket(x, y, e);
    }
  adU_->finalize();
}

Element SymmetricPair::to_adapted(const Element& x) const {
  if (x.algebra() != &G_->env().uea())
    throw std::invalid_argument("to_adapted: U(g) element required");
  Element out(adU_.get());
  for (const auto& [w, c] : x.terms()) {
    Word nw;
    for (auto g : w) nw.push_back(u_pos_[size_t(g)]);
    out += c * adU_->normalize(nw);
  }
  return out;
}

Element SymmetricPair::quotient_reduce(const Element& x) const {
  if (x.algebra() != adU_.get())
    throw std::invalid_argument("quotient_reduce: adapted element required");
  Element out(adU_.get());
  for (const auto& [w, c] : x.terms()) {
    Rational coef = c;
    size_t end = w.size();
    while (end > 0 && adU_->gen(w[end - 1]).sort == 1) {
      int kpos = -1;
      for (size_t i = 0; i < k_idx_.size(); ++i)
        if (k_idx_[i] == adU_->gen(w[end - 1]).index) kpos = int(i);
      coef *= -f_[size_t(kpos)];
      --end;
      if (sgn(coef) == 0) break;
    }
    if (sgn(coef) == 0) continue;
    Word reduced(w.begin(), w.begin() + long(end));
    out.add_term(reduced, coef);
  }
  return out;
}

bool SymmetricPair::is_sp(const Element& p) const {
  for (const auto& [w, c] : p.terms())
    for (auto g : w) {
      bool inp = false;
      for (int b : p_idx_)
        if (b == int(g)) inp = true;
      if (!inp) return false;
    }
  return true;
}

bool SymmetricPair::k_invariant_sym(const Element& p) const {
  for (int a : k_idx_)
    if (!G_->env().adjoint_sym(Lg_.basis_vector(a), p).is_zero()) return false;
  return true;
}

bool SymmetricPair::k_invariant_quotient(const Element& reduced) const {
  for (int a : k_idx_) {
    std::vector<Element> images;
    for (size_t g = 0; g < adU_->num_generators(); ++g) {
      RatVector br = Lg_.bracket(Lg_.basis_vector(a),
                                 Lg_.basis_vector(adU_->gen(uint16_t(g)).index));
      Element e(adU_.get());
      for (int k = 0; k < Lg_.dim(); ++k)
        if (sgn(br(k)) != 0) e.add_term({u_pos_[size_t(k)]}, br(k));
      images.push_back(e);
    }
    Element der = Derivation(adU_.get(), Parity::even, images)(reduced);
    if (!quotient_reduce(der).is_zero()) return false;
  }
  return true;
}

std::vector<Element> SymmetricPair::invariant_sp_basis(int degree) const {
  std::vector<Word> monos;
  Word cur;
  std::function<void(size_t, int)> rec = [&](size_t start, int left) {
    if (left == 0) {
      monos.push_back(cur);
      return;
    }
    for (size_t t = start; t < p_idx_.size(); ++t) {
      cur.push_back(uint16_t(p_idx_[t]));
      rec(t, left - 1);
      cur.pop_back();
    }
  };
  rec(0, degree);
  std::map<Word, int> index;
  for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = int(i);
  RatMatrix M = rat_zero_matrix(Eigen::Index(k_idx_.size() * monos.size()),
                                Eigen::Index(monos.size()));
  for (size_t j = 0; j < monos.size(); ++j) {
    Element m = G_->env().sym().monomial(monos[j]);
    for (size_t d = 0; d < k_idx_.size(); ++d) {
      Element dm = G_->env().adjoint_sym(Lg_.basis_vector(k_idx_[d]), m);
      for (const auto& [w, c] : dm.terms())
        M(Eigen::Index(d * monos.size() + size_t(index.at(w))), Eigen::Index(j)) = c;
    }
  }
  std::vector<Element> out;
  for (const auto& v : nullspace(M)) {
    Element e(&G_->env().sym());
    for (size_t j = 0; j < monos.size(); ++j)
      if (sgn(v(Eigen::Index(j))) != 0) e.add_term(monos[j], v(Eigen::Index(j)));
    out.push_back(e);
  }
  return out;
}

Element SymmetricPair::jp_half(int M) const {
  auto table = series_tables(size_t(std::max(M, 2)));
  Element expo(&G_->env().dual());
  for (int m = 2; m <= M; m += 2) {
    Rational b = table.b(size_t(m));
    if (sgn(b) == 0) continue;
    auto tr = trace_power_polynomial_block(Lg_, m, p_idx_, p_idx_, Rational(2));
    // translate positions into p_idx into g-coordinates
    Element poly(&G_->env().dual());
    for (const auto& [mono, coef] : tr) {
      Word w;
      for (int pos : mono) w.push_back(uint16_t(p_idx_[size_t(pos)]));
      std::sort(w.begin(), w.end());
      poly.add_term(w, coef);
    }
    expo += (b / 2) * poly;
  }
  expo = degree_truncate(expo, M);
  return poly_exp_truncated(G_->env().dual(), expo, M);
}

Element SymmetricPair::rouviere_map(const Element& p, int M) const {
  if (!is_sp(p)) throw std::invalid_argument("rouviere_map: S(p) element required");
  Element q = G_->env().apply_dual_operator(jp_half(M), p);
  return quotient_reduce(to_adapted(G_->env().sym_to_uea(q)));
}

std::vector<RelCheck> SymmetricPair::rouviere_multiplicativity_check(int cap) const {
  std::vector<RelCheck> out;
  std::vector<Element> invs;
  for (int d = 1; d < cap; ++d)
    for (const auto& e : invariant_sp_basis(d)) invs.push_back(e);
  RelCheck c{"rouviere-multiplicative", true, ""};
  RelCheck inv_c{"rouviere-preserves-invariance", true, ""};
  for (const auto& p : invs)
    for (const auto& q : invs) {
      int dp = int(p.terms().begin()->first.size());
      int dq = int(q.terms().begin()->first.size());
      if (dp + dq > cap) continue;
      Element pq = G_->env().sym().mul(p, q);
      if (!k_invariant_sym(pq)) continue;
      Element lhs = rouviere_map(pq, cap);
      Element rhs = quotient_reduce(
          adU_->mul(rouviere_map(p, cap), rouviere_map(q, cap)));
      if (!(lhs == rhs)) {
        c.ok = false;
        c.witness = "fails at " + p.str() + " and " + q.str() + ": " + lhs.str() +
                    " vs " + rhs.str();
      }
      if (!k_invariant_quotient(lhs)) {
        inv_c.ok = false;
        inv_c.witness = "image of " + p.str() + " * " + q.str() + " not invariant";
      }
    }
  out.push_back(c);
  out.push_back(inv_c);
  return out;
}

RelCheck SymmetricPair::ideal_kill_check(int maxdeg) const {
  RelCheck c{"quotient-ideal-killed", true, ""};
  for (const auto& w : algebra_monomials_up_to(*adU_, maxdeg)) {
    Element x = adU_->monomial(w);
    for (size_t i = 0; i < k_idx_.size(); ++i) {
      Element gen = adU_->generator(u_pos_[size_t(k_idx_[i])]) + adU_->unit(f_[i]);
      if (!quotient_reduce(adU_->mul(x, gen)).is_zero()) {
        c.ok = false;
        c.witness = "x = " + x.str() + ", xi index " + std::to_string(k_idx_[i]);
        return c;
      }
    }
  }
  return c;
}

IsotropicQuotient::IsotropicQuotient(const QuadraticLieAlgebra& L,
                                     std::vector<int> k_indices)
    : Lg_(L), k_idx_(std::move(k_indices)) {
  const int n = Lg_.dim();
  p_idx_ = complement(n, k_idx_);
  is_k_.assign(size_t(n), false);
  for (int i : k_idx_) is_k_[size_t(i)] = true;
  for (int a : k_idx_) {
    for (int b : k_idx_) {
      if (sgn(Lg_.bilinear()(a, b)) != 0)
        throw std::invalid_argument("IsotropicQuotient: k not isotropic");
      if (!in_span(Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b)), k_idx_))
        throw std::invalid_argument("IsotropicQuotient: k not a subalgebra");
    }
    for (int b : p_idx_)
      if (!in_span(Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b)), p_idx_))
        throw std::invalid_argument("IsotropicQuotient: p not k-invariant");
  }
  // p co-isotropic: every x with B(x, p) = 0 lies in p
  {
    RatMatrix rows = rat_zero_matrix(Eigen::Index(p_idx_.size()), n);
    for (size_t r = 0; r < p_idx_.size(); ++r)
      for (int cidx = 0; cidx < n; ++cidx) rows(Eigen::Index(r), cidx) = Lg_.bilinear()(p_idx_[r], cidx);
    for (const auto& v : nullspace(rows))
      if (!in_span(v, p_idx_))
        throw std::invalid_argument("IsotropicQuotient: p not co-isotropic");
  }
  // B restricted to m = k-perp cap p must be nondegenerate
  if (!k_idx_.empty()) {
    RatMatrix rows = rat_zero_matrix(Eigen::Index(k_idx_.size()), Eigen::Index(p_idx_.size()));
    for (size_t r = 0; r < k_idx_.size(); ++r)
      for (size_t cpos = 0; cpos < p_idx_.size(); ++cpos)
        rows(Eigen::Index(r), Eigen::Index(cpos)) = Lg_.bilinear()(k_idx_[r], p_idx_[cpos]);
    auto mbasis = nullspace(rows);
    RatMatrix gram = rat_zero_matrix(Eigen::Index(mbasis.size()), Eigen::Index(mbasis.size()));
    for (size_t i = 0; i < mbasis.size(); ++i)
      for (size_t j = 0; j < mbasis.size(); ++j) {
        Rational v(0);
        for (size_t a = 0; a < p_idx_.size(); ++a)
          for (size_t b = 0; b < p_idx_.size(); ++b)
            v += mbasis[i](Eigen::Index(a)) * mbasis[j](Eigen::Index(b)) *
                 Lg_.bilinear()(p_idx_[a], p_idx_[b]);
        gram(Eigen::Index(i), Eigen::Index(j)) = v;
      }
    if (mbasis.size() > 0 && sgn(det(gram)) == 0)
      throw std::invalid_argument("IsotropicQuotient: B|m degenerate");
  }
  G_ = std::make_unique<NCWeilContext>(Lg_);

  // adapted Koszul algebra with all k-generators last
  wbar_pos_.assign(size_t(n), 0);
  wcl_pos_.assign(size_t(n), 0);
  std::vector<GenInfo> gens;
  auto add_block = [&](const std::vector<int>& idx, uint8_t reg) {
    for (int b : idx) {
      wbar_pos_[size_t(b)] = uint16_t(gens.size());
      gens.push_back({"bx" + std::to_string(b), Parity::even, reg, uint16_t(b)});
    }
    for (int b : idx) {
      wcl_pos_[size_t(b)] = uint16_t(gens.size());
      gens.push_back({"x" + std::to_string(b), Parity::odd, reg, uint16_t(b)});
    }
  };
  add_block(p_idx_, 0);
  add_block(k_idx_, 1);
  adW_ = std::make_unique<Algebra>("Wq(" + Lg_.name() + ")", gens);
  for (uint16_t x = 0; x < adW_->num_generators(); ++x)
    for (uint16_t y = 0; y <= x; ++y) {
      if (x == y && adW_->parity(x) == Parity::even) continue;
      int a = adW_->gen(x).index, b = adW_->gen(y).index;
      bool xbar = adW_->parity(x) == Parity::even;
      bool ybar = adW_->parity(y) == Parity::even;
      Element e(adW_.get());
      if (xbar && ybar) {
        RatVector br = Lg_.bracket(Lg_.basis_vector(a), Lg_.basis_vector(b));
        for (int k = 0; k < n; ++k)
          if (sgn(br(k)) != 0) e.add_term({wbar_pos_[size_t(k)]}, br(k));
      } else if (!xbar && !ybar) {
        if (sgn(Lg_.bilinear()(a, b)) != 0) e = adW_->unit(Lg_.bilinear()(a, b));
      } else {
        int bar_idx = xbar ? a : b;
        int cl_idx = xbar ? b : a;
        RatVector br = Lg_.bracket(Lg_.basis_vector(bar_idx), Lg_.basis_vector(cl_idx));
        for (int k = 0; k < n; ++k)
          if (sgn(br(k)) != 0) e.add_term({wcl_pos_[size_t(k)]}, br(k));
        if (!xbar && !e.is_zero()) e *= Rational(-1);
      }
      if (!e.is_zero()) adW_->set_bracket(x, y, e);
    }
  adW_->finalize();

  dirac_adapted_ = from_ncw(G_->dirac());

  // connection images: theta_i in p-perp with B(theta_i, e_{k_j}) = delta_ij
  if (!k_idx_.empty()) {
    RatMatrix A = rat_zero_matrix(Eigen::Index(k_idx_.size() + p_idx_.size()), n);
    // theta in p-perp: B(theta, e_p) = 0; pairing rows: B(theta, e_k) = delta
    for (size_t r = 0; r < k_idx_.size(); ++r)
      for (int cidx = 0; cidx < n; ++cidx) A(Eigen::Index(r), cidx) = Lg_.bilinear()(k_idx_[r], cidx);
    for (size_t r = 0; r < p_idx_.size(); ++r)
      for (int cidx = 0; cidx < n; ++cidx)
        A(Eigen::Index(k_idx_.size() + r), cidx) = Lg_.bilinear()(p_idx_[r], cidx);
    // solve A x = rhs for each k-index (first rows delta, then zeros)
    for (size_t i = 0; i < k_idx_.size(); ++i) {
      RatMatrix Aug = rat_zero_matrix(A.rows(), A.cols() + 1);
      for (Eigen::Index r = 0; r < A.rows(); ++r) {
        for (Eigen::Index cc = 0; cc < A.cols(); ++cc) Aug(r, cc) = A(r, cc);
        Aug(r, A.cols()) = (size_t(r) == i) ? Rational(1) : Rational(0);
      }
      // Gaussian elimination solve (least structured; system is consistent)
      RatMatrix m = Aug;
      const Eigen::Index rows = m.rows(), cols = A.cols();
      std::vector<Eigen::Index> pivot_of_col(size_t(cols), -1);
      Eigen::Index rr = 0;
      for (Eigen::Index cidx = 0; cidx < cols && rr < rows; ++cidx) {
        Eigen::Index piv = -1;
        for (Eigen::Index r2 = rr; r2 < rows; ++r2)
          if (sgn(m(r2, cidx)) != 0) {
            piv = r2;
            break;
          }
        if (piv < 0) continue;
        if (piv != rr) m.row(piv).swap(m.row(rr));
        Rational pv = m(rr, cidx);
        for (Eigen::Index k2 = cidx; k2 <= cols; ++k2) m(rr, k2) /= pv;
        for (Eigen::Index r2 = 0; r2 < rows; ++r2) {
          if (r2 == rr || sgn(m(r2, cidx)) == 0) continue;
          Rational f = m(r2, cidx);
          for (Eigen::Index k2 = cidx; k2 <= cols; ++k2) m(r2, k2) -= f * m(rr, k2);
        }
        pivot_of_col[size_t(cidx)] = rr;
        ++rr;
      }
      for (Eigen::Index r2 = rr; r2 < rows; ++r2)
        if (sgn(m(r2, cols)) != 0)
          throw std::invalid_argument("IsotropicQuotient: no connection solution");
      RatVector x = RatVector::Constant(cols, Rational(0));
      for (Eigen::Index cidx = 0; cidx < cols; ++cidx)
        if (pivot_of_col[size_t(cidx)] >= 0) x(cidx) = m(pivot_of_col[size_t(cidx)], cols);
      theta_.push_back(x);
    }
  }
}

Element IsotropicQuotient::from_ncw(const Element& x) const {
  const int n = Lg_.dim();
  std::vector<Element> images;
  for (int a = 0; a < n; ++a) {
    Element gam = G_->cliff().gamma_basis(a);
    Element gam_ad(adW_.get());
    for (const auto& [w, c] : gam.terms()) {
      Word nw;
      for (auto g : w) nw.push_back(wcl_pos_[size_t(g)]);
      gam_ad += c * adW_->normalize(nw);
    }
    images.push_back(adW_->generator(wbar_pos_[size_t(a)]) - gam_ad);
  }
  for (int a = 0; a < n; ++a) images.push_back(adW_->generator(wcl_pos_[size_t(a)]));
  return Substitution(&G_->ncw(), adW_.get(), images)(x);
}

Element IsotropicQuotient::project(const Element& x) const {
  return x.filtered([&](const Word& w) {
    for (auto g : w)
      if (adW_->gen(g).sort == 1) return false;
    return true;
  });
}

Element IsotropicQuotient::d_quot(const Element& x) const {
  return project(adW_->super_commutator(dirac_adapted_, x));
}

std::vector<RelCheck> IsotropicQuotient::complex_checks(int cap) const {
  std::vector<RelCheck> out;
  // quotient basis monomials: words over p-generators only
  std::vector<Word> basis;
  {
    Word cur;
    std::function<void(uint16_t, int)> rec = [&](uint16_t start, int left) {
      basis.push_back(cur);
      if (left == 0) return;
      for (uint16_t g = start; g < adW_->num_generators(); ++g) {
        if (adW_->gen(g).sort == 1) continue;
        if (!cur.empty() && cur.back() == g && adW_->parity(g) == Parity::odd) continue;
        cur.push_back(g);
        rec(g, left - 1);
        cur.pop_back();
      }
    };
    rec(0, cap);
    std::sort(basis.begin(), basis.end(), WordLess{});
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  }
  {
    RelCheck c{"isotropic-d-squared", true, ""};
    for (const auto& w : basis) {
      Element m = adW_->monomial(w);
      if (!d_quot(d_quot(m)).is_zero()) {
        c.ok = false;
        c.witness = "d^2 != 0 at " + m.str();
        break;
      }
    }
    out.push_back(c);
  }
  if (!k_idx_.empty()) {
    // Chern-Weil images of invariant quadratics on k* are cocycles
    RelCheck c{"isotropic-chern-weil-cocycle", true, ""};
    const int nk = int(k_idx_.size());
    auto Lk = Lg_.subalgebra(k_idx_, Lg_.name() + "|k-iso");
    // invariant quadratics: coadjoint action on S^2 k*
    std::vector<std::pair<int, int>> quads;
    for (int i = 0; i < nk; ++i)
      for (int j = i; j < nk; ++j) quads.push_back({i, j});
    auto quad_index = [&](int i, int j) {
      if (i > j) std::swap(i, j);
      for (size_t t = 0; t < quads.size(); ++t)
        if (quads[t] == std::make_pair(i, j)) return int(t);
      return -1;
    };
    RatMatrix M = rat_zero_matrix(Eigen::Index(nk * quads.size()),
                                  Eigen::Index(quads.size()));
    for (size_t q = 0; q < quads.size(); ++q) {
      auto [i, j] = quads[q];
      for (int d = 0; d < nk; ++d) {
        // L_d mu^i = -mu^i o ad_d: coefficients on mu^l
        for (int l = 0; l < nk; ++l) {
          Rational ci = -Lk.c(d, l, i);
          Rational cj = -Lk.c(d, l, j);
          if (sgn(ci) != 0)
            M(Eigen::Index(size_t(d) * quads.size() + size_t(quad_index(l, j))),
              Eigen::Index(q)) += ci;
          if (sgn(cj) != 0)
            M(Eigen::Index(size_t(d) * quads.size() + size_t(quad_index(i, l))),
              Eigen::Index(q)) += cj;
        }
      }
    }
    auto inv = nullspace(M);
    if (inv.empty()) {
      c.witness = "no invariant quadratic to test";
    }
    // Koszul-coordinate expansion machinery for W(k*): bars 0..nk-1, odds nk..2nk-1
    std::vector<GenInfo> wg;
    for (int i = 0; i < nk; ++i)
      wg.push_back({"bm" + std::to_string(i), Parity::even, 0, uint16_t(i)});
    for (int i = 0; i < nk; ++i)
      wg.push_back({"m" + std::to_string(i), Parity::odd, 1, uint16_t(i)});
    Algebra Wk("Wk*", wg);
    Wk.finalize();
    auto extd = make_exterior_algebra(nk, "Ext(k*)");
    // theta images and their differentials in the adapted Koszul algebra
    std::vector<Element> theta_img, dtheta_img;
    for (int i = 0; i < nk; ++i) {
      Element th(adW_.get());
      for (int b = 0; b < Lg_.dim(); ++b)
        if (sgn(theta_[size_t(i)](b)) != 0)
          th.add_term({wcl_pos_[size_t(b)]}, theta_[size_t(i)](b));
      theta_img.push_back(th);
      dtheta_img.push_back(adW_->super_commutator(dirac_adapted_, th));
    }
    for (const auto& v : inv) {
      //  q-hat in Koszul coordinates: prod (bar_i - lambda*(mu^i))
      Element qk(&Wk);
      for (size_t t = 0; t < quads.size(); ++t) {
        if (sgn(v(Eigen::Index(t))) == 0) continue;
        auto [i, j] = quads[t];
        auto hat = [&](int idx) {
          Element lam = lambda_dual(Lk, *extd, Lk.basis_vector(idx));
          Element lam_w(&Wk);
          for (const auto& [w, cc] : lam.terms()) {
            Word nw;
            for (auto g : w) nw.push_back(uint16_t(nk + g));
            lam_w.add_term(nw, cc);
          }
          return Wk.generator(uint16_t(idx)) - lam_w;
        };
        qk += v(Eigen::Index(t)) * Wk.mul(hat(i), hat(j));
      }
      // characteristic map: symmetrize theta / d-theta images per Koszul word
      Element img(adW_.get());
      std::vector<Element> cw_images;
      std::vector<Parity> cw_par;
      for (int i = 0; i < nk; ++i) {
        cw_images.push_back(dtheta_img[size_t(i)]);
        cw_par.push_back(Parity::even);
      }
      for (int i = 0; i < nk; ++i) {
        cw_images.push_back(theta_img[size_t(i)]);
        cw_par.push_back(Parity::odd);
      }
      for (const auto& [w, cc] : qk.terms())
        img += cc * symmetrize_word_images(*adW_, w, cw_images, cw_par);
      Element cls = project(img);
      if (!d_quot(cls).is_zero()) {
        c.ok = false;
        c.witness = "Chern-Weil image not closed";
        break;
      }
      if (cls.is_zero()) {
        c.ok = false;
        c.witness = "Chern-Weil image vanished unexpectedly";
        break;
      }
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace qweil
