#include "qweil/lie.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <fstream>
#include <sstream>

namespace qweil {

QuadraticLieAlgebra::QuadraticLieAlgebra(std::string name, int dim)
    : name_(std::move(name)), n_(dim), c_(size_t(dim) * dim * dim, Rational(0)),
      B_(rat_zero_matrix(dim, dim)) {
  if (dim <= 0) throw std::invalid_argument("dimension must be positive");
}

void QuadraticLieAlgebra::set_bracket(int a, int b, int k, const Rational& v) {
  c_[(size_t(a) * n_ + b) * n_ + k] = v;
  c_[(size_t(b) * n_ + a) * n_ + k] = -v;
}

void QuadraticLieAlgebra::set_bracket_raw(int a, int b, int k, const Rational& v) {
  c_[(size_t(a) * n_ + b) * n_ + k] = v;
}

void QuadraticLieAlgebra::set_bilinear(int a, int b, const Rational& v) {
  B_(a, b) = v;
  B_(b, a) = v;
}

RatVector QuadraticLieAlgebra::basis_vector(int a) const {
  RatVector v = RatVector::Constant(n_, Rational(0));
  v(a) = 1;
  return v;
}

RatVector QuadraticLieAlgebra::bracket(const RatVector& x, const RatVector& y) const {
  if (x.size() != n_ || y.size() != n_)
    throw std::invalid_argument("bracket: dimension mismatch");
  RatVector r = RatVector::Constant(n_, Rational(0));
  for (int a = 0; a < n_; ++a) {
    if (sgn(x(a)) == 0) continue;
    for (int b = 0; b < n_; ++b) {
      if (sgn(y(b)) == 0) continue;
      Rational f = x(a) * y(b);
      for (int k = 0; k < n_; ++k) {
        const Rational& s = c(a, b, k);
        if (sgn(s) != 0) r(k) += f * s;
      }
    }
  }
  return r;
}

RatMatrix QuadraticLieAlgebra::ad_matrix(const RatVector& xi) const {
  if (xi.size() != n_) throw std::invalid_argument("ad_matrix: dimension mismatch");
  RatMatrix m = rat_zero_matrix(n_, n_);
  for (int b = 0; b < n_; ++b) {
    RatVector col = bracket(xi, basis_vector(b));
    for (int k = 0; k < n_; ++k) m(k, b) = col(k);
  }
  return m;
}

RatMatrix QuadraticLieAlgebra::ad_basis(int a) const { return ad_matrix(basis_vector(a)); }

bool QuadraticLieAlgebra::b_nondegenerate() const { return sgn(det(B_)) != 0; }

RatMatrix QuadraticLieAlgebra::dual_basis_matrix() const {
  auto inv = try_inverse(B_);
  if (!inv) throw std::invalid_argument("dual basis requires nondegenerate B");
  return *inv;
}

static std::string triple_str(int a, int b, int k) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << k << ")";
  return os.str();
}

ValidationReport QuadraticLieAlgebra::validate() const {
  ValidationReport rep;
  for (int a = 0; a < n_ && rep.antisymmetry; ++a)
    for (int b = 0; b < n_ && rep.antisymmetry; ++b)
      for (int k = 0; k < n_; ++k)
        if (c(a, b, k) != -c(b, a, k)) {
          rep.antisymmetry = false;
          rep.issues.push_back({"antisymmetry", triple_str(a, b, k)});
          break;
        }
  for (int a = 0; a < n_ && rep.jacobi; ++a)
    for (int b = a + 1; b < n_ && rep.jacobi; ++b)
      for (int k = b + 1; k < n_; ++k) {
        RatVector s = bracket(basis_vector(a), bracket(basis_vector(b), basis_vector(k))) +
                      bracket(basis_vector(b), bracket(basis_vector(k), basis_vector(a))) +
                      bracket(basis_vector(k), bracket(basis_vector(a), basis_vector(b)));
        bool zero = true;
        for (int i = 0; i < n_; ++i)
          if (sgn(s(i)) != 0) zero = false;
        if (!zero) {
          rep.jacobi = false;
          rep.issues.push_back({"jacobi", triple_str(a, b, k)});
          break;
        }
      }
  for (int a = 0; a < n_ && rep.b_symmetric; ++a)
    for (int b = 0; b < n_; ++b)
      if (B_(a, b) != B_(b, a)) {
        rep.b_symmetric = false;
        rep.issues.push_back({"b-symmetry", triple_str(a, b, 0)});
        break;
      }
  for (int a = 0; a < n_ && rep.b_invariant; ++a)
    for (int b = 0; b < n_ && rep.b_invariant; ++b)
      for (int k = 0; k < n_; ++k) {
        RatVector ab = bracket(basis_vector(a), basis_vector(b));
        RatVector ak = bracket(basis_vector(a), basis_vector(k));
        Rational v(0);
        for (int i = 0; i < n_; ++i) v += ab(i) * B_(i, k) + B_(b, i) * ak(i);
        if (sgn(v) != 0) {
          rep.b_invariant = false;
          rep.issues.push_back({"b-invariance", triple_str(a, b, k)});
          break;
        }
      }
  if (!b_nondegenerate()) {
    rep.b_nondegenerate = false;
    rep.issues.push_back({"b-nondegeneracy", "det B = 0"});
  }
  return rep;
}

QuadraticLieAlgebra QuadraticLieAlgebra::change_basis(const RatMatrix& M,
                                                      const std::string& new_name) const {
  if (M.rows() != n_ || M.cols() != n_)
    throw std::invalid_argument("change_basis: dimension mismatch");
  RatMatrix Minv = inverse(M);
  QuadraticLieAlgebra L(new_name, n_);
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b) {
      RatVector w = Minv * bracket(RatVector(M.col(a)), RatVector(M.col(b)));
      for (int k = 0; k < n_; ++k)
        if (sgn(w(k)) != 0) L.set_bracket(a, b, k, w(k));
    }
  RatMatrix Bn = M.transpose() * B_ * M;
  for (int a = 0; a < n_; ++a)
    for (int b = a; b < n_; ++b)
      if (sgn(Bn(a, b)) != 0) L.set_bilinear(a, b, Bn(a, b));
  return L;
}

QuadraticLieAlgebra QuadraticLieAlgebra::subalgebra(const std::vector<int>& idx,
                                                    const std::string& sub_name) const {
  const int m = int(idx.size());
  std::vector<int> pos(n_, -1);
  for (int i = 0; i < m; ++i) pos[idx[i]] = i;
  QuadraticLieAlgebra S(sub_name, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      RatVector w = bracket(basis_vector(idx[i]), basis_vector(idx[j]));
      for (int k = 0; k < n_; ++k)
        if (sgn(w(k)) != 0) {
          if (pos[k] < 0)
            throw std::invalid_argument("subalgebra: index set not bracket-closed");
          S.set_bracket(i, j, pos[k], w(k));
        }
    }
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      if (sgn(B_(idx[i], idx[j])) != 0) S.set_bilinear(i, j, B_(idx[i], idx[j]));
  return S;
}

using Poly = std::map<std::vector<int>, Rational>;

static void poly_add(Poly& p, const std::vector<int>& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, ins] = p.try_emplace(m, c);
  if (!ins) {
    it->second += c;
    if (sgn(it->second) == 0) p.erase(it);
  }
}

// One fold of the symbolic matrix power: R = P * (sum_a x_a A_a).
static std::vector<Poly> poly_mat_fold(const std::vector<Poly>& P, int n,
                                       const std::vector<RatMatrix>& ads,
                                       const std::vector<int>& var_of_ad) {
  std::vector<Poly> R(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Poly& p = P[size_t(i) * n + k];
      if (p.empty()) continue;
      for (size_t a = 0; a < ads.size(); ++a)
        for (int j = 0; j < n; ++j) {
          const Rational& entry = ads[a](k, j);
          if (sgn(entry) == 0) continue;
          for (const auto& [mono, coef] : p) {
            std::vector<int> m2 = mono;
            m2.insert(std::upper_bound(m2.begin(), m2.end(), var_of_ad[a]), var_of_ad[a]);
            poly_add(R[size_t(i) * n + j], m2, coef * entry);
          }
        }
    }
  return R;
}

std::vector<std::map<std::vector<int>, Rational>> symbolic_ad_power(
    const QuadraticLieAlgebra& L, int k) {
  const int n = L.dim();
  std::vector<RatMatrix> ads;
  std::vector<int> var_of_ad;
  for (int i = 0; i < n; ++i) {
    ads.push_back(L.ad_basis(i));
    var_of_ad.push_back(i);
  }
  std::vector<Poly> P(size_t(n) * n);
  for (int i = 0; i < n; ++i) poly_add(P[size_t(i) * n + i], {}, Rational(1));
  for (int step = 0; step < k; ++step) P = poly_mat_fold(P, n, ads, var_of_ad);
  return P;
}

std::map<std::vector<int>, Rational> trace_power_polynomial_block(
    const QuadraticLieAlgebra& L, int m, const std::vector<int>& xi_indices,
    const std::vector<int>& trace_indices, const Rational& scale) {
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("trace_power_polynomial: m must be even and >= 2");
  const int n = L.dim();
  std::vector<RatMatrix> ads;
  std::vector<int> var_of_ad;
  for (size_t i = 0; i < xi_indices.size(); ++i) {
    ads.push_back(scale * L.ad_basis(xi_indices[i]));
    var_of_ad.push_back(int(i));
  }
  // identity with scalar polynomial entries
  std::vector<Poly> P(size_t(n) * n);
  for (int i = 0; i < n; ++i) poly_add(P[size_t(i) * n + i], {}, Rational(1));
  for (int step = 0; step < m; ++step) P = poly_mat_fold(P, n, ads, var_of_ad);
  Poly tr;
  for (int i : trace_indices)
    for (const auto& [mono, coef] : P[size_t(i) * n + i]) poly_add(tr, mono, coef);
  return tr;
}

std::map<std::vector<int>, Rational> trace_power_polynomial(const QuadraticLieAlgebra& L,
                                                            int m) {
  std::vector<int> all(L.dim());
  for (int i = 0; i < L.dim(); ++i) all[i] = i;
  return trace_power_polynomial_block(L, m, all, all, Rational(1));
}

QuadraticLieAlgebra double_extension(const QuadraticLieAlgebra& a,
                                     const QuadraticLieAlgebra& s,
                                     const std::vector<RatMatrix>& action,
                                     const std::string& name) {
  const int ns = s.dim(), na = a.dim();
  if (int(action.size()) != ns)
    throw std::invalid_argument("double_extension: one action matrix per s-basis vector");
  for (const auto& A : action)
    if (A.rows() != na || A.cols() != na)
      throw std::invalid_argument("double_extension: action dimension mismatch");
  // action must be by derivations of a preserving B_a, and a Lie homomorphism
  for (int i = 0; i < ns; ++i) {
    const RatMatrix& A = action[i];
    for (int p = 0; p < na; ++p)
      for (int q = 0; q < na; ++q) {
        RatVector lhs = a.bracket(RatVector(A.col(p)), a.basis_vector(q)) +
                        a.bracket(a.basis_vector(p), RatVector(A.col(q)));
        RatVector rhs = A * a.bracket(a.basis_vector(p), a.basis_vector(q));
        for (int k = 0; k < na; ++k)
          if (lhs(k) != rhs(k))
            throw std::invalid_argument("double_extension: action is not a derivation");
      }
    RatMatrix skew = A.transpose() * a.bilinear() + a.bilinear() * A;
    for (int p = 0; p < na; ++p)
      for (int q = 0; q < na; ++q)
        if (sgn(skew(p, q)) != 0)
          throw std::invalid_argument("double_extension: action is not B_a-orthogonal");
  }
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      RatVector br = s.bracket(s.basis_vector(i), s.basis_vector(j));
      RatMatrix expect = rat_zero_matrix(na, na);
      for (int k = 0; k < ns; ++k)
        if (sgn(br(k)) != 0) expect += br(k) * action[k];
      RatMatrix got = action[i] * action[j] - action[j] * action[i];
      for (int p = 0; p < na; ++p)
        for (int q = 0; q < na; ++q)
          if (got(p, q) != expect(p, q))
            throw std::invalid_argument("double_extension: action is not a Lie homomorphism");
    }

  // basis: s (0..ns-1), a (ns..ns+na-1), s* (ns+na..n-1)
  const int n = 2 * ns + na;
  auto S = [&](int i) { return i; };
  auto AA = [&](int p) { return ns + p; };
  auto SD = [&](int i) { return ns + na + i; };
  QuadraticLieAlgebra g(name, n);
  for (int i = 0; i < ns; ++i)
    for (int j = i + 1; j < ns; ++j) {
      RatVector br = s.bracket(s.basis_vector(i), s.basis_vector(j));
      for (int k = 0; k < ns; ++k)
        if (sgn(br(k)) != 0) g.set_bracket(S(i), S(j), S(k), br(k));
    }
  for (int i = 0; i < ns; ++i)
    for (int p = 0; p < na; ++p) {
      RatVector col = action[i].col(p);
      for (int k = 0; k < na; ++k)
        if (sgn(col(k)) != 0) g.set_bracket(S(i), AA(p), AA(k), col(k));
    }
  // [a1, a2] = [a1,a2]_a + omega(a1,a2), <omega(a1,a2), xi_i> = B_a(xi_i.a1, a2)
  for (int p = 0; p < na; ++p)
    for (int q = p + 1; q < na; ++q) {
      RatVector br = a.bracket(a.basis_vector(p), a.basis_vector(q));
      for (int k = 0; k < na; ++k)
        if (sgn(br(k)) != 0) g.set_bracket(AA(p), AA(q), AA(k), br(k));
      for (int i = 0; i < ns; ++i) {
        Rational w(0);
        for (int k = 0; k < na; ++k) w += action[i](k, p) * a.bilinear()(k, q);
        if (sgn(w) != 0) g.set_bracket(AA(p), AA(q), SD(i), w);
      }
    }
  // [xi_i, mu^j] = coadjoint: <[xi,mu], eta> = -<mu, [xi,eta]_s>
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j)
      for (int k = 0; k < ns; ++k) {
        RatVector br = s.bracket(s.basis_vector(i), s.basis_vector(k));
        if (sgn(br(j)) != 0) g.set_bracket(S(i), SD(j), SD(k), -br(j));
      }
  for (int p = 0; p < na; ++p)
    for (int q = p; q < na; ++q)
      if (sgn(a.bilinear()(p, q)) != 0) g.set_bilinear(AA(p), AA(q), a.bilinear()(p, q));
  for (int i = 0; i < ns; ++i) g.set_bilinear(S(i), SD(i), Rational(1));
  auto rep = g.validate();
  if (!rep.structure_ok())
    throw std::logic_error("double_extension: output failed validation: " +
                           (rep.issues.empty() ? std::string("?") : rep.issues[0].check));
  return g;
}

QuadraticLieAlgebra from_cubic(const QuadraticLieAlgebra& k,
                               const std::map<std::array<int, 3>, Rational>& C,
                               const std::string& name) {
  const int nk = k.dim();
  for (const auto& [key, v] : C)
    if (!(key[0] < key[1] && key[1] < key[2]) || key[2] >= nk || key[0] < 0)
      throw std::invalid_argument("from_cubic: C keys must be strictly increasing triples");
  // fully antisymmetric coefficient
  auto cval = [&](int x, int y, int z) -> Rational {
    if (x == y || y == z || x == z) return Rational(0);
    std::array<int, 3> t{x, y, z};
    int sign = 1;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2 - i; ++j)
        if (t[j] > t[j + 1]) {
          std::swap(t[j], t[j + 1]);
          sign = -sign;
        }
    auto it = C.find(t);
    return it == C.end() ? Rational(0) : Rational(sign) * it->second;
  };
  // invariance of C under the adjoint action on Wedge^3 k:
  // sum over slots of C([e_d, .], ., .) must vanish.
  for (int d = 0; d < nk; ++d)
    for (int x = 0; x < nk; ++x)
      for (int y = x + 1; y < nk; ++y)
        for (int z = y + 1; z < nk; ++z) {
          Rational s(0);
          RatMatrix ad = k.ad_basis(d);
          for (int w = 0; w < nk; ++w) {
            s += ad(w, x) * cval(w, y, z);
            s += ad(w, y) * cval(x, w, z);
            s += ad(w, z) * cval(x, y, w);
          }
          if (sgn(s) != 0)
            throw std::invalid_argument("from_cubic: C is not ad-invariant");
        }

  const int n = 2 * nk;
  QuadraticLieAlgebra g(name, n);
  for (int a = 0; a < nk; ++a)
    for (int b = a + 1; b < nk; ++b) {
      RatVector br = k.bracket(k.basis_vector(a), k.basis_vector(b));
      for (int l = 0; l < nk; ++l)
        if (sgn(br(l)) != 0) g.set_bracket(a, b, l, br(l));
    }
  // [xi_a, mu^b]: <.., e_l> = -<mu^b, [e_a, e_l]> = -c_k(a, l, b)
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b)
      for (int l = 0; l < nk; ++l) {
        const Rational& v = k.c(a, l, b);
        if (sgn(v) != 0) g.set_bracket(a, nk + b, nk + l, -v);
      }
  // [mu^a, mu^b] = C(mu^a, mu^b, .) in k
  for (int a = 0; a < nk; ++a)
    for (int b = a + 1; b < nk; ++b)
      for (int l = 0; l < nk; ++l) {
        Rational v = cval(a, b, l);
        if (sgn(v) != 0) g.set_bracket(nk + a, nk + b, l, v);
      }
  for (int a = 0; a < nk; ++a) g.set_bilinear(a, nk + a, Rational(1));
  auto rep = g.validate();
  if (!rep.all_ok())
    throw std::logic_error("from_cubic: output failed validation: " +
                           (rep.issues.empty() ? std::string("?") : rep.issues[0].check));
  // eps = (+1 on k, -1 on k*), eps*B = -B: B vanishes on k x k and k* x k*.
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b)
      if (sgn(g.bilinear()(a, b)) != 0 || sgn(g.bilinear()(nk + a, nk + b)) != 0)
        throw std::logic_error("from_cubic: eps*B = -B violated");
  SubalgebraDecomposition dec;
  for (int a = 0; a < nk; ++a) dec.k_indices.push_back(a);
  g.decomposition = dec;
  return g;
}

static QuadraticLieAlgebra make_abelian_hyperbolic(int n, const std::string& name) {
  QuadraticLieAlgebra L(name, n);
  for (int i = 0; i + 1 < n; i += 2) L.set_bilinear(i, i + 1, Rational(1));
  return L;
}

static QuadraticLieAlgebra make_sl2(const Rational& scale, const std::string& name) {
  // basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h; B = scale * trace form
  QuadraticLieAlgebra L(name, 3);
  L.set_bracket(1, 0, 0, Rational(2));
  L.set_bracket(1, 2, 2, Rational(-2));
  L.set_bracket(0, 2, 1, Rational(1));
  L.set_bilinear(0, 2, scale);
  L.set_bilinear(1, 1, Rational(2) * scale);
  SubalgebraDecomposition dec;
  dec.k_indices = {1};
  dec.n_minus = {2};
  dec.n_plus = {0};
  L.decomposition = dec;
  return L;
}

static QuadraticLieAlgebra make_n3() {
  // strictly upper triangular 3x3: k1 = E12, k2 = E13, k3 = E23; [k1, k3] = k2
  QuadraticLieAlgebra k("n3", 3);
  k.set_bracket(0, 2, 1, Rational(1));
  return k;
}

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> cat;

  {
    auto L = make_abelian_hyperbolic(2, "abelian2");
    SubalgebraDecomposition dec;
    dec.k_indices = {0, 1};
    L.decomposition = dec;
    cat.push_back({L, "abelian, dim 2, hyperbolic form"});
  }
  {
    auto L = make_abelian_hyperbolic(4, "abelian4");
    SubalgebraDecomposition dec;
    dec.k_indices = {0, 1};
    L.decomposition = dec;
    cat.push_back({L, "abelian, dim 4, hyperbolic form; k = first hyperbolic plane"});
  }
  cat.push_back({make_sl2(Rational(1), "sl2"),
                 "sl2 with trace form B(e,f)=1, B(h,h)=2; Cartan triangular data"});
  cat.push_back({make_sl2(Rational(4), "sl2_killing"), "sl2 with Killing form (4x trace)"});
  {
    // F x| H_1, hyperbolic rational model: r acts by diag(-1, +1) on a
    // hyperbolic plane. Basis (r, e1, e2, c); B(e1,e2) = B(r,c) = 1.
    auto a2 = make_abelian_hyperbolic(2, "a2");
    QuadraticLieAlgebra line("line", 1);
    RatMatrix A = rat_zero_matrix(2, 2);
    A(0, 0) = -1;
    A(1, 1) = 1;
    auto L = double_extension(a2, line, {A}, "fh1");
    SubalgebraDecomposition dec;
    dec.k_indices = {0, 3};
    dec.n_minus = {1};
    dec.n_plus = {2};
    L.decomposition = dec;
    cat.push_back({L, "F x| H_1 (hyperbolic rational model of Example 2.1(2))"});
  }
  {
    // elliptic model: rotation action on the Euclidean plane
    QuadraticLieAlgebra a2("a2e", 2);
    a2.set_bilinear(0, 0, Rational(1));
    a2.set_bilinear(1, 1, Rational(1));
    QuadraticLieAlgebra line("line", 1);
    RatMatrix A = rat_zero_matrix(2, 2);
    A(1, 0) = 1;
    A(0, 1) = -1;
    auto L = double_extension(a2, line, {A}, "fh1_elliptic");
    cat.push_back({L, "F x| H_1, rotation action, Euclidean plane (no rational splitting)"});
  }
  {
    // s x| s* for s = aff(1): the a = 0 case of the double extension.
    QuadraticLieAlgebra g("saff", 4);
    g.set_bracket(0, 1, 1, Rational(1));    // [x, y] = y
    g.set_bracket(0, 3, 3, Rational(-1));   // [x, y*] = -y*
    g.set_bracket(1, 3, 2, Rational(1));    // [y, y*] = x*
    g.set_bilinear(0, 2, Rational(1));
    g.set_bilinear(1, 3, Rational(1));
    SubalgebraDecomposition dec;
    dec.k_indices = {0, 2};
    dec.n_minus = {1};
    dec.n_plus = {3};
    g.decomposition = dec;
    cat.push_back({g, "s x| s* for s = aff(1) (double extension with a = 0)"});
  }
  {
    auto k = make_n3();
    std::map<std::array<int, 3>, Rational> C;
    C[{0, 1, 2}] = Rational(1);
    auto L = from_cubic(k, C, "cubic_n3");
    cat.push_back({L, "k + k* from C = E12^E13^E23 on strictly upper triangular 3x3"});
  }
  {
    auto k = make_n3();
    auto L = from_cubic(k, {}, "cubic_zero");
    cat.push_back({L, "k x| k* (C = 0) on strictly upper triangular 3x3"});
  }
  {
    auto k = make_sl2(Rational(1), "sl2");
    k.decomposition.reset();
    std::map<std::array<int, 3>, Rational> C;
    C[{0, 1, 2}] = Rational(1);  // C(mu,mu',mu'') = B([B#mu, B#mu'], B#mu'')
    auto L = from_cubic(k, C, "sl2_double");
    cat.push_back({L, "k + k* from the Cartan 3-form of sl2 (k + k type)"});
  }
  return cat;
}

const QuadraticLieAlgebra& catalog_algebra(const std::string& name) {
  static const std::vector<CatalogEntry> cat = catalog();
  for (const auto& e : cat)
    if (e.algebra.name() == name) return e.algebra;
  throw std::invalid_argument("unknown catalog algebra: " + name);
}

QuadraticLieAlgebra load_lie_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("dim")) throw std::invalid_argument("input missing 'dim'");
  QuadraticLieAlgebra L(j.value("name", std::string("input")), j["dim"].get<int>());
  const int n = L.dim();
  auto check_idx = [&](int a) {
    if (a < 0 || a >= n) throw std::invalid_argument("index out of range in input");
  };
  if (j.contains("bracket"))
    for (const auto& e : j["bracket"]) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>(), k = e.at(2).get<int>();
      check_idx(a);
      check_idx(b);
      check_idx(k);
      L.set_bracket(a, b, k, rat_from_string(e.at(3).get<std::string>()));
    }
  if (j.contains("bilinear"))
    for (const auto& e : j["bilinear"]) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      check_idx(a);
      check_idx(b);
      L.set_bilinear(a, b, rat_from_string(e.at(2).get<std::string>()));
    }
  if (j.contains("decomposition")) {
    const auto& d = j["decomposition"];
    SubalgebraDecomposition dec;
    if (d.contains("k"))
      for (const auto& i : d["k"]) dec.k_indices.push_back(i.get<int>());
    if (d.contains("n_minus"))
      for (const auto& i : d["n_minus"]) dec.n_minus.push_back(i.get<int>());
    if (d.contains("n_plus"))
      for (const auto& i : d["n_plus"]) dec.n_plus.push_back(i.get<int>());
    if (d.contains("basis_change")) {
      const auto& rows = d["basis_change"];
      RatMatrix M = rat_zero_matrix(n, n);
      int r = 0;
      for (const auto& row : rows) {
        int c = 0;
        for (const auto& v : row) M(r, c++) = rat_from_string(v.get<std::string>());
        ++r;
      }
      dec.basis_change = M;
    }
    L.decomposition = dec;
  }
  return L;
}

}  // namespace qweil
