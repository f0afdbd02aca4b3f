#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qweil/ncweil.hpp"

#include <random>

using namespace qweil;

TEST_CASE("weil_ops: d^2 = 0, [d, iota] = L, iota anticommute, presentation consistency") {
  for (const char* name : {"sl2", "fh1"}) {
    WeilContext W(catalog_algebra(name));
    const auto& L = W.lie();
    const int cap = L.dim() <= 3 ? 5 : 4;
    for (const auto& w : W.kosz_monomials_up_to(cap)) {
      Element m = W.curv().monomial(w);
      CHECK(W.d_curv(W.d_curv(m)).is_zero());
      for (int a = 0; a < L.dim(); ++a) {
        RatVector xi = L.basis_vector(a);
        Element di = W.d_curv(W.iota_curv(xi, m)) + W.iota_curv(xi, W.d_curv(m));
        CHECK(di == W.lie_curv(xi, m));
        for (int b = 0; b < L.dim(); ++b) {
          RatVector eta = L.basis_vector(b);
          Element anti = W.iota_curv(xi, W.iota_curv(eta, m)) +
                         W.iota_curv(eta, W.iota_curv(xi, m));
          CHECK(anti.is_zero());
        }
      }
      // the two presentations carry the same differential
      CHECK(W.curv_to_kosz(W.d_curv(m)) == W.d_kosz(W.curv_to_kosz(m)));
      // conversion round trip
      CHECK(W.kosz_to_curv(W.curv_to_kosz(m)) == m);
    }
    // horizontality of curvature generators: iota hat = 0
    for (int a = 0; a < L.dim(); ++a)
      for (int b = 0; b < L.dim(); ++b)
        CHECK(W.iota_curv(L.basis_vector(b), W.curv().generator(W.even_id(a))).is_zero());
  }
}

TEST_CASE("koszul homotopy: h(1) = 0, h(bar) = odd, [d,h] = id - i pi") {
  WeilContext W(catalog_algebra("sl2"));
  CHECK(W.koszul_homotopy(W.kosz().unit()).is_zero());
  for (int a = 0; a < 3; ++a)
    CHECK(W.koszul_homotopy(W.kosz().generator(W.even_id(a))) ==
          W.kosz().generator(W.odd_id(a)));
  for (const auto& w : W.kosz_monomials_up_to(5)) {
    Element m = W.kosz().monomial(w);
    Element dh = W.d_kosz(W.koszul_homotopy(m)) + W.koszul_homotopy(W.d_kosz(m));
    Element expect = w.empty() ? W.kosz().zero() : m;
    CHECK(dh == expect);
  }
}

TEST_CASE("transgression: homotopy route equals the closed formula") {
  for (const char* name : {"sl2", "fh1", "saff"}) {
    WeilContext W(catalog_algebra(name));
    Element via_h = W.transgression_via_h();
    CHECK(via_h == W.transgression_closed());
    // dD recovers the quadratic element sum hat_a hat^a
    Element dD = W.kosz_to_curv(W.d_kosz(via_h));
    CHECK(dD == W.weil_casimir());
    CHECK(W.is_horizontal_curv(dD));
    CHECK(W.is_invariant(dD, false));
  }
  // abelian: lambda = 0, D = sum bar_a odd^a
  WeilContext A(catalog_algebra("abelian2"));
  Element D = A.transgression_via_h();
  Element expect(&A.kosz());
  // dual pairs under hyperbolic B: e^0 = e1, e^1 = e0
  expect.add_term({A.even_id(0), A.odd_id(1)}, Rational(1));
  expect.add_term({A.even_id(1), A.odd_id(0)}, Rational(1));
  CHECK(D == expect);
}

TEST_CASE("coproduct: algebra map on generators, counit, co-derivation") {
  WeilContext W(catalog_algebra("sl2"));
  CHECK(W.coproduct(W.kosz().unit()) == W.tensor_sq().unit());
  // Delta(zeta0 zeta1) has the Koszul sign on the odd-odd cross term
  Element m = W.kosz().monomial({W.odd_id(0), W.odd_id(1)});
  Element d01 = W.coproduct(m);
  Element expect = W.tensor_sq().zero();
  uint16_t x0 = W.odd_id(0), x1 = W.odd_id(1);
  uint16_t y0 = uint16_t(x0 + 6), y1 = uint16_t(x1 + 6);
  expect.add_term({x0, x1}, Rational(1));
  expect.add_term({y0, y1}, Rational(1));
  expect.add_term({x0, y1}, Rational(1));
  expect.add_term({x1, y0}, Rational(-1));
  CHECK(d01 == expect);
  for (const auto& w : W.kosz_monomials_up_to(4)) {
    Element mm = W.kosz().monomial(w);
    // counit axiom (pi (x) id) Delta = id
    CHECK(W.tensor_counit0(W.coproduct(mm)) == mm);
    // d is a co-derivation
    CHECK(W.coproduct(W.d_kosz(mm)) == W.tensor_d(W.coproduct(mm)));
  }
}

TEST_CASE("ncweil_mul: presentation relations") {
  NCWeilContext N(catalog_algebra("sl2"));
  const auto& L = N.lie();
  const Algebra& A = N.ncw();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Element za = A.generator(N.cl_id(a)), zb = A.generator(N.cl_id(b));
      CHECK(A.mul(za, zb) + A.mul(zb, za) == A.unit(L.bilinear()(a, b)));
      Element ha = A.generator(N.hat_id(a));
      CHECK(A.mul(ha, zb) - A.mul(zb, ha) == A.zero());
      Element hb = A.generator(N.hat_id(b));
      CHECK(A.mul(ha, hb) - A.mul(hb, ha) ==
            N.hat_vector(L.bracket(L.basis_vector(a), L.basis_vector(b))));
    }
}

TEST_CASE("dirac element: abelian form, bracket recovers bar, invariance") {
  NCWeilContext Ab(catalog_algebra("abelian2"));
  Element expect(&Ab.ncw());
  expect.add_term({Ab.hat_id(0), Ab.cl_id(1)}, Rational(1));
  expect.add_term({Ab.hat_id(1), Ab.cl_id(0)}, Rational(1));
  CHECK(Ab.dirac() == expect);

  for (const char* name : {"sl2", "fh1", "saff"}) {
    NCWeilContext N(catalog_algebra(name));
    const auto& L = N.lie();
    CHECK(N.ncw().element_parity(N.dirac()) == Parity::odd);
    CHECK(N.is_invariant(N.dirac()));
    for (int a = 0; a < L.dim(); ++a) {
      RatVector xi = L.basis_vector(a);
      // [D, zeta] = bar zeta = hat + gamma
      CHECK(N.d(N.cl_vector(xi)) == N.bar_vector(xi));
      // [D, bar zeta] = 0
      CHECK(N.d(N.bar_vector(xi)).is_zero());
    }
  }
}

TEST_CASE("dirac is basis-independent") {
  const auto& sl2 = catalog_algebra("sl2");
  NCWeilContext N(sl2);
  std::mt19937 rng(6);
  for (int t = 0; t < 3; ++t) {
    RatMatrix M = rat_zero_matrix(3, 3);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = rat(long(rng() % 5) - 2);
    } while (sgn(det(M)) == 0);
    auto L2 = sl2.change_basis(M, "sl2'");
    NCWeilContext N2(L2);
    std::vector<Element> images;
    for (int a = 0; a < 3; ++a) images.push_back(N.hat_vector(RatVector(M.col(a))));
    for (int a = 0; a < 3; ++a) images.push_back(N.cl_vector(RatVector(M.col(a))));
    Substitution phi(&N2.ncw(), &N.ncw(), images);
    CHECK(phi(N2.dirac()) == N.dirac());
  }
}

TEST_CASE("ncweil operators: contraction scalar, relations, d^2 = 0, central square") {
  NCWeilContext N(catalog_algebra("sl2"));
  const auto& L = N.lie();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CHECK(N.iota(L.basis_vector(a), N.cl_vector(L.basis_vector(b))) ==
            N.ncw().unit(L.bilinear()(a, b)));
      // [d, iota_xi] = L_xi on generators
      for (int g = 0; g < 6; ++g) {
        Element gen = N.ncw().generator(uint16_t(g));
        RatVector xi = L.basis_vector(a);
        Element lhs = N.d(N.iota(xi, gen)) + N.iota(xi, N.d(gen));
        CHECK(lhs == N.lie_der(xi, gen));
      }
    }
  for (const auto& w : N.weil().kosz_monomials_up_to(4)) {
    Element m = N.ncw().monomial(w);
    CHECK(N.d(N.d(m)).is_zero());
  }
  // D^2 commutes with every generator
  Element d2 = N.ncw().mul(N.dirac(), N.dirac());
  for (int g = 0; g < 6; ++g)
    CHECK(N.ncw().super_commutator(d2, N.ncw().generator(uint16_t(g))).is_zero());
}

TEST_CASE("dirac square identity and the intermediate quantization identity") {
  for (const char* name : {"abelian2", "sl2", "fh1", "saff"}) {
    NCWeilContext N(catalog_algebra(name));
    auto rep = N.dirac_square_check();
    INFO(name << " " << rep.witness);
    CHECK(rep.square_ok);
    CHECK(rep.intermediate_ok);
  }
  // abelian: trace term vanishes, D^2 = Cas/2 exactly
  NCWeilContext Ab(catalog_algebra("abelian2"));
  CHECK(Ab.env().casimir_trace() == 0);
  CHECK(Ab.ncw().mul(Ab.dirac(), Ab.dirac()) ==
        Rational(1, 2) * Ab.from_uea(Ab.env().casimir()));
}

TEST_CASE("quantization map: generators, chain map, triangularity") {
  NCWeilContext N(catalog_algebra("sl2"));
  const auto& W = N.weil();
  for (int a = 0; a < 3; ++a) {
    // Q(zeta) = 1 (x) zeta
    CHECK(N.quantize(W.kosz().generator(W.odd_id(a))) ==
          N.ncw().generator(N.cl_id(a)));
    // Q(bar zeta) = hat + gamma
    CHECK(N.quantize(W.kosz().generator(W.even_id(a))) ==
          N.bar_vector(N.lie().basis_vector(a)));
    // Q(hat zeta) = hat (curvature generators map to curvature generators)
    CHECK(N.quantize(W.curv().generator(W.even_id(a))) ==
          N.ncw().generator(N.hat_id(a)));
  }
  auto rep = N.chain_map_check(3);
  INFO(rep.witness);
  CHECK(rep.ok);

  // linear isomorphism in each truncated degree: the top word-length part of
  // Q(m) is (sym (x) q)(m), which is unitriangular
  for (const auto& w : W.kosz_monomials_up_to(4)) {
    Element q = N.quantize(W.curv().monomial(w));
    Element top = q.filtered([&](const Word& m) { return m.size() == w.size(); });
    Element sq = N.sym_q(W.curv().monomial(w));
    Element stop = sq.filtered([&](const Word& m) { return m.size() == w.size(); });
    CHECK(top == stop);
  }
}

TEST_CASE("duflo factorization at low degree (acceptance runs degree 4)") {
  NCWeilContext N(catalog_algebra("sl2"));
  auto rep = N.duflo_factorization_check(3);
  INFO(rep.witness);
  CHECK(rep.ok);
  CHECK(rep.checked > 0);
}

TEST_CASE("basic subspace of NCW equals invariant U(g) (x) 1 in low degrees") {
  NCWeilContext N(catalog_algebra("sl2"));
  const auto& L = N.lie();
  auto monos = N.weil().kosz_monomials_up_to(3);
  std::map<Word, int> index;
  for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = int(i);
  const size_t nm = monos.size();
  RatMatrix Mrows = rat_zero_matrix(Eigen::Index(6 * nm), Eigen::Index(nm));
  bool overflow = false;
  for (size_t j = 0; j < nm; ++j) {
    Element m = N.ncw().monomial(monos[j]);
    for (int a = 0; a < 3; ++a) {
      Element ix = N.iota(L.basis_vector(a), m);
      Element lx = N.lie_der(L.basis_vector(a), m);
      for (const auto& [w, c] : ix.terms()) {
        auto it = index.find(w);
        if (it == index.end()) { overflow = true; continue; }
        Mrows(Eigen::Index(size_t(a) * nm + size_t(it->second)), Eigen::Index(j)) += c;
      }
      for (const auto& [w, c] : lx.terms()) {
        auto it = index.find(w);
        if (it == index.end()) { overflow = true; continue; }
        Mrows(Eigen::Index(size_t(3 + a) * nm + size_t(it->second)), Eigen::Index(j)) += c;
      }
    }
  }
  CHECK(!overflow);  // iota and L preserve the word-length filtration range here
  auto basis = nullspace(Mrows);
  CHECK(!basis.empty());
  for (const auto& v : basis) {
    Element x = N.ncw().zero();
    for (size_t j = 0; j < nm; ++j)
      if (sgn(v(Eigen::Index(j))) != 0) x += v(Eigen::Index(j)) * N.ncw().monomial(monos[j]);
    CHECK(N.cl_part_trivial(x));
    CHECK(N.env().invariant_uea(N.to_uea(x)));
  }
}
