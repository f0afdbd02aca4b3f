#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qweil/gda.hpp"

#include <random>

using namespace qweil;

TEST_CASE("convolution algebra: unit, associativity, Eq. (3.6) Leibniz") {
  NCWeilContext N(catalog_algebra("sl2"));
  const WeilContext& W = N.weil();
  NCWeilGDA target(N);
  const int cap = 3;

  std::mt19937 rng(19);
  // a parity-p map sends a parity-|w| monomial to a parity-(|w| + p) element
  auto random_map = [&](Parity p) {
    ConvolutionMap f(W, target, cap, p);
    auto monos = W.kosz_monomials_up_to(cap);
    for (const auto& w : monos) {
      Parity want = W.kosz().word_parity(w) + p;
      Element v = target.algebra().zero();
      for (int k = 0; k < 2; ++k) {
        Word tw;
        int len = int(rng() % 3);
        for (int i = 0; i < len; ++i) tw.push_back(uint16_t(rng() % 6));
        Element cand = target.algebra().normalize(tw);
        Element filt = cand.filtered([&](const Word& m) {
          return target.algebra().word_parity(m) == want;
        });
        v += rat(long(rng() % 5) - 2) * filt;
      }
      f.set_image(w, v);
    }
    return f;
  };

  ConvolutionMap unit = conv_unit(W, target, cap);
  for (int t = 0; t < 4; ++t) {
    ConvolutionMap f = random_map(Parity(uint8_t(rng() % 2)));
    ConvolutionMap lf = conv_mul(unit, f);
    ConvolutionMap rf = conv_mul(f, unit);
    for (const auto& w : W.kosz_monomials_up_to(cap)) {
      CHECK(lf.image(w) == f.image(w));
      CHECK(rf.image(w) == f.image(w));
    }
  }
  for (int t = 0; t < 3; ++t) {
    ConvolutionMap f = random_map(Parity(uint8_t(rng() % 2)));
    ConvolutionMap g = random_map(Parity(uint8_t(rng() % 2)));
    ConvolutionMap h = random_map(Parity(uint8_t(rng() % 2)));
    ConvolutionMap ab = conv_mul(conv_mul(f, g), h);
    ConvolutionMap ba = conv_mul(f, conv_mul(g, h));
    for (const auto& w : W.kosz_monomials_up_to(cap)) CHECK(ab.image(w) == ba.image(w));
  }
  // iota^{t1+t2}(f g) = iota^{t1}(f) g + (-1)^{|f|} f iota^{t2}(g)
  for (long t1 : {0L, 1L, -1L})
    for (long t2 : {0L, 1L, -1L}) {
      ConvolutionMap f = random_map(Parity::even);
      ConvolutionMap g = random_map(Parity::odd);
      for (int a = 0; a < 3; ++a) {
        ConvolutionMap lhs = conv_iota_t(conv_mul(f, g), a, Rational(t1 + t2));
        ConvolutionMap rhs =
            conv_mul(conv_iota_t(f, a, Rational(t1)), g) +
            conv_mul(f, conv_iota_t(g, a, Rational(t2)));
        for (const auto& w : W.kosz_monomials_up_to(cap)) CHECK(lhs.image(w) == rhs.image(w));
      }
    }
}

TEST_CASE("geometric series inverts 1 + c") {
  NCWeilContext N(catalog_algebra("sl2"));
  const WeilContext& W = N.weil();
  NCWeilGDA target(N);
  const int cap = 4;
  std::mt19937 rng(29);
  ConvolutionMap c(W, target, cap, Parity::even);
  for (const auto& w : W.kosz_monomials_up_to(cap)) {
    if (w.empty()) continue;  // c(1) = 0
    Word tw;
    for (int i = 0, len = int(rng() % 3); i < len; ++i) tw.push_back(uint16_t(rng() % 6));
    Element cand = target.algebra().normalize(tw).filtered([&](const Word& m) {
      return target.algebra().word_parity(m) == Parity::even;
    });
    c.set_image(w, rat(long(rng() % 3) - 1) * cand);
  }
  ConvolutionMap phi = conv_unit(W, target, cap) + c;
  ConvolutionMap inv = conv_geometric_inverse(c);
  ConvolutionMap prod = conv_mul(phi, inv);
  ConvolutionMap prod2 = conv_mul(inv, phi);
  ConvolutionMap unit = conv_unit(W, target, cap);
  for (const auto& w : W.kosz_monomials_up_to(cap)) {
    CHECK(prod.image(w) == unit.image(w));
    CHECK(prod2.image(w) == unit.image(w));
  }
}

TEST_CASE("characteristic maps: tautological identity, Q on NCW, chain property") {
  NCWeilContext N(catalog_algebra("sl2"));
  const WeilContext& W = N.weil();
  const int cap = 4;

  WeilGDA wgda(W);
  ConvolutionMap idmap = characteristic_map(W, wgda, cap);
  for (const auto& w : W.kosz_monomials_up_to(cap))
    CHECK(idmap.image(w) == W.kosz().monomial(w));

  NCWeilGDA ngda(N);
  ConvolutionMap q = characteristic_map(W, ngda, cap);
  for (const auto& w : W.kosz_monomials_up_to(cap))
    CHECK(q.image(w) == N.quantize(W.kosz().monomial(w)));

  CHECK(check_gds_hom(q).ok);
  CHECK(check_gds_hom(idmap).ok);
}

TEST_CASE("tensor GDA satisfies the g-da axioms on sampled elements") {
  NCWeilContext N(catalog_algebra("sl2"));
  NCWeilGDA ngda(N);
  TensorGDA T(ngda, ngda, 0, "NCWxNCW");
  std::mt19937 rng(37);
  auto rand_elem = [&]() {
    Element x = T.algebra().zero();
    for (int k = 0; k < 3; ++k) {
      Word w;
      for (int i = 0, len = int(rng() % 4); i < len; ++i)
        w.push_back(uint16_t(rng() % T.algebra().num_generators()));
      x += rat(long(rng() % 5) - 2) * T.algebra().normalize(w);
    }
    return x;
  };
  for (int t = 0; t < 10; ++t) {
    Element x = rand_elem();
    CHECK(T.d(T.d(x)).is_zero());
    for (int a = 0; a < 3; ++a) {
      Element di = T.d(T.iota(a, x)) + T.iota(a, T.d(x));
      CHECK(di == T.lie_der(a, x));
      CHECK(T.lie_der(a, T.d(x)) == T.d(T.lie_der(a, x)));
    }
  }
  // connection property: iota_xi theta(mu) = <mu, xi> (B-identified)
  const auto& L = N.lie();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(T.iota(b, T.theta(a)) == T.algebra().unit(L.bilinear()(a, b)));
}

TEST_CASE("rigidity: c0 = c1 gives psi = 0; theta(x)1 vs 1(x)theta at cap 3") {
  NCWeilContext N(catalog_algebra("sl2"));
  const WeilContext& W = N.weil();
  NCWeilGDA ngda(N);
  TensorGDA T0(ngda, ngda, 0, "NCWxNCW");
  const int cap = 3;

  ConvolutionMap c0 = characteristic_map(W, T0, cap);  // theta (x) 1
  {
    RigidityReport rep;
    ConvolutionMap psi = rigidity_homotopy(c0, c0, &rep);
    CHECK(psi.is_zero());
    CHECK(rep.all_ok());
  }
  std::vector<Element> theta1;
  for (int a = 0; a < 3; ++a) theta1.push_back(T0.emb1(ngda.theta(a)));
  ConvolutionMap c1 = characteristic_map(W, T0, cap, theta1);
  CHECK(check_gds_hom(c1).ok);
  RigidityReport rep;
  ConvolutionMap psi = rigidity_homotopy(c0, c1, &rep);
  INFO(rep.witness);
  CHECK(rep.all_ok());
}
