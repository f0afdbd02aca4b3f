#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qweil/clifford.hpp"

#include <memory>
#include <random>

using namespace qweil;

namespace {

RatMatrix random_skew(int n, std::mt19937& rng) {
  RatMatrix m = rat_zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational v = rat(long(rng() % 5) - 2);
      m(i, j) = v;
      m(j, i) = -v;
    }
  return m;
}

RatMatrix random_invertible(int n, std::mt19937& rng) {
  while (true) {
    RatMatrix m = rat_zero_matrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rat(long(rng() % 5) - 2);
    if (sgn(det(m)) != 0) return m;
  }
}

std::vector<Word> all_subsets(int n) {
  std::vector<Word> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Word w;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) w.push_back(uint16_t(i));
    out.push_back(w);
  }
  return out;
}

}  // namespace

TEST_CASE("cl_mul: defining relation, zero squares, B = 0 degenerates to wedge") {
  CliffordContext ctx(catalog_algebra("sl2"));
  const Algebra& Cl = ctx.cl();
  Element e = Cl.generator(0), h = Cl.generator(1), f = Cl.generator(2);
  CHECK(Cl.mul(e, f) + Cl.mul(f, e) == Cl.unit());   // B(e,f) = 1
  CHECK(Cl.mul(e, e).is_zero());                     // B(e,e) = 0
  CHECK(Cl.mul(h, h) == Cl.unit());                  // B(h,h)/2 = 1

  auto zero_cl = make_clifford_algebra(rat_zero_matrix(3, 3), "Cl0");
  auto ext = make_exterior_algebra(3, "Ext3");
  std::mt19937 rng(4);
  for (int t = 0; t < 30; ++t) {
    Word w;
    for (int i = 0, n = int(rng() % 4); i < n; ++i) w.push_back(uint16_t(rng() % 3));
    CHECK(zero_cl->normalize(w).terms() == ext->normalize(w).terms());
  }
}

TEST_CASE("cl_mul associativity and scalar super-commutators of generators") {
  std::mt19937 rng(17);
  RatMatrix B = random_skew(5, rng);  // make it symmetric instead
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) B(i, j) = (i <= j) ? rat(long(rng() % 5) - 2) : B(j, i);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < i; ++j) B(i, j) = B(j, i);
  auto Cl = make_clifford_algebra(B, "Cl5");
  for (int t = 0; t < 25; ++t) {
    auto rand_elem = [&]() {
      Element x = Cl->zero();
      for (int k = 0; k < 3; ++k) {
        Word w;
        for (int i = 0, n = int(rng() % 4); i < n; ++i) w.push_back(uint16_t(rng() % 5));
        x += rat(long(rng() % 7) - 3) * Cl->normalize(w);
      }
      return x;
    };
    Element x = rand_elem(), y = rand_elem(), z = rand_elem();
    CHECK(Cl->mul(Cl->mul(x, y), z) == Cl->mul(x, Cl->mul(y, z)));
  }
  for (uint16_t a = 0; a < 5; ++a)
    for (uint16_t b = 0; b < 5; ++b) {
      Element anti = Cl->mul(Cl->generator(a), Cl->generator(b)) +
                     Cl->mul(Cl->generator(b), Cl->generator(a));
      CHECK(anti == Cl->unit(B(a, b)));
    }
}

TEST_CASE("chevalley quantization and symbol invert each other") {
  CliffordContext sl2(catalog_algebra("sl2"));
  // degree <= 1: identity
  CHECK(sl2.quantize(sl2.ext().unit(rat(7, 3))) == sl2.cl().unit(rat(7, 3)));
  CHECK(sl2.quantize(sl2.ext().generator(1)) == sl2.cl().generator(1));

  // e ^ f -> e f - 1/2 B(e,f) = ef - 1/2
  Element ef = sl2.ext().monomial({0, 2});
  Element q = sl2.quantize(ef);
  Element expect = sl2.cl().monomial({0, 2}) + sl2.cl().unit(rat(-1, 2));
  CHECK(q == expect);

  // round trip on all wedge monomials, dim 5 with a dense-ish form
  std::mt19937 rng(23);
  RatMatrix B = rat_zero_matrix(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) B(i, j) = B(j, i) = rat(long(rng() % 5) - 2);
  QuadraticLieAlgebra abelian5("ab5", 5);
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) abelian5.set_bilinear(i, j, B(i, j));
  CliffordContext ctx5(abelian5);
  for (const auto& w : all_subsets(5)) {
    Element m = ctx5.ext().monomial(w);
    CHECK(ctx5.symbol(ctx5.quantize(m)) == m);
  }
  // and the other composition on all Clifford monomials
  for (const auto& w : all_subsets(5)) {
    Element m = ctx5.cl().monomial(w);
    CHECK(ctx5.quantize(ctx5.symbol(m)) == m);
  }
}

TEST_CASE("gamma: abelian zero, adjoint generator, Lie homomorphism") {
  CliffordContext ab(catalog_algebra("abelian4"));
  CHECK(ab.gamma(ab.lie().basis_vector(0)).is_zero());

  for (const char* name : {"sl2", "fh1", "saff", "cubic_n3"}) {
    CliffordContext ctx(catalog_algebra(name));
    const auto& L = ctx.lie();
    const Algebra& Cl = ctx.cl();
    for (int a = 0; a < L.dim(); ++a) {
      Element ga = ctx.gamma_basis(a);
      for (int b = 0; b < L.dim(); ++b) {
        // [gamma(e_a), e_b] = [e_a, e_b] in Cl
        Element lhs = Cl.super_commutator(ga, Cl.generator(uint16_t(b)));
        CHECK(lhs == ctx.cl_vector(L.bracket(L.basis_vector(a), L.basis_vector(b))));
        // [gamma(x), gamma(y)] = gamma([x, y])
        Element gb = ctx.gamma_basis(b);
        CHECK(Cl.super_commutator(ga, gb) ==
              ctx.gamma(L.bracket(L.basis_vector(a), L.basis_vector(b))));
      }
    }
  }
}

TEST_CASE("[gamma(zeta), .] equals the adjoint action on every Cl monomial") {
  for (const char* name : {"sl2", "fh1"}) {
    CliffordContext ctx(catalog_algebra(name));
    const auto& L = ctx.lie();
    const Algebra& Cl = ctx.cl();
    for (int a = 0; a < L.dim(); ++a) {
      Element ga = ctx.gamma_basis(a);
      for (const auto& w : all_subsets(L.dim())) {
        Element m = Cl.monomial(w);
        CHECK(Cl.super_commutator(ga, m) == ctx.adjoint_cl(L.basis_vector(a), m));
      }
    }
  }
}

TEST_CASE("gamma is basis-independent") {
  const auto& sl2 = catalog_algebra("sl2");
  CliffordContext ctx(sl2);
  std::mt19937 rng(31);
  for (int t = 0; t < 5; ++t) {
    RatMatrix M = random_invertible(3, rng);
    auto L2 = sl2.change_basis(M, "sl2'");
    CliffordContext ctx2(L2);
    // algebra map Cl(L2) -> Cl(L): x'_a -> sum_b M(b,a) x_b
    std::vector<Element> images;
    for (int a = 0; a < 3; ++a) images.push_back(ctx.cl_vector(RatVector(M.col(a))));
    Substitution phi(&ctx2.cl(), &ctx.cl(), images);
    RatMatrix Minv = inverse(M);
    for (int a = 0; a < 3; ++a) {
      Element g2 = ctx2.gamma(RatVector(Minv.col(a)));  // gamma'(e_a in new coords)
      CHECK(phi(g2) == ctx.gamma_basis(a));
    }
  }
}

TEST_CASE("lambda: contraction property, q(lambda) = gamma, chevalley equivariance") {
  for (const char* name : {"sl2", "fh1", "cubic_n3"}) {
    const auto& L = catalog_algebra(name);
    auto extd = make_exterior_algebra(L.dim(), "Ext(g*)");
    RatMatrix P = rat_identity(L.dim());
    for (int amu = 0; amu < L.dim(); ++amu) {
      Element lam = lambda_dual(L, *extd, L.basis_vector(amu));
      for (int xi = 0; xi < L.dim(); ++xi) {
        Element got = contract_vector(L.basis_vector(xi), lam, P);
        RatVector want = Rational(-1) * coad_paper(L, L.basis_vector(xi), L.basis_vector(amu));
        CHECK(got == vector_element(*extd, want));
      }
    }
    // abelian: lambda = 0
    const auto& ab = catalog_algebra("abelian2");
    auto extd2 = make_exterior_algebra(2, "Ext(ab*)");
    CHECK(lambda_dual(ab, *extd2, ab.basis_vector(0)).is_zero());

    CliffordContext ctx(L);
    for (int a = 0; a < L.dim(); ++a) {
      // two independent code paths: symmetrization vs the Clifford-product sum
      CHECK(ctx.quantize(ctx.lambda(L.basis_vector(a))) == ctx.gamma_basis(a));
      // chevalley quantization commutes with the adjoint action
      for (const auto& w : all_subsets(std::min(L.dim(), 4))) {
        Element m = ctx.ext().monomial(w);
        CHECK(ctx.quantize(ctx.adjoint_ext(L.basis_vector(a), m)) ==
              ctx.adjoint_cl(L.basis_vector(a), ctx.quantize(m)));
      }
    }
  }
}

TEST_CASE("contraction conventions") {
  auto ext = make_exterior_algebra(4, "Ext4");
  RatMatrix P = rat_identity(4);
  // iota_{e^0}(x0 ^ x1) = x1
  Element m01 = ext->monomial({0, 1});
  RatVector e0 = RatVector::Constant(4, Rational(0));
  e0(0) = 1;
  CHECK(contract_vector(e0, m01, P) == ext->generator(1));
  // iota of the scalar 1 is the identity operator
  for (const auto& w : all_subsets(4))
    CHECK(contract(ext->unit(), ext->monomial(w), P) == ext->monomial(w));
  // iota(alpha ^ beta) = iota(alpha) o iota(beta) on random forms
  std::mt19937 rng(41);
  auto rand_form = [&]() {
    Element x = ext->zero();
    for (int k = 0; k < 3; ++k) {
      Word w;
      for (int i = 0, n = int(rng() % 3); i < n; ++i) w.push_back(uint16_t(rng() % 4));
      x += rat(long(rng() % 5) - 2) * ext->normalize(w);
    }
    return x;
  };
  for (int t = 0; t < 25; ++t) {
    Element alpha = rand_form(), beta = rand_form(), x = rand_form();
    Element lhs = contract(ext->mul(alpha, beta), x, P);
    Element rhs = contract(alpha, contract(beta, x, P), P);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("determinant identity for contractions of exponentials") {
  // A = 0: scalar 1, quadratic unchanged
  std::mt19937 rng(59);
  for (int n : {2, 3, 4}) {
    RatMatrix Bm = random_skew(n, rng);
    auto r = contract_exponentials(rat_zero_matrix(n, n), Bm);
    CHECK(r.scalar == 1);
    auto ext = make_exterior_algebra(n, "E");
    CHECK(r.quadratic.terms() == wedge_from_skew(*ext, Bm).terms());
    // B = 0: scalar 1, quadratic 0
    auto r2 = contract_exponentials(random_skew(n, rng), rat_zero_matrix(n, n));
    CHECK(r2.scalar == 1);
    CHECK(r2.quadratic.is_zero());
  }
  // 50 random pairs, dims 2..4; contract_exponentials itself verifies the
  // identity and the det-square property exactly, throwing on failure
  int done = 0;
  while (done < 50) {
    int n = 2 + int(rng() % 3);
    RatMatrix A = random_skew(n, rng), Bm = random_skew(n, rng);
    if (sgn(det(RatMatrix(rat_identity(n) + A * Bm))) == 0) continue;
    auto r = contract_exponentials(A, Bm);
    CHECK(r.scalar * r.scalar == det(RatMatrix(rat_identity(n) + A * Bm)));
    ++done;
  }
}
