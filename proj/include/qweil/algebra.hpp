#ifndef QWEIL_ALGEBRA_HPP
#define QWEIL_ALGEBRA_HPP

#include "qweil/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace qweil {

enum class Parity : uint8_t { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return Parity((uint8_t(a) + uint8_t(b)) & 1u);
}

/// Koszul sign of an arrangement: arr lists the original factor indices in the
/// order they now appear; the sign is (-1)^N with N the number of pairs of odd
/// factors appearing out of their original relative order.
int sign_of_arrangement(std::span<const uint32_t> arr, std::span<const Parity> parities);

/// Sign (-1)^N, N = #{pairs i<j, both slots odd, perm^{-1}(i) > perm^{-1}(j)}.
/// perm is a permutation of 0..k-1 (perm[i] = sigma(i)).
int koszul_sign(std::span<const uint32_t> perm, std::span<const Parity> parities);

/// A word of generator ids in an Algebra; the empty word is the unit monomial.
using Word = std::vector<uint16_t>;

struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct WordHash {
  size_t operator()(const Word& w) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (auto g : w) h = h * 1099511628211ull + g + 1;
    return h;
  }
};

class Algebra;

/// Finitely supported map from normal-form monomials to rationals.
/// Zero coefficients are never stored; all monomials share the owning algebra.
class Element {
 public:
  using Terms = std::map<Word, Rational, WordLess>;

  Element() : alg_(nullptr) {}
  explicit Element(const Algebra* alg) : alg_(alg) {}
  Element(const Algebra* alg, Terms terms) : alg_(alg), terms_(std::move(terms)) {}

  const Algebra* algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(const Word& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend bool operator==(const Element& a, const Element& b) {
    return a.terms_ == b.terms_;
  }

  /// Coefficient of a monomial (zero if absent).
  Rational coeff(const Word& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Restricts support to monomials satisfying the predicate.
  Element filtered(const std::function<bool(const Word&)>& keep) const;

  /// Sum of coefficients of the empty monomial (the scalar part).
  Rational scalar_part() const { return coeff({}); }

  std::string str() const;

 private:
  const Algebra* alg_;
  Terms terms_;
};

struct GenInfo {
  std::string name;
  Parity parity = Parity::even;
  uint8_t sort = 0;   // algebra-specific region/leg tag
  uint16_t index = 0; // basis index within the sort
};

/// An associative super algebra presented by ordered generators with
/// straightening relations of Clifford/enveloping type:
///   g_a g_b = (-1)^{|a||b|} g_b g_a + beta(a,b)   for a > b,
///   g_a g_a = 1/2 beta(a,a)                       for odd a,
/// where beta(a,b) (the super bracket [g_a, g_b]) has strictly lower word
/// length. Normal-form monomials are non-decreasing words with no repeated
/// odd generator. beta identically zero gives the free super-commutative case
/// (symmetric, exterior and Weil algebras); U(g), Cl(g) and the factored or
/// Koszul presentations of the noncommutative Weil algebra are instances with
/// nonzero beta.
class Algebra {
 public:
  Algebra(std::string tag, std::vector<GenInfo> gens);

  // Elements reference their algebra by address; instances are pinned.
  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  /// Installs the super bracket [g_a, g_b] for a >= b. Must be normal and of
  /// word length < 2. Unset pairs default to zero (super-commuting pair).
  void set_bracket(uint16_t a, uint16_t b, Element value);

  /// Call once all brackets are set; precomputes the fast paths.
  void finalize();

  const std::string& tag() const { return tag_; }
  size_t num_generators() const { return gens_.size(); }
  const GenInfo& gen(uint16_t g) const { return gens_[g]; }
  Parity parity(uint16_t g) const { return gens_[g].parity; }
  const Element& bracket(uint16_t a, uint16_t b) const;
  bool commutative() const { return commutative_; }

  Element zero() const { return Element(this); }
  Element unit(const Rational& c = Rational(1)) const;
  Element generator(uint16_t g) const;
  Element monomial(const Word& w, const Rational& c = Rational(1)) const;

  Parity word_parity(const Word& w) const;
  /// Parity of a homogeneous element; throws if mixed.
  Parity element_parity(const Element& x) const;

  bool is_normal(const Word& w) const;

  /// Rewrites an arbitrary word into the normal-form basis (memoized).
  Element normalize(const Word& w) const;

  Element mul(const Element& x, const Element& y) const;
  Element mul(const Element& x, const Element& y, const Element& z) const {
    return mul(mul(x, y), z);
  }

  /// Super commutator [x, y] = xy - (-1)^{|x||y|} yx for homogeneous x.
  Element super_commutator(const Element& x, const Element& y) const;

  /// Symmetrization (1/k!) sum_sigma sign * x_{sigma^{-1}(1)} ... of factor
  /// images; k = 0 yields the unit. Factors must be parity-homogeneous.
  Element symmetrize(std::span<const Element> factors) const;

  size_t symmetrize_cap() const { return symmetrize_cap_; }
  void set_symmetrize_cap(size_t cap) { symmetrize_cap_ = cap; }

  void clear_cache() const;

 private:
  Element normalize_uncached(const Word& w) const;

  std::string tag_;
  std::vector<GenInfo> gens_;
  std::vector<Element> brackets_;  // row-major lower triangle, a >= b
  Element zero_bracket_;
  bool commutative_ = true;
  bool finalized_ = false;
  size_t symmetrize_cap_ = 8;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<Word, Element, WordHash> cache_;
};

/// Extends generator images to a super derivation by the signed Leibniz rule:
/// D(g_1...g_k) = sum_i (-1)^{|D|(|g_1|+...+|g_{i-1}|)} g_1..D(g_i)..g_k.
class Derivation {
 public:
  Derivation(const Algebra* alg, Parity parity, std::vector<Element> images);

  Parity parity() const { return parity_; }
  Element operator()(const Element& x) const;
  Element apply_word(const Word& w) const;

 private:
  const Algebra* alg_;
  Parity parity_;
  std::vector<Element> images_;
};

/// Multiplicative extension of generator images between algebras; valid when
/// the images satisfy the source relations.
class Substitution {
 public:
  Substitution(const Algebra* src, const Algebra* dst, std::vector<Element> images);

  Element operator()(const Element& x) const;
  Element apply_word(const Word& w) const;

 private:
  const Algebra* src_;
  const Algebra* dst_;
  std::vector<Element> images_;
};

Element symmetrize_into(const Algebra& target, std::span<const Element> factors);

/// Symmetrization of a source-algebra word through per-generator images:
/// (1/k!) sum over slot permutations of the signed image product. Repeated
/// generators are grouped (only distinct id-sequences are multiplied out),
/// which is exact because repeats can only occur for even generators.
Element symmetrize_word_images(const Algebra& target, const Word& w,
                               std::span<const Element> images,
                               std::span<const Parity> source_parities);

}  // namespace qweil

#endif
