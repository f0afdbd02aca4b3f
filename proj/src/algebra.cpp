#include "qweil/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace qweil {

int sign_of_arrangement(std::span<const uint32_t> arr, std::span<const Parity> parities) {
  int n = 0;
  for (size_t p = 0; p < arr.size(); ++p)
    for (size_t q = p + 1; q < arr.size(); ++q)
      if (arr[p] > arr[q] && parities[arr[p]] == Parity::odd &&
          parities[arr[q]] == Parity::odd)
        ++n;
  return (n & 1) ? -1 : 1;
}

int koszul_sign(std::span<const uint32_t> perm, std::span<const Parity> parities) {
  if (perm.size() != parities.size())
    throw std::invalid_argument("koszul_sign: length mismatch");
  // sigma^{-1} read as an arrangement of the original slots.
  std::vector<uint32_t> inv(perm.size());
  for (uint32_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size()) throw std::invalid_argument("koszul_sign: not a permutation");
    inv[perm[i]] = i;
  }
  return sign_of_arrangement(inv, parities);
}

Element& Element::operator+=(const Element& o) {
  if (alg_ == nullptr) alg_ = o.alg_;
  if (o.alg_ != nullptr && alg_ != o.alg_)
    throw std::invalid_argument("element tag mismatch in addition");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (alg_ == nullptr) alg_ = o.alg_;
  if (o.alg_ != nullptr && alg_ != o.alg_)
    throw std::invalid_argument("element tag mismatch in subtraction");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Element Element::filtered(const std::function<bool(const Word&)>& keep) const {
  Element r(alg_);
  for (const auto& [m, c] : terms_)
    if (keep(m)) r.add_term(m, c);
  return r;
}

std::string Element::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    for (auto g : m) os << " " << (alg_ ? alg_->gen(g).name : std::to_string(g));
  }
  return os.str();
}

Algebra::Algebra(std::string tag, std::vector<GenInfo> gens)
    : tag_(std::move(tag)), gens_(std::move(gens)) {
  brackets_.assign(gens_.size() * (gens_.size() + 1) / 2, Element(this));
  zero_bracket_ = Element(this);
}

static size_t tri_index(uint16_t a, uint16_t b) {
  // a >= b
  return size_t(a) * (a + 1) / 2 + b;
}

void Algebra::set_bracket(uint16_t a, uint16_t b, Element value) {
  if (finalized_) throw std::logic_error("algebra already finalized");
  if (a < b)
    throw std::logic_error("set_bracket expects a >= b (the bracket [g_a, g_b])");
  for (const auto& [m, c] : value.terms())
    if (m.size() >= 2)
      throw std::invalid_argument("bracket value must have word length < 2");
  brackets_[tri_index(a, b)] = std::move(value);
}

void Algebra::finalize() {
  commutative_ = true;
  for (const auto& e : brackets_)
    if (!e.is_zero()) commutative_ = false;
  finalized_ = true;
}

const Element& Algebra::bracket(uint16_t a, uint16_t b) const {
  if (a < b) throw std::logic_error("bracket table is lower-triangular");
  return brackets_[tri_index(a, b)];
}

Element Algebra::unit(const Rational& c) const {
  Element e(this);
  e.add_term({}, c);
  return e;
}

Element Algebra::generator(uint16_t g) const {
  Element e(this);
  e.add_term({g}, Rational(1));
  return e;
}

Element Algebra::monomial(const Word& w, const Rational& c) const {
  if (!is_normal(w)) return c * normalize(w);
  Element e(this);
  e.add_term(w, c);
  return e;
}

Parity Algebra::word_parity(const Word& w) const {
  unsigned p = 0;
  for (auto g : w) p ^= uint8_t(gens_[g].parity);
  return Parity(p);
}

Parity Algebra::element_parity(const Element& x) const {
  if (x.is_zero()) return Parity::even;
  Parity p = word_parity(x.terms().begin()->first);
  for (const auto& [m, c] : x.terms())
    if (word_parity(m) != p)
      throw std::invalid_argument("element is not parity-homogeneous");
  return p;
}

bool Algebra::is_normal(const Word& w) const {
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] > w[i + 1]) return false;
    if (w[i] == w[i + 1] && gens_[w[i]].parity == Parity::odd) return false;
  }
  return true;
}

Element Algebra::normalize_uncached(const Word& w) const {
  // Find the first violation.
  size_t i = 0;
  for (; i + 1 < w.size(); ++i) {
    if (w[i] > w[i + 1]) break;
    if (w[i] == w[i + 1] && gens_[w[i]].parity == Parity::odd) break;
  }
  // (unreached for normal words; callers check)
  const uint16_t a = w[i], b = w[i + 1];
  Element result(this);
  auto splice = [&](const Word& mid, const Rational& coeff) {
    Word nw;
    nw.reserve(w.size() - 2 + mid.size());
    nw.insert(nw.end(), w.begin(), w.begin() + i);
    nw.insert(nw.end(), mid.begin(), mid.end());
    nw.insert(nw.end(), w.begin() + i + 2, w.end());
    result += coeff * normalize(nw);
  };
  if (a == b) {
    // odd square: g g = 1/2 [g, g]
    const Element& br = bracket(a, b);
    for (const auto& [m, c] : br.terms()) splice(m, c / 2);
  } else {
    // a > b at position i: swap with Koszul sign, add bracket terms
    Word swapped(w);
    std::swap(swapped[i], swapped[i + 1]);
    bool both_odd =
        gens_[a].parity == Parity::odd && gens_[b].parity == Parity::odd;
    result += Rational(both_odd ? -1 : 1) * normalize(swapped);
    const Element& br = bracket(a, b);
    for (const auto& [m, c] : br.terms()) splice(m, c);
  }
  return result;
}

Element Algebra::normalize(const Word& w) const {
  if (is_normal(w)) {
    Element e(this);
    e.add_term(w, Rational(1));
    return e;
  }
  if (commutative_) {
    // Fast path: sort with Koszul sign, kill repeated odd generators.
    Word s(w);
    int sign = 1;
    for (size_t i = 1; i < s.size(); ++i) {
      size_t j = i;
      while (j > 0 && s[j - 1] > s[j]) {
        if (gens_[s[j - 1]].parity == Parity::odd &&
            gens_[s[j]].parity == Parity::odd)
          sign = -sign;
        std::swap(s[j - 1], s[j]);
        --j;
      }
    }
    for (size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] == s[i + 1] && gens_[s[i]].parity == Parity::odd)
        return Element(this);
    Element e(this);
    e.add_term(s, Rational(sign));
    return e;
  }
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
  }
  Element r = normalize_uncached(w);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.emplace(w, r);
  }
  return r;
}

Element Algebra::mul(const Element& x, const Element& y) const {
  if (x.algebra() != this || y.algebra() != this)
    throw std::invalid_argument("element tag mismatch in product on " + tag_);
  Element r(this);
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      Word w;
      w.reserve(mx.size() + my.size());
      w.insert(w.end(), mx.begin(), mx.end());
      w.insert(w.end(), my.begin(), my.end());
      r += (cx * cy) * normalize(w);
    }
  return r;
}

Element Algebra::super_commutator(const Element& x, const Element& y) const {
  Parity px = element_parity(x);
  Element r = mul(x, y);
  if (px == Parity::odd) {
    // split y by parity
    Element y_even(this), y_odd(this);
    for (const auto& [m, c] : y.terms())
      (word_parity(m) == Parity::odd ? y_odd : y_even).add_term(m, c);
    r -= mul(y_even, x);
    r += mul(y_odd, x);
  } else {
    r -= mul(y, x);
  }
  return r;
}

Element Algebra::symmetrize(std::span<const Element> factors) const {
  const size_t k = factors.size();
  if (k == 0) return unit();
  if (k > symmetrize_cap_)
    throw std::invalid_argument("symmetrization length exceeds cap on " + tag_);
  std::vector<Parity> parities(k);
  for (size_t i = 0; i < k; ++i) {
    if (factors[i].algebra() != this)
      throw std::invalid_argument("symmetrize: factor tag mismatch");
    parities[i] = element_parity(factors[i]);
  }
  std::vector<uint32_t> arr(k);
  std::iota(arr.begin(), arr.end(), 0);
  Element sum(this);
  Rational kfact(1);
  for (size_t i = 2; i <= k; ++i) kfact *= Rational(long(i));
  do {
    int sign = sign_of_arrangement(arr, parities);
    Element prod = factors[arr[0]];
    for (size_t i = 1; i < k; ++i) prod = mul(prod, factors[arr[i]]);
    sum += Rational(sign) * prod;
  } while (std::next_permutation(arr.begin(), arr.end()));
  sum *= Rational(1) / kfact;
  return sum;
}

void Algebra::clear_cache() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.clear();
}

Derivation::Derivation(const Algebra* alg, Parity parity, std::vector<Element> images)
    : alg_(alg), parity_(parity), images_(std::move(images)) {
  if (images_.size() != alg_->num_generators())
    throw std::invalid_argument("derivation: image for every generator required");
}

Element Derivation::apply_word(const Word& w) const {
  Element r(alg_);
  for (size_t i = 0; i < w.size(); ++i) {
    const Element& img = images_[w[i]];
    if (img.is_zero()) continue;
    int sign = 1;
    if (parity_ == Parity::odd) {
      unsigned p = 0;
      for (size_t j = 0; j < i; ++j) p ^= uint8_t(alg_->parity(w[j]));
      if (p) sign = -1;
    }
    Word prefix(w.begin(), w.begin() + i);
    Word suffix(w.begin() + i + 1, w.end());
    Element term = alg_->mul(alg_->monomial(prefix), img);
    term = alg_->mul(term, alg_->monomial(suffix));
    r += Rational(sign) * term;
  }
  return r;
}

Element Derivation::operator()(const Element& x) const {
  if (x.algebra() != alg_) throw std::invalid_argument("derivation tag mismatch");
  Element r(alg_);
  for (const auto& [m, c] : x.terms()) r += c * apply_word(m);
  return r;
}

Substitution::Substitution(const Algebra* src, const Algebra* dst,
                           std::vector<Element> images)
    : src_(src), dst_(dst), images_(std::move(images)) {
  if (images_.size() != src_->num_generators())
    throw std::invalid_argument("substitution: image for every generator required");
  for (const auto& img : images_)
    if (!img.is_zero() && img.algebra() != dst_)
      throw std::invalid_argument("substitution: image tag mismatch");
}

Element Substitution::apply_word(const Word& w) const {
  Element r = dst_->unit();
  for (auto g : w) r = dst_->mul(r, images_[g]);
  return r;
}

Element Substitution::operator()(const Element& x) const {
  if (x.algebra() != src_) throw std::invalid_argument("substitution tag mismatch");
  Element r(dst_);
  for (const auto& [m, c] : x.terms()) r += c * apply_word(m);
  return r;
}

Element symmetrize_into(const Algebra& target, std::span<const Element> factors) {
  return target.symmetrize(factors);
}

Element symmetrize_word_images(const Algebra& target, const Word& w,
                               std::span<const Element> images,
                               std::span<const Parity> source_parities) {
  const size_t k = w.size();
  if (k == 0) return target.unit();
  Word s(w);
  std::sort(s.begin(), s.end());
  for (size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] == s[i + 1] && source_parities[s[i]] == Parity::odd)
      throw std::invalid_argument("symmetrize_word_images: repeated odd generator");
  // multiplicity factor: product of m_i! over repeated (even) generators
  Rational weight(1);
  {
    size_t run = 1;
    for (size_t i = 1; i <= s.size(); ++i) {
      if (i < s.size() && s[i] == s[i - 1]) {
        ++run;
        weight *= Rational(long(run));
      } else {
        run = 1;
      }
    }
  }
  Rational kfact(1);
  for (size_t i = 2; i <= k; ++i) kfact *= Rational(long(i));
  Element sum(&target);
  do {
    // Koszul sign: inversions among odd generators (odd ids are distinct)
    int inv = 0;
    for (size_t p = 0; p < k; ++p)
      for (size_t q = p + 1; q < k; ++q)
        if (s[p] > s[q] && source_parities[s[p]] == Parity::odd &&
            source_parities[s[q]] == Parity::odd)
          ++inv;
    Element prod = images[s[0]];
    for (size_t i = 1; i < k; ++i) prod = target.mul(prod, images[s[i]]);
    sum += Rational((inv & 1) ? -1 : 1) * prod;
  } while (std::next_permutation(s.begin(), s.end()));
  sum *= weight / kfact;
  return sum;
}

}  // namespace qweil
