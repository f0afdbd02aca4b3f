#ifndef QWEIL_RATIONAL_HPP
#define QWEIL_RATIONAL_HPP

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace Eigen {

// Exact rational scalar support for Eigen matrices.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 60,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qweil {

/// Exact rational scalar. Canonical form (reduced, positive denominator) is
/// maintained by GMP for all arithmetic results.
using Rational = mpq_class;

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p/q" style strings.
inline Rational rat_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0)
    throw std::invalid_argument("malformed rational: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

inline RatMatrix rat_zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  return RatMatrix::Constant(rows, cols, Rational(0));
}

inline RatMatrix rat_identity(Eigen::Index n) {
  RatMatrix m = rat_zero_matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

/// Exact determinant by fraction-producing Gaussian elimination
/// (first nonzero pivot; no magnitude pivoting needed over Q).
inline Rational det(RatMatrix m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det of non-square matrix");
  Rational d(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = c; r < n; ++r)
      if (sgn(m(r, c)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rational(0);
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      d = -d;
    }
    d *= m(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (sgn(m(r, c)) == 0) continue;
      Rational f = m(r, c) / m(c, c);
      for (Eigen::Index k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return d;
}

/// Exact inverse; empty optional when singular.
inline std::optional<RatMatrix> try_inverse(RatMatrix m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  RatMatrix inv = rat_identity(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = c; r < n; ++r)
      if (sgn(m(r, c)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      inv.row(piv).swap(inv.row(c));
    }
    Rational p = m(c, c);
    for (Eigen::Index k = 0; k < n; ++k) {
      m(c, k) /= p;
      inv(c, k) /= p;
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || sgn(m(r, c)) == 0) continue;
      Rational f = m(r, c);
      for (Eigen::Index k = 0; k < n; ++k) {
        m(r, k) -= f * m(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

inline RatMatrix inverse(const RatMatrix& m) {
  auto inv = try_inverse(m);
  if (!inv) throw std::invalid_argument("singular matrix");
  return *inv;
}

/// Basis of the (right) nullspace {x : m x = 0}, one column per basis vector.
inline std::vector<RatVector> nullspace(RatMatrix m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index rr = r; rr < rows; ++rr)
      if (sgn(m(rr, c)) != 0) {
        piv = rr;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    Rational p = m(r, c);
    for (Eigen::Index k = c; k < cols; ++k) m(r, k) /= p;
    for (Eigen::Index rr = 0; rr < rows; ++rr) {
      if (rr == r || sgn(m(rr, c)) == 0) continue;
      Rational f = m(rr, c);
      for (Eigen::Index k = c; k < cols; ++k) m(rr, k) -= f * m(r, k);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVector v = RatVector::Constant(cols, Rational(0));
    v(free) = 1;
    for (size_t pr = 0; pr < pivot_col.size(); ++pr) v(pivot_col[pr]) = -m(pr, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline RatMatrix mat_pow(const RatMatrix& m, unsigned k) {
  RatMatrix acc = rat_identity(m.rows());
  for (unsigned i = 0; i < k; ++i) acc = acc * m;
  return acc;
}

inline Rational trace(const RatMatrix& m) {
  Rational t(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace qweil

#endif
