#ifndef QWEIL_SERIES_HPP
#define QWEIL_SERIES_HPP

#include "qweil/rational.hpp"

#include <vector>

namespace qweil {

/// Truncated univariate formal power series over Q, coefficient of z^k at [k].
struct PowerSeries {
  std::vector<Rational> c;

  explicit PowerSeries(size_t order = 0) : c(order + 1, Rational(0)) {}
  size_t order() const { return c.size() - 1; }
  Rational at(size_t k) const { return k < c.size() ? c[k] : Rational(0); }
};

inline PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b, size_t order) {
  PowerSeries r(order);
  for (size_t i = 0; i < a.c.size() && i <= order; ++i) {
    if (sgn(a.c[i]) == 0) continue;
    for (size_t j = 0; j < b.c.size() && i + j <= order; ++j)
      r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

/// log(f) for f with constant term 1, via log(1+u) = sum (-1)^{m+1} u^m / m.
inline PowerSeries series_log1(const PowerSeries& f, size_t order) {
  PowerSeries u = f;
  u.c.resize(order + 1, Rational(0));
  u.c[0] = 0;
  PowerSeries r(order), upow = u;
  for (size_t m = 1; m <= order; ++m) {
    Rational s = (m % 2 == 1) ? Rational(1, long(m)) : Rational(-1, long(m));
    for (size_t k = 0; k <= order; ++k) r.c[k] += s * upow.at(k);
    if (m < order) upow = series_mul(upow, u, order);
  }
  return r;
}

inline PowerSeries series_derivative(const PowerSeries& f) {
  PowerSeries r(f.order() == 0 ? 0 : f.order() - 1);
  for (size_t k = 1; k < f.c.size(); ++k) r.c[k - 1] = Rational(long(k)) * f.c[k];
  return r;
}

/// Exact rational coefficients of ln j and (ln j)' for j(z) = sinh(z/2)/(z/2),
/// to a configured order.
struct SeriesTable {
  size_t order;
  PowerSeries ln_j;        // sum b_{2k} z^{2k}
  PowerSeries ln_j_prime;  // sum c_{2k+1} z^{2k+1}

  Rational b(size_t k) const { return ln_j.at(k); }
};

/// j(z) = sinh(z/2)/(z/2) = sum_m z^{2m} / (4^m (2m+1)!).
inline PowerSeries j_series(size_t order) {
  PowerSeries j(order);
  Rational term(1);
  for (size_t m = 0; 2 * m <= order; ++m) {
    j.c[2 * m] = term;
    // next: divide by 4 (2m+2)(2m+3)
    term /= Rational(4 * long(2 * m + 2) * long(2 * m + 3));
  }
  return j;
}

inline SeriesTable series_tables(size_t order) {
  if (order < 2) throw std::invalid_argument("series_tables: order must be >= 2");
  SeriesTable t;
  t.order = order;
  t.ln_j = series_log1(j_series(order + 1), order + 1);
  t.ln_j_prime = series_derivative(t.ln_j);
  t.ln_j.c.resize(order + 1);
  return t;
}

}  // namespace qweil

#endif
