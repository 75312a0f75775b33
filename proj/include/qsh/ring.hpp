#pragma once

#include "qsh/poly_scalar.hpp"
#include "qsh/qseries.hpp"
#include "qsh/rational.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace qshuffle {

// Numeric values produced by the analytic evaluators.  Real results carry a
// zero imaginary part.  Never used as a coefficient ring for the algebra.
using NumericScalar = std::complex<double>;

inline bool approx_equal(double a, double b, double rel, double abs_tol) {
  double diff = std::abs(a - b);
  if (diff <= abs_tol) return true;
  return diff <= rel * std::max(std::abs(a), std::abs(b));
}

inline bool approx_equal(const NumericScalar& a, const NumericScalar& b, double rel,
                         double abs_tol) {
  double diff = std::abs(a - b);
  if (diff <= abs_tol) return true;
  return diff <= rel * std::max(std::abs(a), std::abs(b));
}

// Uniform scalar interface for the templated algebra.  `embed` turns a
// rational into a ring element shaped like `unit` (which matters for QSeries,
// where the truncation order travels with the value).  `one()` exists only
// for rings with a context-free unit.
template <class K> struct RingTraits;

template <> struct RingTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& a) { return a.is_zero(); }
  static Rational embed(const Rational&, const Rational& r) { return r; }
  static Rational div_rat(const Rational& a, const Rational& r) { return a / r; }
  static Rational divide(const Rational& a, const Rational& b) { return a / b; }
  static std::string str(const Rational& a) { return a.str(); }
  static bool is_one(const Rational& a) { return a.is_one(); }
};

template <> struct RingTraits<PolyScalar> {
  static PolyScalar zero() { return PolyScalar(); }
  static PolyScalar one() { return PolyScalar(1); }
  static bool is_zero(const PolyScalar& a) { return a.is_zero(); }
  static PolyScalar embed(const PolyScalar&, const Rational& r) {
    return PolyScalar(r);
  }
  static PolyScalar div_rat(PolyScalar a, const Rational& r) { return a /= r; }
  static PolyScalar divide(PolyScalar a, const PolyScalar& b) { return a /= b; }
  static std::string str(const PolyScalar& a) { return a.str(); }
  static bool is_one(const PolyScalar& a) {
    return a.is_constant() && !a.is_zero() && a.constant_value().is_one();
  }
};

template <> struct RingTraits<QSeries> {
  // No context-free zero()/one(): the truncation order must come from a sample.
  static bool is_zero(const QSeries& a) { return a.is_zero(); }
  static QSeries embed(const QSeries& unit, const Rational& r) {
    return QSeries::constant(r, unit.order());
  }
  static QSeries div_rat(QSeries a, const Rational& r) { return a /= r; }
  static QSeries divide(const QSeries& a, const QSeries& b) {
    return a * b.inverse();
  }
  static std::string str(const QSeries& a) { return a.str(); }
  static bool is_one(const QSeries& a) { return a == QSeries::one(a.order()); }
};

} // namespace qshuffle
