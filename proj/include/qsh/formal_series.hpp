#pragma once

#include "qsh/ring.hpp"

#include <stdexcept>
#include <vector>

namespace qshuffle {

// f = c_1 t + c_2 t^2 + ... + c_N t^N, no constant term, truncated at N >= 1.
// Composition-invertible exactly when c_1 is invertible in the scalar ring.
template <class K> class FormalSeries {
public:
  explicit FormalSeries(std::vector<K> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("series: truncation order must be >= 1");
  }

  int order() const { return static_cast<int>(c_.size()); }

  // 1-based: coeff(i) is the coefficient of t^i.
  const K& coeff(int i) const {
    if (i < 1 || i > order()) throw std::out_of_range("series: coefficient index");
    return c_[i - 1];
  }

  const std::vector<K>& coeffs() const { return c_; }

  friend bool operator==(const FormalSeries& a, const FormalSeries& b) {
    return a.c_ == b.c_;
  }

private:
  std::vector<K> c_;
};

namespace detail {

// Truncated product of coefficient vectors indexed from t^1.
template <class K>
std::vector<K> series_mul(const std::vector<K>& a, const std::vector<K>& b, size_t n,
                          const K& zero) {
  std::vector<K> r(n, zero);
  for (size_t i = 0; i < a.size(); ++i) {
    if (RingTraits<K>::is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      size_t deg = i + j + 2;  // t^(i+1) * t^(j+1)
      if (deg > n) break;
      r[deg - 1] += a[i] * b[j];
    }
  }
  return r;
}

template <class K> K ring_zero(const K& sample) {
  return RingTraits<K>::embed(sample, Rational(0));
}

} // namespace detail

// Coefficient k of f(g(t)): sum over j of [t^j]f * [t^k](g^j).
template <class K>
FormalSeries<K> series_compose(const FormalSeries<K>& f, const FormalSeries<K>& g) {
  if (f.order() != g.order())
    throw std::invalid_argument("series compose: truncation order mismatch");
  const size_t n = f.order();
  const K zero = detail::ring_zero(f.coeff(1));
  std::vector<K> acc(n, zero);
  std::vector<K> gpow = g.coeffs();  // g^j, starting at j=1
  for (size_t j = 1; j <= n; ++j) {
    const K& cj = f.coeff(static_cast<int>(j));
    if (!RingTraits<K>::is_zero(cj))
      for (size_t k = 0; k < n; ++k) acc[k] += cj * gpow[k];
    if (j < n) gpow = detail::series_mul(gpow, g.coeffs(), n, zero);
  }
  return FormalSeries<K>(std::move(acc));
}

// Compositional inverse by triangular solve; needs invertible c_1.
template <class K> FormalSeries<K> series_inverse(const FormalSeries<K>& f) {
  const size_t n = f.order();
  const K zero = detail::ring_zero(f.coeff(1));
  if (RingTraits<K>::is_zero(f.coeff(1)))
    throw std::domain_error("series inverse: leading coefficient is zero");
  std::vector<K> g(n, zero);
  g[0] = RingTraits<K>::divide(RingTraits<K>::embed(f.coeff(1), Rational(1)), f.coeff(1));
  // Maintain powers of g up to the degree solved so far.
  for (size_t k = 2; k <= n; ++k) {
    // [t^k] f(g) = sum_{j=1}^{k} c_j [t^k] g^j must vanish; only the j=1 term
    // involves g_k, with coefficient c_1.
    std::vector<K> trunc(g.begin(), g.begin() + k);  // g with g_k still zero
    std::vector<K> gpow = trunc;
    K acc = zero;
    for (size_t j = 1; j <= k; ++j) {
      const K& cj = f.coeff(static_cast<int>(j));
      if (!RingTraits<K>::is_zero(cj) && !RingTraits<K>::is_zero(gpow[k - 1]))
        acc += cj * gpow[k - 1];
      if (j < k) gpow = detail::series_mul(gpow, trunc, k, zero);
    }
    g[k - 1] = RingTraits<K>::divide(-acc, f.coeff(1));
  }
  return FormalSeries<K>(std::move(g));
}

// Named coefficient families.  `unit` fixes ring context (QSeries order).
template <class K> FormalSeries<K> series_t(int n, const K& unit) {
  std::vector<K> c(n, detail::ring_zero(unit));
  c[0] = RingTraits<K>::embed(unit, Rational(1));
  return FormalSeries<K>(std::move(c));
}

template <class K> FormalSeries<K> series_neg_t(int n, const K& unit) {
  std::vector<K> c(n, detail::ring_zero(unit));
  c[0] = RingTraits<K>::embed(unit, Rational(-1));
  return FormalSeries<K>(std::move(c));
}

// t/(1-pt): c_i = p^(i-1).
template <class K> FormalSeries<K> series_geometric(int n, const K& p, const K& unit) {
  std::vector<K> c(n, detail::ring_zero(unit));
  K pw = RingTraits<K>::embed(unit, Rational(1));
  for (int i = 0; i < n; ++i) {
    c[i] = pw;
    pw = pw * p;
  }
  return FormalSeries<K>(std::move(c));
}

// t/(1-t) and t/(1+t).
template <class K> FormalSeries<K> series_sigma(int n, const K& unit) {
  return series_geometric(n, RingTraits<K>::embed(unit, Rational(1)), unit);
}
template <class K> FormalSeries<K> series_sigma_inv(int n, const K& unit) {
  return series_geometric(n, RingTraits<K>::embed(unit, Rational(-1)), unit);
}

// e^t - 1: c_i = 1/i!.
template <class K> FormalSeries<K> series_exp(int n, const K& unit) {
  std::vector<K> c(n, detail::ring_zero(unit));
  Rational f(1);
  for (int i = 1; i <= n; ++i) {
    f /= Rational(i);
    c[i - 1] = RingTraits<K>::embed(unit, f);
  }
  return FormalSeries<K>(std::move(c));
}

// log(1+t): c_i = (-1)^(i-1)/i.
template <class K> FormalSeries<K> series_log(int n, const K& unit) {
  std::vector<K> c(n, detail::ring_zero(unit));
  for (int i = 1; i <= n; ++i) {
    Rational v = Rational(i % 2 ? 1 : -1) / Rational(i);
    c[i - 1] = RingTraits<K>::embed(unit, v);
  }
  return FormalSeries<K>(std::move(c));
}

// (1+t)^p - 1: c_i = binom(p, i), p any ring element.
template <class K> FormalSeries<K> series_pow1p(int n, const K& p, const K& unit) {
  std::vector<K> c(n, detail::ring_zero(unit));
  K acc = RingTraits<K>::embed(unit, Rational(1));
  for (int i = 1; i <= n; ++i) {
    acc = acc * (p - RingTraits<K>::embed(unit, Rational(i - 1)));
    acc = RingTraits<K>::div_rat(acc, Rational(i));
    c[i - 1] = acc;
  }
  return FormalSeries<K>(std::move(c));
}

// 1 - (1-t)^p: c_i = (-1)^(i+1) binom(p, i).
template <class K> FormalSeries<K> series_one_minus_pow(int n, const K& p, const K& unit) {
  FormalSeries<K> base = series_pow1p(n, p, unit);
  std::vector<K> c = base.coeffs();
  for (int i = 2; i <= n; i += 2) c[i - 1] = -c[i - 1];
  return FormalSeries<K>(std::move(c));
}

} // namespace qshuffle
