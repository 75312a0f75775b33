#pragma once

#include "qsh/qseries.hpp"
#include "qsh/word_maps.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <vector>

namespace qshuffle {

namespace detail {

// Nested sum over chains bound <= n with exact rational terms.  strict
// selects m_1 > m_2 > ... > m_l, otherwise the chain is weakly decreasing;
// odd_only restricts every index to odd integers.  One prefix-sum pass per
// letter.
inline Rational harmonic_sum(const Word& w, long n, bool strict, bool odd_only) {
  if (n < 0) throw std::invalid_argument("harmonic: negative bound");
  for (const Letter& l : w.letters())
    if (l.j != 0)
      throw std::invalid_argument("harmonic: letter " + l.str(true) +
                                  " has a pair index");
  std::vector<Rational> g(static_cast<size_t>(n) + 1, Rational(1));
  for (size_t pos = w.length(); pos-- > 0;) {
    const long k = static_cast<long>(w[pos].i);
    std::vector<Rational> next(static_cast<size_t>(n) + 1);
    Rational running(0);
    for (long m = 1; m <= n; ++m) {
      if (!odd_only || m % 2 == 1)
        running += Rational(Int(1), Int(m)).pow(k) * g[strict ? m - 1 : m];
      next[m] = running;
    }
    g = std::move(next);
  }
  return g[n];
}

} // namespace detail

// A_{(k)}(n): sum of 1/(m_1^{k_1}...m_l^{k_l}) over n >= m_1 > ... > m_l >= 1.
inline Rational harmonic(const Word& w, long n) {
  return detail::harmonic_sum(w, n, true, false);
}

// S_{(k)}(n): same with weak inequalities throughout.
inline Rational harmonic_star(const Word& w, long n) {
  return detail::harmonic_sum(w, n, false, false);
}

// Odd-index restrictions of the two sums above; finite truncations of the
// t-value series.
inline Rational odd_harmonic(const Word& w, long n) {
  return detail::harmonic_sum(w, n, true, true);
}
inline Rational odd_harmonic_star(const Word& w, long n) {
  return detail::harmonic_sum(w, n, false, true);
}

inline Rational harmonic(const NcPoly<Rational>& x, long n) {
  Rational acc(0);
  for (const auto& [w, c] : x.terms()) acc += c * harmonic(w, n);
  return acc;
}
inline Rational harmonic_star(const NcPoly<Rational>& x, long n) {
  Rational acc(0);
  for (const auto& [w, c] : x.terms()) acc += c * harmonic_star(w, n);
  return acc;
}
inline Rational odd_harmonic(const NcPoly<Rational>& x, long n) {
  Rational acc(0);
  for (const auto& [w, c] : x.terms()) acc += c * odd_harmonic(w, n);
  return acc;
}

// Unsigned Stirling numbers of the first kind by the standard recurrence
// s(n,k) = s(n-1,k-1) + (n-1)s(n-1,k).
inline Int stirling_first(long n, long k) {
  if (n < 0 || k < 0 || k > n)
    throw std::out_of_range("stirling: need 0 <= k <= n");
  std::vector<Int> row{1};
  for (long m = 1; m <= n; ++m) {
    std::vector<Int> next(static_cast<size_t>(m) + 1);
    for (long j = 0; j < m; ++j) {
      next[j] += row[j] * (m - 1);
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  return row[k];
}

namespace detail {

inline void check_z_indexed(const Word& w, const char* who) {
  for (const Letter& l : w.letters())
    if (l.j != 0)
      throw std::invalid_argument(std::string(who) + ": letter " + l.str(true) +
                                  " has a pair index");
}

// Truncated nested q-sum.  Term for index m with exponent k is
// q^{m(k-1)} (1-q)^k / (1-q^m)^k, the last factor expanded by the negative
// binomial series; the leading exponent >= 2 makes the outer term's
// q-valuation at least m, so indices beyond M contribute nothing mod q^{M+1}.
inline QSeries qzeta_sum(const Word& w, int M, bool strict) {
  if (w.empty()) return QSeries::one(M);
  check_z_indexed(w, "qzeta");
  if (w.first().i < 2)
    throw std::invalid_argument("qzeta: leading exponent must be at least 2, got " +
                                w.first().str(false));
  std::vector<QSeries> g(static_cast<size_t>(M) + 1, QSeries::one(M));
  for (size_t pos = w.length(); pos-- > 0;) {
    const long k = static_cast<long>(w[pos].i);
    const QSeries omq_k = QSeries::one_minus_q(M).pow(k);
    std::vector<QSeries> next(static_cast<size_t>(M) + 1, QSeries(M));
    QSeries running(M);
    for (int m = 1; m <= M; ++m) {
      const long val = static_cast<long>(m) * (k - 1);
      if (val <= M) {
        QSeries geo(M);
        for (long j = 0; val + static_cast<long>(m) * j <= M; ++j)
          geo.set_coeff(static_cast<int>(val + m * j),
                        Rational(binomial_int(Int(k - 1 + j), j)));
        running += geo * omq_k * g[strict ? m - 1 : m];
      }
      next[m] = running;
    }
    g = std::move(next);
  }
  return g[M];
}

} // namespace detail

inline QSeries qzeta(const Word& w, int M) { return detail::qzeta_sum(w, M, true); }

// Direct weakly-decreasing nested sum, used to cross-check the star value
// computed through Sigma.
inline QSeries qzeta_star_weak(const Word& w, int M) {
  return detail::qzeta_sum(w, M, false);
}

// Reads a polynomial scalar as a q-series, mapping eps to 1-q.  Any other
// variable is an error.
inline QSeries eps_to_qseries(const PolyScalar& c, int M) {
  QSeries r(M);
  for (const auto& [mono, coeff] : c.terms()) {
    QSeries t = QSeries::constant(coeff, M);
    for (const auto& [v, e] : mono) {
      if (v != "eps")
        throw std::invalid_argument("qzeta: unsubstituted symbolic variable '" + v + "'");
      t *= QSeries::one_minus_q(M).pow(e);
    }
    r += t;
  }
  return r;
}

inline QSeries qzeta(const NcPoly<Rational>& x, int M) {
  QSeries acc(M);
  for (const auto& [w, c] : x.terms()) acc += QSeries::constant(c, M) * qzeta(w, M);
  return acc;
}
inline QSeries qzeta(const NcPoly<PolyScalar>& x, int M) {
  QSeries acc(M);
  for (const auto& [w, c] : x.terms()) acc += eps_to_qseries(c, M) * qzeta(w, M);
  return acc;
}

// Star value through the deformed Sigma: coefficients pick up powers of eps,
// read back as 1-q.
inline QSeries qzeta_star(const Word& w, int M) {
  Alphabet<PolyScalar> A = Alphabet<PolyScalar>::q_deformed(PolyScalar::var("eps"));
  return qzeta(sigma(A, NcPoly<PolyScalar>::term(w, A.unit())), M);
}
inline QSeries qzeta_star(const NcPoly<PolyScalar>& x, int M) {
  Alphabet<PolyScalar> A = Alphabet<PolyScalar>::q_deformed(PolyScalar::var("eps"));
  return qzeta(sigma(A, x), M);
}

namespace detail {

// Truncated nested sum with double terms.  Depth passes over a cutoff-sized
// prefix-sum array; tail error is of order cutoff^(1-k_1).
inline double zeta_sum(const Word& w, long cutoff, bool odd_only) {
  if (cutoff < 1) throw std::invalid_argument("mzv: cutoff must be positive");
  if (w.empty()) return 1.0;
  check_z_indexed(w, "mzv");
  if (w.first().i < 2)
    throw std::invalid_argument("mzv: leading exponent must be at least 2, got " +
                                w.first().str(false));
  std::vector<double> g(static_cast<size_t>(cutoff) + 1, 1.0);
  for (size_t pos = w.length(); pos-- > 0;) {
    const double k = static_cast<double>(w[pos].i);
    std::vector<double> next(static_cast<size_t>(cutoff) + 1, 0.0);
    double running = 0.0;
    for (long m = 1; m <= cutoff; ++m) {
      if (!odd_only || m % 2 == 1)
        running += std::pow(static_cast<double>(m), -k) * g[m - 1];
      next[m] = running;
    }
    g = std::move(next);
  }
  return g[cutoff];
}

} // namespace detail

inline double mzv(const Word& w, long cutoff) {
  return detail::zeta_sum(w, cutoff, false);
}
inline double mzv(const NcPoly<Rational>& x, long cutoff) {
  double acc = 0.0;
  for (const auto& [w, c] : x.terms()) acc += c.to_double() * mzv(w, cutoff);
  return acc;
}
inline double tval(const Word& w, long cutoff) {
  return detail::zeta_sum(w, cutoff, true);
}
inline double tval(const NcPoly<Rational>& x, long cutoff) {
  double acc = 0.0;
  for (const auto& [w, c] : x.terms()) acc += c.to_double() * tval(w, cutoff);
  return acc;
}

// Sigma^r of one word with r symbolic, coefficients then bound to a rational.
inline NcPoly<Rational> interp_expand(const Rational& r, const Word& w) {
  Alphabet<PolyScalar> A = Alphabet<PolyScalar>::z(PolyScalar(1));
  NcPoly<PolyScalar> s =
      sigma_power(A, PolyScalar::var("r"), NcPoly<PolyScalar>::term(w, A.unit()));
  const std::map<std::string, Rational> bind{{"r", r}};
  NcPoly<Rational> out;
  for (const auto& [u, c] : s.terms()) out.add_term(u, c.substitute(bind));
  return out;
}

inline double mzv_star(const Word& w, long cutoff) {
  return mzv(interp_expand(Rational(1), w), cutoff);
}
inline double mzv_interp(const Rational& r, const Word& w, long cutoff) {
  return mzv(interp_expand(r, w), cutoff);
}
inline double tval_star(const Word& w, long cutoff) {
  return tval(interp_expand(Rational(1), w), cutoff);
}
inline double tval_interp(const Rational& r, const Word& w, long cutoff) {
  return tval(interp_expand(r, w), cutoff);
}

// Bind every coefficient of a symbolic polynomial to a plain rational; used
// before numeric evaluation.
inline NcPoly<Rational> require_rational(const NcPoly<PolyScalar>& x) {
  NcPoly<Rational> out;
  for (const auto& [w, c] : x.terms()) {
    if (!c.is_constant())
      throw std::invalid_argument("evaluator: unsubstituted symbolic coefficient '" +
                                  c.str() + "'");
    out.add_term(w, c.constant_value());
  }
  return out;
}

// Nested polylogarithm at r-th roots of unity: index m at letter (i,j)
// contributes omega^{mj}/m^i with omega = exp(2*pi*I/r).
inline std::complex<double> polylog(const Word& w, std::uint32_t r, long cutoff) {
  if (r < 2) throw std::invalid_argument("polylog: root order must be >= 2");
  if (cutoff < 1) throw std::invalid_argument("polylog: cutoff must be positive");
  if (w.empty()) return 1.0;
  for (const Letter& l : w.letters())
    if (l.i < 1 || l.j >= r)
      throw std::invalid_argument("polylog: letter " + l.str(true) +
                                  " not in the order-" + std::to_string(r) +
                                  " alphabet");
  if (w.first().i == 1 && w.first().j == 0)
    throw std::invalid_argument("polylog: leading letter z_{1,0} diverges");
  constexpr double pi = 3.14159265358979323846;
  std::vector<std::complex<double>> roots(r);
  for (std::uint32_t t = 0; t < r; ++t)
    roots[t] = std::polar(1.0, 2.0 * pi * t / static_cast<double>(r));
  std::vector<std::complex<double>> g(static_cast<size_t>(cutoff) + 1, 1.0);
  for (size_t pos = w.length(); pos-- > 0;) {
    const double k = static_cast<double>(w[pos].i);
    const std::uint32_t j = w[pos].j;
    std::vector<std::complex<double>> next(static_cast<size_t>(cutoff) + 1, 0.0);
    std::complex<double> running = 0.0;
    for (long m = 1; m <= cutoff; ++m) {
      const std::uint32_t e =
          static_cast<std::uint32_t>((static_cast<unsigned long long>(m % r) * j) % r);
      running += roots[e] * std::pow(static_cast<double>(m), -k) * g[m - 1];
      next[m] = running;
    }
    g = std::move(next);
  }
  return g[cutoff];
}

inline std::complex<double> polylog(const NcPoly<Rational>& x, std::uint32_t r,
                                    long cutoff) {
  std::complex<double> acc = 0.0;
  for (const auto& [w, c] : x.terms()) acc += c.to_double() * polylog(w, r, cutoff);
  return acc;
}

inline std::complex<double> polylog_star(const Word& w, std::uint32_t r, long cutoff) {
  Alphabet<Rational> A = Alphabet<Rational>::euler(r);
  return polylog(sigma(A, NcPoly<Rational>::term(w, Rational(1))), r, cutoff);
}

namespace detail {

template <class F>
void compositions_into(long total, long parts, long first_min, std::vector<Letter>& acc,
                       F&& emit) {
  if (parts == 1) {
    if (total >= first_min) {
      acc.push_back(Letter{static_cast<std::uint32_t>(total), 0});
      emit(acc);
      acc.pop_back();
    }
    return;
  }
  for (long i = first_min; total - i >= parts - 1; ++i) {
    acc.push_back(Letter{static_cast<std::uint32_t>(i), 0});
    compositions_into(total - i, parts - 1, 1, acc, emit);
    acc.pop_back();
  }
}

} // namespace detail

// S(k,l): every word z_{i_1}..z_{i_l} with i_1 >= 2, i_t >= 1 and total
// exponent k, each with unit coefficient.
template <class K>
NcPoly<K> sum_words_in(long k, long l, const K& unit) {
  if (l < 1 || l > k - 1)
    throw std::out_of_range("sum_words: need 1 <= l <= k-1");
  NcPoly<K> r;
  std::vector<Letter> acc;
  detail::compositions_into(k, l, 2, acc, [&](const std::vector<Letter>& ls) {
    r.add_term(Word(ls), unit);
  });
  return r;
}
inline NcPoly<Rational> sum_words(long k, long l) {
  return sum_words_in<Rational>(k, l, Rational(1));
}

// e(2n,k): sum of z_{2i_1}..z_{2i_k} over compositions (i_1..i_k) of n.
template <class K>
NcPoly<K> even_comp_sum_in(long n, long k, const K& unit) {
  if (k < 1 || k > n)
    throw std::out_of_range("even_comp_sum: need 1 <= k <= n");
  NcPoly<K> r;
  std::vector<Letter> acc;
  detail::compositions_into(n, k, 1, acc, [&](const std::vector<Letter>& ls) {
    std::vector<Letter> doubled;
    doubled.reserve(ls.size());
    for (const Letter& l : ls) doubled.push_back(Letter{2 * l.i, 0});
    r.add_term(Word(doubled), unit);
  });
  return r;
}
inline NcPoly<Rational> even_comp_sum(long n, long k) {
  return even_comp_sum_in<Rational>(n, k, Rational(1));
}

} // namespace qshuffle
