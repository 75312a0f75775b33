#pragma once

#include "qsh/composition.hpp"
#include "qsh/formal_series.hpp"

#include <functional>
#include <optional>

namespace qshuffle {

// Linear map on the word space, stored as a rule on words and extended
// linearly.  Values are shareable and applying one is pure.
template <class K> class WordMap {
public:
  using Rule = std::function<NcPoly<K>(const Word&)>;

  explicit WordMap(Rule rule) : rule_(std::move(rule)) {}

  static WordMap identity(K unit) {
    return WordMap([unit](const Word& w) { return NcPoly<K>::term(w, unit); });
  }

  NcPoly<K> operator()(const Word& w) const { return rule_(w); }

  NcPoly<K> operator()(const NcPoly<K>& x) const {
    NcPoly<K> r;
    for (const auto& [w, c] : x.terms()) r += rule_(w).scaled(c);
    return r;
  }

private:
  Rule rule_;
};

template <class K>
WordMap<K> compose_maps(const WordMap<K>& outer, const WordMap<K>& inner) {
  return WordMap<K>([outer, inner](const Word& w) { return outer(inner(w)); });
}

// T: w -> (-1)^length(w) w.  Involution; needs no ring context.
template <class K> NcPoly<K> length_sign(const NcPoly<K>& x) {
  NcPoly<K> r;
  for (const auto& [w, c] : x.terms()) r.add_term(w, w.length() % 2 ? -c : c);
  return r;
}

// R: reverse letter order of every word.
template <class K> NcPoly<K> word_reverse(const NcPoly<K>& x) {
  NcPoly<K> r;
  for (const auto& [w, c] : x.terms()) r.add_term(w.reversed(), c);
  return r;
}

// The series-induced map on one word, by the head recursion
//   psi_f(a_1..a_n) = sum_k c_k (a_1 ◊ .. ◊ a_k) psi_f(a_{k+1}..a_n),
// computed bottom-up over suffixes with an incremental prefix fold.
template <class K>
NcPoly<K> psi_word(const Alphabet<K>& A, const FormalSeries<K>& f, const Word& w) {
  const size_t n = w.length();
  if (static_cast<int>(n) > f.order())
    throw std::invalid_argument("psi: word length " + std::to_string(n) +
                                " exceeds series truncation " +
                                std::to_string(f.order()));
  A.check(w);
  std::vector<NcPoly<K>> suffix(n + 1);
  suffix[n] = poly_one(A);
  for (size_t s = n; s-- > 0;) {
    NcPoly<K> acc;
    LinComb<K> fold = LinComb<K>::single(w[s], A.unit());
    for (size_t k = 1; s + k <= n; ++k) {
      if (k > 1) fold = A.diamond(fold, LinComb<K>::single(w[s + k - 1], A.unit()));
      const K& ck = f.coeff(static_cast<int>(k));
      if (!RingTraits<K>::is_zero(ck))
        acc += concat(NcPoly<K>::from_lincomb(fold).scaled(ck), suffix[s + k]);
    }
    suffix[s] = std::move(acc);
  }
  return suffix[0];
}

template <class K>
NcPoly<K> psi(const Alphabet<K>& A, const FormalSeries<K>& f, const NcPoly<K>& x) {
  NcPoly<K> r;
  for (const auto& [w, c] : x.terms()) r += psi_word(A, f, w).scaled(c);
  return r;
}

template <class K> WordMap<K> psi_map(const Alphabet<K>& A, const FormalSeries<K>& f) {
  return WordMap<K>([A, f](const Word& w) { return psi_word(A, f, w); });
}

// Brute-force oracle: sum over all compositions I of length(w) of
// c_{i_1}...c_{i_m} I[w].  Independent of the head recursion on purpose.
template <class K>
NcPoly<K> psi_oracle_word(const Alphabet<K>& A, const FormalSeries<K>& f, const Word& w) {
  const int n = static_cast<int>(w.length());
  if (n > f.order())
    throw std::invalid_argument("psi oracle: word longer than series truncation");
  if (n == 0) return poly_one(A);
  NcPoly<K> acc;
  for (const Composition& I : compositions(n)) {
    K coeff = RingTraits<K>::embed(A.unit(), Rational(1));
    for (int part : I.parts()) coeff = coeff * f.coeff(part);
    if (RingTraits<K>::is_zero(coeff)) continue;
    acc += bracket_action(A, I, w).scaled(coeff);
  }
  return acc;
}

template <class K>
NcPoly<K> psi_oracle(const Alphabet<K>& A, const FormalSeries<K>& f, const NcPoly<K>& x) {
  NcPoly<K> r;
  for (const auto& [w, c] : x.terms()) r += psi_oracle_word(A, f, w).scaled(c);
  return r;
}

namespace detail {

template <class K> int series_order_for(const NcPoly<K>& x) {
  return std::max<int>(1, static_cast<int>(x.max_length()));
}

} // namespace detail

// Sigma^rho, the one-parameter interpolation; rho may stay symbolic when the
// coefficient ring is polynomial.
template <class K>
NcPoly<K> sigma_power(const Alphabet<K>& A, const K& rho, const NcPoly<K>& x) {
  FormalSeries<K> f = series_geometric(detail::series_order_for(x), rho, A.unit());
  return psi(A, f, x);
}

template <class K> NcPoly<K> sigma(const Alphabet<K>& A, const NcPoly<K>& x) {
  return sigma_power(A, A.scalar(Rational(1)), x);
}

template <class K> NcPoly<K> sigma_inverse(const Alphabet<K>& A, const NcPoly<K>& x) {
  return sigma_power(A, A.scalar(Rational(-1)), x);
}

// H_p; p = 0 is excluded (the series (1+t)^0 - 1 vanishes and kills words).
template <class K>
NcPoly<K> h_power(const Alphabet<K>& A, const K& p, const NcPoly<K>& x) {
  FormalSeries<K> f = series_pow1p(detail::series_order_for(x), p, A.unit());
  return psi(A, f, x);
}

template <class K> NcPoly<K> exp_psi(const Alphabet<K>& A, const NcPoly<K>& x) {
  return psi(A, series_exp(detail::series_order_for(x), A.unit()), x);
}

template <class K> NcPoly<K> log_psi(const Alphabet<K>& A, const NcPoly<K>& x) {
  return psi(A, series_log(detail::series_order_for(x), A.unit()), x);
}

} // namespace qshuffle
