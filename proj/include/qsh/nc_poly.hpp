#pragma once

#include "qsh/alphabet.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qshuffle {

// Element of the noncommutative polynomial space on words.  Terms are kept in
// canonical order (length, then lexicographic) with no zero coefficients.
template <class K> class NcPoly {
public:
  NcPoly() = default;

  static NcPoly term(const Word& w, K c) {
    NcPoly x;
    x.add_term(w, c);
    return x;
  }
  static NcPoly unit(const K& one) { return term(Word{}, one); }
  static NcPoly from_lincomb(const LinComb<K>& x) {
    NcPoly r;
    for (const auto& [l, c] : x.terms()) r.add_term(Word{l}, c);
    return r;
  }

  void add_term(const Word& w, const K& c) {
    if (RingTraits<K>::is_zero(c)) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
      t_.emplace(w, c);
    } else {
      it->second += c;
      if (RingTraits<K>::is_zero(it->second)) t_.erase(it);
    }
  }

  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const std::map<Word, K, WordLess>& terms() const { return t_; }

  // Zero if the word is absent; needs a sample to shape the zero.
  K coeff_or(const Word& w, const K& sample) const {
    auto it = t_.find(w);
    if (it != t_.end()) return it->second;
    K z = sample;
    z -= sample;
    return z;
  }

  size_t max_length() const {
    size_t m = 0;
    for (const auto& [w, c] : t_) m = std::max(m, w.length());
    return m;
  }

  NcPoly operator-() const {
    NcPoly r;
    for (const auto& [w, c] : t_) r.t_.emplace(w, -c);
    return r;
  }

  NcPoly& operator+=(const NcPoly& o) {
    for (const auto& [w, c] : o.t_) add_term(w, c);
    return *this;
  }
  NcPoly& operator-=(const NcPoly& o) { return *this += -o; }

  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }

  NcPoly scaled(const K& c) const {
    NcPoly r;
    for (const auto& [w, v] : t_) r.add_term(w, v * c);
    return r;
  }
  NcPoly scaled_rat(const Rational& c) const {
    NcPoly r;
    for (const auto& [w, v] : t_) r.add_term(w, v * RingTraits<K>::embed(v, c));
    return r;
  }
  NcPoly div_rat(const Rational& c) const {
    NcPoly r;
    for (const auto& [w, v] : t_) r.add_term(w, RingTraits<K>::div_rat(v, c));
    return r;
  }

  friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

private:
  std::map<Word, K, WordLess> t_;
};

template <class K> NcPoly<K> poly_one(const Alphabet<K>& A) {
  return NcPoly<K>::unit(A.unit());
}

template <class K> void check_words(const Alphabet<K>& A, const NcPoly<K>& x) {
  for (const auto& [w, c] : x.terms()) A.check(w);
}

template <class K> NcPoly<K> prepend_letter(const Letter& a, const NcPoly<K>& x) {
  NcPoly<K> r;
  for (const auto& [w, c] : x.terms()) r.add_term(w.prepended(a), c);
  return r;
}

template <class K> NcPoly<K> concat(const NcPoly<K>& u, const NcPoly<K>& v) {
  NcPoly<K> r;
  for (const auto& [wu, cu] : u.terms())
    for (const auto& [wv, cv] : v.terms()) r.add_term(concat(wu, wv), cu * cv);
  return r;
}

namespace detail {

// Shared recursion for the two quasi-shuffle products and the plain shuffle:
//   au X bv = a(u X bv) + b(au X v) + sign·(a◊b)(u X v)
// with sign +1, -1, or the diamond term dropped entirely.  Memoized on
// suffix index pairs; arguments of recursive calls are always suffixes.
enum class DiamondTerm { Plus, Minus, Skip };

template <class K>
NcPoly<K> shuffle_words(const Alphabet<K>& A, const Word& u, const Word& v,
                        DiamondTerm dt) {
  const size_t nu = u.length(), nv = v.length();
  std::vector<std::optional<NcPoly<K>>> memo((nu + 1) * (nv + 1));
  auto rec = [&](auto&& self, size_t i, size_t j) -> const NcPoly<K>& {
    auto& slot = memo[i * (nv + 1) + j];
    if (slot) return *slot;
    NcPoly<K> r;
    if (i == nu) {
      r = NcPoly<K>::term(v.suffix_from(j), A.unit());
    } else if (j == nv) {
      r = NcPoly<K>::term(u.suffix_from(i), A.unit());
    } else {
      const Letter& a = u[i];
      const Letter& b = v[j];
      r = prepend_letter(a, self(self, i + 1, j));
      r += prepend_letter(b, self(self, i, j + 1));
      if (dt != DiamondTerm::Skip) {
        LinComb<K> d = A.diamond(a, b);
        if (!d.is_zero()) {
          const NcPoly<K>& rest = self(self, i + 1, j + 1);
          for (const auto& [l, c] : d.terms()) {
            NcPoly<K> t = prepend_letter(l, rest).scaled(c);
            if (dt == DiamondTerm::Minus) r -= t;
            else r += t;
          }
        }
      }
    }
    slot = std::move(r);
    return *slot;
  };
  return rec(rec, 0, 0);
}

template <class K>
NcPoly<K> bilinear_shuffle(const Alphabet<K>& A, const NcPoly<K>& u, const NcPoly<K>& v,
                           DiamondTerm dt) {
  check_words(A, u);
  check_words(A, v);
  NcPoly<K> r;
  for (const auto& [wu, cu] : u.terms())
    for (const auto& [wv, cv] : v.terms())
      r += shuffle_words(A, wu, wv, dt).scaled(cu * cv);
  return r;
}

} // namespace detail

// The product *.
template <class K>
NcPoly<K> qsh(const Alphabet<K>& A, const NcPoly<K>& u, const NcPoly<K>& v) {
  return detail::bilinear_shuffle(A, u, v, detail::DiamondTerm::Plus);
}

// The product with the fused term negated.
template <class K>
NcPoly<K> qsh_star(const Alphabet<K>& A, const NcPoly<K>& u, const NcPoly<K>& v) {
  return detail::bilinear_shuffle(A, u, v, detail::DiamondTerm::Minus);
}

// Plain shuffle: interleavings only, no fused term regardless of alphabet.
template <class K>
NcPoly<K> shuffle(const Alphabet<K>& A, const NcPoly<K>& u, const NcPoly<K>& v) {
  return detail::bilinear_shuffle(A, u, v, detail::DiamondTerm::Skip);
}

// Extended diamond on words: (w'a) ◊ (bv') = w'(a◊b)v', empty word neutral.
template <class K>
NcPoly<K> diamond_words(const Alphabet<K>& A, const Word& u, const Word& v) {
  if (u.empty()) return NcPoly<K>::term(v, A.unit());
  if (v.empty()) return NcPoly<K>::term(u, A.unit());
  Word left = u.prefix(u.length() - 1);
  Word right = v.suffix_from(1);
  NcPoly<K> r;
  LinComb<K> d = A.diamond(u.last(), v.first());
  for (const auto& [l, c] : d.terms()) r.add_term(concat(left.appended(l), right), c);
  return r;
}

template <class K>
NcPoly<K> diamond_extend(const Alphabet<K>& A, const NcPoly<K>& u, const NcPoly<K>& v) {
  check_words(A, u);
  check_words(A, v);
  NcPoly<K> r;
  for (const auto& [wu, cu] : u.terms())
    for (const auto& [wv, cv] : v.terms())
      r += diamond_words(A, wu, wv).scaled(cu * cv);
  return r;
}

// Product selector shared by the tensor and lambda-series layers.
enum class Mode { Concat, QuasiShuffle, QuasiShuffleStar, Shuffle, Diamond };

template <class K>
NcPoly<K> mul(const Alphabet<K>& A, Mode m, const NcPoly<K>& u, const NcPoly<K>& v) {
  switch (m) {
    case Mode::Concat: return concat(u, v);
    case Mode::QuasiShuffle: return qsh(A, u, v);
    case Mode::QuasiShuffleStar: return qsh_star(A, u, v);
    case Mode::Shuffle: return shuffle(A, u, v);
    case Mode::Diamond: return diamond_extend(A, u, v);
  }
  throw std::logic_error("mul: bad mode");
}

} // namespace qshuffle
