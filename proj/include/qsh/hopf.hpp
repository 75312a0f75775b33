#pragma once

#include "qsh/word_maps.hpp"

#include <map>
#include <string>
#include <utility>

namespace qshuffle {

struct WordPairLess {
  bool operator()(const std::pair<Word, Word>& a, const std::pair<Word, Word>& b) const {
    WordLess less;
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return less(a.second, b.second);
  }
};

// Element of the two-fold tensor space over words.
template <class K> class Tensor {
public:
  Tensor() = default;

  static Tensor term(const Word& u, const Word& v, K c) {
    Tensor t;
    t.add_term(u, v, c);
    return t;
  }

  void add_term(const Word& u, const Word& v, const K& c) {
    if (RingTraits<K>::is_zero(c)) return;
    auto key = std::make_pair(u, v);
    auto it = t_.find(key);
    if (it == t_.end()) {
      t_.emplace(std::move(key), c);
    } else {
      it->second += c;
      if (RingTraits<K>::is_zero(it->second)) t_.erase(it);
    }
  }

  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const std::map<std::pair<Word, Word>, K, WordPairLess>& terms() const { return t_; }

  Tensor operator-() const {
    Tensor r;
    for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
    return r;
  }
  Tensor& operator+=(const Tensor& o) {
    for (const auto& [k, c] : o.t_) add_term(k.first, k.second, c);
    return *this;
  }
  Tensor& operator-=(const Tensor& o) { return *this += -o; }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }

  Tensor scaled(const K& c) const {
    Tensor r;
    for (const auto& [k, v] : t_) r.add_term(k.first, k.second, v * c);
    return r;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

private:
  std::map<std::pair<Word, Word>, K, WordPairLess> t_;
};

// Outer product x (x) y.
template <class K>
Tensor<K> tensor_product(const NcPoly<K>& x, const NcPoly<K>& y) {
  Tensor<K> r;
  for (const auto& [u, cu] : x.terms())
    for (const auto& [v, cv] : y.terms()) r.add_term(u, v, cu * cv);
  return r;
}

// Deconcatenation coproduct: every two-part split of each word.
template <class K> Tensor<K> deconcat(const NcPoly<K>& x) {
  Tensor<K> r;
  for (const auto& [w, c] : x.terms())
    for (size_t k = 0; k <= w.length(); ++k)
      r.add_term(w.prefix(k), w.suffix_from(k), c);
  return r;
}

// Reduced coproduct: proper splits only; kills the empty word and letters.
template <class K> Tensor<K> reduced_deconcat(const NcPoly<K>& x) {
  Tensor<K> r;
  for (const auto& [w, c] : x.terms())
    for (size_t k = 1; k + 1 <= w.length(); ++k)
      r.add_term(w.prefix(k), w.suffix_from(k), c);
  return r;
}

// (M1 (x) M2) applied to a tensor, expanded back into the tensor space.
template <class K>
Tensor<K> apply_tensor(const WordMap<K>& m1, const WordMap<K>& m2, const Tensor<K>& t) {
  Tensor<K> r;
  for (const auto& [k, c] : t.terms()) {
    NcPoly<K> a = m1(k.first), b = m2(k.second);
    r += tensor_product(a, b).scaled(c);
  }
  return r;
}

// Componentwise product on tensors, used for the bialgebra law.
template <class K>
Tensor<K> tensor_mul(const Alphabet<K>& A, Mode m, const Tensor<K>& x, const Tensor<K>& y) {
  Tensor<K> r;
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      NcPoly<K> left = mul(A, m, NcPoly<K>::term(kx.first, A.unit()),
                           NcPoly<K>::term(ky.first, A.unit()));
      NcPoly<K> right = mul(A, m, NcPoly<K>::term(kx.second, A.unit()),
                            NcPoly<K>::term(ky.second, A.unit()));
      r += tensor_product(left, right).scaled(cx * cy);
    }
  return r;
}

// Convolution unit: w -> [w empty] 1.
template <class K> WordMap<K> eta_eps(K unit) {
  return WordMap<K>([unit](const Word& w) {
    if (w.empty()) return NcPoly<K>::unit(unit);
    return NcPoly<K>();
  });
}

// Convolution (L1 . L2)(w) = sum over splits w = uv of L1(u)L2(v),
// multiplied by concatenation.
template <class K>
WordMap<K> convolve(const WordMap<K>& l1, const WordMap<K>& l2) {
  return WordMap<K>([l1, l2](const Word& w) {
    NcPoly<K> r;
    for (size_t k = 0; k <= w.length(); ++k)
      r += concat(l1(w.prefix(k)), l2(w.suffix_from(k)));
    return r;
  });
}

// Convolutional inverse by length induction,
//   M(1) = 1,  M(w) = -sum_{uv=w, u!=w} M(u) L(v).
// Requires L(1) = 1.  The prefix table is rebuilt per invocation.
template <class K>
WordMap<K> conv_inverse(const WordMap<K>& l, const K& unit) {
  if (l(Word{}) != NcPoly<K>::unit(unit))
    throw std::invalid_argument("conv inverse: map must send the empty word to 1");
  return WordMap<K>([l, unit](const Word& w) {
    std::vector<NcPoly<K>> m(w.length() + 1);  // m[k] = inverse on prefix(k)
    m[0] = NcPoly<K>::unit(unit);
    for (size_t k = 1; k <= w.length(); ++k) {
      NcPoly<K> acc;
      Word pre = w.prefix(k);
      for (size_t u = 0; u < k; ++u)
        acc += concat(m[u], l(pre.suffix_from(u)));
      m[k] = -acc;
    }
    return m[w.length()];
  });
}

// C_f(a_1..a_n) = c_n a_1 ◊ ... ◊ a_n, zero on the empty word.  Values lie in
// the letter span, so they are primitive for the deconcatenation coproduct.
template <class K>
WordMap<K> contraction_cf(const Alphabet<K>& A, const FormalSeries<K>& f) {
  return WordMap<K>([A, f](const Word& w) {
    if (w.empty()) return NcPoly<K>();
    if (static_cast<int>(w.length()) > f.order())
      throw std::invalid_argument("contraction: word longer than series truncation");
    const K& cn = f.coeff(static_cast<int>(w.length()));
    return NcPoly<K>::from_lincomb(A.diamond_fold(w.letters())).scaled(cn);
  });
}

struct InversePairReport {
  bool ok = true;
  std::string witness;  // first failing word and law, empty when ok
};

namespace detail {

// Enumerate all words over `letters` with length <= maxlen, shortest first.
inline void for_each_word(const std::vector<Letter>& letters, size_t maxlen,
                          const std::function<bool(const Word&)>& visit) {
  std::vector<Word> frontier{Word{}};
  for (size_t len = 0; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      if (!visit(w)) return;
      if (len < maxlen)
        for (const Letter& l : letters) next.push_back(w.appended(l));
    }
    frontier = std::move(next);
  }
}

} // namespace detail

// Checks the expansion/contraction laws on every word up to maxlen over the
// given letter sample: E(1)=1, C(1)=0, C(w) primitive, E a coalgebra map,
// and the geometric-sum relation E = unit + C + C.C + ...  Reports the first
// counterexample.
template <class K>
InversePairReport is_inverse_pair(const Alphabet<K>& A, const WordMap<K>& e,
                                  const WordMap<K>& c,
                                  const std::vector<Letter>& letters, size_t maxlen) {
  InversePairReport rep;
  if (e(Word{}) != poly_one(A)) {
    rep.ok = false;
    rep.witness = "E(1) != 1";
    return rep;
  }
  if (!c(Word{}).is_zero()) {
    rep.ok = false;
    rep.witness = "C(1) != 0";
    return rep;
  }
  detail::for_each_word(letters, maxlen, [&](const Word& w) {
    NcPoly<K> cw = c(w);
    if (!reduced_deconcat(cw).is_zero()) {
      rep.ok = false;
      rep.witness = "C(" + w.str(A.euler_pairs()) + ") is not primitive";
      return false;
    }
    if (deconcat(e(w)) != apply_tensor(e, e, deconcat(NcPoly<K>::term(w, A.unit())))) {
      rep.ok = false;
      rep.witness = "E is not a coalgebra map at " + w.str(A.euler_pairs());
      return false;
    }
    // Geometric sum, by suffix induction: G(1)=1, G(w) = sum C(u)G(v) over
    // proper prefixes u != 1.
    std::vector<NcPoly<K>> g(w.length() + 1);
    g[w.length()] = poly_one(A);  // suffix starting at the end: empty word
    for (size_t s = w.length(); s-- > 0;) {
      NcPoly<K> acc;
      for (size_t t = s + 1; t <= w.length(); ++t)
        acc += concat(c(w.sub(s, t - s)), g[t]);
      g[s] = std::move(acc);
    }
    NcPoly<K> expected = g[0];  // equals 1 on the empty word
    if (e(w) != expected) {
      rep.ok = false;
      rep.witness = "geometric sum of C differs from E at " + w.str(A.euler_pairs());
      return false;
    }
    return true;
  });
  return rep;
}

enum class AntipodeKind { Star, StarStar, Diamond };

// S_* = Sigma T R, S_star = T Sigma R, S_diamond = -Sigma^{-1}.
template <class K>
NcPoly<K> antipode(const Alphabet<K>& A, AntipodeKind which, const NcPoly<K>& x) {
  switch (which) {
    case AntipodeKind::Star: return sigma(A, length_sign(word_reverse(x)));
    case AntipodeKind::StarStar: return length_sign(sigma(A, word_reverse(x)));
    case AntipodeKind::Diamond: return -sigma_inverse(A, x);
  }
  throw std::logic_error("antipode: bad kind");
}

// D = (extended diamond) after the reduced coproduct:
// D(a_1..a_n) = sum_i a_1..a_i ◊ a_{i+1}..a_n.
template <class K>
NcPoly<K> derivation_d(const Alphabet<K>& A, const NcPoly<K>& x) {
  check_words(A, x);
  NcPoly<K> r;
  for (const auto& [w, cw] : x.terms()) {
    for (size_t i = 1; i + 1 <= w.length(); ++i) {
      LinComb<K> fused = A.diamond(w[i - 1], w[i]);
      Word left = w.prefix(i - 1);
      Word right = w.suffix_from(i + 1);
      for (const auto& [l, c] : fused.terms())
        r.add_term(concat(left.appended(l), right), c * cw);
    }
  }
  return r;
}

// e^{rho D}; terminates because D drops word length by one each time.
template <class K>
NcPoly<K> exp_rd(const Alphabet<K>& A, const K& rho, const NcPoly<K>& x) {
  NcPoly<K> total = x, power = x;
  K rho_k = RingTraits<K>::embed(A.unit(), Rational(1));
  Rational kfact(1);
  for (int k = 1; !power.is_zero(); ++k) {
    power = derivation_d(A, power);
    if (power.is_zero()) break;
    rho_k = rho_k * rho;
    kfact *= Rational(k);
    total += power.scaled(RingTraits<K>::div_rat(rho_k, kfact));
  }
  return total;
}

} // namespace qshuffle
