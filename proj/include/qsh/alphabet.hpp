#pragma once

#include "qsh/letter.hpp"
#include "qsh/ring.hpp"
#include "qsh/word.hpp"

#include <map>
#include <optional>
#include <span>
#include <stdexcept>

namespace qshuffle {

// Element of the letter span kA: finitely supported Letter -> coefficient.
template <class K> class LinComb {
public:
  LinComb() = default;

  static LinComb single(const Letter& l, K c) {
    LinComb x;
    x.add_term(l, std::move(c));
    return x;
  }

  void add_term(const Letter& l, const K& c) {
    if (RingTraits<K>::is_zero(c)) return;
    auto it = t_.find(l);
    if (it == t_.end()) {
      t_.emplace(l, c);
    } else {
      it->second += c;
      if (RingTraits<K>::is_zero(it->second)) t_.erase(it);
    }
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [l, c] : o.t_) add_term(l, c);
    return *this;
  }
  LinComb scaled(const K& c) const {
    LinComb r;
    for (const auto& [l, v] : t_) r.add_term(l, v * c);
    return r;
  }

  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const std::map<Letter, K>& terms() const { return t_; }

  friend bool operator==(const LinComb& a, const LinComb& b) { return a.t_ == b.t_; }

private:
  std::map<Letter, K> t_;
};

enum class AlphabetKind { Z, Q, Euler, Zero };

// An alphabet couples the letter family with its diamond rule and a unit
// sample of the coefficient ring (the sample fixes context such as the
// QSeries truncation order).  Diamond is commutative by construction;
// associativity is covered by the test suite.
template <class K> class Alphabet {
public:
  static Alphabet z(K unit = RingTraits<K>::one()) {
    return Alphabet(AlphabetKind::Z, 0, std::move(unit), std::nullopt);
  }
  static Alphabet zero(K unit = RingTraits<K>::one()) {
    return Alphabet(AlphabetKind::Zero, 0, std::move(unit), std::nullopt);
  }
  static Alphabet euler(std::uint32_t r, K unit = RingTraits<K>::one()) {
    if (r < 2) throw std::invalid_argument("alphabet: euler modulus must be >= 2");
    return Alphabet(AlphabetKind::Euler, r, std::move(unit), std::nullopt);
  }
  // z_i ◊ z_j = z_{i+j} + eps·z_{i+j-1}
  static Alphabet q_deformed(K eps, K unit = RingTraits<K>::one()) {
    return Alphabet(AlphabetKind::Q, 0, std::move(unit), std::move(eps));
  }

  AlphabetKind kind() const { return kind_; }
  std::uint32_t modulus() const { return r_; }
  bool euler_pairs() const { return kind_ == AlphabetKind::Euler; }
  const K& unit() const { return unit_; }
  K scalar(const Rational& r) const { return RingTraits<K>::embed(unit_, r); }

  bool valid(const Letter& l) const {
    if (l.i < 1) return false;
    if (kind_ == AlphabetKind::Euler) return l.j < r_;
    return l.j == 0;
  }
  void check(const Letter& l) const {
    if (!valid(l))
      throw std::invalid_argument("alphabet: letter " + l.str(euler_pairs()) +
                                  " not in this alphabet");
  }
  void check(const Word& w) const {
    for (const auto& l : w.letters()) check(l);
  }

  LinComb<K> diamond(const Letter& a, const Letter& b) const {
    check(a);
    check(b);
    LinComb<K> r;
    switch (kind_) {
      case AlphabetKind::Zero:
        break;
      case AlphabetKind::Z:
        r.add_term(Letter{a.i + b.i, 0}, unit_);
        break;
      case AlphabetKind::Q:
        r.add_term(Letter{a.i + b.i, 0}, unit_);
        r.add_term(Letter{a.i + b.i - 1, 0}, *eps_);
        break;
      case AlphabetKind::Euler:
        r.add_term(Letter{a.i + b.i, (a.j + b.j) % r_}, unit_);
        break;
    }
    return r;
  }

  LinComb<K> diamond(const LinComb<K>& x, const LinComb<K>& y) const {
    LinComb<K> r;
    for (const auto& [a, ca] : x.terms())
      for (const auto& [b, cb] : y.terms()) {
        LinComb<K> d = diamond(a, b);
        for (const auto& [l, c] : d.terms()) r.add_term(l, c * ca * cb);
      }
    return r;
  }

  // Left fold a_1 ◊ a_2 ◊ ... ◊ a_n over a nonempty letter sequence.
  LinComb<K> diamond_fold(std::span<const Letter> ls) const {
    if (ls.empty()) throw std::invalid_argument("alphabet: diamond fold of empty sequence");
    check(ls[0]);
    LinComb<K> acc = LinComb<K>::single(ls[0], unit_);
    for (size_t k = 1; k < ls.size(); ++k)
      acc = diamond(acc, LinComb<K>::single(ls[k], unit_));
    return acc;
  }

private:
  Alphabet(AlphabetKind k, std::uint32_t r, K unit, std::optional<K> eps)
      : kind_(k), r_(r), unit_(std::move(unit)), eps_(std::move(eps)) {}

  AlphabetKind kind_;
  std::uint32_t r_;
  K unit_;
  std::optional<K> eps_;
};

} // namespace qshuffle
