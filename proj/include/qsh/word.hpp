#pragma once

#include "qsh/letter.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace qshuffle {

// Finite sequence of letters.  The empty word is the algebra unit.
class Word {
public:
  Word() = default;
  Word(std::initializer_list<Letter> ls) : a_(ls) {}
  explicit Word(std::vector<Letter> ls) : a_(std::move(ls)) {}

  size_t length() const { return a_.size(); }
  bool empty() const { return a_.empty(); }
  const Letter& at(size_t k) const { return a_.at(k); }
  const Letter& operator[](size_t k) const { return a_[k]; }
  const std::vector<Letter>& letters() const { return a_; }

  const Letter& first() const {
    if (empty()) throw std::out_of_range("word: first of empty word");
    return a_.front();
  }
  const Letter& last() const {
    if (empty()) throw std::out_of_range("word: last of empty word");
    return a_.back();
  }

  Word sub(size_t from, size_t count) const {
    if (from > a_.size() || from + count > a_.size())
      throw std::out_of_range("word: subword range");
    return Word(std::vector<Letter>(a_.begin() + from, a_.begin() + from + count));
  }
  Word prefix(size_t count) const { return sub(0, count); }
  Word suffix_from(size_t from) const { return sub(from, a_.size() - from); }

  Word prepended(const Letter& l) const {
    std::vector<Letter> v;
    v.reserve(a_.size() + 1);
    v.push_back(l);
    v.insert(v.end(), a_.begin(), a_.end());
    return Word(std::move(v));
  }
  Word appended(const Letter& l) const {
    std::vector<Letter> v = a_;
    v.push_back(l);
    return Word(std::move(v));
  }

  friend Word concat(const Word& u, const Word& v) {
    std::vector<Letter> r = u.a_;
    r.insert(r.end(), v.a_.begin(), v.a_.end());
    return Word(std::move(r));
  }

  Word reversed() const {
    std::vector<Letter> v(a_.rbegin(), a_.rend());
    return Word(std::move(v));
  }

  friend bool operator==(const Word&, const Word&) = default;

  std::string str(bool with_pair) const {
    if (a_.empty()) return "1";
    std::string s;
    for (const auto& l : a_) {
      if (!s.empty()) s += " ";
      s += l.str(with_pair);
    }
    return s;
  }

private:
  std::vector<Letter> a_;
};

// Canonical term order: length first, then lexicographic on letters.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    return std::lexicographical_compare(a.letters().begin(), a.letters().end(),
                                        b.letters().begin(), b.letters().end());
  }
};

} // namespace qshuffle
