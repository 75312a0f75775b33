#pragma once

#include "qsh/nc_poly.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qshuffle {

// Composition of a positive integer: ordered tuple of positive parts.
// Compositions of n biject with subsets of {1..n-1}; the subset lists the
// positions after which the tuple is cut (its "break-set").
class Composition {
public:
  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("composition: empty tuple");
    for (int p : parts_)
      if (p < 1) throw std::invalid_argument("composition: parts must be positive");
  }
  Composition(std::initializer_list<int> parts) : Composition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int length() const { return static_cast<int>(parts_.size()); }

  std::vector<int> breaks() const {
    std::vector<int> b;
    int acc = 0;
    for (size_t k = 0; k + 1 < parts_.size(); ++k) {
      acc += parts_[k];
      b.push_back(acc);
    }
    return b;
  }

  static Composition from_breaks(int n, const std::vector<int>& breaks) {
    std::vector<int> parts;
    int prev = 0;
    for (int b : breaks) {
      parts.push_back(b - prev);
      prev = b;
    }
    parts.push_back(n - prev);
    return Composition(std::move(parts));
  }

  // Break-set complement in {1..n-1}.  Involution; length flips to n+1-m.
  Composition conjugate() const {
    int n = weight();
    std::vector<int> b = breaks(), comp;
    size_t k = 0;
    for (int pos = 1; pos <= n - 1; ++pos) {
      if (k < b.size() && b[k] == pos) ++k;
      else comp.push_back(pos);
    }
    return from_breaks(n, comp);
  }

  friend bool operator==(const Composition&, const Composition&) = default;

  std::string str() const {
    std::string s = "(";
    for (size_t k = 0; k < parts_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(parts_[k]);
    }
    return s + ")";
  }

private:
  std::vector<int> parts_;
};

// All 2^(n-1) compositions of n, in binary-counter order over break-subsets:
// mask bit k set means a cut after position k+1.
inline std::vector<Composition> compositions(int n) {
  if (n < 1) throw std::invalid_argument("compositions: n must be positive");
  if (n > 24) throw std::invalid_argument("compositions: n too large to enumerate");
  std::vector<Composition> out;
  const std::uint32_t limit = std::uint32_t{1} << (n - 1);
  out.reserve(limit);
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::vector<int> breaks;
    for (int k = 0; k < n - 1; ++k)
      if (mask & (std::uint32_t{1} << k)) breaks.push_back(k + 1);
    out.push_back(Composition::from_breaks(n, breaks));
  }
  return out;
}

// I[w]: cut w into blocks of the part sizes, fuse each block with the
// diamond, concatenate the results.
template <class K>
NcPoly<K> bracket_action(const Alphabet<K>& A, const Composition& I, const Word& w) {
  if (I.weight() != static_cast<int>(w.length()))
    throw std::invalid_argument("bracket action: composition weight " +
                                std::to_string(I.weight()) + " != word length " +
                                std::to_string(w.length()));
  A.check(w);
  NcPoly<K> acc = poly_one(A);
  size_t pos = 0;
  for (int part : I.parts()) {
    LinComb<K> block =
        A.diamond_fold(std::span<const Letter>(w.letters().data() + pos, part));
    acc = concat(acc, NcPoly<K>::from_lincomb(block));
    pos += part;
  }
  return acc;
}

// I<w>: split w into consecutive subwords of the part sizes and combine the
// blocks with the extended diamond.
template <class K>
NcPoly<K> angle_action(const Alphabet<K>& A, const Composition& I, const Word& w) {
  if (I.weight() != static_cast<int>(w.length()))
    throw std::invalid_argument("angle action: composition weight mismatch");
  A.check(w);
  NcPoly<K> acc = poly_one(A);
  size_t pos = 0;
  for (int part : I.parts()) {
    NcPoly<K> block = NcPoly<K>::term(w.sub(pos, part), A.unit());
    acc = diamond_extend(A, acc, block);
    pos += part;
  }
  return acc;
}

} // namespace qshuffle
