#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace qshuffle {

// One alphabet symbol.  Plain families use z_i (second index 0); the Euler
// family uses pairs z_{i,j} with j reduced mod r by the alphabet.  The
// encoding is alphabet-independent so words can be compared and stored
// uniformly.
struct Letter {
  std::uint32_t i = 1;
  std::uint32_t j = 0;

  friend auto operator<=>(const Letter&, const Letter&) = default;

  std::string str(bool with_pair) const {
    std::string s = "z" + std::to_string(i);
    if (with_pair) s += "," + std::to_string(j);
    return s;
  }
};

inline Letter zl(std::uint32_t i) { return Letter{i, 0}; }
inline Letter zl(std::uint32_t i, std::uint32_t j) { return Letter{i, j}; }

} // namespace qshuffle
