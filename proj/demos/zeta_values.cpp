// Evaluates words as finite, q-deformed, and numeric nested sums.
#include "qsh/evaluators.hpp"
#include "qsh/expr.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>

using namespace qshuffle;

namespace {

constexpr double pi = 3.14159265358979323846;

Word word(std::initializer_list<std::uint32_t> idx) {
  std::vector<Letter> ls;
  for (auto i : idx) ls.push_back(Letter{i, 0});
  return Word(std::move(ls));
}

void numeric(const char* label, double got, double want) {
  std::printf("  %-18s %.9f   (expected %.9f)\n", label, got, want);
}

} // namespace

int main() {
  const Alphabet<Rational> Z = Alphabet<Rational>::z();

  std::printf("finite sums at cutoff 10:\n");
  std::printf("  H(1)        %s\n", harmonic(word({1}), 10).str().c_str());
  std::printf("  H(2,1)      %s\n", harmonic(word({2, 1}), 10).str().c_str());
  std::printf("  H*(2,1)     %s\n", harmonic_star(word({2, 1}), 10).str().c_str());

  // The star value of a word is the plain value of its sigma image.
  NcPoly<Rational> s = sigma(Z, NcPoly<Rational>::term(word({2, 1}), Rational(1)));
  std::printf("  sigma(z2 z1) = %s, H of it = %s\n", expr_str(s).c_str(),
              harmonic(s, 10).str().c_str());

  std::printf("\nsums of 1/(m1..mr) over n >= m1 > .. > mr are Stirling numbers over n!:\n");
  for (long r = 1; r <= 4; ++r)
    std::printf("  n=6, r=%ld: %s = s(7,%ld)/6!\n", r,
                harmonic(Word(std::vector<Letter>(r, Letter{1, 0})), 6).str().c_str(),
                r + 1);

  std::printf("\nq-analogue series mod q^9:\n");
  std::printf("  zq(z2)      %s\n", qzeta(word({2}), 8).str().c_str());
  std::printf("  zq*(z2 z2)  %s\n", qzeta_star(word({2, 2}), 8).str().c_str());

  const long M = 100000;
  std::printf("\nnumeric values at cutoff %ld:\n", M);
  numeric("z(2)", mzv(word({2}), M), pi * pi / 6);
  numeric("z(4)", mzv(word({4}), M), std::pow(pi, 4) / 90);
  numeric("z(3,1)", mzv(word({3, 1}), M), std::pow(pi, 4) / 360);
  numeric("z*(2,1)", mzv_star(word({2, 1}), M), 2 * mzv(word({3}), M));
  numeric("z^1/2(3)", mzv_interp(Rational(1, 2), word({3}), M),
          mzv_star(word({2, 1}), M) / 2);
  numeric("t(2)", tval(word({2}), M), pi * pi / 8);
  numeric("t*(2,2)", tval_star(word({2, 2}), M), 5 * std::pow(pi, 4) / 384);

  // Letters carry a root-of-unity index; (2,1) at order two alternates sign.
  numeric("z(bar 2)", polylog(Word{Letter{2, 1}}, 2, M).real(), -pi * pi / 12);
  numeric("z(bar 1)", polylog(Word{Letter{1, 1}}, 2, 1000000).real(),
          -std::log(2.0));
  return 0;
}
