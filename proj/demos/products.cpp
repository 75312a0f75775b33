// Tour of the word products and the maps that tie them together.
#include "qsh/expr.hpp"
#include "qsh/hopf.hpp"

#include <cstdio>
#include <initializer_list>

using namespace qshuffle;

namespace {

NcPoly<Rational> word(std::initializer_list<std::uint32_t> idx) {
  std::vector<Letter> ls;
  for (auto i : idx) ls.push_back(Letter{i, 0});
  return NcPoly<Rational>::term(Word(std::move(ls)), Rational(1));
}

void show(const char* label, const NcPoly<Rational>& x) {
  std::printf("  %-14s %s\n", label, expr_str(x).c_str());
}

} // namespace

int main() {
  const Alphabet<Rational> Z = Alphabet<Rational>::z();
  const Alphabet<Rational> zero = Alphabet<Rational>::zero();

  std::printf("products of z2 and z1 over the z alphabet:\n");
  show("z2 * z1", qsh(Z, word({2}), word({1})));
  show("z2 ** z1", qsh_star(Z, word({2}), word({1})));
  show("z2 sh z1", shuffle(Z, word({2}), word({1})));
  show("z2 . z1", concat(word({2}), word({1})));
  show("z2 <> z1", diamond_extend(Z, word({2}), word({1})));

  std::printf("\nthe zero alphabet drops every fusion term:\n");
  show("z2 * z1", qsh(zero, word({2}), word({1})));

  // The deformed rule z_i <> z_j = z_{i+j} + eps z_{i+j-1} threads a symbolic
  // coefficient through every product.
  const Alphabet<PolyScalar> Q =
      Alphabet<PolyScalar>::q_deformed(PolyScalar::var("eps"));
  NcPoly<PolyScalar> q1 = NcPoly<PolyScalar>::term(Word{Letter{1, 0}}, Q.unit());
  std::printf("\ndeformed alphabet:\n");
  std::printf("  z1 * z1        %s\n", expr_str(qsh(Q, q1, q1)).c_str());

  std::printf("\nsigma interchanges the two quasi-shuffle products:\n");
  NcPoly<Rational> u = word({1, 1});
  show("u = z1 z1", u);
  show("sigma u", sigma(Z, u));
  show("sigma^-1 u", sigma_inverse(Z, u));
  show("sigma^1/2 u", sigma_power(Z, Rational(1, 2), u));

  std::printf("\nantipodes of z2 z1:\n");
  show("S*", antipode(Z, AntipodeKind::Star, word({2, 1})));
  show("S**", antipode(Z, AntipodeKind::StarStar, word({2, 1})));
  show("S<>", antipode(Z, AntipodeKind::Diamond, word({2, 1})));

  // D fuses one adjacent pair at a time; exp(rD) recovers sigma^r.
  std::printf("\nthe fusion derivation on z1 z1 z1:\n");
  NcPoly<Rational> x = word({1, 1, 1});
  show("D x", derivation_d(Z, x));
  show("D^2 x", derivation_d(Z, derivation_d(Z, x)));
  show("exp(D) x", exp_rd(Z, Rational(1), x));
  show("sigma x", sigma(Z, x));
  return 0;
}
