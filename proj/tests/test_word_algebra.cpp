#include "qsh/nc_poly.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qshuffle;

namespace {

std::mt19937_64 rng(911u);

Word random_word(size_t maxlen, std::uint32_t maxidx, std::uint32_t mod = 0) {
  std::uniform_int_distribution<size_t> len(0, maxlen);
  std::uniform_int_distribution<std::uint32_t> idx(1, maxidx);
  std::vector<Letter> ls;
  size_t n = len(rng);
  for (size_t k = 0; k < n; ++k) {
    std::uint32_t j = 0;
    if (mod) j = std::uniform_int_distribution<std::uint32_t>(0, mod - 1)(rng);
    ls.push_back(Letter{idx(rng), j});
  }
  return Word(std::move(ls));
}

template <class K> Rational coefficient_sum(const NcPoly<Rational>& x) {
  Rational s(0);
  for (const auto& [w, c] : x.terms()) s += c;
  return s;
}

const Alphabet<Rational> AZ = Alphabet<Rational>::z();
const Alphabet<Rational> A0 = Alphabet<Rational>::zero();
const Alphabet<PolyScalar> AQ =
    Alphabet<PolyScalar>::q_deformed(PolyScalar::var("eps"));

NcPoly<Rational> w(std::initializer_list<std::uint32_t> idx) {
  std::vector<Letter> ls;
  for (auto i : idx) ls.push_back(Letter{i, 0});
  return NcPoly<Rational>::term(Word(std::move(ls)), Rational(1));
}

NcPoly<PolyScalar> wq(std::initializer_list<std::uint32_t> idx) {
  std::vector<Letter> ls;
  for (auto i : idx) ls.push_back(Letter{i, 0});
  return NcPoly<PolyScalar>::term(Word(std::move(ls)), PolyScalar(1));
}

} // namespace

TEST_CASE("letters and words") {
  CHECK(Letter{2, 0}.str(false) == "z2");
  CHECK(Letter{2, 1}.str(true) == "z2,1");
  Word u{Letter{1, 0}, Letter{2, 0}};
  CHECK(u.length() == 2);
  CHECK(u.str(false) == "z1 z2");
  CHECK(Word{}.str(false) == "1");
  CHECK(concat(u, Word{Letter{3, 0}}).str(false) == "z1 z2 z3");
  CHECK(u.reversed().str(false) == "z2 z1");
  CHECK(WordLess{}(Word{}, u));
  CHECK(WordLess{}(Word{Letter{9, 0}}, u));  // shorter first
}

TEST_CASE("alphabet letter validation") {
  CHECK(AZ.valid(Letter{3, 0}));
  CHECK_FALSE(AZ.valid(Letter{3, 1}));
  CHECK_FALSE(AZ.valid(Letter{0, 0}));
  auto AE = Alphabet<Rational>::euler(3);
  CHECK(AE.valid(Letter{1, 2}));
  CHECK_FALSE(AE.valid(Letter{1, 3}));
  CHECK_THROWS_AS(Alphabet<Rational>::euler(1), std::invalid_argument);
  CHECK_THROWS_AS(AZ.check(Letter{1, 1}), std::invalid_argument);
}

TEST_CASE("diamond rules per alphabet") {
  auto d = AZ.diamond(Letter{2, 0}, Letter{3, 0});
  CHECK(d == LinComb<Rational>::single(Letter{5, 0}, Rational(1)));
  CHECK(A0.diamond(Letter{2, 0}, Letter{3, 0}).is_zero());

  auto dq = AQ.diamond(Letter{2, 0}, Letter{3, 0});
  REQUIRE(dq.size() == 2);
  CHECK(dq.terms().at(Letter{5, 0}) == PolyScalar(1));
  CHECK(dq.terms().at(Letter{4, 0}) == PolyScalar::var("eps"));

  auto AE = Alphabet<Rational>::euler(3);
  auto de = AE.diamond(Letter{1, 2}, Letter{2, 2});
  CHECK(de == LinComb<Rational>::single(Letter{3, 1}, Rational(1)));
}

TEST_CASE("diamond is commutative and associative on letters") {
  for (std::uint32_t a = 1; a <= 8; ++a)
    for (std::uint32_t b = 1; b <= 8; ++b) {
      CHECK(AZ.diamond(Letter{a, 0}, Letter{b, 0}) ==
            AZ.diamond(Letter{b, 0}, Letter{a, 0}));
      CHECK(AQ.diamond(Letter{a, 0}, Letter{b, 0}) ==
            AQ.diamond(Letter{b, 0}, Letter{a, 0}));
    }
  auto assoc = [](const auto& A, Letter a, Letter b, Letter c) {
    using KK = std::decay_t<decltype(A.unit())>;
    auto lc = [&A](Letter l) { return LinComb<KK>::single(l, A.unit()); };
    return A.diamond(A.diamond(a, b), lc(c)) == A.diamond(lc(a), A.diamond(b, c));
  };
  for (std::uint32_t a = 1; a <= 8; ++a)
    for (std::uint32_t b = 1; b <= 8; ++b)
      for (std::uint32_t c = 1; c <= 8; ++c) {
        CHECK(assoc(AZ, Letter{a, 0}, Letter{b, 0}, Letter{c, 0}));
        CHECK(assoc(AQ, Letter{a, 0}, Letter{b, 0}, Letter{c, 0}));
      }
  auto AE = Alphabet<Rational>::euler(4);
  for (std::uint32_t a = 1; a <= 3; ++a)
    for (std::uint32_t ja = 0; ja < 4; ++ja)
      for (std::uint32_t b = 1; b <= 3; ++b)
        for (std::uint32_t jb = 0; jb < 4; ++jb)
          CHECK(assoc(AE, Letter{a, ja}, Letter{b, jb}, Letter{2, 3}));
}

TEST_CASE("concatenation product") {
  CHECK(concat(w({2}), w({1})) == w({2, 1}));
  CHECK(concat(poly_one(AZ), w({3, 1})) == w({3, 1}));
  CHECK(concat(w({1}) + w({2}), w({1})) == w({1, 1}) + w({2, 1}));
}

TEST_CASE("quasi-shuffle product examples") {
  CHECK(qsh(AZ, w({1}), w({1})) == w({1, 1}).scaled(Rational(2)) + w({2}));
  CHECK(qsh(AZ, w({3, 1}), poly_one(AZ)) == w({3, 1}));
  CHECK(qsh(A0, w({1}), w({1})) == w({1, 1}).scaled(Rational(2)));
  // Longer hand expansion: z2 * z1 = z2z1 + z1z2 + z3.
  CHECK(qsh(AZ, w({2}), w({1})) == w({2, 1}) + w({1, 2}) + w({3}));
}

TEST_CASE("signed quasi-shuffle product examples") {
  CHECK(qsh_star(AZ, w({2}), w({1})) == w({2, 1}) + w({1, 2}) - w({3}));
  CHECK(qsh_star(AZ, poly_one(AZ), w({1, 1})) == w({1, 1}));
  CHECK(qsh_star(A0, w({1}), w({1})) == w({1, 1}).scaled(Rational(2)));
}

TEST_CASE("plain shuffle product examples") {
  CHECK(shuffle(AZ, w({1}), w({2})) == w({1, 2}) + w({2, 1}));
  CHECK(shuffle(AZ, w({1}), w({1})) == w({1, 1}).scaled(Rational(2)));
  CHECK(shuffle(AZ, w({1, 2}), w({3})) == w({1, 2, 3}) + w({1, 3, 2}) + w({3, 1, 2}));
}

TEST_CASE("extended diamond examples") {
  CHECK(diamond_extend(AZ, w({1}), w({2, 3})) == w({3, 3}));
  CHECK(diamond_extend(AZ, poly_one(AZ), w({4, 4})) == w({4, 4}));
  CHECK(diamond_extend(AZ, w({1, 2}), w({3, 4})) == w({1, 5, 4}));
  CHECK(diamond_extend(AQ, wq({1}), wq({1})) ==
        wq({2}) + wq({1}).scaled(PolyScalar::var("eps")));
}

TEST_CASE("products are commutative and associative on random words") {
  for (int k = 0; k < 200; ++k) {
    Word a = random_word(3, 4), b = random_word(3, 4);
    if (a.length() + b.length() > 8) continue;
    auto pa = NcPoly<Rational>::term(a, Rational(1));
    auto pb = NcPoly<Rational>::term(b, Rational(1));
    CHECK(qsh(AZ, pa, pb) == qsh(AZ, pb, pa));
    CHECK(qsh_star(AZ, pa, pb) == qsh_star(AZ, pb, pa));
    auto qa = NcPoly<PolyScalar>::term(a, PolyScalar(1));
    auto qb = NcPoly<PolyScalar>::term(b, PolyScalar(1));
    CHECK(qsh(AQ, qa, qb) == qsh(AQ, qb, qa));
  }
  for (int k = 0; k < 60; ++k) {
    Word a = random_word(2, 3), b = random_word(2, 3), c = random_word(2, 3);
    if (a.length() + b.length() + c.length() > 7) continue;
    auto pa = NcPoly<Rational>::term(a, Rational(1));
    auto pb = NcPoly<Rational>::term(b, Rational(1));
    auto pc = NcPoly<Rational>::term(c, Rational(1));
    CHECK(qsh(AZ, qsh(AZ, pa, pb), pc) == qsh(AZ, pa, qsh(AZ, pb, pc)));
    CHECK(qsh_star(AZ, qsh_star(AZ, pa, pb), pc) ==
          qsh_star(AZ, pa, qsh_star(AZ, pb, pc)));
    auto qa = NcPoly<PolyScalar>::term(a, PolyScalar(1));
    auto qb = NcPoly<PolyScalar>::term(b, PolyScalar(1));
    auto qc = NcPoly<PolyScalar>::term(c, PolyScalar(1));
    CHECK(qsh(AQ, qsh(AQ, qa, qb), qc) == qsh(AQ, qa, qsh(AQ, qb, qc)));
  }
}

TEST_CASE("zero alphabet collapses both products to the shuffle") {
  for (int k = 0; k < 120; ++k) {
    Word a = random_word(3, 4), b = random_word(4, 4);
    if (a.length() + b.length() > 7) continue;
    auto pa = NcPoly<Rational>::term(a, Rational(1));
    auto pb = NcPoly<Rational>::term(b, Rational(1));
    auto sh = shuffle(A0, pa, pb);
    CHECK(qsh(A0, pa, pb) == sh);
    CHECK(qsh_star(A0, pa, pb) == sh);
  }
}

TEST_CASE("shuffle of distinct-letter words has binomial coefficient sum") {
  // Distinct letters: every interleaving is a distinct word with coefficient 1.
  Word a{Letter{1, 0}, Letter{2, 0}, Letter{3, 0}};
  Word b{Letter{4, 0}, Letter{5, 0}};
  auto sh = shuffle(AZ, NcPoly<Rational>::term(a, Rational(1)),
                    NcPoly<Rational>::term(b, Rational(1)));
  CHECK(sh.size() == 10);
  Rational total(0);
  for (const auto& [word, c] : sh.terms()) total += c;
  CHECK(total == Rational(10));  // binom(5,2)
}

TEST_CASE("extended diamond is associative on sampled triples") {
  for (int k = 0; k < 80; ++k) {
    Word a = random_word(2, 4), b = random_word(2, 4), c = random_word(2, 4);
    auto pa = NcPoly<Rational>::term(a, Rational(1));
    auto pb = NcPoly<Rational>::term(b, Rational(1));
    auto pc = NcPoly<Rational>::term(c, Rational(1));
    CHECK(diamond_extend(AZ, diamond_extend(AZ, pa, pb), pc) ==
          diamond_extend(AZ, pa, diamond_extend(AZ, pb, pc)));
    auto qa = NcPoly<PolyScalar>::term(a, PolyScalar(1));
    auto qb = NcPoly<PolyScalar>::term(b, PolyScalar(1));
    auto qc = NcPoly<PolyScalar>::term(c, PolyScalar(1));
    CHECK(diamond_extend(AQ, diamond_extend(AQ, qa, qb), qc) ==
          diamond_extend(AQ, qa, diamond_extend(AQ, qb, qc)));
  }
}

TEST_CASE("alphabet mismatch is rejected") {
  auto bad = NcPoly<Rational>::term(Word{Letter{1, 1}}, Rational(1));
  CHECK_THROWS_AS(qsh(AZ, bad, w({1})), std::invalid_argument);
  CHECK_THROWS_AS(diamond_extend(AZ, w({1}), bad), std::invalid_argument);
}

TEST_CASE("euler alphabet products") {
  auto AE = Alphabet<Rational>::euler(2);
  auto e = [](std::uint32_t i, std::uint32_t j) {
    return NcPoly<Rational>::term(Word{Letter{i, j}}, Rational(1));
  };
  // z_{1,1} * z_{1,1} = 2 z_{1,1}z_{1,1} + z_{2,0}
  auto prod = qsh(AE, e(1, 1), e(1, 1));
  CHECK(prod == NcPoly<Rational>::term(Word{Letter{1, 1}, Letter{1, 1}}, Rational(2)) +
                    e(2, 0));
}
