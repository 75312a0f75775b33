#include "qsh/evaluators.hpp"

#include "qsh/hopf.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace qshuffle;

namespace {

std::mt19937_64 rng(77003u);

const Alphabet<Rational> AZ = Alphabet<Rational>::z();
const Alphabet<PolyScalar> AQ =
    Alphabet<PolyScalar>::q_deformed(PolyScalar::var("eps"));
const Alphabet<PolyScalar> AZP =
    Alphabet<PolyScalar>::z(PolyScalar::constant(Rational(1)));

constexpr double pi = 3.14159265358979323846;

Word wd(std::initializer_list<std::uint32_t> idx) {
  std::vector<Letter> ls;
  for (auto i : idx) ls.push_back(Letter{i, 0});
  return Word(std::move(ls));
}

NcPoly<Rational> w(std::initializer_list<std::uint32_t> idx) {
  return NcPoly<Rational>::term(wd(idx), Rational(1));
}

NcPoly<PolyScalar> wq(std::initializer_list<std::uint32_t> idx) {
  return NcPoly<PolyScalar>::term(wd(idx), PolyScalar::constant(Rational(1)));
}

// All words of the given total exponent, one per composition.
std::vector<Word> words_of_weight(long k) {
  std::vector<Word> out;
  if (k <= 0) return out;
  for (unsigned long mask = 0; mask < (1ul << (k - 1)); ++mask) {
    std::vector<Letter> ls;
    std::uint32_t cur = 1;
    for (long pos = 0; pos < k - 1; ++pos) {
      if (mask & (1ul << pos)) {
        ls.push_back(Letter{cur, 0});
        cur = 1;
      } else {
        ++cur;
      }
    }
    ls.push_back(Letter{cur, 0});
    out.push_back(Word(std::move(ls)));
  }
  return out;
}

Word random_word(long max_weight, long max_len) {
  std::uniform_int_distribution<long> len_d(1, max_len);
  const long len = len_d(rng);
  long spare = max_weight - len;
  std::vector<Letter> ls;
  for (long t = 0; t < len; ++t) {
    std::uniform_int_distribution<long> extra(0, spare);
    const long e = extra(rng);
    spare -= e;
    ls.push_back(Letter{static_cast<std::uint32_t>(1 + e), 0});
  }
  return Word(std::move(ls));
}

} // namespace

TEST_CASE("finite harmonic sums") {
  CHECK(harmonic(wd({1}), 2) == Rational(3, 2));
  CHECK(harmonic(wd({1}), 3) == Rational(11, 6));
  CHECK(harmonic(wd({1, 1}), 3) == Rational(1));
  CHECK(harmonic_star(wd({1, 1}), 2) == Rational(7, 4));
  // Pairs (2,1),(3,1),(3,2): 1/4 + 1/9 + 1/18.
  CHECK(harmonic(wd({2, 1}), 3) == Rational(5, 12));
  CHECK(harmonic(Word{}, 5) == Rational(1));
  CHECK(harmonic_star(Word{}, 0) == Rational(1));
  // A chain cannot start below 1.
  CHECK(harmonic(wd({1}), 0) == Rational(0));

  CHECK(odd_harmonic(wd({1}), 4) == Rational(4, 3));
  // Odd weak pairs up to 3: (1,1), (3,1), (3,3).
  CHECK(odd_harmonic_star(wd({1, 1}), 3) == Rational(13, 9));

  CHECK_THROWS_AS(harmonic(Word{Letter{2, 1}}, 3), std::invalid_argument);
}

TEST_CASE("harmonic sums are homomorphisms") {
  for (int trial = 0; trial < 100; ++trial) {
    const Word u = random_word(6, 3), v = random_word(6, 3);
    const NcPoly<Rational> pu = NcPoly<Rational>::term(u, Rational(1));
    const NcPoly<Rational> pv = NcPoly<Rational>::term(v, Rational(1));
    const NcPoly<Rational> prod = qsh(AZ, pu, pv);
    const NcPoly<Rational> sprod = qsh_star(AZ, pu, pv);
    for (long n = 1; n <= 8; ++n) {
      CHECK(harmonic(prod, n) == harmonic(u, n) * harmonic(v, n));
      CHECK(harmonic_star(sprod, n) ==
            harmonic_star(u, n) * harmonic_star(v, n));
    }
  }
}

TEST_CASE("star sums through sigma") {
  for (long k = 1; k <= 6; ++k) {
    for (const Word& u : words_of_weight(k)) {
      const NcPoly<Rational> s = sigma(AZ, NcPoly<Rational>::term(u, Rational(1)));
      for (long n : {3L, 5L, 8L}) {
        CHECK(harmonic_star(u, n) == harmonic(s, n));
        CHECK(odd_harmonic_star(u, n) == odd_harmonic(s, n));
      }
    }
  }
}

TEST_CASE("stirling numbers") {
  CHECK(stirling_first(4, 3) == 6);
  CHECK(stirling_first(4, 2) == 11);
  CHECK(stirling_first(4, 1) == 6);
  CHECK(stirling_first(0, 0) == 1);
  for (long n = 1; n <= 8; ++n) {
    CHECK(stirling_first(n, n) == 1);
    CHECK(stirling_first(n, 0) == 0);
  }
  CHECK_THROWS_AS(stirling_first(3, 4), std::out_of_range);
  CHECK_THROWS_AS(stirling_first(3, -1), std::out_of_range);

  // Sums of 1/(m_1...m_r) are Stirling numbers over n!.
  for (long n = 1; n <= 8; ++n) {
    for (long r = 0; r <= n; ++r) {
      std::vector<Letter> ones(static_cast<size_t>(r), Letter{1, 0});
      CHECK(harmonic(Word(std::move(ones)), n) * factorial(n) ==
            Rational(stirling_first(n + 1, r + 1)));
    }
  }
}

TEST_CASE("q-zeta examples") {
  const QSeries z2 = qzeta(wd({2}), 3);
  CHECK(z2.coeff(0) == Rational(0));
  CHECK(z2.coeff(1) == Rational(1));
  CHECK(z2.coeff(2) == Rational(1));
  CHECK(z2.coeff(3) == Rational(-1));
  CHECK(z2.str() == "q + q^2 - q^3");

  CHECK(qzeta(Word{}, 5) == QSeries::one(5));
  CHECK(qzeta(wd({3}), 3) == QSeries::q(3, 2));

  CHECK_THROWS_AS(qzeta(wd({1, 2}), 5), std::invalid_argument);
  CHECK_THROWS_AS(qzeta(Word{Letter{2, 1}}, 5), std::invalid_argument);
}

TEST_CASE("q-zeta products") {
  const std::vector<Word> basis = {wd({2}),    wd({3}),    wd({4}),   wd({5}),
                                   wd({2, 1}), wd({2, 2}), wd({3, 1}),
                                   wd({2, 1, 1}), wd({3, 2}), wd({2, 1, 2})};
  const int M = 20;
  std::map<Word, QSeries, WordLess> cache;
  auto eval = [&](const NcPoly<PolyScalar>& x) {
    QSeries acc(M);
    for (const auto& [u, c] : x.terms()) {
      auto it = cache.find(u);
      if (it == cache.end()) it = cache.emplace(u, qzeta(u, M)).first;
      acc += eps_to_qseries(c, M) * it->second;
    }
    return acc;
  };
  std::vector<QSeries> plain, star;
  for (const Word& u : basis) {
    const NcPoly<PolyScalar> pu = NcPoly<PolyScalar>::term(u, AQ.unit());
    plain.push_back(eval(pu));
    star.push_back(eval(sigma(AQ, pu)));
    CHECK(plain.back() == qzeta(u, M));
    CHECK(star.back() == qzeta_star(u, M));
  }
  for (size_t a = 0; a < basis.size(); ++a) {
    for (size_t b = a; b < basis.size(); ++b) {
      const NcPoly<PolyScalar> pu = NcPoly<PolyScalar>::term(basis[a], AQ.unit());
      const NcPoly<PolyScalar> pv = NcPoly<PolyScalar>::term(basis[b], AQ.unit());
      CHECK(eval(qsh(AQ, pu, pv)) == plain[a] * plain[b]);
      CHECK(eval(sigma(AQ, qsh_star(AQ, pu, pv))) == star[a] * star[b]);
    }
  }
}

TEST_CASE("q-zeta star against the direct weak sum") {
  const int M = 20;
  for (long k = 2; k <= 5; ++k) {
    for (const Word& u : words_of_weight(k)) {
      if (u.first().i < 2) continue;
      CHECK(qzeta_star(u, M) == qzeta_star_weak(u, M));
    }
  }
}

TEST_CASE("diamond powers of a letter") {
  for (std::uint32_t k = 1; k <= 4; ++k) {
    LinComb<PolyScalar> power = LinComb<PolyScalar>::single(Letter{k, 0}, AQ.unit());
    for (long i = 2; i <= 6; ++i) {
      power = AQ.diamond(power, LinComb<PolyScalar>::single(Letter{k, 0}, AQ.unit()));
      LinComb<PolyScalar> expected;
      for (long j = 0; j <= i - 1; ++j) {
        const PolyScalar c =
            PolyScalar::var("eps", static_cast<int>(j)) *
            PolyScalar::constant(Rational(binomial_int(Int(i - 1), j)));
        expected.add_term(Letter{static_cast<std::uint32_t>(i * k - j), 0}, c);
      }
      CHECK(power == expected);
    }
  }
}

TEST_CASE("numeric zeta values") {
  CHECK(std::abs(mzv(wd({2}), 4000) - pi * pi / 6) < 5e-4);
  CHECK(std::abs(mzv(wd({3, 1}), 2000) - std::pow(pi, 4) / 360) < 1e-4);
  CHECK(std::abs(mzv(wd({4}), 2000) - std::pow(pi, 4) / 90) < 1e-6);

  // Star and plain values tie together through the expansion of Sigma.
  const double zeta3 = mzv(wd({3}), 4000);
  CHECK(std::abs(mzv_star(wd({2, 1}), 4000) - 2 * zeta3) < 5e-3);

  // Interpolation at 0 is the identity, at 1 the star value.
  CHECK(mzv_interp(Rational(0), wd({2, 1}), 1000) == mzv(wd({2, 1}), 1000));
  CHECK(mzv_interp(Rational(1), wd({2, 1}), 1000) == mzv_star(wd({2, 1}), 1000));

  CHECK(std::abs(tval(wd({2}), 4000) - pi * pi / 8) < 5e-4);
  CHECK(std::abs(tval(wd({3}), 4000) - 0.875 * zeta3) < 1e-6);
  CHECK(std::abs(tval_star(wd({2, 2}), 2000) - 5 * std::pow(pi, 4) / 384) < 2e-3);

  CHECK(mzv(Word{}, 100) == 1.0);
  CHECK_THROWS_AS(mzv(wd({1, 2}), 100), std::invalid_argument);
  CHECK_THROWS_AS(mzv(wd({2}), 0), std::invalid_argument);
}

TEST_CASE("polylogarithm values") {
  CHECK(std::abs(polylog(Word{Letter{1, 1}}, 2, 200000).real() + std::log(2.0)) <
        1e-4);
  CHECK(std::abs(polylog(Word{Letter{2, 1}}, 2, 2000).real() + pi * pi / 12) <
        1e-4);

  // Trivial pair indices reproduce the plain nested sum.
  const std::complex<double> plain = polylog(wd({2, 1}), 3, 2000);
  CHECK(std::abs(plain.real() - mzv(wd({2, 1}), 2000)) < 1e-12);
  CHECK(std::abs(plain.imag()) < 1e-12);

  // Weight-one value at a cube root of unity.
  const std::complex<double> omega = std::polar(1.0, 2 * pi / 3);
  const std::complex<double> expected = -std::log(1.0 - omega);
  const std::complex<double> got = polylog(Word{Letter{1, 1}}, 3, 200000);
  CHECK(std::abs(got.real() - expected.real()) < 1e-3);
  CHECK(std::abs(got.imag() - expected.imag()) < 1e-3);

  // Star value of a two-letter word picks up the fused letter.
  const Word barbar{Letter{2, 1}, Letter{2, 1}};
  const std::complex<double> direct =
      polylog(barbar, 2, 2000) + polylog(Word{Letter{4, 0}}, 2, 2000);
  CHECK(std::abs(polylog_star(barbar, 2, 2000) - direct) < 1e-10);

  CHECK(polylog(Word{}, 2, 10) == std::complex<double>(1.0));
  CHECK_THROWS_AS(polylog(Word{Letter{1, 0}}, 2, 100), std::invalid_argument);
  CHECK_THROWS_AS(polylog(Word{Letter{2, 2}}, 2, 100), std::invalid_argument);
  CHECK_THROWS_AS(polylog(wd({2}), 1, 100), std::invalid_argument);
}

TEST_CASE("interpolation expansion") {
  CHECK(interp_expand(Rational(1, 2), wd({2, 1})) ==
        w({2, 1}) + w({3}).scaled(Rational(1, 2)));
  CHECK(interp_expand(Rational(1), wd({2, 1})) == w({2, 1}) + w({3}));
  for (const Word& u : {wd({2, 1}), wd({3, 1, 2}), wd({2})}) {
    CHECK(interp_expand(Rational(0), u) == NcPoly<Rational>::term(u, Rational(1)));
  }

  CHECK(require_rational(wq({2, 1}).scaled(PolyScalar::constant(Rational(3, 2)))) ==
        w({2, 1}).scaled(Rational(3, 2)));
  CHECK_THROWS_AS(require_rational(wq({2}).scaled(PolyScalar::var("r"))),
                  std::invalid_argument);
}

TEST_CASE("weight and length generators") {
  CHECK(sum_words(3, 2) == w({2, 1}));
  CHECK(sum_words(4, 2) == w({3, 1}) + w({2, 2}));
  CHECK(sum_words(5, 1) == w({5}));
  CHECK(even_comp_sum(2, 1) == w({4}));
  CHECK(even_comp_sum(2, 2) == w({2, 2}));
  CHECK(even_comp_sum(3, 2) == w({2, 4}) + w({4, 2}));

  CHECK_THROWS_AS(sum_words(3, 3), std::out_of_range);
  CHECK_THROWS_AS(sum_words(3, 0), std::out_of_range);
  CHECK_THROWS_AS(even_comp_sum(2, 3), std::out_of_range);
  CHECK_THROWS_AS(even_comp_sum(2, 0), std::out_of_range);

  // The fusion derivation shortens the sum by one letter.
  for (long k = 3; k <= 7; ++k)
    for (long l = 2; l <= k - 1; ++l)
      CHECK(derivation_d(AZ, sum_words(k, l)) ==
            sum_words(k, l - 1).scaled(Rational(k - l)));
}

TEST_CASE("interpolated sum theorem") {
  const PolyScalar r = PolyScalar::var("r");
  for (long k = 3; k <= 7; ++k) {
    for (long l = 1; l <= k - 1; ++l) {
      const NcPoly<PolyScalar> lhs =
          sigma_power(AZP, r, sum_words_in<PolyScalar>(k, l, AZP.unit()));
      NcPoly<PolyScalar> rhs;
      for (long n = 0; n <= l - 1; ++n) {
        const PolyScalar c =
            PolyScalar::var("r", static_cast<int>(n)) *
            PolyScalar::constant(Rational(binomial_int(Int(k - l - 1 + n), n)));
        rhs += sum_words_in<PolyScalar>(k, l - n, AZP.unit()).scaled(c);
      }
      CHECK(lhs == rhs);
    }
  }
}
