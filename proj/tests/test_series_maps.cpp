#include "qsh/word_maps.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

using namespace qshuffle;

namespace {

std::mt19937_64 rng(40917u);

Rational random_rational() {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  return Rational(num(rng)) / Rational(den(rng));
}

FormalSeries<Rational> random_series(int n) {
  std::vector<Rational> c;
  for (int k = 0; k < n; ++k) c.push_back(random_rational());
  return FormalSeries<Rational>(std::move(c));
}

Word random_word(size_t maxlen, std::uint32_t maxidx) {
  std::uniform_int_distribution<size_t> len(0, maxlen);
  std::uniform_int_distribution<std::uint32_t> idx(1, maxidx);
  std::vector<Letter> ls;
  size_t n = len(rng);
  for (size_t k = 0; k < n; ++k) ls.push_back(Letter{idx(rng), 0});
  return Word(std::move(ls));
}

const Alphabet<Rational> AZ = Alphabet<Rational>::z();
const Alphabet<PolyScalar> AQ =
    Alphabet<PolyScalar>::q_deformed(PolyScalar::var("eps"));

NcPoly<Rational> w(std::initializer_list<std::uint32_t> idx) {
  std::vector<Letter> ls;
  for (auto i : idx) ls.push_back(Letter{i, 0});
  return NcPoly<Rational>::term(Word(std::move(ls)), Rational(1));
}

FormalSeries<Rational> rs(std::initializer_list<long> nums,
                          std::initializer_list<long> dens) {
  std::vector<Rational> c;
  auto itd = dens.begin();
  for (long n : nums) c.push_back(Rational(n) / Rational(*itd++));
  return FormalSeries<Rational>(std::move(c));
}

} // namespace

TEST_CASE("composition basics") {
  Composition I{2, 1, 2};
  CHECK(I.weight() == 5);
  CHECK(I.length() == 3);
  CHECK(I.breaks() == std::vector<int>{2, 3});
  CHECK(I.str() == "(2,1,2)");
  CHECK_THROWS_AS(Composition{std::vector<int>{}}, std::invalid_argument);
  CHECK_THROWS_AS(Composition{0}, std::invalid_argument);
}

TEST_CASE("composition enumeration") {
  auto c1 = compositions(1);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0] == Composition{1});

  auto c3 = compositions(3);
  REQUIRE(c3.size() == 4);
  std::set<std::vector<int>> got;
  for (const auto& I : c3) got.insert(I.parts());
  std::set<std::vector<int>> expect = {{1, 1, 1}, {1, 2}, {2, 1}, {3}};
  CHECK(got == expect);
  // Binary-counter order: mask 0 first (no breaks), all-breaks last.
  CHECK(c3.front() == Composition{3});
  CHECK(c3.back() == Composition{1, 1, 1});

  CHECK(compositions(6).size() == 32);
  CHECK_THROWS_AS(compositions(0), std::invalid_argument);
}

TEST_CASE("conjugate composition") {
  CHECK(Composition{2, 1, 2}.conjugate() == Composition{1, 3, 1});
  CHECK(Composition{5}.conjugate() == Composition{1, 1, 1, 1, 1});
  for (int n = 1; n <= 7; ++n)
    for (const auto& I : compositions(n)) {
      CHECK(I.conjugate().conjugate() == I);
      CHECK(I.conjugate().weight() == I.weight());
      CHECK(I.conjugate().length() == I.weight() + 1 - I.length());
    }
}

TEST_CASE("bracket action") {
  Word a5{Letter{1, 0}, Letter{2, 0}, Letter{3, 0}, Letter{4, 0}, Letter{5, 0}};
  // (2,1,2)[a1..a5] = (a1◊a2) a3 (a4◊a5) = z3 z3 z9 over the Z rule.
  CHECK(bracket_action(AZ, Composition{2, 1, 2}, a5) == w({3, 3, 9}));
  CHECK(bracket_action(AZ, Composition{1, 1, 1, 1, 1}, a5) == w({1, 2, 3, 4, 5}));
  CHECK(bracket_action(AZ, Composition{2}, Word{Letter{1, 0}, Letter{1, 0}}) == w({2}));
  CHECK_THROWS_AS(bracket_action(AZ, Composition{2}, a5), std::invalid_argument);
}

TEST_CASE("angle action") {
  Word a5{Letter{1, 0}, Letter{2, 0}, Letter{3, 0}, Letter{4, 0}, Letter{5, 0}};
  CHECK(angle_action(AZ, Composition{1, 3, 1}, a5) ==
        bracket_action(AZ, Composition{2, 1, 2}, a5));
  CHECK(angle_action(AZ, Composition{5}, a5) ==
        NcPoly<Rational>::term(a5, Rational(1)));
  CHECK(angle_action(AZ, Composition{1, 1}, Word{Letter{1, 0}, Letter{1, 0}}) ==
        w({2}));
  CHECK_THROWS_AS(angle_action(AZ, Composition{3}, a5), std::invalid_argument);
}

TEST_CASE("bracket equals angle of the conjugate") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& I : compositions(n))
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<Letter> ls;
        for (int k = 0; k < n; ++k)
          ls.push_back(Letter{std::uniform_int_distribution<std::uint32_t>(1, 4)(rng), 0});
        Word word(std::move(ls));
        CHECK(bracket_action(AZ, I, word) == angle_action(AZ, I.conjugate(), word));
      }
}

TEST_CASE("series composition") {
  // Generic order-2 check: [t^2](f.g) = c1 d2 + c2 d1^2.
  auto f = rs({3, 5}, {1, 2});
  auto g = rs({-2, 7}, {3, 1});
  auto fg = series_compose(f, g);
  Rational c1(3), c2(5, 2), d1(-2, 3), d2(7);
  CHECK(fg.coeff(1) == c1 * d1);
  CHECK(fg.coeff(2) == c1 * d2 + c2 * d1 * d1);

  const int N = 8;
  auto t = series_t(N, Rational(1));
  auto any = random_series(N);
  CHECK(series_compose(any, t) == any);
  CHECK(series_compose(series_sigma(N, Rational(1)), series_sigma_inv(N, Rational(1))) ==
        t);
  CHECK_THROWS_AS(series_compose(series_t(3, Rational(1)), series_t(4, Rational(1))),
                  std::invalid_argument);
}

TEST_CASE("series inverse") {
  const int N = 8;
  CHECK(series_inverse(series_sigma(N, Rational(1))) == series_sigma_inv(N, Rational(1)));
  CHECK(series_inverse(series_exp(N, Rational(1))) == series_log(N, Rational(1)));
  CHECK(series_inverse(series_t(N, Rational(1))) == series_t(N, Rational(1)));
  for (int k = 0; k < 20; ++k) {
    auto f = random_series(6);
    if (f.coeff(1).is_zero()) continue;
    auto g = series_inverse(f);
    CHECK(series_compose(f, g) == series_t(6, Rational(1)));
    CHECK(series_compose(g, f) == series_t(6, Rational(1)));
  }
  std::vector<Rational> c{Rational(0), Rational(1)};
  CHECK_THROWS_AS(series_inverse(FormalSeries<Rational>(c)), std::domain_error);
}

TEST_CASE("named series coefficient families") {
  auto geo = series_sigma(5, Rational(1));
  for (int i = 1; i <= 5; ++i) CHECK(geo.coeff(i) == Rational(1));

  auto lg = series_log(4, Rational(1));
  CHECK(lg.coeff(1) == Rational(1));
  CHECK(lg.coeff(2) == Rational(-1, 2));
  CHECK(lg.coeff(3) == Rational(1, 3));
  CHECK(lg.coeff(4) == Rational(-1, 4));

  // (1+t)^p - 1 with symbolic p: binomial coefficients in p.
  PolyScalar p = PolyScalar::var("p");
  auto hp = series_pow1p(3, p, PolyScalar(1));
  CHECK(hp.coeff(1) == p);
  CHECK(hp.coeff(2) == (p * (p - PolyScalar(1))).pow(1) * PolyScalar(Rational(1, 2)));
  PolyScalar c3 = p * (p - PolyScalar(1)) * (p - PolyScalar(2));
  c3 /= Rational(6);
  CHECK(hp.coeff(3) == c3);

  // Geometric family with p=2: c_i = 2^(i-1).
  auto g2 = series_geometric(4, Rational(2), Rational(1));
  CHECK(g2.coeff(4) == Rational(8));

  // 1-(1-t)^p at p=2: t^2 coefficient -1... expansion 2t - t^2.
  auto om = series_one_minus_pow(3, Rational(2), Rational(1));
  CHECK(om.coeff(1) == Rational(2));
  CHECK(om.coeff(2) == Rational(-1));
  CHECK(om.coeff(3) == Rational(0));
}

TEST_CASE("psi on words") {
  const int N = 6;
  auto f_sigma = series_sigma(N, Rational(1));
  // psi of the geometric series inserts every way of fusing adjacent letters.
  CHECK(psi(AZ, f_sigma, w({2, 3, 4})) ==
        w({2, 3, 4}) + w({5, 4}) + w({2, 7}) + w({9}));
  CHECK(psi(AZ, series_neg_t(N, Rational(1)), w({1, 2, 1})) == -w({1, 2, 1}));
  CHECK(psi(AZ, series_exp(N, Rational(1)), w({1, 1})) ==
        w({1, 1}) + w({2}).scaled(Rational(1, 2)));
  CHECK(psi(AZ, f_sigma, poly_one(AZ)) == poly_one(AZ));
  CHECK_THROWS_AS(psi(AZ, series_t(1, Rational(1)), w({1, 1})), std::invalid_argument);
}

TEST_CASE("psi oracle examples") {
  const int N = 6;
  CHECK(psi_oracle(AZ, series_t(N, Rational(1)), w({2, 1, 4})) == w({2, 1, 4}));
  CHECK(psi_oracle(AZ, series_sigma_inv(N, Rational(1)), w({2, 1})) ==
        w({2, 1}) - w({3}));
}

TEST_CASE("psi agrees with the oracle") {
  for (int k = 0; k < 100; ++k) {
    auto f = random_series(8);
    Word word = random_word(8, 4);
    auto x = NcPoly<Rational>::term(word, Rational(1));
    CHECK(psi(AZ, f, x) == psi_oracle(AZ, f, x));
  }
  // Also over the symbolic Q-alphabet.
  std::vector<PolyScalar> cs;
  for (int i = 0; i < 6; ++i) cs.push_back(PolyScalar(random_rational()));
  FormalSeries<PolyScalar> fq(cs);
  for (int k = 0; k < 10; ++k) {
    Word word = random_word(6, 3);
    auto x = NcPoly<PolyScalar>::term(word, PolyScalar(1));
    CHECK(psi(AQ, fq, x) == psi_oracle(AQ, fq, x));
  }
}

TEST_CASE("functoriality of the series action") {
  const int N = 8;
  for (int k = 0; k < 50; ++k) {
    auto f = random_series(N), g = random_series(N);
    auto fg = series_compose(f, g);
    Word word = random_word(6, 4);
    auto x = NcPoly<Rational>::term(word, Rational(1));
    CHECK(psi(AZ, f, psi(AZ, g, x)) == psi(AZ, fg, x));
  }
  for (int k = 0; k < 12; ++k) {
    std::vector<PolyScalar> fc, gc;
    for (int i = 0; i < N; ++i) {
      fc.push_back(PolyScalar(random_rational()));
      gc.push_back(PolyScalar(random_rational()));
    }
    FormalSeries<PolyScalar> f(fc), g(gc);
    auto fg = series_compose(f, g);
    Word word = random_word(5, 3);
    auto x = NcPoly<PolyScalar>::term(word, PolyScalar(1));
    CHECK(psi(AQ, f, psi(AQ, g, x)) == psi(AQ, fg, x));
  }
}

TEST_CASE("sigma family basics") {
  CHECK(sigma(AZ, w({2, 1})) == w({2, 1}) + w({3}));
  CHECK(sigma_power(AZ, Rational(0), w({2, 1, 1})) == w({2, 1, 1}));
  auto sym = sigma_power(AQ, PolyScalar::var("r"),
                         NcPoly<PolyScalar>::term(Word{Letter{2, 0}, Letter{1, 0}},
                                                  PolyScalar(1)));
  NcPoly<PolyScalar> expect =
      NcPoly<PolyScalar>::term(Word{Letter{2, 0}, Letter{1, 0}}, PolyScalar(1));
  expect.add_term(Word{Letter{3, 0}}, PolyScalar::var("r"));
  expect.add_term(Word{Letter{2, 0}}, PolyScalar::var("r") * PolyScalar::var("eps"));
  CHECK(sym == expect);
  // Over the Z-alphabet the symbolic value is just z2z1 + r z3.
  auto AZp = Alphabet<PolyScalar>::z();
  auto symz = sigma_power(AZp, PolyScalar::var("r"),
                          NcPoly<PolyScalar>::term(Word{Letter{2, 0}, Letter{1, 0}},
                                                   PolyScalar(1)));
  NcPoly<PolyScalar> expectz =
      NcPoly<PolyScalar>::term(Word{Letter{2, 0}, Letter{1, 0}}, PolyScalar(1));
  expectz.add_term(Word{Letter{3, 0}}, PolyScalar::var("r"));
  CHECK(symz == expectz);
}

TEST_CASE("sigma power matches its closed form") {
  // Sigma^rho(w) weights each fusion pattern by rho^(length drop).
  auto AZp = Alphabet<PolyScalar>::z();
  PolyScalar r = PolyScalar::var("r");
  for (int k = 0; k < 25; ++k) {
    Word word = random_word(6, 4);
    if (word.empty()) continue;
    auto x = NcPoly<PolyScalar>::term(word, PolyScalar(1));
    NcPoly<PolyScalar> direct;
    for (const auto& I : compositions(static_cast<int>(word.length())))
      direct += bracket_action(AZp, I, word)
                    .scaled(r.pow(I.weight() - I.length()));
    CHECK(sigma_power(AZp, r, x) == direct);
  }
}

TEST_CASE("involution and dihedral relations") {
  for (int k = 0; k < 30; ++k) {
    Word word = random_word(6, 4);
    auto x = NcPoly<Rational>::term(word, Rational(1));
    CHECK(length_sign(length_sign(x)) == x);
    CHECK(length_sign(sigma(AZ, length_sign(x))) == sigma_inverse(AZ, x));
    CHECK(sigma_inverse(AZ, sigma(AZ, x)) == x);
  }
  // Sigma has infinite order: no small power fixes z1z1.
  auto x = w({1, 1});
  auto acc = x;
  for (int n = 1; n <= 5; ++n) {
    acc = sigma(AZ, acc);
    CHECK(acc != x);
  }
}

TEST_CASE("exp and log factorization of sigma") {
  for (int k = 0; k < 30; ++k) {
    Word word = random_word(6, 4);
    auto x = NcPoly<Rational>::term(word, Rational(1));
    auto composed = exp_psi(AZ, length_sign(log_psi(AZ, length_sign(x))));
    CHECK(composed == sigma(AZ, x));
  }
}

TEST_CASE("sigma powers add") {
  for (Rational a : {Rational(2), Rational(1, 2), Rational(-1)})
    for (Rational b : {Rational(1), Rational(-3, 2)})
      for (int k = 0; k < 10; ++k) {
        Word word = random_word(5, 4);
        auto x = NcPoly<Rational>::term(word, Rational(1));
        CHECK(sigma_power(AZ, a, sigma_power(AZ, b, x)) ==
              sigma_power(AZ, a + b, x));
      }
}

TEST_CASE("homomorphism laws") {
  for (int k = 0; k < 40; ++k) {
    Word wa = random_word(3, 4), wb = random_word(3, 4);
    auto a = NcPoly<Rational>::term(wa, Rational(1));
    auto b = NcPoly<Rational>::term(wb, Rational(1));
    // T swaps the two quasi-shuffle products.
    CHECK(length_sign(qsh(AZ, a, b)) ==
          qsh_star(AZ, length_sign(a), length_sign(b)));
    // Sigma carries the signed product to the plain one.
    CHECK(sigma(AZ, qsh_star(AZ, a, b)) == qsh(AZ, sigma(AZ, a), sigma(AZ, b)));
    // exp carries the shuffle to the quasi-shuffle.
    CHECK(exp_psi(AZ, shuffle(AZ, a, b)) == qsh(AZ, exp_psi(AZ, a), exp_psi(AZ, b)));
    for (Rational p : {Rational(2), Rational(-1), Rational(1, 2)})
      CHECK(h_power(AZ, p, qsh(AZ, a, b)) ==
            qsh(AZ, h_power(AZ, p, a), h_power(AZ, p, b)));
  }
  // H_p as a homomorphism with symbolic p.
  auto AZp = Alphabet<PolyScalar>::z();
  PolyScalar p = PolyScalar::var("p");
  for (int k = 0; k < 10; ++k) {
    Word wa = random_word(3, 3), wb = random_word(2, 3);
    auto a = NcPoly<PolyScalar>::term(wa, PolyScalar(1));
    auto b = NcPoly<PolyScalar>::term(wb, PolyScalar(1));
    CHECK(h_power(AZp, p, qsh(AZp, a, b)) ==
          qsh(AZp, h_power(AZp, p, a), h_power(AZp, p, b)));
  }
}

TEST_CASE("h power composition law") {
  for (Rational p : {Rational(2), Rational(-1), Rational(1, 2)})
    for (Rational q : {Rational(3), Rational(-1, 2)})
      for (int k = 0; k < 8; ++k) {
        Word word = random_word(5, 4);
        auto x = NcPoly<Rational>::term(word, Rational(1));
        CHECK(h_power(AZ, p, h_power(AZ, q, x)) == h_power(AZ, p * q, x));
      }
}
