#pragma once

#include "qsh/hopf.hpp"

#include <map>
#include <optional>
#include <string>

namespace qshuffle {

// Letter-valued series with zero constant term: sum_{n>=1} lambda^n u_n with
// each u_n in the span of single letters.  The restriction to letters is part
// of several identity hypotheses, so it is enforced at construction.
template <class K> class LetterSeries {
public:
  LetterSeries() = default;

  static LetterSeries letter(const Letter& l, const K& unit, int degree = 1) {
    LetterSeries s;
    s.add(degree, l, unit);
    return s;
  }

  void add(int degree, const Letter& l, const K& c) {
    if (degree < 1) throw std::invalid_argument("letter series: degree must be >= 1");
    u_[degree].add_term(l, c);
  }

  bool empty() const { return u_.empty(); }
  const std::map<int, LinComb<K>>& coeffs() const { return u_; }

  LetterSeries operator-() const {
    LetterSeries r;
    for (const auto& [n, comb] : u_) {
      for (const auto& [l, c] : comb.terms()) r.add(n, l, -c);
    }
    return r;
  }

private:
  std::map<int, LinComb<K>> u_;  // lambda degree -> letter combination
};

// Truncated series in lambda with word-polynomial coefficients.  The product
// mode is chosen per operation, never stored.
template <class K> class LambdaSeries {
public:
  explicit LambdaSeries(int n) : x_(static_cast<size_t>(n) + 1) {
    if (n < 0) throw std::invalid_argument("lambda series: negative order");
  }

  static LambdaSeries one(const Alphabet<K>& A, int n) {
    LambdaSeries s(n);
    s.x_[0] = poly_one(A);
    return s;
  }

  int order() const { return static_cast<int>(x_.size()) - 1; }
  const NcPoly<K>& coeff(int n) const { return x_.at(static_cast<size_t>(n)); }
  void set_coeff(int n, NcPoly<K> p) { x_.at(static_cast<size_t>(n)) = std::move(p); }

  LambdaSeries operator-() const {
    LambdaSeries r(order());
    for (size_t n = 0; n < x_.size(); ++n) r.x_[n] = -x_[n];
    return r;
  }
  LambdaSeries& operator+=(const LambdaSeries& o) {
    check_order(o);
    for (size_t n = 0; n < x_.size(); ++n) x_[n] += o.x_[n];
    return *this;
  }
  LambdaSeries& operator-=(const LambdaSeries& o) { return *this += -o; }
  friend LambdaSeries operator+(LambdaSeries a, const LambdaSeries& b) { return a += b; }
  friend LambdaSeries operator-(LambdaSeries a, const LambdaSeries& b) { return a -= b; }

  LambdaSeries scaled(const K& c) const {
    LambdaSeries r(order());
    for (size_t n = 0; n < x_.size(); ++n) r.x_[n] = x_[n].scaled(c);
    return r;
  }

  friend bool operator==(const LambdaSeries& a, const LambdaSeries& b) {
    return a.x_ == b.x_;
  }
  friend bool operator!=(const LambdaSeries& a, const LambdaSeries& b) {
    return !(a == b);
  }

  void check_order(const LambdaSeries& o) const {
    if (order() != o.order())
      throw std::invalid_argument("lambda series: truncation order mismatch");
  }

private:
  std::vector<NcPoly<K>> x_;
};

// lambda^1 * u for a word polynomial u.
template <class K>
LambdaSeries<K> lambda_poly(const Alphabet<K>& A, int n, const NcPoly<K>& u) {
  check_words(A, u);
  if (n < 1) throw std::invalid_argument("lambda series: order too small for lambda*u");
  LambdaSeries<K> s(n);
  s.set_coeff(1, u);
  return s;
}

template <class K>
LambdaSeries<K> to_series(const Alphabet<K>& A, const LetterSeries<K>& z, int n) {
  LambdaSeries<K> s(n);
  for (const auto& [deg, comb] : z.coeffs()) {
    for (const auto& [l, c] : comb.terms()) A.check(l);
    if (deg > n)
      throw std::invalid_argument("lambda series: truncation too small for letter series");
    s.set_coeff(deg, NcPoly<K>::from_lincomb(comb));
  }
  return s;
}

// Cauchy product in lambda with the chosen coefficient product.
template <class K>
LambdaSeries<K> bullet_mul(const Alphabet<K>& A, Mode m, const LambdaSeries<K>& x,
                           const LambdaSeries<K>& y) {
  x.check_order(y);
  const int n = x.order();
  LambdaSeries<K> r(n);
  for (int d = 0; d <= n; ++d) {
    NcPoly<K> acc;
    for (int i = 0; i <= d; ++i) acc += mul(A, m, x.coeff(i), y.coeff(d - i));
    r.set_coeff(d, std::move(acc));
  }
  return r;
}

template <class K>
LambdaSeries<K> bullet_pow(const Alphabet<K>& A, Mode m, const LambdaSeries<K>& x,
                           int p) {
  if (p < 0) throw std::invalid_argument("bullet power: negative exponent");
  LambdaSeries<K> r = LambdaSeries<K>::one(A, x.order());
  for (int k = 0; k < p; ++k) r = bullet_mul(A, m, r, x);
  return r;
}

// Inverse under the chosen product, for constant coefficient 1.
template <class K>
LambdaSeries<K> series_inverse_mode(const Alphabet<K>& A, Mode m,
                                    const LambdaSeries<K>& x) {
  if (x.coeff(0) != poly_one(A))
    throw std::invalid_argument("lambda series inverse: constant coefficient must be 1");
  const int n = x.order();
  LambdaSeries<K> y = LambdaSeries<K>::one(A, n);
  for (int d = 1; d <= n; ++d) {
    NcPoly<K> acc;
    for (int i = 1; i <= d; ++i) acc += mul(A, m, x.coeff(i), y.coeff(d - i));
    y.set_coeff(d, -acc);
  }
  return y;
}

// 1/(1 - u) with concatenation powers, for u of valuation >= 1.
template <class K>
LambdaSeries<K> geometric(const Alphabet<K>& A, const LambdaSeries<K>& u) {
  if (!u.coeff(0).is_zero())
    throw std::invalid_argument("geometric: argument must have zero constant term");
  return series_inverse_mode(A, Mode::Concat, LambdaSeries<K>::one(A, u.order()) - u);
}

template <class K>
LambdaSeries<K> geometric(const Alphabet<K>& A, const LetterSeries<K>& z, int n) {
  return geometric(A, to_series(A, z, n));
}

// f_bullet(u) = sum_{i>=1} c_i u^{bullet i} for u of valuation >= 1.
template <class K>
LambdaSeries<K> f_bullet(const Alphabet<K>& A, Mode m, const FormalSeries<K>& f,
                         const LambdaSeries<K>& u) {
  if (!u.coeff(0).is_zero())
    throw std::invalid_argument("f_bullet: argument must have zero constant term");
  const int n = u.order();
  if (f.order() < n)
    throw std::invalid_argument("f_bullet: series truncated below the lambda order");
  LambdaSeries<K> r(n);
  LambdaSeries<K> power = LambdaSeries<K>::one(A, n);
  for (int i = 1; i <= n; ++i) {
    power = bullet_mul(A, m, power, u);
    r += power.scaled(f.coeff(i));
  }
  return r;
}

template <class K>
LambdaSeries<K> exp_bullet(const Alphabet<K>& A, Mode m, const LambdaSeries<K>& u) {
  FormalSeries<K> f = series_exp(u.order() > 0 ? u.order() : 1, A.unit());
  return LambdaSeries<K>::one(A, u.order()) + f_bullet(A, m, f, u);
}

// log_bullet(1 + u), passed the u part only.
template <class K>
LambdaSeries<K> log1p_bullet(const Alphabet<K>& A, Mode m, const LambdaSeries<K>& u) {
  FormalSeries<K> f = series_log(u.order() > 0 ? u.order() : 1, A.unit());
  return f_bullet(A, m, f, u);
}

// Apply a coefficientwise linear map, i.e. extend it by M(lambda) = lambda.
template <class K, class Fn>
LambdaSeries<K> lift_map(Fn&& fn, const LambdaSeries<K>& x) {
  LambdaSeries<K> r(x.order());
  for (int n = 0; n <= x.order(); ++n) r.set_coeff(n, fn(x.coeff(n)));
  return r;
}

template <class K>
LambdaSeries<K> lift_psi(const Alphabet<K>& A, const FormalSeries<K>& f,
                         const LambdaSeries<K>& x) {
  return lift_map([&](const NcPoly<K>& p) { return psi(A, f, p); }, x);
}

// X^{*p}: integer exponents by iteration, otherwise exp_*(p log_*(X)).
// Both need constant coefficient 1; the quasi-shuffle product is meant, the
// analogous power for another mode is bullet_pow / series_inverse_mode.
template <class K>
LambdaSeries<K> star_pow_k(const Alphabet<K>& A, const LambdaSeries<K>& x, const K& p) {
  if (x.coeff(0) != poly_one(A))
    throw std::invalid_argument("star power: constant coefficient must be 1");
  LambdaSeries<K> lg = log1p_bullet(A, Mode::QuasiShuffle,
                                    x - LambdaSeries<K>::one(A, x.order()));
  return exp_bullet(A, Mode::QuasiShuffle, lg.scaled(p));
}

template <class K>
LambdaSeries<K> star_pow(const Alphabet<K>& A, const LambdaSeries<K>& x,
                         const Rational& p) {
  if (p.den() == 1) {
    long e = static_cast<long>(p.num());
    LambdaSeries<K> base =
        e < 0 ? series_inverse_mode(A, Mode::QuasiShuffle, x) : x;
    return bullet_pow(A, Mode::QuasiShuffle, base, static_cast<int>(e < 0 ? -e : e));
  }
  return star_pow_k(A, x, RingTraits<K>::embed(A.unit(), p));
}

// Outcome of one identity check: on failure, the lowest differing lambda
// degree and the difference of the two coefficients there.
template <class K> struct IdentityCheck {
  bool pass = true;
  int degree = -1;
  NcPoly<K> diff;
};

template <class K>
IdentityCheck<K> first_difference(const LambdaSeries<K>& lhs, const LambdaSeries<K>& rhs) {
  lhs.check_order(rhs);
  for (int n = 0; n <= lhs.order(); ++n) {
    if (lhs.coeff(n) != rhs.coeff(n)) {
      IdentityCheck<K> c;
      c.pass = false;
      c.degree = n;
      c.diff = lhs.coeff(n) - rhs.coeff(n);
      return c;
    }
  }
  return {};
}

template <class K>
IdentityCheck<K> merge_checks(const IdentityCheck<K>& a, const IdentityCheck<K>& b) {
  return a.pass ? b : a;
}

// ---- The identity catalog -------------------------------------------------

// Psi_f(1/(1-lz)) = 1/(1 - f_diamond(lz)).
template <class K>
IdentityCheck<K> psi_geometric_check(const Alphabet<K>& A, const FormalSeries<K>& f,
                                     const LetterSeries<K>& z, int n) {
  LambdaSeries<K> u = to_series(A, z, n);
  LambdaSeries<K> lhs = lift_psi(A, f, geometric(A, u));
  LambdaSeries<K> rhs = geometric(A, f_bullet(A, Mode::Diamond, f, u));
  return first_difference(lhs, rhs);
}

// exp_*(log_diamond(1+lz)) = 1/(1-lz) and exp_star(-log_diamond(1+lz)) = 1/(1+lz).
template <class K>
IdentityCheck<K> exp_log_check(const Alphabet<K>& A, const LetterSeries<K>& z, int n) {
  LambdaSeries<K> u = to_series(A, z, n);
  LambdaSeries<K> lg = log1p_bullet(A, Mode::Diamond, u);
  IdentityCheck<K> c1 = first_difference(
      exp_bullet(A, Mode::QuasiShuffle, lg), geometric(A, u));
  IdentityCheck<K> c2 = first_difference(
      exp_bullet(A, Mode::QuasiShuffleStar, -lg), geometric(A, -u));
  return merge_checks(c1, c2);
}

// exp_*(lz) = (2 - exp_diamond(lz))^{-1}.
template <class K>
IdentityCheck<K> two_minus_exp_check(const Alphabet<K>& A, const LetterSeries<K>& z,
                                     int n) {
  LambdaSeries<K> u = to_series(A, z, n);
  LambdaSeries<K> lhs = exp_bullet(A, Mode::QuasiShuffle, u);
  LambdaSeries<K> den =
      LambdaSeries<K>::one(A, n).scaled(A.scalar(Rational(2))) -
      exp_bullet(A, Mode::Diamond, u);
  return first_difference(lhs, series_inverse_mode(A, Mode::Concat, den));
}

// H_p(1/(1-lz)) = (1/(1-lz))^{*p}.
template <class K>
IdentityCheck<K> h_power_check(const Alphabet<K>& A, const Rational& p,
                               const LetterSeries<K>& z, int n) {
  LambdaSeries<K> g = geometric(A, to_series(A, z, n));
  K pk = RingTraits<K>::embed(A.unit(), p);
  LambdaSeries<K> lhs =
      lift_map([&](const NcPoly<K>& q) { return h_power(A, pk, q); }, g);
  return first_difference(lhs, star_pow(A, g, p));
}

// Psi_g(1/(1+lz)) * Psi_f(1/(1-lz))^{*p} = 1 with g = ((1+t)^{-p}-1) o f o (-t).
template <class K>
IdentityCheck<K> psi_inverse_check(const Alphabet<K>& A, const Rational& p,
                                   const FormalSeries<K>& f, const LetterSeries<K>& z,
                                   int n) {
  LambdaSeries<K> u = to_series(A, z, n);
  FormalSeries<K> inner = series_compose(f, series_neg_t(f.order(), A.unit()));
  FormalSeries<K> g = series_compose(
      series_pow1p(f.order(), RingTraits<K>::embed(A.unit(), -p), A.unit()), inner);
  LambdaSeries<K> left = lift_psi(A, g, geometric(A, -u));
  LambdaSeries<K> right = star_pow(A, lift_psi(A, f, geometric(A, u)), p);
  return first_difference(bullet_mul(A, Mode::QuasiShuffle, left, right),
                          LambdaSeries<K>::one(A, n));
}

// Sigma^s(1/(1-lz)) * Sigma^{1-s}(1/(1+lz)) = 1.
template <class K>
IdentityCheck<K> sigma_inverse_check(const Alphabet<K>& A, const K& s,
                                     const LetterSeries<K>& z, int n) {
  LambdaSeries<K> u = to_series(A, z, n);
  K one_minus_s = RingTraits<K>::embed(A.unit(), Rational(1)) - s;
  LambdaSeries<K> left =
      lift_map([&](const NcPoly<K>& q) { return sigma_power(A, s, q); },
               geometric(A, u));
  LambdaSeries<K> right =
      lift_map([&](const NcPoly<K>& q) { return sigma_power(A, one_minus_s, q); },
               geometric(A, -u));
  return first_difference(bullet_mul(A, Mode::QuasiShuffle, left, right),
                          LambdaSeries<K>::one(A, n));
}

// 1/(1-ly) * 1/(1-lz) = 1/(1-ly-lz-l^2 y diamond z)  and the T-image
// 1/(1+ly) star 1/(1+lz) = 1/((1+ly) diamond (1+lz)).
template <class K>
IdentityCheck<K> fraction_product_check(const Alphabet<K>& A, const LetterSeries<K>& y,
                                        const LetterSeries<K>& z, int n) {
  LambdaSeries<K> uy = to_series(A, y, n), uz = to_series(A, z, n);
  LambdaSeries<K> one = LambdaSeries<K>::one(A, n);

  LambdaSeries<K> lhs1 =
      bullet_mul(A, Mode::QuasiShuffle, geometric(A, uy), geometric(A, uz));
  LambdaSeries<K> den1 = one - uy - uz - bullet_mul(A, Mode::Diamond, uy, uz);
  IdentityCheck<K> c1 = first_difference(lhs1, series_inverse_mode(A, Mode::Concat, den1));

  LambdaSeries<K> lhs2 =
      bullet_mul(A, Mode::QuasiShuffleStar, geometric(A, -uy), geometric(A, -uz));
  LambdaSeries<K> den2 = bullet_mul(A, Mode::Diamond, one + uy, one + uz);
  IdentityCheck<K> c2 = first_difference(lhs2, series_inverse_mode(A, Mode::Concat, den2));
  return merge_checks(c1, c2);
}

// Sigma^r(1/(1-lz)) * 1/(1+r lz) = 1/(1-(1-r) lz).
template <class K>
IdentityCheck<K> sigma_interpolation_check(const Alphabet<K>& A, const K& r,
                                           const LetterSeries<K>& z, int n) {
  LambdaSeries<K> u = to_series(A, z, n);
  K one_minus_r = RingTraits<K>::embed(A.unit(), Rational(1)) - r;
  LambdaSeries<K> left =
      lift_map([&](const NcPoly<K>& q) { return sigma_power(A, r, q); },
               geometric(A, u));
  LambdaSeries<K> lhs =
      bullet_mul(A, Mode::QuasiShuffle, left, geometric(A, -u.scaled(r)));
  return first_difference(lhs, geometric(A, u.scaled(one_minus_r)));
}

// Sigma(1/(1-l ab)) = 1/(1-l ab) * Sigma(1/(1-l a diamond b)).
template <class K>
IdentityCheck<K> double_fraction_check(const Alphabet<K>& A, const Letter& a,
                                       const Letter& b, int n) {
  A.check(a);
  A.check(b);
  NcPoly<K> ab = NcPoly<K>::term(Word({a, b}), A.unit());
  LambdaSeries<K> gab = geometric(A, lambda_poly(A, n, ab));
  NcPoly<K> fused = NcPoly<K>::from_lincomb(A.diamond(a, b));
  LambdaSeries<K> gfused = geometric(A, lambda_poly(A, n, fused));
  auto lift_sigma = [&](const LambdaSeries<K>& x) {
    return lift_map([&](const NcPoly<K>& q) { return sigma(A, q); }, x);
  };
  return first_difference(
      lift_sigma(gab),
      bullet_mul(A, Mode::QuasiShuffle, gab, lift_sigma(gfused)));
}

// exp_bullet(l(w+v)) = exp_bullet(lw) bullet exp_bullet(lv).
template <class K>
IdentityCheck<K> exp_sum_check(const Alphabet<K>& A, Mode m, const NcPoly<K>& w,
                               const NcPoly<K>& v, int n) {
  LambdaSeries<K> lhs = exp_bullet(A, m, lambda_poly(A, n, w + v));
  LambdaSeries<K> rhs = bullet_mul(A, m, exp_bullet(A, m, lambda_poly(A, n, w)),
                                   exp_bullet(A, m, lambda_poly(A, n, v)));
  return first_difference(lhs, rhs);
}

// ---- Named dispatch (CLI surface) -----------------------------------------

template <class K> struct IdentityOptions {
  int trunc = 5;
  Rational s{1};
  Rational p{2};
  Rational r{1, 2};
  LetterSeries<K> z;
  LetterSeries<K> y;
  std::optional<Letter> a, b;
};

template <class K>
IdentityCheck<K> check_identity(const Alphabet<K>& A, const std::string& name,
                                const IdentityOptions<K>& opt) {
  if (opt.trunc < 1)
    throw std::invalid_argument("identity check: truncation order must be >= 1");
  const int n = opt.trunc;
  auto need_z = [&]() -> const LetterSeries<K>& {
    if (opt.z.empty())
      throw std::invalid_argument("identity check: " + name + " needs z");
    return opt.z;
  };
  auto embed = [&](const Rational& q) { return RingTraits<K>::embed(A.unit(), q); };
  if (name == "psi-geometric") {
    FormalSeries<K> f = series_geometric(n, embed(opt.s), A.unit());
    return psi_geometric_check(A, f, need_z(), n);
  }
  if (name == "exp-log") return exp_log_check(A, need_z(), n);
  if (name == "two-minus-exp") return two_minus_exp_check(A, need_z(), n);
  if (name == "h-power") return h_power_check(A, opt.p, need_z(), n);
  if (name == "psi-inverse") {
    FormalSeries<K> f = series_geometric(n, embed(opt.s), A.unit());
    return psi_inverse_check(A, opt.p, f, need_z(), n);
  }
  if (name == "sigma-inverse") return sigma_inverse_check(A, embed(opt.s), need_z(), n);
  if (name == "fraction-product") {
    if (opt.y.empty())
      throw std::invalid_argument("identity check: fraction-product needs y");
    return fraction_product_check(A, opt.y, need_z(), n);
  }
  if (name == "sigma-interpolation")
    return sigma_interpolation_check(A, embed(opt.r), need_z(), n);
  if (name == "double-fraction") {
    if (!opt.a || !opt.b)
      throw std::invalid_argument("identity check: double-fraction needs letters a and b");
    return double_fraction_check(A, *opt.a, *opt.b, n);
  }
  if (name == "exp-sum") {
    if (opt.y.empty())
      throw std::invalid_argument("identity check: exp-sum needs y");
    NcPoly<K> w = to_series(A, need_z(), n).coeff(1);
    NcPoly<K> v = to_series(A, opt.y, n).coeff(1);
    IdentityCheck<K> c = exp_sum_check(A, Mode::QuasiShuffle, w, v, n);
    c = merge_checks(c, exp_sum_check(A, Mode::QuasiShuffleStar, w, v, n));
    return merge_checks(c, exp_sum_check(A, Mode::Diamond, w, v, n));
  }
  throw std::invalid_argument("identity check: unknown identity " + name);
}

inline const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = {
      "psi-geometric",  "exp-log",          "two-minus-exp",
      "h-power",        "psi-inverse",      "sigma-inverse",
      "fraction-product", "sigma-interpolation", "double-fraction",
      "exp-sum"};
  return names;
}

} // namespace qshuffle
