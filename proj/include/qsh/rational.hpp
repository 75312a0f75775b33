#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qshuffle {

using Int = boost::multiprecision::cpp_int;

// Exact rational scalar.  Thin wrapper over boost cpp_rational pinning the
// parse/print surface: "n", "-n", "n/d", "-n/d" with ASCII minus, denominator
// always positive, always lowest terms.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  explicit Rational(const Int& n) : v_(n) {}
  Rational(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    v_ = Backend(num);
    v_ /= Backend(den);
  }

  static Rational parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("rational: empty literal");
    auto bad = [&] {
      return std::invalid_argument("rational: bad literal '" + std::string(s) + "'");
    };
    size_t slash = s.find('/');
    auto parse_int = [&](std::string_view t) {
      if (t.empty()) throw bad();
      size_t k = 0;
      if (t[0] == '-' || t[0] == '+') k = 1;
      if (k == t.size()) throw bad();
      for (size_t m = k; m < t.size(); ++m)
        if (t[m] < '0' || t[m] > '9') throw bad();
      Int v{std::string(t.substr(k))};
      return t[0] == '-' ? Int(-v) : v;
    };
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    Int n = parse_int(s.substr(0, slash));
    Int d = parse_int(s.substr(slash + 1));
    if (d == 0) throw std::domain_error("rational: zero denominator");
    return Rational(n, d);
  }

  Int num() const { return boost::multiprecision::numerator(v_); }
  Int den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return den() == 1; }

  Rational operator-() const { return Rational(Backend(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }

  // e may be negative if the value is nonzero.
  Rational pow(long e) const {
    if (e < 0) {
      if (is_zero()) throw std::domain_error("rational: negative power of zero");
      return Rational(1) / pow(-e);
    }
    Rational r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  double to_double() const { return v_.convert_to<double>(); }

  std::string str() const {
    std::string s = num().str();
    if (den() != 1) s += "/" + den().str();
    return s;
  }

private:
  using Backend = boost::multiprecision::cpp_rational;
  explicit Rational(Backend v) : v_(std::move(v)) {}
  Backend v_;
};

inline Int binomial_int(const Int& n, long k) {
  if (k < 0) return 0;
  Int r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

// binom(p, k) for arbitrary rational p: p(p-1)...(p-k+1)/k!.
inline Rational binomial(const Rational& p, long k) {
  if (k < 0) return Rational(0);
  Rational r(1);
  for (long i = 0; i < k; ++i) {
    r *= (p - Rational(i));
    r /= Rational(i + 1);
  }
  return r;
}

inline Rational factorial(long n) {
  Rational r(1);
  for (long i = 2; i <= n; ++i) r *= Rational(i);
  return r;
}

} // namespace qshuffle
