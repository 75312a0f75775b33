#pragma once

#include "qsh/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qshuffle {

// Truncated power series in q with rational coefficients, all arithmetic
// modulo q^(M+1).  The truncation order is part of the value; combining
// series of different order throws.
class QSeries {
public:
  explicit QSeries(int order) : c_(check_order(order) + 1) {}

  static QSeries constant(const Rational& a, int order) {
    QSeries s(order);
    s.c_[0] = a;
    return s;
  }
  static QSeries one(int order) { return constant(Rational(1), order); }
  static QSeries q(int order, int power = 1) {
    QSeries s(order);
    if (power < 0) throw std::invalid_argument("qseries: negative power of q");
    if (power <= order) s.c_[power] = Rational(1);
    return s;
  }
  static QSeries one_minus_q(int order) {
    QSeries s = one(order);
    if (order >= 1) s.c_[1] = Rational(-1);
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }

  const Rational& coeff(int k) const {
    if (k < 0 || k > order()) throw std::out_of_range("qseries: coefficient index");
    return c_[k];
  }
  void set_coeff(int k, const Rational& a) {
    if (k < 0 || k > order()) throw std::out_of_range("qseries: coefficient index");
    c_[k] = a;
  }

  bool is_zero() const {
    for (const auto& a : c_)
      if (!a.is_zero()) return false;
    return true;
  }

  QSeries operator-() const {
    QSeries s = *this;
    for (auto& a : s.c_) a = -a;
    return s;
  }

  QSeries& operator+=(const QSeries& o) {
    match(o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  QSeries& operator-=(const QSeries& o) {
    match(o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  QSeries& operator*=(const QSeries& o) { *this = *this * o; return *this; }

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    a.match(b);
    QSeries r(a.order());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; i + j < r.c_.size(); ++j)
        r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  QSeries& operator/=(const Rational& a) {
    if (a.is_zero()) throw std::domain_error("qseries: division by zero");
    for (auto& x : c_) x /= a;
    return *this;
  }

  // Reciprocal; requires an invertible constant term.
  QSeries inverse() const {
    if (c_[0].is_zero())
      throw std::domain_error("qseries: reciprocal of series with zero constant term");
    QSeries r(order());
    r.c_[0] = Rational(1) / c_[0];
    for (int k = 1; k <= order(); ++k) {
      Rational acc(0);
      for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
      r.c_[k] = -acc / c_[0];
    }
    return r;
  }

  QSeries pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QSeries r = one(order()), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.order() == b.order() && a.c_ == b.c_;
  }
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

  // Ascending powers, zero terms skipped: "q + q^2 - q^3".
  std::string str() const {
    std::string s;
    for (int k = 0; k <= order(); ++k) {
      if (c_[k].is_zero()) continue;
      Rational a = c_[k];
      if (s.empty()) {
        if (a < Rational(0)) { s += "-"; a = -a; }
      } else {
        s += a < Rational(0) ? " - " : " + ";
        if (a < Rational(0)) a = -a;
      }
      std::string mono = k == 0 ? "" : (k == 1 ? "q" : "q^" + std::to_string(k));
      if (mono.empty()) s += a.str();
      else if (a.is_one()) s += mono;
      else s += a.str() + "*" + mono;
    }
    return s.empty() ? "0" : s;
  }

private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("qseries: negative truncation order");
    return order;
  }
  void match(const QSeries& o) const {
    if (order() != o.order())
      throw std::invalid_argument("qseries: truncation order mismatch");
  }

  std::vector<Rational> c_;
};

} // namespace qshuffle
