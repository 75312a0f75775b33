#pragma once

#include "qsh/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qshuffle {

// Variables print and sort in a fixed global order: the named parameters
// first, then anything else alphabetically.  Keeps output deterministic
// across runs regardless of construction order.
inline int variable_rank(const std::string& name) {
  static const char* ranked[] = {"p", "q", "r", "s", "eps"};
  for (int i = 0; i < 5; ++i)
    if (name == ranked[i]) return i;
  return 5;
}

inline bool variable_before(const std::string& a, const std::string& b) {
  int ra = variable_rank(a), rb = variable_rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

// Monomial: variable -> positive exponent, entries kept sorted by
// variable_before.
using Monomial = std::vector<std::pair<std::string, int>>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (i == a.size()) return true;   // a ran out: exponent 0 < b's positive
      if (j == b.size()) return false;
      if (a[i].first != b[j].first) {
        // The earlier-ranked variable has exponent 0 in the other monomial.
        return variable_before(a[i].first, b[j].first) ? false : true;
      }
      if (a[i].second != b[j].second) return a[i].second < b[j].second;
      ++i, ++j;
    }
    return false;
  }
};

// Sparse multivariate polynomial over Rational.  Used wherever a scalar has
// to stay symbolic (deformation parameter eps, interpolation parameter r,
// series parameters p, s).  An optional declared variable set restricts which
// names may appear; mixing values with different declared sets throws.
class PolyScalar {
public:
  PolyScalar() = default;
  PolyScalar(long n) { if (n != 0) terms_[Monomial{}] = Rational(n); }
  PolyScalar(const Rational& c) { if (!c.is_zero()) terms_[Monomial{}] = c; }

  static PolyScalar constant(const Rational& c) { return PolyScalar(c); }

  static PolyScalar var(const std::string& name, int exp = 1) {
    PolyScalar p;
    if (exp < 0) throw std::invalid_argument("poly: negative exponent");
    if (exp == 0) return PolyScalar(1);
    p.terms_[Monomial{{name, exp}}] = Rational(1);
    return p;
  }

  PolyScalar with_varset(std::vector<std::string> vars) const {
    PolyScalar p = *this;
    std::sort(vars.begin(), vars.end());
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m)
        if (!std::binary_search(vars.begin(), vars.end(), v))
          throw std::invalid_argument("poly: variable '" + v + "' not in declared set");
    p.vars_ = std::make_shared<const std::vector<std::string>>(std::move(vars));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::domain_error("poly: not a constant");
    return terms_.begin()->second;
  }

  PolyScalar operator-() const {
    PolyScalar p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }

  PolyScalar& operator+=(const PolyScalar& o) {
    merge_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  PolyScalar& operator-=(const PolyScalar& o) {
    merge_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  PolyScalar& operator*=(const PolyScalar& o) { *this = *this * o; return *this; }

  friend PolyScalar operator+(PolyScalar a, const PolyScalar& b) { return a += b; }
  friend PolyScalar operator-(PolyScalar a, const PolyScalar& b) { return a -= b; }

  friend PolyScalar operator*(const PolyScalar& a, const PolyScalar& b) {
    check_compatible(a, b);
    PolyScalar r;
    r.vars_ = a.vars_ ? a.vars_ : b.vars_;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
  }

  // Division is only defined by nonzero constants.
  PolyScalar& operator/=(const Rational& c) {
    if (c.is_zero()) throw std::domain_error("poly: division by zero");
    for (auto& [m, v] : terms_) v /= c;
    return *this;
  }
  PolyScalar& operator/=(const PolyScalar& o) {
    if (!o.is_constant())
      throw std::domain_error("poly: division by non-constant polynomial");
    return *this /= o.constant_value();
  }

  PolyScalar pow(long e) const {
    if (e < 0) {
      if (!is_constant()) throw std::domain_error("poly: negative power of non-constant");
      return PolyScalar(constant_value().pow(e));
    }
    PolyScalar r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const PolyScalar& a, const PolyScalar& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const PolyScalar& a, const PolyScalar& b) { return !(a == b); }

  // Total substitution; every variable that occurs must be bound.
  Rational substitute(const std::map<std::string, Rational>& bind) const {
    Rational r(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [v, e] : m) {
        auto it = bind.find(v);
        if (it == bind.end())
          throw std::invalid_argument("poly: unbound variable '" + v + "'");
        t *= it->second.pow(e);
      }
      r += t;
    }
    return r;
  }

  // Partial substitution: bound variables are replaced, others stay symbolic.
  PolyScalar substitute_partial(const std::map<std::string, Rational>& bind) const {
    PolyScalar r;
    r.vars_ = vars_;
    for (const auto& [m, c] : terms_) {
      Rational coeff = c;
      Monomial rest;
      for (const auto& [v, e] : m) {
        auto it = bind.find(v);
        if (it == bind.end()) rest.emplace_back(v, e);
        else coeff *= it->second.pow(e);
      }
      r.add_term(rest, coeff);
    }
    return r;
  }

  const std::map<Monomial, Rational, MonomialLess>& terms() const { return terms_; }

  std::vector<std::string> variables() const {
    std::set<std::string> s;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m) s.insert(v);
    return {s.begin(), s.end()};
  }

  static std::string monomial_str(const Monomial& m) {
    std::string s;
    for (const auto& [v, e] : m) {
      if (!s.empty()) s += "*";
      s += v;
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  // Terms print leading monomial first; "1/2*r^2*eps + 3" style.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      Rational a = c;
      if (s.empty()) {
        if (a < Rational(0)) { s += "-"; a = -a; }
      } else {
        s += a < Rational(0) ? " - " : " + ";
        if (a < Rational(0)) a = -a;
      }
      std::string ms = monomial_str(m);
      if (ms.empty()) s += a.str();
      else if (a.is_one()) s += ms;
      else s += a.str() + "*" + ms;
    }
    return s;
  }

private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) terms_.emplace(m, c);
    else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  static Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && variable_before(a[i].first, b[j].first)))
        r.push_back(a[i++]);
      else if (i == a.size() || variable_before(b[j].first, a[i].first))
        r.push_back(b[j++]);
      else {
        r.emplace_back(a[i].first, a[i].second + b[j].second);
        ++i, ++j;
      }
    }
    return r;
  }

  static void check_compatible(const PolyScalar& a, const PolyScalar& b) {
    if (a.vars_ && b.vars_ && *a.vars_ != *b.vars_)
      throw std::invalid_argument("poly: mixed declared variable sets");
  }

  void merge_vars(const PolyScalar& o) {
    check_compatible(*this, o);
    if (!vars_) vars_ = o.vars_;
  }

  std::map<Monomial, Rational, MonomialLess> terms_;
  std::shared_ptr<const std::vector<std::string>> vars_;
};

} // namespace qshuffle
