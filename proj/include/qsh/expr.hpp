#pragma once

#include "qsh/nc_poly.hpp"
#include "qsh/poly_scalar.hpp"
#include "qsh/qseries.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qshuffle {

// Parse failure; offset is the byte position of the offending token.
class ExprError : public std::runtime_error {
public:
  ExprError(const std::string& what, size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  size_t offset() const { return offset_; }

private:
  size_t offset_;
};

struct ExprSymbol {
  std::string name;
  int exp = 1;
  size_t offset = 0;
};

// One additive term: sign-folded rational factor, symbolic factors, and the
// word's letters (empty list is the unit word).
struct ExprTerm {
  Rational coeff{1};
  std::vector<ExprSymbol> symbols;
  std::vector<Letter> letters;
};

using ExprTerms = std::vector<ExprTerm>;

// Grammar:  expr := term (('+'|'-') term)*
//           term := (factor '*')* word
//           word := letter+ | '1'
//           letter := 'z' int [',' int]
//           factor := rational | name ['^' int]
// Whitespace separates letters and may surround operators.
inline ExprTerms parse_expr(std::string_view s) {
  ExprTerms terms;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto is_digit = [&](size_t p) {
    return p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]));
  };
  auto is_alpha = [&](size_t p) {
    return p < s.size() && std::isalpha(static_cast<unsigned char>(s[p]));
  };
  auto read_digits = [&](const char* what) {
    const size_t start = pos;
    while (is_digit(pos)) ++pos;
    if (pos == start) throw ExprError(std::string("expected ") + what, start);
    return std::string(s.substr(start, pos - start));
  };

  auto parse_term = [&](int sign) {
    ExprTerm t;
    t.coeff = Rational(sign);
    bool have_word = false;
    for (;;) {
      skip_ws();
      if (pos >= s.size() || s[pos] == '+' || s[pos] == '-') break;
      const size_t start = pos;
      if (is_digit(pos)) {
        if (have_word) throw ExprError("expected '+' or '-' before a new term", start);
        std::string tok = read_digits("a number");
        if (pos < s.size() && s[pos] == '/') {
          ++pos;
          tok += "/" + read_digits("a denominator");
        }
        skip_ws();
        if (pos < s.size() && s[pos] == '*') {
          ++pos;
          Rational v;
          try {
            v = Rational::parse(tok);
          } catch (const std::exception& e) {
            throw ExprError(e.what(), start);
          }
          t.coeff *= v;
          continue;
        }
        if (tok == "1") {
          have_word = true;
          break;
        }
        throw ExprError("expected a word, got bare scalar '" + tok + "'", start);
      }
      if (is_alpha(pos)) {
        size_t name_end = pos;
        while (is_alpha(name_end)) ++name_end;
        const std::string name(s.substr(pos, name_end - pos));
        if (name[0] == 'z' && (name.size() == 1 && is_digit(name_end))) {
          ++pos;
          const std::string idx = read_digits("a letter index");
          std::uint32_t i = 0, j = 0;
          try {
            i = static_cast<std::uint32_t>(std::stoul(idx));
          } catch (const std::exception&) {
            throw ExprError("letter index out of range", start);
          }
          if (i < 1) throw ExprError("letter index must be at least 1", start);
          if (pos < s.size() && s[pos] == ',') {
            ++pos;
            const std::string pair = read_digits("a pair index");
            try {
              j = static_cast<std::uint32_t>(std::stoul(pair));
            } catch (const std::exception&) {
              throw ExprError("pair index out of range", start);
            }
          }
          t.letters.push_back(Letter{i, j});
          have_word = true;
          continue;
        }
        if (have_word) throw ExprError("expected '+' or '-' before a new term", start);
        pos = name_end;
        int exp = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          const std::string e = read_digits("an exponent");
          try {
            exp = std::stoi(e);
          } catch (const std::exception&) {
            throw ExprError("exponent out of range", start);
          }
        }
        skip_ws();
        if (pos >= s.size() || s[pos] != '*')
          throw ExprError("expected '*' after scalar factor '" + name + "'", pos);
        ++pos;
        t.symbols.push_back(ExprSymbol{name, exp, start});
        continue;
      }
      throw ExprError(std::string("unexpected character '") + s[pos] + "'", pos);
    }
    if (!have_word) throw ExprError("expected a word", pos);
    terms.push_back(std::move(t));
  };

  skip_ws();
  int sign = 1;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    if (s[pos] == '-') sign = -1;
    ++pos;
  }
  parse_term(sign);
  for (;;) {
    skip_ws();
    if (pos >= s.size()) break;
    if (s[pos] == '+') sign = 1;
    else if (s[pos] == '-') sign = -1;
    else throw ExprError("expected '+' or '-'", pos);
    ++pos;
    parse_term(sign);
  }
  return terms;
}

inline NcPoly<Rational> bind_rational(const ExprTerms& ts) {
  NcPoly<Rational> r;
  for (const ExprTerm& t : ts) {
    if (!t.symbols.empty())
      throw ExprError("coefficient ring has no variable '" + t.symbols[0].name + "'",
                      t.symbols[0].offset);
    r.add_term(Word(t.letters), t.coeff);
  }
  return r;
}

// allowed empty means any variable name is accepted.
inline NcPoly<PolyScalar> bind_poly(const ExprTerms& ts,
                                    const std::vector<std::string>& allowed) {
  NcPoly<PolyScalar> r;
  for (const ExprTerm& t : ts) {
    PolyScalar c = PolyScalar::constant(t.coeff);
    for (const ExprSymbol& f : t.symbols) c *= PolyScalar::var(f.name, f.exp);
    if (!allowed.empty()) {
      try {
        c = c.with_varset(allowed);
      } catch (const std::exception&) {
        throw ExprError("variable not in the declared set", t.symbols[0].offset);
      }
    }
    r.add_term(Word(t.letters), c);
  }
  return r;
}

inline NcPoly<QSeries> bind_qseries(const ExprTerms& ts, int order) {
  NcPoly<QSeries> r;
  for (const ExprTerm& t : ts) {
    QSeries c = QSeries::constant(t.coeff, order);
    for (const ExprSymbol& f : t.symbols) {
      if (f.name != "q")
        throw ExprError("q-series ring has no variable '" + f.name + "'", f.offset);
      c *= f.exp <= order ? QSeries::q(order, f.exp) : QSeries(order);
    }
    r.add_term(Word(t.letters), c);
  }
  return r;
}

namespace detail {

// Appends "scalar*word" with the conventions: unit scalar is omitted before a
// nonempty word, the empty word prints as "1".
inline void append_term(std::string& out, const std::string& scalar, bool scalar_is_one,
                        const Word& w, bool with_pair) {
  if (w.empty()) {
    if (scalar_is_one) out += "1";
    else out += scalar + "*1";
    return;
  }
  if (!scalar_is_one) out += scalar + "*";
  out += w.str(with_pair);
}

inline void append_signed(std::string& out, bool& first, const Rational& a,
                          const std::string& mono, const Word& w, bool with_pair) {
  Rational mag = a;
  if (first) {
    first = false;
    if (a < Rational(0)) {
      // Sign folds into the leading scalar token.
      std::string scalar = mag.str();
      if (!mono.empty()) scalar += "*" + mono;
      append_term(out, scalar, false, w, with_pair);
      return;
    }
  } else {
    out += a < Rational(0) ? " - " : " + ";
    if (a < Rational(0)) mag = -a;
  }
  std::string scalar;
  bool is_one = false;
  if (mag.is_one()) {
    if (mono.empty()) is_one = true;
    else scalar = mono;
  } else {
    scalar = mag.str();
    if (!mono.empty()) scalar += "*" + mono;
  }
  append_term(out, scalar, is_one, w, with_pair);
}

} // namespace detail

// The printers below emit exactly the grammar above.  Terms run from the
// longest word down (leading-term convention); zero prints as "0*1".
inline std::string expr_str(const NcPoly<Rational>& x, bool with_pair = false) {
  if (x.terms().empty()) return "0*1";
  std::string out;
  bool first = true;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it)
    detail::append_signed(out, first, it->second, "", it->first, with_pair);
  return out;
}

// Polynomial coefficients split into one printed term per monomial.
inline std::string expr_str(const NcPoly<PolyScalar>& x, bool with_pair = false) {
  std::string out;
  bool first = true;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    const auto& c = it->second;
    for (auto mt = c.terms().rbegin(); mt != c.terms().rend(); ++mt)
      detail::append_signed(out, first, mt->second, PolyScalar::monomial_str(mt->first),
                            it->first, with_pair);
  }
  if (out.empty()) return "0*1";
  return out;
}

// q-series coefficients split by powers of q, ascending.
inline std::string expr_str(const NcPoly<QSeries>& x, bool with_pair = false) {
  std::string out;
  bool first = true;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    const QSeries& c = it->second;
    for (int k = 0; k <= c.order(); ++k) {
      if (c.coeff(k).is_zero()) continue;
      const std::string mono =
          k == 0 ? "" : (k == 1 ? "q" : "q^" + std::to_string(k));
      detail::append_signed(out, first, c.coeff(k), mono, it->first, with_pair);
    }
  }
  if (out.empty()) return "0*1";
  return out;
}

} // namespace qshuffle
