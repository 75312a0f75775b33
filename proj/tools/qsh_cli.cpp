#include "qsh/evaluators.hpp"
#include "qsh/expr.hpp"
#include "qsh/hopf.hpp"
#include "qsh/lambda_series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <complex>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace qshuffle;
using json = nlohmann::ordered_json;

// Exit codes: 0 success, 1 failed check/identity, 2 bad configuration or
// input (reported before any partial output).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CoeffKind { Rat, Poly, QSer };

struct Config {
  AlphabetKind kind = AlphabetKind::Z;
  std::uint32_t modulus = 0;
  CoeffKind coeff = CoeffKind::Rat;
  std::vector<std::string> poly_vars;
  int qorder = 20;
  int trunc = 5;
  bool json_out = false;
  long seed = 0;
};

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t end = s.find(sep, start);
    if (end == std::string::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

Rational parse_rat(const std::string& s, const std::string& where) {
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw ConfigError("expected a rational in " + where + ", got '" + s + "'");
  }
}

long parse_long(const std::string& s, const std::string& where) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer in " + where + ", got '" + s + "'");
  }
}

Config resolve_config(const std::string& alphabet, const std::string& coeff, int trunc,
                      const std::string& format, long seed) {
  Config c;
  c.trunc = trunc;
  c.seed = seed;
  if (format == "json") c.json_out = true;
  else if (format != "text") throw ConfigError("unknown --format '" + format + "'");

  if (alphabet == "z") c.kind = AlphabetKind::Z;
  else if (alphabet == "q") c.kind = AlphabetKind::Q;
  else if (alphabet == "zero") c.kind = AlphabetKind::Zero;
  else if (alphabet.rfind("euler:", 0) == 0) {
    c.kind = AlphabetKind::Euler;
    c.modulus = static_cast<std::uint32_t>(
        parse_long(alphabet.substr(6), "--alphabet euler:<r>"));
    if (c.modulus < 2) throw ConfigError("euler alphabet needs a modulus >= 2");
  } else {
    throw ConfigError("unknown --alphabet '" + alphabet + "'");
  }

  std::string ck = coeff;
  if (ck.empty()) ck = c.kind == AlphabetKind::Q ? "poly:eps" : "rational";
  if (ck == "rational") {
    c.coeff = CoeffKind::Rat;
  } else if (ck == "poly" || ck.rfind("poly:", 0) == 0) {
    c.coeff = CoeffKind::Poly;
    if (ck.size() > 5) {
      for (auto& v : split_list(ck.substr(5), ',')) {
        if (v.empty()) throw ConfigError("empty variable name in --coeff '" + ck + "'");
        c.poly_vars.push_back(v);
      }
    }
  } else if (ck.rfind("qseries:", 0) == 0) {
    c.coeff = CoeffKind::QSer;
    long m = parse_long(ck.substr(8), "--coeff qseries:<M>");
    if (m < 0) throw ConfigError("qseries truncation order must be >= 0");
    c.qorder = static_cast<int>(m);
  } else {
    throw ConfigError("unknown --coeff '" + ck + "'");
  }

  if (c.kind == AlphabetKind::Q) {
    if (c.coeff == CoeffKind::Rat)
      throw ConfigError("alphabet q needs --coeff poly:<vars> or qseries:<M>");
    if (c.coeff == CoeffKind::Poly && !c.poly_vars.empty()) {
      bool has = false;
      for (const auto& v : c.poly_vars) has = has || v == "eps";
      if (!has)
        throw ConfigError("alphabet q uses the variable eps; include it in --coeff poly:...");
    }
  }
  return c;
}

// ---- typed sessions --------------------------------------------------------

template <class K> struct Session {
  Config cfg;
  Alphabet<K> A;

  NcPoly<K> bind(const ExprTerms& ts) const {
    if constexpr (std::is_same_v<K, Rational>) {
      (void)this;
      return bind_rational(ts);
    } else if constexpr (std::is_same_v<K, PolyScalar>) {
      return bind_poly(ts, cfg.poly_vars);
    } else {
      return bind_qseries(ts, cfg.qorder);
    }
  }
  NcPoly<K> parse(const std::string& s) const {
    NcPoly<K> x = bind(parse_expr(s));
    check_words(A, x);
    return x;
  }
  bool pairs() const { return A.euler_pairs(); }
  K scalar(const Rational& r) const { return A.scalar(r); }
};

template <class K>
Alphabet<K> build_alphabet(const Config& c, const K& unit, const K& eps) {
  switch (c.kind) {
    case AlphabetKind::Z: return Alphabet<K>::z(unit);
    case AlphabetKind::Zero: return Alphabet<K>::zero(unit);
    case AlphabetKind::Euler: return Alphabet<K>::euler(c.modulus, unit);
    case AlphabetKind::Q: return Alphabet<K>::q_deformed(eps, unit);
  }
  throw std::logic_error("bad alphabet kind");
}

template <class F> int with_session(const Config& c, F&& f) {
  switch (c.coeff) {
    case CoeffKind::Rat: {
      if (c.kind == AlphabetKind::Q) throw ConfigError("alphabet q needs a deformed ring");
      Session<Rational> s{c, build_alphabet(c, Rational(1), Rational(0))};
      return f(s);
    }
    case CoeffKind::Poly: {
      Session<PolyScalar> s{
          c, build_alphabet(c, PolyScalar::constant(Rational(1)), PolyScalar::var("eps"))};
      return f(s);
    }
    case CoeffKind::QSer: {
      Session<QSeries> s{c, build_alphabet(c, QSeries::one(c.qorder),
                                           QSeries::one_minus_q(c.qorder))};
      return f(s);
    }
  }
  return 2;
}

// ---- output ----------------------------------------------------------------

std::string fmt_complex(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

json word_json(const Word& w) {
  json a = json::array();
  for (const Letter& l : w.letters()) a.push_back(json::array({l.i, l.j}));
  return a;
}

template <class K> json poly_json(const NcPoly<K>& x) {
  json terms = json::array();
  const auto& t = x.terms();
  for (auto it = t.rbegin(); it != t.rend(); ++it)
    terms.push_back(
        json{{"coeff", RingTraits<K>::str(it->second)}, {"word", word_json(it->first)}});
  return json{{"terms", terms}};
}

template <class K> int emit_poly(const Session<K>& s, const NcPoly<K>& x) {
  if (s.cfg.json_out) std::cout << poly_json(x).dump() << "\n";
  else std::cout << expr_str(x, s.pairs()) << "\n";
  return 0;
}

std::string wstr(const Word& w, bool pairs) { return w.empty() ? "1" : w.str(pairs); }

template <class K> std::string coeff_str(const K& c) {
  std::string s = RingTraits<K>::str(c);
  if (s.find(' ') != std::string::npos) s = "(" + s + ")";
  return s;
}

template <class K> int emit_tensor(const Session<K>& s, const Tensor<K>& t) {
  if (s.cfg.json_out) {
    json terms = json::array();
    for (const auto& [k, c] : t.terms())
      terms.push_back(json{{"coeff", RingTraits<K>::str(c)},
                           {"left", word_json(k.first)},
                           {"right", word_json(k.second)}});
    std::cout << json{{"terms", terms}}.dump() << "\n";
    return 0;
  }
  if (t.terms().empty()) {
    std::cout << "0\n";
    return 0;
  }
  std::string out;
  for (const auto& [k, c] : t.terms()) {
    if (!out.empty()) out += " + ";
    if (!RingTraits<K>::is_one(c)) out += coeff_str(c) + "*";
    out += wstr(k.first, s.pairs()) + " (x) " + wstr(k.second, s.pairs());
  }
  std::cout << out << "\n";
  return 0;
}

// ---- algebraic subcommands -------------------------------------------------

Mode parse_op(const std::string& op) {
  if (op == "star") return Mode::QuasiShuffle;
  if (op == "star-star") return Mode::QuasiShuffleStar;
  if (op == "shuffle") return Mode::Shuffle;
  if (op == "diamond") return Mode::Diamond;
  if (op == "concat") return Mode::Concat;
  throw ConfigError("unknown --op '" + op + "' (star, star-star, shuffle, diamond, concat)");
}

template <class K>
int cmd_prod(const Session<K>& s, const std::string& op, const std::string& e1,
             const std::string& e2) {
  Mode m = parse_op(op);
  NcPoly<K> u = s.parse(e1), v = s.parse(e2);
  return emit_poly(s, mul(s.A, m, u, v));
}

template <class K>
NcPoly<K> apply_series(const Session<K>& s, const std::string& desc, const NcPoly<K>& x) {
  std::string name = desc, arg;
  if (size_t colon = desc.find(':'); colon != std::string::npos) {
    name = desc.substr(0, colon);
    arg = desc.substr(colon + 1);
  }
  if (name == "sigma" && arg.empty()) return sigma(s.A, x);
  if (name == "sigma-inverse") return sigma_inverse(s.A, x);
  if (name == "sigma-power" || (name == "sigma" && !arg.empty()))
    return sigma_power(s.A, s.scalar(parse_rat(arg, "--series " + desc)), x);
  if (name == "sign") return length_sign(x);
  if (name == "reverse") return word_reverse(x);
  if (name == "exp") return exp_psi(s.A, x);
  if (name == "log") return log_psi(s.A, x);
  if (name == "h") return h_power(s.A, s.scalar(parse_rat(arg, "--series " + desc)), x);
  if (name == "psi") {
    std::vector<K> cs;
    for (const auto& tok : split_list(arg, ','))
      cs.push_back(s.scalar(parse_rat(tok, "--series " + desc)));
    size_t need = std::max<size_t>(x.max_length(), 1);
    while (cs.size() < need) cs.push_back(s.scalar(Rational(0)));
    return psi(s.A, FormalSeries<K>(std::move(cs)), x);
  }
  throw ConfigError("unknown --series '" + desc +
                    "' (sigma, sigma-inverse, sigma-power:<rho>, sign, reverse, exp, log, "
                    "h:<p>, psi:<c1,c2,...>)");
}

template <class K>
int cmd_map(const Session<K>& s, const std::vector<std::string>& series,
            const std::string& e) {
  NcPoly<K> x = s.parse(e);
  for (const auto& desc : series) x = apply_series(s, desc, x);
  return emit_poly(s, x);
}

template <class K>
int cmd_coproduct(const Session<K>& s, bool reduced, const std::string& e) {
  NcPoly<K> x = s.parse(e);
  return emit_tensor(s, reduced ? reduced_deconcat(x) : deconcat(x));
}

AntipodeKind parse_antipode(const std::string& kind) {
  if (kind == "star") return AntipodeKind::Star;
  if (kind == "star-star") return AntipodeKind::StarStar;
  if (kind == "diamond") return AntipodeKind::Diamond;
  throw ConfigError("unknown --kind '" + kind + "' (star, star-star, diamond)");
}

template <class K>
int cmd_antipode(const Session<K>& s, const std::string& kind, const std::string& e) {
  return emit_poly(s, antipode(s.A, parse_antipode(kind), s.parse(e)));
}

template <class K> int cmd_derivation(const Session<K>& s, const std::string& e) {
  return emit_poly(s, derivation_d(s.A, s.parse(e)));
}

// ---- generating-function identities ----------------------------------------

struct GfOpts {
  std::string identity;
  std::string s, p, r;
  std::string z, y, a, b;
};

template <class K> Letter default_first(const Session<K>&) { return Letter{1, 0}; }
template <class K> Letter default_second(const Session<K>& s) {
  return s.pairs() ? Letter{1, 1} : Letter{2, 0};
}

template <class K>
LetterSeries<K> letter_series(const Session<K>& s, const std::string& e,
                              const std::string& flag) {
  NcPoly<K> x = s.parse(e);
  LetterSeries<K> z;
  for (const auto& [w, c] : x.terms()) {
    if (w.length() != 1)
      throw ConfigError(flag + " wants a combination of single letters, got '" +
                        wstr(w, s.pairs()) + "'");
    z.add(1, w[0], c);
  }
  if (z.empty()) throw ConfigError(flag + " must be nonzero");
  return z;
}

template <class K>
Letter single_letter(const Session<K>& s, const std::string& e, const std::string& flag) {
  NcPoly<K> x = s.parse(e);
  if (x.size() != 1) throw ConfigError(flag + " wants exactly one letter");
  const auto& [w, c] = *x.terms().begin();
  if (w.length() != 1 || !RingTraits<K>::is_one(c))
    throw ConfigError(flag + " wants a single unscaled letter");
  return w[0];
}

template <class K> int cmd_gf(const Session<K>& ses, const GfOpts& g) {
  IdentityOptions<K> opt;
  opt.trunc = ses.cfg.trunc;
  if (!g.s.empty()) opt.s = parse_rat(g.s, "--s");
  if (!g.p.empty()) opt.p = parse_rat(g.p, "--p");
  if (!g.r.empty()) opt.r = parse_rat(g.r, "--r");
  opt.z = g.z.empty()
              ? LetterSeries<K>::letter(default_first(ses), ses.A.unit())
              : letter_series(ses, g.z, "--z");
  opt.y = g.y.empty()
              ? LetterSeries<K>::letter(default_second(ses), ses.A.unit())
              : letter_series(ses, g.y, "--y");
  opt.a = g.a.empty() ? default_first(ses) : single_letter(ses, g.a, "--a");
  opt.b = g.b.empty() ? default_second(ses) : single_letter(ses, g.b, "--b");

  IdentityCheck<K> c;
  try {
    c = check_identity(ses.A, g.identity, opt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (ses.cfg.json_out) {
    json out{{"identity", g.identity}, {"pass", c.pass}};
    if (!c.pass) {
      out["degree"] = c.degree;
      out["difference"] = expr_str(c.diff, ses.pairs());
    }
    std::cout << out.dump() << "\n";
  } else if (c.pass) {
    std::cout << "ok: " << g.identity << "\n";
  } else {
    std::cout << "identity " << g.identity << " fails at lambda degree " << c.degree
              << "\ndifference: " << expr_str(c.diff, ses.pairs()) << "\n";
  }
  return c.pass ? 0 : 1;
}

// ---- invariant suites ------------------------------------------------------

struct CheckFail {
  std::string law;
  std::string where;
};
using CheckResult = std::optional<CheckFail>;

template <class K> std::vector<Letter> sample_letters(const Session<K>& s) {
  if (s.pairs()) return {Letter{1, 0}, Letter{1, 1}};
  return {Letter{1, 0}, Letter{2, 0}};
}

std::vector<std::vector<Word>> words_by_length(const std::vector<Letter>& ls, int maxlen) {
  std::vector<std::vector<Word>> v(static_cast<size_t>(maxlen) + 1);
  v[0] = {Word{}};
  for (int len = 1; len <= maxlen; ++len)
    for (const Word& w : v[len - 1])
      for (const Letter& l : ls) v[len].push_back(w.appended(l));
  return v;
}

template <class K>
std::string at_words(const Session<K>& s, std::initializer_list<std::pair<const char*, Word>> ws) {
  std::string out;
  for (const auto& [n, w] : ws) {
    if (!out.empty()) out += ", ";
    out += std::string(n) + " = " + wstr(w, s.pairs());
  }
  return out;
}

template <class K>
CheckResult check_algebra(const Session<K>& s, int maxlen, int samples) {
  auto byl = words_by_length(sample_letters(s), maxlen);
  const NcPoly<K> one = poly_one(s.A);
  auto term = [&](const Word& w) { return NcPoly<K>::term(w, s.A.unit()); };
  struct Named {
    const char* name;
    Mode m;
  };
  const std::array<Named, 3> prods{{{"star", Mode::QuasiShuffle},
                                    {"star-star", Mode::QuasiShuffleStar},
                                    {"shuffle", Mode::Shuffle}}};

  for (int len = 0; len <= maxlen; ++len)
    for (const Word& w : byl[len])
      for (const auto& pr : prods) {
        if (mul(s.A, pr.m, one, term(w)) != term(w) ||
            mul(s.A, pr.m, term(w), one) != term(w))
          return CheckFail{std::string("unit law of ") + pr.name,
                           at_words(s, {{"w", w}})};
      }

  for (int L = 0; L <= maxlen; ++L)
    for (int a = 0; a <= L; ++a)
      for (const Word& u : byl[a])
        for (const Word& v : byl[L - a]) {
          for (const auto& pr : prods)
            if (mul(s.A, pr.m, term(u), term(v)) != mul(s.A, pr.m, term(v), term(u)))
              return CheckFail{std::string("commutativity of ") + pr.name,
                               at_words(s, {{"u", u}, {"v", v}})};
          if (s.A.kind() == AlphabetKind::Zero &&
              qsh(s.A, term(u), term(v)) != shuffle(s.A, term(u), term(v)))
            return CheckFail{"star equals shuffle over the zero alphabet",
                             at_words(s, {{"u", u}, {"v", v}})};
        }

  for (int L = 0; L <= maxlen; ++L)
    for (int a = 0; a <= L; ++a)
      for (int b = 0; a + b <= L; ++b)
        for (const Word& u : byl[a])
          for (const Word& v : byl[b])
            for (const Word& w : byl[L - a - b])
              for (const auto& pr : prods)
                if (mul(s.A, pr.m, mul(s.A, pr.m, term(u), term(v)), term(w)) !=
                    mul(s.A, pr.m, term(u), mul(s.A, pr.m, term(v), term(w))))
                  return CheckFail{std::string("associativity of ") + pr.name,
                                   at_words(s, {{"u", u}, {"v", v}, {"w", w}})};

  if (samples > 0) {
    std::mt19937_64 gen(static_cast<unsigned long long>(s.cfg.seed));
    const auto ls = sample_letters(s);
    std::uniform_int_distribution<int> len(0, maxlen + 2);
    std::uniform_int_distribution<size_t> pick(0, ls.size() - 1);
    auto rand_word = [&] {
      std::vector<Letter> v;
      int n = len(gen);
      for (int i = 0; i < n; ++i) v.push_back(ls[pick(gen)]);
      return Word(std::move(v));
    };
    for (int t = 0; t < samples; ++t) {
      Word u = rand_word(), v = rand_word();
      for (const auto& pr : prods)
        if (mul(s.A, pr.m, term(u), term(v)) != mul(s.A, pr.m, term(v), term(u)))
          return CheckFail{std::string("commutativity of ") + pr.name,
                           at_words(s, {{"u", u}, {"v", v}})};
    }
  }
  return {};
}

template <class K> CheckResult check_maps(const Session<K>& s, int maxlen) {
  auto byl = words_by_length(sample_letters(s), maxlen);
  auto term = [&](const Word& w) { return NcPoly<K>::term(w, s.A.unit()); };
  const K two = s.scalar(Rational(2));

  for (int len = 0; len <= maxlen; ++len)
    for (const Word& w : byl[len]) {
      NcPoly<K> tw = term(w);
      if (length_sign(length_sign(tw)) != tw)
        return CheckFail{"sign involution", at_words(s, {{"w", w}})};
      if (word_reverse(word_reverse(tw)) != tw)
        return CheckFail{"reversal involution", at_words(s, {{"w", w}})};
      if (sigma(s.A, sigma_inverse(s.A, tw)) != tw)
        return CheckFail{"sigma composed with its inverse", at_words(s, {{"w", w}})};
      if (length_sign(sigma(s.A, length_sign(tw))) != sigma_inverse(s.A, tw))
        return CheckFail{"sign conjugation of sigma", at_words(s, {{"w", w}})};
      if (word_reverse(sigma(s.A, tw)) != sigma(s.A, word_reverse(tw)))
        return CheckFail{"reversal commutes with sigma", at_words(s, {{"w", w}})};
    }

  for (int L = 0; L <= maxlen; ++L)
    for (int a = 0; a <= L; ++a)
      for (const Word& uw : byl[a])
        for (const Word& vw : byl[L - a]) {
          NcPoly<K> u = term(uw), v = term(vw);
          if (length_sign(qsh(s.A, u, v)) !=
              qsh_star(s.A, length_sign(u), length_sign(v)))
            return CheckFail{"sign swaps the two products",
                             at_words(s, {{"u", uw}, {"v", vw}})};
          if (sigma(s.A, qsh_star(s.A, u, v)) != qsh(s.A, sigma(s.A, u), sigma(s.A, v)))
            return CheckFail{"sigma carries star-star to star",
                             at_words(s, {{"u", uw}, {"v", vw}})};
          if (h_power(s.A, two, qsh(s.A, u, v)) !=
              qsh(s.A, h_power(s.A, two, u), h_power(s.A, two, v)))
            return CheckFail{"h preserves the star product",
                             at_words(s, {{"u", uw}, {"v", vw}})};
          if (word_reverse(qsh(s.A, u, v)) != qsh(s.A, word_reverse(u), word_reverse(v)))
            return CheckFail{"reversal preserves the star product",
                             at_words(s, {{"u", uw}, {"v", vw}})};
        }
  return {};
}

struct WordVecLess {
  bool operator()(const std::vector<Word>& a, const std::vector<Word>& b) const {
    WordLess less;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (less(a[i], b[i])) return true;
      if (less(b[i], a[i])) return false;
    }
    return a.size() < b.size();
  }
};

template <class K> CheckResult check_hopf(const Session<K>& s, int maxlen) {
  auto byl = words_by_length(sample_letters(s), maxlen);
  auto term = [&](const Word& w) { return NcPoly<K>::term(w, s.A.unit()); };
  const NcPoly<K> one = poly_one(s.A);

  for (int len = 0; len <= maxlen; ++len)
    for (const Word& w : byl[len]) {
      NcPoly<K> tw = term(w);
      Tensor<K> d = deconcat(tw);

      NcPoly<K> left_counit, right_counit;
      for (const auto& [k, c] : d.terms()) {
        if (k.first.empty()) left_counit.add_term(k.second, c);
        if (k.second.empty()) right_counit.add_term(k.first, c);
      }
      if (left_counit != tw || right_counit != tw)
        return CheckFail{"counit law", at_words(s, {{"w", w}})};

      // Both nestings of the coproduct list the same cut triples.
      std::map<std::vector<Word>, K, WordVecLess> nest_l, nest_r;
      auto put = [&](auto& m, std::vector<Word> key, const K& c) {
        auto it = m.find(key);
        if (it == m.end()) {
          m.emplace(std::move(key), c);
        } else {
          it->second += c;
          if (RingTraits<K>::is_zero(it->second)) m.erase(it);
        }
      };
      for (const auto& [k, c] : d.terms()) {
        Tensor<K> da = deconcat(NcPoly<K>::term(k.first, c));
        for (const auto& [ka, ca] : da.terms())
          put(nest_l, {ka.first, ka.second, k.second}, ca);
        Tensor<K> db = deconcat(NcPoly<K>::term(k.second, c));
        for (const auto& [kb, cb] : db.terms())
          put(nest_r, {k.first, kb.first, kb.second}, cb);
      }
      if (nest_l != nest_r) return CheckFail{"coassociativity", at_words(s, {{"w", w}})};

      // Convolution of the antipode against the identity collapses to the
      // counit, once per product with its own antipode.
      const std::array<std::pair<AntipodeKind, Mode>, 2> pairs{
          {{AntipodeKind::Star, Mode::QuasiShuffle},
           {AntipodeKind::StarStar, Mode::QuasiShuffleStar}}};
      for (const auto& [kind, m] : pairs) {
        NcPoly<K> acc_l, acc_r;
        for (size_t cut = 0; cut <= w.length(); ++cut) {
          NcPoly<K> pre = term(w.prefix(cut));
          NcPoly<K> suf = term(w.suffix_from(cut));
          acc_l += mul(s.A, m, antipode(s.A, kind, pre), suf);
          acc_r += mul(s.A, m, pre, antipode(s.A, kind, suf));
        }
        NcPoly<K> expect = w.empty() ? one : NcPoly<K>();
        if (acc_l != expect || acc_r != expect)
          return CheckFail{std::string("antipode axiom for ") +
                               (kind == AntipodeKind::Star ? "star" : "star-star"),
                           at_words(s, {{"w", w}})};
      }
    }

  const std::array<std::pair<const char*, Mode>, 2> prods{
      {{"star", Mode::QuasiShuffle}, {"star-star", Mode::QuasiShuffleStar}}};
  for (int L = 0; L <= maxlen; ++L)
    for (int a = 0; a <= L; ++a)
      for (const Word& uw : byl[a])
        for (const Word& vw : byl[L - a])
          for (const auto& [name, m] : prods) {
            NcPoly<K> u = term(uw), v = term(vw);
            if (deconcat(mul(s.A, m, u, v)) !=
                tensor_mul(s.A, m, deconcat(u), deconcat(v)))
              return CheckFail{std::string("coproduct is an algebra map for ") + name,
                               at_words(s, {{"u", uw}, {"v", vw}})};
          }
  return {};
}

template <class K> CheckResult check_identities(const Session<K>& s) {
  IdentityOptions<K> opt;
  opt.trunc = s.cfg.trunc;
  opt.z = LetterSeries<K>::letter(default_first(s), s.A.unit());
  opt.y = LetterSeries<K>::letter(default_second(s), s.A.unit());
  opt.a = default_first(s);
  opt.b = default_second(s);
  for (const std::string& name : identity_names()) {
    IdentityCheck<K> c = check_identity(s.A, name, opt);
    if (!c.pass)
      return CheckFail{"identity " + name,
                       "lambda degree " + std::to_string(c.degree)};
  }
  return {};
}

template <class K>
int cmd_check(const Session<K>& s, const std::string& suite, int maxlen, int samples) {
  if (maxlen < 0) throw ConfigError("--maxlen must be >= 0");
  CheckResult r;
  if (suite == "algebra") r = check_algebra(s, maxlen, samples);
  else if (suite == "maps") r = check_maps(s, maxlen);
  else if (suite == "hopf") r = check_hopf(s, maxlen);
  else if (suite == "identities") r = check_identities(s);
  else if (suite == "all") {
    r = check_algebra(s, maxlen, samples);
    if (!r) r = check_maps(s, maxlen);
    if (!r) r = check_hopf(s, maxlen);
    if (!r) r = check_identities(s);
  } else {
    throw ConfigError("unknown suite '" + suite +
                      "' (algebra, maps, hopf, identities, all)");
  }

  if (s.cfg.json_out) {
    json out{{"suite", suite}, {"pass", !r.has_value()}};
    if (r) {
      out["law"] = r->law;
      out["where"] = r->where;
    }
    std::cout << out.dump() << "\n";
  } else if (r) {
    std::cout << "counterexample: " << r->law << " at " << r->where << "\n";
  } else {
    std::cout << "ok: " << suite << "\n";
  }
  return r ? 1 : 0;
}

// ---- evaluators ------------------------------------------------------------

struct EvalSpec {
  std::string name;
  std::map<std::string, std::string> kv;
};

EvalSpec parse_eval_desc(const std::string& desc) {
  EvalSpec e;
  size_t colon = desc.find(':');
  e.name = desc.substr(0, colon == std::string::npos ? desc.size() : colon);
  if (colon != std::string::npos)
    for (const auto& item : split_list(desc.substr(colon + 1), ',')) {
      size_t eq = item.find('=');
      if (eq == std::string::npos)
        throw ConfigError("evaluator parameter '" + item + "' wants key=value");
      e.kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  return e;
}

long eval_param(const EvalSpec& e, const std::string& key, long fallback, long min,
                const std::vector<std::string>& allowed) {
  for (const auto& [k, v] : e.kv) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == k;
    if (!ok)
      throw ConfigError("unknown parameter '" + k + "' for evaluator " + e.name);
  }
  auto it = e.kv.find(key);
  long v = it == e.kv.end() ? fallback : parse_long(it->second, "evaluator " + e.name);
  if (v < min)
    throw ConfigError("evaluator " + e.name + ": " + key + " must be >= " +
                      std::to_string(min));
  return v;
}

int cmd_eval(const Config& cfg, const std::string& alphabet, const std::string& desc,
             const std::string& interp, const std::string& expr) {
  std::optional<Rational> rho;
  if (!interp.empty()) {
    if (interp.rfind("r=", 0) != 0)
      throw ConfigError("--interp wants r=<rational>, got '" + interp + "'");
    rho = parse_rat(interp.substr(2), "--interp");
  }
  EvalSpec es = parse_eval_desc(desc);
  const ExprTerms ts = parse_expr(expr);
  auto require_alpha = [&](std::initializer_list<const char*> allowed) {
    if (alphabet.empty()) return;
    for (const char* a : allowed)
      if (alphabet == a) return;
    throw ConfigError("evaluator " + es.name + " does not run over --alphabet '" +
                      alphabet + "'");
  };

  std::string value, kind;
  if (es.name == "harmonic") {
    require_alpha({"z"});
    long n = eval_param(es, "n", 8, 0, {"n"});
    Alphabet<Rational> A = Alphabet<Rational>::z();
    NcPoly<Rational> x = bind_rational(ts);
    check_words(A, x);
    if (rho) x = sigma_power(A, *rho, x);
    value = harmonic(x, n).str();
    kind = "rational";
  } else if (es.name == "qzeta") {
    require_alpha({"z", "q"});
    long order = eval_param(es, "order", 20, 0, {"order"});
    if (rho && alphabet == "z")
      throw ConfigError("interpolated q-evaluation expands over the deformed alphabet; "
                        "drop --alphabet z");
    if (rho || alphabet == "q") {
      Alphabet<PolyScalar> A =
          Alphabet<PolyScalar>::q_deformed(PolyScalar::var("eps"));
      NcPoly<PolyScalar> x = bind_poly(ts, {"eps"});
      check_words(A, x);
      if (rho) x = sigma_power(A, PolyScalar::constant(*rho), x);
      value = qzeta(x, static_cast<int>(order)).str();
    } else {
      value = qzeta(bind_rational(ts), static_cast<int>(order)).str();
    }
    kind = "qseries";
  } else if (es.name == "mzv" || es.name == "t") {
    require_alpha({"z"});
    long cutoff = eval_param(es, "cutoff", 10000, 1, {"cutoff"});
    Alphabet<Rational> A = Alphabet<Rational>::z();
    NcPoly<Rational> x = bind_rational(ts);
    check_words(A, x);
    if (rho) x = sigma_power(A, *rho, x);
    double v = es.name == "mzv" ? mzv(x, cutoff) : tval(x, cutoff);
    value = fmt_complex({v, 0.0});
    kind = "complex";
  } else if (es.name == "polylog") {
    long r = eval_param(es, "r", 2, 2, {"r", "cutoff"});
    long cutoff = eval_param(es, "cutoff", 100000, 1, {"r", "cutoff"});
    if (!alphabet.empty()) {
      if (alphabet.rfind("euler:", 0) != 0)
        throw ConfigError("evaluator polylog runs over --alphabet euler:<r>");
      long ar = parse_long(alphabet.substr(6), "--alphabet euler:<r>");
      if (es.kv.count("r") && ar != r)
        throw ConfigError("evaluator polylog r=" + std::to_string(r) +
                          " disagrees with --alphabet " + alphabet);
      r = ar;
      if (r < 2) throw ConfigError("euler alphabet needs a modulus >= 2");
    }
    Alphabet<Rational> A = Alphabet<Rational>::euler(static_cast<std::uint32_t>(r));
    NcPoly<Rational> x = bind_rational(ts);
    check_words(A, x);
    if (rho) x = sigma_power(A, *rho, x);
    value = fmt_complex(polylog(x, static_cast<std::uint32_t>(r), cutoff));
    kind = "complex";
  } else {
    throw ConfigError("unknown evaluator '" + es.name +
                      "' (harmonic, qzeta, mzv, t, polylog)");
  }

  if (cfg.json_out)
    std::cout << json{{"input", expr}, {"value", value}, {"kind", kind}}.dump() << "\n";
  else
    std::cout << value << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-shuffle word algebra toolkit"};
  app.require_subcommand(1);

  std::string alphabet, coeff, format = "text";
  int trunc = 5;
  long seed = 0;
  app.add_option("--alphabet", alphabet, "letter alphabet: z | q | euler:<r> | zero");
  app.add_option("--coeff", coeff, "coefficient ring: rational | poly:<vars> | qseries:<M>");
  app.add_option("--trunc", trunc, "lambda truncation order for gf and identity checks");
  app.add_option("--format", format, "output format: text | json");
  app.add_option("--seed", seed, "seed for sampled checks");

  std::string op, e1, e2;
  auto* prod = app.add_subcommand("prod", "multiply two expressions");
  prod->fallthrough();
  prod->add_option("--op", op, "star | star-star | shuffle | diamond | concat")->required();
  prod->add_option("expr1", e1)->required();
  prod->add_option("expr2", e2)->required();

  std::vector<std::string> series;
  std::string map_expr;
  auto* mapc = app.add_subcommand("map", "apply named maps left to right");
  mapc->fallthrough();
  mapc->add_option("--series", series,
                   "sigma | sigma-inverse | sigma-power:<rho> | sign | reverse | exp | "
                   "log | h:<p> | psi:<c1,c2,...>")
      ->required()
      ->allow_extra_args(false);
  mapc->add_option("expr", map_expr)->required();

  bool reduced = false;
  std::string cop_expr;
  auto* cop = app.add_subcommand("coproduct", "deconcatenation coproduct");
  cop->fallthrough();
  cop->add_flag("--reduced", reduced, "proper splits only");
  cop->add_option("expr", cop_expr)->required();

  std::string anti_kind, anti_expr;
  auto* anti = app.add_subcommand("antipode", "apply an antipode");
  anti->fallthrough();
  anti->add_option("--kind", anti_kind, "star | star-star | diamond")->required();
  anti->add_option("expr", anti_expr)->required();

  std::string der_expr;
  auto* der = app.add_subcommand("derivation", "fuse-after-split derivation");
  der->fallthrough();
  der->add_option("expr", der_expr)->required();

  GfOpts gf;
  auto* gfc = app.add_subcommand("gf", "check a named generating-function identity");
  gfc->fallthrough();
  gfc->add_option("--identity", gf.identity, "identity name; see the identity catalog")
      ->required();
  gfc->add_option("--s", gf.s, "series parameter s");
  gfc->add_option("--p", gf.p, "power parameter p");
  gfc->add_option("--r", gf.r, "interpolation parameter r");
  gfc->add_option("--z", gf.z, "letter combination z (default z1)");
  gfc->add_option("--y", gf.y, "letter combination y (default z2)");
  gfc->add_option("--a", gf.a, "letter a for double-fraction");
  gfc->add_option("--b", gf.b, "letter b for double-fraction");

  std::string eval_desc, eval_interp, eval_expr;
  auto* evalc = app.add_subcommand("eval", "evaluate an expression numerically");
  evalc->fallthrough();
  evalc->add_option("--evaluator", eval_desc,
                    "harmonic:n=8 | qzeta:order=20 | mzv:cutoff=10000 | t:cutoff=10000 "
                    "| polylog:r=2,cutoff=100000")
      ->required();
  evalc->add_option("--interp", eval_interp, "r=<rational>; r=1 recovers the star value");
  evalc->add_option("expr", eval_expr)->required();

  std::string suite;
  int maxlen = 3, samples = 0;
  auto* checkc = app.add_subcommand("check", "run an invariant suite");
  checkc->fallthrough();
  checkc->add_option("suite", suite, "algebra | maps | hopf | identities | all")->required();
  checkc->add_option("--maxlen", maxlen, "word/pair length bound (default 3)");
  checkc->add_option("--samples", samples, "extra random pairs beyond the exhaustive core");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*evalc) {
      // Evaluators pick their own rings; the alphabet string is validated
      // against the evaluator inside.
      Config cfg = resolve_config("z", "rational", trunc, format, seed);
      return cmd_eval(cfg, alphabet, eval_desc, eval_interp, eval_expr);
    }
    Config cfg =
        resolve_config(alphabet.empty() ? "z" : alphabet, coeff, trunc, format, seed);
    if (*prod)
      return with_session(cfg, [&](auto& s) { return cmd_prod(s, op, e1, e2); });
    if (*mapc)
      return with_session(cfg, [&](auto& s) { return cmd_map(s, series, map_expr); });
    if (*cop)
      return with_session(cfg, [&](auto& s) { return cmd_coproduct(s, reduced, cop_expr); });
    if (*anti)
      return with_session(cfg,
                          [&](auto& s) { return cmd_antipode(s, anti_kind, anti_expr); });
    if (*der)
      return with_session(cfg, [&](auto& s) { return cmd_derivation(s, der_expr); });
    if (*gfc) return with_session(cfg, [&](auto& s) { return cmd_gf(s, gf); });
    if (*checkc)
      return with_session(cfg, [&](auto& s) { return cmd_check(s, suite, maxlen, samples); });
  } catch (const ExprError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
