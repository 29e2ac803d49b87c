#include "pgcl/logic.hpp"

#include "pgcl/diagnostics.hpp"
#include "pgcl/parser.hpp"

#include <algorithm>
#include <cctype>

namespace pgcl {

Inner Inner::threshold(CondPtr U, Rat p) {
  if (p < 0 || p >= 1) throw std::invalid_argument("threshold probability must be in [0,1)");
  Inner f;
  f.kind = Kind::Threshold;
  f.cond = std::move(U);
  f.p = std::move(p);
  return f;
}

Inner Inner::conj(std::vector<Inner> kids) {
  Inner f;
  f.kind = Kind::And;
  f.kids = std::move(kids);
  return f;
}

Inner Inner::disj(std::vector<Inner> kids) {
  Inner f;
  f.kind = Kind::Or;
  f.kids = std::move(kids);
  return f;
}

Outer Outer::may(Inner body) {
  Outer f;
  f.kind = Kind::May;
  f.body = std::move(body);
  return f;
}

Outer Outer::must(Inner body) {
  Outer f;
  f.kind = Kind::Must;
  f.body = std::move(body);
  return f;
}

Outer Outer::conj(std::vector<Outer> kids) {
  Outer f;
  f.kind = Kind::And;
  f.kids = std::move(kids);
  return f;
}

Outer Outer::disj(std::vector<Outer> kids) {
  Outer f;
  f.kind = Kind::Or;
  f.kids = std::move(kids);
  return f;
}

Mode mode_from_letter(char c) {
  switch (c) {
    case 'l': return Mode::Lower;
    case 'u': return Mode::Upper;
    case 'b': return Mode::Biconvex;
  }
  throw std::invalid_argument("mode must be one of l, u, b");
}

OrderMode order_mode(Mode m) {
  switch (m) {
    case Mode::Lower: return OrderMode::Lower;
    case Mode::Upper: return OrderMode::Upper;
    case Mode::Biconvex: return OrderMode::Biconvex;
  }
  throw std::invalid_argument("bad mode");
}

void check_fragment(const Outer& f, Mode m) {
  if (f.kind == Outer::Kind::Must && m == Mode::Lower)
    throw UnsupportedFormulaError(
        "must-formulas are outside the lower (may) fragment; use mode u or b");
  if (f.kind == Outer::Kind::May && m == Mode::Upper)
    throw UnsupportedFormulaError(
        "may-formulas are outside the upper (must) fragment; use mode l or b");
  for (const auto& k : f.kids) check_fragment(k, m);
}

bool sat_valuation(const Valuation& mu, const Inner& phi, const Backend& backend) {
  switch (phi.kind) {
    case Inner::Kind::Top:
      return true;
    case Inner::Kind::Bot:
      return false;
    case Inner::Kind::Threshold: {
      Rat m = mu.measure(
          [&](const StateKey& s) { return backend.interp_cond(phi.cond, s); });
      return m > phi.p;
    }
    case Inner::Kind::And:
      return std::all_of(phi.kids.begin(), phi.kids.end(),
                         [&](const Inner& k) { return sat_valuation(mu, k, backend); });
    case Inner::Kind::Or:
      return std::any_of(phi.kids.begin(), phi.kids.end(),
                         [&](const Inner& k) { return sat_valuation(mu, k, backend); });
  }
  return false;
}

namespace {

using Conjunct = std::vector<std::pair<CondPtr, Rat>>;  // empty = Top
using Dnf = std::vector<Conjunct>;                      // empty = Bot

Dnf to_dnf(const Inner& phi) {
  switch (phi.kind) {
    case Inner::Kind::Top:
      return {Conjunct{}};
    case Inner::Kind::Bot:
      return {};
    case Inner::Kind::Threshold:
      return {Conjunct{{phi.cond, phi.p}}};
    case Inner::Kind::Or: {
      Dnf out;
      for (const auto& k : phi.kids) {
        Dnf sub = to_dnf(k);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case Inner::Kind::And: {
      Dnf out{Conjunct{}};
      for (const auto& k : phi.kids) {
        Dnf sub = to_dnf(k);
        Dnf next;
        for (const auto& a : out)
          for (const auto& b : sub) {
            Conjunct merged = a;
            merged.insert(merged.end(), b.begin(), b.end());
            next.push_back(std::move(merged));
          }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

std::vector<std::pair<StatePred, Rat>> to_constraints(const Conjunct& conj,
                                                      const Backend& backend) {
  std::vector<std::pair<StatePred, Rat>> out;
  out.reserve(conj.size());
  for (const auto& [cond, p] : conj) {
    CondPtr u = cond;
    out.emplace_back([&backend, u](const StateKey& s) { return backend.interp_cond(u, s); },
                     p);
  }
  return out;
}

bool sat_may(const GenSet& F, const Inner& body, const Backend& backend) {
  for (const auto& conj : to_dnf(body)) {
    if (conj.empty()) return true;  // Top: witnessed by any element of x(F)
    if (threshold_feasible(F.members, to_constraints(conj, backend), Polarity::Exists))
      return true;
  }
  return false;
}

bool sat_must(const GenSet& F, const Inner& body, const Backend& backend) {
  Dnf kept;
  for (auto& conj : to_dnf(body)) {
    if (conj.empty()) return true;  // a Top disjunct absorbs the body
    kept.push_back(std::move(conj));
  }
  if (kept.empty()) return false;  // Bot: x(F) is non-empty
  if (kept.size() > 1)
    throw UnsupportedFormulaError(
        "must-bodies must simplify to a conjunction of thresholds; "
        "disjunctions under must have no extreme-point check");
  return threshold_feasible(F.members, to_constraints(kept.front(), backend),
                            Polarity::Forall);
}

}  // namespace

bool sat_genset(const GenSet& F, const Outer& phi, Mode mode, const Backend& backend) {
  switch (phi.kind) {
    case Outer::Kind::Top:
      return true;
    case Outer::Kind::Bot:
      return false;
    case Outer::Kind::May:
      return sat_may(F, phi.body, backend);
    case Outer::Kind::Must:
      return sat_must(F, phi.body, backend);
    case Outer::Kind::And:
      return std::all_of(phi.kids.begin(), phi.kids.end(), [&](const Outer& k) {
        return sat_genset(F, k, mode, backend);
      });
    case Outer::Kind::Or:
      return std::any_of(phi.kids.begin(), phi.kids.end(), [&](const Outer& k) {
        return sat_genset(F, k, mode, backend);
      });
  }
  return false;
}

Verdict semi_decide(const Config& c, const Outer& phi, Mode mode, int budget,
                    ExtensionEngine& engine) {
  check_fragment(phi, mode);
  for (int n = 1; n <= budget; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    GenSet F;
    std::size_t before = 0;
    try {
      F = engine.gen_set(c, n, &before);
    } catch (const BudgetExceededError& e) {
      Verdict v = Verdict::unknown(n - 1);
      v.resource_limited = true;
      v.note = e.what();
      return v;
    }
    DepthStats st;
    st.depth = n;
    st.size_before = before;
    st.size_after = F.members.size();
    st.wall_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
    engine.record_depth_stats(st);
    if (sat_genset(F, phi, mode, engine.backend())) return Verdict::holds_at(n);
  }
  return Verdict::unknown(budget);
}

bool refines(const Config& cP, const Config& cQ, Mode mode, int n, ExtensionEngine& engine) {
  GenSet F = engine.gen_set(cP, n);
  GenSet G = engine.gen_set(cQ, n);
  return order_leq(F, G, order_mode(mode));
}

// ---------------------------------------------------------------------------
// Formula parsing

namespace {

struct FTok {
  enum class Kind { End, Word, Threshold, Amp, Bar, LParen, RParen };
  Kind kind = Kind::End;
  std::string word;   // Word
  std::string cond;   // Threshold: text inside P[...]
  std::string prob;   // Threshold: rational after '>'
  std::size_t pos = 0;
};

class FormulaLexer {
 public:
  explicit FormulaLexer(const std::string& src) : src_(src) { tokenize(); }
  const std::vector<FTok>& tokens() const { return toks_; }

 private:
  void tokenize() {
    std::size_t i = 0;
    while (i < src_.size()) {
      char c = src_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '#') {
        while (i < src_.size() && src_[i] != '\n') ++i;
        continue;
      }
      std::size_t start = i;
      if (c == 'P' && i + 1 < src_.size() && src_[i + 1] == '[') {
        std::size_t close = src_.find(']', i + 2);
        if (close == std::string::npos)
          throw ParseError("unterminated 'P['", {start, src_.size()});
        FTok t;
        t.kind = FTok::Kind::Threshold;
        t.cond = src_.substr(i + 2, close - i - 2);
        t.pos = start;
        i = close + 1;
        while (i < src_.size() && std::isspace(static_cast<unsigned char>(src_[i]))) ++i;
        if (i >= src_.size() || src_[i] != '>')
          throw ParseError("expected '>' after P[...]", {i, i + 1});
        ++i;
        while (i < src_.size() && std::isspace(static_cast<unsigned char>(src_[i]))) ++i;
        std::size_t pstart = i;
        while (i < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[i])) ||
                                   src_[i] == '/' || src_[i] == '.'))
          ++i;
        if (i == pstart) throw ParseError("expected probability after '>'", {i, i + 1});
        t.prob = src_.substr(pstart, i - pstart);
        toks_.push_back(std::move(t));
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        while (i < src_.size() && std::isalnum(static_cast<unsigned char>(src_[i]))) ++i;
        toks_.push_back({FTok::Kind::Word, src_.substr(start, i - start), "", "", start});
        continue;
      }
      switch (c) {
        case '&': toks_.push_back({FTok::Kind::Amp, "", "", "", start}); ++i; break;
        case '|': toks_.push_back({FTok::Kind::Bar, "", "", "", start}); ++i; break;
        case '(': toks_.push_back({FTok::Kind::LParen, "", "", "", start}); ++i; break;
        case ')': toks_.push_back({FTok::Kind::RParen, "", "", "", start}); ++i; break;
        default:
          throw ParseError("unexpected character in formula", {start, start + 1});
      }
    }
    toks_.push_back({FTok::Kind::End, "", "", "", src_.size()});
  }

  const std::string& src_;
  std::vector<FTok> toks_;
};

class FormulaParser {
 public:
  FormulaParser(const std::string& src, const Header& header)
      : lexer_(src), toks_(lexer_.tokens()), header_(header) {}

  Outer parse() {
    Outer f = parse_or();
    if (peek().kind != FTok::Kind::End)
      throw ParseError("trailing input after formula", {peek().pos, peek().pos + 1});
    return f;
  }

 private:
  const FTok& peek() const { return toks_[pos_]; }
  const FTok& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_word(const char* w) const {
    return peek().kind == FTok::Kind::Word && peek().word == w;
  }

  Outer parse_or() {
    std::vector<Outer> kids{parse_and()};
    while (at_word("or")) {
      advance();
      kids.push_back(parse_and());
    }
    return kids.size() == 1 ? std::move(kids[0]) : Outer::disj(std::move(kids));
  }

  Outer parse_and() {
    std::vector<Outer> kids{parse_atom()};
    while (at_word("and")) {
      advance();
      kids.push_back(parse_atom());
    }
    return kids.size() == 1 ? std::move(kids[0]) : Outer::conj(std::move(kids));
  }

  Outer parse_atom() {
    if (at_word("may")) {
      advance();
      return Outer::may(parse_inner_or());
    }
    if (at_word("must")) {
      advance();
      return Outer::must(parse_inner_or());
    }
    if (at_word("true")) {
      advance();
      return Outer::top();
    }
    if (at_word("false")) {
      advance();
      return Outer::bot();
    }
    if (peek().kind == FTok::Kind::LParen) {
      advance();
      Outer f = parse_or();
      if (peek().kind != FTok::Kind::RParen)
        throw ParseError("expected ')'", {peek().pos, peek().pos + 1});
      advance();
      return f;
    }
    throw ParseError("expected 'may', 'must', 'true', 'false' or '('",
                     {peek().pos, peek().pos + 1});
  }

  Inner parse_inner_or() {
    std::vector<Inner> kids{parse_inner_and()};
    while (peek().kind == FTok::Kind::Bar) {
      advance();
      kids.push_back(parse_inner_and());
    }
    return kids.size() == 1 ? std::move(kids[0]) : Inner::disj(std::move(kids));
  }

  Inner parse_inner_and() {
    std::vector<Inner> kids{parse_inner_atom()};
    while (peek().kind == FTok::Kind::Amp) {
      advance();
      kids.push_back(parse_inner_atom());
    }
    return kids.size() == 1 ? std::move(kids[0]) : Inner::conj(std::move(kids));
  }

  Inner parse_inner_atom() {
    const FTok& t = peek();
    if (t.kind == FTok::Kind::Threshold) {
      advance();
      CondPtr u;
      try {
        u = parse_condition(t.cond, header_);
      } catch (const ParseError& e) {
        throw ParseError(std::string("in P[...]: ") + e.what(), {t.pos, t.pos + 1});
      }
      auto p = parse_rational(t.prob);
      if (!p) throw ParseError("malformed probability", {t.pos, t.pos + 1});
      if (*p < 0 || *p >= 1)
        throw ParseError("threshold probability must be in [0,1)", {t.pos, t.pos + 1});
      return Inner::threshold(u, *p);
    }
    if (at_word("true")) {
      advance();
      return Inner::top();
    }
    if (at_word("false")) {
      advance();
      return Inner::bot();
    }
    if (t.kind == FTok::Kind::LParen) {
      advance();
      Inner f = parse_inner_or();
      if (peek().kind != FTok::Kind::RParen)
        throw ParseError("expected ')'", {peek().pos, peek().pos + 1});
      advance();
      return f;
    }
    throw ParseError("expected 'P[', 'true', 'false' or '('", {t.pos, t.pos + 1});
  }

  FormulaLexer lexer_;
  const std::vector<FTok>& toks_;
  std::size_t pos_ = 0;
  const Header& header_;
};

}  // namespace

Outer parse_formula(const std::string& text, const Header& header) {
  FormulaParser p(text, header);
  return p.parse();
}

}  // namespace pgcl
