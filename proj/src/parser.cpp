#include "pgcl/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace pgcl {

namespace {

enum class Tok {
  End,
  Ident,
  Number,   // integer digits
  Decimal,  // digits '.' digits
  Semi,     // ;
  ParPar,   // ||
  Bar,      // |  (reserved; conditions use ||)
  Ket0,     // |0>
  Plus,
  Minus,
  Star,
  Slash,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Assign,     // :=
  RandAssign, // :~
  Arrow,      // <-
  Eq,         // =
  Ne,         // !=
  Lt,
  Le,
  Gt,
  Ge,
  AndAnd,
  Bang,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { tokenize(); }
  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  void tokenize() {
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t start, std::size_t end) {
      tokens_.push_back({k, std::string(src_.substr(start, end - start)), {start, end}});
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '#') {  // line comment
        while (i < src_.size() && src_[i] != '\n') ++i;
        continue;
      }
      std::size_t start = i;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_'))
          ++i;
        push(Tok::Ident, start, i);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
        if (i + 1 < src_.size() && src_[i] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[i + 1]))) {
          ++i;
          while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
          push(Tok::Decimal, start, i);
        } else {
          push(Tok::Number, start, i);
        }
        continue;
      }
      auto two = [&](char a, char b) {
        return src_[i] == a && i + 1 < src_.size() && src_[i + 1] == b;
      };
      if (two('|', '|')) { i += 2; push(Tok::ParPar, start, i); continue; }
      if (src_[i] == '|' && i + 2 < src_.size() && src_[i + 1] == '0' && src_[i + 2] == '>') {
        i += 3;
        push(Tok::Ket0, start, i);
        continue;
      }
      if (two(':', '=')) { i += 2; push(Tok::Assign, start, i); continue; }
      if (two(':', '~')) { i += 2; push(Tok::RandAssign, start, i); continue; }
      if (two('<', '-')) { i += 2; push(Tok::Arrow, start, i); continue; }
      if (two('<', '=')) { i += 2; push(Tok::Le, start, i); continue; }
      if (two('>', '=')) { i += 2; push(Tok::Ge, start, i); continue; }
      if (two('!', '=')) { i += 2; push(Tok::Ne, start, i); continue; }
      if (two('&', '&')) { i += 2; push(Tok::AndAnd, start, i); continue; }
      switch (c) {
        case ';': push(Tok::Semi, start, ++i); continue;
        case '|': push(Tok::Bar, start, ++i); continue;
        case '+': push(Tok::Plus, start, ++i); continue;
        case '-': push(Tok::Minus, start, ++i); continue;
        case '*': push(Tok::Star, start, ++i); continue;
        case '/': push(Tok::Slash, start, ++i); continue;
        case '(': push(Tok::LParen, start, ++i); continue;
        case ')': push(Tok::RParen, start, ++i); continue;
        case '{': push(Tok::LBrace, start, ++i); continue;
        case '}': push(Tok::RBrace, start, ++i); continue;
        case '[': push(Tok::LBracket, start, ++i); continue;
        case ']': push(Tok::RBracket, start, ++i); continue;
        case ',': push(Tok::Comma, start, ++i); continue;
        case ':': push(Tok::Colon, start, ++i); continue;
        case '=': push(Tok::Eq, start, ++i); continue;
        case '<': push(Tok::Lt, start, ++i); continue;
        case '>': push(Tok::Gt, start, ++i); continue;
        case '!': push(Tok::Bang, start, ++i); continue;
        default:
          throw ParseError("unexpected character '" + std::string(1, c) + "'", {start, start + 1});
      }
    }
    tokens_.push_back({Tok::End, "", {src_.size(), src_.size()}});
  }

  std::string_view src_;
  std::vector<Token> tokens_;
};

bool is_keyword(const std::string& s) {
  return s == "var" || s == "bits" || s == "qubits" || s == "skip" || s == "if" ||
         s == "then" || s == "else" || s == "while" || s == "true" || s == "false";
}

class Parser {
 public:
  Parser(std::string_view src, const std::set<std::string>* extra_gates)
      : lexer_(src), toks_(lexer_.tokens()), extra_gates_(extra_gates) {}

  ProgramFile parse_file() {
    ProgramFile file;
    file.header = parse_header();
    header_ = file.header;
    file.program = parse_choice();
    expect(Tok::End, "trailing input after program");
    return file;
  }

  CondPtr parse_condition_only(const Header& header) {
    header_ = header;
    CondPtr c = parse_cond();
    expect(Tok::End, "trailing input after condition");
    return c;
  }

 private:
  const Token& peek(int k = 0) const {
    std::size_t i = pos_ + static_cast<std::size_t>(k);
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      advance();
      return true;
    }
    return false;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().span);
    return advance();
  }
  bool at_ident(const char* word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  Header parse_header() {
    Header h;
    if (at_ident("var")) {
      advance();
      h.kind = Header::Kind::Classical;
      while (true) {
        const Token& t = expect(Tok::Ident, "variable name");
        if (is_keyword(t.text)) throw ParseError("keyword used as variable name", t.span);
        h.vars.push_back(t.text);
        if (!accept(Tok::Comma)) break;
      }
      expect(Tok::Semi, "';' after variable declarations");
      return h;
    }
    if (at_ident("bits")) {
      advance();
      h.kind = Header::Kind::Quantum;
      h.bits = parse_nat("bit count");
      if (!at_ident("qubits")) throw ParseError("expected 'qubits'", peek().span);
      advance();
      h.qubits = parse_nat("qubit count");
      expect(Tok::Semi, "';' after bits/qubits header");
      return h;
    }
    h.kind = Header::Kind::Classical;  // headerless: classical, no variables
    return h;
  }

  int parse_nat(const char* what) {
    const Token& t = expect(Tok::Number, what);
    long v = std::stol(t.text);
    if (v < 0 || v > 30) throw ParseError(std::string(what) + " out of range", t.span);
    return static_cast<int>(v);
  }

  // choice := seq ( "+[" rational "]" seq | "+" seq )*    (left-assoc)
  Program parse_choice() {
    Program p = parse_seq();
    while (peek().kind == Tok::Plus) {
      advance();
      if (accept(Tok::LBracket)) {
        SourceSpan span = peek().span;
        Rat prob = parse_probability();
        expect(Tok::RBracket, "']' closing probability");
        Program q = parse_seq();
        if (prob < 0 || prob > 1) throw ParseError("probability outside [0,1]", span);
        p = Prog::pchoice(prob, p, q);
      } else {
        Program q = parse_seq();
        p = Prog::nchoice(p, q);
      }
    }
    return p;
  }

  // seq := par ( ";" par )*
  Program parse_seq() {
    Program p = parse_par();
    while (accept(Tok::Semi)) {
      Program q = parse_par();
      p = Prog::seq(p, q);
    }
    return p;
  }

  // par := unit ( "||" unit )*
  Program parse_par() {
    Program p = parse_unit();
    while (accept(Tok::ParPar)) {
      Program q = parse_unit();
      p = Prog::par(p, q);
    }
    return p;
  }

  Program parse_unit() {
    const Token& t = peek();
    if (accept(Tok::LParen)) {
      Program p = parse_choice();
      expect(Tok::RParen, "')'");
      return p;
    }
    if (at_ident("skip")) {
      advance();
      return Prog::skip();
    }
    if (at_ident("if")) {
      advance();
      CondPtr c = parse_cond();
      check_condition(c, t.span);
      if (!at_ident("then")) throw ParseError("expected 'then'", peek().span);
      advance();
      expect(Tok::LBrace, "'{' opening then-branch");
      Program a = parse_choice();
      expect(Tok::RBrace, "'}' closing then-branch");
      if (!at_ident("else")) throw ParseError("expected 'else'", peek().span);
      advance();
      expect(Tok::LBrace, "'{' opening else-branch");
      Program b = parse_choice();
      expect(Tok::RBrace, "'}' closing else-branch");
      return Prog::if_then_else(c, a, b);
    }
    if (at_ident("while")) {
      advance();
      CondPtr c = parse_cond();
      check_condition(c, t.span);
      expect(Tok::LBrace, "'{' opening loop body");
      Program body = parse_choice();
      expect(Tok::RBrace, "'}' closing loop body");
      return Prog::while_loop(c, body);
    }
    return parse_atomic();
  }

  Program parse_atomic() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text))
      throw ParseError("expected a program", t.span);

    if (header_.kind == Header::Kind::Quantum) return parse_quantum_atomic();

    // classical: x := e  |  x :~ { p: e, ... }
    const Token& name = advance();
    check_classical_var(name);
    if (accept(Tok::Assign)) {
      ExprPtr e = parse_expr();
      return Prog::atomic(Atomic::assign(name.text, e));
    }
    if (accept(Tok::RandAssign)) {
      expect(Tok::LBrace, "'{' opening distribution");
      std::vector<RandBranch> branches;
      while (true) {
        SourceSpan wspan = peek().span;
        Rat w = parse_probability();
        if (w <= 0) throw ParseError("branch weight must be positive", wspan);
        expect(Tok::Colon, "':' after branch weight");
        ExprPtr e = parse_expr();
        branches.push_back({w, e});
        if (!accept(Tok::Comma)) break;
      }
      expect(Tok::RBrace, "'}' closing distribution");
      Rat total = 0;
      for (const auto& b : branches) total += b.weight;
      if (total != 1) throw ParseError("branch weights must sum to 1", name.span);
      return Prog::atomic(Atomic::rand_assign(name.text, std::move(branches)));
    }
    throw ParseError("expected ':=' or ':~' after variable", peek().span);
  }

  Program parse_quantum_atomic() {
    const Token& name = advance();
    // measurement: M[xI <- qJ]
    if (name.text == "M" && peek().kind == Tok::LBracket) {
      advance();
      int bit = parse_bit_name();
      expect(Tok::Arrow, "'<-' in measurement");
      int qubit = parse_qubit_name();
      expect(Tok::RBracket, "']' closing measurement");
      return Prog::atomic(Atomic::measure(bit, qubit));
    }
    // reset: qI <- |0>
    if (auto q = qubit_index(name.text); q && peek().kind == Tok::Arrow) {
      if (*q < 1 || *q > header_.qubits)
        throw ParseError("qubit index out of range", name.span);
      advance();
      expect(Tok::Ket0, "'|0>' in reset");
      return Prog::atomic(Atomic::reset(*q));
    }
    // gate application: NAME(q1, ..., qk)
    if (peek().kind == Tok::LParen) {
      if (!known_gate(name.text))
        throw ParseError("unknown gate '" + name.text + "'", name.span);
      advance();
      std::vector<int> qs;
      while (true) {
        qs.push_back(parse_qubit_name());
        if (!accept(Tok::Comma)) break;
      }
      expect(Tok::RParen, "')' closing gate operands");
      for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = i + 1; j < qs.size(); ++j)
          if (qs[i] == qs[j]) throw ParseError("duplicate qubit operand", name.span);
      return Prog::atomic(Atomic::apply_gate(name.text, std::move(qs)));
    }
    throw ParseError("unknown atomic program '" + name.text + "'", name.span);
  }

  bool known_gate(const std::string& name) const {
    if (builtin_gate_names().count(name)) return true;
    return extra_gates_ && extra_gates_->count(name);
  }

  static std::optional<int> indexed_name(const std::string& s, char prefix) {
    if (s.size() < 2 || s[0] != prefix) return std::nullopt;
    int v = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      v = v * 10 + (s[i] - '0');
      if (v > 1000) return std::nullopt;
    }
    return v;
  }

  std::optional<int> qubit_index(const std::string& s) const { return indexed_name(s, 'q'); }

  int parse_qubit_name() {
    const Token& t = expect(Tok::Ident, "qubit name qI");
    auto q = qubit_index(t.text);
    if (!q) throw ParseError("expected qubit name qI", t.span);
    if (*q < 1 || *q > header_.qubits) throw ParseError("qubit index out of range", t.span);
    return *q;
  }

  int parse_bit_name() {
    const Token& t = expect(Tok::Ident, "bit name xI");
    auto b = indexed_name(t.text, 'x');
    if (!b) throw ParseError("expected bit name xI", t.span);
    if (*b < 1 || *b > header_.bits) throw ParseError("bit index out of range", t.span);
    return *b;
  }

  void check_classical_var(const Token& name) {
    for (const auto& v : header_.vars)
      if (v == name.text) return;
    throw ParseError("undeclared variable '" + name.text + "'", name.span);
  }

  void check_condition(const CondPtr& c, SourceSpan span) {
    std::vector<std::string> vars;
    cond_variables(c, vars);
    if (header_.kind == Header::Kind::Classical) {
      for (const auto& v : vars) {
        bool found = false;
        for (const auto& d : header_.vars) found = found || d == v;
        if (!found) throw ParseError("undeclared variable '" + v + "' in condition", span);
      }
    } else {
      for (const auto& v : vars) {
        auto b = indexed_name(v, 'x');
        if (!b || *b < 1 || *b > header_.bits)
          throw ParseError("condition must test declared bits xI", span);
      }
      check_bit_tests(c, span);
    }
  }

  // quantum conditions: free boolean algebra over xI = 0 and xI = 1
  void check_bit_tests(const CondPtr& c, SourceSpan span) {
    if (!c) return;
    if (c->kind == Cond::Kind::Cmp) {
      bool ok = c->op == CmpOp::Eq && c->clhs->kind == Expr::Kind::Var &&
                c->crhs->kind == Expr::Kind::Const &&
                (c->crhs->value == 0 || c->crhs->value == 1);
      if (!ok) throw ParseError("quantum conditions are bit tests xI = 0 or xI = 1", span);
    }
    check_bit_tests(c->lhs, span);
    check_bit_tests(c->rhs, span);
  }

  // cond := cand ( "||" cand )*
  CondPtr parse_cond() {
    CondPtr c = parse_cand();
    while (accept(Tok::ParPar)) c = Cond::disj(c, parse_cand());
    return c;
  }
  CondPtr parse_cand() {
    CondPtr c = parse_cnot();
    while (accept(Tok::AndAnd)) c = Cond::conj(c, parse_cnot());
    return c;
  }
  CondPtr parse_cnot() {
    if (accept(Tok::Bang)) return Cond::negate(parse_cnot());
    return parse_catom();
  }
  CondPtr parse_catom() {
    if (at_ident("true")) {
      advance();
      return Cond::constant(true);
    }
    if (at_ident("false")) {
      advance();
      return Cond::constant(false);
    }
    if (peek().kind == Tok::LParen) {
      // Could be a parenthesised condition or a comparison whose left
      // expression starts with '(': try condition first.
      std::size_t save = pos_;
      advance();
      try {
        CondPtr c = parse_cond();
        expect(Tok::RParen, "')'");
        if (is_cmp_start()) {  // "(e) < e": it was an expression after all
          pos_ = save;
        } else {
          return c;
        }
      } catch (const ParseError&) {
        pos_ = save;
      }
    }
    ExprPtr l = parse_expr();
    CmpOp op = parse_cmp_op();
    ExprPtr r = parse_expr();
    return Cond::compare(op, l, r);
  }
  bool is_cmp_start() const {
    switch (peek().kind) {
      case Tok::Eq:
      case Tok::Ne:
      case Tok::Lt:
      case Tok::Le:
      case Tok::Gt:
      case Tok::Ge:
        return true;
      default:
        return false;
    }
  }
  CmpOp parse_cmp_op() {
    switch (peek().kind) {
      case Tok::Eq: advance(); return CmpOp::Eq;
      case Tok::Ne: advance(); return CmpOp::Ne;
      case Tok::Lt: advance(); return CmpOp::Lt;
      case Tok::Le: advance(); return CmpOp::Le;
      case Tok::Gt: advance(); return CmpOp::Gt;
      case Tok::Ge: advance(); return CmpOp::Ge;
      default: throw ParseError("expected comparison operator", peek().span);
    }
  }

  // expr := term ( ("+"|"-") term )* ; term := factor ( ("*"|"/") factor )*
  // '+' is also the nondeterministic choice: "+[" always ends the
  // expression, and a '+' whose right side is not an expression is left for
  // the program grammar to consume.
  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (true) {
      if (peek().kind == Tok::Plus && peek(1).kind != Tok::LBracket) {
        std::size_t save = pos_;
        advance();
        try {
          e = Expr::binary(Expr::Kind::Add, e, parse_term());
        } catch (const ParseError&) {
          pos_ = save;
          return e;
        }
      } else if (accept(Tok::Minus)) {
        e = Expr::binary(Expr::Kind::Sub, e, parse_term());
      } else {
        return e;
      }
    }
  }
  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (true) {
      if (accept(Tok::Star)) e = Expr::binary(Expr::Kind::Mul, e, parse_factor());
      else if (accept(Tok::Slash)) e = Expr::binary(Expr::Kind::Div, e, parse_factor());
      else return e;
    }
  }
  ExprPtr parse_factor() {
    const Token& t = peek();
    if (accept(Tok::Minus)) {
      const Token& n = expect(Tok::Number, "number after unary '-'");
      return Expr::constant(-int_from_digits(n.text));
    }
    if (t.kind == Tok::Number) {
      advance();
      return Expr::constant(int_from_digits(t.text));
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text)) {
      advance();
      return Expr::variable(t.text);
    }
    if (accept(Tok::LParen)) {
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    throw ParseError("expected expression", t.span);
  }

  // probability := NUMBER ("/" NUMBER)? | DECIMAL
  Rat parse_probability() {
    const Token& t = peek();
    if (t.kind == Tok::Decimal) {
      advance();
      auto r = parse_rational(t.text);
      if (!r) throw ParseError("malformed probability", t.span);
      return *r;
    }
    const Token& n = expect(Tok::Number, "probability");
    Int num = int_from_digits(n.text);
    if (accept(Tok::Slash)) {
      const Token& d = expect(Tok::Number, "denominator");
      Int den = int_from_digits(d.text);
      if (den == 0) throw ParseError("zero denominator", d.span);
      return Rat{num, den};
    }
    return Rat{num};
  }

  Lexer lexer_;
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  Header header_;
  const std::set<std::string>* extra_gates_ = nullptr;
};

}  // namespace

ProgramFile parse_program_file(std::string_view text, const std::set<std::string>* extra_gates) {
  Parser p(text, extra_gates);
  return p.parse_file();
}

CondPtr parse_condition(std::string_view text, const Header& header) {
  Parser p(text, nullptr);
  return p.parse_condition_only(header);
}

const std::set<std::string>& builtin_gate_names() {
  static const std::set<std::string> names = {"I", "X", "Y", "Z", "H",
                                              "S", "T", "CNOT", "CZ", "SWAP"};
  return names;
}

}  // namespace pgcl
