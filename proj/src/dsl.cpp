#include "secassess/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "secassess/error.hpp"

namespace secassess {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, end);
}

std::string format_label(const Label& label) {
  if (const auto* p = std::get_if<Prob>(&label)) return format_number(p->p);
  if (const auto* pair = std::get_if<Pair>(&label)) {
    return "(" + format_number(pair->trust) + "," +
           format_number(pair->confidence) + ")";
  }
  return {};
}

}  // namespace secassess

namespace secassess::dsl {

Term Term::constant(std::string name) {
  Term t;
  t.kind = Kind::Constant;
  t.name = std::move(name);
  return t;
}

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::Variable;
  t.name = std::move(name);
  return t;
}

Term Term::integer(long value) {
  Term t;
  t.kind = Kind::Integer;
  t.value = value;
  return t;
}

bool Term::is_ground() const {
  if (kind == Kind::Variable) return false;
  return std::all_of(items.begin(), items.end(),
                     [](const Term& t) { return t.is_ground(); });
}

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& t) { return t.is_ground(); });
}

BodyExpr BodyExpr::literal(Atom atom, bool positive) {
  BodyExpr e;
  e.kind = Kind::Literal;
  e.atom = std::move(atom);
  e.positive = positive;
  return e;
}

namespace {

BodyExpr combine(BodyExpr::Kind kind, std::vector<BodyExpr> children) {
  std::vector<BodyExpr> flat;
  for (auto& child : children) {
    if (child.kind == kind) {
      for (auto& grandchild : child.children) flat.push_back(std::move(grandchild));
    } else {
      flat.push_back(std::move(child));
    }
  }
  if (flat.size() == 1) return std::move(flat.front());
  BodyExpr e;
  e.kind = kind;
  e.children = std::move(flat);
  return e;
}

}  // namespace

BodyExpr BodyExpr::conj(std::vector<BodyExpr> children) {
  return combine(Kind::Conj, std::move(children));
}

BodyExpr BodyExpr::disj(std::vector<BodyExpr> children) {
  return combine(Kind::Disj, std::move(children));
}

void collect_variables(const Term& term, std::vector<std::string>& out) {
  if (term.kind == Term::Kind::Variable) {
    if (std::find(out.begin(), out.end(), term.name) == out.end()) {
      out.push_back(term.name);
    }
    return;
  }
  for (const auto& item : term.items) collect_variables(item, out);
}

void collect_variables(const Atom& atom, std::vector<std::string>& out) {
  for (const auto& arg : atom.args) collect_variables(arg, out);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Ident,     // lowercase-initial name
  Var,       // uppercase-initial or underscore name
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Bar,
  Dot,
  Neck,      // :-
  LabelSep,  // ::
  Not,       // \+
  Greater,
  Minus,
  End,
};

std::string_view describe(Tok tok) {
  switch (tok) {
    case Tok::Ident: return "identifier";
    case Tok::Var: return "variable";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semicolon: return "';'";
    case Tok::Bar: return "'|'";
    case Tok::Dot: return "'.'";
    case Tok::Neck: return "':-'";
    case Tok::LabelSep: return "'::'";
    case Tok::Not: return "'\\+'";
    case Tok::Greater: return "'>'";
    case Tok::Minus: return "'-'";
    case Tok::End: return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  bool integral = false;
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token tok;
      tok.offset = pos_;
      tok.line = line_;
      tok.column = column();
      if (pos_ >= text_.size()) {
        tok.kind = Tok::End;
        out.push_back(tok);
        return out;
      }
      const char c = text_[pos_];
      const bool prev_is_operand =
          !out.empty() && (out.back().kind == Tok::Ident ||
                           out.back().kind == Tok::Var ||
                           out.back().kind == Tok::Number ||
                           out.back().kind == Tok::RParen ||
                           out.back().kind == Tok::RBracket);
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && !prev_is_operand && pos_ + 1 < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        lex_number(tok);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
          ++pos_;
        }
        tok.text = std::string(text_.substr(start, pos_ - start));
        tok.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_')
                       ? Tok::Var
                       : Tok::Ident;
      } else {
        lex_punct(tok);
      }
      out.push_back(std::move(tok));
    }
  }

 private:
  std::size_t column() const { return pos_ - line_start_ + 1; }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        return;
      }
    }
  }

  void lex_number(Token& tok) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    bool integral = true;
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      integral = false;
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
        ++look;
      }
      if (look < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[look]))) {
        integral = false;
        pos_ = look;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }
    }
    tok.kind = Tok::Number;
    tok.text = std::string(text_.substr(start, pos_ - start));
    tok.integral = integral;
    std::string digits = tok.text;
    if (digits.front() == '.') digits.insert(digits.begin(), '0');
    std::from_chars(digits.data(), digits.data() + digits.size(), tok.number);
  }

  void lex_punct(Token& tok) {
    const char c = text_[pos_];
    auto next_is = [&](char n) {
      return pos_ + 1 < text_.size() && text_[pos_ + 1] == n;
    };
    std::size_t width = 1;
    switch (c) {
      case '(': tok.kind = Tok::LParen; break;
      case ')': tok.kind = Tok::RParen; break;
      case '[': tok.kind = Tok::LBracket; break;
      case ']': tok.kind = Tok::RBracket; break;
      case ',': tok.kind = Tok::Comma; break;
      case ';': tok.kind = Tok::Semicolon; break;
      case '|': tok.kind = Tok::Bar; break;
      case '.': tok.kind = Tok::Dot; break;
      case '>': tok.kind = Tok::Greater; break;
      case '-': tok.kind = Tok::Minus; break;
      case ':':
        if (next_is('-')) {
          tok.kind = Tok::Neck;
          width = 2;
        } else if (next_is(':')) {
          tok.kind = Tok::LabelSep;
          width = 2;
        } else {
          fail(tok, "unexpected ':'");
        }
        break;
      case '\\':
        if (next_is('+')) {
          tok.kind = Tok::Not;
          width = 2;
        } else {
          fail(tok, "unexpected '\\'");
        }
        break;
      default: {
        std::string shown(1, c);
        if (static_cast<unsigned char>(c) >= 0x80) shown = "non-ASCII byte";
        fail(tok, "unexpected character '" + shown + "'");
      }
    }
    tok.text = std::string(text_.substr(pos_, width));
    pos_ += width;
  }

  [[noreturn]] void fail(const Token& tok, const std::string& message) const {
    throw ParseError(message, tok.line, tok.column, {});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

// ---------------------------------------------------------------------------
// Parser

bool list_allowed(const std::string& predicate, std::size_t arity) {
  return (predicate == "app" && arity == 2) ||
         (predicate == "deployment" && arity == 3);
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string_view text)
      : tokens_(std::move(tokens)), text_(text) {}

  Program run(std::string origin) {
    Program program;
    program.origin = std::move(origin);
    while (peek().kind != Tok::End) {
      const Token& first = peek();
      Span span;
      span.begin = first.offset;
      span.line = first.line;
      span.column = first.column;
      program.statements.push_back(statement());
      span.end = tokens_[pos_ - 1].offset + tokens_[pos_ - 1].text.size();
      program.spans.push_back(span);
    }
    return program;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  const Token& advance() {
    const Token& tok = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return tok;
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& message,
                         std::vector<std::string> expected,
                         const Token* at = nullptr) const {
    const Token& tok = at ? *at : peek();
    throw ParseError(message, tok.line, tok.column, std::move(expected));
  }

  [[noreturn]] void unexpected(std::initializer_list<Tok> expected) const {
    std::vector<std::string> names;
    for (Tok t : expected) names.emplace_back(describe(t));
    std::string found(describe(peek().kind));
    if (peek().kind != Tok::End) found += " '" + peek().text + "'";
    fail("unexpected " + found, std::move(names));
  }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) unexpected({kind});
    return advance();
  }

  Statement statement() {
    Statement st;
    const Token& start = peek();
    if (start.kind == Tok::Number || start.kind == Tok::LParen ||
        start.kind == Tok::Minus) {
      st.label = label();
      expect(Tok::LabelSep);
      st.kind = Statement::Kind::AnnotatedFact;
      st.head = atom();
      if (peek().kind == Tok::Neck) {
        fail("annotated rules are not supported", {"'.'"});
      }
      if (!st.head.is_ground()) {
        fail("annotated fact " + to_string(st.head) + " must be ground", {},
             &start);
      }
      expect(Tok::Dot);
      return st;
    }
    if (start.kind == Tok::Ident && start.text == "query" &&
        peek(1).kind == Tok::LParen) {
      advance();
      advance();
      st.kind = Statement::Kind::Query;
      st.head = atom();
      expect(Tok::RParen);
      expect(Tok::Dot);
      return st;
    }
    st.head = atom();
    if (accept(Tok::Neck)) {
      st.kind = Statement::Kind::Rule;
      st.body = disjunction();
      expect(Tok::Dot);
      return st;
    }
    if (peek().kind != Tok::Dot) unexpected({Tok::Dot, Tok::Neck});
    advance();
    // Unit clauses with variables are rules with an empty body.
    st.kind = st.head.is_ground() ? Statement::Kind::Fact
                                  : Statement::Kind::Rule;
    return st;
  }

  double signed_number() {
    const Token& at = peek();
    const bool negative = accept(Tok::Minus);
    if (peek().kind != Tok::Number) {
      fail("expected a number", {"number"}, &peek());
    }
    (void)at;
    const double value = advance().number;
    return negative ? -value : value;
  }

  Label label() {
    const Token& start = peek();
    if (accept(Tok::LParen)) {
      const double trust = signed_number();
      expect(Tok::Comma);
      const double confidence = signed_number();
      expect(Tok::RParen);
      if (!(trust >= -1.0 && trust <= 1.0)) {
        fail("trust value " + format_number(trust) + " outside [-1,1]", {},
             &start);
      }
      if (!(confidence >= 0.0 && confidence <= 1.0)) {
        fail("confidence " + format_number(confidence) + " outside [0,1]", {},
             &start);
      }
      return Pair{trust, confidence};
    }
    const double p = signed_number();
    if (!(p >= 0.0 && p <= 1.0)) {
      fail("probability " + format_number(p) + " outside [0,1]", {}, &start);
    }
    return Prob{p};
  }

  Atom atom() {
    if (peek().kind != Tok::Ident) unexpected({Tok::Ident});
    Atom a;
    a.predicate = advance().text;
    if (accept(Tok::LParen)) {
      std::vector<Term> args;
      args.push_back(term(/*in_list=*/false));
      while (accept(Tok::Comma)) args.push_back(term(false));
      expect(Tok::RParen);
      a.args = std::move(args);
    }
    if (!list_allowed(a.predicate, a.args.size())) {
      for (const auto& arg : a.args) {
        if (arg.kind == Term::Kind::List) {
          fail("lists are only allowed as arguments of app/2 and deployment/3",
               {});
        }
      }
    }
    return a;
  }

  Term term(bool in_list) {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Var: return Term::variable(advance().text);
      case Tok::Number: {
        if (!tok.integral) fail("only integer constants allowed in terms", {});
        return Term::integer(static_cast<long>(advance().number));
      }
      case Tok::Minus: {
        advance();
        if (peek().kind != Tok::Number || !peek().integral) {
          fail("expected an integer", {"number"});
        }
        return Term::integer(-static_cast<long>(advance().number));
      }
      case Tok::LBracket: return list();
      case Tok::Ident: {
        Term t = Term::constant(advance().text);
        if (peek().kind == Tok::LParen) {
          if (!in_list) {
            fail("compound terms are only allowed inside lists", {});
          }
          advance();
          t.kind = Term::Kind::Compound;
          t.items.push_back(term(true));
          while (accept(Tok::Comma)) t.items.push_back(term(true));
          expect(Tok::RParen);
        }
        return t;
      }
      default:
        unexpected({Tok::Ident, Tok::Var, Tok::Number, Tok::LBracket});
    }
  }

  Term list() {
    expect(Tok::LBracket);
    Term t;
    t.kind = Term::Kind::List;
    if (accept(Tok::RBracket)) return t;
    t.items.push_back(term(true));
    while (accept(Tok::Comma)) t.items.push_back(term(true));
    if (accept(Tok::Bar)) {
      t.items.push_back(term(true));
      t.open_tail = true;
    }
    if (peek().kind != Tok::RBracket) {
      unexpected({Tok::Comma, Tok::Bar, Tok::RBracket});
    }
    advance();
    return t;
  }

  BodyExpr disjunction() {
    std::vector<BodyExpr> parts;
    parts.push_back(conjunction());
    while (accept(Tok::Semicolon)) parts.push_back(conjunction());
    return BodyExpr::disj(std::move(parts));
  }

  BodyExpr conjunction() {
    std::vector<BodyExpr> parts;
    parts.push_back(unit());
    while (accept(Tok::Comma)) parts.push_back(unit());
    return BodyExpr::conj(std::move(parts));
  }

  BodyExpr unit() {
    const Token& tok = peek();
    if (accept(Tok::LParen)) {
      BodyExpr inner = disjunction();
      expect(Tok::RParen);
      return inner;
    }
    if (accept(Tok::Not)) {
      if (peek().kind == Tok::LParen) {
        fail("negation applies to atoms only", {"identifier"});
      }
      return BodyExpr::literal(atom(), false);
    }
    if (tok.kind == Tok::Var) {
      BodyExpr e;
      e.lhs = Term::variable(advance().text);
      if (accept(Tok::Greater)) {
        e.kind = BodyExpr::Kind::Greater;
        e.rhs = term(false);
        if (e.rhs.kind == Term::Kind::List) fail("expected an integer", {});
        return e;
      }
      if (peek().kind == Tok::Ident && peek().text == "is") {
        advance();
        e.kind = BodyExpr::Kind::IsMinus;
        e.rhs = term(false);
        expect(Tok::Minus);
        if (peek().kind != Tok::Number || !peek().integral) {
          fail("expected an integer", {"number"});
        }
        e.amount = static_cast<long>(advance().number);
        return e;
      }
      fail("expected '>' or 'is' after variable", {"'>'", "'is'"});
    }
    if (tok.kind == Tok::Ident) return BodyExpr::literal(atom(), true);
    unexpected({Tok::Ident, Tok::Var, Tok::LParen, Tok::Not});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string_view text_;
};

}  // namespace

Program parse_program(std::string_view text, std::string origin) {
  Lexer lexer(text);
  Parser parser(lexer.run(), text);
  return parser.run(std::move(origin));
}

// ---------------------------------------------------------------------------
// Printer

std::string to_string(const Term& term) {
  switch (term.kind) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return term.name;
    case Term::Kind::Integer:
      return std::to_string(term.value);
    case Term::Kind::Compound: {
      std::string out = term.name + "(";
      for (std::size_t i = 0; i < term.items.size(); ++i) {
        if (i) out += ",";
        out += to_string(term.items[i]);
      }
      return out + ")";
    }
    case Term::Kind::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < term.items.size(); ++i) {
        if (i) out += (term.open_tail && i + 1 == term.items.size()) ? "|" : ",";
        out += to_string(term.items[i]);
      }
      return out + "]";
    }
  }
  return {};
}

std::string to_string(const Atom& atom) {
  std::string out = atom.predicate;
  if (!atom.args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      if (i) out += ",";
      out += to_string(atom.args[i]);
    }
    out += ")";
  }
  return out;
}

std::string to_string(const BodyExpr& body) {
  switch (body.kind) {
    case BodyExpr::Kind::Literal:
      return (body.positive ? "" : "\\+") + to_string(body.atom);
    case BodyExpr::Kind::Greater:
      return to_string(body.lhs) + " > " + to_string(body.rhs);
    case BodyExpr::Kind::IsMinus:
      return to_string(body.lhs) + " is " + to_string(body.rhs) + " - " +
             std::to_string(body.amount);
    case BodyExpr::Kind::Conj: {
      std::string out;
      for (std::size_t i = 0; i < body.children.size(); ++i) {
        if (i) out += ", ";
        const auto& child = body.children[i];
        if (child.kind == BodyExpr::Kind::Disj) {
          out += "(" + to_string(child) + ")";
        } else {
          out += to_string(child);
        }
      }
      return out;
    }
    case BodyExpr::Kind::Disj: {
      std::string out;
      for (std::size_t i = 0; i < body.children.size(); ++i) {
        if (i) out += "; ";
        out += to_string(body.children[i]);
      }
      return out;
    }
  }
  return {};
}

std::string to_string(const Statement& statement) {
  switch (statement.kind) {
    case Statement::Kind::Query:
      return "query(" + to_string(statement.head) + ").";
    case Statement::Kind::Rule:
      if (statement.body) {
        return to_string(statement.head) + " :- " + to_string(*statement.body) +
               ".";
      }
      return to_string(statement.head) + ".";
    case Statement::Kind::AnnotatedFact:
      return format_label(statement.label) + "::" + to_string(statement.head) +
             ".";
    case Statement::Kind::Fact:
      return to_string(statement.head) + ".";
  }
  return {};
}

std::string print_program(const Program& program) {
  std::string out;
  for (const auto& st : program.statements) {
    out += to_string(st);
    out += "\n";
  }
  return out;
}

}  // namespace secassess::dsl
