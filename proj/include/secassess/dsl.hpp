#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secassess/label.hpp"

namespace secassess::dsl {

struct Term {
  enum class Kind { Constant, Variable, Integer, List, Compound };

  Kind kind = Kind::Constant;
  std::string name;  // constant, variable or functor
  long value = 0;    // Integer
  // List elements or compound arguments. For a list with a `|` tail the
  // tail is stored as the last element and `open_tail` is set.
  std::vector<Term> items;
  bool open_tail = false;

  static Term constant(std::string name);
  static Term variable(std::string name);
  static Term integer(long value);

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_ground() const;

  bool operator==(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  bool is_ground() const;

  bool operator==(const Atom&) const = default;
};

struct BodyExpr {
  enum class Kind { Conj, Disj, Literal, Greater, IsMinus };

  Kind kind = Kind::Literal;
  std::vector<BodyExpr> children;  // Conj, Disj
  Atom atom;                       // Literal
  bool positive = true;            // Literal; false for `\+atom`
  Term lhs;                        // Greater: lhs > rhs; IsMinus: lhs is rhs - amount
  Term rhs;
  long amount = 0;

  static BodyExpr literal(Atom atom, bool positive = true);
  static BodyExpr conj(std::vector<BodyExpr> children);
  static BodyExpr disj(std::vector<BodyExpr> children);

  bool operator==(const BodyExpr&) const = default;
};

struct Statement {
  enum class Kind { Fact, AnnotatedFact, Rule, Query };

  Kind kind = Kind::Fact;
  Label label;  // Certain unless AnnotatedFact
  Atom head;    // the queried atom for Query
  std::optional<BodyExpr> body;  // Rule only; empty for unit clauses

  bool operator==(const Statement&) const = default;
};

struct Span {
  std::size_t begin = 0;  // byte offsets, end exclusive
  std::size_t end = 0;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Program {
  std::vector<Statement> statements;
  std::vector<Span> spans;  // parallel to statements; empty when synthetic
  std::string origin;       // file name for diagnostics

  /// Structural equality; spans and origin are ignored.
  bool operator==(const Program& other) const {
    return statements == other.statements;
  }
};

/// Parses the declarative input language. Throws ParseError.
Program parse_program(std::string_view text, std::string origin = {});

std::string print_program(const Program& program);

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const BodyExpr& body);
std::string to_string(const Statement& statement);

/// Variables occurring in a term/atom, in order of first occurrence.
void collect_variables(const Term& term, std::vector<std::string>& out);
void collect_variables(const Atom& atom, std::vector<std::string>& out);

}  // namespace secassess::dsl
