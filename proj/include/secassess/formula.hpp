#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "secassess/label.hpp"

namespace secassess {

using AtomId = std::size_t;

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;

  std::string to_string() const;

  auto operator<=>(const GroundAtom&) const = default;
};

/// Interns ground atoms so that one atom gets one id across a whole query.
class AtomTable {
 public:
  struct Entry {
    GroundAtom atom;
    Label label;
  };

  /// Returns the existing id for `atom` or registers it with `label`.
  AtomId intern(const GroundAtom& atom, const Label& label);

  const Entry& operator[](AtomId id) const { return entries_.at(id); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
  std::map<GroundAtom, AtomId> index_;
};

/// Propositional AND/OR/NOT tree over atom ids. Build through the factory
/// functions, which flatten nested connectives and fold constants.
class Formula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  Formula() = default;  // False

  static Formula constant(bool value);
  static Formula atom(AtomId id);
  static Formula negation(Formula child);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);

  Kind kind() const { return kind_; }
  AtomId atom_id() const { return atom_; }
  const std::vector<Formula>& children() const { return children_; }

  bool is_true() const { return kind_ == Kind::True; }
  bool is_false() const { return kind_ == Kind::False; }
  bool is_constant() const { return is_true() || is_false(); }

  /// Distinct atom ids in order of first appearance (pre-order, left first).
  std::vector<AtomId> atoms() const;

  bool contains_negation() const;

  /// Truth value under `assignment`, indexed by atom id.
  bool evaluate(const std::vector<bool>& assignment) const;

  bool operator==(const Formula&) const = default;

 private:
  static Formula combine(Kind kind, std::vector<Formula> children);

  Kind kind_ = Kind::False;
  AtomId atom_ = 0;
  std::vector<Formula> children_;
};

/// A formula together with the table that labels its atoms.
struct GroundFormula {
  Formula root;
  AtomTable atoms;
};

/// Debug rendering, e.g. `and(or(a(x),b(x)),c(x))`.
std::string to_string(const Formula& formula, const AtomTable& atoms);

}  // namespace secassess
