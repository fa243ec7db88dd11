#include "secassess/formula.hpp"

#include <algorithm>
#include <functional>

namespace secassess {

std::string GroundAtom::to_string() const {
  std::string out = predicate;
  if (!args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ",";
      out += args[i];
    }
    out += ")";
  }
  return out;
}

AtomId AtomTable::intern(const GroundAtom& atom, const Label& label) {
  if (auto it = index_.find(atom); it != index_.end()) return it->second;
  const AtomId id = entries_.size();
  entries_.push_back({atom, label});
  index_.emplace(atom, id);
  return id;
}

Formula Formula::constant(bool value) {
  Formula f;
  f.kind_ = value ? Kind::True : Kind::False;
  return f;
}

Formula Formula::atom(AtomId id) {
  Formula f;
  f.kind_ = Kind::Atom;
  f.atom_ = id;
  return f;
}

Formula Formula::negation(Formula child) {
  if (child.is_constant()) return constant(!child.is_true());
  if (child.kind_ == Kind::Not) return std::move(child.children_.front());
  Formula f;
  f.kind_ = Kind::Not;
  f.children_.push_back(std::move(child));
  return f;
}

// x∧True = x, x∧False = False (dually for ∨); same-kind children are spliced.
Formula Formula::combine(Kind kind, std::vector<Formula> children) {
  const bool is_and = kind == Kind::And;
  std::vector<Formula> kept;
  for (auto& child : children) {
    if (child.is_constant()) {
      if (child.is_true() == is_and) continue;  // neutral
      return constant(!is_and);                 // absorbing
    }
    if (child.kind_ == kind) {
      for (auto& grandchild : child.children_) kept.push_back(std::move(grandchild));
    } else {
      kept.push_back(std::move(child));
    }
  }
  if (kept.empty()) return constant(is_and);
  if (kept.size() == 1) return std::move(kept.front());
  Formula f;
  f.kind_ = kind;
  f.children_ = std::move(kept);
  return f;
}

Formula Formula::conjunction(std::vector<Formula> children) {
  return combine(Kind::And, std::move(children));
}

Formula Formula::disjunction(std::vector<Formula> children) {
  return combine(Kind::Or, std::move(children));
}

std::vector<AtomId> Formula::atoms() const {
  std::vector<AtomId> out;
  std::vector<bool> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.kind_ == Kind::Atom) {
      if (seen.size() <= f.atom_) seen.resize(f.atom_ + 1, false);
      if (!seen[f.atom_]) {
        seen[f.atom_] = true;
        out.push_back(f.atom_);
      }
      return;
    }
    for (const auto& child : f.children_) walk(child);
  };
  walk(*this);
  return out;
}

bool Formula::contains_negation() const {
  if (kind_ == Kind::Not) return true;
  return std::any_of(children_.begin(), children_.end(),
                     [](const Formula& f) { return f.contains_negation(); });
}

bool Formula::evaluate(const std::vector<bool>& assignment) const {
  switch (kind_) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return assignment.at(atom_);
    case Kind::Not: return !children_.front().evaluate(assignment);
    case Kind::And:
      return std::all_of(children_.begin(), children_.end(),
                         [&](const Formula& f) { return f.evaluate(assignment); });
    case Kind::Or:
      return std::any_of(children_.begin(), children_.end(),
                         [&](const Formula& f) { return f.evaluate(assignment); });
  }
  return false;
}

std::string to_string(const Formula& formula, const AtomTable& atoms) {
  switch (formula.kind()) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Atom: return atoms[formula.atom_id()].atom.to_string();
    case Formula::Kind::Not:
      return "not(" + to_string(formula.children().front(), atoms) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string out = formula.kind() == Formula::Kind::And ? "and(" : "or(";
      for (std::size_t i = 0; i < formula.children().size(); ++i) {
        if (i) out += ",";
        out += to_string(formula.children()[i], atoms);
      }
      return out + ")";
    }
  }
  return {};
}

}  // namespace secassess
