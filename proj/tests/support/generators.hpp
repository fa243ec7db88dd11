// Hand-rolled random generators for the property tests. Every generator takes
// the engine explicitly so failures reproduce from the printed seed.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "secassess/dsl.hpp"
#include "secassess/formula.hpp"
#include "secassess/model.hpp"
#include "secassess/semiring.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return uniform(rng) < p; }

/// A formula tree built without the simplifying factories, so tests can
/// compare the simplified Formula against the raw structure.
struct RawExpr {
  enum class Kind { True, False, Atom, Not, And, Or };
  Kind kind = Kind::False;
  secassess::AtomId atom = 0;
  std::vector<RawExpr> children;

  bool evaluate(const std::vector<bool>& world) const {
    switch (kind) {
      case Kind::True: return true;
      case Kind::False: return false;
      case Kind::Atom: return world[atom];
      case Kind::Not: return !children[0].evaluate(world);
      case Kind::And:
        for (const auto& c : children) if (!c.evaluate(world)) return false;
        return true;
      case Kind::Or:
        for (const auto& c : children) if (c.evaluate(world)) return true;
        return false;
    }
    return false;
  }

  secassess::Formula build() const {
    using secassess::Formula;
    switch (kind) {
      case Kind::True: return Formula::constant(true);
      case Kind::False: return Formula::constant(false);
      case Kind::Atom: return Formula::atom(atom);
      case Kind::Not: return Formula::negation(children[0].build());
      case Kind::And:
      case Kind::Or: {
        std::vector<Formula> parts;
        for (const auto& c : children) parts.push_back(c.build());
        return kind == Kind::And ? Formula::conjunction(std::move(parts))
                                 : Formula::disjunction(std::move(parts));
      }
    }
    return Formula::constant(false);
  }
};

struct FormulaShape {
  std::size_t atoms = 12;
  std::size_t depth = 6;
  bool negation = true;
  bool constants = true;
};

inline RawExpr raw_formula(Rng& rng, const FormulaShape& shape,
                           std::size_t depth = 0) {
  RawExpr e;
  const bool leaf = depth >= shape.depth || coin(rng, 0.15 + 0.1 * depth);
  if (leaf) {
    if (shape.constants && coin(rng, 0.08)) {
      e.kind = coin(rng) ? RawExpr::Kind::True : RawExpr::Kind::False;
    } else {
      e.kind = RawExpr::Kind::Atom;
      e.atom = pick(rng, shape.atoms);
    }
    return e;
  }
  if (shape.negation && coin(rng, 0.15)) {
    e.kind = RawExpr::Kind::Not;
    e.children.push_back(raw_formula(rng, shape, depth + 1));
    return e;
  }
  e.kind = coin(rng) ? RawExpr::Kind::And : RawExpr::Kind::Or;
  const std::size_t width = 2 + pick(rng, 3);
  for (std::size_t i = 0; i < width; ++i) {
    e.children.push_back(raw_formula(rng, shape, depth + 1));
  }
  return e;
}

/// Atom table with `n` atoms `x0..x{n-1}`, probability labels.
inline secassess::AtomTable prob_atoms(Rng& rng, std::size_t n,
                                       std::vector<double>& weights) {
  secassess::AtomTable table;
  weights.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const double p = uniform(rng);
    weights.push_back(p);
    table.intern({"x" + std::to_string(i), {}}, secassess::Prob{p});
  }
  return table;
}

/// Random value in the carrier of `kind`. Values are drawn from a small grid
/// a fifth of the time so that confidence ties actually occur.
inline secassess::SemiringValue value(Rng& rng, secassess::SemiringKind kind) {
  using namespace secassess;
  auto component = [&](double lo) {
    if (coin(rng, 0.2)) {
      static const double grid[] = {0.0, 0.25, 0.5, 1.0};
      double v = grid[pick(rng, 4)];
      return lo < 0 && v != 0.0 && coin(rng) ? -v : v;
    }
    return uniform(rng, lo, 1.0);
  };
  switch (kind) {
    case SemiringKind::Probability: return ProbabilityValue{component(0.0)};
    case SemiringKind::TrustConfidenceMax:
    case SemiringKind::TrustConfidenceMin:
      return TrustConfidence{component(0.0), component(0.0)};
    case SemiringKind::Star: return StarTrust{component(-1.0), component(0.0)};
  }
  return ProbabilityValue{0.0};
}

struct RandomEdge {
  std::string from;
  std::string to;
  double p;
};

/// Random directed trust network over operators o0..o{n-1}, at most one
/// edge per ordered pair, no self loops.
inline std::vector<RandomEdge> network(Rng& rng, std::size_t operators,
                                       std::size_t max_edges) {
  std::vector<RandomEdge> out;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < operators; ++a)
    for (std::size_t b = 0; b < operators; ++b)
      if (a != b) pairs.emplace_back(a, b);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  const std::size_t count = std::min(max_edges, pairs.size());
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({"o" + std::to_string(pairs[i].first),
                   "o" + std::to_string(pairs[i].second),
                   std::round(uniform(rng) * 1000.0) / 1000.0});
  }
  return out;
}

inline std::string network_source(const std::vector<RandomEdge>& edges) {
  std::string out;
  for (const auto& e : edges) {
    out += secassess::format_number(e.p) + "::trusts(" + e.from + "," + e.to + ").\n";
  }
  return out;
}

// ---- DSL programs -------------------------------------------------------

inline std::string lower_name(Rng& rng) {
  static const char* names[] = {"a", "b", "cloud", "edge1", "fw", "n_2", "op"};
  return names[pick(rng, 7)];
}

inline std::string upper_name(Rng& rng) {
  static const char* names[] = {"N", "X", "Y", "Op", "_", "_Tmp"};
  return names[pick(rng, 6)];
}

inline secassess::dsl::Term term(Rng& rng, bool ground) {
  using secassess::dsl::Term;
  if (!ground && coin(rng, 0.4)) return Term::variable(upper_name(rng));
  if (coin(rng, 0.1)) return Term::integer(static_cast<long>(pick(rng, 100)));
  return Term::constant(lower_name(rng));
}

inline secassess::dsl::Atom atom(Rng& rng, bool ground) {
  secassess::dsl::Atom a;
  static const char* preds[] = {"firewall", "backup", "p", "secure_storage", "q2"};
  a.predicate = preds[pick(rng, 5)];
  const std::size_t arity = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < arity; ++i) a.args.push_back(term(rng, ground));
  return a;
}

inline secassess::dsl::BodyExpr body(Rng& rng, std::size_t depth = 0) {
  using secassess::dsl::BodyExpr;
  if (depth >= 3 || coin(rng, 0.35)) {
    return BodyExpr::literal(atom(rng, false), !coin(rng, 0.2));
  }
  std::vector<BodyExpr> children;
  const std::size_t width = 2 + pick(rng, 2);
  for (std::size_t i = 0; i < width; ++i) children.push_back(body(rng, depth + 1));
  return coin(rng) ? BodyExpr::conj(std::move(children))
                   : BodyExpr::disj(std::move(children));
}

inline secassess::Label label(Rng& rng) {
  using namespace secassess;
  switch (pick(rng, 3)) {
    case 0: return Certain{};
    case 1: return Prob{uniform(rng)};
    default: return Pair{uniform(rng, -1.0, 1.0), uniform(rng)};
  }
}

inline secassess::dsl::Program program(Rng& rng) {
  using secassess::dsl::Statement;
  secassess::dsl::Program p;
  const std::size_t n = 1 + pick(rng, 8);
  for (std::size_t i = 0; i < n; ++i) {
    Statement s;
    switch (pick(rng, 4)) {
      case 0:
        s.kind = Statement::Kind::Fact;
        s.head = atom(rng, true);
        break;
      case 1:
        s.kind = Statement::Kind::AnnotatedFact;
        s.head = atom(rng, true);
        s.label = label(rng);
        if (secassess::is_certain(s.label)) s.label = secassess::Prob{0.5};
        break;
      case 2:
        s.kind = Statement::Kind::Rule;
        s.head = atom(rng, false);
        if (coin(rng, 0.8)) s.body = body(rng);
        if (!s.body && s.head.is_ground()) s.kind = Statement::Kind::Fact;
        break;
      default:
        s.kind = Statement::Kind::Query;
        s.head = atom(rng, coin(rng));
        break;
    }
    p.statements.push_back(std::move(s));
  }
  return p;
}

}  // namespace gen
