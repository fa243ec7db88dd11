#include "secassess/grounder.hpp"

#include "secassess/error.hpp"

namespace secassess {

namespace {

class Grounder {
 public:
  Grounder(const KnowledgeBase& kb, AtomTable& atoms,
           const GroundOptions& options)
      : kb_(kb), atoms_(atoms), options_(options) {}

  Formula requirement(const std::string& service, const std::string& node,
                      std::size_t depth) {
    const auto rules = kb_.requirements_for(service);
    if (rules.empty()) {
      throw Error(ErrorCode::NoRequirement,
                  "no securityRequirements clause for service " + service);
    }
    std::vector<Formula> alternatives;
    for (const PolicyRule* rule : rules) {
      alternatives.push_back(body(rule->body, rule->node_variable(), node,
                                  depth + 1));
    }
    return Formula::disjunction(std::move(alternatives));
  }

 private:
  Formula body(const dsl::BodyExpr& expr, const std::string& var,
               const std::string& node, std::size_t depth) {
    if (depth > options_.max_depth) {
      throw Error(ErrorCode::RecursivePolicy,
                  "policy unfolding exceeded depth " +
                      std::to_string(options_.max_depth));
    }
    switch (expr.kind) {
      case dsl::BodyExpr::Kind::Conj:
      case dsl::BodyExpr::Kind::Disj: {
        std::vector<Formula> parts;
        for (const auto& child : expr.children) {
          parts.push_back(body(child, var, node, depth));
        }
        return expr.kind == dsl::BodyExpr::Kind::Conj
                   ? Formula::conjunction(std::move(parts))
                   : Formula::disjunction(std::move(parts));
      }
      case dsl::BodyExpr::Kind::Literal: {
        Formula f = literal(expr.atom, var, node, depth);
        return expr.positive ? f : Formula::negation(std::move(f));
      }
      case dsl::BodyExpr::Kind::Greater:
      case dsl::BodyExpr::Kind::IsMinus:
        break;
    }
    throw Error(ErrorCode::UnsupportedStatement,
                "arithmetic in policy bodies is not supported");
  }

  Formula literal(const dsl::Atom& atom, const std::string& var,
                  const std::string& node, std::size_t depth) {
    const auto& last = atom.args.back();
    const std::string& target = last.is_variable() && last.name == var
                                    ? node
                                    : last.name;
    if (atom.predicate == "securityRequirements" && atom.arity() == 2) {
      return requirement(atom.args[0].name, target, depth);
    }
    if (kb_.is_policy(atom.predicate, atom.arity())) {
      std::vector<Formula> alternatives;
      for (const PolicyRule* rule : kb_.rules_for(atom.predicate, 1)) {
        alternatives.push_back(
            body(rule->body, rule->node_variable(), target, depth + 1));
      }
      // A derived predicate may also be asserted directly as a fact.
      if (const Label* label = kb_.capability(atom.predicate, target)) {
        alternatives.push_back(
            Formula::atom(atoms_.intern({atom.predicate, {target}}, *label)));
      }
      return Formula::disjunction(std::move(alternatives));
    }
    const Label* label = kb_.capability(atom.predicate, target);
    if (!label) return Formula::constant(false);  // closed world
    return Formula::atom(atoms_.intern({atom.predicate, {target}}, *label));
  }

  const KnowledgeBase& kb_;
  AtomTable& atoms_;
  const GroundOptions& options_;
};

}  // namespace

Formula ground_requirement(const KnowledgeBase& kb, const std::string& service,
                           const std::string& node, AtomTable& atoms,
                           const GroundOptions& options) {
  if (!kb.nodes.count(node)) {
    throw Error(ErrorCode::UnknownNode, "undeclared node " + node);
  }
  return Grounder(kb, atoms, options).requirement(service, node, 0);
}

GroundFormula ground_requirement(const KnowledgeBase& kb,
                                 const std::string& service,
                                 const std::string& node) {
  GroundFormula out;
  out.root = ground_requirement(kb, service, node, out.atoms);
  return out;
}

std::vector<std::string> candidate_nodes(const KnowledgeBase& kb,
                                         const std::string& service) {
  std::vector<std::string> out;
  if (kb.requirements_for(service).empty()) return out;
  for (const auto& [node, op] : kb.nodes) {
    AtomTable scratch;
    if (!ground_requirement(kb, service, node, scratch).is_false()) {
      out.push_back(node);
    }
  }
  return out;
}

}  // namespace secassess
