#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "secassess/dsl.hpp"
#include "secassess/label.hpp"
#include "secassess/semiring.hpp"

namespace secassess {

/// A custom security policy `p(N) :- ...` or a requirement clause
/// `securityRequirements(service, N) :- ...`.
struct PolicyRule {
  dsl::Atom head;
  dsl::BodyExpr body;
  std::string origin;
  std::size_t line = 0;

  /// The head's node variable.
  const std::string& node_variable() const { return head.args.back().name; }
  bool is_requirement() const;

  bool operator==(const PolicyRule& other) const {
    return head == other.head && body == other.body;
  }
};

struct TrustEdge {
  std::string from;
  std::string to;
  Label label;

  bool operator==(const TrustEdge&) const = default;
};

struct TrustNetwork {
  std::vector<TrustEdge> edges;  // sorted by (from, to), one per pair
  std::set<std::string> operators;

  const TrustEdge* find(const std::string& from, const std::string& to) const;

  bool operator==(const TrustNetwork&) const = default;
};

struct KnowledgeBase {
  SemiringKind semiring = SemiringKind::Probability;
  std::map<std::string, std::string> nodes;  // node -> operator
  std::map<std::pair<std::string, std::string>, Label>
      capabilities;  // (capability, node) -> label
  std::map<std::string, std::vector<std::string>> apps;  // app -> services
  std::vector<PolicyRule> policies;  // canonical order
  TrustNetwork trust;
  std::set<std::pair<std::string, std::string>> direct_flags;
  std::vector<dsl::Atom> queries;

  std::optional<std::string> node_operator(const std::string& node) const;
  const Label* capability(const std::string& name,
                          const std::string& node) const;
  bool is_policy(const std::string& predicate, std::size_t arity) const;
  std::vector<const PolicyRule*> rules_for(const std::string& predicate,
                                           std::size_t arity) const;
  /// Requirement clauses declared for `service`.
  std::vector<const PolicyRule*> requirements_for(
      const std::string& service) const;
  /// True when some app lists `service`.
  bool has_service(const std::string& service) const;
  /// Every operator known from nodes, trust edges or dir/2 flags.
  bool knows_operator(const std::string& op) const;

  bool operator==(const KnowledgeBase&) const = default;
};

/// Validates and merges programs. Throws Error with one of DuplicateLabel,
/// UnknownNode, RecursivePolicy, RangeError, UnsafeRule, ConflictingNode,
/// InvalidApp, InvalidNegation or UnsupportedStatement.
KnowledgeBase build_kb(const std::vector<dsl::Program>& programs,
                       SemiringKind semiring = SemiringKind::Probability);

/// Reads and parses one `.sf` file. ParseError messages are prefixed with
/// the path; I/O failures throw std::runtime_error.
dsl::Program read_program(const std::filesystem::path& path);

struct Warning {
  std::string atom;
  std::string message;

  bool operator==(const Warning&) const = default;
};

/// The reference capability vocabulary, 21 names.
const std::vector<std::string>& capability_vocabulary();

/// One warning per declared capability name outside the vocabulary.
std::vector<Warning> lint_vocabulary(const KnowledgeBase& kb);

}  // namespace secassess
