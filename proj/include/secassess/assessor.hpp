#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "secassess/formula.hpp"
#include "secassess/model.hpp"
#include "secassess/semiring.hpp"
#include "secassess/trust.hpp"
#include "secassess/wmc.hpp"

namespace secassess {

struct Assignment {
  std::string service;
  std::string node;
  std::string node_operator;

  bool operator==(const Assignment&) const = default;
};

struct Deployment {
  std::string app;
  std::string deploying_operator;
  std::vector<Assignment> assignments;  // app service order

  /// Node ids in service order, used for lexicographic tie-breaks.
  std::vector<std::string> nodes() const;

  bool operator==(const Deployment&) const = default;
};

/// Services fixed in advance, service -> node.
using PartialDeployment = std::map<std::string, std::string>;

/// Whether the trust conjunct and reachability filter apply. Auto enables
/// them only when the knowledge base declares at least one trust edge.
enum class TrustUsage { Auto, Always, Never };

enum class RankBy { Value, Confidence };

struct AssessOptions {
  TrustQueryMode trust_mode;
  TrustUsage trust_usage = TrustUsage::Auto;
  TrustOptions trust;
  RankBy rank_by = RankBy::Confidence;
  wmc::CompileOptions compile;
  std::size_t max_proofs = 1'000'000;
  /// Worker threads for rank(); 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct Assessment {
  Deployment deployment;
  SemiringValue level;
  GroundFormula formula;
  /// 1-based position in enumeration order (the Δ number).
  std::size_t index = 0;
};

bool trust_enabled(const KnowledgeBase& kb, const AssessOptions& options);

/// Eligible deployments in enumeration order. Throws UnknownApp and
/// InconsistentPartial.
std::vector<Deployment> enumerate_deployments(
    const KnowledgeBase& kb, const std::string& app,
    const std::string& deploying_operator,
    const PartialDeployment& partial = {}, const AssessOptions& options = {});

/// AND over services of requirement ∧ trust, all atoms in one table.
GroundFormula deployment_formula(const KnowledgeBase& kb, const Deployment& d,
                                 const AssessOptions& options = {});

/// Security level in the knowledge base's semiring.
Assessment assess(const KnowledgeBase& kb, const Deployment& d,
                  const AssessOptions& options = {});

/// Evaluates a ground formula in `kind`: WMC for probabilities, proof-level
/// evaluation otherwise.
SemiringValue evaluate(SemiringKind kind, const GroundFormula& f,
                       const AssessOptions& options = {});

/// Assesses every eligible deployment (in parallel) and orders them.
std::vector<Assessment> rank(const KnowledgeBase& kb, const std::string& app,
                             const std::string& deploying_operator,
                             const PartialDeployment& partial = {},
                             const AssessOptions& options = {});

/// Strict weak order used by rank().
bool ranks_before(SemiringKind kind, RankBy rank_by, const Assessment& a,
                  const Assessment& b);

/// `secFog(op,app,[d(service,node,owner),...])`.
std::string deployment_query(const Deployment& d);

struct QueryAnswer {
  std::string label;  // the query with its variables filled in
  GroundFormula formula;
};

/// Grounds a `query/1` target. Supported: secFog(Op, App, D) with D unbound
/// (one answer per eligible deployment) and trusts2(A, B) with both bound.
std::vector<QueryAnswer> ground_query(const KnowledgeBase& kb,
                                      const dsl::Atom& query,
                                      const AssessOptions& options = {});

}  // namespace secassess
