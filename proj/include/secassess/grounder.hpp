#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "secassess/formula.hpp"
#include "secassess/model.hpp"

namespace secassess {

struct GroundOptions {
  /// Bound on policy inlining depth; validation already rejects cycles.
  std::size_t max_depth = 64;
};

/// Unfolds securityRequirements(service, node) into a formula over the
/// node's capability atoms, interning atoms into `atoms` so several
/// groundings can share ids. Undeclared capabilities become False.
/// Throws NoRequirement when no clause covers `service`, UnknownNode when
/// `node` is undeclared.
Formula ground_requirement(const KnowledgeBase& kb, const std::string& service,
                           const std::string& node, AtomTable& atoms,
                           const GroundOptions& options = {});

GroundFormula ground_requirement(const KnowledgeBase& kb,
                                 const std::string& service,
                                 const std::string& node);

/// Nodes (sorted) whose requirement formula for `service` is not the
/// constant False. Empty when the service has no requirement clause.
std::vector<std::string> candidate_nodes(const KnowledgeBase& kb,
                                         const std::string& service);

}  // namespace secassess
