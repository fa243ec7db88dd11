#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "secassess/assessor.hpp"
#include "secassess/explain.hpp"

namespace secassess {

/// `%.10g` for probabilities, `<t, c>` for pairs.
std::string format_level(const SemiringValue& value);

/// Aligned table: `Dep. ID | one column per service | Security`.
std::string render_table(const std::vector<std::string>& services,
                         const std::vector<Assessment>& ranked);

/// {app, operator, semiring, deployments: [{id, assignments, level,
/// level_components?}]} with stable key order.
std::string render_json(const std::string& app, const std::string& op,
                        SemiringKind semiring,
                        const std::vector<Assessment>& ranked);

/// {query, probability, proofs: [{literals, contribution}]}.
std::string render_proofs_json(const std::string& query, const GroundFormula& f,
                               const std::vector<DisjointProof>& proofs);

/// Reads service -> node pairs from JSON in the report schema: a whole
/// report (first deployment), one deployment object, or a bare assignment
/// list. An `operator` given for an assignment must match the node's owner.
/// Throws InconsistentPartial on malformed input or mismatches.
PartialDeployment parse_partial(std::string_view json, const KnowledgeBase& kb,
                                const std::string& app);

}  // namespace secassess
