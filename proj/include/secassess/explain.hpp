#pragma once

#include <string>
#include <utility>
#include <vector>

#include "secassess/formula.hpp"
#include "secassess/wmc.hpp"

namespace secassess {

/// One root-to-⊤ path of the compiled diagram. `literals` holds
/// (atom, value) pairs in diagram order.
struct DisjointProof {
  std::vector<std::pair<AtomId, bool>> literals;
  double contribution = 0.0;
};

/// Mutually exclusive proofs whose contributions sum to the WMC.
/// Paths are listed high branch first.
std::vector<DisjointProof> disjoint_proofs(const GroundFormula& f,
                                           const wmc::CompileOptions& options = {});

/// `a(x)` or `¬a(x)`.
std::string format_literal(const AtomTable& atoms, std::pair<AtomId, bool> literal);

/// Graphviz digraph of the AND/OR structure. Each distinct atom becomes one
/// leaf labelled `atom: value`, so shared atoms have several parents.
std::string export_ground_graph(const GroundFormula& f, const std::string& title);

}  // namespace secassess
