#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "secassess/formula.hpp"

namespace secassess::wmc {

struct CompileOptions {
  std::size_t max_nodes = 10'000'000;
};

/// Reduced ordered BDD over atom ids. Node 0 is ⊥ and node 1 is ⊤; every
/// decision node's children have smaller indices than the node itself.
class DecisionDiagram {
 public:
  using NodeRef = std::uint32_t;
  static constexpr NodeRef kFalse = 0;
  static constexpr NodeRef kTrue = 1;

  struct Node {
    std::uint32_t level = 0;  // position in order(); terminals use order().size()
    NodeRef low = 0;
    NodeRef high = 0;
  };

  NodeRef root() const { return root_; }
  const Node& node(NodeRef ref) const { return nodes_.at(ref); }
  const std::vector<Node>& nodes() const { return nodes_; }
  static bool is_terminal(NodeRef ref) { return ref <= kTrue; }

  /// Variable order: order()[level] is the atom tested at that level.
  const std::vector<AtomId>& order() const { return order_; }
  AtomId atom_at(std::uint32_t level) const { return order_.at(level); }

  /// Number of decision nodes (terminals excluded).
  std::size_t size() const { return nodes_.size() - 2; }

 private:
  friend class Compiler;

  std::vector<Node> nodes_;
  std::vector<AtomId> order_;
  NodeRef root_ = kFalse;
};

/// Compiles `f` into a canonical diagram. `order` overrides the default
/// first-appearance order; atoms it omits are appended in appearance order.
/// Throws UnsupportedLabel for non-probability labels and SizeLimit when
/// the node count exceeds the cap.
DecisionDiagram compile(const GroundFormula& f,
                        const std::vector<AtomId>& order = {},
                        const CompileOptions& options = {});

/// Weights indexed by atom id: Certain → 1, Prob p → p.
/// Throws UnsupportedLabel on pair labels.
std::vector<double> probability_weights(const AtomTable& atoms);

/// Bottom-up weighted model count.
double probability(const DecisionDiagram& dd, std::span<const double> weights);

/// Brute force over all 2^n assignments of the formula's atoms; independent
/// of the diagram path. Throws TooManyAtoms above 25 atoms.
double enumerate_probability(const Formula& f, std::span<const double> weights);

/// compile + probability with the default order.
double wmc(const GroundFormula& f);

}  // namespace secassess::wmc
