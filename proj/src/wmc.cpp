#include "secassess/wmc.hpp"

#include <algorithm>
#include <unordered_map>

#include "secassess/error.hpp"

namespace secassess::wmc {

namespace {

struct Triple {
  std::uint32_t a;
  std::uint32_t b;
  std::uint32_t c;
  bool operator==(const Triple&) const = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept {
    std::uint64_t h = t.a;
    h = h * 0x9e3779b97f4a7c15ULL ^ t.b;
    h = h * 0x9e3779b97f4a7c15ULL ^ t.c;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

enum class Op : std::uint32_t { And, Or };

}  // namespace

class Compiler {
 public:
  using NodeRef = DecisionDiagram::NodeRef;

  Compiler(std::vector<AtomId> order, const CompileOptions& options)
      : options_(options) {
    dd_.order_ = std::move(order);
    const auto terminal_level = static_cast<std::uint32_t>(dd_.order_.size());
    dd_.nodes_.push_back({terminal_level, DecisionDiagram::kFalse,
                          DecisionDiagram::kFalse});
    dd_.nodes_.push_back({terminal_level, DecisionDiagram::kTrue,
                          DecisionDiagram::kTrue});
    for (std::uint32_t level = 0; level < dd_.order_.size(); ++level) {
      const AtomId atom = dd_.order_[level];
      if (level_of_.size() <= atom) level_of_.resize(atom + 1, kUnset);
      level_of_[atom] = level;
    }
  }

  DecisionDiagram run(const Formula& f) {
    const NodeRef root = build(f);
    return compact(root);
  }

 private:
  static constexpr std::uint32_t kUnset = ~0u;

  std::uint32_t level(NodeRef ref) const { return dd_.nodes_[ref].level; }

  NodeRef make(std::uint32_t level, NodeRef low, NodeRef high) {
    if (low == high) return low;
    const Triple key{level, low, high};
    if (auto it = unique_.find(key); it != unique_.end()) return it->second;
    if (dd_.nodes_.size() >= options_.max_nodes) {
      throw Error(ErrorCode::SizeLimit,
                  "decision diagram exceeds " +
                      std::to_string(options_.max_nodes) + " nodes");
    }
    const auto ref = static_cast<NodeRef>(dd_.nodes_.size());
    dd_.nodes_.push_back({level, low, high});
    unique_.emplace(key, ref);
    return ref;
  }

  NodeRef apply(Op op, NodeRef f, NodeRef g) {
    constexpr NodeRef F = DecisionDiagram::kFalse;
    constexpr NodeRef T = DecisionDiagram::kTrue;
    if (op == Op::And) {
      if (f == F || g == F) return F;
      if (f == T) return g;
      if (g == T) return f;
    } else {
      if (f == T || g == T) return T;
      if (f == F) return g;
      if (g == F) return f;
    }
    if (f == g) return f;
    if (f > g) std::swap(f, g);
    const Triple key{static_cast<std::uint32_t>(op), f, g};
    if (auto it = computed_.find(key); it != computed_.end()) return it->second;

    const std::uint32_t top = std::min(level(f), level(g));
    const auto& nf = dd_.nodes_[f];
    const auto& ng = dd_.nodes_[g];
    const NodeRef f0 = nf.level == top ? nf.low : f;
    const NodeRef f1 = nf.level == top ? nf.high : f;
    const NodeRef g0 = ng.level == top ? ng.low : g;
    const NodeRef g1 = ng.level == top ? ng.high : g;
    const NodeRef low = apply(op, f0, g0);
    const NodeRef high = apply(op, f1, g1);
    const NodeRef result = make(top, low, high);
    computed_.emplace(key, result);
    return result;
  }

  NodeRef negate(NodeRef f) {
    if (f == DecisionDiagram::kFalse) return DecisionDiagram::kTrue;
    if (f == DecisionDiagram::kTrue) return DecisionDiagram::kFalse;
    if (auto it = negated_.find(f); it != negated_.end()) return it->second;
    const auto node = dd_.nodes_[f];
    const NodeRef result = make(node.level, negate(node.low), negate(node.high));
    negated_.emplace(f, result);
    return result;
  }

  NodeRef build(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::True: return DecisionDiagram::kTrue;
      case Formula::Kind::False: return DecisionDiagram::kFalse;
      case Formula::Kind::Atom:
        return make(level_of_.at(f.atom_id()), DecisionDiagram::kFalse,
                    DecisionDiagram::kTrue);
      case Formula::Kind::Not: return negate(build(f.children().front()));
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        const Op op = f.kind() == Formula::Kind::And ? Op::And : Op::Or;
        NodeRef acc = build(f.children().front());
        for (std::size_t i = 1; i < f.children().size(); ++i) {
          acc = apply(op, acc, build(f.children()[i]));
        }
        return acc;
      }
    }
    return DecisionDiagram::kFalse;
  }

  // Keeps only nodes reachable from `root`, preserving children-first order.
  DecisionDiagram compact(NodeRef root) {
    std::vector<bool> live(dd_.nodes_.size(), false);
    live[DecisionDiagram::kFalse] = live[DecisionDiagram::kTrue] = true;
    live[root] = true;
    for (std::size_t i = dd_.nodes_.size(); i-- > 2;) {
      if (!live[i]) continue;
      live[dd_.nodes_[i].low] = true;
      live[dd_.nodes_[i].high] = true;
    }
    DecisionDiagram out;
    out.order_ = dd_.order_;
    std::vector<NodeRef> remap(dd_.nodes_.size(), 0);
    for (std::size_t i = 0; i < dd_.nodes_.size(); ++i) {
      if (!live[i]) continue;
      auto node = dd_.nodes_[i];
      if (i > DecisionDiagram::kTrue) {
        node.low = remap[node.low];
        node.high = remap[node.high];
      }
      remap[i] = static_cast<NodeRef>(out.nodes_.size());
      out.nodes_.push_back(node);
    }
    out.root_ = remap[root];
    return out;
  }

  CompileOptions options_;
  DecisionDiagram dd_;
  std::vector<std::uint32_t> level_of_;
  std::unordered_map<Triple, NodeRef, TripleHash> unique_;
  std::unordered_map<Triple, NodeRef, TripleHash> computed_;
  std::unordered_map<NodeRef, NodeRef> negated_;
};

std::vector<double> probability_weights(const AtomTable& atoms) {
  std::vector<double> out;
  out.reserve(atoms.size());
  for (const auto& entry : atoms.entries()) {
    if (is_certain(entry.label)) {
      out.push_back(1.0);
    } else if (const auto* p = std::get_if<Prob>(&entry.label)) {
      out.push_back(p->p);
    } else {
      throw Error(ErrorCode::UnsupportedLabel,
                  entry.atom.to_string() + " carries the pair label " +
                      format_label(entry.label) +
                      "; probabilities require scalar labels");
    }
  }
  return out;
}

DecisionDiagram compile(const GroundFormula& f,
                        const std::vector<AtomId>& order,
                        const CompileOptions& options) {
  probability_weights(f.atoms);  // label check only
  std::vector<AtomId> full;
  std::vector<bool> taken;
  auto take = [&](AtomId id) {
    if (taken.size() <= id) taken.resize(id + 1, false);
    if (taken[id]) return;
    taken[id] = true;
    full.push_back(id);
  };
  const auto appearance = f.root.atoms();
  std::vector<bool> in_formula;
  for (AtomId id : appearance) {
    if (in_formula.size() <= id) in_formula.resize(id + 1, false);
    in_formula[id] = true;
  }
  for (AtomId id : order) {
    if (id < in_formula.size() && in_formula[id]) take(id);
  }
  for (AtomId id : appearance) take(id);
  return Compiler(std::move(full), options).run(f.root);
}

double probability(const DecisionDiagram& dd, std::span<const double> weights) {
  const auto& nodes = dd.nodes();
  std::vector<double> value(nodes.size(), 0.0);
  value[DecisionDiagram::kTrue] = 1.0;
  for (std::size_t i = 2; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    const double p = weights[dd.atom_at(n.level)];
    value[i] = (1.0 - p) * value[n.low] + p * value[n.high];
  }
  return value[dd.root()];
}

double enumerate_probability(const Formula& f, std::span<const double> weights) {
  const auto atoms = f.atoms();
  if (atoms.size() > 25) {
    throw Error(ErrorCode::TooManyAtoms,
                std::to_string(atoms.size()) +
                    " atoms exceed the enumeration limit of 25");
  }
  std::size_t width = 0;
  for (AtomId id : atoms) width = std::max(width, id + 1);
  std::vector<bool> assignment(width, false);
  double total = 0.0;
  const std::uint64_t worlds = std::uint64_t{1} << atoms.size();
  for (std::uint64_t mask = 0; mask < worlds; ++mask) {
    double weight = 1.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const bool on = (mask >> i) & 1u;
      assignment[atoms[i]] = on;
      weight *= on ? weights[atoms[i]] : 1.0 - weights[atoms[i]];
    }
    if (f.evaluate(assignment)) total += weight;
  }
  return total;
}

double wmc(const GroundFormula& f) {
  return probability(compile(f), probability_weights(f.atoms));
}

}  // namespace secassess::wmc
