#include "secassess/trust.hpp"

#include <charconv>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

#include "secassess/error.hpp"
#include "secassess/wmc.hpp"

namespace secassess {

TrustQueryMode TrustQueryMode::within(unsigned radius) {
  if (radius == 0) throw std::invalid_argument("trust radius must be >= 1");
  return {Kind::Radius, radius};
}

std::optional<TrustQueryMode> parse_trust_mode(std::string_view text) {
  if (text == "transitive") return TrustQueryMode::transitive();
  if (text == "direct") return TrustQueryMode::direct_preferred();
  constexpr std::string_view prefix = "radius:";
  if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
  text.remove_prefix(prefix.size());
  unsigned radius = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), radius);
  if (ec != std::errc{} || end != text.data() + text.size() || radius == 0) {
    return std::nullopt;
  }
  return TrustQueryMode::within(radius);
}

std::string to_string(const TrustQueryMode& mode) {
  switch (mode.kind) {
    case TrustQueryMode::Kind::Transitive: return "transitive";
    case TrustQueryMode::Kind::DirectPreferred: return "direct";
    case TrustQueryMode::Kind::Radius:
      return "radius:" + std::to_string(mode.radius);
  }
  return "transitive";
}

TrustOptions TrustOptions::from_environment() {
  TrustOptions options;
  if (const char* raw = std::getenv("SECASSESS_MAX_PATHS")) {
    std::string_view text(raw);
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && end == text.data() + text.size() && value > 0) {
      options.max_paths = value;
    }
  }
  return options;
}

GroundAtom trust_atom(const std::string& from, const std::string& to) {
  return {"trusts", {from, to}};
}

namespace {

void check_operators(const KnowledgeBase& kb, const std::string& from,
                     const std::string& to) {
  for (const auto* op : {&from, &to}) {
    if (!kb.knows_operator(*op)) {
      throw Error(ErrorCode::UnknownOperator, "unknown operator " + *op);
    }
  }
}

class PathSearch {
 public:
  PathSearch(const KnowledgeBase& kb, AtomTable& atoms, std::size_t max_edges,
             std::size_t max_paths)
      : atoms_(atoms), max_edges_(max_edges), max_paths_(max_paths) {
    for (const auto& edge : kb.trust.edges) adjacency_[edge.from].push_back(&edge);
  }

  std::vector<std::vector<AtomId>> run(const std::string& from,
                                       const std::string& to) {
    target_ = &to;
    visited_.insert(from);
    visit(from);
    return std::move(paths_);
  }

 private:
  void visit(const std::string& at) {
    if (current_.size() == max_edges_) return;
    auto it = adjacency_.find(at);
    if (it == adjacency_.end()) return;
    for (const TrustEdge* edge : it->second) {
      if (visited_.count(edge->to)) continue;
      current_.push_back(atoms_.intern(trust_atom(edge->from, edge->to), edge->label));
      if (edge->to == *target_) {
        if (paths_.size() == max_paths_) {
          throw Error(ErrorCode::PathLimit,
                      "more than " + std::to_string(max_paths_) +
                          " trust paths; raise SECASSESS_MAX_PATHS");
        }
        paths_.push_back(current_);
      } else {
        visited_.insert(edge->to);
        visit(edge->to);
        visited_.erase(edge->to);
      }
      current_.pop_back();
    }
  }

  AtomTable& atoms_;
  std::size_t max_edges_;
  std::size_t max_paths_;
  std::map<std::string, std::vector<const TrustEdge*>> adjacency_;
  const std::string* target_ = nullptr;
  std::set<std::string> visited_;
  std::vector<AtomId> current_;
  std::vector<std::vector<AtomId>> paths_;
};

}  // namespace

std::vector<std::vector<AtomId>> trust_paths(const KnowledgeBase& kb,
                                             const std::string& from,
                                             const std::string& to,
                                             const TrustQueryMode& mode,
                                             AtomTable& atoms,
                                             const TrustOptions& options) {
  if (from == to) return {};
  check_operators(kb, from, to);
  if (mode.kind == TrustQueryMode::Kind::DirectPreferred &&
      kb.direct_flags.count({from, to})) {
    const TrustEdge* edge = kb.trust.find(from, to);
    if (!edge) return {};
    return {{atoms.intern(trust_atom(from, to), edge->label)}};
  }
  const std::size_t max_edges = mode.kind == TrustQueryMode::Kind::Radius
                                    ? mode.radius
                                    : kb.trust.edges.size() + 1;
  return PathSearch(kb, atoms, max_edges, options.max_paths).run(from, to);
}

Formula trust_formula(const KnowledgeBase& kb, const std::string& from,
                      const std::string& to, const TrustQueryMode& mode,
                      AtomTable& atoms, const TrustOptions& options) {
  if (from == to) return Formula::constant(true);
  std::vector<Formula> alternatives;
  for (const auto& path : trust_paths(kb, from, to, mode, atoms, options)) {
    std::vector<Formula> edges;
    for (AtomId id : path) edges.push_back(Formula::atom(id));
    alternatives.push_back(Formula::conjunction(std::move(edges)));
  }
  return Formula::disjunction(std::move(alternatives));
}

GroundFormula trust_formula(const KnowledgeBase& kb, const std::string& from,
                            const std::string& to, const TrustQueryMode& mode,
                            const TrustOptions& options) {
  GroundFormula out;
  out.root = trust_formula(kb, from, to, mode, out.atoms, options);
  return out;
}

double trust_degree(const KnowledgeBase& kb, const std::string& from,
                    const std::string& to, const TrustQueryMode& mode,
                    const TrustOptions& options) {
  return wmc::wmc(trust_formula(kb, from, to, mode, options));
}

}  // namespace secassess
