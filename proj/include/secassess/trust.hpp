#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secassess/formula.hpp"
#include "secassess/model.hpp"

namespace secassess {

/// How trusts2(A, B) is resolved.
///   Transitive      any simple path of trust edges
///   DirectPreferred a dir(A, B) flag restricts the answer to the direct edge
///   Radius          simple paths of at most `radius` edges
struct TrustQueryMode {
  enum class Kind { Transitive, DirectPreferred, Radius };

  Kind kind = Kind::Transitive;
  unsigned radius = 0;

  static TrustQueryMode transitive() { return {}; }
  static TrustQueryMode direct_preferred() {
    return {Kind::DirectPreferred, 0};
  }
  /// Throws std::invalid_argument for radius 0.
  static TrustQueryMode within(unsigned radius);

  bool operator==(const TrustQueryMode&) const = default;
};

/// `transitive`, `direct`, `radius:N` (N >= 1).
std::optional<TrustQueryMode> parse_trust_mode(std::string_view text);
std::string to_string(const TrustQueryMode& mode);

struct TrustOptions {
  std::size_t max_paths = 1'000'000;

  /// Defaults, with max_paths taken from SECASSESS_MAX_PATHS when it holds a
  /// positive integer.
  static TrustOptions from_environment();
};

/// Edge atom used for the trust edge from -> to.
GroundAtom trust_atom(const std::string& from, const std::string& to);

/// Ordered edge atom ids of each simple path from -> to, in DFS order over
/// edges sorted by target. Empty when from == to.
std::vector<std::vector<AtomId>> trust_paths(const KnowledgeBase& kb,
                                             const std::string& from,
                                             const std::string& to,
                                             const TrustQueryMode& mode,
                                             AtomTable& atoms,
                                             const TrustOptions& options = {});

/// OR over paths of the AND of their edge atoms; True when from == to.
/// Throws UnknownOperator and PathLimit.
Formula trust_formula(const KnowledgeBase& kb, const std::string& from,
                      const std::string& to, const TrustQueryMode& mode,
                      AtomTable& atoms, const TrustOptions& options = {});

GroundFormula trust_formula(const KnowledgeBase& kb, const std::string& from,
                            const std::string& to,
                            const TrustQueryMode& mode = {},
                            const TrustOptions& options = {});

/// Probability that some admissible path has all its edges present.
double trust_degree(const KnowledgeBase& kb, const std::string& from,
                    const std::string& to, const TrustQueryMode& mode = {},
                    const TrustOptions& options = {});

}  // namespace secassess
