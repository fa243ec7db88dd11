#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "secassess/formula.hpp"
#include "secassess/label.hpp"

namespace secassess {

/// Which semiring a query is evaluated in. The two trust-confidence
/// variants differ only in how equal-confidence opinions are merged.
enum class SemiringKind {
  Probability,
  TrustConfidenceMax,
  TrustConfidenceMin,
  Star,
};

std::string_view to_string(SemiringKind kind);
/// Accepts the CLI spellings `prob`, `tc-max`, `tc-min`, `star`.
std::optional<SemiringKind> parse_semiring(std::string_view text);

inline bool is_algebraic(SemiringKind kind) {
  return kind != SemiringKind::Probability;
}

struct ProbabilityValue {
  double p = 0.0;
  bool operator==(const ProbabilityValue&) const = default;
};

/// ⟨t, c⟩ with t, c in [0, 1].
struct TrustConfidence {
  double trust = 0.0;
  double confidence = 0.0;
  bool operator==(const TrustConfidence&) const = default;
};

/// Signed ⟨t, c⟩ with t in [-1, 1] (negative = distrust), c in [0, 1].
struct StarTrust {
  double trust = 0.0;
  double confidence = 0.0;
  bool operator==(const StarTrust&) const = default;
};

using SemiringValue = std::variant<ProbabilityValue, TrustConfidence, StarTrust>;

SemiringValue zero(SemiringKind kind);
SemiringValue one(SemiringKind kind);

bool in_carrier(SemiringKind kind, const SemiringValue& value);

/// Both throw Error(CarrierMismatch) when an operand is not a value of `kind`.
SemiringValue otimes(SemiringKind kind, const SemiringValue& a,
                     const SemiringValue& b);
SemiringValue oplus(SemiringKind kind, const SemiringValue& a,
                    const SemiringValue& b);

/// Trust component (the probability itself for the probability semiring).
double trust_component(const SemiringValue& value);
/// Confidence component; 1 for probabilities.
double confidence_component(const SemiringValue& value);

std::string format_value(const SemiringValue& value);

bool label_in_carrier(SemiringKind kind, const Label& label);
/// Maps a declared label into the semiring. Certain becomes one().
/// Throws Error(CarrierMismatch) for labels of the wrong shape or range.
SemiringValue label_value(SemiringKind kind, const Label& label);
std::vector<SemiringValue> label_values(SemiringKind kind,
                                        const AtomTable& atoms);

/// A proof is a set of atom ids, kept sorted and duplicate-free.
using Proof = std::vector<AtomId>;
using ProofSet = std::vector<Proof>;

/// ⊕ over proofs of the ⊗ of each proof's labels; zero() for no proofs.
SemiringValue evaluate_proofs(SemiringKind kind, const ProofSet& proofs,
                              std::span<const SemiringValue> labels);

/// Minimal sets of atoms making a negation-free formula true, sorted
/// lexicographically. Throws NegationInAlgebraicMode, or SizeLimit when the
/// intermediate expansion exceeds `limit` proofs.
ProofSet enumerate_proofs(const Formula& formula,
                          std::size_t limit = 1'000'000);

}  // namespace secassess
