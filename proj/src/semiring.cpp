#include "secassess/semiring.hpp"

#include <algorithm>
#include <cmath>

#include "secassess/error.hpp"

namespace secassess {

std::string_view to_string(SemiringKind kind) {
  switch (kind) {
    case SemiringKind::Probability: return "prob";
    case SemiringKind::TrustConfidenceMax: return "tc-max";
    case SemiringKind::TrustConfidenceMin: return "tc-min";
    case SemiringKind::Star: return "star";
  }
  return "prob";
}

std::optional<SemiringKind> parse_semiring(std::string_view text) {
  if (text == "prob") return SemiringKind::Probability;
  if (text == "tc-max") return SemiringKind::TrustConfidenceMax;
  if (text == "tc-min") return SemiringKind::TrustConfidenceMin;
  if (text == "star") return SemiringKind::Star;
  return std::nullopt;
}

namespace {

// Folds -0.0 into +0.0 so equal values compare bitwise equal.
double canon(double x) { return x + 0.0; }

bool is_tc(SemiringKind kind) {
  return kind == SemiringKind::TrustConfidenceMax ||
         kind == SemiringKind::TrustConfidenceMin;
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

[[noreturn]] void mismatch(SemiringKind kind) {
  throw Error(ErrorCode::CarrierMismatch,
              "operand is not a value of the " + std::string(to_string(kind)) +
                  " semiring");
}

template <typename T>
const T& expect(SemiringKind kind, const SemiringValue& value) {
  const T* v = std::get_if<T>(&value);
  if (!v || !in_carrier(kind, value)) mismatch(kind);
  return *v;
}

double sign(double x) { return x >= 0.0 ? 1.0 : -1.0; }

}  // namespace

SemiringValue zero(SemiringKind kind) {
  if (is_tc(kind)) return TrustConfidence{0.0, 0.0};
  if (kind == SemiringKind::Star) return StarTrust{0.0, 0.0};
  return ProbabilityValue{0.0};
}

SemiringValue one(SemiringKind kind) {
  if (is_tc(kind)) return TrustConfidence{1.0, 1.0};
  if (kind == SemiringKind::Star) return StarTrust{1.0, 1.0};
  return ProbabilityValue{1.0};
}

bool in_carrier(SemiringKind kind, const SemiringValue& value) {
  if (kind == SemiringKind::Probability) {
    const auto* v = std::get_if<ProbabilityValue>(&value);
    return v && in_unit(v->p);
  }
  if (is_tc(kind)) {
    const auto* v = std::get_if<TrustConfidence>(&value);
    return v && in_unit(v->trust) && in_unit(v->confidence);
  }
  const auto* v = std::get_if<StarTrust>(&value);
  return v && v->trust >= -1.0 && v->trust <= 1.0 && in_unit(v->confidence);
}

SemiringValue otimes(SemiringKind kind, const SemiringValue& a,
                     const SemiringValue& b) {
  if (kind == SemiringKind::Probability) {
    return ProbabilityValue{canon(expect<ProbabilityValue>(kind, a).p *
                                  expect<ProbabilityValue>(kind, b).p)};
  }
  if (is_tc(kind)) {
    const auto& x = expect<TrustConfidence>(kind, a);
    const auto& y = expect<TrustConfidence>(kind, b);
    return TrustConfidence{canon(x.trust * y.trust),
                           canon(x.confidence * y.confidence)};
  }
  const auto& x = expect<StarTrust>(kind, a);
  const auto& y = expect<StarTrust>(kind, b);
  // Two consecutive distrust opinions give an indifferent opinion.
  if (x.trust < 0.0 && y.trust < 0.0) {
    return StarTrust{0.0, canon(x.confidence * y.confidence)};
  }
  return StarTrust{canon(x.trust * y.trust), canon(x.confidence * y.confidence)};
}

SemiringValue oplus(SemiringKind kind, const SemiringValue& a,
                    const SemiringValue& b) {
  if (kind == SemiringKind::Probability) {
    const double x = expect<ProbabilityValue>(kind, a).p;
    const double y = expect<ProbabilityValue>(kind, b).p;
    return ProbabilityValue{canon(x + y - x * y)};
  }
  const SemiringValue z = zero(kind);
  if (is_tc(kind)) {
    const auto& x = expect<TrustConfidence>(kind, a);
    const auto& y = expect<TrustConfidence>(kind, b);
    if (a == z) return y;
    if (b == z) return x;
    if (x.confidence > y.confidence) return x;
    if (y.confidence > x.confidence) return y;
    const double t = kind == SemiringKind::TrustConfidenceMax
                         ? std::max(x.trust, y.trust)
                         : std::min(x.trust, y.trust);
    return TrustConfidence{t, x.confidence};
  }
  const auto& x = expect<StarTrust>(kind, a);
  const auto& y = expect<StarTrust>(kind, b);
  if (a == z) return y;
  if (b == z) return x;
  if (x.confidence > y.confidence) return x;
  if (y.confidence > x.confidence) return y;
  // Equal confidence: the stronger opinion wins, trust on an exact standoff.
  const double magnitude = std::max(std::fabs(x.trust), std::fabs(y.trust));
  return StarTrust{canon(sign(x.trust + y.trust) * magnitude), x.confidence};
}

double trust_component(const SemiringValue& value) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ProbabilityValue>) {
          return v.p;
        } else {
          return v.trust;
        }
      },
      value);
}

double confidence_component(const SemiringValue& value) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ProbabilityValue>) {
          return 1.0;
        } else {
          return v.confidence;
        }
      },
      value);
}

std::string format_value(const SemiringValue& value) {
  if (const auto* p = std::get_if<ProbabilityValue>(&value)) {
    return format_number(p->p);
  }
  return "<" + format_number(trust_component(value)) + ", " +
         format_number(confidence_component(value)) + ">";
}

bool label_in_carrier(SemiringKind kind, const Label& label) {
  if (is_certain(label)) return true;
  if (kind == SemiringKind::Probability) {
    const auto* p = std::get_if<Prob>(&label);
    return p && in_unit(p->p);
  }
  const auto* pair = std::get_if<Pair>(&label);
  if (!pair || !in_unit(pair->confidence)) return false;
  if (is_tc(kind)) return in_unit(pair->trust);
  return pair->trust >= -1.0 && pair->trust <= 1.0;
}

SemiringValue label_value(SemiringKind kind, const Label& label) {
  if (!label_in_carrier(kind, label)) {
    throw Error(ErrorCode::CarrierMismatch,
                "label " + format_label(label) + " is not in the " +
                    std::string(to_string(kind)) + " carrier");
  }
  if (is_certain(label)) return one(kind);
  if (const auto* p = std::get_if<Prob>(&label)) return ProbabilityValue{p->p};
  const auto& pair = std::get<Pair>(label);
  if (is_tc(kind)) return TrustConfidence{pair.trust, pair.confidence};
  return StarTrust{pair.trust, pair.confidence};
}

std::vector<SemiringValue> label_values(SemiringKind kind,
                                        const AtomTable& atoms) {
  std::vector<SemiringValue> out;
  out.reserve(atoms.size());
  for (const auto& entry : atoms.entries()) {
    out.push_back(label_value(kind, entry.label));
  }
  return out;
}

SemiringValue evaluate_proofs(SemiringKind kind, const ProofSet& proofs,
                              std::span<const SemiringValue> labels) {
  SemiringValue total = zero(kind);
  for (const auto& proof : proofs) {
    SemiringValue product = one(kind);
    for (AtomId id : proof) {
      if (id >= labels.size()) {
        throw Error(ErrorCode::UnlabeledAtom,
                    "atom #" + std::to_string(id) + " has no label");
      }
      product = otimes(kind, product, labels[id]);
    }
    total = oplus(kind, total, product);
  }
  return total;
}

namespace {

// Keeps only inclusion-minimal proofs; input proofs are sorted sets.
ProofSet minimize(ProofSet proofs) {
  std::sort(proofs.begin(), proofs.end(),
            [](const Proof& a, const Proof& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  proofs.erase(std::unique(proofs.begin(), proofs.end()), proofs.end());
  ProofSet kept;
  for (auto& candidate : proofs) {
    const bool subsumed =
        std::any_of(kept.begin(), kept.end(), [&](const Proof& smaller) {
          return std::includes(candidate.begin(), candidate.end(),
                               smaller.begin(), smaller.end());
        });
    if (!subsumed) kept.push_back(std::move(candidate));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

ProofSet expand(const Formula& f, std::size_t limit) {
  switch (f.kind()) {
    case Formula::Kind::True: return {Proof{}};
    case Formula::Kind::False: return {};
    case Formula::Kind::Atom: return {Proof{f.atom_id()}};
    case Formula::Kind::Not:
      throw Error(ErrorCode::NegationInAlgebraicMode,
                  "negated atoms cannot be evaluated in an algebraic semiring");
    case Formula::Kind::Or: {
      ProofSet out;
      for (const auto& child : f.children()) {
        ProofSet part = expand(child, limit);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > limit) {
          throw Error(ErrorCode::SizeLimit, "too many proofs");
        }
      }
      return minimize(std::move(out));
    }
    case Formula::Kind::And: {
      ProofSet acc{Proof{}};
      for (const auto& child : f.children()) {
        const ProofSet part = expand(child, limit);
        if (acc.size() * part.size() > limit) {
          throw Error(ErrorCode::SizeLimit, "too many proofs");
        }
        ProofSet next;
        next.reserve(acc.size() * part.size());
        for (const auto& left : acc) {
          for (const auto& right : part) {
            Proof merged;
            std::set_union(left.begin(), left.end(), right.begin(),
                           right.end(), std::back_inserter(merged));
            next.push_back(std::move(merged));
          }
        }
        acc = minimize(std::move(next));
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

ProofSet enumerate_proofs(const Formula& formula, std::size_t limit) {
  if (formula.contains_negation()) {
    throw Error(ErrorCode::NegationInAlgebraicMode,
                "negated atoms cannot be evaluated in an algebraic semiring");
  }
  return expand(formula, limit);
}

}  // namespace secassess
