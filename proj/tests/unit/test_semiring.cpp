#include <algorithm>
#include <cmath>
#include <cstring>

#include "doctest.h"
#include "generators.hpp"
#include "secassess/error.hpp"
#include "secassess/semiring.hpp"

using namespace secassess;

namespace {

constexpr SemiringKind kAll[] = {SemiringKind::Probability, SemiringKind::TrustConfidenceMax,
                                 SemiringKind::TrustConfidenceMin, SemiringKind::Star};

bool bitwise_equal(const SemiringValue& a, const SemiringValue& b) {
  const double xa[2] = {trust_component(a), confidence_component(a)};
  const double xb[2] = {trust_component(b), confidence_component(b)};
  return a.index() == b.index() && std::memcmp(xa, xb, sizeof xa) == 0;
}

bool close(const SemiringValue& a, const SemiringValue& b, double tol = 1e-12) {
  return a.index() == b.index() &&
         std::abs(trust_component(a) - trust_component(b)) <= tol &&
         std::abs(confidence_component(a) - confidence_component(b)) <= tol;
}

SemiringValue tc(double t, double c) { return TrustConfidence{t, c}; }
SemiringValue star(double t, double c) { return StarTrust{t, c}; }

}  // namespace

TEST_CASE("spellings") {
  for (auto kind : kAll) CHECK(parse_semiring(to_string(kind)) == kind);
  CHECK_FALSE(parse_semiring("boolean"));
}

TEST_CASE("times") {
  const auto m = SemiringKind::TrustConfidenceMax;
  CHECK(close(otimes(m, tc(0.9, 0.8), tc(0.5, 0.5)), tc(0.45, 0.40)));
  CHECK(otimes(SemiringKind::Star, star(-0.5, 0.9), star(-0.4, 0.8)) == star(0.0, 0.9 * 0.8));
  CHECK(close(otimes(SemiringKind::Star, star(-0.5, 0.9), star(0.4, 0.8)), star(-0.2, 0.72)));
  for (auto kind : kAll) {
    gen::Rng rng(1);
    const auto a = gen::value(rng, kind);
    CHECK(otimes(kind, one(kind), a) == a);
  }
}

TEST_CASE("plus") {
  const auto mx = SemiringKind::TrustConfidenceMax, mn = SemiringKind::TrustConfidenceMin;
  CHECK(oplus(mx, tc(0.3, 0.9), tc(0.8, 0.2)) == tc(0.3, 0.9));
  CHECK(oplus(mx, tc(0.3, 0.5), tc(0.8, 0.5)) == tc(0.8, 0.5));
  CHECK(oplus(mn, tc(0.3, 0.5), tc(0.8, 0.5)) == tc(0.3, 0.5));
  const auto s = SemiringKind::Star;
  CHECK(oplus(s, star(-0.6, 0.5), star(0.4, 0.5)) == star(-0.6, 0.5));
  CHECK(oplus(s, star(-0.3, 0.5), star(0.3, 0.5)) == star(0.3, 0.5));
  CHECK(oplus(s, star(-0.5, 0.5), star(-0.3, 0.5)) == star(-0.5, 0.5));
  for (auto kind : kAll) {
    gen::Rng rng(2);
    const auto a = gen::value(rng, kind);
    CHECK(oplus(kind, zero(kind), a) == a);
  }
}

TEST_CASE("carrier checks") {
  try {
    otimes(SemiringKind::TrustConfidenceMax, tc(0.5, 0.5), ProbabilityValue{0.5});
    FAIL("expected CarrierMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CarrierMismatch);
  }
  CHECK_THROWS_AS(oplus(SemiringKind::TrustConfidenceMax, tc(-0.5, 0.5), tc(0.1, 0.1)), Error);
  CHECK_NOTHROW(oplus(SemiringKind::Star, star(-0.5, 0.5), star(0.1, 0.1)));
  CHECK(label_value(SemiringKind::Star, Certain{}) == one(SemiringKind::Star));
  CHECK_THROWS_AS(label_value(SemiringKind::Star, Prob{0.5}), Error);
}

TEST_CASE("proof evaluation") {
  const auto m = SemiringKind::TrustConfidenceMax;
  std::vector<SemiringValue> labels{tc(0.9, 0.9), tc(0.7, 0.5), tc(0.8, 0.9), tc(0.5, 0.7)};
  CHECK(close(evaluate_proofs(m, {{0, 1}}, labels), tc(0.63, 0.45)));
  CHECK(close(evaluate_proofs(m, {{0, 1}, {2, 3}}, labels), tc(0.4, 0.63)));
  CHECK(evaluate_proofs(m, {}, labels) == zero(m));
  try {
    evaluate_proofs(m, {{7}}, labels);
    FAIL("expected UnlabeledAtom");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnlabeledAtom);
  }
}

TEST_CASE("proof enumeration") {
  auto a = [](AtomId i) { return Formula::atom(i); };
  CHECK(enumerate_proofs(Formula::disjunction({Formula::conjunction({a(0), a(1)}),
                                               Formula::conjunction({a(2), a(3)})})) ==
        ProofSet{{0, 1}, {2, 3}});
  CHECK(enumerate_proofs(Formula::conjunction({a(0), Formula::disjunction({a(1), a(2)})})) ==
        ProofSet{{0, 1}, {0, 2}});
  // absorption: a ∨ (a ∧ b) has the single minimal proof {a}
  CHECK(enumerate_proofs(Formula::disjunction({a(0), Formula::conjunction({a(0), a(1)})})) ==
        ProofSet{{0}});
  CHECK(enumerate_proofs(Formula::constant(true)) == ProofSet{{}});
  CHECK(enumerate_proofs(Formula::constant(false)).empty());
  try {
    enumerate_proofs(Formula::negation(a(0)));
    FAIL("expected NegationInAlgebraicMode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegationInAlgebraicMode);
  }
  std::vector<Formula> pairs;
  for (AtomId i = 0; i < 12; ++i) pairs.push_back(Formula::disjunction({a(2 * i), a(2 * i + 1)}));
  CHECK_THROWS_AS(enumerate_proofs(Formula::conjunction(pairs), 1000), Error);
}

TEST_CASE("property: semiring laws") {
  for (auto kind : kAll) {
    CAPTURE(to_string(kind));
    gen::Rng rng(0x1a35 + static_cast<int>(kind));
    for (int i = 0; i < 1000; ++i) {
      const auto a = gen::value(rng, kind), b = gen::value(rng, kind), c = gen::value(rng, kind);
      CHECK(bitwise_equal(oplus(kind, a, b), oplus(kind, b, a)));
      CHECK(close(oplus(kind, oplus(kind, a, b), c), oplus(kind, a, oplus(kind, b, c))));
      CHECK(close(otimes(kind, otimes(kind, a, b), c), otimes(kind, a, otimes(kind, b, c))));
      CHECK(bitwise_equal(oplus(kind, zero(kind), a), a));
      CHECK(bitwise_equal(oplus(kind, a, zero(kind)), a));
      CHECK(bitwise_equal(otimes(kind, one(kind), a), a));
      CHECK(bitwise_equal(otimes(kind, a, one(kind)), a));
      CHECK(bitwise_equal(otimes(kind, zero(kind), a), zero(kind)));
      CHECK(bitwise_equal(otimes(kind, a, zero(kind)), zero(kind)));
      CHECK(in_carrier(kind, oplus(kind, a, b)));
      CHECK(in_carrier(kind, otimes(kind, a, b)));
    }
  }
}

TEST_CASE("property: proof order does not matter for pair semirings") {
  for (auto kind : {SemiringKind::TrustConfidenceMax, SemiringKind::TrustConfidenceMin,
                    SemiringKind::Star}) {
    gen::Rng rng(99);
    for (int i = 0; i < 200; ++i) {
      std::vector<SemiringValue> labels;
      for (int k = 0; k < 8; ++k) labels.push_back(gen::value(rng, kind));
      ProofSet proofs;
      for (std::size_t p = 0; p < 1 + gen::pick(rng, 5); ++p) {
        Proof proof;
        for (AtomId k = 0; k < 8; ++k) if (gen::coin(rng, 0.3)) proof.push_back(k);
        proofs.push_back(proof);
      }
      const auto reference = evaluate_proofs(kind, proofs, labels);
      std::shuffle(proofs.begin(), proofs.end(), rng);
      CHECK(close(evaluate_proofs(kind, proofs, labels), reference));
    }
  }
}

TEST_CASE("property: a proof bounds the probability from below") {
  gen::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> w;
    GroundFormula g;
    g.atoms = gen::prob_atoms(rng, 8, w);
    g.root = gen::raw_formula(rng, {8, 4, false, false}).build();
    const auto labels = label_values(SemiringKind::Probability, g.atoms);
    double best = 0.0;
    for (const auto& proof : enumerate_proofs(g.root)) {
      best = std::max(best, trust_component(evaluate_proofs(SemiringKind::Probability, {proof}, labels)));
    }
    // compare against an exact world sum computed without the diagram
    double exact = 0.0;
    std::vector<bool> world(8);
    for (unsigned mask = 0; mask < 256; ++mask) {
      double weight = 1.0;
      for (int k = 0; k < 8; ++k) {
        world[k] = (mask >> k) & 1u;
        weight *= world[k] ? w[k] : 1 - w[k];
      }
      if (g.root.evaluate(world)) exact += weight;
    }
    CHECK(exact >= best - 1e-12);
  }
}
