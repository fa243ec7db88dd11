#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "secassess/error.hpp"
#include "secassess/grounder.hpp"
#include "secassess/wmc.hpp"

using namespace secassess;

namespace {

bool has_inner_constant(const Formula& f, bool top = true) {
  if (f.is_constant()) return !top;
  for (const auto& c : f.children())
    if (has_inner_constant(c, false)) return true;
  return false;
}

}  // namespace

TEST_CASE("weatherMonitor on the cloud drops the undeclared capability") {
  const auto kb = fixtures::load({"weather.sf"});
  const auto g = ground_requirement(kb, "weatherMonitor", "cloud");
  CHECK(to_string(g.root, g.atoms) ==
        "and(or(anti_tampering(cloud),access_control(cloud)),iot_data_encryption(cloud))");
}

TEST_CASE("weatherMonitor on the edge") {
  const auto kb = fixtures::load({"weather.sf"});
  const auto g = ground_requirement(kb, "weatherMonitor", "edge");
  CHECK(to_string(g.root, g.atoms) ==
        "and(anti_tampering(edge),or(wireless_security(edge),iot_data_encryption(edge)))");
}

TEST_CASE("undeclared capabilities make the requirement false") {
  const auto kb = fixtures::load({"unsatisfiable.sf"});
  CHECK(ground_requirement(kb, "vault", "plain").root.is_false());
  CHECK(candidate_nodes(kb, "vault").empty());
}

TEST_CASE("candidate nodes") {
  const auto weather = fixtures::load({"weather.sf"});
  CHECK(candidate_nodes(weather, "weatherMonitor") ==
        std::vector<std::string>{"cloud", "edge"});

  const auto sb = fixtures::load({"smartbuilding_app.sf", "smartbuilding_nodes.sf"});
  CHECK(candidate_nodes(sb, "iot_controller") ==
        std::vector<std::string>{"cloud1", "cloud2", "edge2", "edge3"});
  CHECK(candidate_nodes(sb, "data_storage") == std::vector<std::string>{"cloud1", "edge3"});
  CHECK(candidate_nodes(sb, "dashboard") ==
        std::vector<std::string>{"cloud1", "cloud2", "edge3"});
}

TEST_CASE("errors") {
  const auto kb = fixtures::load({"weather.sf"});
  CHECK_THROWS_AS(ground_requirement(kb, "nothing", "cloud"), Error);
  try {
    ground_requirement(kb, "nothing", "cloud");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRequirement);
  }
  try {
    ground_requirement(kb, "weatherMonitor", "mars");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownNode);
  }
}

TEST_CASE("policies are inlined; clauses for one service are or-ed") {
  const auto kb = fixtures::from_text(R"(
    node(n, o). backup(n). 0.5::encrypted_storage(n). 0.4::certificate(n).
    secureStorage(N) :- backup(N), (encrypted_storage(N); obfuscated_storage(N)).
    secureStorage(N) :- backup(N), certificate(N), (encrypted_storage(N); obfuscated_storage(N)).
    securityRequirements(s2, N) :- secureStorage(N).
    securityRequirements(s2, N) :- certificate(N).
  )");
  const auto g = ground_requirement(kb, "s2", "n");
  // (b∧e) ∨ (b∧c∧e) ∨ c with b certain: P = P(e ∨ c) = 1 − 0.5·0.6
  CHECK(wmc::wmc(g) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("negation sits directly on certain atoms") {
  const auto kb = fixtures::from_text(R"(
    node(n, o). node(m, o). 0.9::firewall(n). 0.9::firewall(m). legacy(m).
    securityRequirements(s, N) :- firewall(N), \+legacy(N).
  )");
  const auto on_n = ground_requirement(kb, "s", "n");
  CHECK(to_string(on_n.root, on_n.atoms) == "firewall(n)");
  const auto on_m = ground_requirement(kb, "s", "m");
  CHECK(to_string(on_m.root, on_m.atoms) == "and(firewall(m),not(legacy(m)))");
  CHECK(wmc::wmc(on_m) == 0.0);
  CHECK(candidate_nodes(kb, "s") == std::vector<std::string>{"m", "n"});
}

TEST_CASE("shared atoms get one id") {
  const auto kb = fixtures::load({"shared_node.sf"});
  AtomTable atoms;
  auto left = ground_requirement(kb, "left", "n1", atoms);
  auto right = ground_requirement(kb, "right", "n1", atoms);
  CHECK(atoms.size() == 3);
  CHECK(left.atoms() == right.atoms());
}

TEST_CASE("property: no constants below the root") {
  const auto kb = fixtures::load({"smartbuilding_app.sf", "smartbuilding_nodes.sf"});
  for (const auto& service : kb.apps.at("smartbuilding")) {
    for (const auto& [node, op] : kb.nodes) {
      const auto g = ground_requirement(kb, service, node);
      CHECK_FALSE(has_inner_constant(g.root));
    }
  }
}

TEST_CASE("property: simplification preserves the world sum") {
  gen::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> weights;
    GroundFormula g;
    g.atoms = gen::prob_atoms(rng, 8, weights);
    const auto raw = gen::raw_formula(rng, {8, 5, true, true});
    g.root = raw.build();
    CHECK(wmc::wmc(g) == doctest::Approx(oracle::world_sum(raw, weights)).epsilon(1e-12));
  }
}
