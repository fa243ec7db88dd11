#include "secassess/assessor.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "secassess/error.hpp"
#include "secassess/grounder.hpp"

namespace secassess {

std::vector<std::string> Deployment::nodes() const {
  std::vector<std::string> out;
  out.reserve(assignments.size());
  for (const auto& a : assignments) out.push_back(a.node);
  return out;
}

bool trust_enabled(const KnowledgeBase& kb, const AssessOptions& options) {
  switch (options.trust_usage) {
    case TrustUsage::Always: return true;
    case TrustUsage::Never: return false;
    case TrustUsage::Auto: break;
  }
  return !kb.trust.edges.empty();
}

std::vector<Deployment> enumerate_deployments(
    const KnowledgeBase& kb, const std::string& app,
    const std::string& deploying_operator, const PartialDeployment& partial,
    const AssessOptions& options) {
  auto app_it = kb.apps.find(app);
  if (app_it == kb.apps.end()) {
    throw Error(ErrorCode::UnknownApp, "undeclared application " + app);
  }
  const auto& services = app_it->second;
  for (const auto& [service, node] : partial) {
    if (std::find(services.begin(), services.end(), service) == services.end()) {
      throw Error(ErrorCode::InconsistentPartial,
                  "service " + service + " is not part of " + app);
    }
    if (!kb.nodes.count(node)) {
      throw Error(ErrorCode::InconsistentPartial,
                  "service " + service + " is fixed to undeclared node " + node);
    }
  }

  const bool use_trust = trust_enabled(kb, options);
  std::map<std::string, bool> reachable;  // by node operator
  auto trusted = [&](const std::string& op) {
    if (!use_trust) return true;
    auto [it, fresh] = reachable.try_emplace(op, false);
    if (fresh) {
      AtomTable scratch;
      it->second = !trust_formula(kb, deploying_operator, op,
                                  options.trust_mode, scratch, options.trust)
                        .is_false();
    }
    return it->second;
  };

  std::vector<std::vector<Assignment>> choices;
  for (const auto& service : services) {
    std::vector<Assignment> column;
    auto fixed = partial.find(service);
    for (const auto& node : candidate_nodes(kb, service)) {
      if (fixed != partial.end() && fixed->second != node) continue;
      const std::string& op = kb.nodes.at(node);
      if (!trusted(op)) continue;
      column.push_back({service, node, op});
    }
    if (column.empty()) return {};
    choices.push_back(std::move(column));
  }

  std::vector<Deployment> out;
  std::vector<std::size_t> cursor(choices.size(), 0);
  while (true) {
    Deployment d{app, deploying_operator, {}};
    for (std::size_t i = 0; i < choices.size(); ++i) {
      d.assignments.push_back(choices[i][cursor[i]]);
    }
    out.push_back(std::move(d));
    // odometer, last service varies fastest
    std::size_t i = choices.size();
    while (i > 0) {
      --i;
      if (++cursor[i] < choices[i].size()) break;
      cursor[i] = 0;
      if (i == 0) return out;
    }
    if (choices.empty()) return out;
  }
}

GroundFormula deployment_formula(const KnowledgeBase& kb, const Deployment& d,
                                 const AssessOptions& options) {
  const bool use_trust = trust_enabled(kb, options);
  GroundFormula out;
  std::vector<Formula> parts;
  for (const auto& a : d.assignments) {
    parts.push_back(ground_requirement(kb, a.service, a.node, out.atoms));
    if (use_trust) {
      parts.push_back(trust_formula(kb, d.deploying_operator, a.node_operator,
                                    options.trust_mode, out.atoms,
                                    options.trust));
    }
  }
  out.root = Formula::conjunction(std::move(parts));
  return out;
}

namespace {

// Certain atoms evaluate to one(), the ⊗ identity, so they can be replaced by
// True before proof enumeration; this also discharges negated certain facts.
Formula drop_certain(const Formula& f, const AtomTable& atoms) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Atom:
      return is_certain(atoms[f.atom_id()].label) ? Formula::constant(true) : f;
    case Formula::Kind::Not:
      return Formula::negation(drop_certain(f.children().front(), atoms));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> children;
      for (const auto& c : f.children()) children.push_back(drop_certain(c, atoms));
      return f.kind() == Formula::Kind::And
                 ? Formula::conjunction(std::move(children))
                 : Formula::disjunction(std::move(children));
    }
  }
  return f;
}

}  // namespace

SemiringValue evaluate(SemiringKind kind, const GroundFormula& f,
                       const AssessOptions& options) {
  if (kind == SemiringKind::Probability) {
    const auto dd = wmc::compile(f, {}, options.compile);
    return ProbabilityValue{wmc::probability(dd, wmc::probability_weights(f.atoms))};
  }
  const auto labels = label_values(kind, f.atoms);
  const auto proofs = enumerate_proofs(drop_certain(f.root, f.atoms), options.max_proofs);
  return evaluate_proofs(kind, proofs, labels);
}

Assessment assess(const KnowledgeBase& kb, const Deployment& d,
                  const AssessOptions& options) {
  Assessment out{d, zero(kb.semiring), deployment_formula(kb, d, options), 0};
  out.level = evaluate(kb.semiring, out.formula, options);
  return out;
}

bool ranks_before(SemiringKind kind, RankBy rank_by, const Assessment& a,
                  const Assessment& b) {
  const double ta = trust_component(a.level), tb = trust_component(b.level);
  const double ca = confidence_component(a.level),
               cb = confidence_component(b.level);
  if (kind == SemiringKind::Probability) {
    if (ta != tb) return ta > tb;
  } else if (rank_by == RankBy::Confidence) {
    if (ca != cb) return ca > cb;
    if (ta != tb) return ta > tb;
  } else {
    if (ta != tb) return ta > tb;
    if (ca != cb) return ca > cb;
  }
  return a.deployment.nodes() < b.deployment.nodes();
}

std::vector<Assessment> rank(const KnowledgeBase& kb, const std::string& app,
                             const std::string& deploying_operator,
                             const PartialDeployment& partial,
                             const AssessOptions& options) {
  const auto deployments =
      enumerate_deployments(kb, app, deploying_operator, partial, options);
  std::vector<Assessment> out(deployments.size());

  unsigned workers = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, deployments.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < deployments.size(); i = next++) {
      try {
        out[i] = assess(kb, deployments[i], options);
        out[i].index = i + 1;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = deployments.size();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(out.begin(), out.end(),
                   [&](const Assessment& a, const Assessment& b) {
                     return ranks_before(kb.semiring, options.rank_by, a, b);
                   });
  return out;
}

namespace {

bool bound(const dsl::Term& t) { return t.kind == dsl::Term::Kind::Constant; }

}  // namespace

std::string deployment_query(const Deployment& d) {
  std::string out = "secFog(" + d.deploying_operator + "," + d.app + ",[";
  for (std::size_t i = 0; i < d.assignments.size(); ++i) {
    const auto& a = d.assignments[i];
    if (i) out += ",";
    out += "d(" + a.service + "," + a.node + "," + a.node_operator + ")";
  }
  return out + "])";
}

std::vector<QueryAnswer> ground_query(const KnowledgeBase& kb,
                                      const dsl::Atom& query,
                                      const AssessOptions& options) {
  const auto& args = query.args;
  std::vector<QueryAnswer> out;
  if (query.predicate == "secFog" && args.size() == 3 && bound(args[0]) &&
      bound(args[1]) && args[2].is_variable()) {
    for (const auto& d :
         enumerate_deployments(kb, args[1].name, args[0].name, {}, options)) {
      out.push_back({deployment_query(d), deployment_formula(kb, d, options)});
    }
    return out;
  }
  if (query.predicate == "trusts2" && args.size() == 2 && bound(args[0]) &&
      bound(args[1])) {
    out.push_back({dsl::to_string(query),
                   trust_formula(kb, args[0].name, args[1].name,
                                 options.trust_mode, options.trust)});
    return out;
  }
  throw Error(ErrorCode::UnsupportedStatement,
              "cannot answer query " + dsl::to_string(query));
}

}  // namespace secassess
