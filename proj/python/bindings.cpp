#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "secassess/assessor.hpp"
#include "secassess/error.hpp"
#include "secassess/explain.hpp"
#include "secassess/model.hpp"
#include "secassess/report.hpp"
#include "secassess/trust.hpp"

namespace py = pybind11;
using namespace secassess;

namespace {

SemiringKind semiring_of(const std::string& name) {
  if (auto kind = parse_semiring(name)) return *kind;
  throw py::value_error("unknown semiring " + name);
}

TrustQueryMode mode_of(const std::string& text) {
  if (auto mode = parse_trust_mode(text)) return *mode;
  throw py::value_error("bad trust mode " + text);
}

AssessOptions options_of(const std::string& trust_mode, const std::string& rank_by) {
  AssessOptions options;
  options.trust_mode = mode_of(trust_mode);
  options.trust = TrustOptions::from_environment();
  if (rank_by == "value") options.rank_by = RankBy::Value;
  else if (rank_by != "confidence") throw py::value_error("rank_by must be value or confidence");
  return options;
}

// floats for probabilities, (trust, confidence) tuples for pairs
py::object level_of(SemiringKind kind, const SemiringValue& value) {
  if (!is_algebraic(kind)) return py::float_(trust_component(value));
  return py::make_tuple(trust_component(value), confidence_component(value));
}

py::dict deployment_dict(const Deployment& d) {
  py::list assignments;
  for (const auto& a : d.assignments)
    assignments.append(py::make_tuple(a.service, a.node, a.node_operator));
  py::dict out;
  out["query"] = deployment_query(d);
  out["assignments"] = assignments;
  return out;
}

Deployment single_deployment(const KnowledgeBase& kb, const std::string& app,
                             const std::string& op, const PartialDeployment& partial,
                             const AssessOptions& options) {
  const auto all = enumerate_deployments(kb, app, op, partial, options);
  if (all.size() != 1) {
    throw py::value_error("partial deployment matches " + std::to_string(all.size()) +
                          " deployments; fix every service of " + app);
  }
  return all.front();
}

py::list proofs_of(const GroundFormula& f) {
  py::list out;
  for (const auto& proof : disjoint_proofs(f)) {
    py::list literals;
    for (const auto& literal : proof.literals) literals.append(format_literal(f.atoms, literal));
    out.append(py::make_tuple(literals, proof.contribution));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_secassess, m) {
  m.attr("__version__") = SECASSESS_VERSION;

  static py::exception<Error> error(m, "Error");
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const auto args = py::make_tuple(std::string(to_string(e.code())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    } catch (const ParseError& e) {
      PyErr_SetString(parse_error.ptr(), e.what());
    }
  });

  py::class_<KnowledgeBase>(m, "KnowledgeBase")
      .def_property_readonly("semiring",
                             [](const KnowledgeBase& kb) { return std::string(to_string(kb.semiring)); })
      .def_readonly("nodes", &KnowledgeBase::nodes)
      .def_readonly("apps", &KnowledgeBase::apps)
      .def_property_readonly("operators",
                             [](const KnowledgeBase& kb) { return kb.trust.operators; })
      .def_property_readonly("queries", [](const KnowledgeBase& kb) {
        std::vector<std::string> out;
        for (const auto& q : kb.queries) out.push_back(dsl::to_string(q));
        return out;
      });

  m.def(
      "load",
      [](const std::vector<std::string>& paths, const std::string& semiring) {
        std::vector<dsl::Program> programs;
        for (const auto& path : paths) programs.push_back(read_program(path));
        return build_kb(programs, semiring_of(semiring));
      },
      py::arg("paths"), py::arg("semiring") = "prob");

  m.def(
      "parse",
      [](const std::string& text, const std::string& semiring) {
        return build_kb({dsl::parse_program(text, "<string>")}, semiring_of(semiring));
      },
      py::arg("text"), py::arg("semiring") = "prob");

  m.def(
      "trust",
      [](const KnowledgeBase& kb, const std::string& from, const std::string& to,
         const std::string& mode) {
        const auto options = options_of(mode, "confidence");
        const auto f = trust_formula(kb, from, to, options.trust_mode, options.trust);
        return level_of(kb.semiring, evaluate(kb.semiring, f, options));
      },
      py::arg("kb"), py::arg("source"), py::arg("target"), py::arg("mode") = "transitive");

  m.def(
      "rank",
      [](const KnowledgeBase& kb, const std::string& app, const std::string& op,
         const PartialDeployment& partial, const std::string& trust_mode,
         const std::string& rank_by) {
        const auto options = options_of(trust_mode, rank_by);
        std::vector<Assessment> ranked;
        {
          py::gil_scoped_release release;
          ranked = rank(kb, app, op, partial, options);
        }
        py::list out;
        for (const auto& a : ranked) {
          auto row = deployment_dict(a.deployment);
          row["id"] = "Δ" + std::to_string(a.index);
          row["level"] = level_of(kb.semiring, a.level);
          out.append(row);
        }
        return out;
      },
      py::arg("kb"), py::arg("app"), py::arg("operator"),
      py::arg("partial") = PartialDeployment{}, py::arg("trust_mode") = "transitive",
      py::arg("rank_by") = "confidence");

  m.def(
      "explain",
      [](const KnowledgeBase& kb, const std::string& app, const std::string& op,
         const PartialDeployment& partial, const std::string& trust_mode) {
        const auto options = options_of(trust_mode, "confidence");
        const auto d = single_deployment(kb, app, op, partial, options);
        return proofs_of(deployment_formula(kb, d, options));
      },
      py::arg("kb"), py::arg("app"), py::arg("operator"), py::arg("partial"),
      py::arg("trust_mode") = "transitive",
      "Disjoint proofs of one deployment as (literals, contribution) pairs.");

  m.def(
      "explain_trust",
      [](const KnowledgeBase& kb, const std::string& from, const std::string& to,
         const std::string& mode) {
        const auto options = options_of(mode, "confidence");
        return proofs_of(trust_formula(kb, from, to, options.trust_mode, options.trust));
      },
      py::arg("kb"), py::arg("source"), py::arg("target"), py::arg("mode") = "transitive");

  m.def(
      "ground_graph",
      [](const KnowledgeBase& kb, const std::string& app, const std::string& op,
         const PartialDeployment& partial, const std::string& trust_mode) {
        const auto options = options_of(trust_mode, "confidence");
        const auto d = single_deployment(kb, app, op, partial, options);
        return export_ground_graph(deployment_formula(kb, d, options), deployment_query(d));
      },
      py::arg("kb"), py::arg("app"), py::arg("operator"), py::arg("partial"),
      py::arg("trust_mode") = "transitive", "Graphviz DOT of the ground formula.");

  m.def(
      "answer_queries",
      [](const KnowledgeBase& kb, const std::string& trust_mode) {
        const auto options = options_of(trust_mode, "confidence");
        std::vector<std::pair<std::string, py::object>> out;
        for (const auto& q : kb.queries)
          for (const auto& answer : ground_query(kb, q, options))
            out.emplace_back(answer.label,
                             level_of(kb.semiring, evaluate(kb.semiring, answer.formula, options)));
        return out;
      },
      py::arg("kb"), py::arg("trust_mode") = "transitive",
      "Values for every query/1 statement in the knowledge base.");

  m.def("lint", [](const KnowledgeBase& kb) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& w : lint_vocabulary(kb)) out.emplace_back(w.atom, w.message);
    return out;
  });
}
