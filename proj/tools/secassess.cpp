// Command-line front end: assess, trust, explain, lint.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "secassess/assessor.hpp"
#include "secassess/dsl.hpp"
#include "secassess/error.hpp"
#include "secassess/explain.hpp"
#include "secassess/model.hpp"
#include "secassess/report.hpp"
#include "secassess/trust.hpp"

namespace {

using namespace secassess;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kNoDeployment = 3;

struct Config {
  std::vector<std::string> files;
  std::string app;
  std::string op;
  std::string from;
  std::string to;
  std::string semiring = "prob";
  std::string trust_mode = "transitive";
  std::string partial;
  std::string format;
  std::string rank_by = "confidence";
  std::string out;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + cfg.out);
  out << text;
}

KnowledgeBase load(const Config& cfg) {
  std::vector<dsl::Program> programs;
  for (const auto& file : cfg.files) programs.push_back(read_program(file));
  return build_kb(programs, *parse_semiring(cfg.semiring));
}

AssessOptions options_for(const Config& cfg) {
  AssessOptions options;
  options.trust_mode = *parse_trust_mode(cfg.trust_mode);
  options.trust = TrustOptions::from_environment();
  options.rank_by = cfg.rank_by == "value" ? RankBy::Value : RankBy::Confidence;
  return options;
}

PartialDeployment partial_for(const Config& cfg, const KnowledgeBase& kb) {
  if (cfg.partial.empty()) return {};
  return parse_partial(read_file(cfg.partial), kb, cfg.app);
}

std::string trust_query(const Config& cfg) {
  return "trusts2(" + cfg.from + "," + cfg.to + ")";
}

int cmd_assess(const Config& cfg) {
  const auto kb = load(cfg);
  const auto options = options_for(cfg);
  const auto ranked = rank(kb, cfg.app, cfg.op, partial_for(cfg, kb), options);
  const auto& services = kb.apps.at(cfg.app);
  if (cfg.format == "json") {
    emit(cfg, render_json(cfg.app, cfg.op, kb.semiring, ranked));
  } else {
    emit(cfg, render_table(services, ranked));
  }
  if (ranked.empty()) {
    std::cerr << "no eligible deployment for " << cfg.app << "\n";
    return kNoDeployment;
  }
  return kOk;
}

int cmd_trust(const Config& cfg) {
  const auto kb = load(cfg);
  const auto options = options_for(cfg);
  const auto f = trust_formula(kb, cfg.from, cfg.to, options.trust_mode, options.trust);
  emit(cfg, trust_query(cfg) + ": " +
                format_level(evaluate(kb.semiring, f, options)) + "\n");
  return kOk;
}

std::string algebraic_proofs_json(const std::string& query, SemiringKind kind,
                                  const GroundFormula& f,
                                  const AssessOptions& options) {
  const auto labels = label_values(kind, f.atoms);
  const auto level = evaluate(kind, f, options);
  nlohmann::ordered_json doc;
  doc["query"] = query;
  doc["semiring"] = std::string(to_string(kind));
  doc["level"] = {{"trust", trust_component(level)},
                  {"confidence", confidence_component(level)}};
  doc["proofs"] = nlohmann::ordered_json::array();
  for (const auto& proof : enumerate_proofs(f.root, options.max_proofs)) {
    nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
    for (AtomId id : proof) atoms.push_back(f.atoms[id].atom.to_string());
    const auto value = evaluate_proofs(kind, {proof}, labels);
    doc["proofs"].push_back(
        {{"atoms", std::move(atoms)},
         {"value", {{"trust", trust_component(value)},
                    {"confidence", confidence_component(value)}}}});
  }
  return doc.dump(2) + "\n";
}

int cmd_explain(const Config& cfg) {
  const auto kb = load(cfg);
  const auto options = options_for(cfg);
  GroundFormula f;
  std::string query;
  if (!cfg.from.empty()) {
    f = trust_formula(kb, cfg.from, cfg.to, options.trust_mode, options.trust);
    query = trust_query(cfg);
  } else {
    const auto deployments =
        enumerate_deployments(kb, cfg.app, cfg.op, partial_for(cfg, kb), options);
    if (deployments.empty()) {
      std::cerr << "the partial deployment is not eligible\n";
      return kNoDeployment;
    }
    if (deployments.size() > 1) {
      throw UsageError("explain needs --partial to fix every service of " + cfg.app +
                       " (" + std::to_string(deployments.size()) + " deployments match)");
    }
    f = deployment_formula(kb, deployments.front(), options);
    query = deployment_query(deployments.front());
  }
  if (cfg.format == "json") {
    if (is_algebraic(kb.semiring)) {
      emit(cfg, algebraic_proofs_json(query, kb.semiring, f, options));
    } else {
      emit(cfg, render_proofs_json(query, f, disjoint_proofs(f)));
    }
  } else {
    emit(cfg, export_ground_graph(f, query));
  }
  return kOk;
}

int cmd_lint(const Config& cfg) {
  const auto kb = load(cfg);
  const auto warnings = lint_vocabulary(kb);
  if (cfg.format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& w : warnings) doc.push_back({{"atom", w.atom}, {"message", w.message}});
    emit(cfg, doc.dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& w : warnings) text += "warning: " + w.message + "\n";
    emit(cfg, text);
  }
  return kOk;
}

void add_files(CLI::App* cmd, Config& cfg) {
  cmd->add_option("files", cfg.files, "knowledge-base files (.sf), merged in order")
      ->required()
      ->check(CLI::ExistingFile);
}

void add_semiring(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--semiring", cfg.semiring, "prob, tc-max, tc-min or star")
      ->check([](const std::string& v) {
        return parse_semiring(v) ? std::string{} : "unknown semiring " + v;
      })
      ->capture_default_str();
}

void add_trust_mode(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--trust-mode", cfg.trust_mode, "transitive, direct or radius:N")
      ->check([](const std::string& v) {
        return parse_trust_mode(v) ? std::string{} : "invalid trust mode " + v;
      })
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Quantitative security assessment of Cloud-Edge deployments"};
  app.set_version_flag("--version", std::string("secassess ") + SECASSESS_VERSION);
  app.require_subcommand(1);

  auto* assess_cmd = app.add_subcommand("assess", "rank eligible deployments");
  add_files(assess_cmd, cfg);
  assess_cmd->add_option("--app", cfg.app, "application id")->required();
  assess_cmd->add_option("--operator", cfg.op, "deploying operator")->required();
  add_semiring(assess_cmd, cfg);
  add_trust_mode(assess_cmd, cfg);
  assess_cmd->add_option("--partial", cfg.partial, "JSON file fixing some services")
      ->check(CLI::ExistingFile);
  assess_cmd->add_option("--format", cfg.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  assess_cmd->add_option("--rank-by", cfg.rank_by, "value or confidence (pair semirings)")
      ->check(CLI::IsMember({"value", "confidence"}))
      ->capture_default_str();
  assess_cmd->add_option("--out", cfg.out, "write to this file instead of stdout");

  auto* trust_cmd = app.add_subcommand("trust", "trust degree between two operators");
  add_files(trust_cmd, cfg);
  trust_cmd->add_option("--from", cfg.from, "trusting operator")->required();
  trust_cmd->add_option("--to", cfg.to, "trusted operator")->required();
  add_semiring(trust_cmd, cfg);
  add_trust_mode(trust_cmd, cfg);
  trust_cmd->add_option("--out", cfg.out, "write to this file instead of stdout");

  auto* explain_cmd = app.add_subcommand(
      "explain", "ground graph or proofs for one deployment or trust pair");
  add_files(explain_cmd, cfg);
  explain_cmd->add_option("--app", cfg.app, "application id");
  explain_cmd->add_option("--operator", cfg.op, "deploying operator");
  explain_cmd->add_option("--partial", cfg.partial, "JSON file with the deployment")
      ->check(CLI::ExistingFile);
  explain_cmd->add_option("--from", cfg.from, "trusting operator");
  explain_cmd->add_option("--to", cfg.to, "trusted operator");
  add_semiring(explain_cmd, cfg);
  add_trust_mode(explain_cmd, cfg);
  explain_cmd->add_option("--format", cfg.format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));
  explain_cmd->add_option("--out", cfg.out, "write to this file instead of stdout");

  auto* lint_cmd = app.add_subcommand("lint", "report capabilities outside the vocabulary");
  add_files(lint_cmd, cfg);
  lint_cmd->add_option("--format", cfg.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  lint_cmd->add_option("--out", cfg.out, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
    if (explain_cmd->parsed()) {
      const bool trust_pair = !cfg.from.empty() || !cfg.to.empty();
      const bool deployment = !cfg.app.empty() || !cfg.op.empty() || !cfg.partial.empty();
      if (trust_pair == deployment ||
          (trust_pair && (cfg.from.empty() || cfg.to.empty())) ||
          (deployment && (cfg.app.empty() || cfg.op.empty() || cfg.partial.empty()))) {
        throw CLI::ValidationError(
            "explain", "give either --from and --to, or --app, --operator and --partial");
      }
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (assess_cmd->parsed()) return cmd_assess(cfg);
    if (trust_cmd->parsed()) return cmd_trust(cfg);
    if (explain_cmd->parsed()) return cmd_explain(cfg);
    return cmd_lint(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
