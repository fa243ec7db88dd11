#include "secassess/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "secassess/error.hpp"

namespace secassess {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string g10(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.10g", value + 0.0);
  return buffer;
}

}  // namespace

std::string format_level(const SemiringValue& value) {
  if (const auto* p = std::get_if<ProbabilityValue>(&value)) return g10(p->p);
  return "<" + g10(trust_component(value)) + ", " +
         g10(confidence_component(value)) + ">";
}

namespace {

// Display width in code points; labels are ASCII apart from Δ.
std::size_t width(const std::string& text) {
  std::size_t n = 0;
  for (unsigned char c : text) n += (c & 0xC0) != 0x80;
  return n;
}

}  // namespace

std::string render_table(const std::vector<std::string>& services,
                         const std::vector<Assessment>& ranked) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Dep. ID"};
  header.insert(header.end(), services.begin(), services.end());
  header.push_back("Security");
  rows.push_back(header);
  for (const auto& a : ranked) {
    std::vector<std::string> row{"Δ" + std::to_string(a.index)};
    for (const auto& assignment : a.deployment.assignments) {
      row.push_back(assignment.node);
    }
    row.push_back(format_level(a.level));
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], width(row[i]));
    }
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i];
      if (i + 1 < row.size()) out << std::string(widths[i] - width(row[i]) + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string render_json(const std::string& app, const std::string& op,
                        SemiringKind semiring,
                        const std::vector<Assessment>& ranked) {
  ordered_json doc;
  doc["app"] = app;
  doc["operator"] = op;
  doc["semiring"] = std::string(to_string(semiring));
  doc["deployments"] = ordered_json::array();
  for (const auto& a : ranked) {
    ordered_json entry;
    entry["id"] = "Δ" + std::to_string(a.index);
    entry["assignments"] = ordered_json::array();
    for (const auto& s : a.deployment.assignments) {
      entry["assignments"].push_back(
          {{"service", s.service}, {"node", s.node}, {"operator", s.node_operator}});
    }
    entry["level"] = trust_component(a.level);
    if (is_algebraic(semiring)) {
      entry["level_components"] = {{"trust", trust_component(a.level)},
                                   {"confidence", confidence_component(a.level)}};
    }
    doc["deployments"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string render_proofs_json(const std::string& query, const GroundFormula& f,
                               const std::vector<DisjointProof>& proofs) {
  ordered_json doc;
  doc["query"] = query;
  double total = 0.0;
  for (const auto& p : proofs) total += p.contribution;
  doc["probability"] = total;
  doc["proofs"] = ordered_json::array();
  for (const auto& p : proofs) {
    ordered_json literals = ordered_json::array();
    for (const auto& literal : p.literals) {
      literals.push_back(format_literal(f.atoms, literal));
    }
    doc["proofs"].push_back(
        {{"literals", std::move(literals)}, {"contribution", p.contribution}});
  }
  return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void bad_partial(const std::string& why) {
  throw Error(ErrorCode::InconsistentPartial, "partial deployment: " + why);
}

}  // namespace

PartialDeployment parse_partial(std::string_view text, const KnowledgeBase& kb,
                                const std::string& app) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) bad_partial("not valid JSON");

  if (doc.is_object() && doc.contains("deployments")) {
    if (doc.contains("app") && doc["app"] != app) {
      bad_partial("report is for app " + doc["app"].dump());
    }
    const auto& list = doc["deployments"];
    if (!list.is_array() || list.empty()) bad_partial("no deployment in report");
    doc = list.front();
  }
  if (doc.is_object()) {
    if (!doc.contains("assignments")) bad_partial("missing \"assignments\"");
    doc = doc["assignments"];
  }
  if (!doc.is_array()) bad_partial("expected an assignment list");

  PartialDeployment out;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("service") || !item.contains("node") ||
        !item["service"].is_string() || !item["node"].is_string()) {
      bad_partial("each assignment needs string \"service\" and \"node\"");
    }
    const auto service = item["service"].get<std::string>();
    const auto node = item["node"].get<std::string>();
    if (item.contains("operator")) {
      const auto owner = kb.node_operator(node);
      if (!item["operator"].is_string() ||
          (owner && *owner != item["operator"].get<std::string>())) {
        bad_partial("node " + node + " is not operated by " +
                    item["operator"].dump());
      }
    }
    auto [it, fresh] = out.emplace(service, node);
    if (!fresh && it->second != node) {
      bad_partial("service " + service + " assigned twice");
    }
  }
  return out;
}

}  // namespace secassess
