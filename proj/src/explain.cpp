#include "secassess/explain.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace secassess {

std::vector<DisjointProof> disjoint_proofs(const GroundFormula& f,
                                           const wmc::CompileOptions& options) {
  using DD = wmc::DecisionDiagram;
  const DD dd = wmc::compile(f, {}, options);
  const auto weights = wmc::probability_weights(f.atoms);
  std::vector<DisjointProof> out;
  DisjointProof current;
  current.contribution = 1.0;

  auto walk = [&](auto&& self, DD::NodeRef ref) -> void {
    if (ref == DD::kFalse) return;
    if (ref == DD::kTrue) {
      out.push_back(current);
      return;
    }
    const auto& node = dd.node(ref);
    const AtomId atom = dd.atom_at(node.level);
    const double p = weights[atom];
    const double saved = current.contribution;
    for (bool value : {true, false}) {
      current.literals.emplace_back(atom, value);
      current.contribution = saved * (value ? p : 1.0 - p);
      self(self, value ? node.high : node.low);
      current.literals.pop_back();
    }
    current.contribution = saved;
  };
  walk(walk, dd.root());
  return out;
}

std::string format_literal(const AtomTable& atoms,
                           std::pair<AtomId, bool> literal) {
  const std::string name = atoms[literal.first].atom.to_string();
  return literal.second ? name : "¬" + name;
}

namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// Six decimals, trailing zeros trimmed.
std::string short_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  std::string text(buffer);
  text.erase(text.find_last_not_of('0') + 1);
  if (text.back() == '.') text.pop_back();
  if (text == "-0") text = "0";
  return text;
}

std::string leaf_value(const Label& label) {
  if (is_certain(label)) return "1";
  if (const auto* p = std::get_if<Prob>(&label)) return short_number(p->p);
  const auto& pair = std::get<Pair>(label);
  return "(" + short_number(pair.trust) + "," + short_number(pair.confidence) + ")";
}

class DotWriter {
 public:
  explicit DotWriter(const AtomTable& atoms) : atoms_(atoms) {}

  std::string run(const Formula& root, const std::string& title) {
    visit(root);
    std::ostringstream out;
    out << "digraph ground {\n";
    out << "  label=\"" << escape(title) << "\";\n";
    out << "  labelloc=t;\n";
    for (const auto& line : nodes_) out << "  " << line << "\n";
    for (const auto& line : edges_) out << "  " << line << "\n";
    out << "}\n";
    return out.str();
  }

 private:
  std::string visit(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: return leaf(f.atom_id());
      case Formula::Kind::True:
      case Formula::Kind::False: {
        const std::string id = "n" + std::to_string(next_++);
        nodes_.push_back(id + " [shape=box,label=\"" +
                         (f.is_true() ? "true" : "false") + "\"];");
        return id;
      }
      case Formula::Kind::Not:
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        const std::string id = "n" + std::to_string(next_++);
        const char* shape = f.kind() == Formula::Kind::Not ? "invtriangle"
                            : f.kind() == Formula::Kind::And ? "box"
                                                             : "diamond";
        const char* label = f.kind() == Formula::Kind::Not ? "NOT"
                            : f.kind() == Formula::Kind::And ? "AND"
                                                             : "OR";
        nodes_.push_back(id + " [shape=" + shape + ",label=\"" + label + "\"];");
        for (const auto& child : f.children()) {
          edges_.push_back(id + " -> " + visit(child) + ";");
        }
        return id;
      }
    }
    return {};
  }

  std::string leaf(AtomId atom) {
    auto [it, fresh] = leaves_.try_emplace(atom);
    if (fresh) {
      it->second = "a" + std::to_string(atom);
      const auto& entry = atoms_[atom];
      nodes_.push_back(it->second + " [shape=ellipse,label=\"" +
                       escape(entry.atom.to_string()) + ": " +
                       leaf_value(entry.label) + "\"];");
    }
    return it->second;
  }

  const AtomTable& atoms_;
  std::size_t next_ = 0;
  std::map<AtomId, std::string> leaves_;
  std::vector<std::string> nodes_;
  std::vector<std::string> edges_;
};

}  // namespace

std::string export_ground_graph(const GroundFormula& f, const std::string& title) {
  return DotWriter(f.atoms).run(f.root, title);
}

}  // namespace secassess
