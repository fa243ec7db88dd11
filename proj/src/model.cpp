#include "secassess/model.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <tuple>

#include "secassess/error.hpp"

namespace secassess {

namespace {

constexpr const char* kRequirement = "securityRequirements";

// Rules with these heads implement the assessment strategy and the trust
// models; the engine evaluates them natively, so they are accepted and
// skipped.
bool is_builtin_rule_head(const dsl::Atom& head) {
  static const std::set<std::pair<std::string, std::size_t>> builtin = {
      {"secFog", 3},  {"deployment", 3}, {"trusts", 2},
      {"trusts2", 2}, {"trusts2", 3},    {"indirectly_trusts", 2},
  };
  return builtin.count({head.predicate, head.arity()}) > 0;
}

struct Located {
  const dsl::Statement* statement;
  std::string origin;
  std::size_t line;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message,
                       const Located& where) {
  throw Error(code, message, where.origin, where.line);
}

bool constants_only(const dsl::Atom& atom) {
  return std::all_of(atom.args.begin(), atom.args.end(), [](const auto& t) {
    return t.kind == dsl::Term::Kind::Constant;
  });
}

class Builder {
 public:
  explicit Builder(SemiringKind semiring) { kb_.semiring = semiring; }

  KnowledgeBase run(const std::vector<dsl::Program>& programs) {
    std::vector<Located> all;
    for (const auto& program : programs) {
      for (std::size_t i = 0; i < program.statements.size(); ++i) {
        const std::size_t line =
            i < program.spans.size() ? program.spans[i].line : 0;
        all.push_back({&program.statements[i], program.origin, line});
      }
    }
    // Nodes first so capability facts can be checked in any order.
    for (const auto& item : all) {
      const auto& st = *item.statement;
      if (is_fact(st) && st.head.predicate == "node" && st.head.arity() == 2) {
        add_node(item);
      }
    }
    for (const auto& item : all) {
      const auto& st = *item.statement;
      switch (st.kind) {
        case dsl::Statement::Kind::Query:
          kb_.queries.push_back(st.head);
          break;
        case dsl::Statement::Kind::Fact:
        case dsl::Statement::Kind::AnnotatedFact:
          add_fact(item);
          break;
        case dsl::Statement::Kind::Rule:
          add_rule(item);
          break;
      }
    }
    finish();
    return std::move(kb_);
  }

 private:
  static bool is_fact(const dsl::Statement& st) {
    return st.kind == dsl::Statement::Kind::Fact ||
           st.kind == dsl::Statement::Kind::AnnotatedFact;
  }

  void add_node(const Located& where) {
    const auto& st = *where.statement;
    if (!is_certain(st.label)) {
      fail(ErrorCode::UnsupportedStatement,
           "node/2 declarations cannot carry a label", where);
    }
    if (!constants_only(st.head)) {
      fail(ErrorCode::UnsupportedStatement,
           "node/2 expects two constants", where);
    }
    const auto& node = st.head.args[0].name;
    const auto& op = st.head.args[1].name;
    auto [it, inserted] = kb_.nodes.emplace(node, op);
    if (!inserted && it->second != op) {
      fail(ErrorCode::ConflictingNode,
           "node " + node + " is declared by both " + it->second + " and " + op,
           where);
    }
  }

  void check_label(const Located& where) {
    const auto& st = *where.statement;
    if (!label_in_carrier(kb_.semiring, st.label)) {
      fail(ErrorCode::RangeError,
           "label " + format_label(st.label) + " of " +
               dsl::to_string(st.head) + " is outside the " +
               std::string(to_string(kb_.semiring)) + " carrier",
           where);
    }
  }

  template <typename Map, typename Key>
  void insert_labelled(Map& map, const Key& key, const Located& where) {
    const auto& st = *where.statement;
    auto [it, inserted] = map.emplace(key, st.label);
    if (inserted) return;
    if (is_certain(it->second) && is_certain(st.label)) return;
    fail(ErrorCode::DuplicateLabel,
         dsl::to_string(st.head) + " is declared more than once", where);
  }

  void add_fact(const Located& where) {
    const auto& st = *where.statement;
    const auto& head = st.head;
    if (head.predicate == "node" && head.arity() == 2) return;  // done
    if (head.predicate == "app" && head.arity() == 2) {
      add_app(where);
      return;
    }
    if ((head.predicate == "trusts" || head.predicate == "directly_trusts") &&
        head.arity() == 2) {
      if (!constants_only(head)) {
        fail(ErrorCode::UnsupportedStatement,
             "trust facts expect two constants", where);
      }
      check_label(where);
      insert_labelled(edges_, std::make_pair(head.args[0].name,
                                             head.args[1].name),
                      where);
      return;
    }
    if (head.predicate == "dir" && head.arity() == 2) {
      if (!is_certain(st.label) || !constants_only(head)) {
        fail(ErrorCode::UnsupportedStatement,
             "dir/2 flags must be plain facts over two operators", where);
      }
      kb_.direct_flags.emplace(head.args[0].name, head.args[1].name);
      return;
    }
    if (head.arity() == 1 && constants_only(head)) {
      const auto& node = head.args[0].name;
      if (!kb_.nodes.count(node)) {
        fail(ErrorCode::UnknownNode,
             dsl::to_string(head) + " refers to undeclared node " + node,
             where);
      }
      check_label(where);
      insert_labelled(kb_.capabilities, std::make_pair(head.predicate, node),
                      where);
      return;
    }
    fail(ErrorCode::UnsupportedStatement,
         "unsupported fact " + dsl::to_string(head), where);
  }

  void add_app(const Located& where) {
    const auto& head = where.statement->head;
    const auto& name = head.args[0];
    const auto& list = head.args[1];
    if (!is_certain(where.statement->label) ||
        name.kind != dsl::Term::Kind::Constant ||
        list.kind != dsl::Term::Kind::List || list.open_tail) {
      fail(ErrorCode::InvalidApp,
           "app/2 expects an application name and a list of services", where);
    }
    std::vector<std::string> services;
    for (const auto& item : list.items) {
      if (item.kind != dsl::Term::Kind::Constant) {
        fail(ErrorCode::InvalidApp, "services must be constants", where);
      }
      if (std::find(services.begin(), services.end(), item.name) !=
          services.end()) {
        fail(ErrorCode::InvalidApp,
             "service " + item.name + " is listed twice in " + name.name,
             where);
      }
      services.push_back(item.name);
    }
    if (services.empty()) {
      fail(ErrorCode::InvalidApp, "application " + name.name + " has no services",
           where);
    }
    auto [it, inserted] = kb_.apps.emplace(name.name, services);
    if (!inserted && it->second != services) {
      fail(ErrorCode::InvalidApp,
           "application " + name.name + " is declared twice", where);
    }
  }

  void add_rule(const Located& where) {
    const auto& st = *where.statement;
    if (is_builtin_rule_head(st.head)) return;
    const auto& head = st.head;
    const bool requirement =
        head.predicate == kRequirement && head.arity() == 2 &&
        head.args[0].kind == dsl::Term::Kind::Constant &&
        head.args[1].is_variable();
    const bool policy = head.arity() == 1 && head.args[0].is_variable();
    if (!requirement && !policy) {
      fail(ErrorCode::UnsupportedStatement,
           "unsupported rule head " + dsl::to_string(head) +
               "; expected p(N) or securityRequirements(service, N)",
           where);
    }
    const std::string& var = head.args.back().name;
    if (var == "_") {
      fail(ErrorCode::UnsafeRule, "rule head uses the anonymous variable",
           where);
    }
    if (!st.body) {
      fail(ErrorCode::UnsafeRule,
           "variable " + var + " of " + dsl::to_string(head) +
               " does not occur in the body",
           where);
    }
    bool bound = false;
    check_body(*st.body, var, bound, where);
    if (!bound) {
      fail(ErrorCode::UnsafeRule,
           "variable " + var + " of " + dsl::to_string(head) +
               " does not occur in a positive body literal",
           where);
    }
    kb_.policies.push_back(PolicyRule{head, *st.body, where.origin, where.line});
  }

  void check_body(const dsl::BodyExpr& body, const std::string& var,
                  bool& bound, const Located& where) {
    switch (body.kind) {
      case dsl::BodyExpr::Kind::Conj:
      case dsl::BodyExpr::Kind::Disj:
        for (const auto& child : body.children) {
          check_body(child, var, bound, where);
        }
        return;
      case dsl::BodyExpr::Kind::Greater:
      case dsl::BodyExpr::Kind::IsMinus:
        fail(ErrorCode::UnsupportedStatement,
             "arithmetic is only available in the built-in trust model",
             where);
      case dsl::BodyExpr::Kind::Literal:
        break;
    }
    const auto& atom = body.atom;
    const bool unary = atom.arity() == 1;
    const bool requirement = atom.predicate == kRequirement &&
                             atom.arity() == 2 &&
                             atom.args[0].kind == dsl::Term::Kind::Constant;
    if (!unary && !requirement) {
      fail(ErrorCode::UnsupportedStatement,
           "policy bodies may only use unary atoms or securityRequirements/2, "
           "got " + dsl::to_string(atom),
           where);
    }
    const auto& arg = atom.args.back();
    if (arg.is_variable()) {
      if (arg.name != var) {
        fail(ErrorCode::UnsafeRule,
             "variable " + arg.name + " in " + dsl::to_string(atom) +
                 " is not the head's node variable " + var,
             where);
      }
      if (body.positive) bound = true;
    } else if (arg.kind != dsl::Term::Kind::Constant) {
      fail(ErrorCode::UnsupportedStatement,
           "unsupported argument in " + dsl::to_string(atom), where);
    }
    if (!body.positive) negated_.push_back({atom, where});
  }

  void finish() {
    for (auto& [key, label] : edges_) {
      kb_.trust.edges.push_back({key.first, key.second, label});
    }
    for (const auto& edge : kb_.trust.edges) {
      kb_.trust.operators.insert(edge.from);
      kb_.trust.operators.insert(edge.to);
    }
    for (const auto& [node, op] : kb_.nodes) kb_.trust.operators.insert(op);
    for (const auto& [a, b] : kb_.direct_flags) {
      kb_.trust.operators.insert(a);
      kb_.trust.operators.insert(b);
    }

    for (const auto& [atom, where] : negated_) {
      if (kb_.is_policy(atom.predicate, atom.arity())) {
        fail(ErrorCode::InvalidNegation,
             "negation of derived atom " + dsl::to_string(atom), where);
      }
      for (const auto& [key, label] : kb_.capabilities) {
        if (key.first == atom.predicate && !is_certain(label)) {
          fail(ErrorCode::InvalidNegation,
               "negated capability " + atom.predicate +
                   " is declared with a label at " + key.second,
               where);
        }
      }
    }

    std::sort(kb_.policies.begin(), kb_.policies.end(),
              [](const PolicyRule& a, const PolicyRule& b) {
                return std::make_tuple(a.head.predicate, dsl::to_string(a.head),
                                       dsl::to_string(a.body)) <
                       std::make_tuple(b.head.predicate, dsl::to_string(b.head),
                                       dsl::to_string(b.body));
              });
    kb_.policies.erase(std::unique(kb_.policies.begin(), kb_.policies.end()),
                       kb_.policies.end());
    std::sort(kb_.queries.begin(), kb_.queries.end(),
              [](const dsl::Atom& a, const dsl::Atom& b) {
                return dsl::to_string(a) < dsl::to_string(b);
              });
    kb_.queries.erase(std::unique(kb_.queries.begin(), kb_.queries.end()),
                      kb_.queries.end());
    check_acyclic();
  }

  void check_acyclic() {
    using Key = std::pair<std::string, std::size_t>;
    std::map<Key, std::vector<std::pair<Key, const PolicyRule*>>> deps;
    for (const auto& rule : kb_.policies) {
      Key head{rule.head.predicate, rule.head.arity()};
      deps[head];
      std::function<void(const dsl::BodyExpr&)> walk =
          [&](const dsl::BodyExpr& e) {
            if (e.kind == dsl::BodyExpr::Kind::Literal) {
              Key dep{e.atom.predicate, e.atom.arity()};
              if (kb_.is_policy(dep.first, dep.second)) {
                deps[head].push_back({dep, &rule});
              }
            }
            for (const auto& child : e.children) walk(child);
          };
      walk(rule.body);
    }
    enum class Mark { None, Active, Done };
    std::map<Key, Mark> mark;
    std::function<void(const Key&)> visit = [&](const Key& key) {
      mark[key] = Mark::Active;
      for (const auto& [dep, rule] : deps[key]) {
        if (mark[dep] == Mark::Active) {
          throw Error(ErrorCode::RecursivePolicy,
                      "policy " + key.first + "/" + std::to_string(key.second) +
                          " depends on itself through " + dep.first + "/" +
                          std::to_string(dep.second),
                      rule->origin, rule->line);
        }
        if (mark[dep] == Mark::None) visit(dep);
      }
      mark[key] = Mark::Done;
    };
    for (const auto& [key, unused] : deps) {
      if (mark[key] == Mark::None) visit(key);
    }
  }

  KnowledgeBase kb_;
  std::map<std::pair<std::string, std::string>, Label> edges_;
  std::vector<std::pair<dsl::Atom, Located>> negated_;
};

}  // namespace

bool PolicyRule::is_requirement() const {
  return head.predicate == kRequirement && head.arity() == 2;
}

const TrustEdge* TrustNetwork::find(const std::string& from,
                                    const std::string& to) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), std::tie(from, to),
                             [](const TrustEdge& e, const auto& key) {
                               return std::tie(e.from, e.to) < key;
                             });
  if (it != edges.end() && it->from == from && it->to == to) return &*it;
  return nullptr;
}

std::optional<std::string> KnowledgeBase::node_operator(
    const std::string& node) const {
  if (auto it = nodes.find(node); it != nodes.end()) return it->second;
  return std::nullopt;
}

const Label* KnowledgeBase::capability(const std::string& name,
                                       const std::string& node) const {
  if (auto it = capabilities.find({name, node}); it != capabilities.end()) {
    return &it->second;
  }
  return nullptr;
}

bool KnowledgeBase::is_policy(const std::string& predicate,
                              std::size_t arity) const {
  return std::any_of(policies.begin(), policies.end(), [&](const auto& rule) {
    return rule.head.predicate == predicate && rule.head.arity() == arity;
  });
}

std::vector<const PolicyRule*> KnowledgeBase::rules_for(
    const std::string& predicate, std::size_t arity) const {
  std::vector<const PolicyRule*> out;
  for (const auto& rule : policies) {
    if (rule.head.predicate == predicate && rule.head.arity() == arity) {
      out.push_back(&rule);
    }
  }
  return out;
}

std::vector<const PolicyRule*> KnowledgeBase::requirements_for(
    const std::string& service) const {
  std::vector<const PolicyRule*> out;
  for (const auto& rule : policies) {
    if (rule.is_requirement() && rule.head.args[0].name == service) {
      out.push_back(&rule);
    }
  }
  return out;
}

bool KnowledgeBase::has_service(const std::string& service) const {
  return std::any_of(apps.begin(), apps.end(), [&](const auto& app) {
    return std::find(app.second.begin(), app.second.end(), service) !=
           app.second.end();
  });
}

bool KnowledgeBase::knows_operator(const std::string& op) const {
  return trust.operators.count(op) > 0;
}

KnowledgeBase build_kb(const std::vector<dsl::Program>& programs,
                       SemiringKind semiring) {
  return Builder(semiring).run(programs);
}

dsl::Program read_program(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return dsl::parse_program(buffer.str(), path.string());
  } catch (const ParseError& e) {
    throw e.with_origin(path.string());
  }
}

const std::vector<std::string>& capability_vocabulary() {
  static const std::vector<std::string> names = {
      // virtualisation
      "access_logs", "authentication", "host_ids", "process_isolation",
      "permission_model", "resource_monitoring", "restore_points",
      "user_data_isolation",
      // communications
      "certificates", "iot_data_encryption", "firewall",
      "node_isolation_mechanism", "network_ids", "public_key_cryptography",
      "wireless_security",
      // data
      "backup", "encrypted_storage", "obfuscated_storage",
      // physical
      "access_control", "anti_tampering",
      // other
      "audit",
  };
  return names;
}

std::vector<Warning> lint_vocabulary(const KnowledgeBase& kb) {
  const auto& vocabulary = capability_vocabulary();
  std::vector<Warning> out;
  std::set<std::string> reported;
  for (const auto& [key, label] : kb.capabilities) {
    const auto& [name, node] = key;
    if (std::find(vocabulary.begin(), vocabulary.end(), name) !=
        vocabulary.end()) {
      continue;
    }
    if (!reported.insert(name).second) continue;
    const std::string atom = name + "(" + node + ")";
    out.push_back({atom, atom + ": capability '" + name +
                             "' is not part of the reference vocabulary"});
  }
  return out;
}

}  // namespace secassess
