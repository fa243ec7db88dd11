#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "secassess/model.hpp"

#ifndef SECASSESS_FIXTURES
#error "SECASSESS_FIXTURES must point at tests/fixtures"
#endif

namespace fixtures {

inline std::string path(const std::string& name) {
  return std::string(SECASSESS_FIXTURES) + "/" + name;
}

inline secassess::KnowledgeBase load(
    std::initializer_list<const char*> names,
    secassess::SemiringKind semiring = secassess::SemiringKind::Probability) {
  std::vector<secassess::dsl::Program> programs;
  for (const char* name : names) programs.push_back(secassess::read_program(path(name)));
  return secassess::build_kb(programs, semiring);
}

inline secassess::KnowledgeBase from_text(
    const std::string& text,
    secassess::SemiringKind semiring = secassess::SemiringKind::Probability) {
  return secassess::build_kb({secassess::dsl::parse_program(text, "inline")}, semiring);
}

}  // namespace fixtures
