#include "secassess/error.hpp"

#include <utility>

namespace secassess {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::RecursivePolicy: return "RecursivePolicy";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::UnsafeRule: return "UnsafeRule";
    case ErrorCode::ConflictingNode: return "ConflictingNode";
    case ErrorCode::InvalidApp: return "InvalidApp";
    case ErrorCode::InvalidNegation: return "InvalidNegation";
    case ErrorCode::UnsupportedStatement: return "UnsupportedStatement";
    case ErrorCode::NoRequirement: return "NoRequirement";
    case ErrorCode::UnknownOperator: return "UnknownOperator";
    case ErrorCode::UnknownApp: return "UnknownApp";
    case ErrorCode::InconsistentPartial: return "InconsistentPartial";
    case ErrorCode::PathLimit: return "PathLimit";
    case ErrorCode::UnsupportedLabel: return "UnsupportedLabel";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::TooManyAtoms: return "TooManyAtoms";
    case ErrorCode::NegationInAlgebraicMode: return "NegationInAlgebraicMode";
    case ErrorCode::CarrierMismatch: return "CarrierMismatch";
    case ErrorCode::UnlabeledAtom: return "UnlabeledAtom";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     const std::string& origin, std::size_t line) {
  std::string out;
  if (!origin.empty()) {
    out += origin;
    if (line != 0) out += ":" + std::to_string(line);
    out += ": ";
  } else if (line != 0) {
    out += "line " + std::to_string(line) + ": ";
  }
  out += std::string(to_string(code));
  out += ": ";
  out += message;
  return out;
}

std::string join_expected(const std::string& message,
                          const std::vector<std::string>& expected,
                          std::size_t line, std::size_t column,
                          const std::string& origin) {
  std::string out = (origin.empty() ? "" : origin + ":") + std::to_string(line) + ":" + std::to_string(column) +
                    ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::string origin,
             std::size_t line)
    : std::runtime_error(decorate(code, message, origin, line)),
      code_(code),
      origin_(std::move(origin)),
      line_(line),
      detail_(message) {}

ParseError::ParseError(std::string message, std::size_t line,
                       std::size_t column, std::vector<std::string> expected,
                       std::string origin)
    : std::runtime_error(
          join_expected(message, expected, line, column, origin)),
      message_(std::move(message)),
      origin_(std::move(origin)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

ParseError ParseError::with_origin(std::string origin) const {
  return ParseError(message_, line_, column_, expected_, std::move(origin));
}

}  // namespace secassess
