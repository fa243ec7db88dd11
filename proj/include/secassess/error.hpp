#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace secassess {

enum class ErrorCode {
  // knowledge-base validation
  DuplicateLabel,
  UnknownNode,
  RecursivePolicy,
  RangeError,
  UnsafeRule,
  ConflictingNode,
  InvalidApp,
  InvalidNegation,
  UnsupportedStatement,
  // queries
  NoRequirement,
  UnknownOperator,
  UnknownApp,
  InconsistentPartial,
  PathLimit,
  // inference
  UnsupportedLabel,
  SizeLimit,
  TooManyAtoms,
  NegationInAlgebraicMode,
  CarrierMismatch,
  UnlabeledAtom,
};

std::string_view to_string(ErrorCode code);

/// Base error for everything the library throws on bad input or failed
/// queries. Validation errors carry the originating file and line when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string origin = {},
        std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  const std::string& origin() const noexcept { return origin_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string origin_;
  std::size_t line_;
  std::string detail_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column,
             std::vector<std::string> expected, std::string origin = {});

  /// Same error attributed to `origin` (a file name).
  ParseError with_origin(std::string origin) const;

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }
  const std::string& message() const noexcept { return message_; }
  const std::string& origin() const noexcept { return origin_; }

 private:
  std::string message_;
  std::string origin_;
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

}  // namespace secassess
