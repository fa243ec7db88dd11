#pragma once

#include <string>
#include <variant>

namespace secassess {

/// A plain fact: true with probability 1 (or the semiring's one()).
struct Certain {
  bool operator==(const Certain&) const = default;
};

struct Prob {
  double p = 1.0;
  bool operator==(const Prob&) const = default;
};

/// Trust/confidence couple used by the algebraic semirings.
struct Pair {
  double trust = 1.0;
  double confidence = 1.0;
  bool operator==(const Pair&) const = default;
};

using Label = std::variant<Certain, Prob, Pair>;

inline bool is_certain(const Label& label) {
  return std::holds_alternative<Certain>(label);
}

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

/// "0.5", "(0.9,0.8)" or "" for Certain; no trailing "::".
std::string format_label(const Label& label);

}  // namespace secassess
