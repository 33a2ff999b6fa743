#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hermitian {

enum class ErrorKind {
  Domain,
  Bracket,
  Evaluation,
  Degeneracy,
  Accuracy,
  Monotonicity,
  Grid,
  Solver,
  UnsupportedDegree,
  NoSolution,
  InvalidSolution,
  DegreeBound,
  InvalidMetric,
  Format,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Bracket: return "bracket error";
    case ErrorKind::Evaluation: return "evaluation error";
    case ErrorKind::Degeneracy: return "degeneracy error";
    case ErrorKind::Accuracy: return "accuracy error";
    case ErrorKind::Monotonicity: return "monotonicity error";
    case ErrorKind::Grid: return "grid error";
    case ErrorKind::Solver: return "solver error";
    case ErrorKind::UnsupportedDegree: return "unsupported degree";
    case ErrorKind::NoSolution: return "no solution";
    case ErrorKind::InvalidSolution: return "invalid solution";
    case ErrorKind::DegreeBound: return "degree bound violated";
    case ErrorKind::InvalidMetric: return "invalid metric";
    case ErrorKind::Format: return "malformed file";
  }
  return "error";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hermitian
