#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sbmr {

/// Requested edit count exceeds what the graph can absorb.
class BudgetInfeasibleError : public std::runtime_error {
 public:
  BudgetInfeasibleError(const std::string& what, std::int64_t max_feasible)
      : std::runtime_error(what + " (max feasible: " + std::to_string(max_feasible) + ")"),
        max_feasible_(max_feasible) {}

  std::int64_t max_feasible() const { return max_feasible_; }

 private:
  std::int64_t max_feasible_;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::int64_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::int64_t line() const { return line_; }

 private:
  std::int64_t line_;
};

/// The first-order SDP solver could not produce a feasible projection.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sbmr
