#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace recomp {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violation: unknown variable, store mismatch, missing substitution, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

struct SourcePos {
  std::size_t line = 0;    // 1-based, 0 when unknown
  std::size_t column = 0;  // 1-based, 0 when unknown
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& message)
      : Error(format(pos, message)), pos_(pos), detail_(message) {}

  SourcePos pos() const noexcept { return pos_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(SourcePos pos, const std::string& message) {
    if (pos.line == 0) return message;
    return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
  }

  SourcePos pos_;
  std::string detail_;
};

/// What a self-composition run had achieved when it was cut short.
struct PartialTrace {
  std::uint64_t steps_completed = 0;
  /// Largest decision-diagram size seen for each node's composite rule.
  std::vector<std::size_t> largest_node_counts;
  std::size_t store_nodes = 0;

  bool operator==(const PartialTrace&) const = default;
};

class NodeBudgetExceeded : public Error {
 public:
  explicit NodeBudgetExceeded(std::size_t budget, PartialTrace partial = {})
      : Error("decision diagram node budget exceeded (" + std::to_string(budget) + " nodes)"),
        budget_(budget),
        partial_(std::move(partial)) {}

  std::size_t budget() const noexcept { return budget_; }
  const PartialTrace& partial() const noexcept { return partial_; }

 private:
  std::size_t budget_;
  PartialTrace partial_;
};

class StepLimitExceeded : public Error {
 public:
  StepLimitExceeded(std::uint64_t max_steps, PartialTrace partial)
      : Error("no logic repetition within " + std::to_string(max_steps) + " steps"),
        max_steps_(max_steps),
        partial_(std::move(partial)) {}

  std::uint64_t max_steps() const noexcept { return max_steps_; }
  const PartialTrace& partial() const noexcept { return partial_; }

 private:
  std::uint64_t max_steps_;
  PartialTrace partial_;
};

class OracleLimitExceeded : public Error {
 public:
  OracleLimitExceeded(unsigned n, unsigned limit)
      : Error("network has " + std::to_string(n) + " nodes, exhaustive limit is " +
              std::to_string(limit)),
        n_(n),
        limit_(limit) {}

  unsigned nodes() const noexcept { return n_; }
  unsigned limit() const noexcept { return limit_; }

 private:
  unsigned n_;
  unsigned limit_;
};

}  // namespace recomp
