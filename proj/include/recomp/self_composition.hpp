#pragma once

// Recursive self-composition of a network's update rules: f, f^2, f^3, ...
// until the vector of composite rules repeats.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recomp/func_store.hpp"
#include "recomp/network.hpp"

namespace recomp {

/// f^step: one composite rule per node. step 0 is the identity.
struct LogicVector {
  std::vector<Func> handles;
  std::uint64_t step = 1;

  /// Compares the denoted maps only, not the step.
  bool same_logic(const LogicVector& other) const { return handles == other.handles; }
};

struct CompositionTrace {
  std::uint64_t p_star = 0;
  std::uint64_t ell_star = 0;
  /// f^{p*}, ..., f^{p*+l*-1}
  std::vector<LogicVector> cycle;
  /// Compositions performed while finding the trace.
  std::uint64_t prefix_steps = 0;
  /// Leaping only: first sampled step whose logic recurred (i * stride).
  std::uint64_t sampled_convergence_step = 0;
  /// Leaping only: steps reached by single-step composition after the leaps.
  std::vector<std::uint64_t> fill_steps;
};

struct LeapConfig {
  std::uint64_t stride = 4;
  std::uint64_t max_steps = 1u << 20;
};

struct ProgressRecord {
  std::string phase;  // "step", "leap", "refine", "fill", "power"
  std::uint64_t step = 0;
  std::vector<std::size_t> node_counts;
  double elapsed_seconds = 0;
};

using ProgressSink = std::function<void(const ProgressRecord&)>;

/// g ∘ f: component i is g_i with every variable v replaced by f_v.
LogicVector step_compose(FuncStore& store, const LogicVector& g, const LogicVector& f);

/// Composition engine for one model. Caches the base vector and the
/// repeated squarings f^(2^k). Not safe to share between threads.
class SelfComposer {
 public:
  explicit SelfComposer(const NetworkModel& model, ProgressSink progress = {});

  const NetworkModel& model() const noexcept { return model_; }
  LogicVector identity() const;
  const LogicVector& base() const noexcept { return base_; }

  LogicVector compose(const LogicVector& g, const LogicVector& f);
  /// f^m by binary powering, m >= 1.
  LogicVector power(std::uint64_t m);

  /// Plain recursion f, f^2, ... with first-seen detection.
  CompositionTrace find_logic_cycle(std::uint64_t max_steps);
  /// Leap by f^stride, then recover the exact period, prefix and cycle.
  CompositionTrace leap_and_fill(const LeapConfig& cfg);

  /// Largest diagram size per node observed so far.
  const std::vector<std::size_t>& largest_node_counts() const noexcept { return largest_; }

 private:
  void observe(const char* phase, const LogicVector& v);
  PartialTrace partial() const;
  template <typename Fn>
  auto guarded(Fn&& fn) -> decltype(fn());

  const NetworkModel& model_;
  FuncStore& store_;
  LogicVector base_;
  std::vector<LogicVector> squarings_;  // squarings_[k] = f^(2^k)
  ProgressSink progress_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::size_t> largest_;
  std::uint64_t compositions_ = 0;
  std::uint64_t highest_step_ = 1;
};

CompositionTrace find_logic_cycle(const NetworkModel& model, std::uint64_t max_steps);
CompositionTrace leap_and_fill(const NetworkModel& model, const LeapConfig& cfg);
LogicVector power(const NetworkModel& model, std::uint64_t m);

/// The converged vector equal to f^m, for m >= p*.
const LogicVector& cycle_member(const CompositionTrace& trace, std::uint64_t m);

}  // namespace recomp
