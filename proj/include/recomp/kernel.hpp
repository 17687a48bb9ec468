#pragma once

// Kernel logics, per-node classification of the converged cycle and node bias.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "recomp/network.hpp"
#include "recomp/oracle.hpp"
#include "recomp/self_composition.hpp"

namespace recomp {

/// Same steady states and same cycles, where a cycle is compared by its
/// state set. A rule that walks a cycle backwards therefore has the same
/// cycles as one that walks it forwards.
bool same_attractors(const AttractorSet& a, const AttractorSet& b);

bool is_kernel_logic(const LogicVector& lv, const NetworkModel& model,
                     unsigned limit = kDefaultOracleLimit);

struct KernelLogicReport {
  std::vector<bool> is_kernel;            // one flag per cycle member
  std::vector<AttractorSet> attractors;   // of each member run as an update rule
  AttractorSet original;
};

KernelLogicReport kernel_logic_report(const CompositionTrace& trace, const NetworkModel& model,
                                      unsigned limit = kDefaultOracleLimit);

/// 1-based positions in the cycle (f^{p*} is #1) of the kernel logics.
std::vector<std::size_t> find_kernel_logics(const CompositionTrace& trace,
                                            const NetworkModel& model,
                                            unsigned limit = kDefaultOracleLimit);

struct NodeBias {
  std::string name;
  double fraction = 0;  // count / 2^n
  BigCount count;       // initial states driving the node to 1
};

std::vector<NodeBias> node_bias(const NetworkModel& model, const LogicVector& lv);

/// Share of kernel states s with lv_i(s) = 1.
std::vector<double> kernel_bias(const NetworkModel& model, const LogicVector& lv,
                                std::span<const StateIndex> kernel);

enum class VerdictKind { Const0, Const1, Periodic, Formula };

std::string to_string(VerdictKind kind);

struct NodeVerdict {
  std::string name;
  VerdictKind kind = VerdictKind::Formula;
  /// Smallest d dividing l* with h[k] = h[k + d] around the cycle.
  std::uint64_t period = 1;
  /// One text per phase k < period, starting at f^{p*}.
  std::vector<std::string> phase_formulas;
  bool is_input = false;
};

std::vector<NodeVerdict> classify_nodes(const CompositionTrace& trace, const NetworkModel& model);

/// 2^(number of non-constant verdicts).
BigCount reduced_state_space(std::span<const NodeVerdict> verdicts);

}  // namespace recomp
