#pragma once

// Exhaustive ground truth for small networks: the state transition map,
// attractors, kernel states and map-level cycle indices.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "recomp/func_store.hpp"
#include "recomp/network.hpp"
#include "recomp/self_composition.hpp"

namespace recomp {

/// Bit j of a state index (first node = most significant) is node j's value.
using StateIndex = std::uint32_t;

inline constexpr unsigned kDefaultOracleLimit = 24;
inline constexpr unsigned kMaxOracleLimit = 30;

struct TransitionMap {
  unsigned n = 0;
  std::vector<StateIndex> successor;
};

struct AttractorSet {
  std::vector<StateIndex> steady;
  /// Each cycle starts at its smallest state; cycles sorted by that state.
  std::vector<std::vector<StateIndex>> cycles;

  bool operator==(const AttractorSet&) const = default;
};

using KernelSet = std::vector<StateIndex>;

struct CycleIndices {
  std::uint64_t p = 0;
  std::uint64_t ell = 0;

  bool operator==(const CycleIndices&) const = default;
};

/// successor[s] = index of rules(state(s)). Work is split across threads.
TransitionMap build_transition_map(const FuncStore& store, std::span<const Func> rules,
                                   unsigned limit = kDefaultOracleLimit);
TransitionMap build_transition_map(const NetworkModel& model, unsigned limit = kDefaultOracleLimit);

AttractorSet find_attractors(const TransitionMap& tmap);
KernelSet kernel_states(const AttractorSet& attractors);

/// Sorted image { lv(state(s)) : s }.
std::vector<StateIndex> image_of_logic(const FuncStore& store, const LogicVector& lv,
                                       unsigned limit = kDefaultOracleLimit);

/// Minimal p >= 1, l >= 1 with T^p = T^(p+l), by iterating the whole map.
CycleIndices map_cycle_indices(const TransitionMap& tmap);

/// State index rendered as n binary digits, first node first.
std::string state_bits(StateIndex s, unsigned n);

}  // namespace recomp
