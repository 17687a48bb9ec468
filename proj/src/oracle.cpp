#include "recomp/oracle.hpp"

#include <algorithm>
#include <thread>

namespace recomp {

namespace {

void check_limit(std::size_t n, unsigned limit) {
  const unsigned effective = std::min(limit, kMaxOracleLimit);
  if (n > effective) throw OracleLimitExceeded(static_cast<unsigned>(n), effective);
}

}  // namespace

TransitionMap build_transition_map(const FuncStore& store, std::span<const Func> rules,
                                   unsigned limit) {
  const auto n = rules.size();
  if (n != store.var_count()) throw InvalidArgument("one rule per store variable required");
  check_limit(n, limit);

  TransitionMap tmap{static_cast<unsigned>(n), {}};
  const std::uint64_t states = std::uint64_t{1} << n;
  tmap.successor.resize(states);

  auto fill = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t s = begin; s < end; ++s) {
      StateIndex next = 0;
      for (std::size_t j = 0; j < n; ++j)
        next = (next << 1) | (store.evaluate_index(rules[j], s) ? 1u : 0u);
      tmap.successor[s] = next;
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t workers = states < (1u << 14) ? 1 : std::min<std::uint64_t>(hw, 16);
  if (workers == 1) {
    fill(0, states);
    return tmap;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (states + workers - 1) / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const auto begin = w * chunk;
    const auto end = std::min(states, begin + chunk);
    if (begin < end) pool.emplace_back(fill, begin, end);
  }
  for (auto& t : pool) t.join();
  return tmap;
}

TransitionMap build_transition_map(const NetworkModel& model, unsigned limit) {
  return build_transition_map(model.store(), model.rules(), limit);
}

AttractorSet find_attractors(const TransitionMap& tmap) {
  const auto states = tmap.successor.size();
  // 0 = unvisited, 1 = on the current walk, 2 = finished
  std::vector<std::uint8_t> mark(states, 0);
  AttractorSet out;
  std::vector<StateIndex> path;
  for (std::size_t start = 0; start < states; ++start) {
    if (mark[start] != 0) continue;
    path.clear();
    auto s = static_cast<StateIndex>(start);
    while (mark[s] == 0) {
      mark[s] = 1;
      path.push_back(s);
      s = tmap.successor[s];
    }
    if (mark[s] == 1) {
      // s closes a new cycle on the current walk.
      auto first = std::find(path.begin(), path.end(), s);
      std::vector<StateIndex> cycle(first, path.end());
      if (cycle.size() == 1) {
        out.steady.push_back(cycle.front());
      } else {
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        out.cycles.push_back(std::move(cycle));
      }
    }
    for (auto p : path) mark[p] = 2;
  }
  std::sort(out.steady.begin(), out.steady.end());
  std::sort(out.cycles.begin(), out.cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

KernelSet kernel_states(const AttractorSet& attractors) {
  KernelSet k(attractors.steady.begin(), attractors.steady.end());
  for (const auto& c : attractors.cycles) k.insert(k.end(), c.begin(), c.end());
  std::sort(k.begin(), k.end());
  return k;
}

std::vector<StateIndex> image_of_logic(const FuncStore& store, const LogicVector& lv,
                                       unsigned limit) {
  const auto tmap = build_transition_map(store, lv.handles, limit);
  std::vector<bool> hit(tmap.successor.size(), false);
  for (auto t : tmap.successor) hit[t] = true;
  std::vector<StateIndex> image;
  for (std::size_t s = 0; s < hit.size(); ++s)
    if (hit[s]) image.push_back(static_cast<StateIndex>(s));
  return image;
}

CycleIndices map_cycle_indices(const TransitionMap& tmap) {
  // Brent's cycle detection on the sequence T, T^2, T^3, ... of whole maps;
  // only three arrays are alive at any time.
  const auto& succ = tmap.successor;
  auto advance = [&](std::vector<StateIndex>& m) {
    for (auto& v : m) v = succ[v];
  };

  std::vector<StateIndex> tortoise = succ;
  std::vector<StateIndex> hare = succ;
  advance(hare);
  std::uint64_t power = 1;
  std::uint64_t ell = 1;
  while (tortoise != hare) {
    if (power == ell) {
      tortoise = hare;
      power *= 2;
      ell = 0;
    }
    advance(hare);
    ++ell;
  }

  tortoise = succ;
  hare = succ;
  for (std::uint64_t k = 0; k < ell; ++k) advance(hare);
  std::uint64_t p = 1;
  while (tortoise != hare) {
    advance(tortoise);
    advance(hare);
    ++p;
  }
  return {p, ell};
}

std::string state_bits(StateIndex s, unsigned n) {
  std::string out(n, '0');
  for (unsigned j = 0; j < n; ++j)
    if ((s >> (n - 1 - j)) & 1u) out[j] = '1';
  return out;
}

}  // namespace recomp
