#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "recomp/kernel.hpp"
#include "support/random_network.hpp"

using namespace recomp;

namespace {

const char* kToy = "x1 = x1 & x2\nx2 = x3\nx3 = x2\n";
const char* kChain =
    "x1 = x1 & x2\nx2 = x3\nx3 = x4\nx4 = x5\nx5 = x6\nx6 = x7\nx7 = x2\n";

StateIndex simulate(const TransitionMap& tmap, StateIndex s, std::uint64_t steps) {
  for (std::uint64_t k = 0; k < steps; ++k) s = tmap.successor[s];
  return s;
}

}  // namespace

TEST(KernelLogic, Toy) {
  const auto m = parse_network(kToy);
  const auto t = find_logic_cycle(m, 100);
  // f^2 freezes the ring (x2, x3 become projections of themselves), so 010 and
  // 001 turn into steady states; only f^3 keeps the original attractors.
  EXPECT_FALSE(is_kernel_logic(t.cycle[0], m));
  EXPECT_TRUE(is_kernel_logic(t.cycle[1], m));
  EXPECT_EQ(find_kernel_logics(t, m), std::vector<std::size_t>{2});
  const auto report = kernel_logic_report(t, m);
  EXPECT_EQ(report.attractors[0].steady.size(), 5u);
  EXPECT_EQ(report.original.steady.size(), 3u);
}

TEST(KernelLogic, Chain) {
  const auto m = parse_network(kChain);
  const auto t = find_logic_cycle(m, 100);
  EXPECT_EQ(find_kernel_logics(t, m), (std::vector<std::size_t>{2, 6}));
}

TEST(KernelLogic, SteadyLogicIsKernel) {
  const auto m = parse_network("a = a | b\nb = b\nc = a & b\n");
  const auto t = find_logic_cycle(m, 100);
  ASSERT_EQ(t.ell_star, 1u);
  EXPECT_EQ(find_kernel_logics(t, m), std::vector<std::size_t>{1});
}

TEST(KernelLogic, ReversedCycleCountsAsSame) {
  AttractorSet a{{0}, {{1, 2, 3}}};
  AttractorSet b{{0}, {{1, 3, 2}}};
  EXPECT_TRUE(same_attractors(a, b));
  AttractorSet c{{0}, {{1, 2}}};
  EXPECT_FALSE(same_attractors(a, c));
}

TEST(NodeBias, Toy) {
  const auto m = parse_network(kToy);
  SelfComposer c(m);
  const auto bias = node_bias(m, c.power(2));
  EXPECT_DOUBLE_EQ(bias[0].fraction, 1.0 / 8);
  EXPECT_EQ(bias[0].count, 1);
  EXPECT_DOUBLE_EQ(bias[1].fraction, 0.5);
  EXPECT_DOUBLE_EQ(bias[2].fraction, 0.5);
}

TEST(NodeBias, ChainX1IsRare) {
  const auto m = parse_network(kChain);
  const auto t = find_logic_cycle(m, 100);
  for (const auto& member : t.cycle) EXPECT_DOUBLE_EQ(node_bias(m, member)[0].fraction, 1.0 / 128);
}

TEST(NodeBias, KernelRestricted) {
  const auto m = parse_network(kToy);
  const auto kernel = kernel_states(find_attractors(build_transition_map(m)));
  SelfComposer c(m);
  const auto kb = kernel_bias(m, c.power(2), kernel);
  // Kernel {000, 001, 010, 011, 111}: x1 & x2 & x3 holds only on 111.
  EXPECT_DOUBLE_EQ(kb[0], 1.0 / 5);
  EXPECT_DOUBLE_EQ(kb[1], 3.0 / 5);
}

TEST(Classify, Toy) {
  const auto m = parse_network(kToy);
  const auto v = classify_nodes(find_logic_cycle(m, 100), m);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0].kind, VerdictKind::Formula);
  EXPECT_EQ(v[0].phase_formulas, std::vector<std::string>{"x1 & x2 & x3"});
  EXPECT_EQ(v[1].kind, VerdictKind::Periodic);
  EXPECT_EQ(v[1].period, 2u);
  EXPECT_EQ(v[1].phase_formulas, (std::vector<std::string>{"x2", "x3"}));
}

TEST(Classify, Constants) {
  const auto m = parse_network("a = 1\nb = !a\nc = c\n");
  const auto v = classify_nodes(find_logic_cycle(m, 100), m);
  EXPECT_EQ(v[0].kind, VerdictKind::Const1);
  EXPECT_EQ(v[1].kind, VerdictKind::Const0);
  EXPECT_EQ(v[2].kind, VerdictKind::Formula);
  EXPECT_EQ(reduced_state_space(v), 2);
  EXPECT_EQ(to_string(VerdictKind::Const1), "const1");
}

TEST(Classify, ReducedStateSpace) {
  std::vector<NodeVerdict> none;
  EXPECT_EQ(reduced_state_space(none), 1);
  std::vector<NodeVerdict> all_const(4);
  for (auto& v : all_const) v.kind = VerdictKind::Const0;
  EXPECT_EQ(reduced_state_space(all_const), 1);
  std::vector<NodeVerdict> free(40);
  BigCount expected = 1;
  expected <<= 40;
  EXPECT_EQ(reduced_state_space(free), expected);
}

TEST(Classify, EmptyTraceRejected) {
  const auto m = parse_network(kToy);
  EXPECT_THROW(classify_nodes(CompositionTrace{}, m), InvalidArgument);
}

TEST(CycleLengths, LongestCanBeShorterThanEllStar) {
  // A 3-cycle and a 2-cycle share no trajectory, so l* = 6 with no 6-cycle.
  const auto m = parse_network(
      "x0 = 0\nx1 = (x1 & !x3 & !x5) | (!x1 & x3) | (!x1 & x5)\nx2 = !x2 | !x4\n"
      "x3 = x0 | x3 | x4\nx4 = 0\nx5 = (x1 & x2 & !x6) | (!x1 & !x2 & !x6)\nx6 = 0\n"
      "x7 = (x0 & !x2) | (x0 & x6)\n");
  const auto t = find_logic_cycle(m, 1000);
  EXPECT_EQ(t.ell_star, 6u);
  std::vector<std::size_t> lengths;
  for (const auto& c : find_attractors(build_transition_map(m)).cycles) lengths.push_back(c.size());
  std::sort(lengths.begin(), lengths.end());
  EXPECT_EQ(lengths, (std::vector<std::size_t>{2, 3}));
}

// ---- properties over random networks ----

class RandomKernel : public ::testing::TestWithParam<int> {};

TEST_P(RandomKernel, PropertiesHold) {
  std::mt19937_64 rng(5000 + GetParam());
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 1 + (GetParam() * 8 + trial) % 12;
    const auto m = testgen::random_network(rng, n);
    const auto t = find_logic_cycle(m, 1u << 14);
    const auto tmap = build_transition_map(m);
    const auto attractors = find_attractors(tmap);
    const auto kernel = kernel_states(attractors);

    // Cross-level agreement and cycle lengths.
    EXPECT_EQ(map_cycle_indices(tmap), (CycleIndices{t.p_star, t.ell_star}));
    std::uint64_t lcm = 1;
    std::uint64_t longest = 1;
    for (const auto& c : attractors.cycles) {
      lcm = std::lcm(lcm, c.size());
      longest = std::max<std::uint64_t>(longest, c.size());
    }
    EXPECT_LE(longest, t.ell_star);
    EXPECT_EQ(lcm, t.ell_star);

    // Every converged logic maps the whole space onto the kernel.
    for (const auto& member : t.cycle) EXPECT_EQ(image_of_logic(m.store(), member), kernel);
    EXPECT_FALSE(find_kernel_logics(t, m).empty());

    // Per-node periods divide l* and their lcm is l*.
    const auto verdicts = classify_nodes(t, m);
    std::uint64_t period_lcm = 1;
    for (const auto& v : verdicts) {
      EXPECT_EQ(t.ell_star % v.period, 0u);
      EXPECT_EQ(v.phase_formulas.size(), v.period);
      period_lcm = std::lcm(period_lcm, v.period);
    }
    EXPECT_EQ(period_lcm, t.ell_star);

    // Bias counts equal simulated counts.
    const auto bias = node_bias(m, t.cycle[0]);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t ones = 0;
      for (StateIndex s = 0; s < tmap.successor.size(); ++s)
        ones += (simulate(tmap, s, t.p_star) >> (n - 1 - i)) & 1u;
      EXPECT_EQ(bias[i].count, ones);
    }

    // Starting the phases one step later rotates every node's formulas.
    CompositionTrace shifted = t;
    std::rotate(shifted.cycle.begin(), shifted.cycle.begin() + 1, shifted.cycle.end());
    const auto rotated = classify_nodes(shifted, m);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(rotated[i].kind, verdicts[i].kind);
      EXPECT_EQ(rotated[i].period, verdicts[i].period);
      auto expected = verdicts[i].phase_formulas;
      std::rotate(expected.begin(), expected.begin() + 1 % expected.size(), expected.end());
      EXPECT_EQ(rotated[i].phase_formulas, expected);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, RandomKernel, ::testing::Range(0, 12));
