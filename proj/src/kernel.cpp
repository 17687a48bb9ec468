#include "recomp/kernel.hpp"

#include <algorithm>

namespace recomp {

namespace {

std::vector<std::vector<StateIndex>> cycle_sets(const AttractorSet& a) {
  std::vector<std::vector<StateIndex>> sets;
  sets.reserve(a.cycles.size());
  for (auto c : a.cycles) {
    std::sort(c.begin(), c.end());
    sets.push_back(std::move(c));
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

}  // namespace

bool same_attractors(const AttractorSet& a, const AttractorSet& b) {
  return a.steady == b.steady && cycle_sets(a) == cycle_sets(b);
}

bool is_kernel_logic(const LogicVector& lv, const NetworkModel& model, unsigned limit) {
  const auto original = find_attractors(build_transition_map(model, limit));
  const auto converged = find_attractors(build_transition_map(model.store(), lv.handles, limit));
  return same_attractors(original, converged);
}

KernelLogicReport kernel_logic_report(const CompositionTrace& trace, const NetworkModel& model,
                                      unsigned limit) {
  KernelLogicReport report;
  report.original = find_attractors(build_transition_map(model, limit));
  for (const auto& member : trace.cycle) {
    auto attractors = find_attractors(build_transition_map(model.store(), member.handles, limit));
    report.is_kernel.push_back(same_attractors(report.original, attractors));
    report.attractors.push_back(std::move(attractors));
  }
  return report;
}

std::vector<std::size_t> find_kernel_logics(const CompositionTrace& trace,
                                            const NetworkModel& model, unsigned limit) {
  const auto report = kernel_logic_report(trace, model, limit);
  std::vector<std::size_t> indices;
  for (std::size_t k = 0; k < report.is_kernel.size(); ++k)
    if (report.is_kernel[k]) indices.push_back(k + 1);
  return indices;
}

std::vector<NodeBias> node_bias(const NetworkModel& model, const LogicVector& lv) {
  std::vector<NodeBias> out;
  out.reserve(model.size());
  for (std::size_t i = 0; i < model.size(); ++i)
    out.push_back({model.name(i), model.store().sat_fraction(lv.handles.at(i)),
                   model.store().sat_count(lv.handles.at(i))});
  return out;
}

std::vector<double> kernel_bias(const NetworkModel& model, const LogicVector& lv,
                                std::span<const StateIndex> kernel) {
  std::vector<double> out(model.size(), 0.0);
  if (kernel.empty()) return out;
  for (std::size_t i = 0; i < model.size(); ++i) {
    std::size_t ones = 0;
    for (auto s : kernel) ones += model.store().evaluate_index(lv.handles.at(i), s) ? 1 : 0;
    out[i] = static_cast<double>(ones) / static_cast<double>(kernel.size());
  }
  return out;
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Const0: return "const0";
    case VerdictKind::Const1: return "const1";
    case VerdictKind::Periodic: return "periodic";
    case VerdictKind::Formula: return "formula";
  }
  return "unknown";
}

std::vector<NodeVerdict> classify_nodes(const CompositionTrace& trace, const NetworkModel& model) {
  auto& store = model.store();
  const auto ell = trace.cycle.size();
  if (ell == 0) throw InvalidArgument("trace has no converged cycle");
  std::vector<NodeVerdict> out;
  out.reserve(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    NodeVerdict v;
    v.name = model.name(i);
    v.is_input = model.is_input(i);
    auto at = [&](std::size_t k) { return trace.cycle[k % ell].handles.at(i); };

    for (std::size_t d = 1; d <= ell; ++d) {
      if (ell % d != 0) continue;
      bool repeats = true;
      for (std::size_t k = 0; k < ell && repeats; ++k) repeats = at(k) == at(k + d);
      if (repeats) {
        v.period = d;
        break;
      }
    }
    if (v.period == 1 && store.is_constant(at(0))) {
      v.kind = store.is_true(at(0)) ? VerdictKind::Const1 : VerdictKind::Const0;
    } else {
      v.kind = v.period == 1 ? VerdictKind::Formula : VerdictKind::Periodic;
    }
    for (std::size_t k = 0; k < v.period; ++k) v.phase_formulas.push_back(store.to_expression_text(at(k)));
    out.push_back(std::move(v));
  }
  return out;
}

BigCount reduced_state_space(std::span<const NodeVerdict> verdicts) {
  const auto free_nodes = std::count_if(verdicts.begin(), verdicts.end(), [](const NodeVerdict& v) {
    return v.kind != VerdictKind::Const0 && v.kind != VerdictKind::Const1;
  });
  BigCount size = 1;
  size <<= static_cast<unsigned>(free_nodes);
  return size;
}

}  // namespace recomp
