#include "recomp/self_composition.hpp"

#include <unordered_map>

namespace recomp {

namespace {

// Clear the ITE cache once it grows past this many entries.
constexpr std::size_t kCacheFlushEntries = std::size_t{1} << 23;

struct VectorKeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& ids) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto id : ids) {
      h ^= id;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

using SeenMap = std::unordered_map<std::vector<std::uint32_t>, std::uint64_t, VectorKeyHash>;

std::vector<std::uint32_t> key_of(const LogicVector& v) {
  std::vector<std::uint32_t> ids;
  ids.reserve(v.handles.size());
  for (Func f : v.handles) ids.push_back(f.node());
  return ids;
}

}  // namespace

LogicVector step_compose(FuncStore& store, const LogicVector& g, const LogicVector& f) {
  if (g.handles.size() != f.handles.size() || f.handles.size() != store.var_count())
    throw InvalidArgument("logic vectors must have one handle per store variable");
  return {store.compose_all(g.handles, f.handles), g.step + f.step};
}

SelfComposer::SelfComposer(const NetworkModel& model, ProgressSink progress)
    : model_(model),
      store_(model.store()),
      base_{std::vector<Func>(model.rules().begin(), model.rules().end()), 1},
      progress_(std::move(progress)),
      start_(std::chrono::steady_clock::now()),
      largest_(model.size(), 0) {
  squarings_.push_back(base_);
}

LogicVector SelfComposer::identity() const {
  LogicVector id{{}, 0};
  id.handles.reserve(model_.size());
  for (std::uint32_t i = 0; i < model_.size(); ++i) id.handles.push_back(store_.mk_var(VarId{i}));
  return id;
}

void SelfComposer::observe(const char* phase, const LogicVector& v) {
  highest_step_ = std::max(highest_step_, v.step);
  ProgressRecord rec;
  rec.phase = phase;
  rec.step = v.step;
  rec.node_counts.reserve(v.handles.size());
  for (std::size_t i = 0; i < v.handles.size(); ++i) {
    const auto size = store_.dag_size(v.handles[i]);
    largest_[i] = std::max(largest_[i], size);
    rec.node_counts.push_back(size);
  }
  if (progress_) {
    rec.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    progress_(rec);
  }
}

PartialTrace SelfComposer::partial() const {
  return PartialTrace{highest_step_, largest_, store_.node_count()};
}

template <typename Fn>
auto SelfComposer::guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const NodeBudgetExceeded& e) {
    if (e.partial().steps_completed != 0) throw;
    throw NodeBudgetExceeded(e.budget(), partial());
  }
}

LogicVector SelfComposer::compose(const LogicVector& g, const LogicVector& f) {
  auto out = step_compose(store_, g, f);
  ++compositions_;
  if (store_.cache_entries() > kCacheFlushEntries) store_.clear_caches();
  return out;
}

LogicVector SelfComposer::power(std::uint64_t m) {
  if (m == 0) throw InvalidArgument("power must be at least 1");
  return guarded([&] {
    std::optional<LogicVector> result;
    for (std::size_t k = 0; (m >> k) != 0; ++k) {
      if (k == squarings_.size()) {
        squarings_.push_back(compose(squarings_.back(), squarings_.back()));
        observe("power", squarings_.back());
      }
      if ((m >> k) & 1u) result = result ? compose(*result, squarings_[k]) : squarings_[k];
    }
    return *result;
  });
}

CompositionTrace SelfComposer::find_logic_cycle(std::uint64_t max_steps) {
  if (max_steps < 1) throw InvalidArgument("max_steps must be at least 1");
  return guarded([&] {
    const auto compositions_before = compositions_;
    SeenMap seen;
    std::vector<LogicVector> history;  // history[m - 1] = f^m
    LogicVector current = base_;
    observe("step", current);
    for (;;) {
      auto key = key_of(current);
      if (auto it = seen.find(key); it != seen.end()) {
        CompositionTrace trace;
        trace.p_star = it->second;
        trace.ell_star = current.step - it->second;
        trace.cycle.assign(history.begin() + static_cast<std::ptrdiff_t>(trace.p_star - 1),
                           history.end());
        trace.prefix_steps = compositions_ - compositions_before;
        return trace;
      }
      seen.emplace(std::move(key), current.step);
      history.push_back(current);
      if (current.step >= max_steps) throw StepLimitExceeded(max_steps, partial());
      current = compose(current, base_);
      observe("step", current);
    }
  });
}

CompositionTrace SelfComposer::leap_and_fill(const LeapConfig& cfg) {
  if (cfg.stride < 1) throw InvalidArgument("stride must be at least 1");
  if (cfg.max_steps < 1) throw InvalidArgument("max_steps must be at least 1");
  return guarded([&] {
    const auto compositions_before = compositions_;
    const std::uint64_t stride = cfg.stride;

    // Leap: G_j = f^(j * stride) until a sampled vector recurs.
    const LogicVector leap = power(stride);
    SeenMap seen;
    std::vector<LogicVector> samples;  // samples[j - 1] = G_j
    LogicVector g = leap;
    std::uint64_t j = 1;
    std::uint64_t i = 0;
    for (;;) {
      observe("leap", g);
      auto key = key_of(g);
      if (auto it = seen.find(key); it != seen.end()) {
        i = it->second;
        break;
      }
      seen.emplace(std::move(key), j);
      samples.push_back(g);
      if ((j + 1) * stride > cfg.max_steps) throw StepLimitExceeded(cfg.max_steps, partial());
      g = compose(g, leap);
      ++j;
    }

    CompositionTrace trace;
    trace.sampled_convergence_step = i * stride;

    // Exact period: single-step from G_i until it recurs; l* divides (j - i) * stride.
    const LogicVector& anchor = samples[i - 1];
    std::vector<LogicVector> members{anchor};
    for (;;) {
      LogicVector next = compose(members.back(), base_);
      trace.fill_steps.push_back(next.step);
      observe("fill", next);
      if (next.same_logic(anchor)) break;
      members.push_back(std::move(next));
    }
    const std::uint64_t ell = members.size();

    // Exact prefix: m -> [f^m == f^(m+l*)] is monotone and true at i * stride.
    std::uint64_t lo = 1;
    std::uint64_t hi = anchor.step;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      const LogicVector a = power(mid);
      const LogicVector b = power(mid + ell);
      observe("refine", a);
      if (a.same_logic(b))
        hi = mid;
      else
        lo = mid + 1;
    }

    trace.p_star = lo;
    trace.ell_star = ell;
    // The single-step members cover every phase; rotate so the cycle starts at f^{p*}.
    const std::uint64_t shift = (lo % ell + ell - anchor.step % ell) % ell;
    for (std::uint64_t k = 0; k < ell; ++k) {
      LogicVector member = members[(shift + k) % ell];
      member.step = lo + k;
      trace.cycle.push_back(std::move(member));
    }
    trace.prefix_steps = compositions_ - compositions_before;
    return trace;
  });
}

CompositionTrace find_logic_cycle(const NetworkModel& model, std::uint64_t max_steps) {
  return SelfComposer(model).find_logic_cycle(max_steps);
}

CompositionTrace leap_and_fill(const NetworkModel& model, const LeapConfig& cfg) {
  return SelfComposer(model).leap_and_fill(cfg);
}

LogicVector power(const NetworkModel& model, std::uint64_t m) {
  return SelfComposer(model).power(m);
}

const LogicVector& cycle_member(const CompositionTrace& trace, std::uint64_t m) {
  if (trace.cycle.empty() || m < trace.p_star)
    throw InvalidArgument("step " + std::to_string(m) + " precedes the converged cycle");
  return trace.cycle[(m - trace.p_star) % trace.ell_star];
}

}  // namespace recomp
