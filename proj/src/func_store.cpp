#include "recomp/func_store.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_set>

namespace recomp {

namespace {

constexpr std::uint32_t kMissing = 0xffffffffu;

std::uint32_t next_store_tag() {
  static std::atomic<std::uint32_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

Assignment::Assignment(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) bits_.push_back(b != 0 ? 1 : 0);
}

Assignment Assignment::from_index(std::uint64_t index, std::size_t n) {
  Assignment a(n);
  for (std::size_t j = 0; j < n; ++j) a.bits_[j] = (index >> (n - 1 - j)) & 1u;
  return a;
}

std::uint64_t Assignment::to_index() const {
  std::uint64_t index = 0;
  for (auto b : bits_) index = (index << 1) | b;
  return index;
}

std::size_t FuncStore::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = k.a;
  h = h * 0x9e3779b97f4a7c15ull ^ k.b;
  h = h * 0x9e3779b97f4a7c15ull ^ k.c;
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 32;
  return static_cast<std::size_t>(h);
}

FuncStore::FuncStore(std::vector<std::string> var_names, std::size_t node_budget)
    : tag_(next_store_tag()), names_(std::move(var_names)), budget_(node_budget) {
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    if (!name_index_.emplace(names_[i], i).second)
      throw InvalidArgument("duplicate variable name '" + names_[i] + "'");
  }
  const auto terminal_level = static_cast<std::uint32_t>(names_.size());
  nodes_.push_back({terminal_level, kFalse, kFalse});
  nodes_.push_back({terminal_level, kTrue, kTrue});
}

const std::string& FuncStore::var_name(VarId v) const {
  if (v.index >= names_.size())
    throw InvalidArgument("unknown variable index " + std::to_string(v.index));
  return names_[v.index];
}

std::optional<VarId> FuncStore::find_var(std::string_view name) const {
  auto it = name_index_.find(std::string(name));
  if (it == name_index_.end()) return std::nullopt;
  return VarId{it->second};
}

VarId FuncStore::var(std::string_view name) const {
  if (auto v = find_var(name)) return *v;
  throw InvalidArgument("unknown variable '" + std::string(name) + "'");
}

std::uint32_t FuncStore::own(Func f) const {
  if (f.store_tag() != tag_) throw InvalidArgument("function handle belongs to another store");
  return f.node();
}

std::uint32_t FuncStore::make(std::uint32_t var, std::uint32_t lo, std::uint32_t hi) {
  if (lo == hi) return lo;
  const Key key{var, lo, hi};
  if (auto it = unique_.find(key); it != unique_.end()) return it->second;
  if (node_count() >= budget_) throw NodeBudgetExceeded(budget_);
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({var, lo, hi});
  unique_.emplace(key, id);
  return id;
}

Func FuncStore::mk_var(VarId v) {
  if (v.index >= names_.size())
    throw InvalidArgument("unknown variable index " + std::to_string(v.index));
  return wrap(make(v.index, kFalse, kTrue));
}

std::uint32_t FuncStore::not_rec(std::uint32_t f) {
  if (f <= kTrue) return f ^ 1u;
  if (auto it = not_cache_.find(f); it != not_cache_.end()) return it->second;
  const Node n = nodes_[f];
  const auto lo = not_rec(n.lo);
  const auto hi = not_rec(n.hi);
  const auto r = make(n.var, lo, hi);
  not_cache_.emplace(f, r);
  return r;
}

std::uint32_t FuncStore::ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h) {
  if (f == kTrue) return g;
  if (f == kFalse) return h;
  if (g == h) return g;
  if (g == kTrue && h == kFalse) return f;
  if (g == kFalse && h == kTrue) return not_rec(f);
  // Normalise the arguments so AND/OR hit the same cache line either way round.
  if (g == f) g = kTrue;
  if (h == f) h = kFalse;
  if (h == kFalse && g > kTrue && g < f) std::swap(f, g);  // f & g
  if (g == kTrue && h > kTrue && h < f) std::swap(f, h);   // f | h

  const Key key{f, g, h};
  if (auto it = ite_cache_.find(key); it != ite_cache_.end()) return it->second;

  const auto top = std::min({level(f), level(g), level(h)});
  auto cofactor = [&](std::uint32_t x, bool high) {
    if (level(x) != top) return x;
    return high ? nodes_[x].hi : nodes_[x].lo;
  };
  const auto t = ite_rec(cofactor(f, true), cofactor(g, true), cofactor(h, true));
  const auto e = ite_rec(cofactor(f, false), cofactor(g, false), cofactor(h, false));
  const auto r = make(top, e, t);
  ite_cache_.emplace(key, r);
  return r;
}

Func FuncStore::apply(BoolOp op, Func f, std::optional<Func> g) {
  switch (op) {
    case BoolOp::Not:
      if (g) throw InvalidArgument("NOT takes a single operand");
      return lnot(f);
    case BoolOp::And:
      if (!g) throw InvalidArgument("AND takes two operands");
      return land(f, *g);
    case BoolOp::Or:
      if (!g) throw InvalidArgument("OR takes two operands");
      return lor(f, *g);
  }
  throw InvalidArgument("unknown operation");
}

Func FuncStore::land(Func f, Func g) { return wrap(ite_rec(own(f), own(g), kFalse)); }
Func FuncStore::lor(Func f, Func g) { return wrap(ite_rec(own(f), kTrue, own(g))); }
Func FuncStore::lnot(Func f) { return wrap(not_rec(own(f))); }
Func FuncStore::ite(Func c, Func t, Func e) { return wrap(ite_rec(own(c), own(t), own(e))); }

std::uint32_t FuncStore::compose_rec(std::uint32_t f, std::span<const std::uint32_t> subst,
                                     std::unordered_map<std::uint32_t, std::uint32_t>& memo) {
  if (f <= kTrue) return f;
  if (auto it = memo.find(f); it != memo.end()) return it->second;
  const Node n = nodes_[f];
  const auto replacement = subst[n.var];
  if (replacement == kMissing)
    throw InvalidArgument("no substitution for variable '" + names_[n.var] + "'");
  const auto hi = compose_rec(n.hi, subst, memo);
  const auto lo = compose_rec(n.lo, subst, memo);
  const auto r = ite_rec(replacement, hi, lo);
  memo.emplace(f, r);
  return r;
}

Func FuncStore::compose(Func f, const std::map<VarId, Func>& subst) {
  std::vector<Func> full(names_.size());
  for (const auto& [v, g] : subst) {
    if (v.index >= names_.size())
      throw InvalidArgument("unknown variable index " + std::to_string(v.index));
    full[v.index] = g;
  }
  return compose_all(std::span<const Func>(&f, 1), full).front();
}

std::vector<Func> FuncStore::compose_all(std::span<const Func> fs, std::span<const Func> subst) {
  if (subst.size() != names_.size())
    throw InvalidArgument("substitution vector must cover every store variable");
  std::vector<std::uint32_t> raw(subst.size(), kMissing);
  for (std::size_t v = 0; v < subst.size(); ++v)
    if (subst[v].valid()) raw[v] = own(subst[v]);

  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  std::vector<Func> out;
  out.reserve(fs.size());
  for (Func f : fs) out.push_back(wrap(compose_rec(own(f), raw, memo)));
  return out;
}

bool FuncStore::evaluate(Func f, const Assignment& a) const {
  if (a.size() != names_.size())
    throw InvalidArgument("assignment covers " + std::to_string(a.size()) + " of " +
                          std::to_string(names_.size()) + " variables");
  auto n = own(f);
  while (n > kTrue) {
    const Node& node = nodes_[n];
    n = a[VarId{node.var}] ? node.hi : node.lo;
  }
  return n == kTrue;
}

bool FuncStore::evaluate_index(Func f, std::uint64_t index) const {
  const auto width = names_.size();
  auto n = own(f);
  while (n > kTrue) {
    const Node& node = nodes_[n];
    n = ((index >> (width - 1 - node.var)) & 1u) ? node.hi : node.lo;
  }
  return n == kTrue;
}

BigCount FuncStore::sat_count(Func f) const {
  const auto root = own(f);
  std::unordered_map<std::uint32_t, BigCount> memo;
  // count(n) = models over the variables at or below level(n)
  std::function<BigCount(std::uint32_t)> count = [&](std::uint32_t n) -> BigCount {
    if (n == kFalse) return 0;
    if (n == kTrue) return 1;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    const Node& node = nodes_[n];
    BigCount lo = count(node.lo);
    BigCount hi = count(node.hi);
    lo <<= (level(node.lo) - node.var - 1);
    hi <<= (level(node.hi) - node.var - 1);
    BigCount r = lo + hi;
    memo.emplace(n, r);
    return r;
  };
  BigCount total = count(root);
  total <<= level(root);
  return total;
}

double FuncStore::sat_fraction(Func f) const {
  const auto root = own(f);
  std::unordered_map<std::uint32_t, double> memo;
  std::function<double(std::uint32_t)> frac = [&](std::uint32_t n) -> double {
    if (n <= kTrue) return n == kTrue ? 1.0 : 0.0;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    const double r = 0.5 * (frac(nodes_[n].lo) + frac(nodes_[n].hi));
    memo.emplace(n, r);
    return r;
  };
  return frac(root);
}

std::vector<VarId> FuncStore::support(Func f) const {
  std::vector<bool> seen_var(names_.size(), false);
  std::unordered_set<std::uint32_t> visited;
  std::vector<std::uint32_t> stack{own(f)};
  while (!stack.empty()) {
    const auto n = stack.back();
    stack.pop_back();
    if (n <= kTrue || !visited.insert(n).second) continue;
    seen_var[nodes_[n].var] = true;
    stack.push_back(nodes_[n].lo);
    stack.push_back(nodes_[n].hi);
  }
  std::vector<VarId> out;
  for (std::uint32_t v = 0; v < seen_var.size(); ++v)
    if (seen_var[v]) out.push_back(VarId{v});
  return out;
}

std::size_t FuncStore::dag_size(Func f) const { return dag_size(std::span<const Func>(&f, 1)); }

std::size_t FuncStore::dag_size(std::span<const Func> fs) const {
  std::unordered_set<std::uint32_t> visited;
  std::vector<std::uint32_t> stack;
  for (Func f : fs) stack.push_back(own(f));
  while (!stack.empty()) {
    const auto n = stack.back();
    stack.pop_back();
    if (n <= kTrue || !visited.insert(n).second) continue;
    stack.push_back(nodes_[n].lo);
    stack.push_back(nodes_[n].hi);
  }
  return visited.size();
}

// Minato-Morreale irredundant sum-of-products for the interval [lower, upper].
// Returns the node of the cover; cubes are appended to `out`.
std::uint32_t FuncStore::isop_rec(std::uint32_t lower, std::uint32_t upper,
                                  std::vector<Cube>& out, IsopMemo& memo) {
  if (lower == kFalse) return kFalse;
  if (upper == kTrue) {
    out.emplace_back();
    return kTrue;
  }
  const Key key{lower, upper, 0};
  if (auto it = memo.find(key); it != memo.end()) {
    out.insert(out.end(), it->second.second.begin(), it->second.second.end());
    return it->second.first;
  }
  const auto top = std::min(level(lower), level(upper));
  auto cof = [&](std::uint32_t x, bool high) {
    if (level(x) != top) return x;
    return high ? nodes_[x].hi : nodes_[x].lo;
  };
  const auto l0 = cof(lower, false), l1 = cof(lower, true);
  const auto u0 = cof(upper, false), u1 = cof(upper, true);

  std::vector<Cube> c0, c1, cd;
  const auto f0 = isop_rec(ite_rec(l0, not_rec(u1), kFalse), u0, c0, memo);
  const auto f1 = isop_rec(ite_rec(l1, not_rec(u0), kFalse), u1, c1, memo);
  const auto rest = ite_rec(ite_rec(l0, not_rec(f0), kFalse), kTrue,
                            ite_rec(l1, not_rec(f1), kFalse));
  const auto fd = isop_rec(rest, ite_rec(u0, u1, kFalse), cd, memo);

  std::vector<Cube> mine;
  mine.reserve(c0.size() + c1.size() + cd.size());
  for (auto& cube : c0) {
    cube.insert(cube.begin(), Literal{VarId{top}, false});
    mine.push_back(std::move(cube));
  }
  for (auto& cube : c1) {
    cube.insert(cube.begin(), Literal{VarId{top}, true});
    mine.push_back(std::move(cube));
  }
  for (auto& cube : cd) mine.push_back(std::move(cube));

  const auto r = make(top, ite_rec(f0, kTrue, fd), ite_rec(f1, kTrue, fd));
  out.insert(out.end(), mine.begin(), mine.end());
  memo.emplace(key, std::make_pair(r, std::move(mine)));
  return r;
}

std::vector<Cube> FuncStore::cover(Func f) {
  const auto n = own(f);
  std::vector<Cube> cubes;
  IsopMemo memo;
  isop_rec(n, n, cubes, memo);
  std::sort(cubes.begin(), cubes.end());
  return cubes;
}

std::string FuncStore::to_expression_text(Func f) {
  if (is_true(f)) return "1";
  if (is_false(f)) return "0";
  const auto cubes = cover(f);
  std::string text;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    if (i > 0) text += " | ";
    const bool wrap_cube = cubes.size() > 1 && cubes[i].size() > 1;
    if (wrap_cube) text += '(';
    for (std::size_t j = 0; j < cubes[i].size(); ++j) {
      if (j > 0) text += " & ";
      if (!cubes[i][j].positive) text += '!';
      text += names_[cubes[i][j].var.index];
    }
    if (wrap_cube) text += ')';
  }
  return text;
}

void FuncStore::clear_caches() {
  ite_cache_.clear();
  not_cache_.clear();
}

std::optional<FuncStore::Branch> FuncStore::branch(Func f) const {
  const auto n = own(f);
  if (n <= kTrue) return std::nullopt;
  return Branch{VarId{nodes_[n].var}, wrap(nodes_[n].lo), wrap(nodes_[n].hi)};
}

Func transfer(const FuncStore& from, Func f, FuncStore& to) {
  std::vector<std::optional<Func>> vars(from.var_count());
  std::unordered_map<Func, Func, FuncHash> memo;
  std::function<Func(Func)> rec = [&](Func g) -> Func {
    if (from.is_constant(g)) return to.constant(from.is_true(g));
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    const auto b = *from.branch(g);
    auto& v = vars[b.var.index];
    if (!v) v = to.mk_var(to.var(from.var_name(b.var)));
    const Func r = to.ite(*v, rec(b.high), rec(b.low));
    memo.emplace(g, r);
    return r;
  };
  return rec(f);
}

}  // namespace recomp
