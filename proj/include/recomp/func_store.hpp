#pragma once

// Canonical Boolean functions: a reduced ordered binary decision diagram
// store with hash-consing, an if-then-else cache and vector composition.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "recomp/errors.hpp"

namespace recomp {

using BigCount = boost::multiprecision::cpp_int;

struct VarId {
  std::uint32_t index = 0;

  auto operator<=>(const VarId&) const = default;
};

/// Handle to a function owned by a FuncStore. Two handles from the same
/// store compare equal iff the functions are pointwise equal.
class Func {
 public:
  Func() = default;

  bool valid() const noexcept { return store_ != 0; }
  std::uint32_t node() const noexcept { return node_; }
  std::uint32_t store_tag() const noexcept { return store_; }

  bool operator==(const Func&) const = default;

 private:
  friend class FuncStore;
  Func(std::uint32_t store, std::uint32_t node) : store_(store), node_(node) {}

  std::uint32_t store_ = 0;
  std::uint32_t node_ = 0;
};

struct FuncHash {
  std::size_t operator()(const Func& f) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{f.store_tag()} << 32) | f.node());
  }
};

/// One bit per store variable.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t n) : bits_(n, 0) {}
  Assignment(std::initializer_list<int> bits);

  /// Bit j of the state index (first variable = most significant) gives variable j.
  static Assignment from_index(std::uint64_t index, std::size_t n);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](VarId v) const { return bits_.at(v.index) != 0; }
  void set(VarId v, bool value) { bits_.at(v.index) = value ? 1 : 0; }
  std::uint64_t to_index() const;

 private:
  std::vector<std::uint8_t> bits_;
};

enum class BoolOp { And, Or, Not };

/// A literal inside a product term.
struct Literal {
  VarId var;
  bool positive = true;

  auto operator<=>(const Literal& other) const {
    if (auto c = var <=> other.var; c != 0) return c;
    return other.positive <=> positive;  // x before !x
  }
  bool operator==(const Literal&) const = default;
};

using Cube = std::vector<Literal>;

class FuncStore {
 public:
  static constexpr std::size_t kDefaultNodeBudget = 10'000'000;

  explicit FuncStore(std::vector<std::string> var_names,
                     std::size_t node_budget = kDefaultNodeBudget);

  FuncStore(const FuncStore&) = delete;
  FuncStore& operator=(const FuncStore&) = delete;

  std::size_t var_count() const noexcept { return names_.size(); }
  const std::string& var_name(VarId v) const;
  std::optional<VarId> find_var(std::string_view name) const;
  VarId var(std::string_view name) const;

  Func constant(bool value) const noexcept { return {tag_, value ? kTrue : kFalse}; }
  Func bottom() const noexcept { return constant(false); }
  Func top() const noexcept { return constant(true); }
  bool is_true(Func f) const { return own(f) == kTrue; }
  bool is_false(Func f) const { return own(f) == kFalse; }
  bool is_constant(Func f) const { return own(f) <= kTrue; }

  Func mk_var(VarId v);

  Func apply(BoolOp op, Func f, std::optional<Func> g = std::nullopt);
  Func land(Func f, Func g);
  Func lor(Func f, Func g);
  Func lnot(Func f);
  Func ite(Func cond, Func then_f, Func else_f);

  /// Simultaneous substitution f[x_v := subst(v)]. Every variable in
  /// support(f) must have an entry.
  Func compose(Func f, const std::map<VarId, Func>& subst);

  /// Composes every function in `fs` with the same full substitution vector
  /// (entry v replaces variable v). Entries may be invalid handles for
  /// variables that must not occur. Intermediate results are shared between
  /// the functions.
  std::vector<Func> compose_all(std::span<const Func> fs, std::span<const Func> subst);

  bool evaluate(Func f, const Assignment& a) const;
  /// Evaluates on the state whose binary expansion (first variable = MSB) is `index`.
  bool evaluate_index(Func f, std::uint64_t index) const;

  /// Satisfying assignments over all var_count() variables.
  BigCount sat_count(Func f) const;
  /// sat_count(f) / 2^n.
  double sat_fraction(Func f) const;

  std::vector<VarId> support(Func f) const;

  /// Internal nodes reachable from the given roots (terminals excluded).
  std::size_t dag_size(Func f) const;
  std::size_t dag_size(std::span<const Func> fs) const;

  /// Irredundant sum-of-products, cubes sorted lexicographically.
  std::vector<Cube> cover(Func f);
  std::string to_expression_text(Func f);

  std::size_t node_count() const noexcept { return nodes_.size() - 2; }
  std::size_t node_budget() const noexcept { return budget_; }
  void set_node_budget(std::size_t budget) noexcept { budget_ = budget; }
  void clear_caches();
  std::size_t cache_entries() const noexcept { return ite_cache_.size(); }

  std::uint32_t tag() const noexcept { return tag_; }

  /// Visits the decision node of f: (variable, low child, high child).
  /// Returns nullopt for constants.
  struct Branch {
    VarId var;
    Func low;
    Func high;
  };
  std::optional<Branch> branch(Func f) const;

 private:
  static constexpr std::uint32_t kFalse = 0;
  static constexpr std::uint32_t kTrue = 1;

  struct Node {
    std::uint32_t var;
    std::uint32_t lo;
    std::uint32_t hi;
  };

  struct Key {
    std::uint32_t a, b, c;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::uint32_t own(Func f) const;
  Func wrap(std::uint32_t node) const noexcept { return {tag_, node}; }
  std::uint32_t level(std::uint32_t n) const noexcept { return nodes_[n].var; }

  std::uint32_t make(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);
  std::uint32_t ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h);
  std::uint32_t not_rec(std::uint32_t f);
  std::uint32_t compose_rec(std::uint32_t f, std::span<const std::uint32_t> subst,
                            std::unordered_map<std::uint32_t, std::uint32_t>& memo);
  using IsopMemo = std::unordered_map<Key, std::pair<std::uint32_t, std::vector<Cube>>, KeyHash>;
  std::uint32_t isop_rec(std::uint32_t lower, std::uint32_t upper, std::vector<Cube>& out,
                         IsopMemo& memo);

  std::uint32_t tag_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> name_index_;
  std::size_t budget_;

  std::vector<Node> nodes_;
  std::unordered_map<Key, std::uint32_t, KeyHash> unique_;
  std::unordered_map<Key, std::uint32_t, KeyHash> ite_cache_;
  std::unordered_map<std::uint32_t, std::uint32_t> not_cache_;
};

/// Rebuilds `f` from `from` inside `to`, matching variables by name.
Func transfer(const FuncStore& from, Func f, FuncStore& to);

}  // namespace recomp
