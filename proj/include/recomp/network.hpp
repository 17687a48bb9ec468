#pragma once

// Boolean network models: the native text format, BoolNet tables,
// threshold (sgn) rules, validation and node pinning.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recomp/errors.hpp"
#include "recomp/func_store.hpp"

namespace recomp {

/// Syntax tree of an update expression, kept for diagnostics and for
/// checking the compiled diagrams against direct evaluation.
struct Expr {
  enum class Kind { Const, Var, Not, And, Or };

  Kind kind = Kind::Const;
  bool value = false;       // Const
  std::string name;         // Var
  SourcePos pos;            // Var
  std::vector<Expr> args;   // Not: one, And/Or: two or more

  static Expr constant(bool v);
  static Expr variable(std::string name, SourcePos pos = {});
  static Expr negation(Expr e);
  static Expr conjunction(std::vector<Expr> args);
  static Expr disjunction(std::vector<Expr> args);
};

/// Evaluates `e` with `lookup(name)` giving each variable's value.
template <typename Lookup>
bool eval_expr(const Expr& e, const Lookup& lookup) {
  switch (e.kind) {
    case Expr::Kind::Const: return e.value;
    case Expr::Kind::Var: return lookup(e.name);
    case Expr::Kind::Not: return !eval_expr(e.args.front(), lookup);
    case Expr::Kind::And:
      for (const auto& a : e.args)
        if (!eval_expr(a, lookup)) return false;
      return true;
    case Expr::Kind::Or:
      for (const auto& a : e.args)
        if (eval_expr(a, lookup)) return true;
      return false;
  }
  return false;
}

std::string to_string(const Expr& e);

/// Linear threshold rule: active iff sum(activators) - sum(inhibitors) + offset > 0.
/// A name listed twice carries weight two.
struct ThresholdRule {
  std::vector<std::string> activators;
  std::vector<std::string> inhibitors;
  int offset = 0;
};

inline constexpr std::size_t kMaxThresholdLiterals = 20;

struct RuleDecl {
  std::string name;
  SourcePos pos;
  std::optional<Expr> expr;            // Boolean rule
  std::optional<ThresholdRule> threshold;
};

/// A model as read from text, before names are resolved.
struct ModelSource {
  std::vector<RuleDecl> rules;
  std::vector<std::pair<std::string, SourcePos>> inputs;
};

struct Diagnostic {
  SourcePos pos;
  std::string message;
};

/// Syntax only. Throws ParseError.
ModelSource read_native(std::string_view text);
ModelSource read_boolnet(std::string_view text);
/// Native syntax where a right-hand side may also be `sgn(a + b - c + 1)`.
ModelSource read_threshold(std::string_view text);

/// Empty iff the model is well formed: unique names, declared variables,
/// declared inputs, at least one node.
std::vector<Diagnostic> validate(const ModelSource& source);

/// Immutable network: ordered nodes, one update rule each, in one store
/// whose variable order is the node order.
class NetworkModel {
 public:
  NetworkModel(std::shared_ptr<FuncStore> store, std::vector<Func> rules,
               std::vector<std::size_t> inputs = {});

  std::size_t size() const noexcept { return rules_.size(); }
  const std::string& name(std::size_t i) const { return store_->var_name(VarId{static_cast<std::uint32_t>(i)}); }
  std::vector<std::string> names() const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  Func rule(std::size_t i) const { return rules_.at(i); }
  std::span<const Func> rules() const noexcept { return rules_; }

  std::span<const std::size_t> inputs() const noexcept { return inputs_; }
  bool is_input(std::size_t i) const;

  FuncStore& store() const noexcept { return *store_; }
  const std::shared_ptr<FuncStore>& shared_store() const noexcept { return store_; }

 private:
  std::shared_ptr<FuncStore> store_;
  std::vector<Func> rules_;
  std::vector<std::size_t> inputs_;
};

/// Resolves names and builds diagrams in a fresh store. Throws ParseError
/// carrying the first diagnostic.
NetworkModel compile(const ModelSource& source,
                     std::size_t node_budget = FuncStore::kDefaultNodeBudget);

NetworkModel parse_network(std::string_view text,
                           std::size_t node_budget = FuncStore::kDefaultNodeBudget);
NetworkModel import_boolnet(std::string_view text,
                            std::size_t node_budget = FuncStore::kDefaultNodeBudget);
NetworkModel import_threshold(std::string_view text,
                              std::size_t node_budget = FuncStore::kDefaultNodeBudget);

/// Parses a single expression over the store's variables.
Func parse_expression(std::string_view text, FuncStore& store);
Expr parse_expression_tree(std::string_view text);

/// Truth table equals sgn(sum activators - sum inhibitors + offset) with sgn(0) = 0.
Func threshold_to_boolean(FuncStore& store, const ThresholdRule& rule);

/// Replaces the pinned nodes' rules by constants; other rules keep their handles.
NetworkModel pin_nodes(const NetworkModel& model, const std::map<std::string, bool>& pins);

/// Treats the named nodes as fixed parameters: every rule is rewritten with
/// the constants substituted, and the nodes' own rules become those constants.
NetworkModel fix_inputs(const NetworkModel& model, const std::map<std::string, bool>& values);

/// Invariant check on a compiled model (handles from the model's store,
/// inputs in range, one rule per variable).
std::vector<Diagnostic> validate(const NetworkModel& model);

/// Native-format text whose parse yields identical handles.
std::string to_text(const NetworkModel& model);

}  // namespace recomp
