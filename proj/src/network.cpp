#include "recomp/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace recomp {

Expr Expr::constant(bool v) {
  Expr e;
  e.kind = Kind::Const;
  e.value = v;
  return e;
}

Expr Expr::variable(std::string name, SourcePos pos) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  e.pos = pos;
  return e;
}

Expr Expr::negation(Expr inner) {
  Expr e;
  e.kind = Kind::Not;
  e.args.push_back(std::move(inner));
  return e;
}

Expr Expr::conjunction(std::vector<Expr> args) {
  if (args.size() == 1) return std::move(args.front());
  Expr e;
  e.kind = Kind::And;
  e.args = std::move(args);
  return e;
}

Expr Expr::disjunction(std::vector<Expr> args) {
  if (args.size() == 1) return std::move(args.front());
  Expr e;
  e.kind = Kind::Or;
  e.args = std::move(args);
  return e;
}

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const: return e.value ? "1" : "0";
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::Not: return "!" + to_string(e.args.front());
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      std::string out = "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i > 0) out += e.kind == Expr::Kind::And ? " & " : " | ";
        out += to_string(e.args[i]);
      }
      return out + ")";
    }
  }
  return {};
}

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '/' || c == '+' ||
         c == '*' || c == '$' || c == '-';
}

enum class Tok { Name, Number, And, Or, Not, LParen, RParen, Assign, Comma, Plus, Minus, Star, Directive, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

// Tokens of one line; comments already stripped.
class Lexer {
 public:
  Lexer(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line_.size()) {
      const char c = line_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      const SourcePos pos{line_no_, i + 1};
      if (is_name_start(c)) {
        std::size_t j = i + 1;
        while (j < line_.size() && is_name_char(line_[j])) ++j;
        out.push_back({Tok::Name, std::string(line_.substr(i, j - i)), pos});
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i + 1;
        while (j < line_.size() && std::isdigit(static_cast<unsigned char>(line_[j]))) ++j;
        out.push_back({Tok::Number, std::string(line_.substr(i, j - i)), pos});
        i = j;
        continue;
      }
      if (c == '@') {
        std::size_t j = i + 1;
        while (j < line_.size() && std::isalpha(static_cast<unsigned char>(line_[j]))) ++j;
        out.push_back({Tok::Directive, std::string(line_.substr(i, j - i)), pos});
        i = j;
        continue;
      }
      Tok kind;
      switch (c) {
        case '&': kind = Tok::And; break;
        case '|': kind = Tok::Or; break;
        case '!': kind = Tok::Not; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '=': kind = Tok::Assign; break;
        case ',': kind = Tok::Comma; break;
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        default:
          throw ParseError(pos, std::string("unexpected character '") + c + "'");
      }
      out.push_back({kind, std::string(1, c), pos});
      ++i;
    }
    out.push_back({Tok::End, "", SourcePos{line_no_, line_.size() + 1}});
    return out;
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Name: return "name";
    case Tok::Number: return "number";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Not: return "'!'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Assign: return "'='";
    case Tok::Comma: return "','";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Directive: return "directive";
    case Tok::End: return "end of line";
  }
  return "token";
}

// Recursive descent over one line's tokens.
//   or   := and ('|' and)*
//   and  := unary ('&' unary)*
//   unary:= '!' unary | '(' or ')' | '0' | '1' | name
class ExprParser {
 public:
  explicit ExprParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  bool at(Tok t) const { return peek().kind == t; }

  const Token& expect(Tok t) {
    if (!at(t))
      throw ParseError(peek().pos, std::string("expected ") + describe(t) + ", found " +
                                       describe(peek().kind));
    return next();
  }

  Expr parse_or() {
    std::vector<Expr> terms;
    terms.push_back(parse_and());
    while (at(Tok::Or)) {
      next();
      terms.push_back(parse_and());
    }
    return Expr::disjunction(std::move(terms));
  }

  Expr parse_and() {
    std::vector<Expr> factors;
    factors.push_back(parse_unary());
    while (at(Tok::And)) {
      next();
      factors.push_back(parse_unary());
    }
    return Expr::conjunction(std::move(factors));
  }

  Expr parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        next();
        return Expr::negation(parse_unary());
      case Tok::LParen: {
        next();
        Expr inner = parse_or();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Number:
        if (t.text == "0" || t.text == "1") {
          next();
          return Expr::constant(t.text == "1");
        }
        throw ParseError(t.pos, "constants must be 0 or 1");
      case Tok::Name: {
        next();
        return Expr::variable(t.text, t.pos);
      }
      default:
        throw ParseError(t.pos, std::string("expected expression, found ") + describe(t.kind));
    }
  }

  // sgn( [+|-] term ( (+|-) term )* ) with term := [k '*'] name | integer
  ThresholdRule parse_sgn() {
    expect(Tok::LParen);
    ThresholdRule rule;
    bool first = true;
    while (!at(Tok::RParen)) {
      int sign = 1;
      if (at(Tok::Plus) || at(Tok::Minus)) {
        sign = next().kind == Tok::Minus ? -1 : 1;
      } else if (!first) {
        throw ParseError(peek().pos, std::string("expected '+' or '-', found ") +
                                         describe(peek().kind));
      }
      first = false;
      if (at(Tok::Number)) {
        const Token& num = next();
        int value = 0;
        std::from_chars(num.text.data(), num.text.data() + num.text.size(), value);
        if (at(Tok::Star)) {
          next();
          const Token& name = expect(Tok::Name);
          auto& list = sign > 0 ? rule.activators : rule.inhibitors;
          for (int k = 0; k < value; ++k) list.push_back(name.text);
        } else {
          rule.offset += sign * value;
        }
      } else {
        const Token& name = expect(Tok::Name);
        (sign > 0 ? rule.activators : rule.inhibitors).push_back(name.text);
      }
    }
    expect(Tok::RParen);
    return rule;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const bool blank = std::all_of(line.begin(), line.end(),
                                   [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) out.push_back({line, line_no});
    start = end + 1;
  }
  return out;
}

void read_inputs_directive(ExprParser& p, ModelSource& src) {
  const Token& dir = p.next();
  if (dir.text != "@inputs") throw ParseError(dir.pos, "unknown directive '" + dir.text + "'");
  if (p.at(Tok::End)) return;
  for (;;) {
    const Token& name = p.expect(Tok::Name);
    src.inputs.emplace_back(name.text, name.pos);
    if (p.at(Tok::End)) break;
    p.expect(Tok::Comma);
  }
}

ModelSource read_rules(std::string_view text, bool allow_threshold) {
  ModelSource src;
  for (const auto& line : content_lines(text)) {
    ExprParser p(Lexer(line.text, line.number).run());
    if (p.at(Tok::Directive)) {
      read_inputs_directive(p, src);
      continue;
    }
    const Token& target = p.expect(Tok::Name);
    p.expect(Tok::Assign);
    RuleDecl rule{target.text, target.pos, std::nullopt, std::nullopt};
    if (allow_threshold && p.at(Tok::Name) && p.peek().text == "sgn") {
      p.next();
      rule.threshold = p.parse_sgn();
    } else {
      rule.expr = p.parse_or();
    }
    p.expect(Tok::End);
    src.rules.push_back(std::move(rule));
  }
  return src;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Func build(FuncStore& store, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const: return store.constant(e.value);
    case Expr::Kind::Var: return store.mk_var(store.var(e.name));
    case Expr::Kind::Not: return store.lnot(build(store, e.args.front()));
    case Expr::Kind::And: {
      Func acc = store.top();
      for (const auto& a : e.args) acc = store.land(acc, build(store, a));
      return acc;
    }
    case Expr::Kind::Or: {
      Func acc = store.bottom();
      for (const auto& a : e.args) acc = store.lor(acc, build(store, a));
      return acc;
    }
  }
  return store.bottom();
}

void collect_vars(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == Expr::Kind::Var) out.push_back(&e);
  for (const auto& a : e.args) collect_vars(a, out);
}

std::optional<std::string> threshold_problem(const ThresholdRule& rule) {
  const std::set<std::string> act(rule.activators.begin(), rule.activators.end());
  const std::set<std::string> inh(rule.inhibitors.begin(), rule.inhibitors.end());
  for (const auto& a : act)
    if (inh.count(a)) return "'" + a + "' is both activator and inhibitor";
  if (act.size() + inh.size() > kMaxThresholdLiterals)
    return "threshold rule references " + std::to_string(act.size() + inh.size()) +
           " nodes, limit is " + std::to_string(kMaxThresholdLiterals);
  return std::nullopt;
}

}  // namespace

ModelSource read_native(std::string_view text) { return read_rules(text, false); }

ModelSource read_threshold(std::string_view text) { return read_rules(text, true); }

ModelSource read_boolnet(std::string_view text) {
  ModelSource src;
  bool header_seen = false;
  for (const auto& line : content_lines(text)) {
    const auto comma = line.text.find(',');
    if (!header_seen) {
      std::string a = trim(line.text.substr(0, comma));
      std::string b = comma == std::string_view::npos ? "" : trim(line.text.substr(comma + 1));
      std::transform(a.begin(), a.end(), a.begin(), [](unsigned char c) { return std::tolower(c); });
      std::transform(b.begin(), b.end(), b.begin(), [](unsigned char c) { return std::tolower(c); });
      if (a != "targets" || b != "factors")
        throw ParseError({line.number, 1}, "expected header 'targets, factors'");
      header_seen = true;
      continue;
    }
    if (comma == std::string_view::npos)
      throw ParseError({line.number, line.text.size() + 1}, "expected ',' after target");
    // Lex the target and the factor separately so columns stay exact.
    auto target_toks = Lexer(line.text.substr(0, comma), line.number).run();
    ExprParser target(std::move(target_toks));
    const Token name = target.expect(Tok::Name);
    target.expect(Tok::End);

    std::string padded(comma + 1, ' ');
    padded.append(line.text.substr(comma + 1));
    ExprParser factor(Lexer(padded, line.number).run());
    if (factor.at(Tok::End)) throw ParseError(factor.peek().pos, "empty factor for '" + name.text + "'");
    RuleDecl rule{name.text, name.pos, factor.parse_or(), std::nullopt};
    factor.expect(Tok::End);
    src.rules.push_back(std::move(rule));
  }
  if (!header_seen) throw ParseError({1, 1}, "expected header 'targets, factors'");
  return src;
}

std::vector<Diagnostic> validate(const ModelSource& source) {
  std::vector<Diagnostic> diags;
  if (source.rules.empty()) {
    diags.push_back({{}, "empty model"});
    return diags;
  }
  std::unordered_set<std::string> declared;
  for (const auto& r : source.rules) {
    if (!declared.insert(r.name).second) diags.push_back({r.pos, "duplicate node '" + r.name + "'"});
  }
  for (const auto& r : source.rules) {
    if (r.expr) {
      std::vector<const Expr*> vars;
      collect_vars(*r.expr, vars);
      for (const Expr* v : vars)
        if (!declared.count(v->name))
          diags.push_back({v->pos, "undeclared variable '" + v->name + "' in rule for '" + r.name + "'"});
    }
    if (r.threshold) {
      for (const auto* list : {&r.threshold->activators, &r.threshold->inhibitors})
        for (const auto& name : *list)
          if (!declared.count(name))
            diags.push_back({r.pos, "undeclared variable '" + name + "' in rule for '" + r.name + "'"});
      if (auto problem = threshold_problem(*r.threshold)) diags.push_back({r.pos, *problem});
    }
  }
  for (const auto& [name, pos] : source.inputs)
    if (!declared.count(name)) diags.push_back({pos, "input '" + name + "' is not a declared node"});
  return diags;
}

NetworkModel::NetworkModel(std::shared_ptr<FuncStore> store, std::vector<Func> rules,
                           std::vector<std::size_t> inputs)
    : store_(std::move(store)), rules_(std::move(rules)), inputs_(std::move(inputs)) {
  if (!store_) throw InvalidArgument("network needs a store");
  if (rules_.size() != store_->var_count())
    throw InvalidArgument("one rule per store variable required");
  std::sort(inputs_.begin(), inputs_.end());
  inputs_.erase(std::unique(inputs_.begin(), inputs_.end()), inputs_.end());
  for (auto i : inputs_)
    if (i >= rules_.size()) throw InvalidArgument("input index out of range");
}

std::vector<std::string> NetworkModel::names() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(name(i));
  return out;
}

std::optional<std::size_t> NetworkModel::index_of(std::string_view name) const {
  if (auto v = store_->find_var(name)) return v->index;
  return std::nullopt;
}

bool NetworkModel::is_input(std::size_t i) const {
  return std::binary_search(inputs_.begin(), inputs_.end(), i);
}

NetworkModel compile(const ModelSource& source, std::size_t node_budget) {
  if (auto diags = validate(source); !diags.empty()) throw ParseError(diags.front().pos, diags.front().message);
  std::vector<std::string> names;
  names.reserve(source.rules.size());
  for (const auto& r : source.rules) names.push_back(r.name);
  auto store = std::make_shared<FuncStore>(names, node_budget);

  std::vector<Func> rules;
  rules.reserve(source.rules.size());
  for (const auto& r : source.rules)
    rules.push_back(r.expr ? build(*store, *r.expr) : threshold_to_boolean(*store, *r.threshold));

  std::vector<std::size_t> inputs;
  for (const auto& in : source.inputs) inputs.push_back(store->var(in.first).index);
  return NetworkModel(std::move(store), std::move(rules), std::move(inputs));
}

NetworkModel parse_network(std::string_view text, std::size_t node_budget) {
  return compile(read_native(text), node_budget);
}

NetworkModel import_boolnet(std::string_view text, std::size_t node_budget) {
  return compile(read_boolnet(text), node_budget);
}

NetworkModel import_threshold(std::string_view text, std::size_t node_budget) {
  return compile(read_threshold(text), node_budget);
}

Expr parse_expression_tree(std::string_view text) {
  if (text.find('\n') != std::string_view::npos)
    throw ParseError({1, text.find('\n') + 1}, "expression must fit on one line");
  ExprParser p(Lexer(text, 1).run());
  Expr e = p.parse_or();
  p.expect(Tok::End);
  return e;
}

Func parse_expression(std::string_view text, FuncStore& store) {
  Expr e = parse_expression_tree(text);
  std::vector<const Expr*> vars;
  collect_vars(e, vars);
  for (const Expr* v : vars)
    if (!store.find_var(v->name)) throw ParseError(v->pos, "undeclared variable '" + v->name + "'");
  return build(store, e);
}

Func threshold_to_boolean(FuncStore& store, const ThresholdRule& rule) {
  if (auto problem = threshold_problem(rule)) throw InvalidArgument(*problem);
  // Net weight per variable, processed bottom-up in variable order.
  std::map<VarId, int> weight;
  for (const auto& a : rule.activators) weight[store.var(a)] += 1;
  for (const auto& i : rule.inhibitors) weight[store.var(i)] -= 1;
  std::vector<std::pair<VarId, int>> terms(weight.begin(), weight.end());

  // f(k, s): terms k.. still undecided, s = partial sum so far.
  std::map<std::pair<std::size_t, int>, Func> memo;
  std::function<Func(std::size_t, int)> rec = [&](std::size_t k, int partial) -> Func {
    if (k == terms.size()) return store.constant(partial + rule.offset > 0);
    const auto key = std::make_pair(k, partial);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const Func on = rec(k + 1, partial + terms[k].second);
    const Func off = rec(k + 1, partial);
    const Func r = store.ite(store.mk_var(terms[k].first), on, off);
    memo.emplace(key, r);
    return r;
  };
  return rec(0, 0);
}

NetworkModel pin_nodes(const NetworkModel& model, const std::map<std::string, bool>& pins) {
  std::vector<Func> rules(model.rules().begin(), model.rules().end());
  for (const auto& [name, value] : pins) {
    auto index = model.index_of(name);
    if (!index) throw InvalidArgument("cannot pin unknown node '" + name + "'");
    rules[*index] = model.store().constant(value);
  }
  return NetworkModel(model.shared_store(), std::move(rules),
                      std::vector<std::size_t>(model.inputs().begin(), model.inputs().end()));
}

NetworkModel fix_inputs(const NetworkModel& model, const std::map<std::string, bool>& values) {
  auto& store = model.store();
  std::vector<Func> subst;
  subst.reserve(model.size());
  for (std::uint32_t i = 0; i < model.size(); ++i) subst.push_back(store.mk_var(VarId{i}));
  for (const auto& [name, value] : values) {
    auto index = model.index_of(name);
    if (!index) throw InvalidArgument("cannot fix unknown node '" + name + "'");
    subst[*index] = store.constant(value);
  }
  auto rules = store.compose_all(model.rules(), subst);
  for (const auto& [name, value] : values) rules[*model.index_of(name)] = store.constant(value);
  return NetworkModel(model.shared_store(), std::move(rules),
                      std::vector<std::size_t>(model.inputs().begin(), model.inputs().end()));
}

std::vector<Diagnostic> validate(const NetworkModel& model) {
  std::vector<Diagnostic> diags;
  const auto& store = model.store();
  if (model.size() == 0) diags.push_back({{}, "empty model"});
  if (model.size() != store.var_count())
    diags.push_back({{}, "rule count differs from store variable count"});
  for (std::size_t i = 0; i < model.size(); ++i)
    if (model.rule(i).store_tag() != store.tag())
      diags.push_back({{}, "rule for '" + model.name(i) + "' belongs to another store"});
  for (auto i : model.inputs())
    if (i >= model.size()) diags.push_back({{}, "input index out of range"});
  return diags;
}

std::string to_text(const NetworkModel& model) {
  std::string out;
  if (!model.inputs().empty()) {
    out += "@inputs ";
    for (std::size_t k = 0; k < model.inputs().size(); ++k) {
      if (k > 0) out += ", ";
      out += model.name(model.inputs()[k]);
    }
    out += '\n';
  }
  for (std::size_t i = 0; i < model.size(); ++i)
    out += model.name(i) + " = " + model.store().to_expression_text(model.rule(i)) + '\n';
  return out;
}

}  // namespace recomp
