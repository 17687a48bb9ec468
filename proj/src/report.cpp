#include "recomp/report.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace recomp {

using json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::string> bit_strings(std::span<const StateIndex> states, unsigned n) {
  std::vector<std::string> out;
  out.reserve(states.size());
  for (auto s : states) out.push_back(state_bits(s, n));
  return out;
}

AttractorReport summarize(const AttractorSet& a, unsigned n) {
  AttractorReport r;
  r.steady = bit_strings(a.steady, n);
  for (const auto& c : a.cycles) {
    r.cycles.push_back(bit_strings(c, n));
    ++r.by_length[c.size()];
  }
  if (!a.steady.empty()) r.by_length[1] = a.steady.size();
  r.kernel = bit_strings(kernel_states(a), n);
  return r;
}

void fill_model_fields(AnalysisReport& report, const NetworkModel& model,
                       const AnalysisConfig& config) {
  report.node_names = model.names();
  for (auto i : model.inputs()) report.input_names.push_back(model.name(i));
  report.pins = config.pins;
  report.inputs = config.inputs;
}

void record_partial(AnalysisReport& report, const std::string& status, const std::string& message,
                    const PartialTrace& partial) {
  report.status = status;
  report.message = message;
  report.partial = partial;
  report.largest_node_counts = partial.largest_node_counts;
  report.store_nodes = partial.store_nodes;
}

json bool_map(const std::map<std::string, bool>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v ? 1 : 0;
  return j;
}

std::map<std::string, bool> bool_map_from(const json& j) {
  std::map<std::string, bool> m;
  for (const auto& [k, v] : j.items()) m[k] = v.get<int>() != 0;
  return m;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string to_string(InputFormat f) {
  switch (f) {
    case InputFormat::Native: return "native";
    case InputFormat::BoolNet: return "boolnet";
    case InputFormat::Threshold: return "threshold";
  }
  return "native";
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Text: return "text";
    case OutputFormat::Dot: return "dot";
  }
  return "json";
}

std::optional<InputFormat> parse_input_format(std::string_view text) {
  if (text == "native") return InputFormat::Native;
  if (text == "boolnet") return InputFormat::BoolNet;
  if (text == "threshold") return InputFormat::Threshold;
  return std::nullopt;
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "text") return OutputFormat::Text;
  if (text == "dot") return OutputFormat::Dot;
  return std::nullopt;
}

void AnalysisConfig::check() const {
  if (stride < 1) throw InvalidArgument("stride must be at least 1");
  if (max_steps < 1) throw InvalidArgument("max-steps must be at least 1");
  if (node_budget < 1) throw InvalidArgument("node budget must be positive");
  if (oracle_limit < 1) throw InvalidArgument("oracle limit must be positive");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NetworkModel load_model_text(std::string_view text, const AnalysisConfig& config) {
  auto model = [&] {
    switch (config.format) {
      case InputFormat::BoolNet: return import_boolnet(text, config.node_budget);
      case InputFormat::Threshold: return import_threshold(text, config.node_budget);
      case InputFormat::Native: break;
    }
    return parse_network(text, config.node_budget);
  }();
  if (!config.inputs.empty()) model = fix_inputs(model, config.inputs);
  if (!config.pins.empty()) model = pin_nodes(model, config.pins);
  return model;
}

NetworkModel load_model(const AnalysisConfig& config) {
  return load_model_text(read_file(config.input_path), config);
}

AnalysisReport run_analyze(const AnalysisConfig& config, const ProgressSink& progress) {
  config.check();
  const auto start = Clock::now();
  auto model = load_model(config);
  const double load = seconds_since(start);
  auto report = run_analyze(model, config, progress);
  report.timing.load_seconds = load;
  return report;
}

AnalysisReport run_analyze(const NetworkModel& model, const AnalysisConfig& config,
                           const ProgressSink& progress) {
  config.check();
  AnalysisReport report;
  fill_model_fields(report, model, config);
  auto& store = model.store();
  store.set_node_budget(config.node_budget);

  const auto compose_start = Clock::now();
  SelfComposer composer(model, progress);
  CompositionTrace trace;
  try {
    trace = config.leap ? composer.leap_and_fill({config.stride, config.max_steps})
                        : composer.find_logic_cycle(config.max_steps);
  } catch (const NodeBudgetExceeded& e) {
    record_partial(report, "node_budget_exceeded", e.what(), e.partial());
    report.timing.compose_seconds = seconds_since(compose_start);
    return report;
  } catch (const StepLimitExceeded& e) {
    record_partial(report, "step_limit_exceeded", e.what(), e.partial());
    report.timing.compose_seconds = seconds_since(compose_start);
    return report;
  }

  report.p_star = trace.p_star;
  report.ell_star = trace.ell_star;
  report.sampled_convergence_step = trace.sampled_convergence_step;
  report.fill_steps = trace.fill_steps;

  const auto verdicts = classify_nodes(trace, model);
  std::vector<std::vector<NodeBias>> phase_bias;
  for (const auto& member : trace.cycle) phase_bias.push_back(node_bias(model, member));
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    NodeReport node{v.name, to_string(v.kind), v.period, v.phase_formulas, {}, {}, v.is_input};
    for (std::size_t k = 0; k < v.period; ++k) node.bias.push_back(phase_bias[k][i].fraction);
    report.nodes.push_back(std::move(node));
    if (v.kind != VerdictKind::Const0 && v.kind != VerdictKind::Const1) ++report.free_nodes;
  }
  report.largest_node_counts = composer.largest_node_counts();
  report.store_nodes = store.node_count();
  report.timing.compose_seconds = seconds_since(compose_start);

  if (model.size() <= std::min(config.oracle_limit, kMaxOracleLimit)) {
    const auto oracle_start = Clock::now();
    const auto tmap = build_transition_map(model, config.oracle_limit);
    const auto attractors = find_attractors(tmap);
    const auto n = static_cast<unsigned>(model.size());
    report.attractors = summarize(attractors, n);
    report.map_indices = map_cycle_indices(tmap);
    report.kernel_logics = find_kernel_logics(trace, model, config.oracle_limit);
    if (config.kernel_bias) {
      const auto kernel = kernel_states(attractors);
      for (std::size_t k = 0; k < trace.cycle.size(); ++k) {
        const auto kb = kernel_bias(model, trace.cycle[k], kernel);
        for (std::size_t i = 0; i < report.nodes.size(); ++i)
          if (k < report.nodes[i].period) report.nodes[i].kernel_bias.push_back(kb[i]);
      }
    }
    report.timing.oracle_seconds = seconds_since(oracle_start);
  }
  return report;
}

AnalysisReport run_oracle(const AnalysisConfig& config) {
  config.check();
  const auto start = Clock::now();
  auto model = load_model(config);
  const double load = seconds_since(start);
  auto report = run_oracle(model, config);
  report.timing.load_seconds = load;
  return report;
}

AnalysisReport run_oracle(const NetworkModel& model, const AnalysisConfig& config) {
  config.check();
  AnalysisReport report;
  fill_model_fields(report, model, config);
  const auto start = Clock::now();
  const auto tmap = build_transition_map(model, config.oracle_limit);
  report.attractors = summarize(find_attractors(tmap), static_cast<unsigned>(model.size()));
  report.map_indices = map_cycle_indices(tmap);
  report.timing.oracle_seconds = seconds_since(start);
  return report;
}

int exit_code_for(const AnalysisReport& report) {
  if (report.status == "node_budget_exceeded") return exit_code::budget_exhausted;
  if (report.status == "step_limit_exceeded") return exit_code::step_limit;
  return exit_code::ok;
}

std::string to_json_text(const AnalysisReport& r, bool with_timing) {
  json j;
  j["status"] = r.status;
  if (!r.message.empty()) j["message"] = r.message;
  j["model"] = {{"nodes", r.node_names},
                {"inputs", r.input_names},
                {"pins", bool_map(r.pins)},
                {"fixed_inputs", bool_map(r.inputs)}};
  j["p_star"] = r.p_star;
  j["ell_star"] = r.ell_star;
  j["sampled_convergence_step"] = r.sampled_convergence_step;
  j["fill_steps"] = r.fill_steps;
  json nodes = json::array();
  for (const auto& n : r.nodes) {
    json jn = {{"name", n.name},
               {"kind", n.kind},
               {"period", n.period},
               {"phase_formulas", n.phase_formulas},
               {"bias", n.bias}};
    if (!n.kernel_bias.empty()) jn["kernel_bias"] = n.kernel_bias;
    if (n.input) jn["input"] = true;
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  j["free_nodes"] = r.free_nodes;
  if (r.kernel_logics) j["kernel_logics"] = *r.kernel_logics;
  if (r.attractors) {
    json by_length = json::object();
    for (const auto& [len, count] : r.attractors->by_length) by_length[std::to_string(len)] = count;
    j["attractors"] = {{"steady", r.attractors->steady},
                       {"cycles", r.attractors->cycles},
                       {"kernel", r.attractors->kernel},
                       {"kernel_size", r.attractors->kernel.size()},
                       {"by_length", std::move(by_length)}};
  }
  if (r.map_indices) j["map_indices"] = {{"p", r.map_indices->p}, {"ell", r.map_indices->ell}};
  j["diagram"] = {{"largest_node_counts", r.largest_node_counts}, {"store_nodes", r.store_nodes}};
  if (r.partial)
    j["partial"] = {{"steps_completed", r.partial->steps_completed},
                    {"largest_node_counts", r.partial->largest_node_counts},
                    {"store_nodes", r.partial->store_nodes}};
  if (with_timing)
    j["timing"] = {{"load_seconds", r.timing.load_seconds},
                   {"compose_seconds", r.timing.compose_seconds},
                   {"oracle_seconds", r.timing.oracle_seconds}};
  return j.dump(2) + "\n";
}

AnalysisReport report_from_json(std::string_view text) {
  AnalysisReport r;
  try {
    const json j = json::parse(text);
    r.status = j.at("status").get<std::string>();
    r.message = j.value("message", std::string{});
    const auto& model = j.at("model");
    r.node_names = model.at("nodes").get<std::vector<std::string>>();
    r.input_names = model.at("inputs").get<std::vector<std::string>>();
    r.pins = bool_map_from(model.at("pins"));
    r.inputs = bool_map_from(model.at("fixed_inputs"));
    r.p_star = j.at("p_star").get<std::uint64_t>();
    r.ell_star = j.at("ell_star").get<std::uint64_t>();
    r.sampled_convergence_step = j.at("sampled_convergence_step").get<std::uint64_t>();
    r.fill_steps = j.at("fill_steps").get<std::vector<std::uint64_t>>();
    for (const auto& jn : j.at("nodes")) {
      NodeReport n;
      n.name = jn.at("name").get<std::string>();
      n.kind = jn.at("kind").get<std::string>();
      n.period = jn.at("period").get<std::uint64_t>();
      n.phase_formulas = jn.at("phase_formulas").get<std::vector<std::string>>();
      n.bias = jn.at("bias").get<std::vector<double>>();
      n.kernel_bias = jn.value("kernel_bias", std::vector<double>{});
      n.input = jn.value("input", false);
      r.nodes.push_back(std::move(n));
    }
    r.free_nodes = j.at("free_nodes").get<std::uint64_t>();
    if (j.contains("kernel_logics"))
      r.kernel_logics = j.at("kernel_logics").get<std::vector<std::size_t>>();
    if (j.contains("attractors")) {
      const auto& ja = j.at("attractors");
      AttractorReport a;
      a.steady = ja.at("steady").get<std::vector<std::string>>();
      a.cycles = ja.at("cycles").get<std::vector<std::vector<std::string>>>();
      a.kernel = ja.at("kernel").get<std::vector<std::string>>();
      for (const auto& [len, count] : ja.at("by_length").items())
        a.by_length[std::stoull(len)] = count.get<std::uint64_t>();
      r.attractors = std::move(a);
    }
    if (j.contains("map_indices"))
      r.map_indices = CycleIndices{j["map_indices"].at("p").get<std::uint64_t>(),
                                   j["map_indices"].at("ell").get<std::uint64_t>()};
    const auto& diagram = j.at("diagram");
    r.largest_node_counts = diagram.at("largest_node_counts").get<std::vector<std::size_t>>();
    r.store_nodes = diagram.at("store_nodes").get<std::size_t>();
    if (j.contains("partial")) {
      const auto& jp = j.at("partial");
      r.partial = PartialTrace{jp.at("steps_completed").get<std::uint64_t>(),
                               jp.at("largest_node_counts").get<std::vector<std::size_t>>(),
                               jp.at("store_nodes").get<std::size_t>()};
    }
    if (j.contains("timing")) {
      const auto& jt = j.at("timing");
      r.timing = {jt.at("load_seconds").get<double>(), jt.at("compose_seconds").get<double>(),
                  jt.at("oracle_seconds").get<double>()};
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string render_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "nodes: " << r.node_names.size();
  if (!r.input_names.empty()) {
    out << " (inputs:";
    for (const auto& name : r.input_names) out << ' ' << name;
    out << ')';
  }
  out << '\n';
  for (const auto& [name, v] : r.inputs) out << "fixed input " << name << " = " << v << '\n';
  for (const auto& [name, v] : r.pins) out << "pinned " << name << " = " << v << '\n';
  if (r.status != "ok") {
    out << "status: " << r.status << '\n' << r.message << '\n';
    if (r.partial) {
      out << "steps completed: " << r.partial->steps_completed << '\n'
          << "store nodes: " << r.partial->store_nodes << '\n';
    }
    return out.str();
  }
  if (r.ell_star > 0) {
    out << "p* = " << r.p_star << ", l* = " << r.ell_star << '\n';
    if (r.sampled_convergence_step > 0)
      out << "sampled convergence at step " << r.sampled_convergence_step << '\n';
    std::size_t constants = 0;
    std::size_t inputs = 0;
    for (const auto& n : r.nodes) {
      constants += (n.kind == "const0" || n.kind == "const1") ? 1 : 0;
      inputs += n.input ? 1 : 0;
    }
    out << "constant nodes: " << constants << " (" << inputs << " inputs), free nodes: "
        << r.free_nodes << "\n\n";
    for (const auto& n : r.nodes) {
      if (n.kind == "const0" || n.kind == "const1") {
        out << n.name << " -> " << (n.kind == "const1" ? 1 : 0) << '\n';
        continue;
      }
      if (n.period == 1) {
        out << n.name << "(k+n) = " << n.phase_formulas.front() << '\n';
        continue;
      }
      out << n.name << ", period " << n.period << ":\n";
      for (std::size_t k = 0; k < n.phase_formulas.size(); ++k)
        out << "  n mod " << n.period << " = " << (r.p_star + k) % n.period << ": " << n.name
            << "(k+n) = " << n.phase_formulas[k] << '\n';
    }
  }
  if (r.kernel_logics) {
    out << "\nkernel logics:";
    for (auto k : *r.kernel_logics) out << " #" << k;
    out << '\n';
  }
  if (r.map_indices)
    out << "map-level indices: p = " << r.map_indices->p << ", l = " << r.map_indices->ell << '\n';
  if (r.attractors) {
    const auto& a = *r.attractors;
    out << "steady states (" << a.steady.size() << "):";
    for (const auto& s : a.steady) out << ' ' << s;
    out << "\ncycles (" << a.cycles.size() << "):\n";
    for (const auto& c : a.cycles) {
      out << " ";
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " -> " : " ") << c[i];
      out << '\n';
    }
    out << "kernel states: " << a.kernel.size() << '\n';
  }
  return out.str();
}

std::string stg_dot(const NetworkModel& model) {
  if (model.size() > kMaxStgExportNodes)
    throw OracleLimitExceeded(static_cast<unsigned>(model.size()), kMaxStgExportNodes);
  const auto tmap = build_transition_map(model, kMaxStgExportNodes);
  const auto kernel = kernel_states(find_attractors(tmap));
  const auto n = tmap.n;
  std::ostringstream out;
  out << "digraph stg {\n  node [shape=circle];\n";
  for (std::size_t s = 0; s < tmap.successor.size(); ++s) {
    const bool in_kernel = std::binary_search(kernel.begin(), kernel.end(), StateIndex(s));
    out << "  s" << s << " [label=\"" << state_bits(static_cast<StateIndex>(s), n) << '"'
        << (in_kernel ? ", shape=doublecircle" : "") << "];\n";
  }
  for (std::size_t s = 0; s < tmap.successor.size(); ++s)
    out << "  s" << s << " -> s" << tmap.successor[s] << ";\n";
  out << "}\n";
  return out.str();
}

std::string logic_cycle_dot(const CompositionTrace& trace, const NetworkModel& model,
                            const std::vector<std::size_t>& kernel_logics) {
  auto& store = model.store();
  std::ostringstream out;
  out << "digraph logic_cycle {\n  node [shape=box];\n";
  for (std::size_t k = 0; k < trace.cycle.size(); ++k) {
    const auto& member = trace.cycle[k];
    std::string label = "Logic #" + std::to_string(k + 1) + " (f^" + std::to_string(member.step) + ")";
    for (std::size_t i = 0; i < model.size(); ++i)
      label += "\\l" + dot_escape(model.name(i) + " = " + store.to_expression_text(member.handles[i]));
    label += "\\l";
    const bool kernel =
        std::find(kernel_logics.begin(), kernel_logics.end(), k + 1) != kernel_logics.end();
    out << "  L" << k + 1 << " [label=\"" << label << '"' << (kernel ? ", peripheries=2" : "")
        << "];\n";
  }
  for (std::size_t k = 0; k < trace.cycle.size(); ++k)
    out << "  L" << k + 1 << " -> L" << (k + 1) % trace.cycle.size() + 1 << ";\n";
  out << "}\n";
  return out.str();
}

std::string convert_to_native(std::string_view text, InputFormat from) {
  switch (from) {
    case InputFormat::BoolNet: return to_text(import_boolnet(text));
    case InputFormat::Threshold: return to_text(import_threshold(text));
    case InputFormat::Native: break;
  }
  return to_text(parse_network(text));
}

}  // namespace recomp
