// recomp: command-line front end.
//
//   recomp analyze MODEL [--pin NAME=0|1]... [--input NAME=0|1]... [--format json|text|dot]
//   recomp oracle MODEL
//   recomp export-dot MODEL --graph stg|logic
//   recomp convert MODEL --from boolnet|threshold

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "recomp/report.hpp"

using namespace recomp;

namespace {

struct Options {
  AnalysisConfig config;
  std::vector<std::string> pins;
  std::vector<std::string> inputs;
  std::string input_format = "native";
  std::string output_format = "json";
  std::string graph = "logic";
  std::string from = "boolnet";
  bool plain = false;
  bool progress = false;
  bool no_timing = false;
};

std::map<std::string, bool> parse_assignments(const std::vector<std::string>& items,
                                              const char* flag) {
  std::map<std::string, bool> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    const auto value = eq == std::string::npos ? std::string{} : item.substr(eq + 1);
    if (eq == 0 || (value != "0" && value != "1"))
      throw InvalidArgument(std::string(flag) + " expects NAME=0 or NAME=1, got '" + item + "'");
    out[item.substr(0, eq)] = value == "1";
  }
  return out;
}

void finish_config(Options& o) {
  auto in = parse_input_format(o.input_format);
  if (!in) throw InvalidArgument("unknown input format '" + o.input_format + "'");
  o.config.format = *in;
  auto out = parse_output_format(o.output_format);
  if (!out) throw InvalidArgument("unknown output format '" + o.output_format + "'");
  o.config.output = *out;
  o.config.pins = parse_assignments(o.pins, "--pin");
  o.config.inputs = parse_assignments(o.inputs, "--input");
  o.config.leap = !o.plain;
  o.config.check();
}

void add_model_options(CLI::App* cmd, Options& o) {
  cmd->add_option("model", o.config.input_path, "Model file")->required();
  cmd->add_option("--input-format", o.input_format, "native, boolnet or threshold");
  cmd->add_option("--pin", o.pins, "Replace a node's rule by a constant (NAME=0|1)");
  cmd->add_option("--input", o.inputs,
                  "Hold a control input fixed, substituting it into every rule (NAME=0|1)");
  cmd->add_option("--node-budget", o.config.node_budget, "Decision diagram node budget");
  cmd->add_option("--oracle-limit", o.config.oracle_limit, "Largest network enumerated exhaustively");
}

void add_composition_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--stride", o.config.stride, "Leap stride");
  cmd->add_option("--max-steps", o.config.max_steps, "Give up after this many steps");
  cmd->add_flag("--plain", o.plain, "Single-step instead of leaping");
  cmd->add_flag("--progress", o.progress, "JSON progress lines on stderr");
}

ProgressSink progress_sink(bool enabled) {
  if (!enabled) return {};
  return [](const ProgressRecord& rec) {
    std::size_t total = 0;
    std::size_t largest = 0;
    for (auto c : rec.node_counts) {
      total += c;
      largest = std::max(largest, c);
    }
    nlohmann::json line = {{"phase", rec.phase},
                           {"step", rec.step},
                           {"largest_node_count", largest},
                           {"total_node_count", total},
                           {"elapsed_seconds", rec.elapsed_seconds}};
    std::cerr << line.dump() << std::endl;
  };
}

int emit(const AnalysisReport& report, const Options& o) {
  if (o.config.output == OutputFormat::Text)
    std::cout << render_text(report);
  else
    std::cout << to_json_text(report, !o.no_timing);
  return exit_code_for(report);
}

int cmd_analyze(const Options& o) {
  if (o.config.output == OutputFormat::Dot) {
    auto model = load_model(o.config);
    SelfComposer composer(model, progress_sink(o.progress));
    const auto trace = o.config.leap
                           ? composer.leap_and_fill({o.config.stride, o.config.max_steps})
                           : composer.find_logic_cycle(o.config.max_steps);
    std::vector<std::size_t> kernel;
    if (model.size() <= o.config.oracle_limit)
      kernel = find_kernel_logics(trace, model, o.config.oracle_limit);
    std::cout << logic_cycle_dot(trace, model, kernel);
    return exit_code::ok;
  }
  return emit(run_analyze(o.config, progress_sink(o.progress)), o);
}

int cmd_oracle(const Options& o) {
  if (o.config.output == OutputFormat::Dot) {
    std::cout << stg_dot(load_model(o.config));
    return exit_code::ok;
  }
  return emit(run_oracle(o.config), o);
}

int cmd_export_dot(const Options& o) {
  auto model = load_model(o.config);
  if (o.graph == "stg") {
    std::cout << stg_dot(model);
    return exit_code::ok;
  }
  if (o.graph != "logic") throw InvalidArgument("--graph expects stg or logic");
  SelfComposer composer(model, progress_sink(o.progress));
  const auto trace = o.config.leap ? composer.leap_and_fill({o.config.stride, o.config.max_steps})
                                   : composer.find_logic_cycle(o.config.max_steps);
  std::vector<std::size_t> kernel;
  if (model.size() <= o.config.oracle_limit)
    kernel = find_kernel_logics(trace, model, o.config.oracle_limit);
  std::cout << logic_cycle_dot(trace, model, kernel);
  return exit_code::ok;
}

int cmd_convert(const Options& o) {
  auto from = parse_input_format(o.from);
  if (!from) throw InvalidArgument("--from expects boolnet or threshold");
  std::cout << convert_to_native(read_file(o.config.input_path), *from);
  return exit_code::ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive self-composition analysis of synchronous Boolean networks"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Compose the update rules until they repeat");
  add_model_options(analyze, o);
  add_composition_options(analyze, o);
  analyze->add_option("--format", o.output_format, "json, text or dot");
  analyze->add_flag("--kernel-bias", o.config.kernel_bias, "Also report bias over kernel states");
  analyze->add_flag("--no-timing", o.no_timing, "Omit timing from the JSON report");

  auto* oracle = app.add_subcommand("oracle", "Enumerate the state space");
  add_model_options(oracle, o);
  oracle->add_option("--format", o.output_format, "json, text or dot");
  oracle->add_flag("--no-timing", o.no_timing, "Omit timing from the JSON report");

  auto* dot = app.add_subcommand("export-dot", "Graphviz export");
  add_model_options(dot, o);
  add_composition_options(dot, o);
  dot->add_option("--graph", o.graph, "stg (state transitions) or logic (converged cycle)");

  auto* convert = app.add_subcommand("convert", "Rewrite a model in the native format");
  convert->add_option("model", o.config.input_path, "Model file")->required();
  convert->add_option("--from", o.from, "boolnet or threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (!convert->parsed()) finish_config(o);
    if (analyze->parsed()) return cmd_analyze(o);
    if (oracle->parsed()) return cmd_oracle(o);
    if (dot->parsed()) return cmd_export_dot(o);
    return cmd_convert(o);
  } catch (const ParseError& e) {
    std::cerr << "recomp: parse error: " << o.config.input_path << ':' << e.what() << '\n';
    return exit_code::parse_error;
  } catch (const NodeBudgetExceeded& e) {
    std::cerr << "recomp: " << e.what() << " after " << e.partial().steps_completed << " steps\n";
    return exit_code::budget_exhausted;
  } catch (const StepLimitExceeded& e) {
    std::cerr << "recomp: " << e.what() << '\n';
    return exit_code::step_limit;
  } catch (const OracleLimitExceeded& e) {
    std::cerr << "recomp: " << e.what()
              << "; use `recomp analyze` for networks of this size\n";
    return exit_code::oracle_limit;
  } catch (const Error& e) {
    std::cerr << "recomp: " << e.what() << '\n';
    return exit_code::usage;
  }
}
