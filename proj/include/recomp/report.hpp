#pragma once

// Analysis pipeline behind the command-line tool, the report it produces,
// and its JSON, text and DOT renderings.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recomp/kernel.hpp"
#include "recomp/network.hpp"
#include "recomp/oracle.hpp"
#include "recomp/self_composition.hpp"

namespace recomp {

enum class InputFormat { Native, BoolNet, Threshold };
enum class OutputFormat { Json, Text, Dot };

std::string to_string(InputFormat f);
std::string to_string(OutputFormat f);
std::optional<InputFormat> parse_input_format(std::string_view text);
std::optional<OutputFormat> parse_output_format(std::string_view text);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int parse_error = 2;
inline constexpr int budget_exhausted = 3;
inline constexpr int step_limit = 4;
inline constexpr int oracle_limit = 5;
}  // namespace exit_code

/// Largest network whose state transition graph is exported as DOT.
inline constexpr unsigned kMaxStgExportNodes = 12;

struct AnalysisConfig {
  std::string input_path;
  InputFormat format = InputFormat::Native;
  /// Nodes whose own rule is replaced by a constant.
  std::map<std::string, bool> pins;
  /// Control inputs held fixed: the constant is substituted into every rule.
  std::map<std::string, bool> inputs;
  std::uint64_t stride = 4;
  std::uint64_t max_steps = 1u << 20;
  std::size_t node_budget = FuncStore::kDefaultNodeBudget;
  unsigned oracle_limit = kDefaultOracleLimit;
  OutputFormat output = OutputFormat::Json;
  /// Leap by `stride` instead of single-stepping.
  bool leap = true;
  /// Also report the bias over kernel states (needs the oracle).
  bool kernel_bias = false;

  /// Throws InvalidArgument on stride 0, max_steps 0, budget 0 or limit 0.
  void check() const;
};

/// Reads the configured file in the configured format and applies inputs, then pins.
NetworkModel load_model(const AnalysisConfig& config);
NetworkModel load_model_text(std::string_view text, const AnalysisConfig& config);

struct NodeReport {
  std::string name;
  std::string kind;  // const0, const1, periodic, formula
  std::uint64_t period = 1;
  std::vector<std::string> phase_formulas;
  /// Share of all initial states driving the node to 1, per phase.
  std::vector<double> bias;
  /// Same, restricted to kernel states; empty unless requested.
  std::vector<double> kernel_bias;
  bool input = false;

  bool operator==(const NodeReport&) const = default;
};

struct AttractorReport {
  std::vector<std::string> steady;
  std::vector<std::vector<std::string>> cycles;
  std::vector<std::string> kernel;
  /// cycle length -> number of cycles of that length (steady states have length 1)
  std::map<std::uint64_t, std::uint64_t> by_length;

  bool operator==(const AttractorReport&) const = default;
};

struct Timing {
  double load_seconds = 0;
  double compose_seconds = 0;
  double oracle_seconds = 0;

  bool operator==(const Timing&) const = default;
};

struct AnalysisReport {
  /// ok, node_budget_exceeded or step_limit_exceeded
  std::string status = "ok";
  std::string message;

  std::vector<std::string> node_names;
  std::vector<std::string> input_names;
  std::map<std::string, bool> pins;
  std::map<std::string, bool> inputs;

  std::uint64_t p_star = 0;
  std::uint64_t ell_star = 0;
  std::uint64_t sampled_convergence_step = 0;
  std::vector<std::uint64_t> fill_steps;
  std::vector<NodeReport> nodes;
  /// Number of nodes not converged to a constant; the reduced space is 2^this.
  std::uint64_t free_nodes = 0;

  std::optional<std::vector<std::size_t>> kernel_logics;
  std::optional<AttractorReport> attractors;
  std::optional<CycleIndices> map_indices;

  std::vector<std::size_t> largest_node_counts;
  std::size_t store_nodes = 0;
  std::optional<PartialTrace> partial;

  Timing timing;

  bool operator==(const AnalysisReport&) const = default;
};

/// Self-composition, classification, bias and, when the network fits the
/// oracle limit, kernel logics and attractors. Budget and step exhaustion are
/// reported through `status` and `partial`; parse errors propagate.
AnalysisReport run_analyze(const AnalysisConfig& config, const ProgressSink& progress = {});
AnalysisReport run_analyze(const NetworkModel& model, const AnalysisConfig& config,
                           const ProgressSink& progress = {});

/// Exhaustive path only. Throws OracleLimitExceeded above the limit.
AnalysisReport run_oracle(const AnalysisConfig& config);
AnalysisReport run_oracle(const NetworkModel& model, const AnalysisConfig& config);

int exit_code_for(const AnalysisReport& report);

std::string to_json_text(const AnalysisReport& report, bool with_timing = true);
/// Throws InvalidArgument on malformed input.
AnalysisReport report_from_json(std::string_view text);
std::string render_text(const AnalysisReport& report);

/// Throws OracleLimitExceeded for more than kMaxStgExportNodes nodes.
std::string stg_dot(const NetworkModel& model);
std::string logic_cycle_dot(const CompositionTrace& trace, const NetworkModel& model,
                            const std::vector<std::size_t>& kernel_logics = {});

/// Reads BoolNet or threshold text and writes the native format.
std::string convert_to_native(std::string_view text, InputFormat from);

std::string read_file(const std::string& path);

}  // namespace recomp
