#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ontohyp/generator.hpp"
#include "ontohyp/harness.hpp"
#include "ontohyp/metrics.hpp"

namespace ontohyp {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitIo = 3,
};

struct GenerateOptions {
  int height = 1;
  Mode mode = Mode::kMulti;
  int count = 100;
  std::uint64_t seed = 0;
  Subtask subtask = Subtask::kRandom;
  SubtypeStyle subtype_style = SubtypeStyle::kMixed;
  std::filesystem::path out;
};

struct GradeOptions {
  std::filesystem::path dataset;
  std::filesystem::path responses;  // JSON Lines of {"id", "response"}
  std::filesystem::path out;
  bool conditional_quality = false;
};

struct EvalOptions {
  std::filesystem::path dataset;
  /// JSON object. {"kind": "scripted", "script": "truth"} selects the
  /// offline test double; anything else is a ModelEndpoint.
  std::filesystem::path endpoint_config;
  IclMode icl = IclMode::kNone;
  std::filesystem::path out;  // run directory
  int concurrency = 4;
  bool demos_per_question = false;
  std::uint64_t demo_seed = 0;
  bool conditional_quality = false;
};

struct StatsOptions {
  std::optional<std::filesystem::path> dataset;
  std::optional<std::filesystem::path> results;
  GroupBy group_by = GroupBy::kHeight;
  std::optional<std::filesystem::path> plot_data;  // CSV
  bool conditional_quality = false;
};

/// The cmd_* functions print human-readable output to `out`, diagnostics to
/// `err`, and return an ExitCode.
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);
int cmd_grade(const GradeOptions& options, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err);
int cmd_stats(const StatsOptions& options, std::ostream& out, std::ostream& err);

/// Argument parsing and dispatch for the ontohyp executable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ontohyp
