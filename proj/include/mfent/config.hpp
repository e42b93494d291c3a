#pragma once

// Experiment configuration (JSON) and the command runner behind the CLI.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mfent/entropy.hpp"
#include "mfent/measure.hpp"
#include "mfent/symbolic.hpp"

namespace mfent {

struct ExperimentConfig {
  ShiftSpace space = ShiftSpace::full(2);
  std::optional<MeasureModel> measure;

  std::vector<double> q_grid;     // default -3..3 step 0.25
  std::vector<double> beta_grid;  // empty: 101 points around the domain
  DepthOffset k;
  std::vector<ScheduleEntry> schedule = default_schedule();

  // premeasure / entropy
  std::vector<Word> set;  // empty: the whole space
  double q = 0.0;
  double t = 0.0;
  int N = 1;
  int D = 8;
  int cover_depth = -1;

  // doubling
  int doubling_k = 1;
  int doubling_n_max = 12;

  // local
  int n_max = 200;
  std::size_t samples = 100;
  double tail_fraction = 0.25;
  std::vector<Word> words;

  // level-spectrum
  int n = 14;
  double bin_width = 0.125;
  double window = 0.18;
  std::vector<double> identity_q{-1.0, 0.0, 1.0, 2.0};

  // verify-gibbs
  std::vector<double> gibbs_q{-2.0, -1.0, 0.5, 2.0};

  std::uint64_t seed = 0;

  const MeasureModel& model() const;
  CylinderSet target_set() const;
};

/// Schema violations raise ConfigError naming the field.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
};

std::vector<std::string> command_names();

/// Runs one command and writes its CSV files. Returns 0; failures propagate
/// as exceptions (see exit_code_for).
int run(const std::string& command, const ExperimentConfig& config, const RunOptions& options, std::ostream& log);

/// 2 for DomainError and ConfigError, 1 for everything else.
int exit_code_for(const std::exception& error);

/// 12 significant digits; inf, -inf and nan spelled out.
std::string format_number(double value);

}  // namespace mfent
