#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mfent/config.hpp"
#include "mfent/errors.hpp"

namespace {

unsigned threads_from_env() {
  const char* env = std::getenv("MFENT_THREADS");
  if (env == nullptr) return 1;
  try {
    const int v = std::stoi(env);
    return v > 0 ? static_cast<unsigned>(v) : 1u;
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multifractal entropy spectra of shift-space measures"};
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 0;
  std::uint64_t seed = 0;

  std::string names;
  for (const auto& n : mfent::command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "One of: " + names)->required();
  app.add_option("--config", config_path, "JSON experiment config")->required();
  app.add_option("--out", out_dir, "Output directory for CSV files");
  app.add_option("--threads", threads, "Worker threads (default: MFENT_THREADS or 1)");
  auto* seed_opt = app.add_option("--seed", seed, "Overrides the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const mfent::ExperimentConfig config = mfent::load_config(config_path);
    mfent::RunOptions options;
    options.out_dir = out_dir;
    options.threads = threads > 0 ? threads : threads_from_env();
    if (seed_opt->count() > 0) options.seed = seed;
    return mfent::run(command, config, options, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "mfent: " << e.what() << '\n';
    return mfent::exit_code_for(e);
  }
}
