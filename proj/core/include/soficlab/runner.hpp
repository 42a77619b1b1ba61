#ifndef SOFICLAB_RUNNER_HPP
#define SOFICLAB_RUNNER_HPP

#include <cstdint>
#include <map>
#include <string>

namespace soficlab {

/// One experiment = one flat key/value config file ("key = value" lines,
/// '#' comments). `hash_hex` fingerprints the raw bytes and is embedded in
/// every output, making runs reproducible from config + seed alone.
struct ExperimentConfig {
  std::map<std::string, std::string> values;
  std::string raw;
  std::string hash_hex;

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_text(const std::string& text);

  bool has(const std::string& key) const { return values.count(key) > 0; }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
};

/// Command-line overrides; unset fields fall back to config values, then
/// to defaults (seed 0, budget 10^7, threads 1).
struct RunOptions {
  std::string out_dir = ".";
  bool has_seed = false;
  uint64_t seed = 0;
  bool has_budget = false;
  long long budget = 0;
  bool has_threads = false;
  int threads = 0;
};

/// Runs the configured task, writes its report files under out_dir and
/// returns a one-line summary for stdout. Throws InputError / BudgetError
/// / InfeasibleError; the CLI maps those to exit codes 2 / 3 / 4.
std::string run_experiment(const ExperimentConfig& config, const RunOptions& options);

} // namespace soficlab

#endif
