#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "soficlab/errors.hpp"
#include "soficlab/runner.hpp"
#include "soficlab/version.hpp"

namespace {

struct Args {
  std::string config;
  soficlab::RunOptions options;
};

void add_common(CLI::App* cmd, Args& args) {
  cmd->add_option("--config", args.config, "experiment config file")->required();
  cmd->add_option("--out", args.options.out_dir, "output directory (default .)");
  auto* seed = cmd->add_option("--seed", args.options.seed, "override the config seed");
  auto* budget = cmd->add_option("--budget", args.options.budget,
                                 "override the exhaustive-candidate budget");
  auto* threads = cmd->add_option("--threads", args.options.threads, "worker thread count");
  cmd->parse_complete_callback([&args, seed, budget, threads]() {
    args.options.has_seed = seed->count() > 0;
    args.options.has_budget = budget->count() > 0;
    args.options.has_threads = threads->count() > 0;
  });
}

int run(const std::string& task, const Args& args) {
  try {
    soficlab::ExperimentConfig config = soficlab::ExperimentConfig::from_file(args.config);
    if (config.get("task") != task) {
      throw soficlab::InputError("config task \"" + config.get("task") +
                                 "\" does not match subcommand \"" + task + "\"");
    }
    std::string summary = soficlab::run_experiment(config, args.options);
    std::printf("%s\n", summary.c_str());
    return soficlab::kExitOk;
  } catch (const soficlab::InputError& err) {
    std::fprintf(stderr, "input error: %s\n", err.what());
    return soficlab::kExitInput;
  } catch (const soficlab::BudgetError& err) {
    std::fprintf(stderr, "budget error: %s\n", err.what());
    return soficlab::kExitBudget;
  } catch (const soficlab::InfeasibleError& err) {
    std::fprintf(stderr, "infeasible: %s\n", err.what());
    return soficlab::kExitInfeasible;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(soficlab::artifact_banner()) +
               " - weak-containment distances and sofic entropy on finite models"};
  app.require_subcommand(1);

  const char* tasks[] = {"catalog", "dist", "tower-converge", "entropy",
                         "validate-sofic", "genprof"};
  const char* blurbs[] = {
      "list the builders usable in configs",
      "pseudo-metric computations between two systems",
      "pairwise distances between tower levels",
      "homomorphism-count entropy grids",
      "fixed-point trend checks for a finite-action sequence",
      "small-entropy generating partition of a tower level"};

  Args args[6];
  CLI::App* subs[6];
  for (int i = 0; i < 6; ++i) {
    subs[i] = app.add_subcommand(tasks[i], blurbs[i]);
    add_common(subs[i], args[i]);
  }

  CLI11_PARSE(app, argc, argv);

  for (int i = 0; i < 6; ++i) {
    if (subs[i]->parsed()) return run(tasks[i], args[i]);
  }
  return 1;
}
