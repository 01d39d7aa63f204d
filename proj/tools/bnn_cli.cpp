#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "bnn/experiment.hpp"
#include "bnn/textio.hpp"

namespace {

using bnn::ExperimentConfig;
using bnn::ExperimentKind;

// Option values captured per subcommand; only flags the user actually passed
// override the config file, which in turn overrides built-in defaults.
struct CliValues {
  CLI::App* sub = nullptr;
  std::string config, out, tasks, decks, sweep_axis, sweep_values, init;
  std::uint64_t seed = 0;
  int runs = 0, n_neurons = 0, t_max = 0, epochs = 0, steps = 0, trials = 0,
      proposals = 0;
};

void add_common(CliValues& v) {
  CLI::App* s = v.sub;
  s->add_option("--config", v.config, "config file (key = value lines)");
  s->add_option("--seed", v.seed, "master seed; run k derives its own stream");
  s->add_option("--runs", v.runs, "independent runs");
  s->add_option("--out", v.out, "output directory");
  s->add_option("--n-neurons", v.n_neurons, "network size");
  s->add_option("--t-max", v.t_max, "relaxation step cap (0 = auto)");
  s->add_option("--init", v.init, "free-neuron init: fixed | random");
}

// True when the flag exists on this subcommand and the user passed it.
bool passed(const CLI::App* sub, const std::string& name) {
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

ExperimentConfig build_config(ExperimentKind kind, const CliValues& v) {
  ExperimentConfig cfg = bnn::default_config(kind);
  if (passed(v.sub, "--config"))
    cfg = bnn::parse_config(bnn::read_file(v.config), cfg);
  cfg.kind = kind;  // the subcommand, not the config file, picks the command
  if (passed(v.sub, "--seed")) cfg.seed = v.seed;
  if (passed(v.sub, "--runs")) cfg.runs = v.runs;
  if (passed(v.sub, "--out")) cfg.out_dir = v.out;
  if (passed(v.sub, "--n-neurons")) cfg.n_neurons = v.n_neurons;
  if (passed(v.sub, "--t-max")) cfg.t_max = v.t_max;
  if (passed(v.sub, "--init")) {
    if (v.init != "fixed" && v.init != "random")
      throw std::invalid_argument("--init must be 'fixed' or 'random'");
    cfg.init = v.init == "random" ? bnn::InitKind::SeededRandom
                                  : bnn::InitKind::FixedMinusOne;
  }
  if (passed(v.sub, "--tasks")) cfg.tasks = v.tasks;
  if (passed(v.sub, "--epochs")) cfg.epochs = v.epochs;
  if (passed(v.sub, "--steps")) cfg.steps = v.steps;
  if (passed(v.sub, "--sweep-axis")) {
    if (v.sweep_axis != "tasks" && v.sweep_axis != "neurons")
      throw std::invalid_argument("--sweep-axis must be 'tasks' or 'neurons'");
    cfg.sweep_axis = v.sweep_axis == "neurons" ? bnn::SweepAxis::Neurons
                                               : bnn::SweepAxis::Tasks;
  }
  if (passed(v.sub, "--sweep-values")) cfg.sweep_values = v.sweep_values;
  if (passed(v.sub, "--trials")) cfg.trials = v.trials;
  if (passed(v.sub, "--decks")) cfg.decks = v.decks;
  if (passed(v.sub, "--proposals-per-trial"))
    cfg.proposals_per_trial = v.proposals;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean threshold networks: annealing trainer and a two-deck "
               "gambling-task harness"};
  app.require_subcommand(1);

  CliValues dyn, walk, ann, sweep, igt;

  dyn.sub = app.add_subcommand(
      "dynamics", "space-time rasters of a network before and after training");
  add_common(dyn);
  dyn.sub->add_option("--tasks", dyn.tasks, "task list, e.g. AND:2,OR:2");
  dyn.sub->add_option("--epochs", dyn.epochs, "annealing epoch cap");

  walk.sub = app.add_subcommand(
      "randomwalk", "unbiased random walk in network space, E per step");
  add_common(walk);
  walk.sub->add_option("--tasks", walk.tasks, "task list, e.g. AND:2,OR:2");
  walk.sub->add_option("--steps", walk.steps, "walk length");

  ann.sub = app.add_subcommand(
      "anneal", "simulated-annealing training runs with E traces");
  add_common(ann);
  ann.sub->add_option("--tasks", ann.tasks, "task list, e.g. AND:2,OR:2");
  ann.sub->add_option("--epochs", ann.epochs, "annealing epoch cap");

  sweep.sub = app.add_subcommand(
      "sweep", "annealing across task counts or network sizes");
  add_common(sweep);
  sweep.sub->add_option("--tasks", sweep.tasks,
                        "task list (used when sweeping network size)");
  sweep.sub->add_option("--epochs", sweep.epochs, "annealing epoch cap");
  sweep.sub->add_option("--sweep-axis", sweep.sweep_axis, "tasks | neurons");
  sweep.sub->add_option("--sweep-values", sweep.sweep_values,
                        "comma list, e.g. 1,2,3");

  igt.sub = app.add_subcommand(
      "igt", "two-deck gambling-task sessions driven by an annealed network");
  add_common(igt);
  igt.sub->add_option("--trials", igt.trials, "trials per session");
  igt.sub->add_option("--decks", igt.decks,
                      "'builtin' or a directory with deck_b.csv / deck_d.csv");
  igt.sub->add_option("--proposals-per-trial", igt.proposals,
                      "annealing proposals between trials");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dyn.sub->parsed())
      return bnn::run_experiment(build_config(ExperimentKind::Dynamics, dyn));
    if (walk.sub->parsed())
      return bnn::run_experiment(build_config(ExperimentKind::RandomWalk, walk));
    if (ann.sub->parsed())
      return bnn::run_experiment(build_config(ExperimentKind::Anneal, ann));
    if (sweep.sub->parsed())
      return bnn::run_experiment(build_config(ExperimentKind::Sweep, sweep));
    if (igt.sub->parsed())
      return bnn::run_experiment(build_config(ExperimentKind::Igt, igt));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
