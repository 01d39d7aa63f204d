#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bnn/igt.hpp"
#include "bnn/optimize.hpp"
#include "bnn/task.hpp"

namespace bnn {

enum class ExperimentKind { Dynamics, RandomWalk, Anneal, Sweep, Igt };
enum class SweepAxis { Tasks, Neurons };

// Every experiment option, flat.  Serializes to "key = value" lines; parsing
// rejects unknown keys so a typo never silently falls back to a default.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Anneal;
  std::uint64_t seed = 1;
  int runs = 30;
  std::string out_dir = "out";
  int n_neurons = 10;
  std::string tasks = "AND:2";  // comma list of NAME:ARITY or csv:PATH
  int t_max = 0;                // 0 = derive from free-neuron count
  InitKind init = InitKind::FixedMinusOne;
  // annealing
  int epochs = 50000;
  double t0 = 5.0;
  double cooling_ratio = 0.6;
  int ap_window = 10;
  double ap_band_lo = 0.3;
  double ap_band_hi = 0.7;
  int stop_stable = 10;
  // random walk
  int steps = 2000;
  // sweep
  SweepAxis sweep_axis = SweepAxis::Tasks;
  std::string sweep_values = "1,2,3";
  // gambling task
  int trials = 60;
  int proposals_per_trial = 50;
  std::string decks = "builtin";  // builtin | directory with deck_{b,d}.csv
  InputCode igt_input = InputCode::PrevChoice;
};

// Defaults for one command.  Most fields share the struct defaults; the
// gambling task runs 5 neurons at t0 = 0.2 and the sweep uses t0 = 0.5,
// where the acceptance-rate-triggered cooling actually engages at the error
// scale of those experiments.
ExperimentConfig default_config(ExperimentKind kind);

// Applies `key = value` lines on top of `base`.  Unknown or duplicate keys
// and malformed values throw std::invalid_argument.
ExperimentConfig parse_config(const std::string& text,
                              const ExperimentConfig& base = {});
// Emits every key in a fixed order; parse_config(config_to_text(c)) == c.
std::string config_to_text(const ExperimentConfig& cfg);

std::vector<TaskSpec> parse_task_list(const std::string& spec);
std::vector<int> parse_int_list(const std::string& spec);

AnnealerConfig annealer_config(const ExperimentConfig& cfg);
IgtConfig igt_config(const ExperimentConfig& cfg);

// Seed plumbing, shared by all commands: run r of a master seed uses
// run_seed = derive_seed(master, r), and within a run stream 0 builds the
// initial network, stream 1 drives the search, stream 2 seeds random inits.
std::uint64_t run_seed(const ExperimentConfig& cfg, int run);

// The canonical task list for a task-count sweep: the first n of
// AND:2, OR:2, NAND:2, XOR:2.
std::vector<TaskSpec> sweep_task_list(int n);

int cmd_dynamics(const ExperimentConfig& cfg);
int cmd_randomwalk(const ExperimentConfig& cfg);
int cmd_anneal(const ExperimentConfig& cfg);
int cmd_sweep(const ExperimentConfig& cfg);
int cmd_igt(const ExperimentConfig& cfg);

// Dispatches on cfg.kind; creates the output directory and writes the
// effective config alongside the artifacts.
int run_experiment(const ExperimentConfig& cfg);

}  // namespace bnn
