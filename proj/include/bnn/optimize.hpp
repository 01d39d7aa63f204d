#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bnn/evaluate.hpp"
#include "bnn/network.hpp"
#include "bnn/rng.hpp"
#include "bnn/task.hpp"

namespace bnn {

// Mutable coordinates of an n-neuron network, excluding rows of input
// neurons (their state is clamped, so their incoming weights and thresholds
// are dead parameters).  Coordinate ids: weight (i,j) -> i*n + j, threshold
// i -> n*n + i.
struct PerturbationKernel {
  int n_neurons = 0;
  std::vector<std::int64_t> coords;
};

PerturbationKernel make_kernel(int n_neurons,
                               const std::vector<int>& input_neurons);

// Returns a copy of `net` with exactly one kernel coordinate redrawn (weights
// resample from the two other ternary values, thresholds redraw uniformly),
// plus the coordinate id.  The original network is untouched.
std::pair<Network, std::int64_t> propose(const PerturbationKernel& kernel,
                                         const Network& net, Rng& rng);

// Metropolis rule: always accept delta_e <= 0 (exp(0) = 1 covers equality),
// otherwise accept with probability exp(-delta_e / temperature).
bool metropolis_accept(double delta_e, double temperature, Rng& rng);

struct AnnealerConfig {
  double t0 = 5.0;
  double cooling_ratio = 0.6;
  int ap_window = 10;        // epochs per acceptance-rate window
  double ap_band_lo = 0.3;   // cool only when the window's rate is in band
  double ap_band_hi = 0.7;   //   (endpoints included)
  int stop_stable = 10;      // consecutive E = 0 epochs that end a search
  int max_epochs = 50000;
};

void validate(const AnnealerConfig& cfg);

// Tumbling-window temperature controller.  Every `window` recorded epochs the
// acceptance rate is checked; inside the band the temperature is multiplied
// by `ratio`, then the window restarts either way.
class CoolingSchedule {
 public:
  CoolingSchedule(double t0, double ratio, int window, double band_lo,
                  double band_hi);

  double temperature() const { return temperature_; }
  int cooling_steps() const { return cooling_steps_; }

  // Records one epoch's accept flag; returns true when this call closed a
  // window and cooled.
  bool record(bool accepted);

 private:
  double temperature_;
  double ratio_;
  int window_;
  double band_lo_, band_hi_;
  int seen_ = 0;
  int accepted_ = 0;
  int cooling_steps_ = 0;
};

struct EpochRecord {
  int epoch = 0;            // 1-based
  double error = 0.0;       // E after this epoch's accept/reject
  double temperature = 0.0; // temperature the decision was made at
  bool accepted = false;
  std::int64_t coordinate = 0;
};

// One proposal per epoch, Metropolis acceptance, acceptance-rate-driven
// cooling.  Persists across calls to run(): temperature, window counters and
// the current network carry over, so a caller can re-train on a growing task
// set (the gambling-task harness does exactly this).
class Annealer {
 public:
  Annealer(Network net, const AnnealerConfig& cfg);

  struct RunStats {
    int epochs = 0;
    int accepted = 0;
    double final_error = 0.0;
    bool stabilized = false;  // stopped on stop_stable consecutive E = 0
  };

  // Runs up to `epochs` epochs against `ts`.  E is re-evaluated at entry (the
  // task set may differ from the previous call).  When `trace` is given every
  // epoch appends a record, numbering from epoch_offset + 1.
  RunStats run(const TaskSet& ts, int epochs, int t_max, Rng& rng,
               const InitPolicy& init = {},
               std::vector<EpochRecord>* trace = nullptr,
               int epoch_offset = 0);

  const Network& network() const { return net_; }
  double temperature() const { return schedule_.temperature(); }
  const AnnealerConfig& config() const { return cfg_; }

 private:
  Network net_;
  AnnealerConfig cfg_;
  CoolingSchedule schedule_;
};

struct SearchTrace {
  std::vector<EpochRecord> epochs;
  Network final_net;
  bool solved = false;
};

// Random walk: every proposal is accepted unconditionally; never stops early.
SearchTrace random_walk(const Network& net0, const TaskSet& ts, int steps,
                        int t_max, std::uint64_t seed,
                        const InitPolicy& init = {});

// Full annealing run; stops early after cfg.stop_stable consecutive E = 0
// epochs (solved) or at cfg.max_epochs.
SearchTrace anneal(const Network& net0, const TaskSet& ts,
                   const AnnealerConfig& cfg, int t_max, std::uint64_t seed,
                   const InitPolicy& init = {});

// CSV with header epoch,E,T,accepted,coordinate.
std::string trace_to_csv(const std::vector<EpochRecord>& epochs);

}  // namespace bnn
