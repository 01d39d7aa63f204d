#pragma once

#include <cstdint>
#include <vector>

#include "bnn/network.hpp"
#include "bnn/task.hpp"

namespace bnn {

// How unclamped neurons are initialized before each pattern's relaxation.
// FixedMinusOne starts every free neuron at -1; SeededRandom draws them from
// a stream keyed by (seed, global pattern index), so repeated evaluations of
// the same pattern always see the same start state.
enum class InitKind { FixedMinusOne, SeededRandom };

struct InitPolicy {
  InitKind kind = InitKind::FixedMinusOne;
  std::uint64_t seed = 0;
};

// Builds the start state for one pattern of one task: the task's inputs are
// clamped to the pattern values, every other task's inputs are clamped to -1,
// and free neurons follow the init policy.
StateVector pattern_state(const TaskSet& ts, int task_index, int pattern_index,
                          const InitPolicy& init = {});

struct PatternReport {
  int task = 0;
  int pattern = 0;
  bool converged = false;
  int transient = 0;   // settling steps after the first synchronous update
  int orbit_len = 0;
  double mismatch = 0.0;  // mean squared output error over the orbit, in [0,4]
};

struct ErrorReport {
  double error = 0.0;
  bool failed = false;     // some pattern had no attractor within t_max
  int transient_worst = 0; // max settling transient over all patterns
  int orbit_worst = 0;
  std::vector<PatternReport> per_pattern;
};

// E = (1 / 4P) * sum over patterns of mismatch / 1  ... specifically
// mean_orbit((S_out - wanted)^2) / (4P) summed over patterns, plus
// transient_worst / 10.  A pattern that never reaches an attractor makes the
// whole evaluation fail with E = 10 * (number of tasks); remaining patterns
// are skipped.
//
// The transient counts settling steps after the first update: a start state
// whose successor is a fixed point has transient 0 even though the raw
// attractor transient is 1.  Without this the all-(-1) start could never
// yield E = 0 for any task wanting a +1 output.
ErrorReport evaluate(const Network& net, const TaskSet& ts, int t_max,
                     const InitPolicy& init = {});

double failure_error(const TaskSet& ts);  // 10 * number of tasks

}  // namespace bnn
