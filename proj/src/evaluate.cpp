#include "bnn/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

#include "bnn/rng.hpp"

namespace bnn {

StateVector pattern_state(const TaskSet& ts, int task_index, int pattern_index,
                          const InitPolicy& init) {
  if (task_index < 0 || task_index >= static_cast<int>(ts.tasks.size()))
    throw std::invalid_argument("pattern_state: bad task index");
  const Task& task = ts.tasks[task_index];
  if (pattern_index < 0 ||
      pattern_index >= static_cast<int>(task.patterns.size()))
    throw std::invalid_argument("pattern_state: bad pattern index");

  StateVector s = make_state(ts.n_neurons, -1);
  if (init.kind == InitKind::SeededRandom) {
    int global = pattern_index;
    for (int g = 0; g < task_index; ++g)
      global += static_cast<int>(ts.tasks[g].patterns.size());
    Rng rng(derive_seed(init.seed, static_cast<std::uint64_t>(global)));
    for (int i = 0; i < s.size(); ++i) s.states[i] = rng.coin() ? 1 : -1;
  }
  // Inputs of every task are clamped; only the active task carries pattern
  // values, the rest sit at -1 (absent).
  for (const Task& t : ts.tasks)
    for (int neuron : t.input_neurons) {
      s.states[neuron] = -1;
      s.clamped[neuron] = true;
    }
  const Pattern& pat = task.patterns[pattern_index];
  for (std::size_t j = 0; j < task.input_neurons.size(); ++j)
    s.states[task.input_neurons[j]] = pat.inputs[static_cast<int>(j)];
  return s;
}

double failure_error(const TaskSet& ts) {
  return 10.0 * static_cast<double>(ts.tasks.size());
}

ErrorReport evaluate(const Network& net, const TaskSet& ts, int t_max,
                     const InitPolicy& init) {
  if (net.size() != ts.n_neurons)
    throw std::invalid_argument("evaluate: network/task-set size mismatch");
  const int P = ts.total_patterns();
  ErrorReport report;
  double hamming = 0.0;

  for (std::size_t g = 0; g < ts.tasks.size(); ++g) {
    const Task& task = ts.tasks[g];
    for (std::size_t p = 0; p < task.patterns.size(); ++p) {
      const StateVector s0 =
          pattern_state(ts, static_cast<int>(g), static_cast<int>(p), init);
      const AttractorResult res = run_to_attractor(net, s0, t_max);

      PatternReport pr;
      pr.task = static_cast<int>(g);
      pr.pattern = static_cast<int>(p);
      pr.converged = res.converged;
      if (!res.converged) {
        report.per_pattern.push_back(pr);
        report.failed = true;
        report.error = failure_error(ts);
        return report;  // remaining patterns are irrelevant to E
      }
      pr.transient = std::max(res.transient - 1, 0);
      pr.orbit_len = res.orbit_len;
      const int wanted = task.patterns[p].wanted;
      double sq = 0.0;
      for (const StateVector& s : res.orbit) {
        const double d = s.states[task.output_neuron] - wanted;
        sq += d * d;
      }
      pr.mismatch = sq / res.orbit_len;
      report.per_pattern.push_back(pr);

      hamming += pr.mismatch / (4.0 * P);
      report.transient_worst = std::max(report.transient_worst, pr.transient);
      report.orbit_worst = std::max(report.orbit_worst, pr.orbit_len);
    }
  }
  report.error = hamming + report.transient_worst / 10.0;
  return report;
}

}  // namespace bnn
