#include "bnn/optimize.hpp"

#include <cmath>
#include <stdexcept>

#include "bnn/textio.hpp"

namespace bnn {

PerturbationKernel make_kernel(int n_neurons,
                               const std::vector<int>& input_neurons) {
  std::vector<bool> is_input(n_neurons, false);
  for (int i : input_neurons) {
    if (i < 0 || i >= n_neurons)
      throw std::invalid_argument("kernel: input neuron out of range");
    is_input[i] = true;
  }
  PerturbationKernel kernel;
  kernel.n_neurons = n_neurons;
  const std::int64_t n = n_neurons;
  for (int i = 0; i < n_neurons; ++i) {
    if (is_input[i]) continue;
    for (int j = 0; j < n_neurons; ++j)
      if (j != i) kernel.coords.push_back(i * n + j);
    kernel.coords.push_back(n * n + i);
  }
  if (kernel.coords.empty())
    throw std::invalid_argument("kernel: no mutable coordinates");
  return kernel;
}

std::pair<Network, std::int64_t> propose(const PerturbationKernel& kernel,
                                         const Network& net, Rng& rng) {
  if (net.size() != kernel.n_neurons)
    throw std::invalid_argument("propose: kernel built for a different size");
  const std::int64_t coord =
      kernel.coords[rng.below(kernel.coords.size())];
  Network out = net;
  const std::int64_t n = kernel.n_neurons;
  if (coord < n * n) {
    const int i = static_cast<int>(coord / n);
    const int j = static_cast<int>(coord % n);
    out.weights(i, j) = rng.ternary_excluding(out.weights(i, j));
  } else {
    out.thresholds[static_cast<int>(coord - n * n)] = rng.unit();
  }
  return {std::move(out), coord};
}

bool metropolis_accept(double delta_e, double temperature, Rng& rng) {
  if (!(temperature > 0.0))
    throw std::invalid_argument("metropolis: temperature must be positive");
  if (delta_e < 0.0) return true;
  // unit() < 1 always holds, so delta_e = 0 is accepted with certainty.
  return rng.unit() < std::exp(-delta_e / temperature);
}

void validate(const AnnealerConfig& cfg) {
  if (!(cfg.t0 > 0.0)) throw std::invalid_argument("annealer: t0 must be > 0");
  if (!(cfg.cooling_ratio > 0.0 && cfg.cooling_ratio < 1.0))
    throw std::invalid_argument("annealer: cooling_ratio must be in (0, 1)");
  if (cfg.ap_window < 1)
    throw std::invalid_argument("annealer: ap_window must be >= 1");
  if (!(0.0 <= cfg.ap_band_lo && cfg.ap_band_lo <= cfg.ap_band_hi &&
        cfg.ap_band_hi <= 1.0))
    throw std::invalid_argument("annealer: need 0 <= band_lo <= band_hi <= 1");
  if (cfg.stop_stable < 1)
    throw std::invalid_argument("annealer: stop_stable must be >= 1");
  if (cfg.max_epochs < 0)
    throw std::invalid_argument("annealer: max_epochs must be >= 0");
}

CoolingSchedule::CoolingSchedule(double t0, double ratio, int window,
                                 double band_lo, double band_hi)
    : temperature_(t0),
      ratio_(ratio),
      window_(window),
      band_lo_(band_lo),
      band_hi_(band_hi) {
  if (!(t0 > 0.0) || !(ratio > 0.0 && ratio < 1.0) || window < 1 ||
      !(0.0 <= band_lo && band_lo <= band_hi && band_hi <= 1.0))
    throw std::invalid_argument("cooling schedule: bad parameters");
}

bool CoolingSchedule::record(bool accepted) {
  ++seen_;
  if (accepted) ++accepted_;
  if (seen_ < window_) return false;
  const double rate = static_cast<double>(accepted_) / window_;
  seen_ = 0;
  accepted_ = 0;
  if (rate >= band_lo_ && rate <= band_hi_) {
    temperature_ *= ratio_;
    ++cooling_steps_;
    return true;
  }
  return false;
}

Annealer::Annealer(Network net, const AnnealerConfig& cfg)
    : net_(std::move(net)),
      cfg_(cfg),
      schedule_(cfg.t0, cfg.cooling_ratio, cfg.ap_window, cfg.ap_band_lo,
                cfg.ap_band_hi) {
  bnn::validate(cfg_);
  bnn::validate(net_);
}

Annealer::RunStats Annealer::run(const TaskSet& ts, int epochs, int t_max,
                                 Rng& rng, const InitPolicy& init,
                                 std::vector<EpochRecord>* trace,
                                 int epoch_offset) {
  const PerturbationKernel kernel =
      make_kernel(net_.size(), ts.all_input_neurons());
  double error = evaluate(net_, ts, t_max, init).error;

  RunStats stats;
  int zero_streak = 0;
  for (int e = 1; e <= epochs; ++e) {
    auto [candidate, coord] = propose(kernel, net_, rng);
    const double cand_error = evaluate(candidate, ts, t_max, init).error;
    const double used_t = schedule_.temperature();
    const bool accepted = metropolis_accept(cand_error - error, used_t, rng);
    if (accepted) {
      net_ = std::move(candidate);
      error = cand_error;
      ++stats.accepted;
    }
    schedule_.record(accepted);
    ++stats.epochs;
    if (trace)
      trace->push_back({epoch_offset + e, error, used_t, accepted, coord});
    zero_streak = error == 0.0 ? zero_streak + 1 : 0;
    if (zero_streak >= cfg_.stop_stable) {
      stats.stabilized = true;
      break;
    }
  }
  stats.final_error = error;
  return stats;
}

SearchTrace random_walk(const Network& net0, const TaskSet& ts, int steps,
                        int t_max, std::uint64_t seed,
                        const InitPolicy& init) {
  validate(net0);
  const PerturbationKernel kernel =
      make_kernel(net0.size(), ts.all_input_neurons());
  Rng rng(seed);
  SearchTrace trace;
  trace.final_net = net0;
  bool hit_zero = false;
  for (int e = 1; e <= steps; ++e) {
    auto [candidate, coord] = propose(kernel, trace.final_net, rng);
    const double error = evaluate(candidate, ts, t_max, init).error;
    trace.final_net = std::move(candidate);
    trace.epochs.push_back({e, error, 0.0, true, coord});
    if (error == 0.0) hit_zero = true;
  }
  trace.solved = hit_zero;
  return trace;
}

SearchTrace anneal(const Network& net0, const TaskSet& ts,
                   const AnnealerConfig& cfg, int t_max, std::uint64_t seed,
                   const InitPolicy& init) {
  Annealer annealer(net0, cfg);
  Rng rng(seed);
  SearchTrace trace;
  const Annealer::RunStats stats =
      annealer.run(ts, cfg.max_epochs, t_max, rng, init, &trace.epochs);
  trace.final_net = annealer.network();
  trace.solved = stats.stabilized;
  return trace;
}

std::string trace_to_csv(const std::vector<EpochRecord>& epochs) {
  std::string out = "epoch,E,T,accepted,coordinate\n";
  for (const EpochRecord& r : epochs) {
    out += fmt(r.epoch);
    out += ',';
    out += fmt(r.error);
    out += ',';
    out += fmt(r.temperature);
    out += ',';
    out += r.accepted ? '1' : '0';
    out += ',';
    out += fmt(r.coordinate);
    out += '\n';
  }
  return out;
}

}  // namespace bnn
