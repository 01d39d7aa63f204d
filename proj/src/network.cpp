#include "bnn/network.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "bnn/rng.hpp"
#include "bnn/textio.hpp"

namespace bnn {

IntVec connectivity(const Network& net) {
  return net.weights.cwiseAbs().rowwise().sum();
}

void validate(const Network& net) {
  const int n = net.size();
  if (net.weights.rows() != n || net.weights.cols() != n)
    throw std::invalid_argument("network: weight matrix must be n x n");
  for (int i = 0; i < n; ++i) {
    if (net.weights(i, i) != 0)
      throw std::invalid_argument("network: diagonal weights must be zero");
    for (int j = 0; j < n; ++j)
      if (net.weights(i, j) < -1 || net.weights(i, j) > 1)
        throw std::invalid_argument("network: weights must lie in {-1,0,+1}");
    if (!(net.thresholds[i] >= 0.0 && net.thresholds[i] <= 1.0))
      throw std::invalid_argument("network: thresholds must lie in [0,1]");
  }
}

Network random_network(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("network: n must be positive");
  Rng rng(seed);
  Network net;
  net.weights.setZero(n, n);
  net.thresholds.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) net.weights(i, j) = rng.ternary();
  for (int i = 0; i < n; ++i) net.thresholds[i] = rng.unit();
  return net;
}

StateVector make_state(int n, int fill) {
  StateVector s;
  s.states = IntVec::Constant(n, fill);
  s.clamped = BoolVec::Constant(n, false);
  return s;
}

namespace {

void check_state(const Network& net, const StateVector& s) {
  if (s.size() != net.size() || s.clamped.size() != net.size())
    throw std::invalid_argument("state size does not match network");
  for (int i = 0; i < s.size(); ++i)
    if (s.states[i] != 1 && s.states[i] != -1)
      throw std::invalid_argument("states must be -1 or +1");
}

void step_into(const Network& net, const IntVec& c, const StateVector& in,
               StateVector& out) {
  out.states.noalias() = net.weights * in.states;
  for (int i = 0; i < in.size(); ++i) {
    if (in.clamped[i]) {
      out.states[i] = in.states[i];
      continue;
    }
    const double field =
        (c[i] != 0 ? static_cast<double>(out.states[i]) / c[i] : 0.0) -
        net.thresholds[i];
    out.states[i] = field >= 0.0 ? 1 : -1;
  }
}

// Packs a {-1,+1} state into bits; states used with attractor search are
// limited to 64 neurons, which is far beyond any simulated size here.
std::uint64_t pack_state(const IntVec& states) {
  std::uint64_t key = 0;
  for (int i = 0; i < states.size(); ++i)
    if (states[i] > 0) key |= 1ull << i;
  return key;
}

}  // namespace

StateVector step(const Network& net, const StateVector& s) {
  check_state(net, s);
  const IntVec c = connectivity(net);
  StateVector out = s;
  step_into(net, c, s, out);
  return out;
}

std::vector<StateVector> trajectory(const Network& net, const StateVector& s0,
                                    int steps) {
  check_state(net, s0);
  if (steps < 0) throw std::invalid_argument("trajectory: steps must be >= 0");
  const IntVec c = connectivity(net);
  std::vector<StateVector> out;
  out.reserve(steps + 1);
  out.push_back(s0);
  for (int t = 0; t < steps; ++t) {
    StateVector next = out.back();
    step_into(net, c, out.back(), next);
    out.push_back(std::move(next));
  }
  return out;
}

AttractorResult run_to_attractor(const Network& net, const StateVector& s0,
                                 int t_max) {
  check_state(net, s0);
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  if (s0.size() > 64)
    throw std::invalid_argument("attractor search supports at most 64 neurons");
  const IntVec c = connectivity(net);

  std::vector<StateVector> traj;
  traj.reserve(t_max + 1);
  traj.push_back(s0);
  std::unordered_map<std::uint64_t, int> seen;
  seen.emplace(pack_state(s0.states), 0);

  AttractorResult res;
  for (int t = 1; t <= t_max; ++t) {
    StateVector next = traj.back();
    step_into(net, c, traj.back(), next);
    const std::uint64_t key = pack_state(next.states);
    auto it = seen.find(key);
    if (it != seen.end()) {
      // First repeat ever seen, so both the transient and the period are
      // minimal.
      res.converged = true;
      res.transient = it->second;
      res.orbit_len = t - it->second;
      res.steps_used = t;
      res.orbit.assign(traj.begin() + it->second, traj.end());
      return res;
    }
    seen.emplace(key, t);
    traj.push_back(std::move(next));
  }
  res.steps_used = t_max;
  return res;
}

int default_t_max(int n, int n_clamped) {
  const int free_bits = n - n_clamped;
  if (free_bits < 0) throw std::invalid_argument("more clamped neurons than neurons");
  if (free_bits >= 12) return 4096;
  return 1 << free_bits;
}

std::string state_to_string(const IntVec& states) {
  std::string out(states.size(), '-');
  for (int i = 0; i < states.size(); ++i)
    if (states[i] > 0) out[i] = '+';
  return out;
}

IntVec state_from_string(const std::string& text) {
  IntVec s(static_cast<int>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '+')
      s[static_cast<int>(i)] = 1;
    else if (text[i] == '-')
      s[static_cast<int>(i)] = -1;
    else
      throw std::invalid_argument("state string must contain only '+'/'-'");
  }
  return s;
}

std::string network_to_text(const Network& net) {
  validate(net);
  const int n = net.size();
  std::string out = fmt(n) + "\n";
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += fmt(net.thresholds[i]);
  }
  out += '\n';
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out += ' ';
      out += fmt(net.weights(i, j));
    }
    out += '\n';
  }
  return out;
}

Network network_from_text(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  if (!(in >> n) || n < 1)
    throw std::invalid_argument("network text: bad neuron count");
  Network net;
  net.thresholds.resize(n);
  net.weights.resize(n, n);
  for (int i = 0; i < n; ++i)
    if (!(in >> net.thresholds[i]))
      throw std::invalid_argument("network text: bad threshold");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(in >> net.weights(i, j)))
        throw std::invalid_argument("network text: bad weight");
  std::string rest;
  if (in >> rest)
    throw std::invalid_argument("network text: trailing content");
  validate(net);
  return net;
}

}  // namespace bnn
