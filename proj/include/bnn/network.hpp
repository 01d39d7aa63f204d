#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace bnn {

using WeightMatrix = Eigen::MatrixXi;  // entries in {-1, 0, +1}
using IntVec = Eigen::VectorXi;
using RealVec = Eigen::VectorXd;
using BoolVec = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Threshold network: weights w_ij in {-1,0,+1} with zero diagonal, one real
// threshold per neuron in [0, 1].
struct Network {
  WeightMatrix weights;
  RealVec thresholds;

  int size() const { return static_cast<int>(thresholds.size()); }
};

// c_i = sum_j |w_ij|, the in-degree used to normalize the local field.
IntVec connectivity(const Network& net);

// Throws std::invalid_argument on shape mismatch, out-of-range weights or
// thresholds, or a nonzero diagonal.
void validate(const Network& net);

// Off-diagonal weights uniform over {-1,0,+1}, thresholds uniform in [0,1).
Network random_network(int n, std::uint64_t seed);

// Neuron states in {-1,+1} plus a clamp mask; clamped neurons never update.
struct StateVector {
  IntVec states;
  BoolVec clamped;

  int size() const { return static_cast<int>(states.size()); }
};

StateVector make_state(int n, int fill = -1);

// One synchronous update: s_i <- sgn(sum_j w_ij s_j / c_i - b_i) for every
// unclamped neuron, with sgn(0) = +1.  Isolated neurons (c_i = 0) relax to
// sgn(-b_i).
StateVector step(const Network& net, const StateVector& s);

// States s_0 .. s_steps inclusive.
std::vector<StateVector> trajectory(const Network& net, const StateVector& s0,
                                    int steps);

struct AttractorResult {
  bool converged = false;
  int transient = 0;                 // tau: steps before the orbit is entered
  int orbit_len = 0;                 // l: attractor period
  std::vector<StateVector> orbit;    // s_tau .. s_{tau+l-1}
  int steps_used = 0;                // tau + l when converged, else t_max
};

// Iterates until a state repeats (minimal tau and l) or t_max steps elapse.
AttractorResult run_to_attractor(const Network& net, const StateVector& s0,
                                 int t_max);

// min(2^(n - n_clamped), 4096): enough steps to guarantee convergence for
// small free-state spaces, capped for large ones.
int default_t_max(int n, int n_clamped);

// '+' / '-' per neuron, neuron 0 leftmost.
std::string state_to_string(const IntVec& states);
IntVec state_from_string(const std::string& text);

// Plain-text round trip: first line n, second line the n thresholds, then n
// weight rows.  Whitespace separated; doubles use shortest round-trip form.
std::string network_to_text(const Network& net);
Network network_from_text(const std::string& text);

}  // namespace bnn
