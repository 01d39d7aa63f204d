#pragma once

#include <string>
#include <vector>

#include "bnn/network.hpp"

namespace bnn {

// Complete truth table over k inputs.  outputs[p] is the wanted value (-1 or
// +1) for pattern code p, where input j carries bit (k-1-j) of p mapped
// false -> -1, true -> +1 (so p = 0 is all -1, p = 2^k - 1 is all +1).
struct TruthTable {
  int arity = 0;
  std::vector<int> outputs;
};

void validate(const TruthTable& table);

// One named Boolean function to be learned.
struct TaskSpec {
  std::string label;
  TruthTable table;
};

// Builtin families, any arity >= 1: AND, OR, NAND, XOR (XOR = odd parity).
TaskSpec builtin_task(const std::string& name, int arity);

// Rows "b_1,...,b_k,wanted" with entries -1/+1, no header, one row per
// pattern; rows may be in any order but must cover every pattern exactly once.
TaskSpec truth_table_from_csv(const std::string& label,
                              const std::string& csv_text);

struct Pattern {
  IntVec inputs;  // values for the task's input neurons, in order
  int wanted = 0; // value the output neuron must hold on the attractor
};

struct Task {
  std::string label;
  std::vector<int> input_neurons;
  int output_neuron = 0;
  std::vector<Pattern> patterns;
};

struct TaskSet {
  int n_neurons = 0;
  std::vector<Task> tasks;

  int total_patterns() const;
  std::vector<int> all_input_neurons() const;  // ascending
  std::vector<int> output_neurons() const;
};

// Lays tasks onto a network of n neurons: input blocks first (task order),
// output neurons are the last tasks.size() indices.  Throws if the blocks do
// not fit.
TaskSet make_task_set(const std::vector<TaskSpec>& specs, int n_neurons);

}  // namespace bnn
