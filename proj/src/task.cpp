#include "bnn/task.hpp"

#include <algorithm>
#include <stdexcept>

#include "bnn/textio.hpp"

namespace bnn {

void validate(const TruthTable& table) {
  if (table.arity < 1 || table.arity > 16)
    throw std::invalid_argument("truth table: arity must be in [1, 16]");
  if (table.outputs.size() != (1u << table.arity))
    throw std::invalid_argument("truth table: needs exactly 2^arity outputs");
  for (int v : table.outputs)
    if (v != -1 && v != 1)
      throw std::invalid_argument("truth table: outputs must be -1 or +1");
}

TaskSpec builtin_task(const std::string& name, int arity) {
  if (arity < 1 || arity > 16)
    throw std::invalid_argument("builtin task: arity must be in [1, 16]");
  TruthTable table;
  table.arity = arity;
  const int rows = 1 << arity;
  table.outputs.resize(rows);
  for (int p = 0; p < rows; ++p) {
    const int ones = __builtin_popcount(static_cast<unsigned>(p));
    int v;
    if (name == "AND")
      v = ones == arity ? 1 : -1;
    else if (name == "OR")
      v = ones > 0 ? 1 : -1;
    else if (name == "NAND")
      v = ones == arity ? -1 : 1;
    else if (name == "XOR")
      v = (ones & 1) ? 1 : -1;
    else
      throw std::invalid_argument("unknown task name: '" + name + "'");
    table.outputs[p] = v;
  }
  return TaskSpec{name + ":" + fmt(arity), table};
}

TaskSpec truth_table_from_csv(const std::string& label,
                              const std::string& csv_text) {
  std::vector<std::vector<int>> rows;
  int lineno = 0;
  for (const std::string& raw : split(csv_text, '\n')) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    std::vector<int> row;
    for (const std::string& cell : split(line, ',')) {
      const std::int64_t v = parse_int(cell);
      if (v != -1 && v != 1)
        throw std::invalid_argument("truth table csv line " + fmt(lineno) +
                                    ": entries must be -1 or +1");
      row.push_back(static_cast<int>(v));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("truth table csv line " + fmt(lineno) +
                                  ": inconsistent column count");
    if (row.size() < 2)
      throw std::invalid_argument("truth table csv line " + fmt(lineno) +
                                  ": need at least one input column");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("truth table csv: empty");

  const int arity = static_cast<int>(rows.front().size()) - 1;
  TruthTable table;
  table.arity = arity;
  table.outputs.assign(1u << arity, 0);
  std::vector<bool> seen(1u << arity, false);
  for (const auto& row : rows) {
    int code = 0;
    for (int j = 0; j < arity; ++j)
      if (row[j] == 1) code |= 1 << (arity - 1 - j);
    if (seen[code])
      throw std::invalid_argument("truth table csv: duplicate pattern");
    seen[code] = true;
    table.outputs[code] = row.back();
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("truth table csv: missing pattern");
  validate(table);
  return TaskSpec{label, table};
}

int TaskSet::total_patterns() const {
  int p = 0;
  for (const auto& t : tasks) p += static_cast<int>(t.patterns.size());
  return p;
}

std::vector<int> TaskSet::all_input_neurons() const {
  std::vector<int> out;
  for (const auto& t : tasks)
    out.insert(out.end(), t.input_neurons.begin(), t.input_neurons.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> TaskSet::output_neurons() const {
  std::vector<int> out;
  for (const auto& t : tasks) out.push_back(t.output_neuron);
  return out;
}

TaskSet make_task_set(const std::vector<TaskSpec>& specs, int n_neurons) {
  if (specs.empty()) throw std::invalid_argument("task set: no tasks");
  int needed = static_cast<int>(specs.size());
  for (const auto& s : specs) {
    validate(s.table);
    needed += s.table.arity;
  }
  if (needed > n_neurons)
    throw std::invalid_argument(
        "task set: " + fmt(needed) + " input/output neurons needed but only " +
        fmt(n_neurons) + " available");

  TaskSet ts;
  ts.n_neurons = n_neurons;
  int next_input = 0;
  const int first_output = n_neurons - static_cast<int>(specs.size());
  for (std::size_t g = 0; g < specs.size(); ++g) {
    const TaskSpec& spec = specs[g];
    Task task;
    task.label = spec.label;
    for (int j = 0; j < spec.table.arity; ++j)
      task.input_neurons.push_back(next_input++);
    task.output_neuron = first_output + static_cast<int>(g);
    const int rows = 1 << spec.table.arity;
    for (int p = 0; p < rows; ++p) {
      Pattern pat;
      pat.inputs.resize(spec.table.arity);
      for (int j = 0; j < spec.table.arity; ++j)
        pat.inputs[j] = (p >> (spec.table.arity - 1 - j)) & 1 ? 1 : -1;
      pat.wanted = spec.table.outputs[p];
      task.patterns.push_back(std::move(pat));
    }
    ts.tasks.push_back(std::move(task));
  }
  return ts;
}

}  // namespace bnn
