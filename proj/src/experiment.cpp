#include "bnn/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <stdexcept>

#include "bnn/svg.hpp"
#include "bnn/textio.hpp"

namespace bnn {

namespace {

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Dynamics: return "dynamics";
    case ExperimentKind::RandomWalk: return "randomwalk";
    case ExperimentKind::Anneal: return "anneal";
    case ExperimentKind::Sweep: return "sweep";
    case ExperimentKind::Igt: return "igt";
  }
  throw std::logic_error("unreachable");
}

ExperimentKind kind_from(const std::string& s) {
  for (ExperimentKind k :
       {ExperimentKind::Dynamics, ExperimentKind::RandomWalk,
        ExperimentKind::Anneal, ExperimentKind::Sweep, ExperimentKind::Igt})
    if (kind_name(k) == s) return k;
  throw std::invalid_argument("unknown experiment kind: '" + s + "'");
}

std::string init_name(InitKind k) {
  return k == InitKind::FixedMinusOne ? "fixed" : "random";
}

InitKind init_from(const std::string& s) {
  if (s == "fixed") return InitKind::FixedMinusOne;
  if (s == "random") return InitKind::SeededRandom;
  throw std::invalid_argument("init must be 'fixed' or 'random', got '" + s +
                              "'");
}

std::string axis_name(SweepAxis a) {
  return a == SweepAxis::Tasks ? "tasks" : "neurons";
}

SweepAxis axis_from(const std::string& s) {
  if (s == "tasks") return SweepAxis::Tasks;
  if (s == "neurons") return SweepAxis::Neurons;
  throw std::invalid_argument("sweep_axis must be 'tasks' or 'neurons', got '" +
                              s + "'");
}

std::string input_code_name(InputCode c) {
  switch (c) {
    case InputCode::PrevChoice: return "prev_choice";
    case InputCode::Constant: return "constant";
    case InputCode::PrevPayoffSign: return "prev_payoff_sign";
  }
  throw std::logic_error("unreachable");
}

InputCode input_code_from(const std::string& s) {
  for (InputCode c : {InputCode::PrevChoice, InputCode::Constant,
                      InputCode::PrevPayoffSign})
    if (input_code_name(c) == s) return c;
  throw std::invalid_argument("unknown igt_input: '" + s + "'");
}

int to_int(const std::string& v) { return static_cast<int>(parse_int(v)); }

}  // namespace

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  if (kind == ExperimentKind::Igt) {
    cfg.n_neurons = 5;
    cfg.t0 = 0.2;
  } else if (kind == ExperimentKind::Sweep) {
    cfg.t0 = 0.5;
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& text,
                              const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  for (const auto& [key, value] : parse_kv(text)) {
    if (key == "kind") cfg.kind = kind_from(value);
    else if (key == "seed") cfg.seed = parse_uint(value);
    else if (key == "runs") cfg.runs = to_int(value);
    else if (key == "out") cfg.out_dir = value;
    else if (key == "n_neurons") cfg.n_neurons = to_int(value);
    else if (key == "tasks") cfg.tasks = value;
    else if (key == "t_max") cfg.t_max = to_int(value);
    else if (key == "init") cfg.init = init_from(value);
    else if (key == "epochs") cfg.epochs = to_int(value);
    else if (key == "t0") cfg.t0 = parse_double(value);
    else if (key == "cooling_ratio") cfg.cooling_ratio = parse_double(value);
    else if (key == "ap_window") cfg.ap_window = to_int(value);
    else if (key == "ap_band_lo") cfg.ap_band_lo = parse_double(value);
    else if (key == "ap_band_hi") cfg.ap_band_hi = parse_double(value);
    else if (key == "stop_stable") cfg.stop_stable = to_int(value);
    else if (key == "steps") cfg.steps = to_int(value);
    else if (key == "sweep_axis") cfg.sweep_axis = axis_from(value);
    else if (key == "sweep_values") cfg.sweep_values = value;
    else if (key == "trials") cfg.trials = to_int(value);
    else if (key == "proposals_per_trial")
      cfg.proposals_per_trial = to_int(value);
    else if (key == "decks") cfg.decks = value;
    else if (key == "igt_input") cfg.igt_input = input_code_from(value);
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  return cfg;
}

std::string config_to_text(const ExperimentConfig& cfg) {
  std::string out;
  auto kv = [&out](const std::string& k, const std::string& v) {
    out += k + " = " + v + "\n";
  };
  kv("kind", kind_name(cfg.kind));
  kv("seed", fmt(cfg.seed));
  kv("runs", fmt(cfg.runs));
  kv("out", cfg.out_dir);
  kv("n_neurons", fmt(cfg.n_neurons));
  kv("tasks", cfg.tasks);
  kv("t_max", fmt(cfg.t_max));
  kv("init", init_name(cfg.init));
  kv("epochs", fmt(cfg.epochs));
  kv("t0", fmt(cfg.t0));
  kv("cooling_ratio", fmt(cfg.cooling_ratio));
  kv("ap_window", fmt(cfg.ap_window));
  kv("ap_band_lo", fmt(cfg.ap_band_lo));
  kv("ap_band_hi", fmt(cfg.ap_band_hi));
  kv("stop_stable", fmt(cfg.stop_stable));
  kv("steps", fmt(cfg.steps));
  kv("sweep_axis", axis_name(cfg.sweep_axis));
  kv("sweep_values", cfg.sweep_values);
  kv("trials", fmt(cfg.trials));
  kv("proposals_per_trial", fmt(cfg.proposals_per_trial));
  kv("decks", cfg.decks);
  kv("igt_input", input_code_name(cfg.igt_input));
  return out;
}

std::vector<TaskSpec> parse_task_list(const std::string& spec) {
  std::vector<TaskSpec> out;
  for (const std::string& raw : split(spec, ',')) {
    const std::string item = trim(raw);
    if (item.empty())
      throw std::invalid_argument("task list: empty entry in '" + spec + "'");
    if (item.rfind("csv:", 0) == 0) {
      const std::string path = item.substr(4);
      out.push_back(truth_table_from_csv(
          std::filesystem::path(path).stem().string(), read_file(path)));
      continue;
    }
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("task '" + item +
                                  "': expected NAME:ARITY or csv:PATH");
    out.push_back(builtin_task(item.substr(0, colon),
                               to_int(item.substr(colon + 1))));
  }
  if (out.empty()) throw std::invalid_argument("task list: empty");
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  for (const std::string& raw : split(spec, ','))
    out.push_back(to_int(raw));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

AnnealerConfig annealer_config(const ExperimentConfig& cfg) {
  AnnealerConfig a;
  a.t0 = cfg.t0;
  a.cooling_ratio = cfg.cooling_ratio;
  a.ap_window = cfg.ap_window;
  a.ap_band_lo = cfg.ap_band_lo;
  a.ap_band_hi = cfg.ap_band_hi;
  a.stop_stable = cfg.stop_stable;
  a.max_epochs = cfg.epochs;
  validate(a);
  return a;
}

IgtConfig igt_config(const ExperimentConfig& cfg) {
  IgtConfig c;
  c.trials = cfg.trials;
  c.proposals_per_trial = cfg.proposals_per_trial;
  c.n_neurons = cfg.n_neurons;
  c.t_max = cfg.t_max;
  c.input_code = cfg.igt_input;
  c.annealer = annealer_config(cfg);
  validate(c);
  return c;
}

std::uint64_t run_seed(const ExperimentConfig& cfg, int run) {
  return derive_seed(cfg.seed, static_cast<std::uint64_t>(run));
}

std::vector<TaskSpec> sweep_task_list(int n) {
  static const char* kNames[] = {"AND", "OR", "NAND", "XOR"};
  if (n < 1 || n > 4)
    throw std::invalid_argument("task-count sweep supports 1..4 tasks");
  std::vector<TaskSpec> out;
  for (int i = 0; i < n; ++i) out.push_back(builtin_task(kNames[i], 2));
  return out;
}

namespace {

std::string prepare_out(const ExperimentConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  std::filesystem::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/config.txt", config_to_text(cfg));
  return cfg.out_dir + "/";
}

std::string run_tag(int run, int runs) {
  std::string digits = fmt(std::max(runs - 1, 0));
  std::string s = fmt(run);
  const std::size_t width = std::max<std::size_t>(2, digits.size());
  while (s.size() < width) s.insert(s.begin(), '0');
  return "run" + s;
}

int resolved_t_max(const ExperimentConfig& cfg, const TaskSet& ts) {
  if (cfg.t_max > 0) return cfg.t_max;
  return default_t_max(ts.n_neurons,
                       static_cast<int>(ts.all_input_neurons().size()));
}

InitPolicy run_init(const ExperimentConfig& cfg, std::uint64_t rs) {
  return InitPolicy{cfg.init, derive_seed(rs, 2)};
}

std::string raster_csv(const std::vector<StateVector>& columns) {
  std::string out;
  if (columns.empty()) return out;
  const int n = columns.front().size();
  for (int i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < columns.size(); ++t) {
      if (t) out += ',';
      out += fmt(columns[t].states[i]);
    }
    out += '\n';
  }
  return out;
}

// Mean of the runs' E curves, each padded to the longest with its final value.
std::vector<double> padded_mean(const std::vector<std::vector<double>>& curves) {
  std::size_t longest = 0;
  for (const auto& c : curves) longest = std::max(longest, c.size());
  std::vector<double> mean(longest, 0.0);
  for (const auto& c : curves)
    for (std::size_t i = 0; i < longest; ++i)
      mean[i] += i < c.size() ? c[i] : c.back();
  for (double& v : mean) v /= static_cast<double>(curves.size());
  return mean;
}

std::vector<double> errors_of(const SearchTrace& trace) {
  std::vector<double> out;
  out.reserve(trace.epochs.size());
  for (const EpochRecord& r : trace.epochs) out.push_back(r.error);
  return out;
}

int first_zero_epoch(const SearchTrace& trace) {
  for (const EpochRecord& r : trace.epochs)
    if (r.error == 0.0) return r.epoch;
  return -1;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

int cmd_dynamics(const ExperimentConfig& cfg) {
  const std::string out = prepare_out(cfg);
  const TaskSet ts = make_task_set(parse_task_list(cfg.tasks), cfg.n_neurons);
  const int t_max = resolved_t_max(cfg, ts);
  const AnnealerConfig acfg = annealer_config(cfg);
  // The richest pattern of the first task (all inputs +1) makes the clearest
  // raster: the trained network must flip its output away from the start
  // state.
  const int shown_pattern =
      static_cast<int>(ts.tasks.front().patterns.size()) - 1;

  for (int r = 0; r < cfg.runs; ++r) {
    const std::uint64_t rs = run_seed(cfg, r);
    const InitPolicy init = run_init(cfg, rs);
    const Network net0 = random_network(cfg.n_neurons, derive_seed(rs, 0));
    const StateVector s0 = pattern_state(ts, 0, shown_pattern, init);
    const std::string tag = out + run_tag(r, cfg.runs);

    const SearchTrace trained =
        anneal(net0, ts, acfg, t_max, derive_seed(rs, 1), init);

    const Network* nets[2] = {&net0, &trained.final_net};
    const char* names[2] = {"before", "after"};
    for (int k = 0; k < 2; ++k) {
      const Network& net = *nets[k];
      const std::string name = names[k];
      const AttractorResult res = run_to_attractor(net, s0, t_max);
      const int t_meas = res.converged ? res.steps_used : t_max;
      const std::vector<StateVector> cols = trajectory(net, s0, t_meas);
      write_file(tag + "_" + name + ".csv", raster_csv(cols));
      write_file(tag + "_" + name + ".svg",
                 svg_raster("states over time (" + name + ")", cols));
      write_file(tag + "_net_" + name + ".txt", network_to_text(net));
    }
    write_file(tag + "_train.csv", trace_to_csv(trained.epochs));
  }
  return 0;
}

int cmd_randomwalk(const ExperimentConfig& cfg) {
  const std::string out = prepare_out(cfg);
  if (cfg.steps < 1) throw std::invalid_argument("steps must be >= 1");
  const TaskSet ts = make_task_set(parse_task_list(cfg.tasks), cfg.n_neurons);
  const int t_max = resolved_t_max(cfg, ts);

  std::string summary = "run,seed,steps,zero_hits,min_E\n";
  for (int r = 0; r < cfg.runs; ++r) {
    const std::uint64_t rs = run_seed(cfg, r);
    const Network net0 = random_network(cfg.n_neurons, derive_seed(rs, 0));
    const SearchTrace walk = random_walk(net0, ts, cfg.steps, t_max,
                                         derive_seed(rs, 1), run_init(cfg, rs));
    const std::string tag = run_tag(r, cfg.runs);
    write_file(out + tag + "_trace.csv", trace_to_csv(walk.epochs));
    int zero_hits = 0;
    double min_e = walk.epochs.front().error;
    for (const EpochRecord& rec : walk.epochs) {
      if (rec.error == 0.0) ++zero_hits;
      min_e = std::min(min_e, rec.error);
    }
    summary += fmt(r) + ',' + fmt(rs) + ',' + fmt(cfg.steps) + ',' +
               fmt(zero_hits) + ',' + fmt(min_e) + '\n';
    if (r == 0)
      write_file(out + tag + "_trace.svg",
                 svg_line_chart("random walk", "step", "E",
                                {{"E", "#2c5aa0", errors_of(walk)}}, 1.0,
                                true));
  }
  write_file(out + "summary.csv", summary);
  return 0;
}

int cmd_anneal(const ExperimentConfig& cfg) {
  const std::string out = prepare_out(cfg);
  const TaskSet ts = make_task_set(parse_task_list(cfg.tasks), cfg.n_neurons);
  const int t_max = resolved_t_max(cfg, ts);
  const AnnealerConfig acfg = annealer_config(cfg);

  std::string summary = "run,seed,solved,epochs,first_zero_epoch,final_E\n";
  std::vector<std::vector<double>> curves;
  for (int r = 0; r < cfg.runs; ++r) {
    const std::uint64_t rs = run_seed(cfg, r);
    const Network net0 = random_network(cfg.n_neurons, derive_seed(rs, 0));
    const SearchTrace trace =
        anneal(net0, ts, acfg, t_max, derive_seed(rs, 1), run_init(cfg, rs));
    const std::string tag = run_tag(r, cfg.runs);
    write_file(out + tag + "_trace.csv", trace_to_csv(trace.epochs));
    write_file(out + tag + "_net.txt", network_to_text(trace.final_net));
    summary += fmt(r) + ',' + fmt(rs) + ',' + (trace.solved ? "1" : "0") +
               ',' + fmt(static_cast<int>(trace.epochs.size())) + ',' +
               fmt(first_zero_epoch(trace)) + ',' +
               fmt(trace.epochs.back().error) + '\n';
    curves.push_back(errors_of(trace));
    if (r == 0)
      write_file(out + tag + "_trace.svg",
                 svg_line_chart("annealing", "epoch", "E",
                                {{"E", "#2c5aa0", curves.back()}}, 1.0, true));
  }
  write_file(out + "summary.csv", summary);

  const std::vector<double> mean = padded_mean(curves);
  std::string mean_csv = "epoch,mean_E\n";
  for (std::size_t i = 0; i < mean.size(); ++i)
    mean_csv += fmt(static_cast<int>(i) + 1) + ',' + fmt(mean[i]) + '\n';
  write_file(out + "mean_e.csv", mean_csv);
  write_file(out + "mean_e.svg",
             svg_line_chart("mean E over runs", "epoch", "mean E",
                            {{"mean E", "#2c5aa0", mean}}, 1.0, false));
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  const std::string out = prepare_out(cfg);
  const std::vector<int> values = parse_int_list(cfg.sweep_values);
  const AnnealerConfig acfg = annealer_config(cfg);
  static const char* kPalette[] = {"#2c5aa0", "#c0392b", "#27ae60",
                                   "#8e44ad", "#d35400", "#16a085"};

  std::string runs_csv = "label,run,seed,solved,epochs,first_zero_epoch,final_E\n";
  std::string summary = "label,runs,solved,median_epochs_to_zero,mean_final_E\n";
  std::vector<Series> mean_series;
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    const int v = values[vi];
    TaskSet ts;
    std::string label;
    if (cfg.sweep_axis == SweepAxis::Tasks) {
      label = "n" + fmt(v);
      ts = make_task_set(sweep_task_list(v), cfg.n_neurons);
    } else {
      label = "N" + fmt(v);
      ts = make_task_set(parse_task_list(cfg.tasks), v);
    }
    const int t_max = resolved_t_max(cfg, ts);

    std::vector<std::vector<double>> curves;
    std::vector<double> to_zero;
    int solved = 0;
    double final_e_sum = 0;
    // Independent seed block per axis and sweep value so no two sweep cells
    // share streams.
    const std::uint64_t cell =
        (cfg.sweep_axis == SweepAxis::Tasks ? 1000 : 1100) +
        static_cast<std::uint64_t>(vi);
    for (int r = 0; r < cfg.runs; ++r) {
      const std::uint64_t rs = derive_seed(run_seed(cfg, r), cell);
      const Network net0 = random_network(ts.n_neurons, derive_seed(rs, 0));
      const SearchTrace trace =
          anneal(net0, ts, acfg, t_max, derive_seed(rs, 1), run_init(cfg, rs));
      const int fz = first_zero_epoch(trace);
      if (trace.solved) ++solved;
      // Censored at the epoch cap when E = 0 was never reached.
      to_zero.push_back(fz > 0 ? fz : cfg.epochs);
      final_e_sum += trace.epochs.back().error;
      runs_csv += label + ',' + fmt(r) + ',' + fmt(rs) + ',' +
                  (trace.solved ? "1" : "0") + ',' +
                  fmt(static_cast<int>(trace.epochs.size())) + ',' + fmt(fz) +
                  ',' + fmt(trace.epochs.back().error) + '\n';
      curves.push_back(errors_of(trace));
    }
    summary += label + ',' + fmt(cfg.runs) + ',' + fmt(solved) + ',' +
               fmt(median(to_zero)) + ',' + fmt(final_e_sum / cfg.runs) + '\n';
    mean_series.push_back(
        {label, kPalette[vi % 6], padded_mean(curves)});
  }
  write_file(out + "sweep_runs.csv", runs_csv);
  write_file(out + "sweep_summary.csv", summary);

  std::size_t longest = 0;
  for (const Series& s : mean_series) longest = std::max(longest, s.ys.size());
  std::string mean_csv = "epoch";
  for (const Series& s : mean_series) mean_csv += ',' + s.label;
  mean_csv += '\n';
  for (std::size_t i = 0; i < longest; ++i) {
    mean_csv += fmt(static_cast<int>(i) + 1);
    for (const Series& s : mean_series)
      mean_csv += ',' + fmt(i < s.ys.size() ? s.ys[i] : s.ys.back());
    mean_csv += '\n';
  }
  write_file(out + "sweep_mean_e.csv", mean_csv);
  write_file(out + "sweep_mean_e.svg",
             svg_line_chart("mean E per sweep value", "epoch", "mean E",
                            mean_series, 1.0, false));
  return 0;
}

int cmd_igt(const ExperimentConfig& cfg) {
  const std::string out = prepare_out(cfg);
  const IgtConfig icfg = igt_config(cfg);
  const auto [deck_b, deck_d] =
      cfg.decks == "builtin" ? builtin_decks() : load_decks(cfg.decks);

  std::vector<SessionRecord> sessions;
  for (int r = 0; r < cfg.runs; ++r) {
    SessionRecord session = run_session(icfg, deck_b, deck_d, run_seed(cfg, r));
    write_file(out + run_tag(r, cfg.runs) + "_session.csv",
               session_to_csv(session));
    sessions.push_back(std::move(session));
  }

  // A session that dead-ends on an exhausted deck is shorter than the rest;
  // aggregate over the common prefix in that case.
  std::size_t common = sessions.front().trials.size();
  for (const SessionRecord& s : sessions)
    common = std::min(common, s.trials.size());
  std::vector<SessionRecord> trimmed = sessions;
  for (SessionRecord& s : trimmed) s.trials.resize(common);
  if (common < sessions.front().trials.size() ||
      std::any_of(sessions.begin(), sessions.end(), [&](const SessionRecord& s) {
        return s.trials.size() != common;
      }))
    std::cerr << "note: sessions truncated to " << common
              << " common trials for aggregation\n";

  const std::vector<TrialAggregate> agg = aggregate(trimmed);
  write_file(out + "aggregate.csv", aggregate_to_csv(agg));

  std::vector<int> modal;
  std::vector<double> budget, frac_d;
  for (const TrialAggregate& row : agg) {
    modal.push_back(row.mode == Mode::B ? -1 : row.mode == Mode::D ? 1 : 0);
    budget.push_back(row.mean_budget);
    frac_d.push_back(row.frac_d);
  }
  write_file(out + "igt_modal.svg",
             svg_value_strip("modal deck choice per trial (red = B, green = D)",
                             modal));
  write_file(out + "igt_budget.svg",
             svg_line_chart("mean budget per trial", "trial", "budget",
                            {{"mean budget", "#2c5aa0", budget}}, 1.0, false));
  write_file(out + "igt_frac_d.svg",
             svg_line_chart("fraction of sessions choosing D", "trial",
                            "frac D", {{"frac D", "#27ae60", frac_d}}, 1.0,
                            false));
  return 0;
}

int run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Dynamics: return cmd_dynamics(cfg);
    case ExperimentKind::RandomWalk: return cmd_randomwalk(cfg);
    case ExperimentKind::Anneal: return cmd_anneal(cfg);
    case ExperimentKind::Sweep: return cmd_sweep(cfg);
    case ExperimentKind::Igt: return cmd_igt(cfg);
  }
  throw std::logic_error("unreachable");
}

}  // namespace bnn
