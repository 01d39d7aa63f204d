#include "bnn/igt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bnn/textio.hpp"

namespace bnn {

namespace {

// Payoff series, in draw order.  Deck B alternates big wins with a rare
// catastrophic loss up front and a dense loss block from card 13 on, so the
// count of losing draws overtakes the wins near card 21; deck D loses small
// and seldom early, often late.
const int kDeckB[kDeckSize] = {
    170,  170,  170,  170,  170,  170,   170,  170,  -1850, 170,  170,  -2330,
    -95,  -95,  -95,  -95,  -95,  -95,   -95,  -95,  -95,   -95,  170,  -185,
    170,  -185, 170,  -185, 170,  -185,  170,  -185, 170,   -185, 170,  -185,
    170,  -185, 170,  -185, 170,  -185,  170,  -185, 170,   -185, 170,  -185,
    170,  -185, 170,  -185, 170,  -185,  170,  -185, 170,   -185, 170,  -220};

const int kDeckD[kDeckSize] = {
    95,   95,   95,   -135, 95,   95,   95,   95,   -160, 95,   95,   95,
    95,   -185, 95,   95,   95,   95,   -210, 95,   95,   95,   95,   -235,
    95,   95,   95,   95,   -260, 95,   95,   95,   95,   -285, 95,   95,
    95,   95,   -310, 95,   -310, 95,   -100, -310, -100, -310, 95,   -310,
    -105, -310, 95,   -310, -100, -310, 95,   -105, -310, 95,   -310, -310};

struct DeckStats {
  int min, max;
  double mean;
};

DeckStats canonical_stats(DeckLabel label) {
  if (label == DeckLabel::B) return {-2330, 170, -62.5};
  return {-310, 95, -31.25};
}

}  // namespace

int Deck::draw() {
  if (remaining() <= 0) throw std::runtime_error("deck: exhausted");
  return payoffs[cursor++];
}

void validate(const Deck& deck) {
  const char label = choice_char(deck.label);
  if (static_cast<int>(deck.payoffs.size()) != kDeckSize)
    throw std::invalid_argument(std::string("deck ") + label + ": must have " +
                                fmt(kDeckSize) + " cards");
  const auto [lo, hi] =
      std::minmax_element(deck.payoffs.begin(), deck.payoffs.end());
  double sum = 0;
  for (int v : deck.payoffs) sum += v;
  const double mean = sum / kDeckSize;
  const DeckStats want = canonical_stats(deck.label);
  if (*lo != want.min || *hi != want.max)
    throw std::invalid_argument(std::string("deck ") + label +
                                ": min/max do not match the canonical series");
  if (std::abs(mean - want.mean) > 1e-9 * std::abs(want.mean))
    throw std::invalid_argument(std::string("deck ") + label +
                                ": mean does not match the canonical series");
}

Deck builtin_deck(DeckLabel label) {
  Deck deck;
  deck.label = label;
  const int* src = label == DeckLabel::B ? kDeckB : kDeckD;
  deck.payoffs.assign(src, src + kDeckSize);
  return deck;
}

std::pair<Deck, Deck> builtin_decks() {
  return {builtin_deck(DeckLabel::B), builtin_deck(DeckLabel::D)};
}

std::string deck_to_csv(const Deck& deck) {
  std::string out = "position,value\n";
  for (std::size_t i = 0; i < deck.payoffs.size(); ++i) {
    out += fmt(static_cast<int>(i) + 1);
    out += ',';
    out += fmt(deck.payoffs[i]);
    out += '\n';
  }
  return out;
}

Deck deck_from_csv(DeckLabel label, const std::string& csv_text) {
  Deck deck;
  deck.label = label;
  const std::vector<std::string> lines = split(csv_text, '\n');
  bool saw_header = false;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string line = trim(lines[ln]);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "position,value")
        throw std::invalid_argument("deck csv: first line must be 'position,value'");
      saw_header = true;
      continue;
    }
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != 2)
      throw std::invalid_argument("deck csv line " + fmt(static_cast<int>(ln) + 1) +
                                  ": expected 'position,value'");
    const std::int64_t pos = parse_int(cells[0]);
    if (pos != static_cast<std::int64_t>(deck.payoffs.size()) + 1)
      throw std::invalid_argument("deck csv: positions must run 1.." +
                                  fmt(kDeckSize) + " in order");
    deck.payoffs.push_back(static_cast<int>(parse_int(cells[1])));
  }
  if (!saw_header) throw std::invalid_argument("deck csv: empty");
  validate(deck);
  return deck;
}

std::pair<Deck, Deck> load_decks(const std::string& dir) {
  Deck b = deck_from_csv(DeckLabel::B, read_file(dir + "/deck_b.csv"));
  Deck d = deck_from_csv(DeckLabel::D, read_file(dir + "/deck_d.csv"));
  return {std::move(b), std::move(d)};
}

void validate(const IgtConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("igt: trials must be >= 1");
  if (cfg.proposals_per_trial < 1)
    throw std::invalid_argument("igt: proposals_per_trial must be >= 1");
  if (cfg.n_neurons < 2)
    throw std::invalid_argument("igt: need at least input and output neurons");
  if (cfg.t_max < 0) throw std::invalid_argument("igt: t_max must be >= 0");
  validate(cfg.annealer);
}

namespace {

int igt_t_max(const IgtConfig& cfg) {
  return cfg.t_max > 0 ? cfg.t_max : default_t_max(cfg.n_neurons, 1);
}

// Input-neuron value used on trial `index` (0-based position in history).
// For PrevChoice/PrevPayoffSign the first trial references itself.
int input_value(const std::vector<TrialRecord>& history, std::size_t index,
                InputCode code) {
  switch (code) {
    case InputCode::Constant:
      return 1;
    case InputCode::PrevChoice:
      return choice_value(history[index == 0 ? 0 : index - 1].choice);
    case InputCode::PrevPayoffSign:
      return history[index == 0 ? 0 : index - 1].payoff >= 0 ? 1 : -1;
  }
  throw std::logic_error("unreachable");
}

// Input value for the upcoming trial (history holds all previous trials,
// which is nonempty because trial 1 is a coin flip).
int next_input_value(const std::vector<TrialRecord>& history, InputCode code) {
  switch (code) {
    case InputCode::Constant:
      return 1;
    case InputCode::PrevChoice:
      return choice_value(history.back().choice);
    case InputCode::PrevPayoffSign:
      return history.back().payoff >= 0 ? 1 : -1;
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TaskSet history_to_taskset(const std::vector<TrialRecord>& history,
                           const IgtConfig& cfg) {
  if (history.empty())
    throw std::invalid_argument("igt: cannot train on an empty history");
  TaskSet ts;
  ts.n_neurons = cfg.n_neurons;
  Task task;
  task.label = "deck-choice";
  task.input_neurons = {0};
  task.output_neuron = cfg.n_neurons - 1;
  for (std::size_t i = 0; i < history.size(); ++i) {
    Pattern pat;
    pat.inputs = IntVec::Constant(1, input_value(history, i, cfg.input_code));
    const int made = choice_value(history[i].choice);
    pat.wanted = history[i].payoff >= 0 ? made : -made;
    task.patterns.push_back(std::move(pat));
  }
  ts.tasks.push_back(std::move(task));
  return ts;
}

IgtSession::IgtSession(const IgtConfig& cfg, Deck deck_b, Deck deck_d,
                       std::uint64_t seed)
    : cfg_(cfg),
      deck_b_(std::move(deck_b)),
      deck_d_(std::move(deck_d)),
      annealer_(random_network(cfg.n_neurons, derive_seed(seed, 0)),
                cfg.annealer),
      rng_(derive_seed(seed, 1)) {
  validate(cfg_);
  validate(deck_b_);
  validate(deck_d_);
  if (deck_b_.cursor != 0 || deck_d_.cursor != 0)
    throw std::invalid_argument("igt: decks must start undrawn");
}

DeckLabel IgtSession::choose() {
  const TaskSet ts = history_to_taskset(history_, cfg_);
  const int t_max = igt_t_max(cfg_);
  const Annealer::RunStats stats =
      annealer_.run(ts, cfg_.proposals_per_trial, t_max, rng_);
  last_error_ = stats.final_error;
  last_accept_rate_ =
      stats.epochs > 0 ? static_cast<double>(stats.accepted) / stats.epochs
                       : 0.0;

  StateVector s = make_state(cfg_.n_neurons, -1);
  s.states[0] = next_input_value(history_, cfg_.input_code);
  s.clamped[0] = true;
  const AttractorResult res = run_to_attractor(annealer_.network(), s, t_max);
  const int out = res.converged
                      ? res.orbit.front().states[cfg_.n_neurons - 1]
                      : trajectory(annealer_.network(), s, t_max)
                            .back()
                            .states[cfg_.n_neurons - 1];
  return choice_from_value(out);
}

bool IgtSession::run_trial() {
  DeckLabel choice;
  if (history_.empty()) {
    choice = rng_.coin() ? DeckLabel::D : DeckLabel::B;
    last_error_ = 0.0;
    last_accept_rate_ = 0.0;
  } else {
    choice = choose();
  }
  Deck& deck = choice == DeckLabel::B ? deck_b_ : deck_d_;
  if (deck.remaining() <= 0) {
    deck_exhausted_ = true;
    return false;
  }
  TrialRecord rec;
  rec.trial = static_cast<int>(history_.size()) + 1;
  rec.choice = choice;
  rec.payoff = deck.draw();
  budget_ += rec.payoff;
  rec.budget = budget_;
  rec.e_after = last_error_;
  rec.accept_rate = last_accept_rate_;
  rec.temperature = annealer_.temperature();
  history_.push_back(rec);
  return true;
}

SessionRecord run_session(const IgtConfig& cfg, Deck deck_b, Deck deck_d,
                          std::uint64_t seed) {
  IgtSession session(cfg, std::move(deck_b), std::move(deck_d), seed);
  while (static_cast<int>(session.history().size()) < cfg.trials &&
         session.run_trial()) {
  }
  return SessionRecord{seed, session.history(), session.deck_exhausted()};
}

std::vector<TrialAggregate> aggregate(const std::vector<SessionRecord>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no sessions");
  const std::size_t trials = runs.front().trials.size();
  for (const SessionRecord& r : runs)
    if (r.trials.size() != trials)
      throw std::invalid_argument("aggregate: sessions have mismatched trial counts");

  std::vector<TrialAggregate> out;
  for (std::size_t t = 0; t < trials; ++t) {
    TrialAggregate row;
    row.trial = static_cast<int>(t) + 1;
    int nb = 0, nd = 0;
    double budget_sum = 0;
    for (const SessionRecord& r : runs) {
      (r.trials[t].choice == DeckLabel::B ? nb : nd) += 1;
      budget_sum += static_cast<double>(r.trials[t].budget);
    }
    row.frac_b = static_cast<double>(nb) / runs.size();
    row.frac_d = static_cast<double>(nd) / runs.size();
    row.mode = nb > nd ? Mode::B : nd > nb ? Mode::D : Mode::Tie;
    row.mean_budget = budget_sum / runs.size();
    out.push_back(row);
  }
  return out;
}

std::string session_to_csv(const SessionRecord& session) {
  std::string out = "trial,choice,payoff,budget,E_after,accept_rate,temperature\n";
  for (const TrialRecord& r : session.trials) {
    out += fmt(r.trial);
    out += ',';
    out += choice_char(r.choice);
    out += ',';
    out += fmt(r.payoff);
    out += ',';
    out += fmt(static_cast<std::int64_t>(r.budget));
    out += ',';
    out += fmt(r.e_after);
    out += ',';
    out += fmt(r.accept_rate);
    out += ',';
    out += fmt(r.temperature);
    out += '\n';
  }
  return out;
}

std::string aggregate_to_csv(const std::vector<TrialAggregate>& rows) {
  std::string out = "trial,mode_choice,frac_B,frac_D,mean_budget\n";
  for (const TrialAggregate& r : rows) {
    out += fmt(r.trial);
    out += ',';
    out += r.mode == Mode::B ? "B" : r.mode == Mode::D ? "D" : "tie";
    out += ',';
    out += fmt(r.frac_b);
    out += ',';
    out += fmt(r.frac_d);
    out += ',';
    out += fmt(r.mean_budget);
    out += '\n';
  }
  return out;
}

}  // namespace bnn
