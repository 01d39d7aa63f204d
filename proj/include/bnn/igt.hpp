#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bnn/optimize.hpp"

namespace bnn {

// Two-deck gambling task: deck B is high-reward/high-loss and ruinous in the
// long run, deck D is low-reward/low-loss and merely slowly losing.  Both
// built-in payoff series are 60 cards with fixed summary statistics
// (B: min -2330, max 170, mean -62.5; D: min -310, max 95, mean -31.25).
enum class DeckLabel { B, D };

constexpr int kDeckSize = 60;

// Output-neuron coding of a deck choice.
inline int choice_value(DeckLabel d) { return d == DeckLabel::B ? -1 : 1; }
inline DeckLabel choice_from_value(int v) {
  return v > 0 ? DeckLabel::D : DeckLabel::B;
}
inline char choice_char(DeckLabel d) { return d == DeckLabel::B ? 'B' : 'D'; }

struct Deck {
  DeckLabel label = DeckLabel::B;
  std::vector<int> payoffs;
  int cursor = 0;

  int remaining() const { return static_cast<int>(payoffs.size()) - cursor; }
  int draw();  // throws when exhausted
};

// Checks length and the label's canonical statistics: min and max exact,
// mean within 1e-9 relative.
void validate(const Deck& deck);

Deck builtin_deck(DeckLabel label);
std::pair<Deck, Deck> builtin_decks();

// CSV schema: header "position,value", 60 rows, positions 1..60 in order.
std::string deck_to_csv(const Deck& deck);
Deck deck_from_csv(DeckLabel label, const std::string& csv_text);
// Reads <dir>/deck_b.csv and <dir>/deck_d.csv.
std::pair<Deck, Deck> load_decks(const std::string& dir);

struct TrialRecord {
  int trial = 0;  // 1-based
  DeckLabel choice = DeckLabel::B;
  int payoff = 0;
  long long budget = 0;        // running total after this trial
  double e_after = 0.0;        // E at the end of this trial's training
  double accept_rate = 0.0;    // accepted / proposals within this trial
  double temperature = 0.0;    // annealer temperature after this trial
};

// What the single input neuron carries while choosing / while replaying a
// past trial as a training pattern.
enum class InputCode { PrevChoice, Constant, PrevPayoffSign };

struct IgtConfig {
  int trials = 60;
  int proposals_per_trial = 50;
  int n_neurons = 5;   // input is neuron 0, output is the last neuron
  int t_max = 0;       // 0 = default_t_max(n_neurons, 1)
  InputCode input_code = InputCode::PrevChoice;
  AnnealerConfig annealer;  // max_epochs is unused here
};

void validate(const IgtConfig& cfg);

// Replays the trial history as a training set on the session network layout:
// one pattern per past trial, input = that trial's input code, wanted = the
// choice made if the payoff was >= 0, the opposite choice on a loss.  The
// first trial has no predecessor; its own choice/payoff stand in.
TaskSet history_to_taskset(const std::vector<TrialRecord>& history,
                           const IgtConfig& cfg);

// One simulated subject.  The annealer (network, temperature, window
// counters) persists across trials; each trial re-trains on the full history
// so far, then the network picks the next deck.
class IgtSession {
 public:
  IgtSession(const IgtConfig& cfg, Deck deck_b, Deck deck_d,
             std::uint64_t seed);

  // Plays one trial.  Returns false without recording anything when the
  // network picked an exhausted deck (session end).
  bool run_trial();

  const std::vector<TrialRecord>& history() const { return history_; }
  long long budget() const { return budget_; }
  const Network& network() const { return annealer_.network(); }
  double temperature() const { return annealer_.temperature(); }
  bool deck_exhausted() const { return deck_exhausted_; }

 private:
  DeckLabel choose();

  IgtConfig cfg_;
  Deck deck_b_, deck_d_;
  Annealer annealer_;
  Rng rng_;
  std::vector<TrialRecord> history_;
  long long budget_ = 0;
  double last_error_ = 0.0;
  double last_accept_rate_ = 0.0;
  bool deck_exhausted_ = false;
};

struct SessionRecord {
  std::uint64_t seed = 0;
  std::vector<TrialRecord> trials;
  bool deck_exhausted = false;
};

SessionRecord run_session(const IgtConfig& cfg, Deck deck_b, Deck deck_d,
                          std::uint64_t seed);

enum class Mode { B, D, Tie };

struct TrialAggregate {
  int trial = 0;
  Mode mode = Mode::Tie;
  double frac_b = 0.0;
  double frac_d = 0.0;
  double mean_budget = 0.0;
};

// Per-trial statistics across sessions; all sessions must have the same
// number of trials.
std::vector<TrialAggregate> aggregate(const std::vector<SessionRecord>& runs);

// header trial,choice,payoff,budget,E_after,accept_rate,temperature
std::string session_to_csv(const SessionRecord& session);
// header trial,mode_choice,frac_B,frac_D,mean_budget
std::string aggregate_to_csv(const std::vector<TrialAggregate>& rows);

}  // namespace bnn
