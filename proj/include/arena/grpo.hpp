#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arena/agents.hpp"
#include "arena/engine.hpp"
#include "arena/metrics.hpp"

namespace arena {

// Group-relative advantages: A_i = (R_i - mean) / (sd + epsilon), population
// sd. All-equal rewards short-circuit to exact zeros so a zero-variance group
// is a bit-identical fixed point of the update. Throws on empty input or
// epsilon <= 0.
std::vector<double> group_advantages(const std::vector<double>& rewards, double epsilon = 1e-8);

// Discrete buyer policy over the three axes the metrics observe: opening anchor
// (fraction of budget), per-round concession step, and a per-round
// close-or-continue propensity. Logits are free parameters; distributions
// are softmax (categoricals) and sigmoid (closes).
//
// sample_floor truncates the categorical at sampling time: bins whose
// softmax probability falls below the floor are never drawn (mass
// renormalized over the rest). The policy distribution itself is untouched,
// so normalization and gradient formulas stay exact; the floor is what lets
// a penalized bin reach exactly-zero sampling frequency instead of an
// asymptotic tail.
struct ToyBuyerPolicy {
  std::vector<double> anchor_ratios;
  std::vector<double> anchor_logits;
  std::vector<double> step_ratios;
  std::vector<double> step_logits;
  std::vector<double> close_logits;  // index r-2 governs round r
  double sample_floor = 5e-4;

  // Uniform logits over the standard grid. The 1.10 anchor bin is the only
  // source of over-budget opening offers; every later offer is capped at B.
  static ToyBuyerPolicy uniform(int max_turns);

  std::vector<double> anchor_probs() const;
  std::vector<double> step_probs() const;
};

std::string policy_to_text(const ToyBuyerPolicy& policy);

// What one sampled trajectory actually drew, for the score-function update.
struct ToyChoices {
  int anchor = -1;
  int step = -1;
  std::vector<std::pair<int, bool>> closes;  // (round, drew close?)
};

// Buyer agent driven by a ToyBuyerPolicy. Anchor and step are drawn on the
// opening move; each later move draws a close decision. Closing deals at the
// seller's standing offer when it fits the budget and quits otherwise, so
// the concession path is the only route that prices above B (via the 1.10
// anchor on move one).
class ToyPolicyAgent : public Agent {
 public:
  ToyPolicyAgent(const ToyBuyerPolicy& policy, Scenario scenario)
      : policy_(policy), scenario_(std::move(scenario)) {}

  std::string next_turn(const std::vector<std::string>& visible_history,
                        const std::string& side_context, std::uint64_t rng_seed) override;

  const ToyChoices& choices() const { return choices_; }

 private:
  const ToyBuyerPolicy& policy_;
  Scenario scenario_;
  ToyChoices choices_;
};

struct GroupBatch {
  Scenario scenario;
  std::vector<double> rewards;
  std::vector<double> advantages;
  std::vector<EpisodeRecord> trajectories;
  std::vector<ToyChoices> choices;
};

struct TrainConfig {
  std::uint64_t seed = 0;
  int iterations = 60;
  int batch_size = 64;
  int group_size = 8;
  int max_turns = 6;
  double learning_rate = 3e-5;
  double epsilon = 1e-8;
  double sample_floor = 5e-4;  // forwarded to the freshly seeded policy
  // Per-group normalization is the default; the flag pools every episode of
  // the iteration into one normalization population instead.
  bool per_batch_norm = false;
};

// G rollouts of one scenario under independently sampled buyer trajectories
// against the scripted seller; advantages are per-group. Deterministic in
// (policy, seller, scenario, group_seed).
GroupBatch rollout_group(const ToyBuyerPolicy& policy, const ScriptedPolicy& seller,
                         const Scenario& scenario, int group_size, std::uint64_t group_seed,
                         double epsilon = 1e-8);

// One gradient-ascent step on advantage-weighted log-likelihood, averaged
// over every trajectory in `batches`. learning_rate 0 or an all-zero
// advantage set returns the input policy bit-identically. Throws
// std::runtime_error on a non-finite gradient.
ToyBuyerPolicy policy_update(const ToyBuyerPolicy& policy, const std::vector<GroupBatch>& batches,
                             double learning_rate);

struct TrainResult {
  ToyBuyerPolicy policy;
  std::vector<MetricsSummary> curve;  // one entry per iteration
};

// Full training loop: batch_size scenarios per iteration (cycled from the
// pool), group_size rollouts each, advantage normalization, one update.
TrainResult train(const TrainConfig& config, const std::vector<Scenario>& scenarios,
                  const ScriptedPolicy& seller);

}  // namespace arena
