#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arena/agents.hpp"
#include "arena/catalog.hpp"
#include "arena/protocol.hpp"
#include "arena/reward.hpp"

namespace arena {

struct EngineConfig {
  int seller_max_attempts = 3;
  // Buyer violations are terminal by default so the trained side keeps its
  // penalty signal. The resample toggle exists for zero-shot baselines and
  // retries format and sequence violations only, never an over-budget Buy.
  bool buyer_resample = false;
  int buyer_max_attempts = 3;
  Grammar buyer_grammar = Grammar::labeled;
  Grammar seller_grammar = Grammar::labeled;
  std::string label;  // stamped onto records for report grouping
};

// Mutable episode-in-progress. status running == !outcome.
struct EpisodeState {
  Scenario scenario;
  std::vector<TurnMessage> history;  // alternates buyer, seller, ... buyer first
  int turn_index = 0;                // completed rounds
  std::optional<Money> last_buyer_offer;
  std::optional<Money> last_seller_offer;
  std::optional<Outcome> outcome;
  bool overshoot = false;
  std::optional<Money> first_buyer_offer;  // set iff the opening action was a Buy
  std::optional<std::string> malformed_raw;  // terminal unparseable buyer text
};

// Immutable result of one episode.
struct EpisodeRecord {
  Scenario scenario;
  std::uint64_t seed = 0;
  std::vector<TurnMessage> transcript;
  Outcome outcome;
  double reward = 0.0;
  bool overshoot = false;
  std::optional<Money> first_buyer_offer;
  std::optional<std::string> malformed_raw;
  std::string label;
  Grammar buyer_grammar = Grammar::labeled;
  Grammar seller_grammar = Grammar::labeled;

  int turns_used() const { return outcome.turns_used; }
};

// Applies one buyer move. raw is the agent's full text, kept for the
// transcript when it fails to parse. Format and sequence violations, and a
// Buy above budget, terminate the episode; Deal above budget completes the
// deal and is scored (negatively) by the reward formula. Throws
// std::logic_error when it is not the buyer's move.
void step_buyer(EpisodeState& state, const ParsedTurn& turn, const std::string& raw);

// Seller-side interception. Pulls attempts until one is well-formed and does
// not commit to a price below cost; each call to attempt() is a fresh sample.
// After max_attempts failures substitutes a canonical Reject (empty
// reasoning, fixed refusal dialogue). The returned turn carries
// regulated=true iff any attempt this move was intercepted.
TurnMessage regulate_seller(const std::function<ParsedTurn()>& attempt, Money cost,
                            int max_attempts);

// Applies one seller move through regulate_seller. produce() must also map
// sequence-invalid turns to violations; see run_episode for the composition.
// Throws std::logic_error when it is not the seller's move.
void step_seller(EpisodeState& state, const std::function<ParsedTurn()>& produce,
                 int max_attempts);

// Drives a full episode: alternating turns, buyer first, seller regulated,
// at most scenario.max_turns rounds, reward assigned at termination.
// Bit-reproducible for deterministic agents and a fixed seed: move k attempt
// a receives rng seed split_seed(seed, k, a). Agent transport failures
// surface as EpisodeAborted (the episode is not scored).
EpisodeRecord run_episode(Agent& buyer, Agent& seller, const Scenario& scenario,
                          const EngineConfig& config, std::uint64_t seed);

}  // namespace arena
