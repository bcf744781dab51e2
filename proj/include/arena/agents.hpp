#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arena/catalog.hpp"
#include "arena/protocol.hpp"

namespace arena {

// Uniform turn producer. visible_history holds public renderings of every
// prior turn (both sides, oldest first) and never contains reasoning; the
// engine enforces that upstream. side_context is the per-episode economics
// block for this agent's side. rng_seed is derived per move (and per retry)
// so identical inputs yield identical turns regardless of call order.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string next_turn(const std::vector<std::string>& visible_history,
                                const std::string& side_context, std::uint64_t rng_seed) = 0;
};

enum class PriceGranularity { dollars, cents };

// Deterministic concession-ladder policy for either side.
//
// Buyer: willingness in round r is B * (opening_ratio + concession_step *
// max(0, r - 1 - stubbornness)); it deals when the seller's standing offer is
// within accept_ratio * willingness, quits after quit_after rounds (0 =
// never), and otherwise bids its willingness. Seller mirrors the ladder
// downward from list price, floors its asks at cost, and deals when the
// buyer's standing bid reaches accept_ratio * current ask (and exceeds cost).
//
// respect_constraint caps buyer offers at B and floors seller asks at C;
// tests configure adversarial variants by disabling it. overbid_cents shifts
// every buyer offer after rounding and bypasses the cap (the budget-violation
// probe bids B + 1 cent via opening_ratio=1, overbid_cents=1).
struct ScriptedPolicy {
  Role role = Role::buyer;
  double opening_ratio = 0.9;
  double concession_step = 0.05;
  double accept_ratio = 1.0;
  int stubbornness = 0;
  int quit_after = 0;
  std::int64_t overbid_cents = 0;
  bool respect_constraint = true;
  PriceGranularity granularity = PriceGranularity::dollars;
};

// Pure function form: one scripted decision given the public history.
// Exposed separately from the Agent wrapper for direct unit testing.
TurnMessage scripted_next_turn(const ScriptedPolicy& policy, const Scenario& scenario,
                               const std::vector<std::string>& visible_history,
                               Grammar grammar = Grammar::labeled);

class ScriptedAgent : public Agent {
 public:
  ScriptedAgent(ScriptedPolicy policy, Scenario scenario, Grammar grammar = Grammar::labeled)
      : policy_(std::move(policy)), scenario_(std::move(scenario)), grammar_(grammar) {}

  std::string next_turn(const std::vector<std::string>& visible_history,
                        const std::string& side_context, std::uint64_t rng_seed) override;

 private:
  ScriptedPolicy policy_;
  Scenario scenario_;
  Grammar grammar_;
};

// Plays a fixed list of raw turn texts in order, indexed by how many own
// turns the history already shows. Drives replay and fixture tests. Throws
// ReplayError when asked for a turn past the end of the script.
class FixedScriptAgent : public Agent {
 public:
  FixedScriptAgent(Role side, std::vector<std::string> raw_turns)
      : side_(side), raw_turns_(std::move(raw_turns)) {}

  std::string next_turn(const std::vector<std::string>& visible_history,
                        const std::string& side_context, std::uint64_t rng_seed) override;

 private:
  Role side_;
  std::vector<std::string> raw_turns_;
};

// Adversarial seller: deals at whatever the buyer last bid, cost be damned,
// and otherwise offers below cost. Exists to exercise seller regulation.
class UndercutSellerAgent : public Agent {
 public:
  UndercutSellerAgent(Scenario scenario, Grammar grammar = Grammar::labeled)
      : scenario_(std::move(scenario)), grammar_(grammar) {}

  std::string next_turn(const std::vector<std::string>& visible_history,
                        const std::string& side_context, std::uint64_t rng_seed) override;

 private:
  Scenario scenario_;
  Grammar grammar_;
};

// History helpers shared by scripted agents and the remote chat transport.
// An agent's own turns sit at even indices for the buyer (it moves first)
// and odd indices for the seller.
bool own_turn_index(Role side, std::size_t index);

// Most recent opposing offer of the wanted verb in the visible history, if
// any. Returns the parsed action (deal copies must match it bit-exactly).
std::optional<ActionKind> last_opposing_offer(Role side, Verb wanted,
                                              const std::vector<std::string>& visible_history,
                                              Grammar grammar,
                                              const std::string& default_codename);

}  // namespace arena
