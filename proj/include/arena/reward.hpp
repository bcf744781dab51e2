#pragma once

#include <optional>
#include <string>

#include "arena/money.hpp"

namespace arena {

// Relationship between the buyer's budget B and the seller's cost C.
// B == C is rejected at scenario construction, so classify is total here.
enum class ScenarioClass { mutual_interest, conflicting_interest };

ScenarioClass classify(Money budget, Money cost);

// How an episode ended. A deal carries the settled price; the boundary kinds
// are buyer-side violations that terminate with the flat penalty.
enum class OutcomeKind {
  deal,
  deadlock_turn_limit,
  quit_buyer,
  quit_seller,
  boundary_format,
  boundary_over_budget,
};

struct Outcome {
  OutcomeKind kind = OutcomeKind::deadlock_turn_limit;
  std::optional<Money> price_final;  // set iff kind == deal
  std::string detail;                // violation reason, when applicable
  int turns_used = 0;                // rounds consumed, a round = buyer msg + seller reply

  static Outcome deal(Money price) { return {OutcomeKind::deal, price, "", 0}; }
};

bool dealt(const Outcome& o);

// Normalized surplus capture for a settled deal:
//   (B - P) / |B - C|, clipped to [-1, 1].
// The clip binds only here; the three non-deal branches below are exact
// constants and never pass through it.
double surplus_reward(Money budget, Money cost, Money price_final);

// Total reward map over outcomes: deal -> surplus_reward, deadlock and quit
// (either side) -> 0.0, buyer boundary violations -> -1.0.
double terminal_reward(Money budget, Money cost, const Outcome& outcome);

}  // namespace arena
