#include "arena/reward.hpp"

#include <cmath>
#include <stdexcept>

namespace arena {

ScenarioClass classify(Money budget, Money cost) {
  if (budget == cost)
    throw std::invalid_argument("budget == cost has no scenario class (zero surplus scale)");
  return budget > cost ? ScenarioClass::mutual_interest : ScenarioClass::conflicting_interest;
}

bool dealt(const Outcome& o) { return o.kind == OutcomeKind::deal; }

double surplus_reward(Money budget, Money cost, Money price_final) {
  if (budget == cost) throw std::invalid_argument("surplus scale is zero at budget == cost");
  const double b = budget.dollars();
  const double c = cost.dollars();
  const double p = price_final.dollars();
  const double r = (b - p) / std::fabs(b - c);
  if (r > 1.0) return 1.0;
  if (r < -1.0) return -1.0;
  return r;
}

double terminal_reward(Money budget, Money cost, const Outcome& outcome) {
  switch (outcome.kind) {
    case OutcomeKind::deal:
      if (!outcome.price_final)
        throw std::invalid_argument("deal outcome lacks a settled price");
      return surplus_reward(budget, cost, *outcome.price_final);
    case OutcomeKind::deadlock_turn_limit:
    case OutcomeKind::quit_buyer:
    case OutcomeKind::quit_seller:
      return 0.0;
    case OutcomeKind::boundary_format:
    case OutcomeKind::boundary_over_budget:
      return -1.0;
  }
  throw std::logic_error("unreachable outcome kind");
}

}  // namespace arena
