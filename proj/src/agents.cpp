#include "arena/agents.hpp"

#include <algorithm>
#include <cmath>

#include "arena/errors.hpp"
#include "arena/money.hpp"

namespace arena {

namespace {

Money round_price(double dollars, PriceGranularity granularity) {
  if (granularity == PriceGranularity::dollars) {
    return Money{static_cast<std::int64_t>(std::llround(dollars)) * 100};
  }
  return money_from_dollars(dollars);
}

TurnMessage offer_turn(Role role, Verb verb, Money amount, const Scenario& scenario,
                       std::string dialogue) {
  return make_turn(role, "", std::move(dialogue),
                   make_offer(verb, amount, scenario.quantity, scenario.product.codename));
}

}  // namespace

bool own_turn_index(Role side, std::size_t index) {
  return (index % 2 == 0) == (side == Role::buyer);
}

std::optional<ActionKind> last_opposing_offer(Role side, Verb wanted,
                                              const std::vector<std::string>& visible_history,
                                              Grammar grammar,
                                              const std::string& default_codename) {
  for (std::size_t i = visible_history.size(); i-- > 0;) {
    if (own_turn_index(side, i)) continue;
    auto pub = parse_public(visible_history[i], grammar, default_codename);
    if (pub && pub->action.verb == wanted) return pub->action;
  }
  return std::nullopt;
}

TurnMessage scripted_next_turn(const ScriptedPolicy& policy, const Scenario& scenario,
                               const std::vector<std::string>& visible_history,
                               Grammar grammar) {
  const std::string& codename = scenario.product.codename;

  if (policy.role == Role::buyer) {
    // Buyer moves open each round: round r after 2*(r-1) visible turns.
    const int round = static_cast<int>(visible_history.size() / 2) + 1;
    if (policy.quit_after > 0 && round > policy.quit_after) {
      return make_turn(Role::buyer, "", "I have to walk away.", make_quit());
    }

    const double budget = scenario.budget.dollars();
    const int steps = std::max(0, round - 1 - policy.stubbornness);
    double ratio = policy.opening_ratio + policy.concession_step * steps;
    Money willingness = round_price(ratio * budget, policy.granularity);
    willingness.cents += policy.overbid_cents;
    if (policy.respect_constraint && policy.overbid_cents == 0 && willingness > scenario.budget) {
      willingness = scenario.budget;
    }

    auto standing = last_opposing_offer(Role::buyer, Verb::sell, visible_history, grammar, codename);
    if (standing) {
      const double ask = standing->amount.dollars();
      const bool affordable = !policy.respect_constraint || standing->amount <= scenario.budget;
      if (affordable && ask <= policy.accept_ratio * willingness.dollars()) {
        // Deal terms must copy the seller's offer exactly, suffix included.
        return make_turn(Role::buyer, "", "Deal.",
                         make_offer(Verb::deal, standing->amount, standing->quantity,
                                    standing->codename));
      }
    }
    return offer_turn(Role::buyer, Verb::buy, willingness, scenario,
                      "I can do " + format_money(willingness) + ".");
  }

  // Seller replies close each round: round r after 2*r - 1 visible turns.
  const int round = static_cast<int>((visible_history.size() + 1) / 2);
  if (policy.quit_after > 0 && round > policy.quit_after) {
    return make_turn(Role::seller, "", "This is going nowhere.", make_quit());
  }

  const double list = scenario.product.list_price.dollars();
  const int steps = std::max(0, round - 1 - policy.stubbornness);
  double ratio = policy.opening_ratio - policy.concession_step * steps;
  Money ask = round_price(ratio * list, policy.granularity);
  if (policy.respect_constraint && ask < scenario.cost) ask = scenario.cost;

  auto standing = last_opposing_offer(Role::seller, Verb::buy, visible_history, grammar, codename);
  if (standing) {
    const double bid = standing->amount.dollars();
    const bool profitable = !policy.respect_constraint || standing->amount > scenario.cost;
    if (profitable && bid >= policy.accept_ratio * ask.dollars()) {
      return make_turn(Role::seller, "", "Deal.",
                       make_offer(Verb::deal, standing->amount, standing->quantity,
                                  standing->codename));
    }
  }
  return offer_turn(Role::seller, Verb::sell, ask, scenario,
                    "I can offer it at " + format_money(ask) + ".");
}

std::string ScriptedAgent::next_turn(const std::vector<std::string>& visible_history,
                                     const std::string&, std::uint64_t) {
  return serialize_turn(scripted_next_turn(policy_, scenario_, visible_history, grammar_),
                        grammar_);
}

std::string FixedScriptAgent::next_turn(const std::vector<std::string>& visible_history,
                                        const std::string&, std::uint64_t) {
  std::size_t own = 0;
  for (std::size_t i = 0; i < visible_history.size(); ++i) {
    if (own_turn_index(side_, i)) ++own;
  }
  if (own >= raw_turns_.size()) {
    throw ReplayError(std::string(role_name(side_)) + " script exhausted after " +
                      std::to_string(raw_turns_.size()) + " turns");
  }
  return raw_turns_[own];
}

std::string UndercutSellerAgent::next_turn(const std::vector<std::string>& visible_history,
                                           const std::string&, std::uint64_t) {
  auto standing = last_opposing_offer(Role::seller, Verb::buy, visible_history,
                                      grammar_, scenario_.product.codename);
  TurnMessage turn;
  if (standing) {
    turn = make_turn(Role::seller, "", "Sold, whatever the price.",
                     make_offer(Verb::deal, standing->amount, standing->quantity,
                                standing->codename));
  } else {
    Money half{std::max<std::int64_t>(1, scenario_.cost.cents / 2)};
    turn = make_turn(Role::seller, "", "Take it below cost.",
                     make_offer(Verb::sell, half, scenario_.quantity,
                                scenario_.product.codename));
  }
  return serialize_turn(turn, grammar_);
}

}  // namespace arena
