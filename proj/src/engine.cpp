#include "arena/engine.hpp"

#include <stdexcept>

#include "arena/errors.hpp"
#include "arena/prompts.hpp"
#include "arena/rng.hpp"

namespace arena {

namespace {

constexpr const char* kRefusalDialogue = "I'm sorry, I can't accept those terms.";

int rounds_used(const EpisodeState& state) {
  std::size_t messages = state.history.size() + (state.malformed_raw ? 1 : 0);
  return static_cast<int>((messages + 1) / 2);
}

void finish(EpisodeState& state, Outcome outcome) {
  outcome.turns_used = rounds_used(state);
  state.outcome = std::move(outcome);
}

}  // namespace

void step_buyer(EpisodeState& state, const ParsedTurn& turn, const std::string& raw) {
  if (state.outcome) throw std::logic_error("step_buyer: episode already finished");
  if (state.history.size() % 2 != 0) throw std::logic_error("step_buyer: not the buyer's move");

  if (const auto* violation = std::get_if<FormatViolation>(&turn)) {
    state.malformed_raw = raw;
    finish(state, {OutcomeKind::boundary_format, std::nullopt, violation->reason, 0});
    return;
  }

  TurnMessage msg = std::get<TurnMessage>(turn);
  if (auto check = validate_sequence(state.history, msg); !check.ok) {
    state.history.push_back(std::move(msg));
    finish(state, {OutcomeKind::boundary_format, std::nullopt, check.reason, 0});
    return;
  }

  const bool opening = state.history.empty();
  const ActionKind action = msg.action;
  state.history.push_back(std::move(msg));

  switch (action.verb) {
    case Verb::quit:
      finish(state, {OutcomeKind::quit_buyer, std::nullopt, "", 0});
      return;
    case Verb::buy:
      if (opening) state.first_buyer_offer = action.amount;
      if (action.amount > state.scenario.budget) {
        state.overshoot = true;
        finish(state, {OutcomeKind::boundary_over_budget, std::nullopt, "buy above budget", 0});
        return;
      }
      state.last_buyer_offer = action.amount;
      return;
    case Verb::deal:
      // Sequence check already pinned the terms to the seller's standing
      // offer. Above budget the deal still completes; the formula scores it.
      if (action.amount > state.scenario.budget) state.overshoot = true;
      finish(state, Outcome::deal(action.amount));
      return;
    case Verb::reject:
      return;
    case Verb::sell:
      // Unreachable: validate_sequence rejects buyer Sell.
      throw std::logic_error("step_buyer: seller verb slipped through sequence check");
  }
}

TurnMessage regulate_seller(const std::function<ParsedTurn()>& attempt, Money cost,
                            int max_attempts) {
  if (max_attempts < 1) throw std::invalid_argument("regulate_seller: max_attempts must be >= 1");

  bool intercepted = false;
  for (int i = 0; i < max_attempts; ++i) {
    ParsedTurn candidate = attempt();
    if (auto* turn = std::get_if<TurnMessage>(&candidate)) {
      const bool commits_price = turn->action.priced();
      if (!commits_price || turn->action.amount >= cost) {
        turn->regulated = intercepted;
        return std::move(*turn);
      }
    }
    intercepted = true;
  }

  TurnMessage substituted = make_turn(Role::seller, "", kRefusalDialogue, make_reject());
  substituted.regulated = true;
  return substituted;
}

void step_seller(EpisodeState& state, const std::function<ParsedTurn()>& produce,
                 int max_attempts) {
  if (state.outcome) throw std::logic_error("step_seller: episode already finished");
  if (state.history.size() % 2 != 1) throw std::logic_error("step_seller: not the seller's move");

  TurnMessage turn = regulate_seller(produce, state.scenario.cost, max_attempts);
  const ActionKind action = turn.action;
  state.history.push_back(std::move(turn));

  switch (action.verb) {
    case Verb::quit:
      finish(state, {OutcomeKind::quit_seller, std::nullopt, "", 0});
      return;
    case Verb::deal:
      finish(state, Outcome::deal(action.amount));
      return;
    case Verb::sell:
      state.last_seller_offer = action.amount;
      return;
    case Verb::reject:
      return;
    case Verb::buy:
      throw std::logic_error("step_seller: buyer verb slipped through sequence check");
  }
}

EpisodeRecord run_episode(Agent& buyer, Agent& seller, const Scenario& scenario,
                          const EngineConfig& config, std::uint64_t seed) {
  EpisodeState state;
  state.scenario = scenario;

  const std::string buyer_context = assemble_buyer_prompt(scenario).context;
  const std::string seller_context = assemble_seller_prompt(scenario, Persona::none).context;
  const std::string& codename = scenario.product.codename;

  // Each side sees the shared history rendered in its own grammar,
  // reasoning stripped.
  auto visible_for = [&](Grammar grammar) {
    std::vector<std::string> rendered;
    rendered.reserve(state.history.size());
    for (const auto& turn : state.history) rendered.push_back(render_public(turn, grammar));
    return rendered;
  };

  std::uint64_t move_index = 0;
  for (int round = 1; round <= scenario.max_turns && !state.outcome; ++round) {
    std::string raw;
    ParsedTurn parsed = FormatViolation{"no attempt"};
    const int buyer_tries = config.buyer_resample ? config.buyer_max_attempts : 1;
    for (int attempt = 0; attempt < buyer_tries; ++attempt) {
      try {
        raw = buyer.next_turn(visible_for(config.buyer_grammar), buyer_context,
                              split_seed(seed, move_index, static_cast<std::uint64_t>(attempt)));
      } catch (const TransportError& e) {
        throw EpisodeAborted(std::string("buyer transport failure: ") + e.what());
      }
      parsed = parse_turn(raw, Role::buyer, config.buyer_grammar, codename);
      const auto* turn = std::get_if<TurnMessage>(&parsed);
      if (turn && validate_sequence(state.history, *turn).ok) break;
      // Otherwise retry while attempts remain; the final attempt falls
      // through to step_buyer, which applies the terminal penalty itself.
    }
    ++move_index;
    step_buyer(state, parsed, raw);
    if (state.outcome) break;

    std::uint64_t seller_attempt = 0;
    auto produce = [&]() -> ParsedTurn {
      std::string seller_raw;
      try {
        seller_raw = seller.next_turn(visible_for(config.seller_grammar), seller_context,
                                      split_seed(seed, move_index, seller_attempt));
      } catch (const TransportError& e) {
        throw EpisodeAborted(std::string("seller transport failure: ") + e.what());
      }
      ++seller_attempt;
      ParsedTurn candidate = parse_turn(seller_raw, Role::seller, config.seller_grammar, codename);
      if (auto* turn = std::get_if<TurnMessage>(&candidate)) {
        if (auto check = validate_sequence(state.history, *turn); !check.ok) {
          return FormatViolation{check.reason};
        }
      }
      return candidate;
    };
    step_seller(state, produce, config.seller_max_attempts);
    ++move_index;
  }

  if (!state.outcome) {
    finish(state, {OutcomeKind::deadlock_turn_limit, std::nullopt, "", 0});
  }

  EpisodeRecord record;
  record.scenario = scenario;
  record.seed = seed;
  record.transcript = std::move(state.history);
  record.outcome = *state.outcome;
  record.reward = terminal_reward(scenario.budget, scenario.cost, record.outcome);
  record.overshoot = state.overshoot;
  record.first_buyer_offer = state.first_buyer_offer;
  record.malformed_raw = std::move(state.malformed_raw);
  record.label = config.label;
  record.buyer_grammar = config.buyer_grammar;
  record.seller_grammar = config.seller_grammar;
  return record;
}

}  // namespace arena
