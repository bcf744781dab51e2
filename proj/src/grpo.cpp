#include "arena/grpo.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "arena/rng.hpp"

namespace arena {

namespace {

std::vector<double> softmax(const std::vector<double>& logits) {
  double max_logit = logits.front();
  for (double l : logits) max_logit = std::max(max_logit, l);
  std::vector<double> probs(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - max_logit);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Sampling-time truncation: bins under the floor are unreachable.
int sample_floored(const std::vector<double>& probs, double floor, std::mt19937_64& gen) {
  std::vector<double> weights(probs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    weights[i] = probs[i] >= floor ? probs[i] : 0.0;
    total += weights[i];
  }
  if (total <= 0.0) {
    return static_cast<int>(sample_categorical(gen, probs));  // floor ate everything; fall back
  }
  for (double& w : weights) w /= total;
  return static_cast<int>(sample_categorical(gen, weights));
}

Money round_cents(double ratio, Money budget) {
  return Money{static_cast<std::int64_t>(std::llround(ratio * static_cast<double>(budget.cents)))};
}

}  // namespace

std::vector<double> group_advantages(const std::vector<double>& rewards, double epsilon) {
  if (rewards.empty()) throw std::invalid_argument("group_advantages: empty reward list");
  if (!(epsilon > 0.0)) throw std::invalid_argument("group_advantages: epsilon must be positive");

  bool all_equal = true;
  for (double r : rewards) {
    if (r != rewards.front()) {
      all_equal = false;
      break;
    }
  }
  if (all_equal) return std::vector<double>(rewards.size(), 0.0);

  const double n = static_cast<double>(rewards.size());
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double sd = std::sqrt(var / n);

  std::vector<double> advantages(rewards.size());
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    advantages[i] = (rewards[i] - mean) / (sd + epsilon);
  }
  return advantages;
}

ToyBuyerPolicy ToyBuyerPolicy::uniform(int max_turns) {
  if (max_turns < 2) throw std::invalid_argument("toy policy needs max_turns >= 2");
  ToyBuyerPolicy p;
  for (int i = 1; i <= 11; ++i) p.anchor_ratios.push_back(i / 10.0);
  p.anchor_logits.assign(p.anchor_ratios.size(), 0.0);
  p.step_ratios = {0.00, 0.03, 0.06, 0.10};
  p.step_logits.assign(p.step_ratios.size(), 0.0);
  p.close_logits.assign(static_cast<std::size_t>(max_turns - 1), 0.0);
  return p;
}

std::vector<double> ToyBuyerPolicy::anchor_probs() const { return softmax(anchor_logits); }
std::vector<double> ToyBuyerPolicy::step_probs() const { return softmax(step_logits); }

std::string policy_to_text(const ToyBuyerPolicy& policy) {
  std::ostringstream out;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "sample_floor %.9g\n", policy.sample_floor);
  out << buf;
  auto ap = policy.anchor_probs();
  for (std::size_t i = 0; i < policy.anchor_ratios.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "anchor %.2f logit %.9g prob %.9g\n", policy.anchor_ratios[i],
                  policy.anchor_logits[i], ap[i]);
    out << buf;
  }
  auto sp = policy.step_probs();
  for (std::size_t i = 0; i < policy.step_ratios.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "step %.2f logit %.9g prob %.9g\n", policy.step_ratios[i],
                  policy.step_logits[i], sp[i]);
    out << buf;
  }
  for (std::size_t i = 0; i < policy.close_logits.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "close_round %zu logit %.9g prob %.9g\n", i + 2,
                  policy.close_logits[i], sigmoid(policy.close_logits[i]));
    out << buf;
  }
  return out.str();
}

std::string ToyPolicyAgent::next_turn(const std::vector<std::string>& visible_history,
                                      const std::string&, std::uint64_t rng_seed) {
  std::mt19937_64 gen(rng_seed);
  const int round = static_cast<int>(visible_history.size() / 2) + 1;
  const Money budget = scenario_.budget;
  TurnMessage turn;

  if (round == 1) {
    choices_.anchor = sample_floored(policy_.anchor_probs(), policy_.sample_floor, gen);
    choices_.step = sample_floored(policy_.step_probs(), policy_.sample_floor, gen);
    Money offer = round_cents(policy_.anchor_ratios[choices_.anchor], budget);
    turn = make_turn(Role::buyer, "Anchoring low relative to my budget.",
                     "Can you do " + format_money(offer) + "?",
                     make_offer(Verb::buy, offer, scenario_.quantity, scenario_.product.codename));
  } else {
    const std::size_t close_index = static_cast<std::size_t>(round - 2);
    const double close_prob = close_index < policy_.close_logits.size()
                                  ? sigmoid(policy_.close_logits[close_index])
                                  : 1.0;
    const bool close = uniform01(gen) < close_prob;
    choices_.closes.emplace_back(round, close);

    auto standing = last_opposing_offer(Role::buyer, Verb::sell, visible_history,
                                        Grammar::labeled, scenario_.product.codename);
    if (close) {
      if (standing && standing->amount <= budget) {
        turn = make_turn(Role::buyer, "Their offer fits my budget; closing now.", "Deal.",
                         make_offer(Verb::deal, standing->amount, standing->quantity,
                                    standing->codename));
      } else {
        turn = make_turn(Role::buyer, "Nothing affordable on the table; walking away.",
                         "I'm out.", make_quit());
      }
    } else {
      const double ratio = policy_.anchor_ratios[choices_.anchor] +
                           policy_.step_ratios[choices_.step] * (round - 1);
      Money offer = std::min(round_cents(ratio, budget), budget);
      turn = make_turn(Role::buyer, "Conceding a step, staying within budget.",
                       "I can go to " + format_money(offer) + ".",
                       make_offer(Verb::buy, offer, scenario_.quantity,
                                  scenario_.product.codename));
    }
  }
  return serialize_turn(turn, Grammar::labeled);
}

GroupBatch rollout_group(const ToyBuyerPolicy& policy, const ScriptedPolicy& seller,
                         const Scenario& scenario, int group_size, std::uint64_t group_seed,
                         double epsilon) {
  if (group_size < 1) throw std::invalid_argument("rollout_group: group_size must be >= 1");
  GroupBatch batch;
  batch.scenario = scenario;
  EngineConfig config;
  for (int g = 0; g < group_size; ++g) {
    ToyPolicyAgent buyer(policy, scenario);
    ScriptedAgent seller_agent(seller, scenario);
    EpisodeRecord record =
        run_episode(buyer, seller_agent, scenario, config, split_seed(group_seed, g));
    batch.rewards.push_back(record.reward);
    batch.choices.push_back(buyer.choices());
    batch.trajectories.push_back(std::move(record));
  }
  batch.advantages = group_advantages(batch.rewards, epsilon);
  return batch;
}

ToyBuyerPolicy policy_update(const ToyBuyerPolicy& policy, const std::vector<GroupBatch>& batches,
                             double learning_rate) {
  if (batches.empty()) throw std::invalid_argument("policy_update: no batches");

  bool any_advantage = false;
  std::size_t episodes = 0;
  for (const auto& batch : batches) {
    episodes += batch.advantages.size();
    for (double a : batch.advantages) {
      if (a != 0.0) any_advantage = true;
    }
  }
  if (learning_rate == 0.0 || !any_advantage) return policy;

  const auto anchor_p = policy.anchor_probs();
  const auto step_p = policy.step_probs();
  std::vector<double> grad_anchor(policy.anchor_logits.size(), 0.0);
  std::vector<double> grad_step(policy.step_logits.size(), 0.0);
  std::vector<double> grad_close(policy.close_logits.size(), 0.0);

  for (const auto& batch : batches) {
    for (std::size_t g = 0; g < batch.advantages.size(); ++g) {
      const double adv = batch.advantages[g];
      if (adv == 0.0) continue;
      const ToyChoices& ch = batch.choices[g];
      // Score function of a categorical softmax: 1[k = chosen] - p_k.
      for (std::size_t k = 0; k < grad_anchor.size(); ++k) {
        grad_anchor[k] += adv * ((static_cast<int>(k) == ch.anchor ? 1.0 : 0.0) - anchor_p[k]);
      }
      for (std::size_t k = 0; k < grad_step.size(); ++k) {
        grad_step[k] += adv * ((static_cast<int>(k) == ch.step ? 1.0 : 0.0) - step_p[k]);
      }
      for (const auto& [round, z] : ch.closes) {
        const std::size_t idx = static_cast<std::size_t>(round - 2);
        if (idx >= grad_close.size()) continue;
        grad_close[idx] += adv * ((z ? 1.0 : 0.0) - sigmoid(policy.close_logits[idx]));
      }
    }
  }

  const double scale = learning_rate / static_cast<double>(episodes);
  ToyBuyerPolicy updated = policy;
  auto apply = [&](std::vector<double>& logits, const std::vector<double>& grad) {
    for (std::size_t k = 0; k < logits.size(); ++k) {
      const double delta = scale * grad[k];
      if (!std::isfinite(delta)) throw std::runtime_error("policy_update: non-finite gradient");
      logits[k] += delta;
    }
  };
  apply(updated.anchor_logits, grad_anchor);
  apply(updated.step_logits, grad_step);
  apply(updated.close_logits, grad_close);
  return updated;
}

TrainResult train(const TrainConfig& config, const std::vector<Scenario>& scenarios,
                  const ScriptedPolicy& seller) {
  if (scenarios.empty()) throw std::invalid_argument("train: no scenarios");
  if (config.batch_size < 1 || config.group_size < 1 || config.max_turns < 2)
    throw std::invalid_argument("train: batch_size, group_size, max_turns must be positive");
  if (config.iterations < 0) throw std::invalid_argument("train: negative iteration count");

  TrainResult result;
  result.policy = ToyBuyerPolicy::uniform(config.max_turns);
  result.policy.sample_floor = config.sample_floor;

  for (int iter = 0; iter < config.iterations; ++iter) {
    std::vector<GroupBatch> batches;
    batches.reserve(static_cast<std::size_t>(config.batch_size));
    std::vector<OutcomeRow> rows;
    for (int b = 0; b < config.batch_size; ++b) {
      const std::size_t pick =
          (static_cast<std::size_t>(iter) * config.batch_size + b) % scenarios.size();
      Scenario scenario = scenarios[pick];
      scenario.max_turns = config.max_turns;
      GroupBatch batch =
          rollout_group(result.policy, seller, scenario, config.group_size,
                        split_seed(config.seed, static_cast<std::uint64_t>(iter),
                                   static_cast<std::uint64_t>(b)),
                        config.epsilon);
      for (const auto& record : batch.trajectories) rows.push_back(to_row(record));
      batches.push_back(std::move(batch));
    }

    if (config.per_batch_norm) {
      // Pool every episode of the iteration into one normalization population.
      std::vector<double> pooled;
      for (const auto& batch : batches) {
        pooled.insert(pooled.end(), batch.rewards.begin(), batch.rewards.end());
      }
      const auto pooled_adv = group_advantages(pooled, config.epsilon);
      std::size_t cursor = 0;
      for (auto& batch : batches) {
        for (double& a : batch.advantages) a = pooled_adv[cursor++];
      }
    }

    result.curve.push_back(aggregate(rows));
    result.policy = policy_update(result.policy, batches, config.learning_rate);
  }
  return result;
}

}  // namespace arena
