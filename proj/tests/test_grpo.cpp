#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "arena/grpo.hpp"
#include "arena/rng.hpp"

using namespace arena;

namespace {

Scenario cologne_scenario() {
  Product p;
  p.codename = "beauty_29";
  p.title = "Happy By Clinique For Men. Cologne Spray 1.7 Oz.";
  p.list_price = Money{7000};
  return build_scenario(p, Money{5600}, Money{2324});
}

ScriptedPolicy default_seller() {
  ScriptedPolicy s;
  s.role = Role::seller;
  s.opening_ratio = 0.9;
  s.concession_step = 0.1;
  s.accept_ratio = 0.8;
  return s;
}

// Brute-force reference: population statistics computed the obvious way.
std::vector<double> oracle_advantages(const std::vector<double>& rewards, double epsilon) {
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= static_cast<double>(rewards.size());
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  double sd = std::sqrt(var / static_cast<double>(rewards.size()));
  std::vector<double> out;
  for (double r : rewards) out.push_back((r - mean) / (sd + epsilon));
  return out;
}

std::vector<double> random_rewards(std::mt19937_64& gen, std::size_t n) {
  std::vector<double> r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(uniform01(gen) * 2.0 - 1.0);
  return r;
}

// Pin the softmax onto one bin: every other logit is pushed far enough down
// that its probability underflows to zero.
void pin(std::vector<double>& logits, std::size_t index) {
  for (double& l : logits) l = -1e9;
  logits[index] = 0.0;
}

bool same_logits(const ToyBuyerPolicy& a, const ToyBuyerPolicy& b) {
  return a.anchor_logits == b.anchor_logits && a.step_logits == b.step_logits &&
         a.close_logits == b.close_logits;
}

std::string seller_ask(std::int64_t cents) {
  return render_public(make_turn(Role::seller, "", "ask",
                                 make_offer(Verb::sell, Money{cents}, 1, "beauty_29")),
                       Grammar::labeled);
}

std::string buyer_bid(std::int64_t cents) {
  return render_public(
      make_turn(Role::buyer, "", "bid", make_offer(Verb::buy, Money{cents}, 1, "beauty_29")),
      Grammar::labeled);
}

ActionKind parsed_action(const std::string& raw) {
  auto parsed = parse_turn(raw, Role::buyer, Grammar::labeled, "beauty_29");
  return std::get<TurnMessage>(parsed).action;
}

// One synthetic batch around hand-picked advantages and choices, for update
// tests that need exact gradient arithmetic.
GroupBatch synthetic_batch(std::vector<double> advantages, std::vector<ToyChoices> choices) {
  GroupBatch batch;
  batch.scenario = cologne_scenario();
  batch.rewards.assign(advantages.size(), 0.0);
  batch.advantages = std::move(advantages);
  batch.choices = std::move(choices);
  return batch;
}

}  // namespace

TEST_SUITE("grpo") {

TEST_CASE("advantages match the brute-force formula") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 2 + static_cast<std::size_t>(uniform_int(gen, 0, 14));
    auto rewards = random_rewards(gen, n);
    auto got = group_advantages(rewards);
    auto want = oracle_advantages(rewards, 1e-8);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("advantages are centered") {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto rewards = random_rewards(gen, 8);
    auto adv = group_advantages(rewards);
    double sum = 0.0;
    for (double a : adv) sum += a;
    CHECK(std::fabs(sum) < 1e-9);
  }
}

TEST_CASE("advantages are shift invariant") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    auto rewards = random_rewards(gen, 8);
    double shift = uniform01(gen) * 10.0 - 5.0;
    auto shifted = rewards;
    for (double& r : shifted) r += shift;
    auto base = group_advantages(rewards);
    auto moved = group_advantages(shifted);
    for (std::size_t i = 0; i < base.size(); ++i)
      CHECK(moved[i] == doctest::Approx(base[i]).epsilon(1e-9));
  }
}

TEST_CASE("advantages are scale equivariant away from zero variance") {
  // epsilon only matters near sd = 0; with sd >= 0.1 the scaled group must
  // normalize to the same advantages.
  std::mt19937_64 gen(14);
  int tested = 0;
  while (tested < 100) {
    auto rewards = random_rewards(gen, 8);
    double mean = 0.0;
    for (double r : rewards) mean += r;
    mean /= 8.0;
    double var = 0.0;
    for (double r : rewards) var += (r - mean) * (r - mean);
    if (std::sqrt(var / 8.0) < 0.1) continue;
    ++tested;
    double lambda = 0.5 + 1.5 * uniform01(gen);
    auto scaled = rewards;
    for (double& r : scaled) r *= lambda;
    auto base = group_advantages(rewards);
    auto got = group_advantages(scaled);
    for (std::size_t i = 0; i < base.size(); ++i)
      CHECK(got[i] == doctest::Approx(base[i]).epsilon(1e-5));
  }
}

TEST_CASE("advantages have unit population sd away from zero variance") {
  std::mt19937_64 gen(15);
  int tested = 0;
  while (tested < 100) {
    auto rewards = random_rewards(gen, 12);
    double mean = 0.0;
    for (double r : rewards) mean += r;
    mean /= 12.0;
    double var = 0.0;
    for (double r : rewards) var += (r - mean) * (r - mean);
    if (std::sqrt(var / 12.0) < 0.1) continue;
    ++tested;
    auto adv = group_advantages(rewards);
    double sum_sq = 0.0;
    for (double a : adv) sum_sq += a * a;
    CHECK(std::sqrt(sum_sq / 12.0) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("all-equal rewards give an exactly zero vector") {
  auto adv = group_advantages({0.37, 0.37, 0.37, 0.37});
  for (double a : adv) CHECK(a == 0.0);
  adv = group_advantages({-1.0, -1.0});
  for (double a : adv) CHECK(a == 0.0);
}

TEST_CASE("the canonical three-reward group normalizes to +-1.2247") {
  auto adv = group_advantages({1.0, 0.0, -1.0});
  REQUIRE(adv.size() == 3);
  // population sd = sqrt(2/3)
  const double expect = 1.0 / (std::sqrt(2.0 / 3.0) + 1e-8);
  CHECK(adv[0] == doctest::Approx(expect).epsilon(1e-12));
  CHECK(adv[1] == 0.0);
  CHECK(adv[2] == doctest::Approx(-expect).epsilon(1e-12));
  CHECK(adv[0] == doctest::Approx(1.2247).epsilon(1e-3));
}

TEST_CASE("advantage guards") {
  CHECK_THROWS_WITH_AS(group_advantages({}), "group_advantages: empty reward list",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(group_advantages({1.0, 2.0}, 0.0),
                       "group_advantages: epsilon must be positive", std::invalid_argument);
  CHECK_THROWS_WITH_AS(group_advantages({1.0, 2.0}, -1e-8),
                       "group_advantages: epsilon must be positive", std::invalid_argument);
}

TEST_CASE("uniform policy lays out the standard grid") {
  auto policy = ToyBuyerPolicy::uniform(6);
  REQUIRE(policy.anchor_ratios.size() == 11);
  for (int i = 1; i <= 11; ++i)
    CHECK(policy.anchor_ratios[static_cast<std::size_t>(i - 1)] == doctest::Approx(i / 10.0));
  CHECK(policy.step_ratios == std::vector<double>{0.00, 0.03, 0.06, 0.10});
  CHECK(policy.anchor_logits == std::vector<double>(11, 0.0));
  CHECK(policy.step_logits == std::vector<double>(4, 0.0));
  CHECK(policy.close_logits == std::vector<double>(5, 0.0));  // rounds 2..6
  CHECK(policy.sample_floor == doctest::Approx(5e-4));

  auto ap = policy.anchor_probs();
  for (double p : ap) CHECK(p == doctest::Approx(1.0 / 11.0).epsilon(1e-12));
  auto sp = policy.step_probs();
  for (double p : sp) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));

  CHECK(ToyBuyerPolicy::uniform(2).close_logits.size() == 1);
  CHECK_THROWS_AS(ToyBuyerPolicy::uniform(1), std::invalid_argument);
}

TEST_CASE("policy_to_text names every parameter") {
  auto text = policy_to_text(ToyBuyerPolicy::uniform(6));
  CHECK(text.find("sample_floor") != std::string::npos);
  CHECK(text.find("anchor 1.10") != std::string::npos);
  CHECK(text.find("step 0.03") != std::string::npos);
  CHECK(text.find("close_round 2") != std::string::npos);
  CHECK(text.find("close_round 6") != std::string::npos);
}

TEST_CASE("toy agent opens at the sampled anchor, uncapped") {
  auto scenario = cologne_scenario();
  auto policy = ToyBuyerPolicy::uniform(6);
  pin(policy.anchor_logits, 10);  // ratio 1.10
  pin(policy.step_logits, 0);
  ToyPolicyAgent agent(policy, scenario);
  auto action = parsed_action(agent.next_turn({}, "", 42));
  CHECK(action.verb == Verb::buy);
  CHECK(action.amount == Money{6160});  // llround(1.10 * 5600), above budget by design
  CHECK(action.quantity == 1);
  CHECK(action.codename == "beauty_29");
  CHECK(agent.choices().anchor == 10);
  CHECK(agent.choices().step == 0);
  CHECK(agent.choices().closes.empty());
}

TEST_CASE("toy agent close draw deals at an affordable standing ask") {
  auto scenario = cologne_scenario();
  auto policy = ToyBuyerPolicy::uniform(6);
  pin(policy.anchor_logits, 4);
  pin(policy.step_logits, 0);
  policy.close_logits[0] = 50.0;  // sigmoid ~ 1: round 2 always closes
  ToyPolicyAgent agent(policy, scenario);
  auto opening = agent.next_turn({}, "", 1);
  auto action = parsed_action(agent.next_turn({opening, seller_ask(5300)}, "", 2));
  CHECK(action.verb == Verb::deal);
  CHECK(action.amount == Money{5300});
  REQUIRE(agent.choices().closes.size() == 1);
  CHECK(agent.choices().closes[0] == std::pair<int, bool>(2, true));
}

TEST_CASE("toy agent close draw quits when the ask busts the budget") {
  auto scenario = cologne_scenario();
  auto policy = ToyBuyerPolicy::uniform(6);
  policy.close_logits[0] = 50.0;
  ToyPolicyAgent agent(policy, scenario);
  auto opening = agent.next_turn({}, "", 1);
  auto action = parsed_action(agent.next_turn({opening, seller_ask(6000)}, "", 2));
  CHECK(action.verb == Verb::quit);
}

TEST_CASE("toy agent close draw quits when the seller never priced") {
  auto scenario = cologne_scenario();
  auto policy = ToyBuyerPolicy::uniform(6);
  policy.close_logits[0] = 50.0;
  ToyPolicyAgent agent(policy, scenario);
  auto opening = agent.next_turn({}, "", 1);
  std::string reject =
      render_public(make_turn(Role::seller, "", "no", make_reject()), Grammar::labeled);
  auto action = parsed_action(agent.next_turn({opening, reject}, "", 2));
  CHECK(action.verb == Verb::quit);
}

TEST_CASE("toy agent concession ladder walks anchor plus step, capped at budget") {
  auto scenario = cologne_scenario();
  auto policy = ToyBuyerPolicy::uniform(6);
  pin(policy.anchor_logits, 4);                      // 0.50
  pin(policy.step_logits, 3);                        // 0.10
  for (double& l : policy.close_logits) l = -50.0;   // sigmoid ~ 0: never close
  ToyPolicyAgent agent(policy, scenario);

  auto opening = parsed_action(agent.next_turn({}, "", 7));
  CHECK(opening.amount == Money{2800});  // 0.50 * 56.00

  std::vector<std::string> history{buyer_bid(2800), seller_ask(6300)};
  auto round2 = parsed_action(agent.next_turn(history, "", 8));
  CHECK(round2.verb == Verb::buy);
  CHECK(round2.amount == Money{3360});  // (0.50 + 0.10) * 56.00

  history.push_back(buyer_bid(3360));
  history.push_back(seller_ask(6300));
  history.push_back(buyer_bid(3920));
  history.push_back(seller_ask(6300));
  auto round4 = parsed_action(agent.next_turn(history, "", 9));
  CHECK(round4.amount == Money{4480});  // (0.50 + 0.30) * 56.00

  // Ladder tops out at the budget: anchor 1.00 + 4 steps of 0.10 at round 5.
  auto capped_policy = ToyBuyerPolicy::uniform(6);
  pin(capped_policy.anchor_logits, 9);  // 1.00
  pin(capped_policy.step_logits, 3);
  for (double& l : capped_policy.close_logits) l = -50.0;
  ToyPolicyAgent capped(capped_policy, scenario);
  capped.next_turn({}, "", 10);
  history.push_back(buyer_bid(4480));
  history.push_back(seller_ask(6300));
  auto round5 = parsed_action(capped.next_turn(history, "", 11));
  CHECK(round5.amount == Money{5600});  // min(1.40 * 56.00, budget)
  REQUIRE(capped.choices().closes.size() == 1);
  CHECK(capped.choices().closes[0] == std::pair<int, bool>(5, false));
}

TEST_CASE("sample floor zeroes out a low-probability bin") {
  auto scenario = cologne_scenario();
  auto policy = ToyBuyerPolicy::uniform(6);
  // Bin 10 sits near p = 0.02 before flooring.
  policy.anchor_logits[10] = std::log(0.02 / 0.98 * 10.0);
  auto probs = policy.anchor_probs();
  REQUIRE(probs[10] == doctest::Approx(0.02).epsilon(1e-6));

  auto count_hits = [&](double floor) {
    auto p = policy;
    p.sample_floor = floor;
    int hits = 0;
    for (std::uint64_t s = 0; s < 20000; ++s) {
      ToyPolicyAgent agent(p, scenario);
      agent.next_turn({}, "", split_seed(99, s));
      if (agent.choices().anchor == 10) ++hits;
    }
    return hits;
  };

  CHECK(count_hits(0.05) == 0);     // floored away entirely
  CHECK(count_hits(5e-4) > 100);    // reachable below the floor threshold
}

TEST_CASE("a floor above every bin falls back to the raw distribution") {
  auto scenario = cologne_scenario();
  auto policy = ToyBuyerPolicy::uniform(6);
  policy.sample_floor = 1.0;  // eats all 11 uniform bins
  std::set<int> seen;
  for (std::uint64_t s = 0; s < 200; ++s) {
    ToyPolicyAgent agent(policy, scenario);
    agent.next_turn({}, "", split_seed(7, s));
    seen.insert(agent.choices().anchor);
  }
  CHECK(seen.size() >= 5);
}

TEST_CASE("rollout_group is deterministic in the group seed") {
  auto scenario = cologne_scenario();
  auto policy = ToyBuyerPolicy::uniform(6);
  auto seller = default_seller();

  auto a = rollout_group(policy, seller, scenario, 8, 314);
  auto b = rollout_group(policy, seller, scenario, 8, 314);
  REQUIRE(a.rewards.size() == 8);
  REQUIRE(a.trajectories.size() == 8);
  REQUIRE(a.choices.size() == 8);
  CHECK(a.rewards == b.rewards);
  CHECK(a.advantages == b.advantages);
  for (std::size_t g = 0; g < 8; ++g) {
    CHECK(a.choices[g].anchor == b.choices[g].anchor);
    CHECK(a.choices[g].step == b.choices[g].step);
    CHECK(a.choices[g].closes == b.choices[g].closes);
  }
  CHECK(a.scenario.product.codename == "beauty_29");

  auto c = rollout_group(policy, seller, scenario, 8, 315);
  bool differs = a.rewards != c.rewards;
  for (std::size_t g = 0; g < 8 && !differs; ++g) {
    differs = a.choices[g].anchor != c.choices[g].anchor || a.choices[g].step != c.choices[g].step;
  }
  CHECK(differs);

  double sum = 0.0;
  for (double adv : a.advantages) sum += adv;
  CHECK(std::fabs(sum) < 1e-9);

  CHECK_THROWS_AS(rollout_group(policy, seller, scenario, 0, 1), std::invalid_argument);
}

TEST_CASE("policy_update moves logits by the exact score-function gradient") {
  auto policy = ToyBuyerPolicy::uniform(6);
  ToyChoices ch;
  ch.anchor = 2;
  ch.step = 1;
  ch.closes = {{2, false}};
  auto batch = synthetic_batch({1.0}, {ch});
  auto updated = policy_update(policy, {batch}, 0.1);

  // grad_anchor[k] = 1[k=2] - 1/11, scaled by lr / episodes = 0.1.
  for (std::size_t k = 0; k < 11; ++k) {
    double want = 0.1 * ((k == 2 ? 1.0 : 0.0) - 1.0 / 11.0);
    CHECK(updated.anchor_logits[k] == doctest::Approx(want).epsilon(1e-12));
  }
  for (std::size_t k = 0; k < 4; ++k) {
    double want = 0.1 * ((k == 1 ? 1.0 : 0.0) - 0.25);
    CHECK(updated.step_logits[k] == doctest::Approx(want).epsilon(1e-12));
  }
  // z = false against sigmoid(0) = 0.5.
  CHECK(updated.close_logits[0] == doctest::Approx(-0.05).epsilon(1e-12));
  for (std::size_t k = 1; k < 5; ++k) CHECK(updated.close_logits[k] == 0.0);

  // The chosen bins gained probability mass.
  CHECK(updated.anchor_probs()[2] > policy.anchor_probs()[2]);
  CHECK(updated.step_probs()[1] > policy.step_probs()[1]);
}

TEST_CASE("negative advantage pushes the chosen bin down") {
  auto policy = ToyBuyerPolicy::uniform(6);
  ToyChoices ch;
  ch.anchor = 10;
  ch.step = 0;
  auto batch = synthetic_batch({-2.0}, {ch});
  auto updated = policy_update(policy, {batch}, 0.5);
  CHECK(updated.anchor_probs()[10] < policy.anchor_probs()[10]);
  CHECK(updated.anchor_logits[10] == doctest::Approx(-1.0 * (1.0 - 1.0 / 11.0)).epsilon(1e-12));
}

TEST_CASE("policy_update averages the gradient over every episode") {
  auto policy = ToyBuyerPolicy::uniform(6);
  ToyChoices first;
  first.anchor = 3;
  first.step = 2;
  ToyChoices second;
  second.anchor = 3;
  second.step = 2;
  // Two batches, one episode each, equal advantages: same update as one
  // episode since the mean divides by the total episode count.
  auto one = policy_update(policy, {synthetic_batch({1.0}, {first})}, 0.2);
  auto two = policy_update(
      policy, {synthetic_batch({1.0}, {first}), synthetic_batch({1.0}, {second})}, 0.2);
  for (std::size_t k = 0; k < 11; ++k)
    CHECK(two.anchor_logits[k] == doctest::Approx(one.anchor_logits[k]).epsilon(1e-12));
}

TEST_CASE("policy_update fixed points return the input bit-identically") {
  auto policy = ToyBuyerPolicy::uniform(6);
  policy.anchor_logits[3] = 0.77;  // make bit-identity observable
  ToyChoices ch;
  ch.anchor = 1;
  ch.step = 1;

  auto zero_lr = policy_update(policy, {synthetic_batch({1.0, -1.0}, {ch, ch})}, 0.0);
  CHECK(same_logits(zero_lr, policy));

  auto zero_adv = policy_update(policy, {synthetic_batch({0.0, 0.0}, {ch, ch})}, 5.0);
  CHECK(same_logits(zero_adv, policy));
}

TEST_CASE("policy_update guards") {
  auto policy = ToyBuyerPolicy::uniform(6);
  CHECK_THROWS_WITH_AS(policy_update(policy, {}, 0.1), "policy_update: no batches",
                       std::invalid_argument);

  ToyChoices ch;
  ch.anchor = 0;
  ch.step = 0;
  auto batch = synthetic_batch({std::numeric_limits<double>::infinity()}, {ch});
  CHECK_THROWS_WITH_AS(policy_update(policy, {batch}, 0.1),
                       "policy_update: non-finite gradient", std::runtime_error);
}

TEST_CASE("train runs the full loop deterministically") {
  auto seller = default_seller();
  auto scenarios = synth_scenarios(5, 3, Money{2000}, Money{9000}, 0.0);
  REQUIRE(scenarios.size() == 3);

  TrainConfig config;
  config.seed = 7;
  config.iterations = 3;
  config.batch_size = 2;
  config.group_size = 4;
  config.max_turns = 6;
  config.learning_rate = 1.0;

  auto first = train(config, scenarios, seller);
  REQUIRE(first.curve.size() == 3);
  for (const auto& summary : first.curve) CHECK(summary.episodes == 8);  // batch * group
  CHECK(first.policy.anchor_logits.size() == 11);
  CHECK(first.policy.sample_floor == doctest::Approx(config.sample_floor));

  // Some group somewhere has reward spread, so the policy must have moved.
  bool moved = false;
  for (double l : first.policy.anchor_logits) moved = moved || l != 0.0;
  CHECK(moved);

  auto second = train(config, scenarios, seller);
  CHECK(same_logits(first.policy, second.policy));
  REQUIRE(second.curve.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(first.curve[i].reward.mean == second.curve[i].reward.mean);
}

TEST_CASE("train pools normalization across the batch when asked") {
  auto seller = default_seller();
  auto scenarios = synth_scenarios(6, 2, Money{2000}, Money{9000}, 0.0);

  TrainConfig config;
  config.seed = 9;
  config.iterations = 2;
  config.batch_size = 2;
  config.group_size = 3;
  config.learning_rate = 1.0;
  config.per_batch_norm = true;

  auto pooled = train(config, scenarios, seller);
  REQUIRE(pooled.curve.size() == 2);
  config.per_batch_norm = false;
  auto grouped = train(config, scenarios, seller);
  // Same rollouts either way; only the normalization population differs.
  CHECK(pooled.curve[0].reward.mean == grouped.curve[0].reward.mean);
}

TEST_CASE("train zero iterations returns the uniform policy untouched") {
  auto seller = default_seller();
  auto scenarios = synth_scenarios(5, 1, Money{2000}, Money{9000}, 0.0);
  TrainConfig config;
  config.iterations = 0;
  auto result = train(config, scenarios, seller);
  CHECK(result.curve.empty());
  CHECK(same_logits(result.policy, ToyBuyerPolicy::uniform(config.max_turns)));
}

TEST_CASE("train guards") {
  auto seller = default_seller();
  auto scenarios = synth_scenarios(5, 1, Money{2000}, Money{9000}, 0.0);
  TrainConfig config;
  CHECK_THROWS_AS(train(config, {}, seller), std::invalid_argument);
  config.batch_size = 0;
  CHECK_THROWS_AS(train(config, scenarios, seller), std::invalid_argument);
  config.batch_size = 1;
  config.max_turns = 1;
  CHECK_THROWS_AS(train(config, scenarios, seller), std::invalid_argument);
  config.max_turns = 6;
  config.iterations = -1;
  CHECK_THROWS_AS(train(config, scenarios, seller), std::invalid_argument);
}

}  // TEST_SUITE
