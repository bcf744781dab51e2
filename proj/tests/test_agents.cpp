#include <doctest.h>

#include <string>
#include <variant>
#include <vector>

#include "arena/agents.hpp"
#include "arena/errors.hpp"

using namespace arena;

namespace {

Scenario cologne_scenario() {
  Product p;
  p.codename = "beauty_29";
  p.title = "Happy By Clinique For Men. Cologne Spray 1.7 Oz.";
  p.list_price = Money{7000};
  return build_scenario(p, Money{5600}, Money{2324});
}

std::string public_text(const TurnMessage& t) { return render_public(t, Grammar::labeled); }

TurnMessage buyer_buy(std::int64_t amount_cents) {
  return make_turn(Role::buyer, "", "bid",
                   make_offer(Verb::buy, Money{amount_cents}, 1, "beauty_29"));
}

TurnMessage seller_sell(std::int64_t amount_cents) {
  return make_turn(Role::seller, "", "ask",
                   make_offer(Verb::sell, Money{amount_cents}, 1, "beauty_29"));
}

}  // namespace

TEST_SUITE("agents") {

TEST_CASE("own_turn_index maps buyer to even slots") {
  CHECK(own_turn_index(Role::buyer, 0));
  CHECK_FALSE(own_turn_index(Role::buyer, 1));
  CHECK(own_turn_index(Role::buyer, 2));
  CHECK_FALSE(own_turn_index(Role::seller, 0));
  CHECK(own_turn_index(Role::seller, 1));
}

TEST_CASE("last_opposing_offer finds the most recent matching verb") {
  std::vector<std::string> visible{
      public_text(buyer_buy(1000)),
      public_text(seller_sell(6300)),
      public_text(buyer_buy(2000)),
      public_text(seller_sell(5500)),
  };
  auto standing = last_opposing_offer(Role::buyer, Verb::sell, visible, Grammar::labeled,
                                      "beauty_29");
  REQUIRE(standing.has_value());
  CHECK(standing->amount.cents == 5500);  // most recent wins, not the first

  auto bid = last_opposing_offer(Role::seller, Verb::buy, visible, Grammar::labeled, "beauty_29");
  REQUIRE(bid.has_value());
  CHECK(bid->amount.cents == 2000);

  CHECK_FALSE(last_opposing_offer(Role::buyer, Verb::sell, {}, Grammar::labeled, "x").has_value());
  // A seller looking for buys skips its own sell turns even when they alone exist.
  std::vector<std::string> only_asks{public_text(buyer_buy(1000)), public_text(seller_sell(900))};
  CHECK(last_opposing_offer(Role::seller, Verb::buy, only_asks, Grammar::labeled, "x")
            ->amount.cents == 1000);
}

TEST_CASE("scripted buyer opens at the rounded opening ratio") {
  ScriptedPolicy policy;  // buyer, opening 0.9, step 0.05, whole dollars
  Scenario sc = cologne_scenario();
  TurnMessage t = scripted_next_turn(policy, sc, {});
  CHECK(t.role == Role::buyer);
  CHECK(t.action.verb == Verb::buy);
  CHECK(t.action.amount.cents == 5000);  // llround(0.9 * 56) = 50
  CHECK(t.action.quantity == 1);
  CHECK(t.action.codename == "beauty_29");
  CHECK(t.dialogue == "I can do $50.00.");
}

TEST_CASE("scripted buyer concedes per round and caps at budget") {
  ScriptedPolicy policy;
  Scenario sc = cologne_scenario();
  std::vector<std::string> visible{public_text(buyer_buy(5000)), public_text(seller_sell(6300))};
  // Round 2: 0.95 * 56 = 53.2 -> $53.
  CHECK(scripted_next_turn(policy, sc, visible).action.amount.cents == 5300);

  visible.push_back(public_text(buyer_buy(5300)));
  visible.push_back(public_text(seller_sell(6300)));
  // Round 3: 1.00 * 56 -> $56, exactly at budget.
  CHECK(scripted_next_turn(policy, sc, visible).action.amount.cents == 5600);

  visible.push_back(public_text(buyer_buy(5600)));
  visible.push_back(public_text(seller_sell(6300)));
  // Round 4 wants $59 but the budget cap holds it at $56.
  CHECK(scripted_next_turn(policy, sc, visible).action.amount.cents == 5600);
}

TEST_CASE("stubbornness delays the concession ladder") {
  ScriptedPolicy policy;
  policy.stubbornness = 1;
  Scenario sc = cologne_scenario();
  std::vector<std::string> visible{public_text(buyer_buy(5000)), public_text(seller_sell(6300))};
  CHECK(scripted_next_turn(policy, sc, visible).action.amount.cents == 5000);  // still round-1 bid
}

TEST_CASE("scripted buyer quits after its patience runs out") {
  ScriptedPolicy policy;
  policy.quit_after = 2;
  Scenario sc = cologne_scenario();
  std::vector<std::string> visible{
      public_text(buyer_buy(5000)), public_text(seller_sell(6300)),
      public_text(buyer_buy(5300)), public_text(seller_sell(6300))};
  TurnMessage t = scripted_next_turn(policy, sc, visible);  // round 3 > quit_after
  CHECK(t.action.verb == Verb::quit);
}

TEST_CASE("scripted buyer deals when the ask falls inside its acceptance window") {
  ScriptedPolicy policy;
  Scenario sc = cologne_scenario();
  std::vector<std::string> visible{public_text(buyer_buy(5000)), public_text(seller_sell(5200))};
  // Round-2 willingness $53; ask $52 <= 1.0 * 53 and within budget.
  TurnMessage t = scripted_next_turn(policy, sc, visible);
  CHECK(t.action.verb == Verb::deal);
  CHECK(t.action.amount.cents == 5200);
  CHECK(t.action.quantity == 1);
  CHECK(t.action.codename == "beauty_29");
}

TEST_CASE("constraint-respecting buyer never deals above budget") {
  ScriptedPolicy policy;
  policy.accept_ratio = 2.0;  // very permissive window
  Scenario sc = cologne_scenario();
  std::vector<std::string> visible{public_text(buyer_buy(5000)), public_text(seller_sell(6000))};
  CHECK(scripted_next_turn(policy, sc, visible).action.verb == Verb::buy);

  policy.respect_constraint = false;
  TurnMessage t = scripted_next_turn(policy, sc, visible);
  CHECK(t.action.verb == Verb::deal);
  CHECK(t.action.amount.cents == 6000);
}

TEST_CASE("overbid shifts buyer offers past the budget cap") {
  ScriptedPolicy policy;
  policy.opening_ratio = 1.0;
  policy.overbid_cents = 1;
  Scenario sc = cologne_scenario();
  TurnMessage t = scripted_next_turn(policy, sc, {});
  CHECK(t.action.verb == Verb::buy);
  CHECK(t.action.amount.cents == 5601);  // B + one cent
}

TEST_CASE("cent granularity skips whole-dollar rounding") {
  ScriptedPolicy policy;
  policy.granularity = PriceGranularity::cents;
  Scenario sc = cologne_scenario();
  CHECK(scripted_next_turn(policy, sc, {}).action.amount.cents == 5040);  // 0.9 * 56 exactly
}

TEST_CASE("scripted seller walks its ask down from list price") {
  ScriptedPolicy policy;
  policy.role = Role::seller;
  policy.opening_ratio = 0.9;
  policy.concession_step = 0.1;
  policy.accept_ratio = 0.8;
  Scenario sc = cologne_scenario();

  std::vector<std::string> visible{public_text(buyer_buy(1000))};
  TurnMessage t = scripted_next_turn(policy, sc, visible);
  CHECK(t.role == Role::seller);
  CHECK(t.action.verb == Verb::sell);
  CHECK(t.action.amount.cents == 6300);  // llround(0.9 * 70) = 63
  CHECK(t.dialogue == "I can offer it at $63.00.");

  visible.push_back(public_text(seller_sell(6300)));
  visible.push_back(public_text(buyer_buy(1200)));
  CHECK(scripted_next_turn(policy, sc, visible).action.amount.cents == 5600);  // 0.8 * 70
}

TEST_CASE("scripted seller floors its ask at cost") {
  ScriptedPolicy policy;
  policy.role = Role::seller;
  policy.opening_ratio = 0.2;  // wants $14, below the $23.24 cost
  policy.accept_ratio = 10.0;  // never accepts, isolates the ask path
  Scenario sc = cologne_scenario();
  std::vector<std::string> visible{public_text(buyer_buy(1000))};
  CHECK(scripted_next_turn(policy, sc, visible).action.amount.cents == 2324);

  policy.respect_constraint = false;
  CHECK(scripted_next_turn(policy, sc, visible).action.amount.cents == 1400);
}

TEST_CASE("scripted seller deals on a sufficient, profitable bid") {
  ScriptedPolicy policy;
  policy.role = Role::seller;
  policy.opening_ratio = 0.9;
  policy.accept_ratio = 0.8;
  Scenario sc = cologne_scenario();
  std::vector<std::string> visible{public_text(buyer_buy(5500))};
  // Ask $63; bid $55 >= 0.8 * 63 = $50.40 and clears cost.
  TurnMessage t = scripted_next_turn(policy, sc, visible);
  CHECK(t.action.verb == Verb::deal);
  CHECK(t.action.amount.cents == 5500);
}

TEST_CASE("constraint-respecting seller refuses sub-cost bids") {
  ScriptedPolicy policy;
  policy.role = Role::seller;
  policy.accept_ratio = 0.0;  // any bid passes the window test
  Scenario sc = cologne_scenario();
  std::vector<std::string> visible{public_text(buyer_buy(2300))};  // below $23.24 cost
  CHECK(scripted_next_turn(policy, sc, visible).action.verb == Verb::sell);

  policy.respect_constraint = false;
  TurnMessage t = scripted_next_turn(policy, sc, visible);
  CHECK(t.action.verb == Verb::deal);
  CHECK(t.action.amount.cents == 2300);
}

TEST_CASE("scripted agent output is deterministic serialized text") {
  Scenario sc = cologne_scenario();
  ScriptedAgent agent(ScriptedPolicy{}, sc);
  std::string a = agent.next_turn({}, "ctx", 1);
  std::string b = agent.next_turn({}, "other ctx", 999);
  CHECK(a == b);
  auto parsed = parse_turn(a, Role::buyer, Grammar::labeled, "beauty_29");
  REQUIRE(std::holds_alternative<TurnMessage>(parsed));
  CHECK(std::get<TurnMessage>(parsed).action.verb == Verb::buy);
}

TEST_CASE("scripted agent speaks the grammar it was built with") {
  Scenario sc = cologne_scenario();
  ScriptedAgent agent(ScriptedPolicy{}, sc, Grammar::tagged);
  std::string text = agent.next_turn({}, "", 0);
  CHECK(text.find("<REASONING>") == 0);
  CHECK(std::holds_alternative<TurnMessage>(parse_turn(text, Role::buyer, Grammar::tagged)));
}

TEST_CASE("fixed-script agent plays by own-turn count and then throws") {
  FixedScriptAgent agent(Role::buyer, {"first", "second"});
  CHECK(agent.next_turn({}, "", 0) == "first");
  CHECK(agent.next_turn({"b1", "s1"}, "", 0) == "second");
  // Seeds and context never matter; only the own-turn count does.
  CHECK(agent.next_turn({"b1", "s1"}, "ctx", 77) == "second");
  CHECK_THROWS_WITH_AS(agent.next_turn({"b1", "s1", "b2", "s2"}, "", 0),
                       "buyer script exhausted after 2 turns", ReplayError);

  FixedScriptAgent seller(Role::seller, {"only"});
  CHECK(seller.next_turn({"b1"}, "", 0) == "only");
  CHECK_THROWS_AS(seller.next_turn({"b1", "s1", "b2"}, "", 0), ReplayError);
}

TEST_CASE("undercutting seller offers below cost and deals at any bid") {
  Scenario sc = cologne_scenario();
  UndercutSellerAgent agent(sc);

  std::vector<std::string> no_bid{
      render_public(make_turn(Role::buyer, "", "", make_reject()), Grammar::labeled)};
  auto parsed = parse_turn(agent.next_turn(no_bid, "", 0), Role::seller, Grammar::labeled,
                           "beauty_29");
  TurnMessage t = std::get<TurnMessage>(parsed);
  CHECK(t.action.verb == Verb::sell);
  CHECK(t.action.amount.cents == 1162);  // half of cost, well below it

  std::vector<std::string> with_bid{public_text(buyer_buy(500))};
  parsed = parse_turn(agent.next_turn(with_bid, "", 0), Role::seller, Grammar::labeled,
                      "beauty_29");
  t = std::get<TurnMessage>(parsed);
  CHECK(t.action.verb == Verb::deal);
  CHECK(t.action.amount.cents == 500);  // far below cost; regulation must catch this
}

}  // TEST_SUITE
