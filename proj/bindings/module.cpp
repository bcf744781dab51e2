// Python surface for the arena core. Exposes the data types and the pure
// operations (protocol, catalog, reward, engine-on-scripted-agents, metrics,
// toy trainer); the HTTP transport and the CLI stay native-only.
//
// Exception mapping: std::invalid_argument -> ValueError,
// std::runtime_error family (CatalogError, ReplayError, ...) -> RuntimeError.
// Parse functions that return a violation in C++ raise ValueError here with
// the violation reason as the message.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "arena/agents.hpp"
#include "arena/catalog.hpp"
#include "arena/engine.hpp"
#include "arena/grpo.hpp"
#include "arena/metrics.hpp"
#include "arena/money.hpp"
#include "arena/prompts.hpp"
#include "arena/protocol.hpp"
#include "arena/reward.hpp"
#include "arena/rng.hpp"
#include "arena/transcript.hpp"

namespace py = pybind11;
using namespace arena;

namespace {

// One scripted-vs-scripted (or scripted-vs-undercut) episode with the engine
// knobs flattened to kwargs. Roles on the two policies are forced so a
// policy object built for one side cannot be passed to the other by mistake.
EpisodeRecord simulate_episode(const Scenario& scenario, ScriptedPolicy buyer,
                               ScriptedPolicy seller, std::uint64_t seed, bool undercut_seller,
                               Grammar buyer_grammar, Grammar seller_grammar,
                               int seller_max_attempts, bool buyer_resample,
                               int buyer_max_attempts, const std::string& label) {
  buyer.role = Role::buyer;
  seller.role = Role::seller;
  EngineConfig config;
  config.seller_max_attempts = seller_max_attempts;
  config.buyer_resample = buyer_resample;
  config.buyer_max_attempts = buyer_max_attempts;
  config.buyer_grammar = buyer_grammar;
  config.seller_grammar = seller_grammar;
  config.label = label;
  ScriptedAgent buyer_agent(buyer, scenario, buyer_grammar);
  if (undercut_seller) {
    UndercutSellerAgent seller_agent(scenario, seller_grammar);
    return run_episode(buyer_agent, seller_agent, scenario, config, seed);
  }
  ScriptedAgent seller_agent(seller, scenario, seller_grammar);
  return run_episode(buyer_agent, seller_agent, scenario, config, seed);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Bilateral price-negotiation arena: tripartite message protocol, "
      "turn-based episode engine with seller regulation, surplus reward, "
      "metrics, and a desk-scale group-relative toy trainer.";
  m.attr("__version__") = "0.1.0";

  // ---- enums ----

  py::enum_<Role>(m, "Role")
      .value("buyer", Role::buyer)
      .value("seller", Role::seller);

  py::enum_<Verb>(m, "Verb")
      .value("buy", Verb::buy)
      .value("sell", Verb::sell)
      .value("deal", Verb::deal)
      .value("reject", Verb::reject)
      .value("quit", Verb::quit);

  py::enum_<Grammar>(m, "Grammar")
      .value("labeled", Grammar::labeled)
      .value("tagged", Grammar::tagged);

  py::enum_<ScenarioClass>(m, "ScenarioClass")
      .value("mutual_interest", ScenarioClass::mutual_interest)
      .value("conflicting_interest", ScenarioClass::conflicting_interest);

  py::enum_<OutcomeKind>(m, "OutcomeKind")
      .value("deal", OutcomeKind::deal)
      .value("deadlock_turn_limit", OutcomeKind::deadlock_turn_limit)
      .value("quit_buyer", OutcomeKind::quit_buyer)
      .value("quit_seller", OutcomeKind::quit_seller)
      .value("boundary_format", OutcomeKind::boundary_format)
      .value("boundary_over_budget", OutcomeKind::boundary_over_budget);

  py::enum_<PriceGranularity>(m, "PriceGranularity")
      .value("dollars", PriceGranularity::dollars)
      .value("cents", PriceGranularity::cents);

  py::enum_<Persona>(m, "Persona")
      .value("none", Persona::none)
      .value("begging", Persona::begging)
      .value("insulting", Persona::insulting)
      .value("unyielding", Persona::unyielding);

  py::enum_<DealRateMode>(m, "DealRateMode")
      .value("all", DealRateMode::all)
      .value("mi_only", DealRateMode::mi_only);

  // ---- money ----

  py::class_<Money>(m, "Money", "Exact currency amount in integer cents.")
      .def(py::init<std::int64_t>(), py::arg("cents") = 0)
      .def_readwrite("cents", &Money::cents)
      .def("dollars", &Money::dollars)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(py::self < py::self)
      .def(py::self <= py::self)
      .def(py::self > py::self)
      .def(py::self >= py::self)
      .def("__hash__", [](const Money& self) { return py::hash(py::int_(self.cents)); })
      .def("__repr__", [](const Money& self) { return format_money(self); });

  m.def("parse_money", &parse_money, py::arg("text"),
        "Lenient '$X.YZ' parse; returns None on anything malformed.");
  m.def("format_money", &format_money, py::arg("amount"),
        "Canonical '$X.YZ' form, always two decimals.");
  m.def("money_from_dollars", &money_from_dollars, py::arg("value"),
        "Nearest-cent rounding, ties away from zero.");

  // ---- protocol ----

  py::class_<ActionKind>(m, "ActionKind",
                         "One negotiation action. amount/quantity/codename are "
                         "meaningful only for the priced verbs (buy, sell, deal).")
      .def(py::init([](Verb verb, Money amount, int quantity, std::string codename) {
             return ActionKind{verb, amount, quantity, std::move(codename)};
           }),
           py::arg("verb") = Verb::reject, py::arg("amount") = Money{}, py::arg("quantity") = 1,
           py::arg("codename") = "")
      .def_readwrite("verb", &ActionKind::verb)
      .def_readwrite("amount", &ActionKind::amount)
      .def_readwrite("quantity", &ActionKind::quantity)
      .def_readwrite("codename", &ActionKind::codename)
      .def("priced", &ActionKind::priced)
      .def(py::self == py::self)
      .def("__repr__", [](const ActionKind& self) { return serialize_action(self); });

  py::class_<TurnMessage>(m, "TurnMessage",
                          "Tripartite turn: hidden reasoning, public dialogue, action. "
                          "Equality covers the semantic fields only.")
      .def(py::init(&make_turn), py::arg("role"), py::arg("reasoning"), py::arg("dialogue"),
           py::arg("action"))
      .def_readwrite("role", &TurnMessage::role)
      .def_readwrite("reasoning", &TurnMessage::reasoning)
      .def_readwrite("dialogue", &TurnMessage::dialogue)
      .def_readwrite("action", &TurnMessage::action)
      .def_readonly("action_text", &TurnMessage::action_text)
      .def_readonly("raw", &TurnMessage::raw)
      .def_readonly("regulated", &TurnMessage::regulated)
      .def(py::self == py::self);

  py::class_<SequenceCheck>(m, "SequenceCheck")
      .def_readonly("ok", &SequenceCheck::ok)
      .def_readonly("reason", &SequenceCheck::reason)
      .def("__bool__", [](const SequenceCheck& self) { return self.ok; });

  m.def(
      "parse_action",
      [](std::string_view text, std::string_view default_codename) {
        ParsedAction result = parse_action(text, default_codename);
        if (auto* violation = std::get_if<FormatViolation>(&result)) {
          throw py::value_error(violation->reason);
        }
        return std::get<ActionKind>(std::move(result));
      },
      py::arg("text"), py::arg("default_codename") = "",
      "Parses one action line. Raises ValueError with the violation reason.");

  m.def(
      "parse_turn",
      [](std::string_view raw, Role role, Grammar grammar, std::string_view default_codename) {
        ParsedTurn result = parse_turn(raw, role, grammar, default_codename);
        if (auto* violation = std::get_if<FormatViolation>(&result)) {
          throw py::value_error(violation->reason);
        }
        return std::get<TurnMessage>(std::move(result));
      },
      py::arg("raw"), py::arg("role"), py::arg("grammar") = Grammar::labeled,
      py::arg("default_codename") = "",
      "Full tripartite parse. Raises ValueError with the violation reason.");

  m.def("serialize_action", &serialize_action, py::arg("action"),
        "Canonical action text, e.g. 'BUY $10.00 (1x beauty_29)'.");
  m.def("serialize_turn", &serialize_turn, py::arg("turn"), py::arg("grammar"),
        "Canonical full-turn text for a grammar; output re-parses to an equal turn.");
  m.def("render_public", &render_public, py::arg("turn"), py::arg("grammar"),
        "Dialogue plus action only; reasoning never appears.");
  m.def("validate_sequence", &validate_sequence, py::arg("history"), py::arg("next"),
        "Checks role alternation and action legality of `next` after `history`.");

  // ---- catalog / scenarios ----

  py::class_<Product>(m, "Product")
      .def(py::init<>())
      .def_readwrite("codename", &Product::codename)
      .def_readwrite("title", &Product::title)
      .def_readwrite("category", &Product::category)
      .def_readwrite("list_price", &Product::list_price)
      .def_readwrite("current_price", &Product::current_price)
      .def_readwrite("average_price", &Product::average_price)
      .def_readwrite("lowest_price", &Product::lowest_price)
      .def_readwrite("highest_price", &Product::highest_price)
      .def_readwrite("lowest_price_date", &Product::lowest_price_date)
      .def_readwrite("highest_price_date", &Product::highest_price_date)
      .def_readwrite("current_price_date", &Product::current_price_date)
      .def_readwrite("description", &Product::description)
      .def_readwrite("features", &Product::features)
      .def_readwrite("buyer_budget", &Product::buyer_budget)
      .def_readwrite("seller_cost", &Product::seller_cost);

  py::class_<Scenario>(m, "Scenario",
                       "Economic setup for one episode; budget != cost always holds.")
      .def(py::init<>())
      .def_readwrite("product", &Scenario::product)
      .def_readwrite("budget", &Scenario::budget)
      .def_readwrite("cost", &Scenario::cost)
      .def_readwrite("quantity", &Scenario::quantity)
      .def_readwrite("max_turns", &Scenario::max_turns)
      .def("mutual_interest", &Scenario::mutual_interest);

  py::class_<SplitSpec>(m, "SplitSpec")
      .def(py::init([](std::uint64_t seed, std::size_t train_count, std::size_t test_count) {
             return SplitSpec{seed, train_count, test_count};
           }),
           py::arg("seed") = 0, py::arg("train_count") = 802, py::arg("test_count") = 128)
      .def_readwrite("seed", &SplitSpec::seed)
      .def_readwrite("train_count", &SplitSpec::train_count)
      .def_readwrite("test_count", &SplitSpec::test_count);

  py::class_<Split>(m, "Split")
      .def_readonly("train", &Split::train)
      .def_readonly("test", &Split::test);

  m.def("load_catalog", &load_catalog, py::arg("path"), py::arg("field_map") = FieldMap{},
        py::call_guard<py::gil_scoped_release>(),
        "Reads a JSON-array or JSONL catalog file. Raises RuntimeError naming "
        "the record and field on malformed input.");
  m.def("parse_catalog", &parse_catalog, py::arg("text"), py::arg("field_map") = FieldMap{},
        "Same as load_catalog, from an in-memory string.");
  m.def("serialize_catalog", &serialize_catalog, py::arg("products"),
        "JSON array string with money fields in canonical '$X.YZ' form.");
  m.def("build_scenario", &build_scenario, py::arg("product"),
        py::arg("budget") = std::nullopt, py::arg("cost") = std::nullopt,
        py::arg("quantity") = 1, py::arg("max_turns") = 6,
        "Assembles a scenario, defaulting budget/cost from the record's "
        "extension fields. Raises ValueError when budget == cost or a side "
        "is missing entirely.");
  m.def("split_catalog", &split_catalog, py::arg("products"), py::arg("spec"),
        "Deterministic disjoint train/test split by codename.");
  m.def("synth_scenarios", &synth_scenarios, py::arg("seed"), py::arg("count"),
        py::arg("price_lo"), py::arg("price_hi"), py::arg("ci_fraction"),
        py::arg("max_turns") = 6,
        "Deterministic synthetic pool; round(count * ci_fraction) scenarios "
        "have budget < cost.");

  // ---- reward ----

  m.def("classify", &classify, py::arg("budget"), py::arg("cost"));
  m.def("surplus_reward", &surplus_reward, py::arg("budget"), py::arg("cost"),
        py::arg("price_final"), "(B - P) / |B - C|, clipped to [-1, 1].");
  m.def("terminal_reward", &terminal_reward, py::arg("budget"), py::arg("cost"),
        py::arg("outcome"),
        "deal -> surplus_reward, deadlock/quit -> 0.0, buyer boundary "
        "violations -> -1.0.");

  py::class_<Outcome>(m, "Outcome")
      .def(py::init<>())
      .def_readwrite("kind", &Outcome::kind)
      .def_readwrite("price_final", &Outcome::price_final)
      .def_readwrite("detail", &Outcome::detail)
      .def_readwrite("turns_used", &Outcome::turns_used)
      .def_static("deal", &Outcome::deal, py::arg("price"));

  m.def("dealt", &dealt, py::arg("outcome"));

  // ---- agents / engine ----

  py::class_<ScriptedPolicy>(m, "ScriptedPolicy",
                             "Deterministic concession-ladder policy for either side.")
      .def(py::init([](Role role, double opening_ratio, double concession_step,
                       double accept_ratio, int stubbornness, int quit_after,
                       std::int64_t overbid_cents, bool respect_constraint,
                       PriceGranularity granularity) {
             return ScriptedPolicy{role,        opening_ratio, concession_step,
                                   accept_ratio, stubbornness,  quit_after,
                                   overbid_cents, respect_constraint, granularity};
           }),
           py::arg("role") = Role::buyer, py::arg("opening_ratio") = 0.9,
           py::arg("concession_step") = 0.05, py::arg("accept_ratio") = 1.0,
           py::arg("stubbornness") = 0, py::arg("quit_after") = 0,
           py::arg("overbid_cents") = 0, py::arg("respect_constraint") = true,
           py::arg("granularity") = PriceGranularity::dollars)
      .def_readwrite("role", &ScriptedPolicy::role)
      .def_readwrite("opening_ratio", &ScriptedPolicy::opening_ratio)
      .def_readwrite("concession_step", &ScriptedPolicy::concession_step)
      .def_readwrite("accept_ratio", &ScriptedPolicy::accept_ratio)
      .def_readwrite("stubbornness", &ScriptedPolicy::stubbornness)
      .def_readwrite("quit_after", &ScriptedPolicy::quit_after)
      .def_readwrite("overbid_cents", &ScriptedPolicy::overbid_cents)
      .def_readwrite("respect_constraint", &ScriptedPolicy::respect_constraint)
      .def_readwrite("granularity", &ScriptedPolicy::granularity);

  m.def("scripted_next_turn", &scripted_next_turn, py::arg("policy"), py::arg("scenario"),
        py::arg("visible_history"), py::arg("grammar") = Grammar::labeled,
        "One scripted decision given the public history (pure function form).");

  py::class_<EpisodeRecord>(m, "EpisodeRecord")
      .def_readonly("scenario", &EpisodeRecord::scenario)
      .def_readonly("seed", &EpisodeRecord::seed)
      .def_readonly("transcript", &EpisodeRecord::transcript)
      .def_readonly("outcome", &EpisodeRecord::outcome)
      .def_readonly("reward", &EpisodeRecord::reward)
      .def_readonly("overshoot", &EpisodeRecord::overshoot)
      .def_readonly("first_buyer_offer", &EpisodeRecord::first_buyer_offer)
      .def_readonly("malformed_raw", &EpisodeRecord::malformed_raw)
      .def_readonly("label", &EpisodeRecord::label)
      .def_readonly("buyer_grammar", &EpisodeRecord::buyer_grammar)
      .def_readonly("seller_grammar", &EpisodeRecord::seller_grammar)
      .def("turns_used", &EpisodeRecord::turns_used);

  m.def("simulate_episode", &simulate_episode, py::arg("scenario"),
        py::arg("buyer_policy") = ScriptedPolicy{},
        py::arg_v("seller_policy", ScriptedPolicy{Role::seller},
                  "ScriptedPolicy(role=Role.seller)"),
        py::arg("seed") = 0, py::arg("undercut_seller") = false,
        py::arg("buyer_grammar") = Grammar::labeled, py::arg("seller_grammar") = Grammar::labeled,
        py::arg("seller_max_attempts") = 3, py::arg("buyer_resample") = false,
        py::arg("buyer_max_attempts") = 3, py::arg("label") = std::string("scripted"),
        py::call_guard<py::gil_scoped_release>(),
        "One full episode between scripted policies (or against the "
        "regulation-probing undercut seller). Policy roles are forced to "
        "their sides. Bit-reproducible for a fixed seed.");

  m.def("episode_to_jsonl", &episode_to_jsonl, py::arg("record"),
        "One-line JSON form of an episode, money in canonical '$X.YZ' strings.");

  // ---- metrics ----

  py::class_<Stat>(m, "Stat",
                   "Mean and standard error over a subpopulation; mean is NaN "
                   "when count == 0, SE is 0 when count < 2.")
      .def(py::init<>())
      .def_readwrite("mean", &Stat::mean)
      .def_readwrite("se", &Stat::se)
      .def_readwrite("count", &Stat::count)
      .def("__repr__", [](const Stat& self) {
        return "Stat(mean=" + std::to_string(self.mean) + ", se=" + std::to_string(self.se) +
               ", count=" + std::to_string(self.count) + ")";
      });

  py::class_<OutcomeRow>(m, "OutcomeRow", "Flat per-episode measurement row.")
      .def(py::init<>())
      .def_readwrite("cls", &OutcomeRow::cls)
      .def_readwrite("reward", &OutcomeRow::reward)
      .def_readwrite("dealt", &OutcomeRow::dealt)
      .def_readwrite("price_final", &OutcomeRow::price_final)
      .def_readwrite("bargained_ratio", &OutcomeRow::bargained_ratio)
      .def_readwrite("first_offer_ratio", &OutcomeRow::first_offer_ratio)
      .def_readwrite("overshoot", &OutcomeRow::overshoot)
      .def_readwrite("turns_used", &OutcomeRow::turns_used);

  py::class_<MetricsSummary>(m, "MetricsSummary")
      .def(py::init<>())
      .def_readonly("episodes", &MetricsSummary::episodes)
      .def_readonly("mi_count", &MetricsSummary::mi_count)
      .def_readonly("ci_count", &MetricsSummary::ci_count)
      .def_readonly("reward", &MetricsSummary::reward)
      .def_readonly("reward_mi", &MetricsSummary::reward_mi)
      .def_readonly("reward_ci", &MetricsSummary::reward_ci)
      .def_readonly("bargained_ratio", &MetricsSummary::bargained_ratio)
      .def_readonly("first_offer_ratio", &MetricsSummary::first_offer_ratio)
      .def_readonly("episode_length", &MetricsSummary::episode_length)
      .def_readonly("episode_length_mi", &MetricsSummary::episode_length_mi)
      .def_readonly("episode_length_ci", &MetricsSummary::episode_length_ci)
      .def_readonly("deal_rate_all", &MetricsSummary::deal_rate_all)
      .def_readonly("deal_rate_mi", &MetricsSummary::deal_rate_mi)
      .def_readonly("overshoot_rate", &MetricsSummary::overshoot_rate);

  m.def("to_row", &to_row, py::arg("record"));
  m.def("bargained_ratio", py::overload_cast<Money, Money, Money>(&bargained_ratio),
        py::arg("budget"), py::arg("cost"), py::arg("price_final"),
        "(B - P) / (B - C), signed denominator, no clip. Raises ValueError "
        "when budget == cost.");
  m.def("bargained_ratio", py::overload_cast<const EpisodeRecord&>(&bargained_ratio),
        py::arg("record"), "Per-episode form; None unless the episode dealt.");
  m.def("first_offer_ratio", &first_offer_ratio, py::arg("record"),
        "Offer1 / B; None when the opening action was not a Buy.");
  m.def("compute_stat", &compute_stat, py::arg("values"));
  m.def("deal_rate", &deal_rate, py::arg("rows"), py::arg("mode") = DealRateMode::all,
        "Raises ValueError on an empty population.");
  m.def("overshoot_rate", &overshoot_rate, py::arg("rows"),
        "Raises ValueError on an empty population.");
  m.def("aggregate", &aggregate, py::arg("rows"),
        "Full metrics summary; raises ValueError on empty rows.");
  m.def("curves_csv", &curves_csv, py::arg("iterations"),
        "One CSV row per training iteration, NaN spelled 'nan'.");
  m.def("summary_csv", &summary_csv, py::arg("labeled"),
        "Wide one-row-per-label CSV. Takes [(label, summary), ...].");
  m.def("report_markdown", &report_markdown, py::arg("labeled"),
        "Benchmark-style markdown table, cells 'mean +/- SE'.");

  // ---- prompts ----

  py::class_<PromptPair>(m, "PromptPair")
      .def_readonly("system", &PromptPair::system)
      .def_readonly("context", &PromptPair::context);

  m.def("assemble_buyer_prompt", &assemble_buyer_prompt, py::arg("scenario"),
        "Buyer system + context; the seller's cost never appears in it.");
  m.def("assemble_seller_prompt", &assemble_seller_prompt, py::arg("scenario"),
        py::arg("persona") = Persona::none,
        "Seller system + context; the buyer's budget never appears in it.");
  m.def("persona_name", &persona_name, py::arg("persona"));
  m.def("persona_from_name", &persona_from_name, py::arg("name"),
        "None for an unknown name; accepts 'default', 'none', and ''.");
  m.def("persona_text", &persona_text, py::arg("persona"),
        py::return_value_policy::reference);

  // ---- toy trainer ----

  m.def("group_advantages", &group_advantages, py::arg("rewards"), py::arg("epsilon") = 1e-8,
        "(R_i - mean) / (population sd + epsilon); all-equal rewards give "
        "exact zeros.");

  py::class_<ToyBuyerPolicy>(m, "ToyBuyerPolicy",
                             "Discrete buyer policy: opening anchor, concession step, "
                             "per-round close propensity. Logits are free parameters.")
      .def_static("uniform", &ToyBuyerPolicy::uniform, py::arg("max_turns") = 6)
      .def_readwrite("anchor_ratios", &ToyBuyerPolicy::anchor_ratios)
      .def_readwrite("anchor_logits", &ToyBuyerPolicy::anchor_logits)
      .def_readwrite("step_ratios", &ToyBuyerPolicy::step_ratios)
      .def_readwrite("step_logits", &ToyBuyerPolicy::step_logits)
      .def_readwrite("close_logits", &ToyBuyerPolicy::close_logits)
      .def_readwrite("sample_floor", &ToyBuyerPolicy::sample_floor)
      .def("anchor_probs", &ToyBuyerPolicy::anchor_probs)
      .def("step_probs", &ToyBuyerPolicy::step_probs)
      .def("__str__", [](const ToyBuyerPolicy& self) { return policy_to_text(self); });

  m.def("policy_to_text", &policy_to_text, py::arg("policy"));

  py::class_<ToyChoices>(m, "ToyChoices")
      .def_readonly("anchor", &ToyChoices::anchor)
      .def_readonly("step", &ToyChoices::step)
      .def_readonly("closes", &ToyChoices::closes);

  py::class_<GroupBatch>(m, "GroupBatch")
      .def_readonly("scenario", &GroupBatch::scenario)
      .def_readonly("rewards", &GroupBatch::rewards)
      .def_readonly("advantages", &GroupBatch::advantages)
      .def_readonly("trajectories", &GroupBatch::trajectories)
      .def_readonly("choices", &GroupBatch::choices);

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init([](std::uint64_t seed, int iterations, int batch_size, int group_size,
                       int max_turns, double learning_rate, double epsilon, double sample_floor,
                       bool per_batch_norm) {
             return TrainConfig{seed,       iterations, batch_size,   group_size,    max_turns,
                                learning_rate, epsilon, sample_floor, per_batch_norm};
           }),
           py::arg("seed") = 0, py::arg("iterations") = 60, py::arg("batch_size") = 64,
           py::arg("group_size") = 8, py::arg("max_turns") = 6, py::arg("learning_rate") = 3e-5,
           py::arg("epsilon") = 1e-8, py::arg("sample_floor") = 5e-4,
           py::arg("per_batch_norm") = false)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("iterations", &TrainConfig::iterations)
      .def_readwrite("batch_size", &TrainConfig::batch_size)
      .def_readwrite("group_size", &TrainConfig::group_size)
      .def_readwrite("max_turns", &TrainConfig::max_turns)
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("epsilon", &TrainConfig::epsilon)
      .def_readwrite("sample_floor", &TrainConfig::sample_floor)
      .def_readwrite("per_batch_norm", &TrainConfig::per_batch_norm);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("policy", &TrainResult::policy)
      .def_readonly("curve", &TrainResult::curve);

  m.def(
      "rollout_group",
      [](const ToyBuyerPolicy& policy, ScriptedPolicy seller, const Scenario& scenario,
         int group_size, std::uint64_t group_seed, double epsilon) {
        seller.role = Role::seller;
        return rollout_group(policy, seller, scenario, group_size, group_seed, epsilon);
      },
      py::arg("policy"), py::arg("seller"), py::arg("scenario"), py::arg("group_size"),
      py::arg("group_seed"), py::arg("epsilon") = 1e-8,
      py::call_guard<py::gil_scoped_release>(),
      "group_size rollouts of one scenario under independently sampled buyer "
      "trajectories; advantages are per-group.");

  m.def("policy_update", &policy_update, py::arg("policy"), py::arg("batches"),
        py::arg("learning_rate"),
        "One score-function gradient-ascent step averaged over every "
        "trajectory; learning_rate 0 returns the policy bit-identically.");

  m.def(
      "train",
      [](const TrainConfig& config, const std::vector<Scenario>& scenarios,
         ScriptedPolicy seller) {
        seller.role = Role::seller;
        return train(config, scenarios, seller);
      },
      py::arg("config"), py::arg("scenarios"),
      py::arg_v("seller", ScriptedPolicy{Role::seller}, "ScriptedPolicy(role=Role.seller)"),
      py::call_guard<py::gil_scoped_release>(),
      "Full training loop; returns the final policy and one metrics summary "
      "per iteration.");

  // ---- seeds ----

  m.def("split_seed", py::overload_cast<std::uint64_t, std::uint64_t>(&split_seed),
        py::arg("seed"), py::arg("index"),
        "Deterministic child-seed derivation (the engine gives move k attempt "
        "a the seed split_seed(episode_seed, k, a)).");
  m.def("split_seed", py::overload_cast<std::uint64_t, std::uint64_t, std::uint64_t>(&split_seed),
        py::arg("seed"), py::arg("a"), py::arg("b"));
}
