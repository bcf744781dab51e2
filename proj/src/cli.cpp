#include "arena/cli.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "arena/agents.hpp"
#include "arena/catalog.hpp"
#include "arena/engine.hpp"
#include "arena/errors.hpp"
#include "arena/grpo.hpp"
#include "arena/metrics.hpp"
#include "arena/prompts.hpp"
#include "arena/remote.hpp"
#include "arena/rng.hpp"
#include "arena/transcript.hpp"

namespace arena {

namespace {

namespace fs = std::filesystem;

using Snapshot = std::vector<std::pair<std::string, std::string>>;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
}

void write_snapshot(const fs::path& dir, const Snapshot& kv) {
  std::string text;
  for (const auto& [key, value] : kv) text += key + " " + value + "\n";
  write_file(dir / "config.snapshot", text);
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

Grammar grammar_from_flag(const std::string& name) {
  if (name == "labeled") return Grammar::labeled;
  if (name == "tagged") return Grammar::tagged;
  throw CLI::ValidationError("--grammar", "expected 'labeled' or 'tagged', got '" + name + "'");
}

// Shared scenario-source flags. Exactly one of --catalog / --synth drives a
// run; synthetic pools are deterministic in the run seed.
struct ScenarioSource {
  std::string catalog_path;
  std::size_t synth_count = 0;
  double ci_fraction = 0.0;
  double price_lo = 20.0;
  double price_hi = 200.0;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--catalog", catalog_path,
                    "catalog file (JSON array or JSONL) with buyer_budget/seller_cost fields");
    cmd->add_option("--synth", synth_count, "generate this many synthetic scenarios instead");
    cmd->add_option("--ci_fraction", ci_fraction,
                    "fraction of synthetic scenarios with budget < cost")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--price_lo", price_lo, "synthetic list-price floor, dollars");
    cmd->add_option("--price_hi", price_hi, "synthetic list-price ceiling, dollars");
  }

  std::vector<Scenario> build(std::uint64_t seed, int max_turns) const {
    if (!catalog_path.empty() && synth_count > 0) {
      throw CLI::ValidationError("--catalog", "use either --catalog or --synth, not both");
    }
    if (catalog_path.empty() && synth_count == 0) {
      throw CLI::ValidationError("--catalog", "a scenario source is required: --catalog or --synth");
    }
    if (synth_count > 0) {
      return synth_scenarios(seed, synth_count, money_from_dollars(price_lo),
                             money_from_dollars(price_hi), ci_fraction, max_turns);
    }
    std::vector<Scenario> scenarios;
    for (const Product& product : load_catalog(catalog_path)) {
      if (!product.buyer_budget || !product.seller_cost) {
        std::cerr << "skipping " << product.codename
                  << ": no buyer_budget/seller_cost fields\n";
        continue;
      }
      scenarios.push_back(build_scenario(product, std::nullopt, std::nullopt, 1, max_turns));
    }
    if (scenarios.empty()) {
      throw std::runtime_error("catalog yields no playable scenarios: " + catalog_path);
    }
    return scenarios;
  }

  void snapshot_into(Snapshot& kv) const {
    kv.emplace_back("catalog", catalog_path.empty() ? "-" : catalog_path);
    kv.emplace_back("synth", std::to_string(synth_count));
    kv.emplace_back("ci_fraction", fmt_double(ci_fraction));
    kv.emplace_back("price_lo", fmt_double(price_lo));
    kv.emplace_back("price_hi", fmt_double(price_hi));
  }
};

struct ScriptedFlags {
  double opening = 0.9;
  double step = 0.05;
  double accept = 1.0;
  int stubbornness = 0;
  int quit_after = 0;
  std::int64_t overbid_cents = 0;
  bool cents = false;
  bool ignore_constraint = false;

  void add_flags(CLI::App* cmd, const std::string& prefix) {
    cmd->add_option("--" + prefix + "_opening", opening, "opening offer as a fraction of the limit");
    cmd->add_option("--" + prefix + "_step", step, "per-round concession fraction");
    cmd->add_option("--" + prefix + "_accept", accept, "acceptance threshold ratio");
    cmd->add_option("--" + prefix + "_stubbornness", stubbornness,
                    "rounds to hold the opening price");
    cmd->add_option("--" + prefix + "_quit_after", quit_after, "quit after this round (0 = never)");
    if (prefix == "buyer") {
      cmd->add_option("--buyer_overbid_cents", overbid_cents,
                      "add this many cents to every buyer offer (budget-violation probe)");
    }
    cmd->add_flag("--" + prefix + "_cents", cents, "price at cent granularity (default: whole dollars)");
    cmd->add_flag("--" + prefix + "_ignore_constraint", ignore_constraint,
                  "do not clamp offers to the private limit");
  }

  ScriptedPolicy policy(Role role) const {
    ScriptedPolicy p;
    p.role = role;
    p.opening_ratio = opening;
    p.concession_step = step;
    p.accept_ratio = accept;
    p.stubbornness = stubbornness;
    p.quit_after = quit_after;
    p.overbid_cents = overbid_cents;
    p.respect_constraint = !ignore_constraint;
    p.granularity = cents ? PriceGranularity::cents : PriceGranularity::dollars;
    return p;
  }

  void snapshot_into(Snapshot& kv, const std::string& prefix) const {
    kv.emplace_back(prefix + "_opening", fmt_double(opening));
    kv.emplace_back(prefix + "_step", fmt_double(step));
    kv.emplace_back(prefix + "_accept", fmt_double(accept));
    kv.emplace_back(prefix + "_stubbornness", std::to_string(stubbornness));
    kv.emplace_back(prefix + "_quit_after", std::to_string(quit_after));
    kv.emplace_back(prefix + "_overbid_cents", std::to_string(overbid_cents));
    kv.emplace_back(prefix + "_cents", cents ? "true" : "false");
    kv.emplace_back(prefix + "_ignore_constraint", ignore_constraint ? "true" : "false");
  }
};

OutcomeRow stored_to_row(const StoredEpisode& ep) {
  OutcomeRow row;
  row.cls = classify(ep.scenario.budget, ep.scenario.cost);
  row.reward = ep.reward;
  row.dealt = ep.outcome_kind == "deal";
  if (ep.price_final) row.price_final = ep.price_final->dollars();
  if (row.dealt && ep.price_final) {
    row.bargained_ratio = bargained_ratio(ep.scenario.budget, ep.scenario.cost, *ep.price_final);
  }
  if (ep.first_buyer_offer) {
    row.first_offer_ratio = ep.first_buyer_offer->dollars() / ep.scenario.budget.dollars();
  }
  row.overshoot = ep.overshoot;
  row.turns_used = ep.turns_used;
  return row;
}

void write_run_outputs(const fs::path& out_dir, const std::vector<EpisodeRecord>& records) {
  write_transcripts((out_dir / "transcripts.jsonl").string(), records);
  std::vector<OutcomeRow> rows;
  rows.reserve(records.size());
  for (const auto& record : records) rows.push_back(to_row(record));
  const std::string label = records.empty() ? "" : records.front().label;
  write_file(out_dir / "summary.csv", summary_csv({{label, aggregate(rows)}}));
}

// ---- simulate ----

struct SimulateOpts {
  ScenarioSource source;
  ScriptedFlags buyer, seller;
  bool seller_undercut = false;
  int repeat = 1;
  int max_turns = 6;
  int seller_max_attempts = 3;
  bool buyer_resample = false;
  std::string buyer_grammar = "labeled";
  std::string seller_grammar = "labeled";
  std::uint64_t seed = 0;
  std::string label = "scripted";
  std::string out_dir = "runs/simulate";
};

int cmd_simulate(const SimulateOpts& opts) {
  const std::vector<Scenario> scenarios = opts.source.build(opts.seed, opts.max_turns);

  EngineConfig config;
  config.seller_max_attempts = opts.seller_max_attempts;
  config.buyer_resample = opts.buyer_resample;
  config.buyer_grammar = grammar_from_flag(opts.buyer_grammar);
  config.seller_grammar = grammar_from_flag(opts.seller_grammar);
  config.label = opts.label;

  std::vector<EpisodeRecord> records;
  records.reserve(scenarios.size() * static_cast<std::size_t>(opts.repeat));
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    for (int r = 0; r < opts.repeat; ++r) {
      ScriptedAgent buyer(opts.buyer.policy(Role::buyer), scenarios[i], config.buyer_grammar);
      std::unique_ptr<Agent> seller;
      if (opts.seller_undercut) {
        seller = std::make_unique<UndercutSellerAgent>(scenarios[i], config.seller_grammar);
      } else {
        seller = std::make_unique<ScriptedAgent>(opts.seller.policy(Role::seller), scenarios[i],
                                                 config.seller_grammar);
      }
      records.push_back(run_episode(buyer, *seller, scenarios[i], config,
                                    split_seed(opts.seed, i, static_cast<std::uint64_t>(r))));
    }
  }

  fs::create_directories(opts.out_dir);
  write_run_outputs(opts.out_dir, records);

  Snapshot kv{{"mode", "simulate"},
              {"seed", std::to_string(opts.seed)},
              {"label", opts.label},
              {"repeat", std::to_string(opts.repeat)},
              {"max_turns", std::to_string(opts.max_turns)},
              {"seller_max_attempts", std::to_string(opts.seller_max_attempts)},
              {"buyer_resample", opts.buyer_resample ? "true" : "false"},
              {"buyer_grammar", opts.buyer_grammar},
              {"seller_grammar", opts.seller_grammar},
              {"seller_undercut", opts.seller_undercut ? "true" : "false"}};
  opts.source.snapshot_into(kv);
  opts.buyer.snapshot_into(kv, "buyer");
  opts.seller.snapshot_into(kv, "seller");
  write_snapshot(opts.out_dir, kv);

  std::cout << "simulate: " << records.size() << " episodes -> " << opts.out_dir << "\n";
  return 0;
}

// ---- evaluate ----

struct EvaluateOpts {
  ScenarioSource source;
  int batch_size = 128;
  int group_size = 4;
  int max_turns = 6;
  int max_tokens = 4000;
  double buyer_temperature = 1.0;
  double seller_temperature = 0.7;
  int concurrency = 8;
  std::string persona = "default";
  std::string endpoint, api_key, model;
  std::string seller_endpoint, seller_model;
  int max_retries = 3;
  int seller_max_attempts = 3;
  bool buyer_resample = false;
  std::uint64_t seed = 0;
  std::string label;
  std::string out_dir = "runs/evaluate";
};

int cmd_evaluate(const EvaluateOpts& opts) {
  RemoteModelConfig buyer_config = RemoteModelConfig::from_env();
  if (!opts.endpoint.empty()) buyer_config.endpoint = opts.endpoint;
  if (!opts.api_key.empty()) buyer_config.api_key = opts.api_key;
  if (!opts.model.empty()) buyer_config.model = opts.model;
  buyer_config.temperature = opts.buyer_temperature;
  buyer_config.max_tokens = opts.max_tokens;
  buyer_config.max_retries = opts.max_retries;
  if (buyer_config.endpoint.empty()) {
    std::cerr << "evaluate: no endpoint configured (set ARENA_ENDPOINT or pass --endpoint)\n";
    return 2;
  }

  RemoteModelConfig seller_config = buyer_config;
  if (!opts.seller_endpoint.empty()) seller_config.endpoint = opts.seller_endpoint;
  if (!opts.seller_model.empty()) seller_config.model = opts.seller_model;
  seller_config.temperature = opts.seller_temperature;

  auto persona = persona_from_name(opts.persona);
  if (!persona) {
    std::cerr << "evaluate: unknown persona '" << opts.persona << "'\n";
    return 2;
  }

  std::vector<Scenario> scenarios = opts.source.build(opts.seed, opts.max_turns);
  if (scenarios.size() > static_cast<std::size_t>(opts.batch_size)) {
    scenarios.resize(static_cast<std::size_t>(opts.batch_size));
  }

  EngineConfig config;
  config.seller_max_attempts = opts.seller_max_attempts;
  config.buyer_resample = opts.buyer_resample;
  config.label = opts.label;
  if (config.label.empty()) {
    config.label = buyer_config.model.empty() ? "remote" : buyer_config.model;
    if (*persona != Persona::none) config.label += ":" + std::string(persona_name(*persona));
  }

  const std::size_t total = scenarios.size() * static_cast<std::size_t>(opts.group_size);
  std::vector<std::optional<EpisodeRecord>> slots(total);
  std::atomic<std::size_t> cursor{0};
  std::atomic<std::size_t> aborted{0};
  std::mutex log_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= total) return;
      const std::size_t i = k / static_cast<std::size_t>(opts.group_size);
      const std::uint64_t g = k % static_cast<std::size_t>(opts.group_size);
      const Scenario& scenario = scenarios[i];
      RemoteAgent buyer(buyer_config, Role::buyer, assemble_buyer_prompt(scenario).system);
      RemoteAgent seller(seller_config, Role::seller,
                         assemble_seller_prompt(scenario, *persona).system);
      try {
        slots[k] = run_episode(buyer, seller, scenario, config, split_seed(opts.seed, i, g));
      } catch (const EpisodeAborted& e) {
        aborted.fetch_add(1);
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "episode " << scenario.product.codename << "/" << g
                  << " aborted: " << e.what() << "\n";
      }
    }
  };

  std::vector<std::thread> threads;
  const int thread_count = std::max(1, std::min<int>(opts.concurrency, static_cast<int>(total)));
  threads.reserve(static_cast<std::size_t>(thread_count));
  for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
  for (auto& thread : threads) thread.join();

  std::vector<EpisodeRecord> records;
  records.reserve(total);
  for (auto& slot : slots) {
    if (slot) records.push_back(std::move(*slot));
  }
  if (records.empty()) {
    std::cerr << "evaluate: every episode aborted; nothing to score\n";
    return 1;
  }

  fs::create_directories(opts.out_dir);
  write_run_outputs(opts.out_dir, records);

  Snapshot kv{{"mode", "evaluate"},
              {"seed", std::to_string(opts.seed)},
              {"label", config.label},
              {"endpoint", buyer_config.endpoint},
              {"model", buyer_config.model},
              {"seller_endpoint", seller_config.endpoint},
              {"seller_model", seller_config.model},
              {"persona", persona_name(*persona)},
              {"batch_size", std::to_string(opts.batch_size)},
              {"group_size", std::to_string(opts.group_size)},
              {"max_turns", std::to_string(opts.max_turns)},
              {"max_tokens", std::to_string(opts.max_tokens)},
              {"buyer_temperature", fmt_double(opts.buyer_temperature)},
              {"seller_temperature", fmt_double(opts.seller_temperature)},
              {"concurrency", std::to_string(opts.concurrency)},
              {"max_retries", std::to_string(opts.max_retries)},
              {"seller_max_attempts", std::to_string(opts.seller_max_attempts)},
              {"buyer_resample", opts.buyer_resample ? "true" : "false"},
              {"aborted", std::to_string(aborted.load())}};
  opts.source.snapshot_into(kv);
  write_snapshot(opts.out_dir, kv);

  std::cout << "evaluate: " << records.size() << " scored episodes";
  if (aborted.load() > 0) std::cout << " (" << aborted.load() << " aborted, excluded)";
  std::cout << " -> " << opts.out_dir << "\n";
  return 0;
}

// ---- train-toy ----

struct TrainToyOpts {
  int iterations = 60;
  int batch_size = 64;
  int group_size = 8;
  int max_turns = 6;
  double learning_rate = 3e-5;
  std::uint64_t seed = 0;
  std::size_t pool = 64;
  double ci_fraction = 0.0;
  double price_lo = 20.0;
  double price_hi = 200.0;
  double sample_floor = 5e-4;
  bool per_batch_norm = false;
  ScriptedFlags seller{0.9, 0.1, 0.8, 0, 0, 0, false, false};
  std::string out_dir = "runs/train-toy";
};

int cmd_train_toy(const TrainToyOpts& opts) {
  const std::vector<Scenario> pool =
      synth_scenarios(opts.seed, opts.pool, money_from_dollars(opts.price_lo),
                      money_from_dollars(opts.price_hi), opts.ci_fraction, opts.max_turns);

  TrainConfig config;
  config.seed = opts.seed;
  config.iterations = opts.iterations;
  config.batch_size = opts.batch_size;
  config.group_size = opts.group_size;
  config.max_turns = opts.max_turns;
  config.learning_rate = opts.learning_rate;
  config.per_batch_norm = opts.per_batch_norm;
  config.sample_floor = opts.sample_floor;

  ScriptedPolicy seller = opts.seller.policy(Role::seller);
  TrainResult result = train(config, pool, seller);

  fs::create_directories(opts.out_dir);
  write_file(fs::path(opts.out_dir) / "curves.csv", curves_csv(result.curve));
  write_file(fs::path(opts.out_dir) / "policy.txt", policy_to_text(result.policy));
  write_file(fs::path(opts.out_dir) / "seed.txt", std::to_string(opts.seed) + "\n");

  Snapshot kv{{"mode", "train-toy"},
              {"seed", std::to_string(opts.seed)},
              {"iterations", std::to_string(opts.iterations)},
              {"batch_size", std::to_string(opts.batch_size)},
              {"group_size", std::to_string(opts.group_size)},
              {"max_turns", std::to_string(opts.max_turns)},
              {"learning_rate", fmt_double(opts.learning_rate)},
              {"sample_floor", fmt_double(opts.sample_floor)},
              {"per_batch_norm", opts.per_batch_norm ? "true" : "false"},
              {"pool", std::to_string(opts.pool)},
              {"ci_fraction", fmt_double(opts.ci_fraction)},
              {"price_lo", fmt_double(opts.price_lo)},
              {"price_hi", fmt_double(opts.price_hi)}};
  opts.seller.snapshot_into(kv, "seller");
  write_snapshot(opts.out_dir, kv);

  std::cout << "train-toy: " << result.curve.size() << " iterations -> " << opts.out_dir << "\n";
  return 0;
}

// ---- replay ----

struct ReplayOpts {
  std::string transcripts;
  std::string out_dir = "runs/replay";
};

int cmd_replay(const ReplayOpts& opts) {
  const std::vector<StoredEpisode> stored = read_transcripts(opts.transcripts);
  if (stored.empty()) throw ReplayError("no episodes in " + opts.transcripts);

  std::vector<EpisodeRecord> records;
  records.reserve(stored.size());
  std::size_t mismatches = 0;

  for (std::size_t n = 0; n < stored.size(); ++n) {
    const StoredEpisode& ep = stored[n];
    std::vector<std::string> buyer_script, seller_script;
    for (const StoredTurn& turn : ep.turns) {
      if (turn.role == Role::buyer) {
        buyer_script.push_back(raw_turn_text(turn, ep.buyer_grammar));
      } else {
        seller_script.push_back(raw_turn_text(turn, ep.seller_grammar));
      }
    }
    FixedScriptAgent buyer(Role::buyer, std::move(buyer_script));
    FixedScriptAgent seller(Role::seller, std::move(seller_script));
    EngineConfig config;
    config.buyer_grammar = ep.buyer_grammar;
    config.seller_grammar = ep.seller_grammar;
    config.label = ep.label;

    EpisodeRecord record = run_episode(buyer, seller, ep.scenario, config, ep.seed);

    const bool outcome_matches = outcome_kind_name(record.outcome.kind) == ep.outcome_kind &&
                                 record.outcome.price_final == ep.price_final &&
                                 record.outcome.turns_used == ep.turns_used;
    if (!outcome_matches || std::abs(record.reward - ep.reward) > 1e-9) {
      ++mismatches;
      std::cerr << "episode " << n + 1 << ": stored " << ep.outcome_kind << " reward "
                << ep.reward << ", recomputed " << outcome_kind_name(record.outcome.kind)
                << " reward " << record.reward << "\n";
    }
    records.push_back(std::move(record));
  }

  fs::create_directories(opts.out_dir);
  write_run_outputs(opts.out_dir, records);
  write_snapshot(opts.out_dir, {{"mode", "replay"}, {"transcripts", opts.transcripts}});

  std::cout << "replay: " << records.size() << " episodes, " << mismatches << " mismatches -> "
            << opts.out_dir << "\n";
  return mismatches == 0 ? 0 : 1;
}

// ---- report ----

struct ReportOpts {
  std::vector<std::string> transcripts;
  std::string out_dir = "runs/report";
};

int cmd_report(const ReportOpts& opts) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<OutcomeRow>> by_label;
  for (const std::string& path : opts.transcripts) {
    for (const StoredEpisode& ep : read_transcripts(path)) {
      if (by_label.find(ep.label) == by_label.end()) order.push_back(ep.label);
      by_label[ep.label].push_back(stored_to_row(ep));
    }
  }
  if (order.empty()) throw ReplayError("no episodes in any input file");

  std::vector<std::pair<std::string, MetricsSummary>> labeled;
  labeled.reserve(order.size());
  for (const std::string& label : order) labeled.emplace_back(label, aggregate(by_label[label]));

  fs::create_directories(opts.out_dir);
  write_file(fs::path(opts.out_dir) / "report.md", report_markdown(labeled));
  write_file(fs::path(opts.out_dir) / "report.csv", summary_csv(labeled));

  std::cout << "report: " << order.size() << " labels -> " << opts.out_dir << "\n";
  std::cout << report_markdown(labeled);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"bilateral price-negotiation arena"};
  app.require_subcommand(1);

  SimulateOpts sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run scripted buyer vs scripted seller");
  sim.source.add_flags(simulate);
  sim.buyer.add_flags(simulate, "buyer");
  sim.seller.add_flags(simulate, "seller");
  simulate->add_flag("--seller_undercut", sim.seller_undercut,
                     "adversarial seller that offers and accepts below cost");
  simulate->add_option("--repeat", sim.repeat, "episodes per scenario")->check(CLI::PositiveNumber);
  simulate->add_option("--max_turns", sim.max_turns)->check(CLI::PositiveNumber);
  simulate->add_option("--seller_max_attempts", sim.seller_max_attempts)
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--buyer_resample", sim.buyer_resample,
                     "retry buyer format violations instead of terminating");
  simulate->add_option("--buyer_grammar", sim.buyer_grammar);
  simulate->add_option("--seller_grammar", sim.seller_grammar);
  simulate->add_option("--seed", sim.seed);
  simulate->add_option("--label", sim.label);
  simulate->add_option("--out", sim.out_dir);

  EvaluateOpts ev;
  CLI::App* evaluate = app.add_subcommand("evaluate", "run a remote model as buyer");
  ev.source.add_flags(evaluate);
  evaluate->add_option("--batch_size", ev.batch_size)->check(CLI::PositiveNumber);
  evaluate->add_option("--group_size", ev.group_size)->check(CLI::PositiveNumber);
  evaluate->add_option("--max_turns", ev.max_turns)->check(CLI::PositiveNumber);
  evaluate->add_option("--max_tokens", ev.max_tokens)->check(CLI::PositiveNumber);
  evaluate->add_option("--buyer_temperature", ev.buyer_temperature);
  evaluate->add_option("--seller_temperature", ev.seller_temperature);
  evaluate->add_option("--concurrency", ev.concurrency)->check(CLI::PositiveNumber);
  evaluate->add_option("--persona", ev.persona, "default|begging|insulting|unyielding");
  evaluate->add_option("--endpoint", ev.endpoint, "overrides ARENA_ENDPOINT");
  evaluate->add_option("--api_key", ev.api_key, "overrides ARENA_API_KEY");
  evaluate->add_option("--model", ev.model, "overrides ARENA_MODEL");
  evaluate->add_option("--seller_endpoint", ev.seller_endpoint);
  evaluate->add_option("--seller_model", ev.seller_model);
  evaluate->add_option("--max_retries", ev.max_retries);
  evaluate->add_option("--seller_max_attempts", ev.seller_max_attempts)
      ->check(CLI::PositiveNumber);
  evaluate->add_flag("--buyer_resample", ev.buyer_resample);
  evaluate->add_option("--seed", ev.seed);
  evaluate->add_option("--label", ev.label);
  evaluate->add_option("--out", ev.out_dir);

  TrainToyOpts toy;
  CLI::App* train_toy = app.add_subcommand("train-toy", "desk-scale policy-gradient buyer");
  train_toy->add_option("--iterations", toy.iterations)->check(CLI::NonNegativeNumber);
  train_toy->add_option("--batch_size", toy.batch_size)->check(CLI::PositiveNumber);
  train_toy->add_option("--group_size", toy.group_size)->check(CLI::PositiveNumber);
  train_toy->add_option("--max_turns", toy.max_turns)->check(CLI::PositiveNumber);
  train_toy->add_option("--learning_rate", toy.learning_rate);
  train_toy->add_option("--seed", toy.seed);
  train_toy->add_option("--pool", toy.pool, "synthetic scenario pool size")
      ->check(CLI::PositiveNumber);
  train_toy->add_option("--ci_fraction", toy.ci_fraction)->check(CLI::Range(0.0, 1.0));
  train_toy->add_option("--price_lo", toy.price_lo);
  train_toy->add_option("--price_hi", toy.price_hi);
  train_toy->add_option("--sample_floor", toy.sample_floor);
  train_toy->add_flag("--per_batch_norm", toy.per_batch_norm,
                      "normalize advantages across the whole iteration");
  toy.seller.add_flags(train_toy, "seller");
  train_toy->add_option("--out", toy.out_dir);

  ReplayOpts rp;
  CLI::App* replay = app.add_subcommand("replay", "re-drive stored transcripts and rescore");
  replay->add_option("--transcripts", rp.transcripts, "transcripts.jsonl to replay")->required();
  replay->add_option("--out", rp.out_dir);

  ReportOpts rep;
  CLI::App* report = app.add_subcommand("report", "aggregate transcripts into a benchmark table");
  report->add_option("--transcripts", rep.transcripts, "one or more transcripts.jsonl files")
      ->required();
  report->add_option("--out", rep.out_dir);

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return cmd_simulate(sim);
    if (evaluate->parsed()) return cmd_evaluate(ev);
    if (train_toy->parsed()) return cmd_train_toy(toy);
    if (replay->parsed()) return cmd_replay(rp);
    if (report->parsed()) return cmd_report(rep);
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace arena
