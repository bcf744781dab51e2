#include "arena/transcript.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arena/errors.hpp"

namespace arena {

namespace {

using nlohmann::json;

const char* grammar_name(Grammar g) { return g == Grammar::labeled ? "labeled" : "tagged"; }

Grammar grammar_from(const std::string& name, std::size_t line) {
  if (name == "labeled") return Grammar::labeled;
  if (name == "tagged") return Grammar::tagged;
  throw ReplayError("line " + std::to_string(line) + ": unknown grammar '" + name + "'");
}

Role role_from(const std::string& name, std::size_t line) {
  if (name == "buyer") return Role::buyer;
  if (name == "seller") return Role::seller;
  throw ReplayError("line " + std::to_string(line) + ": unknown role '" + name + "'");
}

Money money_field(const json& j, const char* key, std::size_t line) {
  auto parsed = parse_money(j.at(key).get<std::string>());
  if (!parsed) {
    throw ReplayError("line " + std::to_string(line) + ": unparseable money in '" + key + "'");
  }
  return *parsed;
}

}  // namespace

const char* outcome_kind_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::deal: return "deal";
    case OutcomeKind::deadlock_turn_limit: return "deadlock_turn_limit";
    case OutcomeKind::quit_buyer: return "quit_buyer";
    case OutcomeKind::quit_seller: return "quit_seller";
    case OutcomeKind::boundary_format: return "boundary_format";
    case OutcomeKind::boundary_over_budget: return "boundary_over_budget";
  }
  return "?";
}

std::string episode_to_jsonl(const EpisodeRecord& record) {
  const Scenario& sc = record.scenario;
  json j;
  j["label"] = record.label;
  j["seed"] = record.seed;
  j["scenario"] = {
      {"codename", sc.product.codename},
      {"title", sc.product.title},
      {"list_price", format_money(sc.product.list_price)},
      {"budget", format_money(sc.budget)},
      {"cost", format_money(sc.cost)},
      {"quantity", sc.quantity},
      {"max_turns", sc.max_turns},
      {"class", sc.mutual_interest() ? "MI" : "CI"},
  };
  j["grammar"] = {{"buyer", grammar_name(record.buyer_grammar)},
                  {"seller", grammar_name(record.seller_grammar)}};

  json turns = json::array();
  for (const auto& turn : record.transcript) {
    turns.push_back({{"role", role_name(turn.role)},
                     {"reasoning", turn.reasoning},
                     {"dialogue", turn.dialogue},
                     {"action", turn.action_text},
                     {"regulated", turn.regulated}});
  }
  if (record.malformed_raw) {
    turns.push_back({{"role", "buyer"}, {"raw", *record.malformed_raw}, {"malformed", true}});
  }
  j["turns"] = std::move(turns);

  j["outcome"] = outcome_kind_name(record.outcome.kind);
  if (record.outcome.price_final) j["price_final"] = format_money(*record.outcome.price_final);
  if (!record.outcome.detail.empty()) j["detail"] = record.outcome.detail;
  j["reward"] = record.reward;
  j["turns_used"] = record.outcome.turns_used;
  j["overshoot"] = record.overshoot;
  if (record.first_buyer_offer) j["first_buyer_offer"] = format_money(*record.first_buyer_offer);
  return j.dump();
}

void append_transcript(std::ostream& out, const EpisodeRecord& record) {
  out << episode_to_jsonl(record) << '\n';
}

void write_transcripts(const std::string& path, const std::vector<EpisodeRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& record : records) append_transcript(out, record);
}

StoredEpisode parse_transcript_line(const std::string& line, std::size_t line_number) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ReplayError("line " + std::to_string(line_number) + ": " + e.what());
  }

  try {
    StoredEpisode ep;
    ep.label = j.value("label", "");
    ep.seed = j.at("seed").get<std::uint64_t>();

    const json& sc = j.at("scenario");
    ep.scenario.product.codename = sc.at("codename").get<std::string>();
    ep.scenario.product.title = sc.value("title", "");
    ep.scenario.product.list_price = money_field(sc, "list_price", line_number);
    ep.scenario.budget = money_field(sc, "budget", line_number);
    ep.scenario.cost = money_field(sc, "cost", line_number);
    ep.scenario.quantity = sc.value("quantity", 1);
    ep.scenario.max_turns = sc.value("max_turns", 6);

    const json& gr = j.at("grammar");
    ep.buyer_grammar = grammar_from(gr.at("buyer").get<std::string>(), line_number);
    ep.seller_grammar = grammar_from(gr.at("seller").get<std::string>(), line_number);

    for (const json& t : j.at("turns")) {
      StoredTurn turn;
      turn.role = role_from(t.at("role").get<std::string>(), line_number);
      turn.malformed = t.value("malformed", false);
      if (turn.malformed) {
        turn.raw = t.at("raw").get<std::string>();
      } else {
        turn.reasoning = t.at("reasoning").get<std::string>();
        turn.dialogue = t.at("dialogue").get<std::string>();
        turn.action_text = t.at("action").get<std::string>();
        turn.regulated = t.value("regulated", false);
      }
      ep.turns.push_back(std::move(turn));
    }

    ep.outcome_kind = j.at("outcome").get<std::string>();
    if (j.contains("price_final")) {
      ep.price_final = money_field(j, "price_final", line_number);
    }
    ep.reward = j.at("reward").get<double>();
    ep.turns_used = j.at("turns_used").get<int>();
    ep.overshoot = j.at("overshoot").get<bool>();
    if (j.contains("first_buyer_offer")) {
      ep.first_buyer_offer = money_field(j, "first_buyer_offer", line_number);
    }
    return ep;
  } catch (const json::exception& e) {
    throw ReplayError("line " + std::to_string(line_number) + ": " + e.what());
  }
}

std::vector<StoredEpisode> read_transcripts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ReplayError("cannot open transcript file: " + path);
  std::vector<StoredEpisode> episodes;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    episodes.push_back(parse_transcript_line(line, line_number));
  }
  return episodes;
}

std::string raw_turn_text(const StoredTurn& turn, Grammar grammar) {
  if (turn.malformed) return turn.raw;
  if (grammar == Grammar::labeled) {
    return "Thought: " + turn.reasoning + "\nTalk: " + turn.dialogue +
           "\nAction: " + turn.action_text;
  }
  return "<REASONING>" + turn.reasoning + "</REASONING>\n<DIALOGUE>" + turn.dialogue +
         "</DIALOGUE>\n<ACTION>" + turn.action_text + "</ACTION>";
}

}  // namespace arena
