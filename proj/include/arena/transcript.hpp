#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "arena/engine.hpp"

namespace arena {

// One line of JSON per episode. Turns store reasoning too: the log is the
// ground truth for replay and audit; opponent blindness applies to what
// agents are shown mid-episode, not to what the file records. Money fields
// are canonical "$X.YZ" strings so the log is diff-stable.
std::string episode_to_jsonl(const EpisodeRecord& record);

void write_transcripts(const std::string& path, const std::vector<EpisodeRecord>& records);
void append_transcript(std::ostream& out, const EpisodeRecord& record);

// Deserialized form, sufficient to re-drive the episode and to compare the
// recomputed outcome against what was recorded.
struct StoredTurn {
  Role role = Role::buyer;
  std::string reasoning;
  std::string dialogue;
  std::string action_text;
  bool regulated = false;
  bool malformed = false;
  std::string raw;  // set only for malformed entries
};

struct StoredEpisode {
  std::string label;
  std::uint64_t seed = 0;
  Scenario scenario;
  Grammar buyer_grammar = Grammar::labeled;
  Grammar seller_grammar = Grammar::labeled;
  std::vector<StoredTurn> turns;
  std::string outcome_kind;
  std::optional<Money> price_final;
  double reward = 0.0;
  int turns_used = 0;
  bool overshoot = false;
  std::optional<Money> first_buyer_offer;
};

// Throws ReplayError naming the 1-based line on any malformed record.
std::vector<StoredEpisode> read_transcripts(const std::string& path);
StoredEpisode parse_transcript_line(const std::string& line, std::size_t line_number);

// Reconstructs the raw agent text for a stored turn so FixedScriptAgent can
// replay it. Uses the verbatim action segment, not a canonical re-render, so
// a replay re-parses exactly what the original agent emitted.
std::string raw_turn_text(const StoredTurn& turn, Grammar grammar);

const char* outcome_kind_name(OutcomeKind kind);

}  // namespace arena
