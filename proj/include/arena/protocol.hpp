#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arena/money.hpp"

namespace arena {

enum class Role { buyer, seller };

inline const char* role_name(Role r) { return r == Role::buyer ? "buyer" : "seller"; }

// Two interchangeable surface grammars for the same turn structure.
// labeled:  Thought: ...\nTalk: ...\nAction: VERB $X (Nx codename)
// tagged:   <REASONING>...</REASONING>\n<DIALOGUE>...</DIALOGUE>\n<ACTION>[VERB] $X</ACTION>
enum class Grammar { labeled, tagged };

enum class Verb { buy, sell, deal, reject, quit };

const char* verb_name(Verb v);

// One negotiation action. amount/quantity/codename are meaningful only for
// the priced verbs (buy, sell, deal); reject and quit carry nothing.
struct ActionKind {
  Verb verb = Verb::reject;
  Money amount{};
  int quantity = 1;
  std::string codename;

  bool priced() const { return verb == Verb::buy || verb == Verb::sell || verb == Verb::deal; }
  bool operator==(const ActionKind& o) const {
    if (verb != o.verb) return false;
    if (!priced()) return true;
    return amount == o.amount && quantity == o.quantity && codename == o.codename;
  }
};

ActionKind make_offer(Verb v, Money amount, int quantity, std::string codename);
inline ActionKind make_reject() { return ActionKind{Verb::reject, {}, 1, ""}; }
inline ActionKind make_quit() { return ActionKind{Verb::quit, {}, 1, ""}; }

struct FormatViolation {
  std::string reason;
};

// A parsed or constructed turn. Equality covers the semantic fields only;
// action_text and raw are provenance (verbatim segment / full source text),
// regulated marks turns substituted by seller-side enforcement.
struct TurnMessage {
  Role role = Role::buyer;
  std::string reasoning;
  std::string dialogue;
  ActionKind action;
  std::string action_text;
  std::string raw;
  bool regulated = false;

  bool operator==(const TurnMessage& o) const {
    return role == o.role && reasoning == o.reasoning && dialogue == o.dialogue &&
           action == o.action;
  }
};

TurnMessage make_turn(Role role, std::string reasoning, std::string dialogue, ActionKind action);

using ParsedAction = std::variant<ActionKind, FormatViolation>;
using ParsedTurn = std::variant<TurnMessage, FormatViolation>;

// Action text parse, shared by both grammars. Lenient to whitespace, verb
// case, optional [brackets] around the verb, optional '$', thousands commas,
// and the quantity suffix spellings "(Nx c)" / "(N c)". Verbs reject/quit
// admit no trailing payload; priced verbs require amount > 0. When the
// quantity suffix is absent, quantity is 1 and codename is default_codename.
ParsedAction parse_action(std::string_view text, std::string_view default_codename = "");

// Full tripartite parse. All three segments must be present, in order; the
// first action line/tag wins and later ones are ignored (labeled) or rejected
// as trailing content (tagged).
ParsedTurn parse_turn(std::string_view raw, Role role, Grammar grammar,
                      std::string_view default_codename = "");

// Canonical action text, bare verb form: "BUY $10.00 (1x beauty_29)",
// "REJECT". Two-decimal amounts always; suffix present iff codename set.
std::string serialize_action(const ActionKind& a);

// Canonical full-turn form for a grammar. Throws std::invalid_argument when a
// segment embeds that grammar's own markers (the output must re-parse).
std::string serialize_turn(const TurnMessage& t, Grammar grammar);

// Dialogue + action only; reasoning never appears. The action segment is the
// verbatim source segment when the turn was parsed, canonical otherwise.
std::string render_public(const TurnMessage& t, Grammar grammar);

// Counterpart of render_public for consumers of visible history.
struct PublicTurn {
  std::string dialogue;
  ActionKind action;
};
std::optional<PublicTurn> parse_public(std::string_view text, Grammar grammar,
                                       std::string_view default_codename = "");

struct SequenceCheck {
  bool ok = true;
  std::string reason;
};

// Turn-order legality on top of grammar-level validity:
//   - roles alternate, buyer first;
//   - a buyer never sells, a seller never buys;
//   - quit is legal from either side at any point;
//   - the buyer's opening action is buy or reject (never deal);
//   - deal must bit-exactly copy the counterparty's most recent opposing
//     offer (amount, quantity, codename), so a seller cannot deal before the
//     buyer has made any buy offer.
SequenceCheck validate_sequence(const std::vector<TurnMessage>& history,
                                const TurnMessage& next);

}  // namespace arena
