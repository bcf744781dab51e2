#include "arena/protocol.hpp"

#include <cctype>
#include <stdexcept>

namespace arena {

namespace {

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string upper(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool codename_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

std::optional<Verb> verb_from(std::string_view word) {
  std::string w = upper(word);
  if (w == "BUY") return Verb::buy;
  if (w == "SELL") return Verb::sell;
  if (w == "DEAL") return Verb::deal;
  if (w == "REJECT") return Verb::reject;
  if (w == "QUIT") return Verb::quit;
  return std::nullopt;
}

// Line starts with `label` after optional indentation; returns text after it.
std::optional<std::string_view> after_label(std::string_view line, std::string_view label) {
  size_t b = 0;
  while (b < line.size() && (line[b] == ' ' || line[b] == '\t')) ++b;
  if (line.substr(b).starts_with(label)) return line.substr(b + label.size());
  return std::nullopt;
}

struct Segments {
  std::string reasoning, dialogue, action;
};

std::variant<Segments, FormatViolation> split_labeled(std::string_view raw) {
  Segments out;
  enum { before, in_thought, in_talk, done } state = before;
  std::string* current = nullptr;
  size_t pos = 0;
  while (pos <= raw.size()) {
    size_t nl = raw.find('\n', pos);
    std::string_view line = raw.substr(pos, (nl == std::string_view::npos ? raw.size() : nl) - pos);
    pos = (nl == std::string_view::npos) ? raw.size() + 1 : nl + 1;

    if (state == before) {
      if (trim(line).empty()) continue;
      auto rest = after_label(line, "Thought:");
      if (!rest) return FormatViolation{"labeled turn must open with a Thought: line"};
      out.reasoning = std::string(*rest);
      state = in_thought;
      current = &out.reasoning;
      continue;
    }
    if (state == in_thought) {
      if (auto rest = after_label(line, "Talk:")) {
        out.dialogue = std::string(*rest);
        state = in_talk;
        current = &out.dialogue;
        continue;
      }
    }
    if (state == in_talk) {
      if (auto rest = after_label(line, "Action:")) {
        out.action = std::string(trim(*rest));
        state = done;
        break;  // first action line wins; anything after is ignored
      }
    }
    if (state == in_thought || state == in_talk) {
      *current += '\n';
      *current += std::string(line);
    }
  }
  if (state == before) return FormatViolation{"empty turn"};
  if (state == in_thought) return FormatViolation{"missing Talk: segment"};
  if (state == in_talk) return FormatViolation{"missing Action: segment"};
  out.reasoning = std::string(trim(out.reasoning));
  out.dialogue = std::string(trim(out.dialogue));
  return out;
}

std::variant<Segments, FormatViolation> split_tagged(std::string_view raw) {
  auto take = [&](std::string_view input, std::string_view open, std::string_view close,
                  std::string* dst, std::string_view* rest) -> std::optional<std::string> {
    std::string_view s = trim(input);
    if (!s.starts_with(open))
      return "expected " + std::string(open);
    s.remove_prefix(open.size());
    size_t end = s.find(close);
    if (end == std::string_view::npos)
      return "missing " + std::string(close);
    *dst = std::string(trim(s.substr(0, end)));
    *rest = s.substr(end + close.size());
    return std::nullopt;
  };
  Segments out;
  std::string_view rest = raw;
  if (auto err = take(rest, "<REASONING>", "</REASONING>", &out.reasoning, &rest))
    return FormatViolation{*err};
  if (auto err = take(rest, "<DIALOGUE>", "</DIALOGUE>", &out.dialogue, &rest))
    return FormatViolation{*err};
  if (auto err = take(rest, "<ACTION>", "</ACTION>", &out.action, &rest))
    return FormatViolation{*err};
  if (!trim(rest).empty()) return FormatViolation{"trailing content after </ACTION>"};
  return out;
}

// Segment texts that would corrupt their own grammar on re-serialization.
bool labeled_unsafe(const std::string& s) {
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t nl = s.find('\n', pos);
    std::string_view line(s.data() + pos, (nl == std::string::npos ? s.size() : nl) - pos);
    for (auto label : {"Thought:", "Talk:", "Action:"}) {
      if (after_label(line, label)) return true;
    }
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return false;
}

bool tagged_unsafe(const std::string& s) {
  for (auto tag : {"<REASONING>", "</REASONING>", "<DIALOGUE>", "</DIALOGUE>", "<ACTION>",
                   "</ACTION>"}) {
    if (s.find(tag) != std::string::npos) return true;
  }
  return false;
}

std::string bracketed_action(const ActionKind& a) {
  std::string bare = serialize_action(a);
  size_t sp = bare.find(' ');
  if (sp == std::string::npos) return "[" + bare + "]";
  return "[" + bare.substr(0, sp) + "]" + bare.substr(sp);
}

}  // namespace

const char* verb_name(Verb v) {
  switch (v) {
    case Verb::buy: return "BUY";
    case Verb::sell: return "SELL";
    case Verb::deal: return "DEAL";
    case Verb::reject: return "REJECT";
    case Verb::quit: return "QUIT";
  }
  return "?";
}

ActionKind make_offer(Verb v, Money amount, int quantity, std::string codename) {
  if (v != Verb::buy && v != Verb::sell && v != Verb::deal)
    throw std::invalid_argument("make_offer requires a priced verb");
  if (amount.cents <= 0) throw std::invalid_argument("offer amount must be positive");
  if (quantity < 1) throw std::invalid_argument("offer quantity must be at least 1");
  return ActionKind{v, amount, quantity, std::move(codename)};
}

TurnMessage make_turn(Role role, std::string reasoning, std::string dialogue, ActionKind action) {
  TurnMessage t;
  t.role = role;
  t.reasoning = std::move(reasoning);
  t.dialogue = std::move(dialogue);
  t.action = std::move(action);
  t.action_text = serialize_action(t.action);
  return t;
}

ParsedAction parse_action(std::string_view text, std::string_view default_codename) {
  std::string_view s = trim(text);
  if (s.empty()) return FormatViolation{"empty action"};

  std::string_view verb_word;
  if (s.front() == '[') {
    size_t close = s.find(']');
    if (close == std::string_view::npos) return FormatViolation{"unterminated [verb]"};
    verb_word = trim(s.substr(1, close - 1));
    s = s.substr(close + 1);
  } else {
    size_t e = 0;
    while (e < s.size() && std::isalpha(static_cast<unsigned char>(s[e]))) ++e;
    verb_word = s.substr(0, e);
    s = s.substr(e);
  }
  auto verb = verb_from(verb_word);
  if (!verb) return FormatViolation{"unknown verb '" + std::string(verb_word) + "'"};
  s = trim(s);

  if (*verb == Verb::reject || *verb == Verb::quit) {
    if (!s.empty())
      return FormatViolation{std::string(verb_name(*verb)) + " takes no arguments"};
    return ActionKind{*verb, {}, 1, ""};
  }

  if (s.empty()) return FormatViolation{std::string(verb_name(*verb)) + " requires an amount"};

  std::string_view amount_part = s;
  std::string_view suffix;
  size_t paren = s.find('(');
  if (paren != std::string_view::npos) {
    amount_part = trim(s.substr(0, paren));
    suffix = s.substr(paren);
  }
  auto amount = parse_money(amount_part);
  if (!amount) return FormatViolation{"unparseable amount '" + std::string(amount_part) + "'"};
  if (amount->cents <= 0) return FormatViolation{"amount must be positive"};

  int quantity = 1;
  std::string codename(default_codename);
  if (!suffix.empty()) {
    if (suffix.back() != ')') {
      std::string_view t = trim(suffix);
      if (t.back() != ')') return FormatViolation{"unterminated quantity suffix"};
      suffix = t;
    }
    std::string_view inner = trim(suffix.substr(1, suffix.size() - 2));
    size_t d = 0;
    while (d < inner.size() && std::isdigit(static_cast<unsigned char>(inner[d]))) ++d;
    if (d == 0) return FormatViolation{"quantity suffix must start with a count"};
    if (d > 7) return FormatViolation{"quantity out of range"};
    long q = std::stol(std::string(inner.substr(0, d)));
    if (q < 1 || q > 1'000'000) return FormatViolation{"quantity out of range"};
    quantity = static_cast<int>(q);
    inner = inner.substr(d);
    if (!inner.empty() && (inner.front() == 'x' || inner.front() == 'X'))
      inner = inner.substr(1);
    inner = trim(inner);
    if (inner.empty()) return FormatViolation{"quantity suffix missing codename"};
    for (char c : inner) {
      if (!codename_char(c)) return FormatViolation{"bad codename character in suffix"};
    }
    codename = std::string(inner);
  }
  return ActionKind{*verb, *amount, quantity, std::move(codename)};
}

ParsedTurn parse_turn(std::string_view raw, Role role, Grammar grammar,
                      std::string_view default_codename) {
  auto segs = (grammar == Grammar::labeled) ? split_labeled(raw) : split_tagged(raw);
  if (auto* v = std::get_if<FormatViolation>(&segs)) return *v;
  auto& s = std::get<Segments>(segs);
  auto action = parse_action(s.action, default_codename);
  if (auto* v = std::get_if<FormatViolation>(&action)) return *v;
  TurnMessage t;
  t.role = role;
  t.reasoning = std::move(s.reasoning);
  t.dialogue = std::move(s.dialogue);
  t.action = std::move(std::get<ActionKind>(action));
  t.action_text = std::move(s.action);
  t.raw = std::string(raw);
  return t;
}

std::string serialize_action(const ActionKind& a) {
  std::string out = verb_name(a.verb);
  if (a.priced()) {
    out += " " + format_money(a.amount);
    if (!a.codename.empty())
      out += " (" + std::to_string(a.quantity) + "x " + a.codename + ")";
  }
  return out;
}

std::string serialize_turn(const TurnMessage& t, Grammar grammar) {
  if (grammar == Grammar::labeled) {
    if (labeled_unsafe(t.reasoning) || labeled_unsafe(t.dialogue))
      throw std::invalid_argument("segment embeds a labeled-grammar marker");
    return "Thought: " + t.reasoning + "\nTalk: " + t.dialogue +
           "\nAction: " + serialize_action(t.action);
  }
  if (tagged_unsafe(t.reasoning) || tagged_unsafe(t.dialogue))
    throw std::invalid_argument("segment embeds a tagged-grammar marker");
  return "<REASONING>" + t.reasoning + "</REASONING>\n<DIALOGUE>" + t.dialogue +
         "</DIALOGUE>\n<ACTION>" + bracketed_action(t.action) + "</ACTION>";
}

std::string render_public(const TurnMessage& t, Grammar grammar) {
  std::string action_text = t.action_text.empty() ? serialize_action(t.action) : t.action_text;
  if (grammar == Grammar::labeled)
    return "Talk: " + t.dialogue + "\nAction: " + action_text;
  return "<DIALOGUE>" + t.dialogue + "</DIALOGUE>\n<ACTION>" + action_text + "</ACTION>";
}

std::optional<PublicTurn> parse_public(std::string_view text, Grammar grammar,
                                       std::string_view default_codename) {
  std::string dialogue, action_text;
  if (grammar == Grammar::labeled) {
    size_t pos = 0;
    bool in_talk = false;
    bool found_action = false;
    while (pos <= text.size()) {
      size_t nl = text.find('\n', pos);
      std::string_view line =
          text.substr(pos, (nl == std::string_view::npos ? text.size() : nl) - pos);
      pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
      if (!in_talk) {
        if (trim(line).empty()) continue;
        auto rest = after_label(line, "Talk:");
        if (!rest) return std::nullopt;
        dialogue = std::string(*rest);
        in_talk = true;
        continue;
      }
      if (auto rest = after_label(line, "Action:")) {
        action_text = std::string(trim(*rest));
        found_action = true;
        break;
      }
      dialogue += '\n';
      dialogue += std::string(line);
    }
    if (!found_action) return std::nullopt;
  } else {
    size_t d0 = text.find("<DIALOGUE>"), d1 = text.find("</DIALOGUE>");
    size_t a0 = text.find("<ACTION>"), a1 = text.find("</ACTION>");
    if (d0 == std::string_view::npos || d1 == std::string_view::npos ||
        a0 == std::string_view::npos || a1 == std::string_view::npos || d1 < d0 || a1 < a0)
      return std::nullopt;
    dialogue = std::string(trim(text.substr(d0 + 10, d1 - d0 - 10)));
    action_text = std::string(trim(text.substr(a0 + 8, a1 - a0 - 8)));
  }
  auto action = parse_action(action_text, default_codename);
  if (std::holds_alternative<FormatViolation>(action)) return std::nullopt;
  return PublicTurn{std::string(trim(dialogue)), std::get<ActionKind>(action)};
}

SequenceCheck validate_sequence(const std::vector<TurnMessage>& history,
                                const TurnMessage& next) {
  Role expected = (history.size() % 2 == 0) ? Role::buyer : Role::seller;
  if (next.role != expected)
    return {false, std::string(role_name(next.role)) + " acted out of turn"};

  if (next.role == Role::buyer && next.action.verb == Verb::sell)
    return {false, "buyer may not SELL"};
  if (next.role == Role::seller && next.action.verb == Verb::buy)
    return {false, "seller may not BUY"};

  if (next.action.verb == Verb::quit) return {true, ""};

  if (next.action.priced() && next.action.amount.cents <= 0)
    return {false, "offer amount must be positive"};

  if (next.role == Role::buyer && history.empty() && next.action.verb == Verb::deal)
    return {false, "buyer cannot DEAL before any seller offer"};

  if (next.action.verb == Verb::deal) {
    const Verb wanted = (next.role == Role::buyer) ? Verb::sell : Verb::buy;
    const Role other = (next.role == Role::buyer) ? Role::seller : Role::buyer;
    for (auto it = history.rbegin(); it != history.rend(); ++it) {
      if (it->role == other && it->action.verb == wanted) {
        if (it->action.amount == next.action.amount &&
            it->action.quantity == next.action.quantity &&
            it->action.codename == next.action.codename)
          return {true, ""};
        return {false, "DEAL must copy the counterparty's most recent offer exactly"};
      }
    }
    return {false, std::string(role_name(next.role)) +
                       " cannot DEAL before the counterparty has made an offer"};
  }
  return {true, ""};
}

}  // namespace arena
