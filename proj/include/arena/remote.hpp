#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arena/agents.hpp"
#include "arena/protocol.hpp"

namespace arena {

// Connection and sampling settings for a chat-completion endpoint. The wire
// shape is the de-facto standard: POST {model, messages, temperature,
// max_tokens}, response carries choices[0].message.content.
struct RemoteModelConfig {
  std::string endpoint;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string api_key;
  std::string model;
  double temperature = 1.0;
  int max_tokens = 300;
  int max_retries = 3;  // total attempts = max_retries + 1
  int backoff_base_ms = 250;
  bool backoff_enabled = true;  // tests disable to keep retries instant
  int timeout_seconds = 120;

  // Reads ARENA_ENDPOINT, ARENA_API_KEY, ARENA_MODEL; unset vars leave the
  // corresponding fields empty for the caller to validate.
  static RemoteModelConfig from_env();
};

struct ChatMessage {
  std::string role;
  std::string content;
};

// Chat framing of a negotiation in progress, from `side`'s perspective: the
// system prompt, then the episode context as the first user message, then
// the visible history with the agent's own turns as assistant messages and
// the opponent's as user messages. Consecutive same-role messages merge with
// a blank line so the list alternates strictly after the system message.
std::vector<ChatMessage> chat_messages_for(Role side, const std::string& system_prompt,
                                           const std::string& context,
                                           const std::vector<std::string>& visible_history);

std::string request_body_json(const RemoteModelConfig& config,
                              const std::vector<ChatMessage>& messages);

// One completion with retries. Retries connection failures, non-2xx statuses
// and unparseable bodies, with exponential backoff when enabled; after
// max_retries + 1 attempts throws TransportError describing the last failure.
std::string chat_complete(const RemoteModelConfig& config,
                          const std::vector<ChatMessage>& messages);

class RemoteAgent : public Agent {
 public:
  RemoteAgent(RemoteModelConfig config, Role side, std::string system_prompt)
      : config_(std::move(config)), side_(side), system_prompt_(std::move(system_prompt)) {}

  // rng_seed is unused: sampling happens server-side via temperature.
  std::string next_turn(const std::vector<std::string>& visible_history,
                        const std::string& side_context, std::uint64_t rng_seed) override;

 private:
  RemoteModelConfig config_;
  Role side_;
  std::string system_prompt_;
};

}  // namespace arena
