#include "arena/remote.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "arena/errors.hpp"

namespace arena {

namespace {

std::string env_or_empty(const char* name) {
  const char* value = std::getenv(name);
  return value ? value : "";
}

}  // namespace

RemoteModelConfig RemoteModelConfig::from_env() {
  RemoteModelConfig config;
  config.endpoint = env_or_empty("ARENA_ENDPOINT");
  config.api_key = env_or_empty("ARENA_API_KEY");
  config.model = env_or_empty("ARENA_MODEL");
  return config;
}

std::vector<ChatMessage> chat_messages_for(Role side, const std::string& system_prompt,
                                           const std::string& context,
                                           const std::vector<std::string>& visible_history) {
  std::vector<ChatMessage> messages;
  messages.push_back({"system", system_prompt});
  messages.push_back({"user", context});
  for (std::size_t i = 0; i < visible_history.size(); ++i) {
    const std::string role = own_turn_index(side, i) ? "assistant" : "user";
    if (messages.back().role == role) {
      messages.back().content += "\n\n" + visible_history[i];
    } else {
      messages.push_back({role, visible_history[i]});
    }
  }
  return messages;
}

std::string request_body_json(const RemoteModelConfig& config,
                              const std::vector<ChatMessage>& messages) {
  nlohmann::json body;
  body["model"] = config.model;
  body["messages"] = nlohmann::json::array();
  for (const auto& m : messages) {
    body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  body["temperature"] = config.temperature;
  body["max_tokens"] = config.max_tokens;
  return body.dump();
}

std::string chat_complete(const RemoteModelConfig& config,
                          const std::vector<ChatMessage>& messages) {
  const std::string body = request_body_json(config, messages);
  httplib::Headers headers;
  if (!config.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config.api_key);
  }

  std::string last_error = "no attempt made";
  const int attempts = config.max_retries + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0 && config.backoff_enabled) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config.backoff_base_ms * (1L << (attempt - 1))));
    }

    httplib::Client client(config.endpoint);
    client.set_connection_timeout(config.timeout_seconds);
    client.set_read_timeout(config.timeout_seconds);
    auto response = client.Post(config.path, headers, body, "application/json");
    if (!response) {
      last_error = "connection failure: " + httplib::to_string(response.error());
      continue;
    }
    if (response->status < 200 || response->status >= 300) {
      last_error = "status " + std::to_string(response->status) + ": " + response->body;
      continue;
    }
    try {
      nlohmann::json parsed = nlohmann::json::parse(response->body);
      return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      last_error = std::string("unparseable response body: ") + e.what();
      continue;
    }
  }
  throw TransportError("chat completion failed after " + std::to_string(attempts) +
                       " attempts; last error: " + last_error);
}

std::string RemoteAgent::next_turn(const std::vector<std::string>& visible_history,
                                   const std::string& side_context, std::uint64_t) {
  return chat_complete(config_,
                       chat_messages_for(side_, system_prompt_, side_context, visible_history));
}

}  // namespace arena
