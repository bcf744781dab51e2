#pragma once

#include <stdexcept>
#include <string>

namespace arena {

// Catalog ingestion failures: malformed records, duplicate codenames,
// unreadable files. Messages name the record index and offending field.
class CatalogError : public std::runtime_error {
 public:
  explicit CatalogError(const std::string& what) : std::runtime_error(what) {}
};

// Remote chat endpoint failure that survived every retry. Distinguished from
// negotiation-level failures: an episode hitting this is aborted, not scored.
class TransportError : public std::runtime_error {
 public:
  explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

// Raised while re-driving a stored transcript that cannot be replayed
// (unparseable turn, mid-episode truncation). Messages name the line.
class ReplayError : public std::runtime_error {
 public:
  explicit ReplayError(const std::string& what) : std::runtime_error(what) {}
};

// An episode abandoned for infrastructure reasons. Carries no reward.
class EpisodeAborted : public std::runtime_error {
 public:
  explicit EpisodeAborted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace arena
