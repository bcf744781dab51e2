#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arena/money.hpp"

namespace arena {

// One catalog product. Money fields are parsed from "$X.YZ"-style text;
// price-history dates stay as opaque strings. buyer_budget / seller_cost /
// codename are optional extensions of the base record shape.
struct Product {
  std::string codename;
  std::string title;
  std::string category;
  Money list_price{};
  std::optional<Money> current_price;
  std::optional<Money> average_price;
  std::optional<Money> lowest_price;
  std::optional<Money> highest_price;
  std::string lowest_price_date;
  std::string highest_price_date;
  std::string current_price_date;
  std::string description;
  std::string features;
  std::optional<Money> buyer_budget;
  std::optional<Money> seller_cost;
};

// Maps the loader's logical field names to the names used in a particular
// catalog file. Keys not present here keep their default spelling.
using FieldMap = std::map<std::string, std::string>;

// Full economic setup for one episode. budget != cost always holds; the
// mutual-interest case is budget > cost.
struct Scenario {
  Product product;
  Money budget{};
  Money cost{};
  int quantity = 1;
  int max_turns = 6;

  bool mutual_interest() const { return budget > cost; }
};

// Reads a catalog file: either a single JSON array of records or one JSON
// object per line. Throws CatalogError naming the record index and offending
// field on malformed input; duplicate codenames are rejected. Records without
// a codename get "<category>_<per-category-index>".
std::vector<Product> load_catalog(const std::string& path, const FieldMap& field_map = {});

// Same, from an in-memory string (exposed for tests and tools).
std::vector<Product> parse_catalog(const std::string& text, const FieldMap& field_map = {});

// Serializes products back to a JSON array string. Fields that were parsed
// from money text are emitted in canonical "$X.YZ" form.
std::string serialize_catalog(const std::vector<Product>& products);

// Assembles a scenario, defaulting budget/cost from the record's extension
// fields when present. Throws std::invalid_argument when budget == cost or
// either is missing and no override is given.
Scenario build_scenario(const Product& product, std::optional<Money> budget = std::nullopt,
                        std::optional<Money> cost = std::nullopt, int quantity = 1,
                        int max_turns = 6);

struct SplitSpec {
  std::uint64_t seed = 0;
  std::size_t train_count = 802;
  std::size_t test_count = 128;
};

struct Split {
  std::vector<std::string> train;  // codenames
  std::vector<std::string> test;
};

// Deterministic disjoint split by codename. Throws std::invalid_argument when
// train_count + test_count exceeds the catalog size.
Split split_catalog(const std::vector<Product>& products, const SplitSpec& spec);

// Deterministic synthetic scenario pool. Exactly round(count * ci_fraction)
// scenarios have budget < cost; budget == cost never occurs. Prices fall
// inside [price_lo, price_hi].
std::vector<Scenario> synth_scenarios(std::uint64_t seed, std::size_t count, Money price_lo,
                                      Money price_hi, double ci_fraction, int max_turns = 6);

}  // namespace arena
