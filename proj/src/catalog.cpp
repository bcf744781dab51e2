#include "arena/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "arena/errors.hpp"
#include "arena/rng.hpp"

namespace arena {

namespace {

using nlohmann::json;

std::string mapped(const FieldMap& fm, const std::string& logical) {
  auto it = fm.find(logical);
  return it == fm.end() ? logical : it->second;
}

[[noreturn]] void fail(std::size_t index, const std::string& field, const std::string& why) {
  throw CatalogError("record " + std::to_string(index) + ": field '" + field + "': " + why);
}

std::optional<Money> money_field(const json& rec, const FieldMap& fm, std::size_t index,
                                 const std::string& logical, bool required) {
  const std::string key = mapped(fm, logical);
  if (!rec.contains(key)) {
    if (required) fail(index, key, "missing");
    return std::nullopt;
  }
  const json& v = rec.at(key);
  if (v.is_number()) return money_from_dollars(v.get<double>());
  if (v.is_string()) {
    auto m = parse_money(v.get<std::string>());
    if (!m) fail(index, key, "unparseable money text '" + v.get<std::string>() + "'");
    return m;
  }
  fail(index, key, "expected money text or number");
}

std::string string_field(const json& rec, const FieldMap& fm, std::size_t index,
                         const std::string& logical, bool required) {
  const std::string key = mapped(fm, logical);
  if (!rec.contains(key)) {
    if (required) fail(index, key, "missing");
    return "";
  }
  const json& v = rec.at(key);
  if (!v.is_string()) fail(index, key, "expected string");
  return v.get<std::string>();
}

Product record_to_product(const json& rec, const FieldMap& fm, std::size_t index) {
  if (!rec.is_object()) fail(index, "<record>", "expected a JSON object");
  Product p;
  p.codename = string_field(rec, fm, index, "codename", false);
  p.title = string_field(rec, fm, index, "title", true);
  p.category = string_field(rec, fm, index, "category", false);
  p.list_price = money_field(rec, fm, index, "list_price", true).value();
  p.current_price = money_field(rec, fm, index, "current_price", false);
  p.average_price = money_field(rec, fm, index, "average_price", false);
  p.lowest_price = money_field(rec, fm, index, "lowest_price", false);
  p.highest_price = money_field(rec, fm, index, "highest_price", false);
  p.lowest_price_date = string_field(rec, fm, index, "lowest_price_date", false);
  p.highest_price_date = string_field(rec, fm, index, "highest_price_date", false);
  p.current_price_date = string_field(rec, fm, index, "current_price_date", false);
  p.description = string_field(rec, fm, index, "description", false);
  p.features = string_field(rec, fm, index, "features", false);
  p.buyer_budget = money_field(rec, fm, index, "buyer_budget", false);
  p.seller_cost = money_field(rec, fm, index, "seller_cost", false);
  return p;
}

}  // namespace

std::vector<Product> parse_catalog(const std::string& text, const FieldMap& field_map) {
  std::vector<json> records;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw CatalogError("empty catalog");
  if (text[first] == '[') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw CatalogError(std::string("catalog is not valid JSON: ") + e.what());
    }
    for (auto& rec : doc) records.push_back(std::move(rec));
  } else {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        records.push_back(json::parse(line));
      } catch (const json::exception& e) {
        throw CatalogError("line " + std::to_string(line_no) + ": not valid JSON: " + e.what());
      }
    }
  }

  std::vector<Product> out;
  std::map<std::string, int> per_category;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    Product p = record_to_product(records[i], field_map, i);
    const std::string cat = p.category.empty() ? "item" : p.category;
    int ordinal = per_category[cat]++;
    if (p.codename.empty()) p.codename = cat + "_" + std::to_string(ordinal);
    auto [it, inserted] = seen.emplace(p.codename, i);
    if (!inserted)
      throw CatalogError("record " + std::to_string(i) + ": duplicate codename '" + p.codename +
                         "' (first at record " + std::to_string(it->second) + ")");
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Product> load_catalog(const std::string& path, const FieldMap& field_map) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError("cannot open catalog file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str(), field_map);
}

std::string serialize_catalog(const std::vector<Product>& products) {
  json arr = json::array();
  for (const auto& p : products) {
    json rec;
    rec["codename"] = p.codename;
    rec["title"] = p.title;
    if (!p.category.empty()) rec["category"] = p.category;
    rec["list_price"] = format_money(p.list_price);
    auto put = [&rec](const char* key, const std::optional<Money>& m) {
      if (m) rec[key] = format_money(*m);
    };
    put("current_price", p.current_price);
    put("average_price", p.average_price);
    put("lowest_price", p.lowest_price);
    put("highest_price", p.highest_price);
    if (!p.lowest_price_date.empty()) rec["lowest_price_date"] = p.lowest_price_date;
    if (!p.highest_price_date.empty()) rec["highest_price_date"] = p.highest_price_date;
    if (!p.current_price_date.empty()) rec["current_price_date"] = p.current_price_date;
    if (!p.description.empty()) rec["description"] = p.description;
    if (!p.features.empty()) rec["features"] = p.features;
    put("buyer_budget", p.buyer_budget);
    put("seller_cost", p.seller_cost);
    arr.push_back(std::move(rec));
  }
  return arr.dump(2);
}

Scenario build_scenario(const Product& product, std::optional<Money> budget,
                        std::optional<Money> cost, int quantity, int max_turns) {
  Scenario s;
  s.product = product;
  if (!budget) budget = product.buyer_budget;
  if (!cost) cost = product.seller_cost;
  if (!budget) throw std::invalid_argument("scenario needs a buyer budget");
  if (!cost) throw std::invalid_argument("scenario needs a seller cost");
  if (*budget == *cost)
    throw std::invalid_argument("budget must differ from cost (no surplus scale at B == C)");
  if (budget->cents <= 0 || cost->cents <= 0)
    throw std::invalid_argument("budget and cost must be positive");
  if (quantity < 1) throw std::invalid_argument("quantity must be at least 1");
  if (max_turns < 1) throw std::invalid_argument("max_turns must be at least 1");
  s.budget = *budget;
  s.cost = *cost;
  s.quantity = quantity;
  s.max_turns = max_turns;
  return s;
}

Split split_catalog(const std::vector<Product>& products, const SplitSpec& spec) {
  if (spec.train_count + spec.test_count > products.size())
    throw std::invalid_argument("split needs " +
                                std::to_string(spec.train_count + spec.test_count) +
                                " products, catalog has " + std::to_string(products.size()));
  std::vector<std::size_t> idx(products.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::mt19937_64 rng(split_seed(spec.seed));
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i) - 1));
    std::swap(idx[i - 1], idx[j]);
  }
  Split out;
  for (std::size_t i = 0; i < spec.train_count; ++i) out.train.push_back(products[idx[i]].codename);
  for (std::size_t i = 0; i < spec.test_count; ++i)
    out.test.push_back(products[idx[spec.train_count + i]].codename);
  return out;
}

std::vector<Scenario> synth_scenarios(std::uint64_t seed, std::size_t count, Money price_lo,
                                      Money price_hi, double ci_fraction, int max_turns) {
  if (price_lo.cents < 200 || price_hi < price_lo)
    throw std::invalid_argument("price range must satisfy $2.00 <= lo <= hi");
  if (ci_fraction < 0.0 || ci_fraction > 1.0)
    throw std::invalid_argument("ci_fraction must lie in [0, 1]");
  const std::size_t ci_count =
      static_cast<std::size_t>(std::llround(static_cast<double>(count) * ci_fraction));

  std::mt19937_64 rng(split_seed(seed, 0xCA7A10C5ULL));
  std::vector<bool> ci(count, false);
  for (std::size_t i = 0; i < ci_count; ++i) ci[i] = true;
  for (std::size_t i = count; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i) - 1));
    std::swap(ci[i - 1], ci[j]);
  }

  std::vector<Scenario> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Money list{uniform_int(rng, price_lo.cents, price_hi.cents)};
    Money budget, cost;
    if (!ci[i]) {
      budget = Money{static_cast<std::int64_t>(
          std::llround(static_cast<double>(list.cents) * (0.45 + 0.50 * uniform01(rng))))};
      if (budget.cents < 2) budget.cents = 2;
      cost = Money{static_cast<std::int64_t>(
          std::llround(static_cast<double>(budget.cents) * (0.35 + 0.50 * uniform01(rng))))};
      if (cost.cents < 1) cost.cents = 1;
      if (cost >= budget) cost.cents = budget.cents - 1;
    } else {
      budget = Money{static_cast<std::int64_t>(
          std::llround(static_cast<double>(list.cents) * (0.30 + 0.30 * uniform01(rng))))};
      if (budget.cents < 1) budget.cents = 1;
      cost = Money{static_cast<std::int64_t>(
          std::llround(static_cast<double>(budget.cents) * (1.05 + 0.55 * uniform01(rng))))};
      if (cost <= budget) cost.cents = budget.cents + 1;
    }
    Product p;
    p.codename = "synth_" + std::to_string(i);
    p.title = "Synthetic listing " + std::to_string(i);
    p.category = "synthetic";
    p.list_price = list;
    p.buyer_budget = budget;
    p.seller_cost = cost;
    out.push_back(build_scenario(p, budget, cost, 1, max_turns));
  }
  return out;
}

}  // namespace arena
