#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arena/engine.hpp"
#include "arena/reward.hpp"

namespace arena {

// Flat per-episode measurement row; everything downstream aggregates these.
struct OutcomeRow {
  ScenarioClass cls = ScenarioClass::mutual_interest;
  double reward = 0.0;
  bool dealt = false;
  std::optional<double> price_final;
  std::optional<double> bargained_ratio;    // present iff dealt
  std::optional<double> first_offer_ratio;  // present iff the opening action carried a price
  bool overshoot = false;
  int turns_used = 0;
};

OutcomeRow to_row(const EpisodeRecord& record);

// Extraction efficiency (B - P) / (B - C). Signed denominator, no clip: on
// CI deals this goes negative past -1 where the reward formula would clip.
// Throws std::invalid_argument when budget == cost.
double bargained_ratio(Money budget, Money cost, Money price_final);
std::optional<double> bargained_ratio(const EpisodeRecord& record);

// Offer1 / B; absent when the opening action was not a Buy.
std::optional<double> first_offer_ratio(const EpisodeRecord& record);

// mean and standard error of one metric over its applicable subpopulation.
// SE uses the sample standard deviation (n - 1); by convention SE = 0 when
// count < 2, and mean is NaN when count = 0.
struct Stat {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double se = 0.0;
  std::size_t count = 0;
};

Stat compute_stat(const std::vector<double>& xs);

struct MetricsSummary {
  std::size_t episodes = 0;
  std::size_t mi_count = 0;
  std::size_t ci_count = 0;
  Stat reward, reward_mi, reward_ci;
  Stat bargained_ratio;    // over deals
  Stat first_offer_ratio;  // over rows where present
  Stat episode_length, episode_length_mi, episode_length_ci;
  // Indicator stats: mean is the rate itself. Two deal-rate denominators are
  // reported side by side (all episodes vs MI episodes only) because both
  // definitions are in use; reports label them explicitly.
  Stat deal_rate_all;
  Stat deal_rate_mi;
  Stat overshoot_rate;
};

enum class DealRateMode { all, mi_only };

// Throws std::invalid_argument on an empty population.
double deal_rate(const std::vector<OutcomeRow>& rows, DealRateMode mode);
double overshoot_rate(const std::vector<OutcomeRow>& rows);

// Throws std::invalid_argument on empty rows; empty subpopulations yield
// count-0 Stats rather than errors.
MetricsSummary aggregate(const std::vector<OutcomeRow>& rows);

// One CSV row per training iteration, NaN spelled "nan":
// iteration,reward_mean,reward_se,deal_rate,deal_rate_mi,bargained_ratio,
// first_offer_ratio,overshoot_rate,episode_length,reward_mean_mi,
// reward_mean_ci,episode_length_mi,episode_length_ci
std::string curves_csv(const std::vector<MetricsSummary>& iterations);

// Wide single-row-per-label CSV with every mean/se/count.
std::string summary_csv(const std::vector<std::pair<std::string, MetricsSummary>>& labeled);

// Benchmark-table style markdown: Model | Reward | Deal Rate | Bargained
// Ratio | Price Overshoot Rate, each cell "mean +/- SE". Deal Rate here uses
// the all-episodes denominator.
std::string report_markdown(const std::vector<std::pair<std::string, MetricsSummary>>& labeled);

}  // namespace arena
