#include "arena/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace arena {

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::string fmt_pm(const Stat& s) {
  if (s.count == 0) return "n/a";
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.3f +/- %.3f", s.mean, s.se);
  return buf;
}

}  // namespace

double bargained_ratio(Money budget, Money cost, Money price_final) {
  if (budget == cost) throw std::invalid_argument("bargained_ratio: budget equals cost");
  return (budget.dollars() - price_final.dollars()) / (budget.dollars() - cost.dollars());
}

std::optional<double> bargained_ratio(const EpisodeRecord& record) {
  if (!dealt(record.outcome)) return std::nullopt;
  return bargained_ratio(record.scenario.budget, record.scenario.cost,
                         *record.outcome.price_final);
}

std::optional<double> first_offer_ratio(const EpisodeRecord& record) {
  if (!record.first_buyer_offer) return std::nullopt;
  return record.first_buyer_offer->dollars() / record.scenario.budget.dollars();
}

OutcomeRow to_row(const EpisodeRecord& record) {
  OutcomeRow row;
  row.cls = classify(record.scenario.budget, record.scenario.cost);
  row.reward = record.reward;
  row.dealt = dealt(record.outcome);
  if (record.outcome.price_final) row.price_final = record.outcome.price_final->dollars();
  row.bargained_ratio = bargained_ratio(record);
  row.first_offer_ratio = first_offer_ratio(record);
  row.overshoot = record.overshoot;
  row.turns_used = record.outcome.turns_used;
  return row;
}

Stat compute_stat(const std::vector<double>& xs) {
  Stat s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return s;  // se stays 0 by convention
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  double sample_sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  s.se = sample_sd / std::sqrt(static_cast<double>(xs.size()));
  return s;
}

double deal_rate(const std::vector<OutcomeRow>& rows, DealRateMode mode) {
  std::size_t population = 0, dealt_count = 0;
  for (const auto& row : rows) {
    if (mode == DealRateMode::mi_only && row.cls != ScenarioClass::mutual_interest) continue;
    ++population;
    if (row.dealt) ++dealt_count;
  }
  if (population == 0) throw std::invalid_argument("deal_rate: empty population");
  return static_cast<double>(dealt_count) / static_cast<double>(population);
}

double overshoot_rate(const std::vector<OutcomeRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("overshoot_rate: empty population");
  std::size_t n = 0;
  for (const auto& row : rows) n += row.overshoot ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(rows.size());
}

MetricsSummary aggregate(const std::vector<OutcomeRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("aggregate: no rows");

  std::vector<double> reward, reward_mi, reward_ci;
  std::vector<double> ratio, first_offer;
  std::vector<double> length, length_mi, length_ci;
  std::vector<double> deal_all, deal_mi, overshoot;

  for (const auto& row : rows) {
    const bool mi = row.cls == ScenarioClass::mutual_interest;
    reward.push_back(row.reward);
    length.push_back(static_cast<double>(row.turns_used));
    deal_all.push_back(row.dealt ? 1.0 : 0.0);
    overshoot.push_back(row.overshoot ? 1.0 : 0.0);
    if (mi) {
      reward_mi.push_back(row.reward);
      length_mi.push_back(static_cast<double>(row.turns_used));
      deal_mi.push_back(row.dealt ? 1.0 : 0.0);
    } else {
      reward_ci.push_back(row.reward);
      length_ci.push_back(static_cast<double>(row.turns_used));
    }
    if (row.bargained_ratio) ratio.push_back(*row.bargained_ratio);
    if (row.first_offer_ratio) first_offer.push_back(*row.first_offer_ratio);
  }

  MetricsSummary s;
  s.episodes = rows.size();
  s.mi_count = reward_mi.size();
  s.ci_count = reward_ci.size();
  s.reward = compute_stat(reward);
  s.reward_mi = compute_stat(reward_mi);
  s.reward_ci = compute_stat(reward_ci);
  s.bargained_ratio = compute_stat(ratio);
  s.first_offer_ratio = compute_stat(first_offer);
  s.episode_length = compute_stat(length);
  s.episode_length_mi = compute_stat(length_mi);
  s.episode_length_ci = compute_stat(length_ci);
  s.deal_rate_all = compute_stat(deal_all);
  s.deal_rate_mi = compute_stat(deal_mi);
  s.overshoot_rate = compute_stat(overshoot);
  return s;
}

std::string curves_csv(const std::vector<MetricsSummary>& iterations) {
  std::ostringstream out;
  out << "iteration,reward_mean,reward_se,deal_rate,deal_rate_mi,bargained_ratio,"
         "first_offer_ratio,overshoot_rate,episode_length,reward_mean_mi,reward_mean_ci,"
         "episode_length_mi,episode_length_ci\n";
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    const MetricsSummary& s = iterations[i];
    out << i << ',' << fmt(s.reward.mean) << ',' << fmt(s.reward.se) << ','
        << fmt(s.deal_rate_all.mean) << ',' << fmt(s.deal_rate_mi.mean) << ','
        << fmt(s.bargained_ratio.mean) << ',' << fmt(s.first_offer_ratio.mean) << ','
        << fmt(s.overshoot_rate.mean) << ',' << fmt(s.episode_length.mean) << ','
        << fmt(s.reward_mi.mean) << ',' << fmt(s.reward_ci.mean) << ','
        << fmt(s.episode_length_mi.mean) << ',' << fmt(s.episode_length_ci.mean) << '\n';
  }
  return out.str();
}

std::string summary_csv(const std::vector<std::pair<std::string, MetricsSummary>>& labeled) {
  std::ostringstream out;
  out << "label,episodes,mi_count,ci_count,reward_mean,reward_se,reward_mi_mean,reward_mi_se,"
         "reward_ci_mean,reward_ci_se,deal_rate,deal_rate_mi,bargained_ratio_mean,"
         "bargained_ratio_se,first_offer_ratio_mean,first_offer_ratio_se,overshoot_rate,"
         "episode_length_mean,episode_length_se\n";
  for (const auto& [label, s] : labeled) {
    out << label << ',' << s.episodes << ',' << s.mi_count << ',' << s.ci_count << ','
        << fmt(s.reward.mean) << ',' << fmt(s.reward.se) << ',' << fmt(s.reward_mi.mean) << ','
        << fmt(s.reward_mi.se) << ',' << fmt(s.reward_ci.mean) << ',' << fmt(s.reward_ci.se)
        << ',' << fmt(s.deal_rate_all.mean) << ',' << fmt(s.deal_rate_mi.mean) << ','
        << fmt(s.bargained_ratio.mean) << ',' << fmt(s.bargained_ratio.se) << ','
        << fmt(s.first_offer_ratio.mean) << ',' << fmt(s.first_offer_ratio.se) << ','
        << fmt(s.overshoot_rate.mean) << ',' << fmt(s.episode_length.mean) << ','
        << fmt(s.episode_length.se) << '\n';
  }
  return out.str();
}

std::string report_markdown(const std::vector<std::pair<std::string, MetricsSummary>>& labeled) {
  std::ostringstream out;
  out << "| Model | Reward | Deal Rate | Bargained Ratio | Price Overshoot Rate |\n";
  out << "|---|---|---|---|---|\n";
  for (const auto& [label, s] : labeled) {
    out << "| " << label << " | " << fmt_pm(s.reward) << " | " << fmt_pm(s.deal_rate_all)
        << " | " << fmt_pm(s.bargained_ratio) << " | " << fmt_pm(s.overshoot_rate) << " |\n";
  }
  return out.str();
}

}  // namespace arena
