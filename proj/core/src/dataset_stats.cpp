#include "tempo/dataset_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>

namespace tempo {

namespace {

std::map<int, std::size_t> item_counts(const InteractionLog& log, int user) {
  std::map<int, std::size_t> counts;
  for (const Interaction& e : log.interactions) {
    if (e.user == user) ++counts[e.item];
  }
  if (counts.empty()) {
    throw ArgumentError("user " + std::to_string(user) +
                        " has no interactions");
  }
  return counts;
}

double entropy_of(const std::map<int, std::size_t>& counts, std::size_t total) {
  double h = 0.0;
  for (const auto& [item, count] : counts) {
    const double q = static_cast<double>(count) / static_cast<double>(total);
    h -= q * std::log(q);
  }
  return std::max(h, 0.0);
}

}  // namespace

double user_history_entropy(const InteractionLog& log, int user) {
  const auto counts = item_counts(log, user);
  std::size_t total = 0;
  for (const auto& [item, count] : counts) total += count;
  return entropy_of(counts, total);
}

double top_item_ratio(const InteractionLog& log, int user) {
  const auto counts = item_counts(log, user);
  std::size_t total = 0;
  std::size_t top = 0;
  for (const auto& [item, count] : counts) {
    total += count;
    top = std::max(top, count);
  }
  return static_cast<double>(top) / static_cast<double>(total);
}

DatasetStats summary_stats(const InteractionLog& log) {
  if (log.empty()) throw ArgumentError("summary_stats: empty log");

  // Single pass per-user tallies; one map per user would rescan the log.
  std::vector<std::map<int, std::size_t>> counts(
      static_cast<std::size_t>(log.num_users));
  for (const Interaction& e : log.interactions) {
    ++counts[static_cast<std::size_t>(e.user)][e.item];
  }

  DatasetStats stats;
  stats.num_interactions = log.size();
  stats.num_users = log.num_users;
  stats.num_items = log.num_items;

  double sum_inter = 0.0, sum_unique = 0.0, sum_entropy = 0.0, sum_ratio = 0.0;
  for (int u = 0; u < log.num_users; ++u) {
    const auto& c = counts[static_cast<std::size_t>(u)];
    if (c.empty()) continue;
    UserStats us;
    us.user = u;
    us.unique_items = c.size();
    std::size_t top = 0;
    for (const auto& [item, count] : c) {
      us.interactions += count;
      top = std::max(top, count);
    }
    us.entropy = entropy_of(c, us.interactions);
    us.top_item_ratio =
        static_cast<double>(top) / static_cast<double>(us.interactions);

    sum_inter += static_cast<double>(us.interactions);
    sum_unique += static_cast<double>(us.unique_items);
    sum_entropy += us.entropy;
    sum_ratio += us.top_item_ratio;
    stats.per_user.push_back(us);
  }

  stats.active_users = stats.per_user.size();
  const auto n = static_cast<double>(stats.active_users);
  stats.interactions_per_user = sum_inter / n;
  stats.unique_items_per_user = sum_unique / n;
  stats.avg_user_entropy = sum_entropy / n;
  stats.avg_top_item_ratio = sum_ratio / n;
  return stats;
}

std::string stats_to_json(const DatasetStats& stats) {
  nlohmann::json j{
      {"num_interactions", stats.num_interactions},
      {"num_users", stats.num_users},
      {"num_items", stats.num_items},
      {"active_users", stats.active_users},
      {"interactions_per_user", stats.interactions_per_user},
      {"unique_items_per_user", stats.unique_items_per_user},
      {"avg_user_entropy", stats.avg_user_entropy},
      {"avg_top_item_ratio", stats.avg_top_item_ratio},
  };
  return j.dump(2);
}

std::string stats_to_csv(const DatasetStats& stats) {
  std::string out = "user,interactions,unique_items,entropy,top_item_ratio\n";
  char buf[128];
  for (const UserStats& us : stats.per_user) {
    std::snprintf(buf, sizeof(buf), "%d,%zu,%zu,%.17g,%.17g\n", us.user,
                  us.interactions, us.unique_items, us.entropy,
                  us.top_item_ratio);
    out += buf;
  }
  return out;
}

}  // namespace tempo
