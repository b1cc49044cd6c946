#pragma once

#include <string>
#include <vector>

#include "tempo/interaction_log.hpp"

namespace tempo {

/// Per-user interaction-history metrics.
struct UserStats {
  int user = 0;
  std::size_t interactions = 0;
  std::size_t unique_items = 0;
  double entropy = 0.0;  // nats
  double top_item_ratio = 0.0;
};

/// Aggregates over users with at least one interaction; users absent from the
/// log slice are excluded from all averages.
struct DatasetStats {
  std::size_t num_interactions = 0;
  int num_users = 0;
  int num_items = 0;
  std::size_t active_users = 0;
  double interactions_per_user = 0.0;
  double unique_items_per_user = 0.0;
  double avg_user_entropy = 0.0;  // nats
  double avg_top_item_ratio = 0.0;
  std::vector<UserStats> per_user;  // active users only, ascending index
};

/// Shannon entropy in nats of the empirical item distribution of the user's
/// history. Throws ArgumentError if the user has no interactions.
double user_history_entropy(const InteractionLog& log, int user);

/// Count of the user's most frequent item divided by the user's total
/// interaction count. Throws ArgumentError if the user has no interactions.
double top_item_ratio(const InteractionLog& log, int user);

/// Throws ArgumentError on an empty log.
DatasetStats summary_stats(const InteractionLog& log);

/// Flat JSON object keyed by metric name.
std::string stats_to_json(const DatasetStats& stats);

/// One CSV row per active user: user,interactions,unique_items,entropy,top_item_ratio.
std::string stats_to_csv(const DatasetStats& stats);

}  // namespace tempo
