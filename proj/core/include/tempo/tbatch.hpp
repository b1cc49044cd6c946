#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "tempo/interaction_log.hpp"

namespace tempo {

/// Ordered partition of a log into conflict-free batches. Within one batch
/// all users are distinct and all items are distinct, and each node's
/// interactions appear in strictly increasing batch order.
struct BatchPlan {
  std::vector<std::vector<std::size_t>> batches;  // interaction indices
  std::size_t source_length = 0;

  std::size_t size() const { return batches.size(); }
  bool empty() const { return batches.empty(); }
};

/// Greedy assignment: interaction (u, j) goes to batch
/// max(U_u + 1, I_j + 1) where U_u / I_j are the last batch indices of the
/// endpoints (-1 when unseen); both counters are then set to that batch.
BatchPlan build_batches(const InteractionLog& log);

/// Same assignment computed by rescanning all prior placements for every
/// interaction. Test oracle only; refuses logs above 10^4 interactions.
BatchPlan brute_force_batches(const InteractionLog& log);

/// Histogram plus first moments of batch sizes.
struct BatchSizeDistribution {
  std::map<std::size_t, std::size_t> histogram;  // size -> count
  double mean = 0.0;
  double variance = 0.0;  // population variance
  std::size_t max = 0;
};

BatchSizeDistribution batch_size_distribution(const BatchPlan& plan);

/// Throws SchemaError if the plan violates any BatchPlan invariant with
/// respect to the source log.
void validate(const BatchPlan& plan, const InteractionLog& log);

}  // namespace tempo
