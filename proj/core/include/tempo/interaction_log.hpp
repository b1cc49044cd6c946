#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "tempo/errors.hpp"

namespace tempo {

/// One timestamped user -> item event. Indices are dense and 0-based;
/// timestamps are seconds since the start of the log. The state label is
/// carried through from the file format but unused by the model.
struct Interaction {
  int user = 0;
  int item = 0;
  double timestamp = 0.0;
  std::vector<double> features;
  int state_label = 0;

  bool operator==(const Interaction&) const = default;
};

/// An interaction sequence sorted nondecreasing by timestamp, together with
/// its id spaces. Immutable after construction by convention; safe to share
/// read-only across threads.
struct InteractionLog {
  std::vector<Interaction> interactions;
  int num_users = 0;
  int num_items = 0;
  std::size_t feature_dim = 0;

  std::size_t size() const { return interactions.size(); }
  bool empty() const { return interactions.empty(); }

  bool operator==(const InteractionLog&) const = default;
};

/// Throws SchemaError if any structural invariant is broken (index ranges,
/// timestamp order, feature arity, negative timestamps).
void validate(const InteractionLog& log);

/// Reads `user_id,item_id,timestamp,state_label,feat_1,...,feat_w` rows.
/// Ids (arbitrary strings) are densely remapped to 0-based indices in
/// first-appearance order, timestamps are shifted so the earliest is 0, and
/// rows are stably sorted by timestamp.
InteractionLog load_csv(const std::filesystem::path& path, bool has_header);
InteractionLog load_csv(std::istream& in, bool has_header);

/// Writes the log in the same CSV layout (indices as ids, with header).
/// load_csv(save_csv(log)) reproduces the log exactly.
void save_csv(const InteractionLog& log, const std::filesystem::path& path);
void save_csv(const InteractionLog& log, std::ostream& out);

/// Splits by time order: the first ceil(train_fraction * |S|) interactions
/// form the train log; both halves keep the full id spaces.
std::pair<InteractionLog, InteractionLog> chronological_split(
    const InteractionLog& log, double train_fraction);

}  // namespace tempo
