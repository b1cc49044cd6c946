#include "tempo/interaction_log.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>

namespace tempo {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& s, const char* what, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("cannot parse ") + what + " '" + s + "'",
                     line_no);
  }
}

int parse_int(const std::string& s, const char* what, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("cannot parse ") + what + " '" + s + "'",
                     line_no);
  }
}

void format_double(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

void validate(const InteractionLog& log) {
  double prev_ts = -std::numeric_limits<double>::infinity();
  for (const Interaction& e : log.interactions) {
    if (e.user < 0 || e.user >= log.num_users) {
      throw SchemaError("user index out of range");
    }
    if (e.item < 0 || e.item >= log.num_items) {
      throw SchemaError("item index out of range");
    }
    if (!(e.timestamp >= 0.0)) throw SchemaError("negative timestamp");
    if (e.timestamp < prev_ts) throw SchemaError("timestamps not sorted");
    if (e.features.size() != log.feature_dim) {
      throw SchemaError("feature arity mismatch");
    }
    prev_ts = e.timestamp;
  }
}

InteractionLog load_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  return load_csv(in, has_header);
}

InteractionLog load_csv(std::istream& in, bool has_header) {
  InteractionLog log;
  std::unordered_map<std::string, int> user_ids;
  std::unordered_map<std::string, int> item_ids;

  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  if (has_header) {
    std::getline(in, line);
    ++line_no;
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() < 4) {
      throw ParseError("expected at least 4 fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }

    Interaction e;
    auto [uit, unew] = user_ids.try_emplace(fields[0],
                                            static_cast<int>(user_ids.size()));
    auto [iit, inew] = item_ids.try_emplace(fields[1],
                                            static_cast<int>(item_ids.size()));
    e.user = uit->second;
    e.item = iit->second;
    e.timestamp = parse_double(fields[2], "timestamp", line_no);
    e.state_label = parse_int(fields[3], "state_label", line_no);

    const std::size_t arity = fields.size() - 4;
    if (first_row) {
      log.feature_dim = arity;
      first_row = false;
    } else if (arity != log.feature_dim) {
      throw SchemaError("inconsistent feature arity at line " +
                        std::to_string(line_no) + ": expected " +
                        std::to_string(log.feature_dim) + ", got " +
                        std::to_string(arity));
    }
    e.features.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i) {
      e.features.push_back(parse_double(fields[4 + i], "feature", line_no));
    }
    log.interactions.push_back(std::move(e));
  }

  log.num_users = static_cast<int>(user_ids.size());
  log.num_items = static_cast<int>(item_ids.size());

  std::stable_sort(log.interactions.begin(), log.interactions.end(),
                   [](const Interaction& a, const Interaction& b) {
                     return a.timestamp < b.timestamp;
                   });
  if (!log.interactions.empty()) {
    const double t0 = log.interactions.front().timestamp;
    for (Interaction& e : log.interactions) e.timestamp -= t0;
  }
  return log;
}

void save_csv(const InteractionLog& log, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot open " + path.string() + " for write");
  save_csv(log, out);
}

void save_csv(const InteractionLog& log, std::ostream& out) {
  std::string line = "user_id,item_id,timestamp,state_label";
  for (std::size_t i = 0; i < log.feature_dim; ++i) {
    line += ",f" + std::to_string(i);
  }
  line += '\n';
  out << line;
  for (const Interaction& e : log.interactions) {
    line.clear();
    line += std::to_string(e.user);
    line += ',';
    line += std::to_string(e.item);
    line += ',';
    format_double(line, e.timestamp);
    line += ',';
    line += std::to_string(e.state_label);
    for (double f : e.features) {
      line += ',';
      format_double(line, f);
    }
    line += '\n';
    out << line;
  }
}

std::pair<InteractionLog, InteractionLog> chronological_split(
    const InteractionLog& log, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ArgumentError("train_fraction must lie in (0, 1)");
  }
  const auto n = static_cast<double>(log.size());
  const auto n_train = static_cast<std::size_t>(
      std::min(n, std::ceil(train_fraction * n)));

  InteractionLog train{{log.interactions.begin(),
                        log.interactions.begin() + static_cast<long>(n_train)},
                       log.num_users,
                       log.num_items,
                       log.feature_dim};
  InteractionLog test{{log.interactions.begin() + static_cast<long>(n_train),
                       log.interactions.end()},
                      log.num_users,
                      log.num_items,
                      log.feature_dim};
  return {std::move(train), std::move(test)};
}

}  // namespace tempo
