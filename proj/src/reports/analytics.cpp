#include <algorithm>
#include <map>
#include <set>

#include "museum/core/error.hpp"
#include "museum/reports/reports.hpp"

namespace museum::reports {

std::vector<double> forecast_visitors(std::span<const double> history, int horizon) {
  if (history.empty()) throw Error(ErrorCode::DomainError, "forecast needs at least one day of history");
  if (horizon < 1) throw Error(ErrorCode::DomainError, "forecast horizon must be >= 1");

  const auto n = static_cast<double>(history.size());
  double mean_y = 0.0;
  for (double y : history) mean_y += y;
  mean_y /= n;

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(horizon));
  if (history.size() < 3) {
    out.assign(static_cast<std::size_t>(horizon), std::max(0.0, mean_y));
    return out;
  }

  const double mean_x = (n - 1.0) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double dx = static_cast<double>(i) - mean_x;
    sxy += dx * (history[i] - mean_y);
    sxx += dx * dx;
  }
  const double slope = sxy / sxx;
  for (int h = 0; h < horizon; ++h) {
    const double x = n + static_cast<double>(h);
    out.push_back(std::max(0.0, mean_y + slope * (x - mean_x)));
  }
  return out;
}

std::vector<Dependency> find_dependencies(std::span<const Event> events, const Interval& interval,
                                          std::int64_t min_support) {
  if (min_support < 1) throw Error(ErrorCode::DomainError, "min_support must be >= 1");
  std::map<TicketId, std::set<ObjectId>> visited;
  for (const auto& e : events) {
    if (!interval.contains(e.timestamp)) continue;
    if (const auto* read = e.get_if<ObjectInfoRead>()) visited[read->ticket].insert(read->object);
  }

  std::map<ObjectId, std::int64_t> singles;
  std::map<std::pair<ObjectId, ObjectId>, std::int64_t> pairs;
  for (const auto& [ticket, objects] : visited) {
    for (auto a = objects.begin(); a != objects.end(); ++a) {
      ++singles[*a];
      for (auto b = std::next(a); b != objects.end(); ++b) ++pairs[{*a, *b}];
    }
  }

  const auto tickets = static_cast<double>(visited.size());
  std::vector<Dependency> out;
  for (const auto& [pair, support] : pairs) {
    if (support < min_support) continue;
    // (s/N) / ((a/N)(b/N)) as one division of exact integers, so equal
    // ratios give identical doubles and ties sort by id.
    const double joint = static_cast<double>(support) * tickets;
    const double marginals = static_cast<double>(singles[pair.first]) * static_cast<double>(singles[pair.second]);
    out.push_back({pair.first, pair.second, support, joint / marginals});
  }
  std::stable_sort(out.begin(), out.end(), [](const Dependency& x, const Dependency& y) {
    if (x.lift != y.lift) return x.lift > y.lift;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return out;
}

namespace {

using LiftTable = std::map<std::pair<ObjectId, ObjectId>, double>;

LiftTable lift_table(std::span<const Dependency> dependencies) {
  LiftTable table;
  for (const auto& d : dependencies) {
    table[{d.a, d.b}] = d.lift;
    table[{d.b, d.a}] = d.lift;
  }
  return table;
}

double lift_of(const LiftTable& table, const ObjectId& a, const ObjectId& b) {
  auto it = table.find({a, b});
  return it == table.end() ? 0.0 : it->second;
}

std::vector<ObjectId> unique_sorted(std::vector<ObjectId> objects) {
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  return objects;
}

}  // namespace

double arrangement_score(const std::vector<ObjectId>& order, std::span<const Dependency> dependencies) {
  const auto table = lift_table(dependencies);
  double score = 0.0;
  for (std::size_t i = 1; i < order.size(); ++i) score += lift_of(table, order[i - 1], order[i]);
  return score;
}

Arrangement suggest_arrangement(std::vector<ObjectId> objects, std::span<const Dependency> dependencies) {
  objects = unique_sorted(std::move(objects));
  const auto table = lift_table(dependencies);
  const std::set<ObjectId> pool(objects.begin(), objects.end());

  Arrangement result;
  std::set<ObjectId> remaining = pool;
  // Dependencies arrive sorted by lift, so the first usable one is the seed.
  for (const auto& d : dependencies) {
    if (pool.contains(d.a) && pool.contains(d.b) && d.lift > 0.0) {
      result.order = {d.a, d.b};
      remaining.erase(d.a);
      remaining.erase(d.b);
      break;
    }
  }

  while (!remaining.empty() && !result.order.empty()) {
    const ObjectId& head = result.order.front();
    const ObjectId& tail = result.order.back();
    const ObjectId* pick = nullptr;
    double pick_sum = 0.0;
    for (const auto& candidate : remaining) {
      const double sum = lift_of(table, candidate, head) + lift_of(table, candidate, tail);
      if (sum > pick_sum) {
        pick = &candidate;
        pick_sum = sum;
      }
    }
    if (!pick) break;
    const ObjectId chosen = *pick;
    if (lift_of(table, chosen, head) > lift_of(table, chosen, tail)) {
      result.order.insert(result.order.begin(), chosen);
    } else {
      result.order.push_back(chosen);
    }
    remaining.erase(chosen);
  }
  for (const auto& rest : remaining) result.order.push_back(rest);

  result.score = arrangement_score(result.order, dependencies);
  return result;
}

Arrangement suggest_arrangement(const MuseumMap& map, std::span<const Dependency> dependencies) {
  return suggest_arrangement(map.object_ids(), dependencies);
}

Arrangement exhaustive_arrangement(std::vector<ObjectId> objects, std::span<const Dependency> dependencies) {
  objects = unique_sorted(std::move(objects));
  Arrangement best{objects, arrangement_score(objects, dependencies)};
  while (std::next_permutation(objects.begin(), objects.end())) {
    const double score = arrangement_score(objects, dependencies);
    if (score > best.score) best = {objects, score};
  }
  return best;
}

}  // namespace museum::reports
