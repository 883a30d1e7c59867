// SPDX-License-Identifier: Apache-2.0

#include "arman/dse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "arman/common.hpp"
#include "arman/parallel.hpp"

namespace arman::dse {

namespace {

using u64 = std::uint64_t;

constexpr std::array<u64, 5> kAllowedBases = {32, 64, 128, 256, 512};

}  // namespace

std::vector<ArchConfig> DesignSpace::configs() const {
  std::vector<ArchConfig> out;
  out.reserve(dataflows.size() * bases.size());
  for (timing::Dataflow flow : dataflows) {
    for (u64 base : bases) out.push_back({flow, base});
  }
  return out;
}

std::vector<DesignPoint> DesignSpace::points() const {
  std::vector<DesignPoint> out;
  out.reserve(dataflows.size() * bases.size() * arrangements.size());
  for (const ArchConfig& c : configs()) {
    for (fabric::Arrangement arr : arrangements) out.push_back({c, arr});
  }
  return out;
}

DesignSpace make_design_space(std::vector<timing::Dataflow> dataflows,
                              std::vector<u64> bases,
                              std::vector<fabric::Arrangement> arrangements) {
  DesignSpace space;
  if (dataflows.empty()) {
    space.dataflows.assign(timing::kAllDataflows.begin(),
                           timing::kAllDataflows.end());
  } else {
    for (timing::Dataflow flow : timing::kAllDataflows) {
      if (std::find(dataflows.begin(), dataflows.end(), flow) !=
          dataflows.end()) {
        space.dataflows.push_back(flow);
      }
    }
  }

  if (bases.empty()) throw std::invalid_argument("design space needs >= 1 base");
  for (u64 base : kAllowedBases) {
    if (std::find(bases.begin(), bases.end(), base) != bases.end()) {
      space.bases.push_back(base);
    }
  }
  for (u64 base : bases) {
    if (std::find(kAllowedBases.begin(), kAllowedBases.end(), base) ==
        kAllowedBases.end()) {
      throw std::invalid_argument("base " + std::to_string(base) +
                                  " not in {32, 64, 128, 256, 512}");
    }
  }

  if (arrangements.empty()) {
    space.arrangements.assign(fabric::kAllArrangements.begin(),
                              fabric::kAllArrangements.end());
  } else {
    for (fabric::Arrangement arr : fabric::kAllArrangements) {
      if (std::find(arrangements.begin(), arrangements.end(), arr) !=
          arrangements.end()) {
        space.arrangements.push_back(arr);
      }
    }
  }
  return space;
}

std::vector<ModelMetrics> evaluate_space(
    const std::vector<workload::NetworkModel>& models, const DesignSpace& space,
    const energy::TechParams& tech, unsigned jobs) {
  if (models.empty()) throw std::invalid_argument("evaluate_space: no models");
  const std::vector<DesignPoint> points = space.points();
  if (points.empty()) throw std::invalid_argument("evaluate_space: empty space");

  std::vector<ModelMetrics> out(models.size(), ModelMetrics(points.size()));
  parallel_for(models.size() * points.size(), jobs, [&](std::size_t idx) {
    const std::size_t m = idx / points.size();
    const std::size_t s = idx % points.size();
    const DesignPoint& pt = points[s];
    try {
      const fabric::NetworkStats stats = fabric::simulate_network(
          models[m], pt.arrangement, pt.config.base, pt.config.flow);
      const energy::EnergyReport er = energy::energy_report(stats, tech);
      out[m][s] = MetricsVector{stats.total_cycles, er.avg_power_w,
                                stats.utilization, stats.sram_accesses};
    } catch (const std::exception& e) {
      throw ConsistencyError(
          "evaluating model " + models[m].name + ", point " +
          std::string(timing::to_string(pt.config.flow)) + "-" +
          std::to_string(pt.config.base) + "/" +
          std::string(fabric::to_string(pt.arrangement)) + ": " + e.what());
    }
  });
  return out;
}

std::vector<std::array<double, 4>> normalize_and_orient(
    const ModelMetrics& metrics) {
  if (metrics.empty()) {
    throw std::invalid_argument("normalize_and_orient: no points");
  }
  std::array<double, 4> lo, hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const MetricsVector& m : metrics) {
    const auto v = m.as_array();
    for (std::size_t d = 0; d < 4; ++d) {
      lo[d] = std::min(lo[d], v[d]);
      hi[d] = std::max(hi[d], v[d]);
    }
  }

  std::vector<std::array<double, 4>> out(metrics.size());
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const auto v = metrics[i].as_array();
    for (std::size_t d = 0; d < 4; ++d) {
      if (hi[d] <= lo[d]) {
        out[i][d] = 0.0;
        continue;
      }
      const double scaled = (v[d] - lo[d]) / (hi[d] - lo[d]);
      out[i][d] = d == 2 ? 1.0 - scaled : scaled;  // utilization is maximized
    }
  }
  return out;
}

std::vector<char> prune(
    const std::vector<std::vector<std::array<double, 4>>>& normalized,
    double alpha) {
  if (normalized.empty() || normalized[0].empty()) {
    throw std::invalid_argument("prune: no points");
  }
  if (!(alpha >= 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("prune: alpha must be in [0, 1)");
  }
  const std::size_t n = normalized[0].size();

  std::vector<double> score(n, 0.0);
  for (const auto& model : normalized) {
    for (std::size_t s = 0; s < n; ++s) {
      score[s] += std::accumulate(model[s].begin(), model[s].end(), 0.0);
    }
  }
  const double denom = static_cast<double>(normalized.size()) * 4.0;
  for (double& v : score) v /= denom;

  const std::size_t remove =
      static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n)));
  if (remove >= n) {
    throw std::invalid_argument("prune: alpha would remove every point");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return score[a] > score[b];
  });

  std::vector<char> pruned(n, 0);
  for (std::size_t i = 0; i < remove; ++i) pruned[order[i]] = 1;
  return pruned;
}

std::vector<std::size_t> pareto_front(
    const std::vector<std::array<double, 4>>& points,
    const std::vector<std::size_t>& scope) {
  if (scope.empty()) throw std::invalid_argument("pareto_front: empty scope");
  auto dominates = [&](std::size_t p, std::size_t q) {
    bool strict = false;
    for (std::size_t d = 0; d < 4; ++d) {
      if (points[p][d] > points[q][d]) return false;
      if (points[p][d] < points[q][d]) strict = true;
    }
    return strict;
  };

  std::vector<std::size_t> front;
  for (std::size_t q : scope) {
    bool dominated = false;
    for (std::size_t p : scope) {
      if (p != q && dominates(p, q)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(q);
  }
  return front;
}

double distance_to_front(const std::array<double, 4>& point,
                         const std::vector<std::array<double, 4>>& points,
                         const std::vector<std::size_t>& front) {
  if (front.empty()) {
    throw std::invalid_argument("distance_to_front: empty front");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t p : front) {
    double sq = 0.0;
    for (std::size_t d = 0; d < 4; ++d) {
      const double diff = point[d] - points[p][d];
      sq += diff * diff;
    }
    best = std::min(best, std::sqrt(sq));
  }
  return best;
}

void rank_configs(DseResult& result) {
  const std::size_t num_configs = result.configs.size();
  const std::size_t num_points = result.points.size();
  const std::size_t arrangements = result.space.arrangements.size();

  std::vector<double> sum(num_configs, 0.0);
  std::vector<u64> count(num_configs, 0);
  for (std::size_t m = 0; m < result.distance.size(); ++m) {
    for (std::size_t s = 0; s < num_points; ++s) {
      if (result.pruned[s]) continue;
      const std::size_t c = s / arrangements;
      sum[c] += result.distance[m][s];
      ++count[c];
    }
  }

  result.r.assign(num_configs, std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < num_configs; ++c) {
    if (count[c] > 0) result.r[c] = sum[c] / static_cast<double>(count[c]);
  }

  result.ranking.resize(num_configs);
  std::iota(result.ranking.begin(), result.ranking.end(), 0);
  std::stable_sort(result.ranking.begin(), result.ranking.end(),
                   [&](std::size_t a, std::size_t b) {
                     return result.r[a] < result.r[b];
                   });
  result.c_star = result.configs[result.ranking.front()];
}

DseResult run_dse(const std::vector<workload::NetworkModel>& models,
                  const DesignSpace& space, const energy::TechParams& tech,
                  double alpha, unsigned jobs) {
  DseResult result;
  result.space = space;
  result.alpha = alpha;
  result.configs = space.configs();
  result.points = space.points();
  for (const auto& m : models) result.model_names.push_back(m.name);

  result.raw = evaluate_space(models, space, tech, jobs);
  result.normalized.reserve(models.size());
  for (const ModelMetrics& mm : result.raw) {
    result.normalized.push_back(normalize_and_orient(mm));
  }
  result.pruned = prune(result.normalized, alpha);

  std::vector<std::size_t> scope;
  for (std::size_t s = 0; s < result.points.size(); ++s) {
    if (!result.pruned[s]) scope.push_back(s);
  }

  const std::size_t n = result.points.size();
  result.on_front.assign(models.size(), std::vector<char>(n, 0));
  result.distance.assign(models.size(), std::vector<double>(n, 0.0));
  for (std::size_t m = 0; m < models.size(); ++m) {
    const std::vector<std::size_t> front =
        pareto_front(result.normalized[m], scope);
    for (std::size_t id : front) result.on_front[m][id] = 1;
    for (std::size_t s : scope) {
      result.distance[m][s] =
          distance_to_front(result.normalized[m][s], result.normalized[m], front);
    }
  }

  rank_configs(result);
  return result;
}

}  // namespace arman::dse
