// SPDX-License-Identifier: Apache-2.0

#include "arman/reconfig.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "arman/common.hpp"

namespace arman::reconfig {

std::string_view to_string(Objective obj) {
  switch (obj) {
    case Objective::cycles: return "cycles";
    case Objective::power: return "power";
    case Objective::energy: return "energy";
    case Objective::edp: return "edp";
    case Objective::utilization: return "utilization";
  }
  return "?";
}

Objective objective_from_string(std::string_view name) {
  for (Objective obj : kAllObjectives) {
    if (name == to_string(obj)) return obj;
  }
  std::string valid;
  for (Objective obj : kAllObjectives) {
    if (!valid.empty()) valid += ", ";
    valid += to_string(obj);
  }
  throw ParseError("unknown objective '" + std::string(name) +
                   "'; valid names: " + valid);
}

double objective_value(const ArrangementMetrics& m, Objective obj) {
  switch (obj) {
    case Objective::cycles: return static_cast<double>(m.cycles);
    case Objective::power: return m.energy.avg_power_w;
    case Objective::energy: return m.energy.energy_j;
    case Objective::edp: return m.energy.edp_js;
    case Objective::utilization: return m.utilization;
  }
  throw std::logic_error("unreachable objective");
}

ReconfigDecision select_arrangement(
    const workload::NetworkModel& net, dse::ArchConfig config,
    const energy::TechParams& tech, Objective obj,
    fabric::Arrangement baseline,
    const std::vector<fabric::Arrangement>& candidates) {
  std::vector<fabric::Arrangement> pool;
  if (candidates.empty()) {
    pool.assign(fabric::kAllArrangements.begin(),
                fabric::kAllArrangements.end());
  } else {
    for (fabric::Arrangement arr : fabric::kAllArrangements) {
      if (std::find(candidates.begin(), candidates.end(), arr) !=
          candidates.end()) {
        pool.push_back(arr);
      }
    }
    if (pool.empty()) {
      throw std::invalid_argument("select_arrangement: no candidates");
    }
  }

  ReconfigDecision decision;
  decision.objective = obj;
  decision.config = config;
  decision.baseline = baseline;

  // The table carries every simulated arrangement in declaration order;
  // the baseline is simulated even when outside the candidate pool.
  std::vector<fabric::Arrangement> simulated = pool;
  if (std::find(simulated.begin(), simulated.end(), baseline) ==
      simulated.end()) {
    simulated.push_back(baseline);
    std::sort(simulated.begin(), simulated.end());
  }

  const bool maximize = obj == Objective::utilization;
  bool have_best = false;
  double best_value = 0.0;
  for (fabric::Arrangement arr : simulated) {
    const fabric::NetworkStats stats =
        fabric::simulate_network(net, arr, config.base, config.flow);
    ArrangementMetrics m;
    m.arrangement = arr;
    m.cycles = stats.total_cycles;
    m.utilization = stats.utilization;
    m.sram_accesses = stats.sram_accesses;
    m.energy = energy::energy_report(stats, tech);
    decision.table.push_back(m);

    const double value = objective_value(m, obj);
    if (arr == baseline) decision.baseline_value = value;
    const bool in_pool =
        std::find(pool.begin(), pool.end(), arr) != pool.end();
    if (in_pool &&
        (!have_best || (maximize ? value > best_value : value < best_value))) {
      have_best = true;
      best_value = value;
      decision.chosen = arr;
      decision.chosen_value = value;
    }
  }

  decision.selectors = fabric::selector_config(decision.chosen);
  decision.improvement = maximize
                             ? decision.chosen_value / decision.baseline_value
                             : decision.baseline_value / decision.chosen_value;
  return decision;
}

}  // namespace arman::reconfig
