// SPDX-License-Identifier: Apache-2.0
#ifndef ARMAN_RECONFIG_HPP
#define ARMAN_RECONFIG_HPP

#include <string_view>
#include <vector>

#include "arman/arrangement.hpp"
#include "arman/dse.hpp"
#include "arman/energy.hpp"
#include "arman/workload.hpp"

namespace arman::reconfig {

// Utilization is maximized; all others are minimized.
enum class Objective { cycles, power, energy, edp, utilization };

inline constexpr std::array<Objective, 5> kAllObjectives = {
    Objective::cycles, Objective::power, Objective::energy, Objective::edp,
    Objective::utilization,
};

std::string_view to_string(Objective obj);
Objective objective_from_string(std::string_view name);

struct ArrangementMetrics {
  fabric::Arrangement arrangement = fabric::Arrangement::a1x1;
  std::uint64_t cycles = 0;
  double utilization = 0.0;
  std::uint64_t sram_accesses = 0;
  energy::EnergyReport energy;
};

double objective_value(const ArrangementMetrics& metrics, Objective obj);

struct ReconfigDecision {
  Objective objective = Objective::cycles;
  dse::ArchConfig config;
  fabric::Arrangement baseline = fabric::Arrangement::a2x2;
  fabric::Arrangement chosen = fabric::Arrangement::a2x2;
  fabric::SelectorVector selectors;
  std::vector<ArrangementMetrics> table;  // declaration order
  double baseline_value = 0.0;
  double chosen_value = 0.0;
  // baseline/chosen for minimized objectives, chosen/baseline for
  // utilization, so better-than-baseline always reads as > 1.
  double improvement = 0.0;
};

// Simulates every candidate arrangement (all ten when `candidates` is
// empty) on the fixed config, picks the objective's argopt with ties going
// to declaration order, and reports the improvement over `baseline`.
// Arrangement switching itself is costed at zero cycles.
ReconfigDecision select_arrangement(
    const workload::NetworkModel& net, dse::ArchConfig config,
    const energy::TechParams& tech, Objective obj,
    fabric::Arrangement baseline = fabric::Arrangement::a2x2,
    const std::vector<fabric::Arrangement>& candidates = {});

}  // namespace arman::reconfig

#endif  // ARMAN_RECONFIG_HPP
