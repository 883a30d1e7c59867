// SPDX-License-Identifier: Apache-2.0
#ifndef ARMAN_DSE_HPP
#define ARMAN_DSE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "arman/arrangement.hpp"
#include "arman/energy.hpp"
#include "arman/systolic_timing.hpp"
#include "arman/workload.hpp"

namespace arman::dse {

// An architecture configuration fixes dataflow and base size; arrangements
// stay run-time reconfigurable on top of it.
struct ArchConfig {
  timing::Dataflow flow = timing::Dataflow::OS;
  std::uint64_t base = 0;

  bool operator==(const ArchConfig&) const = default;
};

struct DesignPoint {
  ArchConfig config;
  fabric::Arrangement arrangement = fabric::Arrangement::a1x1;
};

// Configs enumerate dataflow-major with bases ascending, points
// config-major with arrangements in declaration order; those enumeration
// orders double as the deterministic tie-break everywhere.
struct DesignSpace {
  std::vector<timing::Dataflow> dataflows;
  std::vector<std::uint64_t> bases;
  std::vector<fabric::Arrangement> arrangements;

  std::vector<ArchConfig> configs() const;
  std::vector<DesignPoint> points() const;
};

// Validated builder: dataflows deduped into OS<WS<IS order, bases deduped
// ascending and restricted to {32, 64, 128, 256, 512}, arrangements deduped
// into declaration order. Empty dataflows/arrangements select everything.
DesignSpace make_design_space(std::vector<timing::Dataflow> dataflows,
                              std::vector<std::uint64_t> bases,
                              std::vector<fabric::Arrangement> arrangements);

struct MetricsVector {
  std::uint64_t cycles = 0;
  double avg_power = 0.0;
  double utilization = 0.0;
  std::uint64_t mem_accesses = 0;

  // Column order used by normalization, fronts, and reports.
  std::array<double, 4> as_array() const {
    return {static_cast<double>(cycles), avg_power, utilization,
            static_cast<double>(mem_accesses)};
  }
};

// One MetricsVector per design point for one model.
using ModelMetrics = std::vector<MetricsVector>;

// Evaluates every (model, point) pair; rows/columns follow enumeration
// order regardless of job count. Simulation failures are rethrown with the
// (model, point) named.
std::vector<ModelMetrics> evaluate_space(
    const std::vector<workload::NetworkModel>& models, const DesignSpace& space,
    const energy::TechParams& tech, unsigned jobs = 1);

// Per-objective min-max scaling to [0,1] within one model; utilization is
// flipped to 1-scaled so every column is minimized; a constant column
// (utilization included) maps to all zeros.
std::vector<std::array<double, 4>> normalize_and_orient(
    const ModelMetrics& metrics);

// Removes the ceil(alpha*|S|) points with the worst (highest) mean oriented
// value across models and objectives; ties keep the smaller point id.
// Returns a per-point pruned flag.
std::vector<char> prune(
    const std::vector<std::vector<std::array<double, 4>>>& normalized,
    double alpha);

// Non-dominated subset under minimization; exact duplicates of a front
// vector are all members. Returns member ids into `points`.
std::vector<std::size_t> pareto_front(
    const std::vector<std::array<double, 4>>& points,
    const std::vector<std::size_t>& scope);

double distance_to_front(const std::array<double, 4>& point,
                         const std::vector<std::array<double, 4>>& points,
                         const std::vector<std::size_t>& front);

struct DseResult {
  DesignSpace space;
  double alpha = 0.0;
  std::vector<std::string> model_names;
  std::vector<ArchConfig> configs;
  std::vector<DesignPoint> points;
  std::vector<ModelMetrics> raw;                                  // [m][s]
  std::vector<std::vector<std::array<double, 4>>> normalized;     // [m][s]
  std::vector<char> pruned;                                       // [s]
  std::vector<std::vector<char>> on_front;                        // [m][s]
  std::vector<std::vector<double>> distance;                      // [m][s]
  std::vector<double> r;                                          // [config]
  std::vector<std::size_t> ranking;  // config indices, best first
  ArchConfig c_star;
};

// r(c) = mean distance-to-front of c's surviving points over every model;
// a config with no survivors gets r = +inf and ranks last. Ties resolve by
// config enumeration order (OS < WS < IS, then smaller base).
void rank_configs(DseResult& result);

// Full pipeline: evaluate, normalize, prune, per-model fronts and
// distances, config ranking.
DseResult run_dse(const std::vector<workload::NetworkModel>& models,
                  const DesignSpace& space, const energy::TechParams& tech,
                  double alpha, unsigned jobs = 1);

}  // namespace arman::dse

#endif  // ARMAN_DSE_HPP
