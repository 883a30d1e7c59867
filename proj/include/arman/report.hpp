// SPDX-License-Identifier: Apache-2.0
#ifndef ARMAN_REPORT_HPP
#define ARMAN_REPORT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arman/arrangement.hpp"
#include "arman/dse.hpp"
#include "arman/energy.hpp"
#include "arman/reconfig.hpp"
#include "arman/systolic_timing.hpp"
#include "arman/workload.hpp"

// Deterministic report assembly: canonical row ordering, %.17g doubles,
// and a manifest reference in every artifact, so identical inputs always
// produce byte-identical files.
namespace arman::report {

std::string fmt_double(double v);

struct SimulateReport {
  std::string csv;
  std::string summary_json;
};

SimulateReport simulate_report(const workload::NetworkModel& net,
                               timing::ArrayDims dims, timing::Dataflow flow,
                               const std::optional<energy::TechParams>& tech,
                               const std::string& manifest_name);

struct SweepRow {
  std::uint64_t base = 0;
  timing::Dataflow flow = timing::Dataflow::OS;
  fabric::Arrangement arrangement = fabric::Arrangement::a1x1;
  std::uint64_t cycles = 0;
  double utilization = 0.0;
  std::uint64_t sram_accesses = 0;
  energy::EnergyReport energy;
};

// Axes are deduped into canonical order (base ascending, dataflow
// OS<WS<IS, arrangement declaration order); evaluation may fan out over
// jobs, results land in preassigned slots.
std::vector<SweepRow> run_sweep(const workload::NetworkModel& net,
                                const std::vector<std::uint64_t>& bases,
                                const std::vector<timing::Dataflow>& flows,
                                const std::vector<fabric::Arrangement>& arrs,
                                const energy::TechParams& tech,
                                unsigned jobs = 1);

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::string& manifest_name);

std::string dse_csv(const dse::DseResult& result,
                    const std::string& manifest_name);
std::string dse_json(const dse::DseResult& result,
                     const std::string& manifest_name);

std::string decision_json(const reconfig::ReconfigDecision& decision,
                          const std::string& network_name,
                          const std::string& manifest_name);

// generated_at is the caller's timestamp string; passing "fixed" keeps
// reruns byte-identical.
std::string manifest_json(
    const std::string& command, const std::string& generated_at,
    const std::vector<std::pair<std::string, std::string>>& inputs,
    const std::vector<std::pair<std::string, std::string>>& parameters,
    const std::vector<std::string>& outputs);

}  // namespace arman::report

#endif  // ARMAN_REPORT_HPP
