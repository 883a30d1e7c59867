// SPDX-License-Identifier: Apache-2.0

#include "arman/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "arman/common.hpp"
#include "arman/parallel.hpp"

namespace arman::report {

namespace {

using ordered_json = nlohmann::ordered_json;
using u64 = std::uint64_t;

template <typename T>
std::vector<T> canonical_axis(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

ordered_json energy_json(const energy::EnergyReport& e) {
  return ordered_json{{"exec_time_s", e.exec_time_s},
                      {"energy_j", e.energy_j},
                      {"avg_power_w", e.avg_power_w},
                      {"edp_js", e.edp_js}};
}

}  // namespace

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SimulateReport simulate_report(const workload::NetworkModel& net,
                               timing::ArrayDims dims, timing::Dataflow flow,
                               const std::optional<energy::TechParams>& tech,
                               const std::string& manifest_name) {
  std::ostringstream csv;
  csv << "# manifest: " << manifest_name << "\n";
  csv << "layer,cycles,mac_ops,mapping_efficiency,compute_utilization,"
         "sram_reads,sram_writes\n";

  fabric::NetworkStats totals;
  totals.active_pes = dims.pe_count();
  for (const workload::LayerSpec& layer : net.layers) {
    const workload::GemmShape gemm = workload::layer_to_gemm(layer);
    const timing::LayerStats stats = timing::layer_stats(gemm, dims, flow);
    csv << layer.name << ',' << stats.cycles << ',' << stats.mac_ops << ','
        << fmt_double(stats.mapping_efficiency) << ','
        << fmt_double(stats.compute_utilization) << ',' << stats.sram_reads
        << ',' << stats.sram_writes << "\n";
    totals.total_cycles += stats.cycles;
    totals.total_macs += stats.mac_ops;
    totals.sram_reads += stats.sram_reads;
    totals.sram_writes += stats.sram_writes;
  }
  totals.sram_accesses = totals.sram_reads + totals.sram_writes;
  totals.utilization =
      totals.total_cycles == 0
          ? 0.0
          : static_cast<double>(totals.total_macs) /
                (static_cast<double>(totals.active_pes) *
                 static_cast<double>(totals.total_cycles));

  ordered_json summary;
  summary["manifest"] = manifest_name;
  summary["command"] = "simulate";
  summary["network"] = net.name;
  summary["workload_class"] = workload::to_string(net.workload_class);
  summary["rows"] = dims.rows;
  summary["cols"] = dims.cols;
  summary["dataflow"] = std::string(timing::to_string(flow));
  summary["totals"] = ordered_json{{"cycles", totals.total_cycles},
                                   {"mac_ops", totals.total_macs},
                                   {"sram_reads", totals.sram_reads},
                                   {"sram_writes", totals.sram_writes},
                                   {"utilization", totals.utilization}};
  if (tech) {
    summary["energy"] = energy_json(energy::energy_report(totals, *tech));
  }

  SimulateReport out;
  out.csv = csv.str();
  out.summary_json = summary.dump(2) + "\n";
  return out;
}

std::vector<SweepRow> run_sweep(const workload::NetworkModel& net,
                                const std::vector<u64>& bases,
                                const std::vector<timing::Dataflow>& flows,
                                const std::vector<fabric::Arrangement>& arrs,
                                const energy::TechParams& tech,
                                unsigned jobs) {
  const std::vector<u64> base_axis = canonical_axis(bases);
  const std::vector<timing::Dataflow> flow_axis = canonical_axis(flows);
  const std::vector<fabric::Arrangement> arr_axis = canonical_axis(arrs);

  std::vector<SweepRow> rows(base_axis.size() * flow_axis.size() *
                             arr_axis.size());
  parallel_for(rows.size(), jobs, [&](std::size_t slot) {
    const std::size_t per_base = flow_axis.size() * arr_axis.size();
    const u64 base = base_axis[slot / per_base];
    const timing::Dataflow flow = flow_axis[(slot % per_base) / arr_axis.size()];
    const fabric::Arrangement arr = arr_axis[slot % arr_axis.size()];
    const fabric::NetworkStats stats =
        fabric::simulate_network(net, arr, base, flow);
    SweepRow& row = rows[slot];
    row.base = base;
    row.flow = flow;
    row.arrangement = arr;
    row.cycles = stats.total_cycles;
    row.utilization = stats.utilization;
    row.sram_accesses = stats.sram_accesses;
    row.energy = energy::energy_report(stats, tech);
  });
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::string& manifest_name) {
  std::ostringstream csv;
  csv << "# manifest: " << manifest_name << "\n";
  csv << "base,dataflow,arrangement,cycles,utilization,sram_accesses,"
         "avg_power_w,energy_j,edp_js,exec_time_s\n";
  for (const SweepRow& row : rows) {
    csv << row.base << ',' << timing::to_string(row.flow) << ','
        << fabric::to_string(row.arrangement) << ',' << row.cycles << ','
        << fmt_double(row.utilization) << ',' << row.sram_accesses << ','
        << fmt_double(row.energy.avg_power_w) << ','
        << fmt_double(row.energy.energy_j) << ','
        << fmt_double(row.energy.edp_js) << ','
        << fmt_double(row.energy.exec_time_s) << "\n";
  }
  return csv.str();
}

std::string dse_csv(const dse::DseResult& result,
                    const std::string& manifest_name) {
  std::ostringstream csv;
  csv << "# manifest: " << manifest_name << "\n";
  csv << "model,dataflow,base,arrangement,cycles,avg_power_w,utilization,"
         "mem_accesses,norm_cycles,norm_avg_power,norm_utilization,"
         "norm_mem_accesses,pruned,on_front,distance\n";
  for (std::size_t m = 0; m < result.model_names.size(); ++m) {
    for (std::size_t s = 0; s < result.points.size(); ++s) {
      const dse::DesignPoint& pt = result.points[s];
      const dse::MetricsVector& raw = result.raw[m][s];
      const auto& norm = result.normalized[m][s];
      csv << result.model_names[m] << ','
          << timing::to_string(pt.config.flow) << ',' << pt.config.base << ','
          << fabric::to_string(pt.arrangement) << ',' << raw.cycles << ','
          << fmt_double(raw.avg_power) << ',' << fmt_double(raw.utilization)
          << ',' << raw.mem_accesses << ',' << fmt_double(norm[0]) << ','
          << fmt_double(norm[1]) << ',' << fmt_double(norm[2]) << ','
          << fmt_double(norm[3]) << ',' << int(result.pruned[s]) << ','
          << int(result.on_front[m][s]) << ',';
      if (!result.pruned[s]) csv << fmt_double(result.distance[m][s]);
      csv << "\n";
    }
  }
  return csv.str();
}

std::string dse_json(const dse::DseResult& result,
                     const std::string& manifest_name) {
  ordered_json j;
  j["manifest"] = manifest_name;
  j["command"] = "dse";
  j["alpha"] = result.alpha;
  j["models"] = result.model_names;
  ordered_json ranking = ordered_json::array();
  for (std::size_t c : result.ranking) {
    const dse::ArchConfig& cfg = result.configs[c];
    ranking.push_back(
        ordered_json{{"dataflow", std::string(timing::to_string(cfg.flow))},
                     {"base", cfg.base},
                     {"r", result.r[c]}});
  }
  j["ranking"] = std::move(ranking);
  j["c_star"] =
      ordered_json{{"dataflow", std::string(timing::to_string(result.c_star.flow))},
                   {"base", result.c_star.base}};
  return j.dump(2) + "\n";
}

std::string decision_json(const reconfig::ReconfigDecision& decision,
                          const std::string& network_name,
                          const std::string& manifest_name) {
  ordered_json j;
  j["manifest"] = manifest_name;
  j["command"] = "select";
  j["network"] = network_name;
  j["config"] =
      ordered_json{{"dataflow", std::string(timing::to_string(decision.config.flow))},
                   {"base", decision.config.base}};
  j["objective"] = std::string(reconfig::to_string(decision.objective));
  j["baseline"] = std::string(fabric::to_string(decision.baseline));
  j["chosen"] = std::string(fabric::to_string(decision.chosen));
  j["selectors"] = fabric::selector_config(decision.chosen).to_string();
  j["baseline_value"] = decision.baseline_value;
  j["chosen_value"] = decision.chosen_value;
  j["improvement"] = decision.improvement;
  ordered_json table = ordered_json::array();
  for (const reconfig::ArrangementMetrics& m : decision.table) {
    ordered_json row;
    row["arrangement"] = std::string(fabric::to_string(m.arrangement));
    row["cycles"] = m.cycles;
    row["utilization"] = m.utilization;
    row["sram_accesses"] = m.sram_accesses;
    row["energy"] = energy_json(m.energy);
    table.push_back(std::move(row));
  }
  j["arrangements"] = std::move(table);
  return j.dump(2) + "\n";
}

std::string manifest_json(
    const std::string& command, const std::string& generated_at,
    const std::vector<std::pair<std::string, std::string>>& inputs,
    const std::vector<std::pair<std::string, std::string>>& parameters,
    const std::vector<std::string>& outputs) {
  ordered_json j;
  j["tool"] = "arman";
  j["version"] = kVersion;
  j["command"] = command;
  j["generated_at"] = generated_at;
  ordered_json in = ordered_json::object();
  for (const auto& [key, value] : inputs) in[key] = value;
  j["inputs"] = std::move(in);
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : parameters) params[key] = value;
  j["parameters"] = std::move(params);
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

}  // namespace arman::report
