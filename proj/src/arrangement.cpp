// SPDX-License-Identifier: Apache-2.0

#include "arman/arrangement.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "arman/common.hpp"

namespace arman::fabric {

namespace {

using u64 = std::uint64_t;

// Balanced split of extent into parts: the first extent % parts entries get
// one extra element; entries past the extent come out zero.
std::vector<u64> balanced_split(u64 extent, u64 parts) {
  std::vector<u64> sizes(parts, extent / parts);
  const u64 rem = extent % parts;
  for (u64 i = 0; i < rem; ++i) ++sizes[i];
  return sizes;
}

SelectorVector selectors_from_row(std::string_view row) {
  SelectorVector v;
  for (std::size_t i = 0; i < v.groups.size(); ++i) {
    switch (row[i]) {
      case '0': v.groups[i] = Selector::off; break;
      case '1': v.groups[i] = Selector::on; break;
      default: v.groups[i] = Selector::dont_care; break;
    }
  }
  return v;
}

}  // namespace

std::string_view to_string(Arrangement arr) {
  switch (arr) {
    case Arrangement::a1x1: return "1x1";
    case Arrangement::a2x2: return "2x2";
    case Arrangement::a4x1: return "4x1";
    case Arrangement::a1x4: return "1x4";
    case Arrangement::a3x1: return "3x1";
    case Arrangement::a1x3: return "1x3";
    case Arrangement::a2x1H: return "2x1H";
    case Arrangement::a2x1V: return "2x1V";
    case Arrangement::a1x2H: return "1x2H";
    case Arrangement::a1x2V: return "1x2V";
  }
  return "?";
}

Arrangement arrangement_from_string(std::string_view name) {
  for (Arrangement arr : kAllArrangements) {
    if (name == to_string(arr)) return arr;
  }
  std::string valid;
  for (Arrangement arr : kAllArrangements) {
    if (!valid.empty()) valid += ", ";
    valid += to_string(arr);
  }
  throw ParseError("unknown arrangement '" + std::string(name) +
                   "'; valid names: " + valid);
}

PartitionPlan partition_geometry(Arrangement arr, u64 base) {
  if (base < 1) throw std::invalid_argument("base PE count must be >= 1");
  PartitionPlan plan;
  plan.arrangement = arr;
  plan.base = base;
  const u64 b = base;

  auto add = [&](u64 count, u64 rows, u64 cols) {
    for (u64 i = 0; i < count; ++i) {
      plan.partitions.push_back({timing::ArrayDims{rows, cols}, {}});
    }
  };

  switch (arr) {
    case Arrangement::a1x1:
      add(1, 2 * b, 2 * b);
      plan.active_tiles = 4;
      plan.m_splits = 1;
      plan.n_splits = 1;
      break;
    case Arrangement::a2x2:
      add(4, b, b);
      plan.active_tiles = 4;
      plan.m_splits = 2;
      plan.n_splits = 2;
      break;
    case Arrangement::a4x1:
      add(4, b, b);
      plan.active_tiles = 4;
      plan.m_splits = 4;
      plan.n_splits = 1;
      break;
    case Arrangement::a1x4:
      add(4, b, b);
      plan.active_tiles = 4;
      plan.m_splits = 1;
      plan.n_splits = 4;
      break;
    case Arrangement::a3x1:
      add(3, b, b);
      plan.active_tiles = 3;
      plan.m_splits = 3;
      plan.n_splits = 1;
      break;
    case Arrangement::a1x3:
      add(3, b, b);
      plan.active_tiles = 3;
      plan.m_splits = 1;
      plan.n_splits = 3;
      break;
    case Arrangement::a2x1H:
      add(2, b, 2 * b);
      plan.active_tiles = 4;
      plan.m_splits = 2;
      plan.n_splits = 1;
      break;
    case Arrangement::a2x1V:
      add(2, 2 * b, b);
      plan.active_tiles = 4;
      plan.m_splits = 2;
      plan.n_splits = 1;
      break;
    case Arrangement::a1x2H:
      add(2, b, 2 * b);
      plan.active_tiles = 4;
      plan.m_splits = 1;
      plan.n_splits = 2;
      break;
    case Arrangement::a1x2V:
      add(2, 2 * b, b);
      plan.active_tiles = 4;
      plan.m_splits = 1;
      plan.n_splits = 2;
      break;
  }
  return plan;
}

PartitionPlan split_gemm(const workload::GemmShape& gemm, PartitionPlan plan) {
  const std::vector<u64> m_parts = balanced_split(gemm.m, plan.m_splits);
  const std::vector<u64> n_parts = balanced_split(gemm.n, plan.n_splits);
  for (u64 mi = 0; mi < plan.m_splits; ++mi) {
    for (u64 ni = 0; ni < plan.n_splits; ++ni) {
      const u64 p = mi * plan.n_splits + ni;
      plan.partitions[p].sub_gemm =
          workload::GemmShape{m_parts[mi], n_parts[ni], gemm.k};
    }
  }
  return plan;
}

NetworkStats simulate_network(const workload::NetworkModel& net,
                              Arrangement arr, u64 base,
                              timing::Dataflow flow) {
  const PartitionPlan skeleton = partition_geometry(arr, base);
  NetworkStats stats;
  stats.active_pes = skeleton.active_pes();
  stats.per_layer.reserve(net.layers.size());

  for (const auto& layer : net.layers) {
    const workload::GemmShape gemm = workload::layer_to_gemm(layer);
    const PartitionPlan plan = split_gemm(gemm, skeleton);

    timing::LayerStats agg;
    u64 assigned_slots = 0;
    u64 total_slots = 0;
    for (const Partition& part : plan.partitions) {
      if (!part.busy()) continue;
      const timing::LayerStats ps =
          timing::layer_stats(part.sub_gemm, part.dims, flow);
      agg.cycles = std::max(agg.cycles, ps.cycles);
      agg.mac_ops += ps.mac_ops;
      agg.sram_reads += ps.sram_reads;
      agg.sram_writes += ps.sram_writes;
      const auto fold_plan = timing::make_fold_plan(part.sub_gemm, part.dims, flow);
      for (const timing::Fold& f : fold_plan.folds) {
        assigned_slots += f.rows_used * f.cols_used;
      }
      total_slots += part.dims.pe_count() * fold_plan.folds.size();
    }
    agg.mapping_efficiency =
        total_slots == 0 ? 0.0
                         : static_cast<double>(assigned_slots) /
                               static_cast<double>(total_slots);
    agg.compute_utilization =
        agg.cycles == 0 ? 0.0
                        : static_cast<double>(agg.mac_ops) /
                              (static_cast<double>(stats.active_pes) *
                               static_cast<double>(agg.cycles));

    stats.total_cycles += agg.cycles;
    stats.total_macs += agg.mac_ops;
    stats.sram_reads += agg.sram_reads;
    stats.sram_writes += agg.sram_writes;
    stats.per_layer.push_back(agg);
  }

  stats.sram_accesses = stats.sram_reads + stats.sram_writes;
  stats.utilization =
      stats.total_cycles == 0
          ? 0.0
          : static_cast<double>(stats.total_macs) /
                (static_cast<double>(stats.active_pes) *
                 static_cast<double>(stats.total_cycles));
  return stats;
}

std::string SelectorVector::to_string() const {
  std::string s;
  s.reserve(groups.size());
  for (Selector g : groups) {
    s += g == Selector::off ? '0' : g == Selector::on ? '1' : '-';
  }
  return s;
}

SelectorVector selector_config(Arrangement arr) {
  switch (arr) {
    case Arrangement::a2x2: return selectors_from_row("1111111111");
    case Arrangement::a1x4: return selectors_from_row("1011011111");
    case Arrangement::a4x1: return selectors_from_row("0111101111");
    case Arrangement::a1x3: return selectors_from_row("10110---11");
    case Arrangement::a3x1: return selectors_from_row("---1101111");
    case Arrangement::a1x2H:
    case Arrangement::a1x2V: return selectors_from_row("1011010110");
    case Arrangement::a2x1H:
    case Arrangement::a2x1V: return selectors_from_row("0100101001");
    case Arrangement::a1x1: return selectors_from_row("0000000000");
  }
  throw std::logic_error("unreachable arrangement");
}

}  // namespace arman::fabric
