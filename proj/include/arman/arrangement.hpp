// SPDX-License-Identifier: Apache-2.0
#ifndef ARMAN_ARRANGEMENT_HPP
#define ARMAN_ARRANGEMENT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "arman/systolic_timing.hpp"
#include "arman/workload.hpp"

namespace arman::fabric {

// Ten ways of grouping the four base tiles into logical arrays. Declaration
// order is the deterministic tie-break order everywhere a tie can occur.
enum class Arrangement {
  a1x1,
  a2x2,
  a4x1,
  a1x4,
  a3x1,
  a1x3,
  a2x1H,
  a2x1V,
  a1x2H,
  a1x2V,
};

inline constexpr std::array<Arrangement, 10> kAllArrangements = {
    Arrangement::a1x1,  Arrangement::a2x2,  Arrangement::a4x1,
    Arrangement::a1x4,  Arrangement::a3x1,  Arrangement::a1x3,
    Arrangement::a2x1H, Arrangement::a2x1V, Arrangement::a1x2H,
    Arrangement::a1x2V,
};

std::string_view to_string(Arrangement arr);
Arrangement arrangement_from_string(std::string_view name);

enum class SplitAxis { none, m, n, grid };

struct Partition {
  timing::ArrayDims dims;
  workload::GemmShape sub_gemm;

  bool busy() const { return sub_gemm.mac_ops() > 0; }
};

// Grid rows split the output-row (M) axis, grid cols split the filter (N)
// axis. Partitions are ordered row-major over the m_splits x n_splits grid.
struct PartitionPlan {
  Arrangement arrangement = Arrangement::a1x1;
  std::uint64_t base = 0;
  std::vector<Partition> partitions;
  std::uint32_t active_tiles = 0;
  std::uint64_t m_splits = 1;
  std::uint64_t n_splits = 1;

  SplitAxis split_axis() const {
    if (m_splits > 1 && n_splits > 1) return SplitAxis::grid;
    if (m_splits > 1) return SplitAxis::m;
    if (n_splits > 1) return SplitAxis::n;
    return SplitAxis::none;
  }
  std::uint64_t active_pes() const { return active_tiles * base * base; }
};

struct NetworkStats {
  std::uint64_t total_cycles = 0;
  std::vector<timing::LayerStats> per_layer;
  double utilization = 0.0;
  std::uint64_t sram_accesses = 0;
  std::uint64_t active_pes = 0;
  std::uint64_t total_macs = 0;
  std::uint64_t sram_reads = 0;
  std::uint64_t sram_writes = 0;
};

enum class Selector : std::uint8_t { off, on, dont_care };

struct SelectorVector {
  std::array<Selector, 10> groups{};

  // Renders as a 10-character string over {0, 1, -}.
  std::string to_string() const;
  bool operator==(const SelectorVector&) const = default;
};

// Geometry skeleton for an arrangement: partition dims, tile count, and the
// split grid; sub-GEMMs are left empty until split_gemm fills them.
PartitionPlan partition_geometry(Arrangement arr, std::uint64_t base);

// Splits a GEMM across the plan's grid: balanced along each split axis
// (part sizes differ by at most one), reduction dim copied to every part.
// A degenerate split leaves some partitions with zero-size sub-GEMMs; those
// sit out the layer.
PartitionPlan split_gemm(const workload::GemmShape& gemm, PartitionPlan plan);

// Runs every layer of the network across the arrangement's partitions:
// each busy partition times its sub-GEMM on its own array dims, a layer
// takes as long as its slowest partition, layers run back to back.
NetworkStats simulate_network(const workload::NetworkModel& net,
                              Arrangement arr, std::uint64_t base,
                              timing::Dataflow flow);

// Mux/demux selector settings for the ten arrangements; merged-pair
// variants share their base row.
SelectorVector selector_config(Arrangement arr);

}  // namespace arman::fabric

#endif  // ARMAN_ARRANGEMENT_HPP
