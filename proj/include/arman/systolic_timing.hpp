// SPDX-License-Identifier: Apache-2.0

#ifndef ARMAN_SYSTOLIC_TIMING_HPP
#define ARMAN_SYSTOLIC_TIMING_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "arman/workload.hpp"

namespace arman::timing {

using workload::GemmShape;

struct ArrayDims {
  std::uint64_t rows = 1;
  std::uint64_t cols = 1;

  std::uint64_t pe_count() const { return rows * cols; }
  bool operator==(const ArrayDims&) const = default;
};

enum class Dataflow { OS, WS, IS };

inline constexpr std::array<Dataflow, 3> kAllDataflows = {
    Dataflow::OS, Dataflow::WS, Dataflow::IS};

const char* to_string(Dataflow flow);
std::optional<Dataflow> dataflow_from_string(std::string_view name);

// One pass of the array over a tile of the GEMM. `reduction` is the
// temporal length of the fold: k for OS, the streamed m for WS, the
// streamed n for IS. tile_row/tile_col identify the fold's position on the
// two spatial axes (OS: m,n tiles; WS: k,n tiles; IS: k,m tiles).
struct Fold {
  std::uint64_t rows_used = 0;
  std::uint64_t cols_used = 0;
  std::uint64_t reduction = 0;
  std::uint64_t tile_row = 0;
  std::uint64_t tile_col = 0;
};

struct FoldPlan {
  ArrayDims dims;
  Dataflow flow = Dataflow::OS;
  GemmShape gemm;
  std::vector<Fold> folds;
};

struct LayerStats {
  std::uint64_t cycles = 0;
  std::uint64_t mac_ops = 0;
  double mapping_efficiency = 0.0;   // mean fraction of PEs assigned work per fold
  double compute_utilization = 0.0;  // mac_ops / (rows * cols * cycles)
  std::uint64_t sram_reads = 0;
  std::uint64_t sram_writes = 0;

  std::uint64_t sram_accesses() const { return sram_reads + sram_writes; }
};

// Tiles the GEMM onto the array for the given dataflow.
//   OS: m -> rows, n -> cols, each fold runs full k.
//   WS: k -> rows, n -> cols, each fold streams all m input rows.
//   IS: k -> rows, m -> cols, each fold streams all n filter columns.
// Edge folds carry the remainder sizes; folds exactly cover the mapped
// dimensions.
FoldPlan make_fold_plan(const GemmShape& gemm, ArrayDims dims, Dataflow flow);

// Closed-form cycle count: folds run back to back, each taking
// 2r + c + s - 2 cycles (r = rows_used, c = cols_used, s = reduction),
// covering skewed fill, compute, and drain.
std::uint64_t analytical_cycles(const FoldPlan& plan);

// Cycles, utilization and SRAM traffic for one GEMM on one array via the
// closed-form model. SRAM access counts per fold:
//   OS: r*k ifmap reads, c*k filter reads, r*c ofmap writes.
//   WS: r*c filter preload reads, m*r ifmap reads, m*c psum writes,
//       plus m*c psum read-backs for folds past the first along k.
//   IS: r*c ifmap preload reads, n*r filter reads, n*c psum writes,
//       plus n*c psum read-backs for folds past the first along k.
LayerStats layer_stats(const GemmShape& gemm, ArrayDims dims, Dataflow flow);

// Event-driven reference simulator: steps the PE grid cycle by cycle,
// moving real operand values through shift registers, and reduces the
// per-cycle activity trace to LayerStats. Every output element is checked
// against the direct dot product. Intended for desk-scale verification:
// refuses arrays above 4096 PEs or GEMM dimensions above 64.
LayerStats simulate_reference(const GemmShape& gemm, ArrayDims dims,
                              Dataflow flow);

}  // namespace arman::timing

#endif  // ARMAN_SYSTOLIC_TIMING_HPP
