// SPDX-License-Identifier: Apache-2.0

#include "arman/systolic_timing.hpp"

namespace arman::timing {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
  return (a + b - 1) / b;
}

void check_gemm(const GemmShape& gemm) {
  if (gemm.m < 1 || gemm.n < 1 || gemm.k < 1) {
    throw ConsistencyError("GEMM dimensions must all be >= 1");
  }
}

}  // namespace

const char* to_string(Dataflow flow) {
  switch (flow) {
    case Dataflow::OS: return "OS";
    case Dataflow::WS: return "WS";
    case Dataflow::IS: return "IS";
  }
  return "unknown";
}

std::optional<Dataflow> dataflow_from_string(std::string_view name) {
  if (name == "OS" || name == "os") return Dataflow::OS;
  if (name == "WS" || name == "ws") return Dataflow::WS;
  if (name == "IS" || name == "is") return Dataflow::IS;
  return std::nullopt;
}

FoldPlan make_fold_plan(const GemmShape& gemm, ArrayDims dims, Dataflow flow) {
  check_gemm(gemm);
  if (dims.rows < 1 || dims.cols < 1) {
    throw ConsistencyError("array dimensions must be >= 1");
  }

  // Spatial extents mapped onto rows/cols and the temporal length per fold.
  std::uint64_t row_extent = 0, col_extent = 0, stream = 0;
  switch (flow) {
    case Dataflow::OS:
      row_extent = gemm.m;
      col_extent = gemm.n;
      stream = gemm.k;
      break;
    case Dataflow::WS:
      row_extent = gemm.k;
      col_extent = gemm.n;
      stream = gemm.m;
      break;
    case Dataflow::IS:
      row_extent = gemm.k;
      col_extent = gemm.m;
      stream = gemm.n;
      break;
  }

  FoldPlan plan;
  plan.dims = dims;
  plan.flow = flow;
  plan.gemm = gemm;
  const std::uint64_t row_tiles = ceil_div(row_extent, dims.rows);
  const std::uint64_t col_tiles = ceil_div(col_extent, dims.cols);
  plan.folds.reserve(row_tiles * col_tiles);
  for (std::uint64_t tr = 0; tr < row_tiles; ++tr) {
    const std::uint64_t r =
        std::min(dims.rows, row_extent - tr * dims.rows);
    for (std::uint64_t tc = 0; tc < col_tiles; ++tc) {
      const std::uint64_t c =
          std::min(dims.cols, col_extent - tc * dims.cols);
      plan.folds.push_back(Fold{r, c, stream, tr, tc});
    }
  }
  return plan;
}

std::uint64_t analytical_cycles(const FoldPlan& plan) {
  std::uint64_t cycles = 0;
  for (const Fold& f : plan.folds) {
    cycles += 2 * f.rows_used + f.cols_used + f.reduction - 2;
  }
  return cycles;
}

LayerStats layer_stats(const GemmShape& gemm, ArrayDims dims, Dataflow flow) {
  const FoldPlan plan = make_fold_plan(gemm, dims, flow);

  LayerStats stats;
  stats.cycles = analytical_cycles(plan);
  stats.mac_ops = gemm.mac_ops();

  std::uint64_t assigned_pe_folds = 0;
  for (const Fold& f : plan.folds) {
    assigned_pe_folds += f.rows_used * f.cols_used;
    switch (flow) {
      case Dataflow::OS:
        stats.sram_reads += f.rows_used * f.reduction;  // ifmap stream
        stats.sram_reads += f.cols_used * f.reduction;  // filter stream
        stats.sram_writes += f.rows_used * f.cols_used;
        break;
      case Dataflow::WS:
        stats.sram_reads += f.rows_used * f.cols_used;  // filter preload
        stats.sram_reads += f.reduction * f.rows_used;  // ifmap stream
        stats.sram_writes += f.reduction * f.cols_used;
        if (f.tile_row > 0) {
          stats.sram_reads += f.reduction * f.cols_used;  // psum read-back
        }
        break;
      case Dataflow::IS:
        stats.sram_reads += f.rows_used * f.cols_used;  // ifmap preload
        stats.sram_reads += f.reduction * f.rows_used;  // filter stream
        stats.sram_writes += f.reduction * f.cols_used;
        if (f.tile_row > 0) {
          stats.sram_reads += f.reduction * f.cols_used;  // psum read-back
        }
        break;
    }
  }

  const double pe_fold_slots =
      static_cast<double>(dims.pe_count()) *
      static_cast<double>(plan.folds.size());
  stats.mapping_efficiency = static_cast<double>(assigned_pe_folds) / pe_fold_slots;
  stats.compute_utilization =
      static_cast<double>(stats.mac_ops) /
      (static_cast<double>(dims.pe_count()) * static_cast<double>(stats.cycles));
  return stats;
}

}  // namespace arman::timing
