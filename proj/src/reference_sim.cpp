// SPDX-License-Identifier: Apache-2.0
//
// Event-driven reference simulator for one GEMM on one systolic array.
// Operand values move through per-PE shift registers cycle by cycle; cycle
// counts come out of the state machine, not a formula, so this path is an
// independent check on the closed-form model.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arman/common.hpp"
#include "arman/systolic_timing.hpp"

namespace arman::timing {

namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;

using Matrix = std::vector<std::vector<i64>>;

Matrix make_matrix(u64 rows, u64 cols) {
  return Matrix(rows, std::vector<i64>(cols, 0));
}

// Deterministic operand values in [-8, 7].
struct OperandGen {
  u64 state;
  explicit OperandGen(u64 seed) : state(seed * 2654435761u + 1) {}
  i64 next() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<i64>((state >> 33) & 0xF) - 8;
  }
};

struct SimCounters {
  u64 cycles = 0;
  u64 macs = 0;
  u64 ifmap_reads = 0;
  u64 filter_reads = 0;
  u64 psum_reads = 0;
  u64 writes = 0;
  u64 assigned_pe_folds = 0;  // PEs that performed at least one MAC, summed per fold
};

struct DrainSlot {
  i64 value = 0;
  u64 src_row = 0;
  bool occupied = false;
};

// Output-stationary fold: rows cover m-range [m0, m0+r), cols cover
// n-range [n0, n0+c), full reduction k. Ifmap elements enter skewed from
// the left, filter elements from the top; each PE accumulates its dot
// product locally, then results drain column-serially out of the bottom
// edge. Returns the cycle count of the fold.
u64 run_output_stationary_fold(const Matrix& a, const Matrix& b, Matrix& out,
                               std::vector<std::vector<char>>& out_written,
                               u64 m0, u64 r, u64 n0, u64 c, u64 k,
                               SimCounters& cnt) {
  Matrix a_reg = make_matrix(r, c), b_reg = make_matrix(r, c);
  std::vector<std::vector<char>> a_ok(r, std::vector<char>(c, 0));
  std::vector<std::vector<char>> b_ok(r, std::vector<char>(c, 0));
  Matrix acc = make_matrix(r, c);
  std::vector<std::vector<u64>> mac_count(r, std::vector<u64>(c, 0));
  std::vector<std::vector<DrainSlot>> drain(r, std::vector<DrainSlot>(c));
  std::vector<char> unlocked(c, 0);
  std::vector<std::vector<char>> touched(r, std::vector<char>(c, 0));

  const u64 total_outputs = r * c;
  u64 emitted = 0;
  u64 cycle = 0;
  const u64 guard = 8 * (r + c + k) + 64;

  for (; emitted < total_outputs; ++cycle) {
    if (cycle > guard) {
      throw ConsistencyError("reference simulator: OS fold failed to drain");
    }

    // Drain decisions use end-of-previous-cycle state: a column opens the
    // cycle after its bottom PE latches its result, then emits one value
    // per cycle while the stack above shifts down.
    for (u64 j = 0; j < c; ++j) {
      if (!unlocked[j]) unlocked[j] = drain[r - 1][j].occupied;
    }
    for (u64 j = 0; j < c; ++j) {
      if (!unlocked[j] || !drain[r - 1][j].occupied) continue;
      const DrainSlot slot = drain[r - 1][j];
      const u64 gi = m0 + slot.src_row;
      const u64 gj = n0 + j;
      if (out_written[gi][gj]) {
        throw ConsistencyError("reference simulator: duplicate OS output");
      }
      out[gi][gj] = slot.value;
      out_written[gi][gj] = 1;
      ++cnt.writes;
      ++emitted;
      drain[r - 1][j].occupied = false;
      for (u64 i = r - 1; i-- > 0;) {
        if (drain[i][j].occupied) {
          drain[i + 1][j] = drain[i][j];
          drain[i][j].occupied = false;
        }
      }
    }

    // Ifmap values shift right; a fresh element enters each row port.
    for (u64 i = 0; i < r; ++i) {
      for (u64 j = c; j-- > 1;) {
        a_reg[i][j] = a_reg[i][j - 1];
        a_ok[i][j] = a_ok[i][j - 1];
      }
      const i64 t = static_cast<i64>(cycle) - static_cast<i64>(i);
      if (t >= 0 && t < static_cast<i64>(k)) {
        a_reg[i][0] = a[m0 + i][static_cast<u64>(t)];
        a_ok[i][0] = 1;
        ++cnt.ifmap_reads;
      } else {
        a_ok[i][0] = 0;
      }
    }
    // Filter values shift down.
    for (u64 j = 0; j < c; ++j) {
      for (u64 i = r; i-- > 1;) {
        b_reg[i][j] = b_reg[i - 1][j];
        b_ok[i][j] = b_ok[i - 1][j];
      }
      const i64 t = static_cast<i64>(cycle) - static_cast<i64>(j);
      if (t >= 0 && t < static_cast<i64>(k)) {
        b_reg[0][j] = b[static_cast<u64>(t)][n0 + j];
        b_ok[0][j] = 1;
        ++cnt.filter_reads;
      } else {
        b_ok[0][j] = 0;
      }
    }

    // MAC phase; a finished PE latches its result into the drain slot.
    for (u64 i = 0; i < r; ++i) {
      for (u64 j = 0; j < c; ++j) {
        if (!a_ok[i][j] || !b_ok[i][j]) continue;
        acc[i][j] += a_reg[i][j] * b_reg[i][j];
        ++cnt.macs;
        touched[i][j] = 1;
        if (++mac_count[i][j] == k) {
          drain[i][j] = DrainSlot{acc[i][j], i, true};
        }
      }
    }
  }

  for (u64 i = 0; i < r; ++i) {
    for (u64 j = 0; j < c; ++j) {
      cnt.assigned_pe_folds += touched[i][j] ? 1 : 0;
    }
  }
  return cycle;
}

// Stationary-operand fold shared by WS and IS. One operand tile (r x c) is
// preloaded down the columns over r cycles; the counterpart streams in
// skewed from the left while partial sums descend the columns and exit at
// the bottom edge on the cycle of their final accumulation.
//   stat_value(i, j)   — stationary operand for PE(i,j)
//   stream_value(i, s) — streamed operand entering row i at stream step s
//   emit(s, j, v)      — completed column sum for (stream step s, col j)
template <typename StatFn, typename StreamFn, typename EmitFn>
u64 run_stationary_fold(u64 r, u64 c, u64 stream_len, StatFn stat_value,
                        StreamFn stream_value, EmitFn emit,
                        SimCounters& cnt) {
  Matrix w_reg = make_matrix(r, c);
  for (u64 p = 0; p < r; ++p) {
    for (u64 j = 0; j < c; ++j) {
      for (u64 i = r; i-- > 1;) w_reg[i][j] = w_reg[i - 1][j];
      w_reg[0][j] = stat_value(r - 1 - p, j);
    }
  }
  u64 cycle = r;

  Matrix a_reg = make_matrix(r, c);
  std::vector<std::vector<char>> a_ok(r, std::vector<char>(c, 0));
  Matrix psum = make_matrix(r, c);
  std::vector<std::vector<char>> touched(r, std::vector<char>(c, 0));

  const u64 total_outputs = stream_len * c;
  u64 emitted = 0;
  const u64 guard = 8 * (r + c + stream_len) + 64;

  for (u64 step = 0; emitted < total_outputs; ++step, ++cycle) {
    if (step > guard) {
      throw ConsistencyError("reference simulator: stationary fold stalled");
    }

    for (u64 i = 0; i < r; ++i) {
      for (u64 j = c; j-- > 1;) {
        a_reg[i][j] = a_reg[i][j - 1];
        a_ok[i][j] = a_ok[i][j - 1];
      }
      const i64 s = static_cast<i64>(step) - static_cast<i64>(i);
      if (s >= 0 && s < static_cast<i64>(stream_len)) {
        a_reg[i][0] = stream_value(i, static_cast<u64>(s));
        a_ok[i][0] = 1;
      } else {
        a_ok[i][0] = 0;
      }
    }

    // Partial sums move down one row per cycle, picking up one product at
    // each PE in step with the skewed operand wavefront.
    Matrix next = make_matrix(r, c);
    for (u64 j = 0; j < c; ++j) {
      for (u64 i = r; i-- > 0;) {
        if (!a_ok[i][j]) continue;
        const i64 upstream = (i == 0) ? 0 : psum[i - 1][j];
        next[i][j] = upstream + a_reg[i][j] * w_reg[i][j];
        ++cnt.macs;
        touched[i][j] = 1;
      }
    }
    psum = std::move(next);

    for (u64 j = 0; j < c; ++j) {
      if (!a_ok[r - 1][j]) continue;
      const i64 s = static_cast<i64>(step) - static_cast<i64>(r - 1) -
                    static_cast<i64>(j);
      if (s < 0 || s >= static_cast<i64>(stream_len)) {
        throw ConsistencyError("reference simulator: misaligned wavefront");
      }
      emit(static_cast<u64>(s), j, psum[r - 1][j]);
      ++emitted;
    }
  }

  for (u64 i = 0; i < r; ++i) {
    for (u64 j = 0; j < c; ++j) {
      cnt.assigned_pe_folds += touched[i][j] ? 1 : 0;
    }
  }
  return cycle;
}

}  // namespace

LayerStats simulate_reference(const GemmShape& gemm, ArrayDims dims,
                              Dataflow flow) {
  if (dims.pe_count() > 4096) {
    throw std::invalid_argument(
        "simulate_reference: array limit is rows*cols <= 4096, got " +
        std::to_string(dims.pe_count()));
  }
  if (gemm.m > 64 || gemm.n > 64 || gemm.k > 64) {
    throw std::invalid_argument(
        "simulate_reference: GEMM dimensions must each be <= 64");
  }
  if (gemm.m < 1 || gemm.n < 1 || gemm.k < 1) {
    throw std::invalid_argument("simulate_reference: GEMM dimensions must be >= 1");
  }

  OperandGen gen(gemm.m * 73856093ull ^ gemm.n * 19349663ull ^
                 gemm.k * 83492791ull);
  Matrix a = make_matrix(gemm.m, gemm.k);
  Matrix b = make_matrix(gemm.k, gemm.n);
  for (auto& row : a) {
    for (auto& v : row) v = gen.next();
  }
  for (auto& row : b) {
    for (auto& v : row) v = gen.next();
  }

  Matrix expected = make_matrix(gemm.m, gemm.n);
  for (u64 i = 0; i < gemm.m; ++i) {
    for (u64 j = 0; j < gemm.n; ++j) {
      i64 dot = 0;
      for (u64 t = 0; t < gemm.k; ++t) dot += a[i][t] * b[t][j];
      expected[i][j] = dot;
    }
  }

  Matrix out = make_matrix(gemm.m, gemm.n);
  std::vector<std::vector<char>> out_written(gemm.m,
                                             std::vector<char>(gemm.n, 0));
  SimCounters cnt;
  u64 folds = 0;

  const u64 rows = dims.rows, cols = dims.cols;
  if (flow == Dataflow::OS) {
    for (u64 m0 = 0; m0 < gemm.m; m0 += rows) {
      const u64 r = std::min(rows, gemm.m - m0);
      for (u64 n0 = 0; n0 < gemm.n; n0 += cols) {
        const u64 c = std::min(cols, gemm.n - n0);
        cnt.cycles += run_output_stationary_fold(a, b, out, out_written, m0, r,
                                                 n0, c, gemm.k, cnt);
        ++folds;
      }
    }
  } else {
    const bool ws = flow == Dataflow::WS;
    const u64 col_extent = ws ? gemm.n : gemm.m;
    const u64 stream_len = ws ? gemm.m : gemm.n;
    for (u64 k0 = 0; k0 < gemm.k; k0 += rows) {
      const u64 r = std::min(rows, gemm.k - k0);
      const bool first_k_fold = k0 == 0;
      for (u64 c0 = 0; c0 < col_extent; c0 += cols) {
        const u64 c = std::min(cols, col_extent - c0);
        auto stat_value = [&](u64 i, u64 j) {
          if (ws) {
            ++cnt.filter_reads;
            return b[k0 + i][c0 + j];
          }
          ++cnt.ifmap_reads;
          return a[c0 + j][k0 + i];
        };
        auto stream_value = [&](u64 i, u64 s) {
          if (ws) {
            ++cnt.ifmap_reads;
            return a[s][k0 + i];
          }
          ++cnt.filter_reads;
          return b[k0 + i][s];
        };
        auto emit = [&](u64 s, u64 j, i64 v) {
          if (!first_k_fold) ++cnt.psum_reads;
          ++cnt.writes;
          if (ws) {
            out[s][c0 + j] += v;
          } else {
            out[c0 + j][s] += v;
          }
        };
        cnt.cycles +=
            run_stationary_fold(r, c, stream_len, stat_value, stream_value,
                                emit, cnt);
        ++folds;
      }
    }
  }

  if (out != expected) {
    throw ConsistencyError(
        "reference simulator: reconstructed output does not match the direct "
        "matrix product");
  }
  if (cnt.macs != gemm.mac_ops()) {
    throw ConsistencyError("reference simulator: MAC count mismatch");
  }

  LayerStats stats;
  stats.cycles = cnt.cycles;
  stats.mac_ops = cnt.macs;
  stats.sram_reads = cnt.ifmap_reads + cnt.filter_reads + cnt.psum_reads;
  stats.sram_writes = cnt.writes;
  stats.mapping_efficiency =
      static_cast<double>(cnt.assigned_pe_folds) /
      (static_cast<double>(dims.pe_count()) * static_cast<double>(folds));
  stats.compute_utilization =
      static_cast<double>(stats.mac_ops) /
      (static_cast<double>(dims.pe_count()) * static_cast<double>(stats.cycles));
  return stats;
}

}  // namespace arman::timing
