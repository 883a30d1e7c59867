// SPDX-License-Identifier: Apache-2.0

#ifndef ARMAN_WORKLOAD_HPP
#define ARMAN_WORKLOAD_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "arman/common.hpp"

namespace arman::workload {

// One convolutional or fully-connected layer. Fully-connected layers are
// encoded as 1x1 ifmap / 1x1 filter with channels = inputs and
// num_filters = outputs. Ifmap dimensions must be pre-padded; there is no
// implicit padding.
struct LayerSpec {
  std::string name;
  std::uint64_t ifmap_h = 1;
  std::uint64_t ifmap_w = 1;
  std::uint64_t filter_h = 1;
  std::uint64_t filter_w = 1;
  std::uint64_t channels = 1;
  std::uint64_t num_filters = 1;
  std::uint64_t stride = 1;

  bool operator==(const LayerSpec&) const = default;
};

// The lowered M x K by K x N matrix multiply of one layer:
// m = output pixels per filter, n = filters, k = receptive field * channels.
struct GemmShape {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;

  std::uint64_t mac_ops() const { return m * n * k; }
  bool operator==(const GemmShape&) const = default;
};

enum class WorkloadClass { light, medium, heavy, very_heavy };

const char* to_string(WorkloadClass c);

struct NetworkModel {
  std::string name;
  std::vector<LayerSpec> layers;
  WorkloadClass workload_class = WorkloadClass::light;

  bool operator==(const NetworkModel&) const = default;
};

// Buckets a network by its total MAC count. The tag is descriptive metadata
// only; no downstream computation depends on it.
WorkloadClass classify_workload(std::uint64_t total_macs);

// Lowers one layer to its GEMM shape. Throws ParseError if the filter does
// not fit inside the ifmap.
GemmShape layer_to_gemm(const LayerSpec& layer);

std::uint64_t total_mac_ops(const NetworkModel& net);

// Reads a topology CSV: header row, then one layer per row with columns
//   Layer name, IFMAP Height, IFMAP Width, Filter Height, Filter Width,
//   Channels, Num Filter, Strides
// A trailing empty column per row is tolerated. Non-compute rows (pooling,
// activation, batch-norm) are rejected. Throws IoError / ParseError.
NetworkModel parse_topology_csv(const std::filesystem::path& path);

// Parses topology rows from an in-memory string; `name` becomes the model
// name. Same contract as parse_topology_csv.
NetworkModel parse_topology(const std::string& text, const std::string& name);

// Canonical CSV serialization; parse_topology(to_topology_csv(m)) == m.
std::string to_topology_csv(const NetworkModel& net);

}  // namespace arman::workload

#endif  // ARMAN_WORKLOAD_HPP
