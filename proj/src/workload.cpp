// SPDX-License-Identifier: Apache-2.0

#include "arman/workload.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace arman::workload {

namespace {

constexpr std::array<const char*, 7> kFieldNames = {
    "ifmap_h", "ifmap_w", "filter_h", "filter_w",
    "channels", "num_filters", "stride"};

// Substrings that mark a row as a non-compute layer. Such rows are rejected
// rather than skipped so that cycle accounting stays honest.
constexpr std::array<const char*, 8> kNonComputeMarkers = {
    "pool", "relu", "batchnorm", "bn_", "softmax", "activation", "lrn",
    "dropout"};

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  return cells;
}

bool looks_non_compute(const std::string& name) {
  const std::string lower = lowercase(name);
  for (const char* marker : kNonComputeMarkers) {
    if (lower.find(marker) != std::string::npos) return true;
  }
  return false;
}

std::uint64_t parse_dimension(const std::string& cell, std::size_t row,
                              const char* field) {
  const std::string value = trim(cell);
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    throw ParseError("row " + std::to_string(row) + ": " + field +
                     " is not a positive integer: '" + value + "'");
  }
  std::uint64_t parsed = 0;
  try {
    parsed = std::stoull(value);
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ": " + field +
                     " out of range: '" + value + "'");
  }
  if (parsed < 1) {
    throw ParseError("row " + std::to_string(row) + ": " + field +
                     " must be >= 1");
  }
  return parsed;
}

}  // namespace

const char* to_string(WorkloadClass c) {
  switch (c) {
    case WorkloadClass::light: return "light";
    case WorkloadClass::medium: return "medium";
    case WorkloadClass::heavy: return "heavy";
    case WorkloadClass::very_heavy: return "very_heavy";
  }
  return "unknown";
}

WorkloadClass classify_workload(std::uint64_t total_macs) {
  if (total_macs < 200'000'000ull) return WorkloadClass::light;
  if (total_macs < 1'000'000'000ull) return WorkloadClass::medium;
  if (total_macs < 5'000'000'000ull) return WorkloadClass::heavy;
  return WorkloadClass::very_heavy;
}

GemmShape layer_to_gemm(const LayerSpec& layer) {
  if (layer.filter_h > layer.ifmap_h || layer.filter_w > layer.ifmap_w) {
    throw ParseError("layer '" + layer.name +
                     "': filter does not fit inside ifmap");
  }
  const std::uint64_t ofmap_h =
      (layer.ifmap_h - layer.filter_h) / layer.stride + 1;
  const std::uint64_t ofmap_w =
      (layer.ifmap_w - layer.filter_w) / layer.stride + 1;
  GemmShape gemm;
  gemm.m = ofmap_h * ofmap_w;
  gemm.n = layer.num_filters;
  gemm.k = layer.filter_h * layer.filter_w * layer.channels;
  return gemm;
}

std::uint64_t total_mac_ops(const NetworkModel& net) {
  std::uint64_t total = 0;
  for (const auto& layer : net.layers) total += layer_to_gemm(layer).mac_ops();
  return total;
}

NetworkModel parse_topology(const std::string& text, const std::string& name) {
  NetworkModel net;
  net.name = name;

  std::stringstream ss(text);
  std::string line;
  bool header_seen = false;
  std::size_t data_row = 0;
  while (std::getline(ss, line)) {
    if (trim(line).empty()) continue;
    if (!header_seen) {
      header_seen = true;  // first non-empty line is the header
      continue;
    }
    ++data_row;
    std::vector<std::string> cells = split_csv_row(line);
    // A trailing comma yields a final empty cell; drop it.
    if (!cells.empty() && cells.back().empty()) cells.pop_back();
    if (cells.size() != 8) {
      throw ParseError("row " + std::to_string(data_row) + ": expected 8 columns, got " +
                       std::to_string(cells.size()));
    }
    LayerSpec layer;
    layer.name = cells[0];
    if (layer.name.empty()) {
      throw ParseError("row " + std::to_string(data_row) + ": empty layer name");
    }
    if (looks_non_compute(layer.name)) {
      throw ParseError("row " + std::to_string(data_row) + ": non-compute layer '" +
                       layer.name + "' is not supported");
    }
    std::uint64_t* fields[7] = {&layer.ifmap_h,  &layer.ifmap_w,
                                &layer.filter_h, &layer.filter_w,
                                &layer.channels, &layer.num_filters,
                                &layer.stride};
    for (std::size_t i = 0; i < 7; ++i) {
      *fields[i] = parse_dimension(cells[i + 1], data_row, kFieldNames[i]);
    }
    if (layer.filter_h > layer.ifmap_h) {
      throw ParseError("row " + std::to_string(data_row) +
                       ": filter_h exceeds ifmap_h");
    }
    if (layer.filter_w > layer.ifmap_w) {
      throw ParseError("row " + std::to_string(data_row) +
                       ": filter_w exceeds ifmap_w");
    }
    net.layers.push_back(std::move(layer));
  }
  if (!header_seen) throw ParseError("empty topology file");
  if (net.layers.empty()) throw ParseError("no layers in topology");
  net.workload_class = classify_workload(total_mac_ops(net));
  return net;
}

NetworkModel parse_topology_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open topology file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_topology(buffer.str(), path.stem().string());
}

std::string to_topology_csv(const NetworkModel& net) {
  std::string out =
      "Layer name, IFMAP Height, IFMAP Width, Filter Height, Filter Width, "
      "Channels, Num Filter, Strides\n";
  for (const auto& l : net.layers) {
    out += l.name + ", " + std::to_string(l.ifmap_h) + ", " +
           std::to_string(l.ifmap_w) + ", " + std::to_string(l.filter_h) +
           ", " + std::to_string(l.filter_w) + ", " +
           std::to_string(l.channels) + ", " + std::to_string(l.num_filters) +
           ", " + std::to_string(l.stride) + "\n";
  }
  return out;
}

}  // namespace arman::workload
