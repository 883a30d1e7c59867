// SPDX-License-Identifier: Apache-2.0

#include "arman/energy.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "arman/common.hpp"

namespace arman::energy {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_positive(std::string_view key, std::string_view value,
                      std::string_view origin) {
  double out = 0.0;
  const std::string buf(value);
  std::size_t consumed = 0;
  try {
    out = std::stod(buf, &consumed);
  } catch (const std::exception&) {
    throw ParseError(std::string(origin) + ": tech param " + std::string(key) +
                     " is not a number: '" + buf + "'");
  }
  if (consumed != buf.size()) {
    throw ParseError(std::string(origin) + ": tech param " + std::string(key) +
                     " has trailing characters: '" + buf + "'");
  }
  if (!(out > 0.0)) {
    throw ParseError(std::string(origin) + ": tech param " + std::string(key) +
                     " must be > 0, got " + buf);
  }
  return out;
}

}  // namespace

TechParams parse_tech_params(std::string_view text, std::string_view origin) {
  std::map<std::string, double, std::less<>> values;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(std::string(origin) + ":" + std::to_string(lineno) +
                       ": expected key=value, got '" + std::string(body) + "'");
    }
    const std::string key{trim(body.substr(0, eq))};
    const std::string_view value = trim(body.substr(eq + 1));
    if (key != "clock_hz" && key != "e_mac" && key != "e_sram_read" &&
        key != "e_sram_write" && key != "p_static_pe") {
      throw ParseError(std::string(origin) + ":" + std::to_string(lineno) +
                       ": unknown tech param '" + key + "'");
    }
    if (values.count(key)) {
      throw ParseError(std::string(origin) + ":" + std::to_string(lineno) +
                       ": duplicate tech param '" + key + "'");
    }
    values[key] = parse_positive(key, value, origin);
  }

  for (const char* key :
       {"clock_hz", "e_mac", "e_sram_read", "e_sram_write", "p_static_pe"}) {
    if (!values.count(key)) {
      throw ParseError(std::string(origin) + ": tech param " +
                       std::string(key) + " missing");
    }
  }

  TechParams t;
  t.clock_hz = values["clock_hz"];
  t.e_mac = values["e_mac"];
  t.e_sram_read = values["e_sram_read"];
  t.e_sram_write = values["e_sram_write"];
  t.p_static_pe = values["p_static_pe"];
  return t;
}

TechParams load_tech_params(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open tech param file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tech_params(buf.str(), path);
}

EnergyReport energy_report(const fabric::NetworkStats& stats,
                           const TechParams& tech) {
  if (stats.total_cycles == 0 && stats.total_macs != 0) {
    throw ConsistencyError(
        "energy_report: zero cycles with nonzero MAC count");
  }
  EnergyReport r;
  r.exec_time_s = static_cast<double>(stats.total_cycles) / tech.clock_hz;
  const double dynamic = tech.e_mac * static_cast<double>(stats.total_macs) +
                         tech.e_sram_read * static_cast<double>(stats.sram_reads) +
                         tech.e_sram_write * static_cast<double>(stats.sram_writes);
  const double stat =
      tech.p_static_pe * static_cast<double>(stats.active_pes) * r.exec_time_s;
  r.energy_j = dynamic + stat;
  r.avg_power_w = r.exec_time_s > 0.0 ? r.energy_j / r.exec_time_s : 0.0;
  r.edp_js = r.energy_j * r.exec_time_s;
  return r;
}

}  // namespace arman::energy
