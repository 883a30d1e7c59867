// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "doctest.h"

#include "arman/common.hpp"
#include "arman/energy.hpp"

using namespace arman;
using energy::EnergyReport;
using energy::TechParams;

namespace {

fabric::NetworkStats stats_of(std::uint64_t cycles, std::uint64_t macs,
                              std::uint64_t reads, std::uint64_t writes,
                              std::uint64_t pes) {
  fabric::NetworkStats s;
  s.total_cycles = cycles;
  s.total_macs = macs;
  s.sram_reads = reads;
  s.sram_writes = writes;
  s.sram_accesses = reads + writes;
  s.active_pes = pes;
  return s;
}

const std::string kFullTech =
    "clock_hz = 8e8\n"
    "e_mac = 1e-12\n"
    "e_sram_read = 2e-12\n"
    "e_sram_write = 3e-12\n"
    "p_static_pe = 1e-6\n";

}  // namespace

TEST_CASE("tech file parses keys, comments, and whitespace") {
  const TechParams tech = energy::parse_tech_params(
      "# calibration\n"
      "clock_hz = 800000000  # 800 MHz\n"
      "\n"
      "  e_mac=0.25e-12\n"
      "e_sram_read = 5e-12\n"
      "e_sram_write = 5.5e-12\n"
      "p_static_pe = 2e-6\n",
      "inline");
  CHECK(tech.clock_hz == 800000000.0);
  CHECK(tech.e_mac == 0.25e-12);
  CHECK(tech.e_sram_read == 5e-12);
  CHECK(tech.e_sram_write == 5.5e-12);
  CHECK(tech.p_static_pe == 2e-6);
}

TEST_CASE("tech file errors: missing, unknown, duplicate, non-positive") {
  try {
    energy::parse_tech_params(
        "clock_hz = 8e8\n"
        "e_sram_read = 2e-12\n"
        "e_sram_write = 3e-12\n"
        "p_static_pe = 1e-6\n",
        "t");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("tech param e_mac missing") !=
          std::string::npos);
  }

  CHECK_THROWS_AS(energy::parse_tech_params(kFullTech + "foo = 1\n", "t"),
                  ParseError);
  CHECK_THROWS_AS(energy::parse_tech_params(kFullTech + "e_mac = 2e-12\n", "t"),
                  ParseError);
  CHECK_THROWS_AS(
      energy::parse_tech_params(
          "clock_hz = 8e8\ne_mac = -1e-12\ne_sram_read = 2e-12\n"
          "e_sram_write = 3e-12\np_static_pe = 1e-6\n",
          "t"),
      ParseError);
  CHECK_THROWS_AS(
      energy::parse_tech_params(
          "clock_hz = 8e8\ne_mac = banana\ne_sram_read = 2e-12\n"
          "e_sram_write = 3e-12\np_static_pe = 1e-6\n",
          "t"),
      ParseError);
  CHECK_THROWS_AS(energy::load_tech_params("/nonexistent/x.tech"), IoError);
}

TEST_CASE("bundled default tech file loads") {
  const TechParams tech =
      energy::load_tech_params(std::string(ARMAN_DATA_DIR) +
                               "/tech/default.tech");
  CHECK(tech.clock_hz > 0.0);
  CHECK(tech.e_mac > 0.0);
  CHECK(tech.p_static_pe > 0.0);
}

TEST_CASE("static-only report: one cycle of idle leakage") {
  const TechParams tech = energy::parse_tech_params(kFullTech, "t");
  const EnergyReport rep =
      energy::energy_report(stats_of(1, 0, 0, 0, 100), tech);
  const double t = 1.0 / 8e8;
  CHECK(rep.exec_time_s == doctest::Approx(t).epsilon(1e-15));
  CHECK(rep.energy_j == doctest::Approx(1e-6 * 100 * t).epsilon(1e-12));
  CHECK(rep.avg_power_w == doctest::Approx(1e-6 * 100).epsilon(1e-12));
  CHECK(rep.edp_js == doctest::Approx(rep.energy_j * t).epsilon(1e-12));
}

TEST_CASE("dynamic terms add up coefficient by coefficient") {
  TechParams tech = energy::parse_tech_params(kFullTech, "t");
  tech.p_static_pe = 1e-30;  // negligible
  const EnergyReport rep =
      energy::energy_report(stats_of(10, 1000, 100, 10, 64), tech);
  // 1000 MACs * 1 pJ + 100 reads * 2 pJ + 10 writes * 3 pJ = 1.23 nJ.
  CHECK(rep.energy_j == doctest::Approx(1.23e-9).epsilon(1e-9));
  CHECK(rep.exec_time_s == doctest::Approx(10.0 / 8e8).epsilon(1e-15));
  CHECK(rep.avg_power_w ==
        doctest::Approx(rep.energy_j / rep.exec_time_s).epsilon(1e-12));
  CHECK(rep.edp_js ==
        doctest::Approx(rep.energy_j * rep.exec_time_s).epsilon(1e-12));
}

TEST_CASE("doubling every coefficient doubles energy and power") {
  const TechParams tech = energy::parse_tech_params(kFullTech, "t");
  TechParams doubled = tech;
  doubled.e_mac *= 2;
  doubled.e_sram_read *= 2;
  doubled.e_sram_write *= 2;
  doubled.p_static_pe *= 2;
  const fabric::NetworkStats s = stats_of(500, 4000, 300, 200, 256);
  const EnergyReport a = energy::energy_report(s, tech);
  const EnergyReport b = energy::energy_report(s, doubled);
  CHECK(b.energy_j == doctest::Approx(2 * a.energy_j).epsilon(1e-12));
  CHECK(b.avg_power_w == doctest::Approx(2 * a.avg_power_w).epsilon(1e-12));
  CHECK(b.edp_js == doctest::Approx(2 * a.edp_js).epsilon(1e-12));
  CHECK(b.exec_time_s == a.exec_time_s);
}

TEST_CASE("gating a tile cuts the static share") {
  const TechParams tech = energy::parse_tech_params(kFullTech, "t");
  // Same work and cycles, 3 active tiles instead of 4.
  const EnergyReport four =
      energy::energy_report(stats_of(1000, 0, 0, 0, 4 * 16), tech);
  const EnergyReport three =
      energy::energy_report(stats_of(1000, 0, 0, 0, 3 * 16), tech);
  CHECK(three.energy_j < four.energy_j);
  CHECK(three.energy_j == doctest::Approx(0.75 * four.energy_j).epsilon(1e-12));
}

TEST_CASE("zero cycles with pending MACs is inconsistent") {
  const TechParams tech = energy::parse_tech_params(kFullTech, "t");
  CHECK_THROWS_AS(energy::energy_report(stats_of(0, 5, 0, 0, 4), tech),
                  ConsistencyError);
  // A genuinely empty run is fine and reports all zeros.
  const EnergyReport rep = energy::energy_report(stats_of(0, 0, 0, 0, 4), tech);
  CHECK(rep.energy_j == 0.0);
  CHECK(rep.avg_power_w == 0.0);
  CHECK(rep.edp_js == 0.0);
}
