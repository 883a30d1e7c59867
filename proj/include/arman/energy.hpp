// SPDX-License-Identifier: Apache-2.0
#ifndef ARMAN_ENERGY_HPP
#define ARMAN_ENERGY_HPP

#include <string>
#include <string_view>

#include "arman/arrangement.hpp"

namespace arman::energy {

// Technology calibration constants. The shipped defaults are placeholders
// documented in data/tech/default.tech; every value must be > 0.
struct TechParams {
  double clock_hz = 0.0;       // Hz
  double e_mac = 0.0;          // J per 8-bit MAC
  double e_sram_read = 0.0;    // J per SRAM read
  double e_sram_write = 0.0;   // J per SRAM write
  double p_static_pe = 0.0;    // W per active PE
};

struct EnergyReport {
  double exec_time_s = 0.0;
  double energy_j = 0.0;
  double avg_power_w = 0.0;
  double edp_js = 0.0;
};

// Parses `key=value` lines; `#` starts a comment, blank lines are skipped.
// Unknown keys and missing keys are errors, as are non-positive values.
TechParams parse_tech_params(std::string_view text, std::string_view origin);
TechParams load_tech_params(const std::string& path);

// energy = e_mac*MACs + e_sram_read*reads + e_sram_write*writes
//        + p_static_pe*active_pes*exec_time, with exec_time = cycles/clock.
EnergyReport energy_report(const fabric::NetworkStats& stats,
                           const TechParams& tech);

}  // namespace arman::energy

#endif  // ARMAN_ENERGY_HPP
