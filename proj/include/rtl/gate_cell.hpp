#pragma once

#include <array>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rtl/analog.hpp"
#include "rtl/threshold.hpp"

namespace rtl {

// Multi-V_DD inverter chain: stage i compares against stage_thresholds[i]
// and swings between V_L and stage_vdds[i].
struct InverterChain {
  std::vector<double> stage_thresholds;
  std::vector<double> stage_vdds;
};

// Opamp comparator with reference v_ref, followed by inverter_stages
// full-rail inverters to fix the output parity.
struct OpampComparator {
  double v_ref = 0.0;
  double delta = 0.0;
  int inverter_stages = 0;
};

using ThresholdDevice = std::variant<InverterChain, OpampComparator>;

enum class DeviceKind { InverterChain, Opamp };

struct CellProfile {
  double v_high = 1.0;
  double v_low = 0.0;
  double r_input = 100e3;
  DeviceKind device = DeviceKind::InverterChain;
  // Opamp reference offset: delta = max(delta_frac * window width, delta_min).
  double delta_frac = 0.25;
  double delta_min = 1e-3;
  // Full inverter-chain rail ladder, as fractions of v_high; a cell with s
  // stages uses the last s rails so the final stage always restores the top
  // rail.
  std::array<double, 3> stage_rail_frac{0.25, 0.5, 1.0};
};

struct GateCellConfig {
  GateFn function = GateFn::Nand;
  int n = 2;
  DividerConfig divider;
  ThresholdDevice device;
  double effective_threshold = 0.0;
  bool odd_parity = false;  // inversions after the comparator
  double delay = 0.0;       // seconds
  ThresholdWindow window;
};

// Assembles a complete cell: chooses m via select_m, derives the feasible
// window, places the threshold (window midpoint for the inverter chain,
// boundary +/- delta for the opamp) and picks the stage count from the
// switch protocol: NAND 3, AND 2, NOR 1, OR 2, NOT 1.
// Throws std::runtime_error naming the window when it is infeasible.
GateCellConfig build_cell(GateFn fn, int n, const CellProfile& profile = {});

// Divider + strict-greater comparator + parity. Ties resolve low.
int evaluate(const GateCellConfig& cell, std::span<const int> inputs);

struct AnalogTrace {
  double v0 = 0.0;
  std::vector<double> stage_outputs;
};

// Intermediate divider voltage and each stage's rail-resolved output.
AnalogTrace analog_trace(const GateCellConfig& cell,
                         std::span<const int> inputs);

struct NoiseMargin {
  double nm_low = 0.0;   // threshold minus highest comparator-low V_0
  double nm_high = 0.0;  // lowest comparator-high V_0 minus threshold
};

NoiseMargin cell_noise_margin(const GateCellConfig& cell);

// Inverter stages implied by the switch protocol for a function.
int chain_stages(GateFn fn);

// key = value serialization, same flat format as device profiles.
std::string cell_to_profile_text(const GateCellConfig& cell);
GateCellConfig cell_from_profile_text(const std::string& text);

}  // namespace rtl
