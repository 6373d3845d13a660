#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rtl/analog.hpp"
#include "rtl/gate_cell.hpp"
#include "rtl/netlist.hpp"
#include "rtl/simulator.hpp"

namespace rtl {

struct PerturbationSpec {
  double tolerance = 0.10;   // fraction, resistors drawn in R*(1 +/- tol)
  int count_perturbed = 0;   // k <= n; 0 means all n
  int trials = 10000;
  uint64_t seed = 1;
};

struct SensitivityResult {
  double max_pct_change = 0.0;   // max |dV0/V0| * 100 over trials
  double mean_pct_change = 0.0;  // mean |dV0/V0| * 100
  std::vector<double> samples;   // signed per-trial percentage change
};

// Each trial draws one tolerance excursion, applies it to k randomly chosen
// input resistors and re-solves the divider with the general formula. The
// shared draw reproduces the near-worst-case envelope of a common process
// excursion; fully independent draws average out as 1/sqrt(k).
// Deterministic for a fixed seed.
SensitivityResult perturb_sensitivity(const DividerConfig& c,
                                      std::span<const int> levels,
                                      const PerturbationSpec& spec);

// Closed-form change with all selected resistors pinned at +/- tolerance;
// returns the worse corner as a positive percentage.
double analytic_worst_case_pct(const DividerConfig& c,
                               std::span<const int> levels, double tolerance);

// Fraction of (trial x input-vector) samples where the perturbed divider
// voltage crosses the cell threshold and flips the logical output.
double logic_failure_rate(const GateCellConfig& cell,
                          const PerturbationSpec& spec);

struct PowerModel {
  double v_supply = 1.0;          // volts
  double opamp_static = 1.55e-6;  // watts per opamp, calibrated to the
                                  // 10-input NOR reference row
  double inverter_leakage = 1e-12;  // watts per CMOS stage
  // Divider operating point for RTL conduction (the Table 1 reference
  // configuration).
  double r_input = 100e3;
  double m = 1.0;
};

// Independent probability that any given input is high.
struct ActivityModel {
  double p_high = 1.0;
};

// RTL: expected divider conduction power per gate plus one opamp_static per
// gate. CMOS: inverter_leakage per transistor pair.
double power_estimate(const Netlist& n, const PowerModel& model = {},
                      const ActivityModel& activity = {});

// Conduction power of a single divider at a fixed high-input count
// (sum (V_i - V_0) I_i + V_0^2 / R_0).
double divider_conduction_power(const DividerConfig& c, int high_count);

struct NetlistMetrics {
  std::string name;
  Technology tech = Technology::Rtl;
  ComponentStats stats;
  double area_um2 = 0.0;
  double power_w = 0.0;
  double critical_delay_s = 0.0;
};

struct CompareReport {
  NetlistMetrics a, b;
  // a minus b
  double d_area_um2 = 0.0;
  double d_power_w = 0.0;
  double d_delay_s = 0.0;
  long d_gates = 0;
};

CompareReport compare_report(const Netlist& a, const Netlist& b,
                             const AreaModel& area = {},
                             const PowerModel& power = {},
                             const DelayModel& delays = {});

std::string report_text(const CompareReport& r);
std::string report_csv(const CompareReport& r);
std::string samples_csv(const SensitivityResult& r);  // trial,delta_pct

}  // namespace rtl
