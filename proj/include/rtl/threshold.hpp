#pragma once

#include <vector>

#include "rtl/logic.hpp"

namespace rtl {

// Open interval of comparator thresholds that realizes `function` at the
// given fan-in. Infeasible windows (low >= high) are reported as-is, never
// clamped; a threshold equal to a bound counts as infeasible.
struct ThresholdWindow {
  double low = 0.0;
  double high = 0.0;
  GateFn function = GateFn::Nand;

  bool feasible() const { return low < high; }
  double midpoint() const { return 0.5 * (low + high); }
  double width() const { return high - low; }
};

// phi_s = 2 (k_B T / q) ln(N_a / n_i). Throws std::domain_error on
// nonpositive arguments.
double surface_potential(double n_a_cm3, double n_i_cm3, double temp_k);

struct MosfetBiasParams {
  double v_tn0 = 0.4;     // zero-bias threshold, volts
  double v_bs = 0.0;      // substrate bias, volts
  double v_bm = -3.0;     // maximum substrate bias, volts
  double v_bx = -0.2;     // volts
  double n_a = 1e17;      // substrate doping, cm^-3
  double n_i = 1.45e10;   // intrinsic carrier density, cm^-3
  double temp = 300.0;    // kelvin
  double gamma1 = 0.5;    // V^(1/2)
  double gamma2 = 0.3;    // V^(1/2)
  double c_narrow = 0.0;  // narrow-channel term, volts
};

// Body-effect NMOS threshold
//   V_tn = V_tn0 + K1 (sqrt(phi_s - V_bs) - sqrt(phi_s)) + C
// with K1 = gamma2 - 2 K2 sqrt(phi_s - V_bm) and the nonuniform-doping K2
// correction. This overload takes phi_s directly.
double body_bias_vtn(double v_tn0, double phi_s, double v_bs, double v_bm,
                     double v_bx, double gamma1, double gamma2,
                     double c_narrow);
double body_bias_vtn(const MosfetBiasParams& p);

struct InverterParams {
  double v_tn = 0.4;       // volts
  double v_tp = -0.4;      // volts, negative
  double mu_p_w_p = 1.0;   // mobility*width, PMOS
  double mu_n_w_n = 1.0;   // mobility*width, NMOS
  double v_dd = 1.0;       // volts
};

// CMOS inverter switching threshold
//   V_th = (V_tn + r (V_DD - |V_tp|)) / (1 + r),  r = sqrt(muP*Wp / muN*Wn).
double inverter_threshold(const InverterParams& p);

// Algebraic inverse: the V_tn that would place the switching threshold at
// v_th, all other device parameters fixed.
double inverter_vtn_for_threshold(const InverterParams& p, double v_th);

// Closed-form windows. Bounds are the divider outputs at the boundary
// high-input counts ({0,1} for NOR, {n-1,n} for NAND) so they agree
// bit-for-bit with window_by_enumeration.
ThresholdWindow nor_window(int n, double m, double v_h, double v_l);
ThresholdWindow nand_window(int n, double m, double v_h, double v_l);

// m = 1/(N-2) for n >= 3 (places the NAND lower bound at (V_H+V_L)/2 when
// V_L = 0); n = 2 uses m = 1, the two-input working configuration.
double select_m(int n);

// Independent oracle: evaluates the divider at every high-input count,
// partitions counts by the desired gate output and returns the separating
// interval. Non-separable functions (XOR at n >= 2) come back infeasible.
// Guarded to n <= 24.
ThresholdWindow window_by_enumeration(int n, double m, double v_h, double v_l,
                                      GateFn fn);

struct SweepRow {
  int n = 0;
  double v_th = 0.0;   // inverter threshold placed just above the NAND lower bound
  double v_tn = 0.0;   // NMOS threshold achieving it
  double v_bs = 0.0;   // substrate bias achieving v_tn under the bias model
  bool realizable = false;
};

// NAND realizability sweep over fan-in: for each n, the minimum usable
// inverter threshold (just inside the window), the V_tn it requires, and the
// substrate bias that produces that V_tn.
std::vector<SweepRow> vtn_vth_sweep(int n_lo, int n_hi,
                                    const InverterParams& inverter_base,
                                    const MosfetBiasParams& bias_base);

}  // namespace rtl
