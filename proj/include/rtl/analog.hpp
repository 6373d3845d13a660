#pragma once

#include <span>
#include <vector>

namespace rtl {

// HP-style memristor used as a nonvolatile resistor. The internal state is
// the doped-width fraction W/D; there are no drift dynamics here, the device
// holds whatever state it was programmed to.
struct MemristorParams {
  double r_on = 1e3;     // ohms, fully doped
  double r_off = 100e3;  // ohms, fully undoped
  double w_frac = 0.0;   // W/D in [0, 1]
};

// Effective resistance (W/D)*R_ON + (1 - W/D)*R_OFF.
// Throws std::domain_error when the parameters are out of range.
double memristance(const MemristorParams& p);

// N equal input resistors feeding a summing node, with reference resistor
// R_0 = m * R_i to ground.
struct DividerConfig {
  int n = 2;              // fan-in
  double r_input = 100e3; // ohms per input branch
  double m = 1.0;         // R_0 / R_i
  double v_high = 1.0;    // volts, logic 1
  double v_low = 0.0;     // volts, logic 0

  void validate() const;  // throws std::invalid_argument
};

struct DividerSolution {
  double v_out = 0.0;
  // Current into each input resistor, positive from input toward the node.
  std::vector<double> branch_currents;
  // Marks branches that are reverse biased (the memristor would block them).
  std::vector<bool> blocked;
  double total_current = 0.0;  // equals the current through R_0
};

// General nodal solution V_0 = (sum V_i/R_i) / (1/R_0 + sum 1/R_i).
// Throws std::invalid_argument on empty/mismatched lists and
// std::domain_error on nonpositive resistances.
double divider_output_general(std::span<const double> resistances, double r0,
                              std::span<const double> voltages);

// Equal-resistor simplification (k*V_H + (n-k)*V_L) / (1/m + n).
double divider_output(const DividerConfig& c, std::span<const int> levels);

// Same, parameterized directly by the number of high inputs. The output
// depends only on this count, so closed-form window bounds and the
// enumeration oracle share this exact evaluation path.
double divider_output_count(const DividerConfig& c, int high_count);

// Per-branch currents and the Kirchhoff total. With ideal_blocking the
// reverse-biased branches are opened (current 0) and the node voltage is
// re-solved over the remaining branches; without it all branches are plain
// ohmic and reverse ones simply carry negative current.
DividerSolution branch_currents(const DividerConfig& c,
                                std::span<const int> levels,
                                bool ideal_blocking = false);

// Sheet-geometry resistance rho*L / (x_j * W), a convenience for choosing
// r_input from semiconductor resistor dimensions.
double semiconductor_resistance(double rho, double length, double x_j,
                                double width);

}  // namespace rtl
