#include "rtl/analog.hpp"

#include <stdexcept>
#include <string>

namespace rtl {

double memristance(const MemristorParams& p) {
  if (!(p.r_on > 0.0) || !(p.r_on <= p.r_off))
    throw std::domain_error("memristance: requires 0 < r_on <= r_off");
  if (!(p.w_frac >= 0.0) || !(p.w_frac <= 1.0))
    throw std::domain_error("memristance: w_frac outside [0, 1]");
  return p.w_frac * p.r_on + (1.0 - p.w_frac) * p.r_off;
}

void DividerConfig::validate() const {
  if (n < 1) throw std::invalid_argument("DividerConfig: n must be >= 1");
  if (!(r_input > 0.0))
    throw std::invalid_argument("DividerConfig: r_input must be positive");
  if (!(m > 0.0)) throw std::invalid_argument("DividerConfig: m must be positive");
  if (!(v_low < v_high))
    throw std::invalid_argument("DividerConfig: requires v_low < v_high");
}

double divider_output_general(std::span<const double> resistances, double r0,
                              std::span<const double> voltages) {
  if (resistances.empty())
    throw std::invalid_argument("divider_output_general: empty resistor list");
  if (resistances.size() != voltages.size())
    throw std::invalid_argument(
        "divider_output_general: resistance/voltage length mismatch");
  if (!(r0 > 0.0))
    throw std::domain_error("divider_output_general: r0 must be positive");
  double num = 0.0;
  double den = 1.0 / r0;
  for (size_t i = 0; i < resistances.size(); ++i) {
    if (!(resistances[i] > 0.0))
      throw std::domain_error("divider_output_general: resistance " +
                              std::to_string(i) + " must be positive");
    num += voltages[i] / resistances[i];
    den += 1.0 / resistances[i];
  }
  return num / den;
}

double divider_output_count(const DividerConfig& c, int high_count) {
  c.validate();
  if (high_count < 0 || high_count > c.n)
    throw std::invalid_argument("divider_output_count: high_count out of range");
  double k = static_cast<double>(high_count);
  double n = static_cast<double>(c.n);
  return (k * c.v_high + (n - k) * c.v_low) / (1.0 / c.m + n);
}

static int count_high(const DividerConfig& c, std::span<const int> levels) {
  if (static_cast<int>(levels.size()) != c.n)
    throw std::invalid_argument("divider: levels length does not match fan-in");
  int k = 0;
  for (int b : levels) k += b ? 1 : 0;
  return k;
}

double divider_output(const DividerConfig& c, std::span<const int> levels) {
  c.validate();
  return divider_output_count(c, count_high(c, levels));
}

DividerSolution branch_currents(const DividerConfig& c,
                                std::span<const int> levels,
                                bool ideal_blocking) {
  c.validate();
  count_high(c, levels);

  DividerSolution sol;
  sol.branch_currents.resize(levels.size());
  sol.blocked.assign(levels.size(), false);

  double r0 = c.m * c.r_input;
  if (!ideal_blocking) {
    sol.v_out = divider_output(c, levels);
    for (size_t i = 0; i < levels.size(); ++i) {
      double v = levels[i] ? c.v_high : c.v_low;
      sol.branch_currents[i] = (v - sol.v_out) / c.r_input;
      sol.blocked[i] = sol.branch_currents[i] < 0.0;
    }
    sol.total_current = sol.v_out / r0;
    return sol;
  }

  // Fixed point: open every reverse-biased branch and re-solve. Removing a
  // branch that pulls the node down only raises V_0, so the open set grows
  // monotonically and the loop terminates within n iterations.
  std::vector<bool> open(levels.size(), false);
  double v0 = 0.0;
  for (;;) {
    double num = 0.0;
    double den = 1.0 / r0;
    for (size_t i = 0; i < levels.size(); ++i) {
      if (open[i]) continue;
      num += (levels[i] ? c.v_high : c.v_low) / c.r_input;
      den += 1.0 / c.r_input;
    }
    v0 = num / den;
    bool changed = false;
    for (size_t i = 0; i < levels.size(); ++i) {
      double v = levels[i] ? c.v_high : c.v_low;
      if (!open[i] && v < v0) {
        open[i] = true;
        changed = true;
      }
    }
    if (!changed) break;
  }
  sol.v_out = v0;
  for (size_t i = 0; i < levels.size(); ++i) {
    double v = levels[i] ? c.v_high : c.v_low;
    sol.blocked[i] = open[i];
    sol.branch_currents[i] = open[i] ? 0.0 : (v - v0) / c.r_input;
  }
  sol.total_current = v0 / r0;
  return sol;
}

double semiconductor_resistance(double rho, double length, double x_j,
                                double width) {
  if (!(rho > 0.0) || !(length > 0.0) || !(x_j > 0.0) || !(width > 0.0))
    throw std::domain_error(
        "semiconductor_resistance: all geometry parameters must be positive");
  return rho * length / (x_j * width);
}

}  // namespace rtl
