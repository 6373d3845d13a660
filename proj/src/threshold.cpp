#include "rtl/threshold.hpp"

#include <cmath>
#include <stdexcept>

#include "rtl/analog.hpp"

namespace rtl {

namespace {
constexpr double kBoltzmann = 1.380649e-23;        // J/K
constexpr double kElectronCharge = 1.602176634e-19;  // C

double checked_sqrt(double x, const char* term) {
  if (x < 0.0)
    throw std::domain_error(std::string("body_bias_vtn: negative radicand in ") +
                            term);
  return std::sqrt(x);
}
}  // namespace

double surface_potential(double n_a_cm3, double n_i_cm3, double temp_k) {
  if (!(n_a_cm3 > 0.0) || !(n_i_cm3 > 0.0) || !(temp_k > 0.0))
    throw std::domain_error("surface_potential: arguments must be positive");
  double thermal = kBoltzmann * temp_k / kElectronCharge;
  return 2.0 * thermal * std::log(n_a_cm3 / n_i_cm3);
}

double body_bias_vtn(double v_tn0, double phi_s, double v_bs, double v_bm,
                     double v_bx, double gamma1, double gamma2,
                     double c_narrow) {
  if (phi_s < 0.0)
    throw std::domain_error("body_bias_vtn: phi_s must be nonnegative");
  double sqrt_phi = checked_sqrt(phi_s, "phi_s");
  double sqrt_bs = checked_sqrt(phi_s - v_bs, "phi_s - v_bs");
  double sqrt_bm = checked_sqrt(phi_s - v_bm, "phi_s - v_bm");

  double k2 = 0.0;
  if (gamma1 != gamma2) {
    double sqrt_bx = checked_sqrt(phi_s - v_bx, "phi_s - v_bx");
    double den = 2.0 * sqrt_phi * (sqrt_bm - sqrt_phi) + v_bm;
    if (den == 0.0)
      throw std::domain_error("body_bias_vtn: K2 denominator vanishes");
    k2 = (gamma1 - gamma2) * (sqrt_bx - sqrt_phi) / den;
  }
  double k1 = gamma2 - 2.0 * k2 * sqrt_bm;
  return v_tn0 + k1 * (sqrt_bs - sqrt_phi) + c_narrow;
}

double body_bias_vtn(const MosfetBiasParams& p) {
  if (p.n_a < p.n_i)
    throw std::domain_error("body_bias_vtn: requires n_a >= n_i");
  double phi_s = surface_potential(p.n_a, p.n_i, p.temp);
  return body_bias_vtn(p.v_tn0, phi_s, p.v_bs, p.v_bm, p.v_bx, p.gamma1,
                       p.gamma2, p.c_narrow);
}

double inverter_threshold(const InverterParams& p) {
  if (!(p.v_dd > 0.0))
    throw std::domain_error("inverter_threshold: v_dd must be positive");
  if (!(p.mu_p_w_p > 0.0) || !(p.mu_n_w_n > 0.0))
    throw std::domain_error(
        "inverter_threshold: mobility-width products must be positive");
  double r = std::sqrt(p.mu_p_w_p / p.mu_n_w_n);
  return (p.v_tn + r * (p.v_dd - std::abs(p.v_tp))) / (1.0 + r);
}

double inverter_vtn_for_threshold(const InverterParams& p, double v_th) {
  if (!(p.mu_p_w_p > 0.0) || !(p.mu_n_w_n > 0.0))
    throw std::domain_error(
        "inverter_vtn_for_threshold: mobility-width products must be positive");
  double r = std::sqrt(p.mu_p_w_p / p.mu_n_w_n);
  return v_th * (1.0 + r) - r * (p.v_dd - std::abs(p.v_tp));
}

namespace {
DividerConfig window_config(int n, double m, double v_h, double v_l) {
  DividerConfig c;
  c.n = n;
  c.m = m;
  c.v_high = v_h;
  c.v_low = v_l;
  c.validate();
  return c;
}
}  // namespace

ThresholdWindow nor_window(int n, double m, double v_h, double v_l) {
  DividerConfig c = window_config(n, m, v_h, v_l);
  // N m V_L / (1 + N m)  <  V_th  <  (V_H + (N-1) V_L) m / (N m + 1),
  // evaluated as the divider outputs at 0 and 1 high inputs.
  return {divider_output_count(c, 0), divider_output_count(c, 1), GateFn::Nor};
}

ThresholdWindow nand_window(int n, double m, double v_h, double v_l) {
  DividerConfig c = window_config(n, m, v_h, v_l);
  // m (V_L + (N-1) V_H) / (N m + 1)  <  V_th  <  m N V_H / (N m + 1)
  return {divider_output_count(c, n - 1), divider_output_count(c, n),
          GateFn::Nand};
}

double select_m(int n) {
  if (n < 2) throw std::invalid_argument("select_m: requires n >= 2");
  if (n == 2) return 1.0;  // 1/(N-2) is singular; the two-input cell uses m=1
  return 1.0 / (static_cast<double>(n) - 2.0);
}

ThresholdWindow window_by_enumeration(int n, double m, double v_h, double v_l,
                                      GateFn fn) {
  if (n > 24)
    throw std::invalid_argument("window_by_enumeration: n > 24 not supported");
  DividerConfig c = window_config(n, m, v_h, v_l);
  if (fn == GateFn::Not && n != 1)
    throw std::invalid_argument("window_by_enumeration: NOT requires n = 1");

  // Output by high-input count; the divider voltage is permutation
  // invariant, so counts are the only cases. XOR additionally depends only
  // on count parity.
  auto output_for_count = [&](int k) -> bool {
    switch (fn) {
      case GateFn::And: return k == n;
      case GateFn::Nand: return k != n;
      case GateFn::Or: return k > 0;
      case GateFn::Nor: return k == 0;
      case GateFn::Not: return k == 0;
      case GateFn::Xor: return (k % 2) == 1;
    }
    return false;
  };

  bool odd = inverting_parity(fn);
  // The comparator asserts above the threshold; with odd parity the cell
  // output is the negation of the comparator.
  double max_low = -1e300, min_high = 1e300;
  for (int k = 0; k <= n; ++k) {
    double v0 = divider_output_count(c, k);
    bool comparator_high = output_for_count(k) != odd;
    if (comparator_high)
      min_high = std::min(min_high, v0);
    else
      max_low = std::max(max_low, v0);
  }
  if (max_low == -1e300 || min_high == 1e300) {
    // Constant function over counts; any threshold on the empty side works,
    // report the full attainable range.
    double lo = divider_output_count(c, 0);
    double hi = divider_output_count(c, n);
    return {lo, hi, fn};
  }
  return {max_low, min_high, fn};
}

std::vector<SweepRow> vtn_vth_sweep(int n_lo, int n_hi,
                                    const InverterParams& inverter_base,
                                    const MosfetBiasParams& bias_base) {
  if (n_lo < 3 || n_hi > 1000 || n_lo > n_hi)
    throw std::invalid_argument("vtn_vth_sweep: range must lie in [3, 1000]");
  double phi_s = surface_potential(bias_base.n_a, bias_base.n_i, bias_base.temp);

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<size_t>(n_hi - n_lo + 1));
  for (int n = n_lo; n <= n_hi; ++n) {
    SweepRow row;
    row.n = n;
    ThresholdWindow w =
        nand_window(n, select_m(n), inverter_base.v_dd, 0.0);
    // Minimum usable threshold: just inside the open lower bound.
    row.v_th = w.low + 0.05 * w.width();
    row.v_tn = inverter_vtn_for_threshold(inverter_base, row.v_th);

    // Substrate bias that produces this V_tn under the body-effect model:
    // invert V_tn = V_tn0 + K1 (sqrt(phi_s - V_bs) - sqrt(phi_s)) + C.
    double k2 = 0.0;
    double sqrt_phi = std::sqrt(phi_s);
    double sqrt_bm = std::sqrt(phi_s - bias_base.v_bm);
    if (bias_base.gamma1 != bias_base.gamma2) {
      double den = 2.0 * sqrt_phi * (sqrt_bm - sqrt_phi) + bias_base.v_bm;
      k2 = (bias_base.gamma1 - bias_base.gamma2) *
           (std::sqrt(phi_s - bias_base.v_bx) - sqrt_phi) / den;
    }
    double k1 = bias_base.gamma2 - 2.0 * k2 * sqrt_bm;
    double rhs =
        sqrt_phi + (row.v_tn - bias_base.v_tn0 - bias_base.c_narrow) / k1;
    row.realizable = w.feasible() && rhs >= 0.0 && row.v_tn > 0.0 &&
                     row.v_tn < inverter_base.v_dd;
    row.v_bs = row.realizable ? phi_s - rhs * rhs : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rtl
