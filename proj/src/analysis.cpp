#include "rtl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rtl {

namespace {

void check_spec(const PerturbationSpec& spec, int n) {
  if (!(spec.tolerance >= 0.0) || spec.tolerance >= 1.0)
    throw std::invalid_argument("perturbation: tolerance must be in [0, 1)");
  if (spec.trials < 1)
    throw std::invalid_argument("perturbation: trials must be >= 1");
  if (spec.count_perturbed > n)
    throw std::invalid_argument("perturbation: k exceeds fan-in");
}

double perturbed_output(const DividerConfig& c, std::span<const int> levels,
                        std::span<const double> resistances) {
  std::vector<double> volts(levels.size());
  for (size_t i = 0; i < levels.size(); ++i)
    volts[i] = levels[i] ? c.v_high : c.v_low;
  return divider_output_general(resistances, c.m * c.r_input, volts);
}

}  // namespace

SensitivityResult perturb_sensitivity(const DividerConfig& c,
                                      std::span<const int> levels,
                                      const PerturbationSpec& spec) {
  c.validate();
  check_spec(spec, c.n);
  if (static_cast<int>(levels.size()) != c.n)
    throw std::invalid_argument("perturb_sensitivity: levels length mismatch");
  int k = spec.count_perturbed > 0 ? spec.count_perturbed : c.n;

  double nominal = divider_output(c, levels);
  if (nominal == 0.0)
    throw std::invalid_argument(
        "perturb_sensitivity: nominal output is zero, relative change undefined");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> excursion(-spec.tolerance,
                                                   spec.tolerance);
  std::vector<int> index(static_cast<size_t>(c.n));
  std::iota(index.begin(), index.end(), 0);

  SensitivityResult result;
  result.samples.reserve(static_cast<size_t>(spec.trials));
  std::vector<double> resistances(static_cast<size_t>(c.n));
  double abs_sum = 0.0;
  for (int trial = 0; trial < spec.trials; ++trial) {
    std::fill(resistances.begin(), resistances.end(), c.r_input);
    std::shuffle(index.begin(), index.end(), rng);
    // One tolerance excursion shared by the k selected resistors: a common
    // process shift, which is the envelope case. Independent per-resistor
    // draws cancel as 1/sqrt(k) and never approach the corner.
    double factor = 1.0 + excursion(rng);
    for (int i = 0; i < k; ++i)
      resistances[static_cast<size_t>(index[static_cast<size_t>(i)])] =
          c.r_input * factor;
    double v0 = perturbed_output(c, levels, resistances);
    double pct = (v0 - nominal) / nominal * 100.0;
    result.samples.push_back(pct);
    abs_sum += std::abs(pct);
    result.max_pct_change = std::max(result.max_pct_change, std::abs(pct));
  }
  result.mean_pct_change = abs_sum / spec.trials;
  return result;
}

double analytic_worst_case_pct(const DividerConfig& c,
                               std::span<const int> levels, double tolerance) {
  c.validate();
  double nominal = divider_output(c, levels);
  if (nominal == 0.0)
    throw std::invalid_argument("analytic_worst_case_pct: nominal output is zero");
  double worst = 0.0;
  for (double factor : {1.0 - tolerance, 1.0 + tolerance}) {
    std::vector<double> resistances(levels.size(), c.r_input * factor);
    double v0 = perturbed_output(c, levels, resistances);
    worst = std::max(worst, std::abs(v0 - nominal) / nominal * 100.0);
  }
  return worst;
}

double logic_failure_rate(const GateCellConfig& cell,
                          const PerturbationSpec& spec) {
  const DividerConfig& c = cell.divider;
  check_spec(spec, c.n);
  int k = spec.count_perturbed > 0 ? spec.count_perturbed : c.n;

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> excursion(-spec.tolerance,
                                                   spec.tolerance);
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<int> index(static_cast<size_t>(c.n));
  std::iota(index.begin(), index.end(), 0);

  long failures = 0;
  std::vector<int> levels(static_cast<size_t>(c.n));
  std::vector<double> resistances(static_cast<size_t>(c.n));
  for (int trial = 0; trial < spec.trials; ++trial) {
    for (auto& b : levels) b = bit(rng);
    int expected = evaluate(cell, levels);

    std::fill(resistances.begin(), resistances.end(), c.r_input);
    std::shuffle(index.begin(), index.end(), rng);
    double factor = 1.0 + excursion(rng);
    for (int i = 0; i < k; ++i)
      resistances[static_cast<size_t>(index[static_cast<size_t>(i)])] =
          c.r_input * factor;

    double v0 = perturbed_output(c, levels, resistances);
    bool comparator = v0 > cell.effective_threshold;
    int actual = (cell.odd_parity ? !comparator : comparator) ? 1 : 0;
    if (actual != expected) ++failures;
  }
  return static_cast<double>(failures) / spec.trials;
}

double divider_conduction_power(const DividerConfig& c, int high_count) {
  double v0 = divider_output_count(c, high_count);
  double r0 = c.m * c.r_input;
  double k = static_cast<double>(high_count);
  double n = static_cast<double>(c.n);
  double p_in = k * (c.v_high - v0) * (c.v_high - v0) / c.r_input +
                (n - k) * (c.v_low - v0) * (c.v_low - v0) / c.r_input;
  return p_in + v0 * v0 / r0;
}

double power_estimate(const Netlist& n, const PowerModel& model,
                      const ActivityModel& activity) {
  double p = activity.p_high;
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("power_estimate: p_high must be in [0, 1]");

  double total = 0.0;
  for (const auto& g : n.gates) {
    int fan_in = g.fan_in();
    if (n.tech == Technology::Cmos) {
      int pairs = fan_in;
      if (g.kind == GateFn::And || g.kind == GateFn::Or) pairs += 1;
      total += model.inverter_leakage * pairs;
      continue;
    }
    DividerConfig c;
    c.n = fan_in;
    c.r_input = model.r_input;
    c.m = model.m;
    c.v_high = model.v_supply;
    c.v_low = 0.0;
    // expectation over the binomial high-input count
    if (p == 1.0) {
      total += divider_conduction_power(c, fan_in);
    } else if (p == 0.0) {
      total += divider_conduction_power(c, 0);
    } else {
      double expected = 0.0;
      double log_p = std::log(p), log_q = std::log1p(-p);
      for (int k = 0; k <= fan_in; ++k) {
        double log_w = std::lgamma(fan_in + 1.0) - std::lgamma(k + 1.0) -
                       std::lgamma(fan_in - k + 1.0) + k * log_p +
                       (fan_in - k) * log_q;
        expected += std::exp(log_w) * divider_conduction_power(c, k);
      }
      total += expected;
    }
    total += model.opamp_static;
  }
  return total;
}

namespace {

NetlistMetrics metrics_for(const Netlist& n, const AreaModel& area,
                           const PowerModel& power, const DelayModel& delays) {
  NetlistMetrics m;
  m.name = n.name;
  m.tech = n.tech;
  m.stats = component_stats(n, area);
  m.area_um2 = m.stats.area_um2;
  m.power_w = power_estimate(n, power);
  m.critical_delay_s = critical_path(n, delays).delay;
  return m;
}

}  // namespace

CompareReport compare_report(const Netlist& a, const Netlist& b,
                             const AreaModel& area, const PowerModel& power,
                             const DelayModel& delays) {
  a.validate();
  b.validate();
  CompareReport r;
  r.a = metrics_for(a, area, power, delays);
  r.b = metrics_for(b, area, power, delays);
  r.d_area_um2 = r.a.area_um2 - r.b.area_um2;
  r.d_power_w = r.a.power_w - r.b.power_w;
  r.d_delay_s = r.a.critical_delay_s - r.b.critical_delay_s;
  long ga = 0, gb = 0;
  for (const auto& [k, v] : r.a.stats.gate_count) ga += v;
  for (const auto& [k, v] : r.b.stats.gate_count) gb += v;
  r.d_gates = ga - gb;
  return r;
}

std::string report_text(const CompareReport& r) {
  std::ostringstream os;
  auto side = [&](const NetlistMetrics& m) {
    os << m.name << " (" << to_string(m.tech) << ")\n";
    os << stats_summary(m.stats);
    os << "power_w: " << m.power_w << "\n";
    os << "critical_delay_s: " << m.critical_delay_s << "\n\n";
  };
  os << "=== A ===\n";
  side(r.a);
  os << "=== B ===\n";
  side(r.b);
  os << "=== deltas (A - B) ===\n";
  os << "gates: " << r.d_gates << "\n";
  os << "area_um2: " << r.d_area_um2 << "\n";
  os << "power_w: " << r.d_power_w << "\n";
  os << "delay_s: " << r.d_delay_s << "\n";
  os << "smaller area: " << (r.d_area_um2 < 0 ? r.a.name : r.b.name) << " ("
     << (r.d_area_um2 < 0 ? to_string(r.a.tech) : to_string(r.b.tech)) << ")\n";
  // Divider-node margins stand in for transistor-level noise margins here;
  // the comparison covers counts, area, delay and power only.
  return os.str();
}

std::string report_csv(const CompareReport& r) {
  std::ostringstream os;
  os << "metric,a,b,delta\n";
  os.precision(12);
  os << "area_um2," << r.a.area_um2 << ',' << r.b.area_um2 << ','
     << r.d_area_um2 << "\n";
  os << "power_w," << r.a.power_w << ',' << r.b.power_w << ',' << r.d_power_w
     << "\n";
  os << "critical_delay_s," << r.a.critical_delay_s << ','
     << r.b.critical_delay_s << ',' << r.d_delay_s << "\n";
  os << "memristors," << r.a.stats.memristor_count << ','
     << r.b.stats.memristor_count << ','
     << r.a.stats.memristor_count - r.b.stats.memristor_count << "\n";
  os << "transistors," << r.a.stats.transistor_count << ','
     << r.b.stats.transistor_count << ','
     << r.a.stats.transistor_count - r.b.stats.transistor_count << "\n";
  return os.str();
}

std::string samples_csv(const SensitivityResult& r) {
  std::ostringstream os;
  os << "trial,delta_pct\n";
  os.precision(12);
  for (size_t i = 0; i < r.samples.size(); ++i)
    os << i << ',' << r.samples[i] << "\n";
  return os.str();
}

}  // namespace rtl
