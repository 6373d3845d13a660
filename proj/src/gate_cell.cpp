#include "rtl/gate_cell.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rtl {

int chain_stages(GateFn fn) {
  switch (fn) {
    case GateFn::Nand: return 3;
    case GateFn::And: return 2;
    case GateFn::Nor: return 1;
    case GateFn::Or: return 2;
    case GateFn::Not: return 1;
    default:
      throw std::invalid_argument("chain_stages: not a cell function");
  }
}

namespace {

// RTL transport delays; NOR/OR cells are the slower family.
double cell_delay(GateFn fn) {
  return (fn == GateFn::Nor || fn == GateFn::Or) ? 0.60e-6 : 0.45e-6;
}

ThresholdWindow cell_window(GateFn fn, int n, double m, double v_h,
                            double v_l) {
  switch (fn) {
    case GateFn::Nand:
    case GateFn::And:
      return nand_window(n, m, v_h, v_l);
    case GateFn::Nor:
    case GateFn::Or:
      return nor_window(n, m, v_h, v_l);
    case GateFn::Not:
      return nor_window(1, m, v_h, v_l);
    default:
      throw std::invalid_argument("build_cell: not a threshold-realizable function");
  }
}

bool detects_all_high(GateFn fn) {
  return fn == GateFn::Nand || fn == GateFn::And;
}

}  // namespace

GateCellConfig build_cell(GateFn fn, int n, const CellProfile& profile) {
  if (n < 1) throw std::invalid_argument("build_cell: n must be >= 1");
  if (fn == GateFn::Not && n != 1)
    throw std::invalid_argument("build_cell: NOT requires n = 1");

  GateCellConfig cell;
  cell.function = fn;
  cell.n = n;
  cell.divider.n = n;
  cell.divider.r_input = profile.r_input;
  cell.divider.m = n >= 2 ? select_m(n) : 1.0;
  cell.divider.v_high = profile.v_high;
  cell.divider.v_low = profile.v_low;
  cell.odd_parity = inverting_parity(fn);
  cell.delay = cell_delay(fn);
  cell.window = cell_window(fn, n, cell.divider.m, profile.v_high, profile.v_low);

  if (!cell.window.feasible()) {
    std::ostringstream msg;
    msg << "build_cell: infeasible threshold window (" << cell.window.low
        << ", " << cell.window.high << ") for " << to_string(fn) << " n=" << n;
    throw std::runtime_error(msg.str());
  }

  if (profile.device == DeviceKind::Opamp) {
    OpampComparator op;
    op.delta = std::max(profile.delta_frac * cell.window.width(),
                        profile.delta_min);
    if (op.delta >= cell.window.width()) op.delta = 0.5 * cell.window.width();
    // Reference sits delta inside the window, against the boundary level the
    // comparator must reject: the all-high side for NAND/AND, the all-low
    // side for NOR/OR/NOT.
    op.v_ref = detects_all_high(fn) ? cell.window.high - op.delta
                                    : cell.window.low + op.delta;
    op.inverter_stages = cell.odd_parity ? 1 : 0;
    cell.effective_threshold = op.v_ref;
    cell.device = op;
  } else {
    cell.effective_threshold = cell.window.midpoint();
    InverterChain chain;
    int stages = chain_stages(fn);
    // Use the top `stages` rails so the last stage always restores the full
    // rail; stage i switches at half the previous stage's rail.
    for (int i = 0; i < stages; ++i) {
      double rail = profile.stage_rail_frac[3 - stages + i] * profile.v_high;
      chain.stage_vdds.push_back(rail);
      chain.stage_thresholds.push_back(
          i == 0 ? cell.effective_threshold
                 : 0.5 * chain.stage_vdds[static_cast<size_t>(i) - 1]);
    }
    cell.device = chain;
  }
  return cell;
}

int evaluate(const GateCellConfig& cell, std::span<const int> inputs) {
  double v0 = divider_output(cell.divider, inputs);
  bool comparator = v0 > cell.effective_threshold;  // ties resolve low
  bool out = cell.odd_parity ? !comparator : comparator;
  return out ? 1 : 0;
}

AnalogTrace analog_trace(const GateCellConfig& cell,
                         std::span<const int> inputs) {
  AnalogTrace trace;
  trace.v0 = divider_output(cell.divider, inputs);
  double v_low = cell.divider.v_low;
  double v_high = cell.divider.v_high;

  if (const auto* chain = std::get_if<InverterChain>(&cell.device)) {
    double sig = trace.v0;
    for (size_t i = 0; i < chain->stage_vdds.size(); ++i) {
      sig = sig > chain->stage_thresholds[i] ? v_low : chain->stage_vdds[i];
      trace.stage_outputs.push_back(sig);
    }
  } else {
    const auto& op = std::get<OpampComparator>(cell.device);
    double sig = trace.v0 > op.v_ref ? v_high : v_low;
    trace.stage_outputs.push_back(sig);
    for (int i = 0; i < op.inverter_stages; ++i) {
      sig = sig > 0.5 * v_high ? v_low : v_high;
      trace.stage_outputs.push_back(sig);
    }
  }
  return trace;
}

NoiseMargin cell_noise_margin(const GateCellConfig& cell) {
  // The window bounds are the nearest attainable divider voltages on each
  // side of the decision boundary (highest comparator-low count, lowest
  // comparator-high count).
  const ThresholdWindow& w = cell.window;
  return {cell.effective_threshold - w.low, w.high - cell.effective_threshold};
}

std::string cell_to_profile_text(const GateCellConfig& cell) {
  std::ostringstream os;
  os.precision(17);
  os << "function = " << to_string(cell.function) << "\n";
  os << "n = " << cell.n << "\n";
  os << "r_input = " << cell.divider.r_input << "\n";
  os << "m = " << cell.divider.m << "\n";
  os << "v_high = " << cell.divider.v_high << "\n";
  os << "v_low = " << cell.divider.v_low << "\n";
  os << "effective_threshold = " << cell.effective_threshold << "\n";
  os << "delay = " << cell.delay << "\n";
  if (const auto* op = std::get_if<OpampComparator>(&cell.device)) {
    os << "device = opamp\n";
    os << "v_ref = " << op->v_ref << "\n";
    os << "delta = " << op->delta << "\n";
  } else {
    os << "device = inverter\n";
  }
  return os.str();
}

GateCellConfig cell_from_profile_text(const std::string& text) {
  // Rebuild from the stored identity; derived fields are recomputed so a
  // round-tripped cell always satisfies its own invariants.
  std::istringstream is(text);
  std::string line;
  std::string fn_name = "NAND", device = "inverter";
  int n = 2;
  double v_high = 1.0, v_low = 0.0, r_input = 100e3;
  while (std::getline(is, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "function") fn_name = val;
    else if (key == "n") n = std::stoi(val);
    else if (key == "v_high") v_high = std::stod(val);
    else if (key == "v_low") v_low = std::stod(val);
    else if (key == "r_input") r_input = std::stod(val);
    else if (key == "device") device = val;
  }
  auto fn = gate_fn_from_string(fn_name);
  if (!fn) throw std::invalid_argument("cell profile: unknown function " + fn_name);
  CellProfile p;
  p.v_high = v_high;
  p.v_low = v_low;
  p.r_input = r_input;
  p.device = device == "opamp" ? DeviceKind::Opamp : DeviceKind::InverterChain;
  return build_cell(*fn, n, p);
}

}  // namespace rtl
