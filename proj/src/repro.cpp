#include "rtl/repro.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "rtl/analog.hpp"
#include "rtl/analysis.hpp"
#include "rtl/gate_cell.hpp"
#include "rtl/netlist.hpp"
#include "rtl/simulator.hpp"
#include "rtl/threshold.hpp"

namespace rtl::repro {

namespace {

void check(Result& r, bool ok, const std::string& what) {
  r.notes.push_back(std::string(ok ? "PASS " : "FAIL ") + what);
  r.ok = r.ok && ok;
}

void note(Result& r, const std::string& what) {
  r.notes.push_back("NOTE " + what);
}

bool within_pct(double value, double reference, double pct) {
  return std::abs(value - reference) <= std::abs(reference) * pct / 100.0;
}

Result run_table1() {
  Result r;
  r.name = "table1";
  std::ostringstream csv;
  csv << "n,per_branch_uA,total_uA\n";
  struct Row {
    int n;
    double per_branch_uA, total_uA;
  };
  const Row reference[] = {{2, 3.33, 6.66}, {10, 0.909, 9.09}, {100, 0.0, 9.90099}};
  for (const Row& ref : reference) {
    DividerConfig c{ref.n, 100e3, 1.0, 1.0, 0.0};
    std::vector<int> all_high(static_cast<size_t>(ref.n), 1);
    DividerSolution sol = branch_currents(c, all_high);
    double per_uA = sol.branch_currents[0] * 1e6;
    double tot_uA = sol.total_current * 1e6;
    csv << ref.n << ',' << per_uA << ',' << tot_uA << "\n";
    if (ref.per_branch_uA > 0.0)
      check(r, within_pct(per_uA, ref.per_branch_uA, 0.5),
            "n=" + std::to_string(ref.n) + " per-branch current");
    check(r, within_pct(tot_uA, ref.total_uA, 0.5),
          "n=" + std::to_string(ref.n) + " total current");
    if (ref.n == 100) {
      check(r, within_pct(per_uA * 1e3, 99.0099, 0.5),
            "n=100 per-branch 99.0099 nA (self-consistent with the total)");
      note(r,
           "n=100 reference row lists per-device current 0.99099 nA, which "
           "contradicts its own total (9.90099 uA / 100 = 99.0099 nA); the "
           "computed self-consistent value is reported instead");
    }
  }
  r.csv = csv.str();
  return r;
}

Result run_table2() {
  Result r;
  r.name = "table2";
  CellProfile profile;
  GateCellConfig nand = build_cell(GateFn::Nand, 2, profile);
  GateCellConfig nor = build_cell(GateFn::Nor, 2, profile);
  std::ostringstream csv;
  csv << "v1,v2,v0,nand,nor\n";
  const double expected_v0[] = {0.0, 1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0};
  const int expected_nand[] = {1, 1, 1, 0};
  const int expected_nor[] = {1, 0, 0, 0};
  bool all = true;
  for (int row = 0; row < 4; ++row) {
    std::vector<int> in{(row >> 1) & 1, row & 1};
    double v0 = divider_output(nand.divider, in);
    int qn = evaluate(nand, in);
    int qr = evaluate(nor, in);
    csv << in[0] << ',' << in[1] << ',' << v0 << ',' << qn << ',' << qr << "\n";
    all = all && std::abs(v0 - expected_v0[row]) <= 1e-12 &&
          qn == expected_nand[row] && qr == expected_nor[row];
  }
  check(r, all, "two-input truth table, V0 = {0, 1/3, 1/3, 2/3}");
  r.csv = csv.str();
  return r;
}

Result run_fig2() {
  Result r;
  r.name = "fig2";
  DividerConfig c{100, 100e3, 1.0, 1.0, 0.0};
  std::vector<int> all_high(100, 1);
  std::ostringstream csv;
  csv << "k,max_pct,mean_pct\n";
  for (int k : {10, 25, 50, 100}) {
    PerturbationSpec spec{0.10, k, 10000, 42};
    SensitivityResult s = perturb_sensitivity(c, all_high, spec);
    csv << k << ',' << s.max_pct_change << ',' << s.mean_pct_change << "\n";
    if (k == 100) {
      check(r, s.max_pct_change >= 0.05 && s.max_pct_change <= 0.15,
            "k=100 max |dV0| in [0.05%, 0.15%] (reference 0.0894%)");
      double worst = analytic_worst_case_pct(c, all_high, 0.10);
      check(r, s.max_pct_change <= worst + 1e-9,
            "k=100 max bounded by the analytic all-same-direction corner");
    }
  }
  r.csv = csv.str();
  return r;
}

Result run_fig3() {
  Result r;
  r.name = "fig3";
  std::ostringstream csv;
  csv << "n,m,low,high\n";
  ThresholdWindow w10 = nor_window(10, 1.0 / 8.0, 1.0, 0.0);
  ThresholdWindow w20 = nor_window(20, 1.0 / 18.0, 1.0, 0.0);
  csv << "10,0.125," << w10.low << ',' << w10.high << "\n";
  csv << "20," << 1.0 / 18.0 << ',' << w20.low << ',' << w20.high << "\n";
  check(r, std::abs(w10.low - 0.0) <= 1e-3 && std::abs(w10.high - 0.0556) <= 1e-3,
        "10-input NOR window (0, 0.0556)");
  check(r, std::abs(w20.low - 0.0) <= 1e-3 && std::abs(w20.high - 0.0263) <= 1e-3,
        "20-input NOR window (0, 0.0263)");
  r.csv = csv.str();
  return r;
}

Result run_fig5() {
  Result r;
  r.name = "fig5";
  auto rows = vtn_vth_sweep(3, 100, InverterParams{}, MosfetBiasParams{});
  std::ostringstream csv;
  csv << "n,v_tn,v_th,v_bs,realizable\n";
  bool all_above_half = true;
  for (const auto& row : rows) {
    csv << row.n << ',' << row.v_tn << ',' << row.v_th << ',' << row.v_bs << ','
        << (row.realizable ? 1 : 0) << "\n";
    all_above_half = all_above_half && row.v_th > 0.5;
  }
  check(r, all_above_half, "NAND inverter threshold above 0.5 V for n = 3..100");
  r.csv = csv.str();
  return r;
}

Result run_table5() {
  Result r;
  r.name = "table5";
  DelayModel delays;
  std::ostringstream csv;
  csv << "fn,n,rtl_us,cmos_us\n";
  bool rtl_flat = true, cmos_up = true;
  for (GateFn fn : {GateFn::Nand, GateFn::Nor}) {
    double prev_cmos = 0.0, first_rtl = 0.0;
    for (int n : {3, 10, 1000}) {
      double rtl_d = delays.gate_delay(fn, n, Technology::Rtl);
      double cmos_d = delays.gate_delay(fn, n, Technology::Cmos);
      csv << to_string(fn) << ',' << n << ',' << rtl_d * 1e6 << ','
          << cmos_d * 1e6 << "\n";
      if (n == 3) first_rtl = rtl_d;
      rtl_flat = rtl_flat && rtl_d == first_rtl;
      cmos_up = cmos_up && cmos_d > prev_cmos;
      prev_cmos = cmos_d;
    }
  }
  check(r, rtl_flat, "RTL delay fan-in invariant (0.45 us NAND, 0.60 us NOR)");
  check(r, cmos_up, "CMOS delay strictly increasing with fan-in");
  r.csv = csv.str();
  return r;
}

Result run_table7() {
  Result r;
  r.name = "table7";
  Netlist adder = gen_ripple_adder(16);
  Netlist adder_cmos = decompose_fanin(adder, 5);
  Netlist mux = gen_mux(16);
  Netlist mux_cmos = decompose_fanin(mux, 5);
  AreaModel area;
  PowerModel power;
  std::ostringstream csv;
  csv << "circuit,tech,area_um2,power_w\n";
  auto line = [&](const Netlist& n) {
    ComponentStats s = component_stats(n, area);
    csv << n.name << ',' << to_string(n.tech) << ',' << s.area_um2 << ','
        << power_estimate(n, power) << "\n";
    return s.area_um2;
  };
  double a_rtl = line(adder);
  double a_cmos = line(adder_cmos);
  double m_rtl = line(mux);
  double m_cmos = line(mux_cmos);
  check(r, m_rtl < m_cmos, "16x1 MUX: RTL area below CMOS area");
  check(r, a_cmos < a_rtl, "16-bit adder: CMOS area below RTL area");
  check(r, power_estimate(adder_cmos, power) < power_estimate(adder, power),
        "16-bit adder: CMOS power below RTL power");
  note(r,
       "absolute areas come from the calibrated default area model; only the "
       "comparison directions are asserted");
  r.csv = csv.str();
  return r;
}

Result run_fig8() {
  Result r;
  r.name = "fig8";
  Netlist adder = gen_ripple_adder(16);

  // Pulse assignment (the reference under-determines the 33 inputs): after a
  // 10 us start delay the a-bits toggle with a 20 us ON period and the
  // b-bits with a 10 us ON period, both 50% duty; cin stays low.
  Stimulus stim;
  for (const auto& in : adder.inputs) stim.initial[in] = 0;
  double t_end = 80e-6;
  for (int i = 0; i < 16; ++i) {
    for (double t = 10e-6; t < t_end; t += 20e-6) {
      int phase = static_cast<int>(std::llround((t - 10e-6) / 20e-6));
      stim.events.push_back({t, "a" + std::to_string(i), phase % 2 == 0 ? 1 : 0});
    }
    for (double t = 10e-6; t < t_end; t += 10e-6) {
      int phase = static_cast<int>(std::llround((t - 10e-6) / 10e-6));
      stim.events.push_back({t, "b" + std::to_string(i), phase % 2 == 0 ? 1 : 0});
    }
  }
  std::sort(stim.events.begin(), stim.events.end(),
            [](const StimulusEvent& a, const StimulusEvent& b) {
              return a.time < b.time;
            });
  DelayModel delays;
  Waveform w = simulate(adder, stim, t_end, delays);

  std::ostringstream csv;
  csv << "time_us,net,level\n";
  for (const std::string& net : {std::string("s15"), std::string("cout")})
    for (const auto& [t, level] : w.changes[net])
      csv << t * 1e6 << ',' << net << ',' << level << "\n";

  CriticalPath cp = critical_path(adder, delays);
  double last_stim = 0.0;
  for (const auto& ev : stim.events) last_stim = std::max(last_stim, ev.time);
  double last_change = 0.0;
  for (const auto& [net, recs] : w.changes)
    if (!recs.empty()) last_change = std::max(last_change, recs.back().first);
  check(r, last_change <= last_stim + cp.delay + 1e-12,
        "all nets settle within the critical-path bound after the last edge");

  // Final levels must match the combinational function of the final inputs.
  std::map<std::string, int> final_in;
  for (const auto& in : adder.inputs) final_in[in] = w.final_level(in);
  std::vector<int> expect = steady_state(adder, final_in);
  bool final_ok = true;
  for (size_t i = 0; i < adder.outputs.size(); ++i)
    final_ok = final_ok && w.final_level(adder.outputs[i]) == expect[i];
  check(r, final_ok, "final waveform levels equal the steady-state outputs");
  r.csv = csv.str();
  return r;
}

}  // namespace

std::vector<std::string> names() {
  return {"table1", "table2", "fig2", "fig3", "fig5", "table5", "table7", "fig8"};
}

Result run(const std::string& name) {
  if (name == "table1") return run_table1();
  if (name == "table2") return run_table2();
  if (name == "fig2") return run_fig2();
  if (name == "fig3") return run_fig3();
  if (name == "fig5") return run_fig5();
  if (name == "table5") return run_table5();
  if (name == "table7") return run_table7();
  if (name == "fig8") return run_fig8();
  throw std::invalid_argument("unknown reproduction script: " + name);
}

}  // namespace rtl::repro
