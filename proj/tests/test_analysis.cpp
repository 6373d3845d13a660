#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rtl/analysis.hpp"
#include "rtl/bool_compiler.hpp"

using namespace rtl;

namespace {

DividerConfig all_high_config(int n) { return DividerConfig{n, 100e3, 1.0, 1.0, 0.0}; }

}  // namespace

TEST_CASE("sensitivity runs are deterministic per seed") {
  DividerConfig c = all_high_config(20);
  std::vector<int> levels(20, 1);
  PerturbationSpec spec{0.10, 5, 500, 7};
  SensitivityResult a = perturb_sensitivity(c, levels, spec);
  SensitivityResult b = perturb_sensitivity(c, levels, spec);
  CHECK(a.samples == b.samples);
  CHECK(a.max_pct_change == b.max_pct_change);

  spec.seed = 8;
  SensitivityResult other = perturb_sensitivity(c, levels, spec);
  CHECK(a.samples != other.samples);
}

TEST_CASE("sensitivity respects the analytic corner bound") {
  DividerConfig c = all_high_config(100);
  std::vector<int> levels(100, 1);
  double corner = analytic_worst_case_pct(c, levels, 0.10);
  for (int k : {10, 25, 50, 100}) {
    PerturbationSpec spec{0.10, k, 2000, 42};
    SensitivityResult s = perturb_sensitivity(c, levels, spec);
    CHECK(s.max_pct_change <= corner + 1e-9);
    CHECK(s.mean_pct_change <= s.max_pct_change);
    CHECK(s.samples.size() == 2000);
  }
}

TEST_CASE("more perturbed resistors move the output more") {
  DividerConfig c = all_high_config(100);
  std::vector<int> levels(100, 1);
  double prev = 0.0;
  for (int k : {10, 25, 50, 100}) {
    PerturbationSpec spec{0.10, k, 3000, 42};
    SensitivityResult s = perturb_sensitivity(c, levels, spec);
    CHECK(s.max_pct_change > prev);
    prev = s.max_pct_change;
  }
}

TEST_CASE("all-perturbed sensitivity lands in the reference envelope") {
  DividerConfig c = all_high_config(100);
  std::vector<int> levels(100, 1);
  PerturbationSpec spec{0.10, 100, 10000, 42};
  SensitivityResult s = perturb_sensitivity(c, levels, spec);
  CHECK(s.max_pct_change >= 0.05);
  CHECK(s.max_pct_change <= 0.15);
}

TEST_CASE("analytic corner: frozen value for the 100-input divider") {
  // with all resistors scaled by 1+t the output becomes
  // n VH / (1/m (1+t) + n); at n=100, m=1, t=-0.1 the shift is
  // 100/100.9 vs 100/101, i.e. +0.0991...%
  DividerConfig c = all_high_config(100);
  std::vector<int> levels(100, 1);
  double corner = analytic_worst_case_pct(c, levels, 0.10);
  CHECK(corner == doctest::Approx(100.0 / 1009.0 * 1.0).epsilon(1e-9));
  CHECK(corner == doctest::Approx(0.0991).epsilon(1e-3));
}

TEST_CASE("sensitivity input validation") {
  DividerConfig c = all_high_config(4);
  std::vector<int> levels(4, 1);
  PerturbationSpec bad_tol{1.5, 0, 100, 1};
  CHECK_THROWS_AS(perturb_sensitivity(c, levels, bad_tol),
                  std::invalid_argument);
  PerturbationSpec bad_k{0.1, 9, 100, 1};
  CHECK_THROWS_AS(perturb_sensitivity(c, levels, bad_k), std::invalid_argument);
  PerturbationSpec ok{0.1, 0, 100, 1};
  std::vector<int> all_low(4, 0);
  CHECK_THROWS_AS(perturb_sensitivity(c, all_low, ok), std::invalid_argument);
}

TEST_CASE("wide NOR stays logically robust under 10% tolerance") {
  // the comparator reference sits well inside the window, so resistor
  // spread alone cannot flip any input vector
  GateCellConfig nor100 = build_cell(GateFn::Nor, 100);
  PerturbationSpec spec{0.10, 0, 5000, 11};
  CHECK(logic_failure_rate(nor100, spec) == 0.0);

  GateCellConfig nand10 = build_cell(GateFn::Nand, 10);
  CHECK(logic_failure_rate(nand10, spec) == 0.0);
}

TEST_CASE("a threshold at the window edge does fail under tolerance") {
  GateCellConfig cell = build_cell(GateFn::Nand, 10);
  // push the comparator onto the lower window bound: vectors with one low
  // input then flip whenever the resistors drift downward
  cell.effective_threshold = cell.window.low;
  PerturbationSpec spec{0.10, 0, 5000, 11};
  CHECK(logic_failure_rate(cell, spec) > 0.0);
}

TEST_CASE("divider conduction power: frozen reference points") {
  // all-ten-high NOR-style divider at m=1: V0 = 10/11,
  // P = 10*(1/11)^2/R + (10/11)^2/R = 9.0909e-6 * ... computed closed form
  DividerConfig c{10, 100e3, 1.0, 1.0, 0.0};
  double v0 = 10.0 / 11.0;
  double expect = 10.0 * (1.0 - v0) * (1.0 - v0) / 100e3 + v0 * v0 / 100e3;
  CHECK(divider_conduction_power(c, 10) == doctest::Approx(expect).epsilon(1e-12));
  // zero conduction with every input at the low rail
  CHECK(divider_conduction_power(c, 0) == doctest::Approx(0.0));
}

TEST_CASE("power estimate reproduces the reference gate budgets") {
  // single 10-input gate, all inputs high: 9.09 uW conduction + 1.55 uW
  // static = 10.64 uW, against the 10.6 uW reference row
  Netlist nor10 = parse_netlist(
      "name n10\ninput a0 a1 a2 a3 a4 a5 a6 a7 a8 a9\noutput y\n"
      "gate g1 NOR in=a0,a1,a2,a3,a4,a5,a6,a7,a8,a9 out=y\n");
  double p10 = power_estimate(nor10, PowerModel{}, ActivityModel{1.0});
  CHECK(std::abs(p10 * 1e6 - 10.6) / 10.6 < 0.10);

  std::string text = "name n100\ninput";
  std::string ins;
  for (int i = 0; i < 100; ++i) {
    text += " a" + std::to_string(i);
    ins += (i ? "," : "") + ("a" + std::to_string(i));
  }
  text += "\noutput y\ngate g1 NOR in=" + ins + " out=y\n";
  Netlist nor100 = parse_netlist(text);
  double p100 = power_estimate(nor100, PowerModel{}, ActivityModel{1.0});
  CHECK(std::abs(p100 * 1e6 - 11.49) / 11.49 < 0.10);
}

TEST_CASE("power estimate: activity expectation is exact for a 1-input gate") {
  Netlist inv = parse_netlist("name i\ninput a\noutput y\ngate g1 NOT in=a out=y\n");
  PowerModel model;
  DividerConfig c{1, model.r_input, model.m, model.v_supply, 0.0};
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    double expect = p * divider_conduction_power(c, 1) +
                    (1.0 - p) * divider_conduction_power(c, 0) +
                    model.opamp_static;
    CHECK(power_estimate(inv, model, ActivityModel{p}) ==
          doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK_THROWS_AS(power_estimate(inv, model, ActivityModel{1.5}),
                  std::invalid_argument);
}

TEST_CASE("power decreases with activity for pull-up style gates") {
  Netlist adder = gen_ripple_adder(8);
  double quiet = power_estimate(adder, PowerModel{}, ActivityModel{0.1});
  double busy = power_estimate(adder, PowerModel{}, ActivityModel{0.9});
  CHECK(quiet < busy);
}

TEST_CASE("CMOS leakage power counts transistor pairs") {
  Netlist n = parse_netlist(
      "name c\ntech cmos\ninput a b c\noutput y\n"
      "gate g1 AND in=a,b out=ab\ngate g2 NOR in=ab,c out=y\n");
  PowerModel model;
  // AND2 = 3 pairs (2 + output inverter), NOR2 = 2 pairs
  CHECK(power_estimate(n, model) ==
        doctest::Approx(model.inverter_leakage * 5).epsilon(1e-12));
}

TEST_CASE("compare report deltas are antisymmetric") {
  Netlist a = gen_ripple_adder(4);
  Netlist b = decompose_fanin(gen_mux(8), 3);
  CompareReport ab = compare_report(a, b);
  CompareReport ba = compare_report(b, a);
  CHECK(ab.d_area_um2 == doctest::Approx(-ba.d_area_um2).epsilon(1e-12));
  CHECK(ab.d_power_w == doctest::Approx(-ba.d_power_w).epsilon(1e-12));
  CHECK(ab.d_delay_s == doctest::Approx(-ba.d_delay_s).epsilon(1e-12));
  CHECK(ab.d_gates == -ba.d_gates);
  CHECK(ab.a.name == ba.b.name);
}

TEST_CASE("report serializations carry the headline numbers") {
  Netlist a = gen_ripple_adder(2);
  Netlist b = decompose_fanin(a, 2);
  CompareReport r = compare_report(a, b);
  std::string text = report_text(r);
  CHECK(text.find("=== deltas (A - B) ===") != std::string::npos);
  CHECK(text.find(a.name) != std::string::npos);
  std::string csv = report_csv(r);
  CHECK(csv.rfind("metric,a,b,delta\n", 0) == 0);
  CHECK(csv.find("area_um2,") != std::string::npos);
  CHECK(csv.find("transistors,") != std::string::npos);

  PerturbationSpec spec{0.1, 0, 10, 1};
  DividerConfig c = all_high_config(4);
  std::vector<int> levels(4, 1);
  SensitivityResult s = perturb_sensitivity(c, levels, spec);
  std::string samples = samples_csv(s);
  CHECK(samples.rfind("trial,delta_pct\n", 0) == 0);
  CHECK(std::count(samples.begin(), samples.end(), '\n') == 11);
}
