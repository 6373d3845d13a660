#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rtl/threshold.hpp"

using namespace rtl;

TEST_CASE("surface potential pinned value") {
  // frozen from an independent high-precision evaluation of
  // 2 (kB*300/q) ln(1e17/1.45e10)
  double phi = surface_potential(1e17, 1.45e10, 300.0);
  CHECK(phi == doctest::Approx(0.8141586886895644).epsilon(1e-12));
  CHECK_THROWS_AS(surface_potential(-1.0, 1.45e10, 300.0), std::domain_error);
  CHECK_THROWS_AS(surface_potential(1e17, 1.45e10, 0.0), std::domain_error);
}

TEST_CASE("surface potential scales logarithmically with doping") {
  double a = surface_potential(1e16, 1.45e10, 300.0);
  double b = surface_potential(1e17, 1.45e10, 300.0);
  double c = surface_potential(1e18, 1.45e10, 300.0);
  CHECK(b - a == doctest::Approx(c - b).epsilon(1e-9));
  CHECK(b > a);
}

TEST_CASE("body bias pinned regression case") {
  // frozen from an independent evaluation of the K1/K2 chain at
  // vtn0=0.4, gamma1=0.5, gamma2=0.3, phi_s=0.8, vbs=-0.5, vbm=-3,
  // vbx=-0.2, C=0
  double vtn = body_bias_vtn(0.4, 0.8, -0.5, -3.0, -0.2, 0.5, 0.3, 0.0);
  CHECK(vtn == doctest::Approx(0.49190244955102025).epsilon(1e-12));
}

TEST_CASE("body bias reduces to vtn0 at zero substrate bias") {
  double vtn = body_bias_vtn(0.4, 0.8, 0.0, -3.0, -0.2, 0.5, 0.3, 0.0);
  CHECK(vtn == doctest::Approx(0.4).epsilon(1e-12));
  // C shifts the result additively
  double shifted = body_bias_vtn(0.4, 0.8, 0.0, -3.0, -0.2, 0.5, 0.3, 0.05);
  CHECK(shifted == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("body bias: equal body factors give the plain body-effect form") {
  // gamma1 == gamma2 makes K2 = 0 and K1 = gamma, so
  // V_tn = V_tn0 + gamma (sqrt(phi_s - V_bs) - sqrt(phi_s))
  double g = 0.5, phi = 0.8, vbs = -1.0;
  double expect = 0.4 + g * (std::sqrt(phi - vbs) - std::sqrt(phi));
  double got = body_bias_vtn(0.4, phi, vbs, -3.0, -0.2, g, g, 0.0);
  CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("body bias is monotone in reverse substrate bias") {
  MosfetBiasParams p;
  p.v_bs = 0.0;
  double a = body_bias_vtn(p);
  p.v_bs = -1.0;
  double b = body_bias_vtn(p);
  p.v_bs = -2.0;
  double c = body_bias_vtn(p);
  CHECK(a < b);
  CHECK(b < c);
}

TEST_CASE("body bias rejects impossible square roots") {
  CHECK_THROWS_AS(body_bias_vtn(0.4, 0.8, 2.0, -3.0, -0.2, 0.5, 0.3, 0.0),
                  std::domain_error);
}

TEST_CASE("inverter threshold: symmetric device sits at mid-rail") {
  InverterParams p;  // vtn=0.4, vtp=-0.4, equal strengths, vdd=1
  CHECK(inverter_threshold(p) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("inverter threshold: strength ratio pulls the trip point") {
  InverterParams strong_p;
  strong_p.mu_p_w_p = 4.0;  // r = 2
  // (0.4 + 2*0.6)/3
  CHECK(inverter_threshold(strong_p) ==
        doctest::Approx(1.6 / 3.0).epsilon(1e-12));

  InverterParams strong_n;
  strong_n.mu_n_w_n = 4.0;  // r = 0.5
  // (0.4 + 0.5*0.6)/1.5
  CHECK(inverter_threshold(strong_n) ==
        doctest::Approx(0.7 / 1.5).epsilon(1e-12));
}

TEST_CASE("inverter threshold inverse round-trips") {
  InverterParams p;
  p.mu_p_w_p = 2.5;
  for (double target : {0.3, 0.45, 0.55, 0.7}) {
    p.v_tn = inverter_vtn_for_threshold(p, target);
    CHECK(inverter_threshold(p) == doctest::Approx(target).epsilon(1e-12));
  }
}

TEST_CASE("closed-form NOR / NAND windows at reference points") {
  // two-input, m = 1: NOR separates counts {0} from {1,2} -> (0, 1/3);
  // NAND separates {0,1} from {2} -> (1/3, 2/3)
  ThresholdWindow nor2 = nor_window(2, 1.0, 1.0, 0.0);
  CHECK(nor2.low == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(nor2.high == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  ThresholdWindow nand2 = nand_window(2, 1.0, 1.0, 0.0);
  CHECK(nand2.low == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(nand2.high == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // three-input NAND at m = 1: (0.5, 0.75)
  ThresholdWindow nand3 = nand_window(3, 1.0, 1.0, 0.0);
  CHECK(nand3.low == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(nand3.high == doctest::Approx(0.75).epsilon(1e-12));

  // wide NOR windows from the window-scaling study
  ThresholdWindow nor10 = nor_window(10, 1.0 / 8.0, 1.0, 0.0);
  CHECK(nor10.low == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(nor10.high == doctest::Approx(1.0 / 18.0).epsilon(1e-12));
  ThresholdWindow nor20 = nor_window(20, 1.0 / 18.0, 1.0, 0.0);
  CHECK(nor20.high == doctest::Approx(1.0 / 38.0).epsilon(1e-12));
}

TEST_CASE("select_m keeps the NAND lower bound at mid-rail") {
  CHECK(select_m(2) == doctest::Approx(1.0));
  for (int n = 3; n <= 200; ++n) {
    double m = select_m(n);
    CHECK(m == doctest::Approx(1.0 / (n - 2)).epsilon(1e-12));
    ThresholdWindow w = nand_window(n, m, 1.0, 0.0);
    CHECK(w.low == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.feasible());
  }
}

TEST_CASE("closed-form windows match the enumeration oracle exactly") {
  for (int n = 2; n <= 24; ++n) {
    for (double m : {1.0, 0.5, n >= 3 ? select_m(n) : 1.0}) {
      ThresholdWindow en = window_by_enumeration(n, m, 1.0, 0.0, GateFn::Nor);
      ThresholdWindow cf = nor_window(n, m, 1.0, 0.0);
      CHECK(en.low == cf.low);
      CHECK(en.high == cf.high);

      ThresholdWindow en2 = window_by_enumeration(n, m, 1.0, 0.0, GateFn::Nand);
      ThresholdWindow cf2 = nand_window(n, m, 1.0, 0.0);
      CHECK(en2.low == cf2.low);
      CHECK(en2.high == cf2.high);
    }
  }
}

TEST_CASE("enumeration: AND/OR share divider windows with NAND/NOR") {
  // the divider side is identical; only the output parity differs
  for (int n = 2; n <= 8; ++n) {
    ThresholdWindow a = window_by_enumeration(n, 1.0, 1.0, 0.0, GateFn::And);
    ThresholdWindow na = window_by_enumeration(n, 1.0, 1.0, 0.0, GateFn::Nand);
    CHECK(a.low == na.low);
    CHECK(a.high == na.high);
    ThresholdWindow o = window_by_enumeration(n, 1.0, 1.0, 0.0, GateFn::Or);
    ThresholdWindow no = window_by_enumeration(n, 1.0, 1.0, 0.0, GateFn::Nor);
    CHECK(o.low == no.low);
    CHECK(o.high == no.high);
  }
}

TEST_CASE("XOR has no single-threshold window") {
  for (int n = 2; n <= 6; ++n) {
    ThresholdWindow w = window_by_enumeration(n, 1.0, 1.0, 0.0, GateFn::Xor);
    CHECK_FALSE(w.feasible());
  }
}

TEST_CASE("enumeration guard rejects oversized fan-in") {
  CHECK_THROWS_AS(window_by_enumeration(25, 1.0, 1.0, 0.0, GateFn::Nand),
                  std::invalid_argument);
}

TEST_CASE("realizability sweep stays above mid-rail and inverts correctly") {
  auto rows = vtn_vth_sweep(3, 100, InverterParams{}, MosfetBiasParams{});
  CHECK(rows.size() == 98);
  MosfetBiasParams bias;
  for (const auto& row : rows) {
    CHECK(row.v_th > 0.5);
    // the NMOS threshold must reproduce the inverter trip point
    InverterParams inv;
    inv.v_tn = row.v_tn;
    CHECK(inverter_threshold(inv) == doctest::Approx(row.v_th).epsilon(1e-9));
    if (row.realizable) {
      bias.v_bs = row.v_bs;
      CHECK(body_bias_vtn(bias) == doctest::Approx(row.v_tn).epsilon(1e-9));
    }
  }
}
