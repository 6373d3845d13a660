#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rtl/netlist.hpp"
#include "rtl/simulator.hpp"

using namespace rtl;

namespace {

const char* kSampleText = R"(# half adder with a redundant sum decomposition
name ha
tech rtl
input a b
output s c
gate g1 NAND in=a,b out=nab
gate g2 OR in=a,b out=oab
gate g3 AND in=nab,oab out=s delay=1e-6
gate g4 AND in=a,b out=c
)";

std::map<std::string, int> mux_inputs(int n_data, int select, int data_mask) {
  std::map<std::string, int> in;
  int sel_bits = 0;
  while ((1 << sel_bits) < n_data) ++sel_bits;
  for (int j = 0; j < sel_bits; ++j)
    in["s" + std::to_string(j)] = (select >> j) & 1;
  for (int i = 0; i < n_data; ++i)
    in["d" + std::to_string(i)] = (data_mask >> i) & 1;
  return in;
}

}  // namespace

TEST_CASE("parse: sample netlist fields") {
  Netlist n = parse_netlist(kSampleText);
  CHECK(n.name == "ha");
  CHECK(n.tech == Technology::Rtl);
  CHECK(n.inputs == std::vector<std::string>{"a", "b"});
  CHECK(n.outputs == std::vector<std::string>{"s", "c"});
  REQUIRE(n.gates.size() == 4);
  CHECK(n.gates[0].kind == GateFn::Nand);
  CHECK(n.gates[0].inputs == std::vector<std::string>{"a", "b"});
  CHECK(n.gates[0].output == "nab");
  CHECK_FALSE(n.gates[0].delay_override.has_value());
  REQUIRE(n.gates[2].delay_override.has_value());
  CHECK(*n.gates[2].delay_override == doctest::Approx(1e-6));
  n.validate();
}

TEST_CASE("emit then parse round-trips") {
  Netlist n = parse_netlist(kSampleText);
  Netlist back = parse_netlist(emit_netlist(n));
  CHECK(back.name == n.name);
  CHECK(back.inputs == n.inputs);
  CHECK(back.outputs == n.outputs);
  REQUIRE(back.gates.size() == n.gates.size());
  for (size_t i = 0; i < n.gates.size(); ++i) {
    CHECK(back.gates[i].id == n.gates[i].id);
    CHECK(back.gates[i].kind == n.gates[i].kind);
    CHECK(back.gates[i].inputs == n.gates[i].inputs);
    CHECK(back.gates[i].output == n.gates[i].output);
    CHECK(back.gates[i].delay_override == n.gates[i].delay_override);
  }
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_netlist("name x\ninput a\noutput y\ngate g1 FROB in=a out=y\n");
    FAIL("expected NetlistError");
  } catch (const NetlistError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_netlist("bogus line\n"), NetlistError);
  CHECK_THROWS_AS(parse_netlist("name x\ngate g1 AND in= out=y\n"),
                  NetlistError);
}

TEST_CASE("validate rejects structural faults") {
  // double driver
  Netlist n = parse_netlist(kSampleText);
  n.gates.push_back({"g5", GateFn::And, {"a", "b"}, "s", {}});
  CHECK_THROWS_AS(n.validate(), NetlistError);

  // undriven net
  Netlist m = parse_netlist(kSampleText);
  m.gates[0].inputs[0] = "ghost";
  CHECK_THROWS_AS(m.validate(), NetlistError);

  // combinational cycle
  Netlist c;
  c.name = "cyc";
  c.inputs = {"a"};
  c.outputs = {"y"};
  c.gates = {{"g1", GateFn::And, {"a", "y"}, "x", {}},
             {"g2", GateFn::And, {"x", "a"}, "y", {}}};
  CHECK_THROWS_AS(c.validate(), NetlistError);
  CHECK_THROWS_AS(c.topo_order(), NetlistError);

  // missing output driver
  Netlist o = parse_netlist(kSampleText);
  o.outputs.push_back("nowhere");
  CHECK_THROWS_AS(o.validate(), NetlistError);
}

TEST_CASE("const nets need no driver") {
  Netlist n = parse_netlist(
      "name k\ninput a\noutput y\ngate g1 AND in=a,const1 out=y\n");
  n.validate();
  CHECK(is_const_net("const0"));
  CHECK(is_const_net("const1"));
  CHECK_FALSE(is_const_net("constX"));
  std::map<std::string, int> in{{"a", 1}};
  CHECK(steady_state(n, in) == std::vector<int>{1});
}

TEST_CASE("topological order respects dependencies") {
  Netlist n = parse_netlist(kSampleText);
  auto order = n.topo_order();
  REQUIRE(order.size() == n.gates.size());
  std::map<std::string, size_t> pos;
  for (size_t i = 0; i < order.size(); ++i)
    pos[n.gates[static_cast<size_t>(order[i])].output] = i;
  for (size_t i = 0; i < order.size(); ++i) {
    const Gate& g = n.gates[static_cast<size_t>(order[i])];
    for (const auto& in : g.inputs)
      if (pos.count(in)) CHECK(pos[in] < i);
  }
}

TEST_CASE("ripple adder: exact per-bit gate inventory") {
  Netlist adder = gen_ripple_adder(16);
  CHECK(adder.inputs.size() == 33);  // 16 a, 16 b, cin
  CHECK(adder.outputs.size() == 17);
  ComponentStats s = component_stats(adder);
  CHECK(s.gate_count["NOT1"] == 16 * 3);
  CHECK(s.gate_count["AND2"] == 16 * 3);
  CHECK(s.gate_count["AND3"] == 16 * 4);
  CHECK(s.gate_count["OR3"] == 16 * 1);
  CHECK(s.gate_count["OR4"] == 16 * 1);
  adder.validate();
}

TEST_CASE("ripple adder adds: exhaustive 4-bit, random 16-bit") {
  Netlist a4 = gen_ripple_adder(4);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      for (int cin = 0; cin < 2; ++cin) {
        std::map<std::string, int> in{{"cin", cin}};
        for (int i = 0; i < 4; ++i) {
          in["a" + std::to_string(i)] = (a >> i) & 1;
          in["b" + std::to_string(i)] = (b >> i) & 1;
        }
        auto out = steady_state(a4, in);
        int sum = 0;
        for (int i = 0; i < 4; ++i) sum |= out[static_cast<size_t>(i)] << i;
        sum |= out[4] << 4;
        REQUIRE(sum == a + b + cin);
      }

  Netlist a16 = gen_ripple_adder(16);
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> word(0, 0xFFFF), bit(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    int a = word(rng), b = word(rng), cin = bit(rng);
    std::map<std::string, int> in{{"cin", cin}};
    for (int i = 0; i < 16; ++i) {
      in["a" + std::to_string(i)] = (a >> i) & 1;
      in["b" + std::to_string(i)] = (b >> i) & 1;
    }
    auto out = steady_state(a16, in);
    long sum = 0;
    for (int i = 0; i < 16; ++i)
      sum |= static_cast<long>(out[static_cast<size_t>(i)]) << i;
    sum |= static_cast<long>(out[16]) << 16;
    REQUIRE(sum == static_cast<long>(a) + b + cin);
  }
}

TEST_CASE("mux: inventory and selection behavior") {
  Netlist mux = gen_mux(16);
  ComponentStats s = component_stats(mux);
  CHECK(s.gate_count["NOT1"] == 4);
  CHECK(s.gate_count["AND5"] == 16);
  CHECK(s.gate_count["OR16"] == 1);
  mux.validate();

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> mask(0, 0xFFFF);
  for (int sel = 0; sel < 16; ++sel)
    for (int trial = 0; trial < 20; ++trial) {
      int data = mask(rng);
      auto out = steady_state(mux, mux_inputs(16, sel, data));
      REQUIRE(out.size() == 1);
      REQUIRE(out[0] == ((data >> sel) & 1));
    }
}

TEST_CASE("fan-in decomposition preserves function and respects the cap") {
  Netlist mux = gen_mux(16);
  Netlist flat = decompose_fanin(mux, 5);
  CHECK(flat.tech == Technology::Cmos);
  flat.validate();
  for (const auto& g : flat.gates) CHECK(g.fan_in() <= 5);

  std::mt19937 rng(17);
  std::uniform_int_distribution<int> mask(0, 0xFFFF), sel(0, 15);
  for (int trial = 0; trial < 300; ++trial) {
    auto in = mux_inputs(16, sel(rng), mask(rng));
    REQUIRE(steady_state(flat, in) == steady_state(mux, in));
  }

  // inverting kinds keep their polarity through the inverting root
  Netlist wide = parse_netlist(
      "name w\ninput a b c d e f\n"
      "output y\ngate g1 NOR in=a,b,c,d,e,f out=y\n");
  Netlist dec = decompose_fanin(wide, 3);
  for (const auto& g : dec.gates) CHECK(g.fan_in() <= 3);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int v = 0; v < 64; ++v) {
    std::map<std::string, int> in;
    const char* names[] = {"a", "b", "c", "d", "e", "f"};
    for (int i = 0; i < 6; ++i) in[names[i]] = (v >> i) & 1;
    REQUIRE(steady_state(dec, in) == steady_state(wide, in));
  }
}

TEST_CASE("decomposition layers are balanced") {
  // one 16-wide OR with cap 4 must become 4 + 1 gates, not a 15-deep chain
  Netlist mux = gen_mux(16);
  Netlist flat = decompose_fanin(mux, 4);
  int or_gates = 0;
  for (const auto& g : flat.gates)
    if (g.kind == GateFn::Or) ++or_gates;
  CHECK(or_gates == 5);
}

TEST_CASE("component stats: memristor and transistor accounting") {
  Netlist n = parse_netlist(kSampleText);
  AreaModel model;
  ComponentStats s = component_stats(n, model);
  // four gates of fan-in 2: each divider uses fan_in + 1 memristors
  CHECK(s.memristor_count == 4 * 3);
  // opamp threshold device: 10 transistors per gate
  CHECK(s.opamp_count == 4);
  CHECK(s.transistor_count == 4 * 10);
  CHECK(s.area_um2 == doctest::Approx(12 * 9e-4 + 40 * 4e-3).epsilon(1e-12));

  // CMOS accounting: NAND/NOR 2N, AND/OR 2N+2, NOT 2
  Netlist c = parse_netlist(kSampleText);
  c.tech = Technology::Cmos;
  ComponentStats cs = component_stats(c, model);
  CHECK(cs.memristor_count == 0);
  CHECK(cs.transistor_count == (2 * 2) + (2 * 2 + 2) + (2 * 2 + 2) + (2 * 2 + 2));
}

TEST_CASE("stats accumulate") {
  Netlist n = parse_netlist(kSampleText);
  ComponentStats a = component_stats(n);
  ComponentStats b = component_stats(n);
  b += a;
  CHECK(b.memristor_count == 2 * a.memristor_count);
  CHECK(b.area_um2 == doctest::Approx(2 * a.area_um2).epsilon(1e-12));
  CHECK(b.gate_count["AND2"] == 2 * a.gate_count["AND2"]);
}

TEST_CASE("generator argument validation") {
  CHECK_THROWS_AS(gen_ripple_adder(0), std::invalid_argument);
  CHECK_THROWS_AS(gen_mux(3), std::invalid_argument);  // must be a power of two
  CHECK_THROWS_AS(gen_mux(1), std::invalid_argument);
  CHECK_THROWS_AS(decompose_fanin(parse_netlist(kSampleText), 1),
                  std::invalid_argument);
}
