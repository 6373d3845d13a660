#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtl/logic.hpp"

namespace rtl {

enum class Technology { Rtl, Cmos };

const char* to_string(Technology t);

// Nets named const0 / const1 are implicitly driven constants.
bool is_const_net(const std::string& net);

struct Gate {
  std::string id;
  GateFn kind = GateFn::And;
  std::vector<std::string> inputs;
  std::string output;
  std::optional<double> delay_override;  // seconds

  int fan_in() const { return static_cast<int>(inputs.size()); }
};

class NetlistError : public std::runtime_error {
 public:
  NetlistError(int line, const std::string& msg);
  int line() const { return line_; }

 private:
  int line_;
};

struct Netlist {
  std::string name;
  Technology tech = Technology::Rtl;
  std::vector<std::string> inputs;   // primary inputs, ordered
  std::vector<std::string> outputs;  // primary outputs, ordered
  std::vector<Gate> gates;

  // Checks single-driver, fully driven, acyclic, outputs present. Line
  // numbers in errors refer to gate order when no source text is available.
  void validate() const;

  // Gate indices in topological (input-to-output) order. Throws on cycles.
  std::vector<int> topo_order() const;

  // Driving gate index per net (-1 for primary/const inputs).
  std::map<std::string, int> driver_map() const;
};

Netlist parse_netlist(const std::string& text);
std::string emit_netlist(const Netlist& n);

// Ripple-carry adder from unminimized single-bit adders: per bit 3 NOT,
// 3 AND2 (carry products), 4 AND3 (sum minterms), 1 OR3, 1 OR4.
// Inputs a0..,b0..,cin; outputs s0..,cout.
Netlist gen_ripple_adder(int bits);

// n_data-to-1 mux: log2(n) NOT, n_data AND of fan-in log2(n)+1, one wide OR.
// Inputs s0..,d0..; output y.
Netlist gen_mux(int n_data);

// Replaces every AND/OR wider than cap with a balanced same-kind tree;
// wide NAND/NOR become an AND/OR tree with an inverting root gate.
// The result is tagged Technology::Cmos.
Netlist decompose_fanin(const Netlist& n, int cap);

struct AreaModel {
  double memristor_area_um2 = 9e-4;
  double transistor_area_um2 = 4e-3;
  // RTL threshold device: 8-MOSFET opamp + output inverter per gate when
  // true, otherwise 2 MOSFETs per inverter-chain stage.
  bool opamp_threshold = true;
};

struct ComponentStats {
  // keyed by e.g. "AND3", "NOT1"
  std::map<std::string, int> gate_count;
  long memristor_count = 0;
  long transistor_count = 0;
  long opamp_count = 0;
  double area_um2 = 0.0;

  ComponentStats& operator+=(const ComponentStats& o);
};

ComponentStats component_stats(const Netlist& n, const AreaModel& model = {});

std::string stats_summary(const ComponentStats& s);

}  // namespace rtl
