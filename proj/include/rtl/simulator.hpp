#pragma once

#include <map>
#include <string>
#include <vector>

#include "rtl/netlist.hpp"

namespace rtl {

// Per-gate transport delays. RTL delays are fan-in invariant; CMOS delays
// are piecewise-linear in fan-in through the (3, 10, 1000)-input anchor
// points per function family, extrapolated at the ends.
struct DelayModel {
  double rtl_nand_s = 0.45e-6;  // NAND/AND/NOT
  double rtl_nor_s = 0.60e-6;   // NOR/OR
  // {fan-in, seconds} anchors
  std::vector<std::pair<double, double>> cmos_nand{
      {3, 0.47e-6}, {10, 0.54e-6}, {1000, 0.65e-6}};
  std::vector<std::pair<double, double>> cmos_nor{
      {3, 0.50e-6}, {10, 0.52e-6}, {1000, 0.66e-6}};

  double gate_delay(GateFn kind, int fan_in, Technology tech) const;
  double gate_delay(const Gate& g, Technology tech) const;
};

struct StimulusEvent {
  double time = 0.0;  // seconds
  std::string net;
  int level = 0;
};

struct Stimulus {
  std::map<std::string, int> initial;  // level of every primary input at t=0
  std::vector<StimulusEvent> events;   // time-sorted
};

// CSV `time_us,net,level`; rows at time 0 set initial levels.
Stimulus parse_stimulus_csv(const std::string& text);

struct Waveform {
  // per net, time-ordered (seconds, level) change records; first record is
  // the net's initialization at t=0
  std::map<std::string, std::vector<std::pair<double, int>>> changes;
  double t_end = 0.0;

  int final_level(const std::string& net) const;
};

std::string waveform_to_csv(const Waveform& w);

// Event-driven transport-delay simulation. Gate outputs are initialized to
// the zero-delay steady state of the initial input levels; simultaneous
// events settle in deterministic gate order.
Waveform simulate(const Netlist& n, const Stimulus& s, double t_end,
                  const DelayModel& delays = {});

// Zero-delay evaluation in topological order. Returns levels of the primary
// outputs in declaration order.
std::vector<int> steady_state(const Netlist& n,
                              const std::map<std::string, int>& input_levels);

struct CriticalPath {
  std::vector<std::string> gate_ids;  // input-to-output order
  double delay = 0.0;                 // seconds
};

CriticalPath critical_path(const Netlist& n, const DelayModel& delays = {});

}  // namespace rtl
