#include "rtl/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace rtl {

namespace {

double interp_anchors(const std::vector<std::pair<double, double>>& pts,
                      double x) {
  // piecewise linear through the anchors, linearly extrapolated at the ends
  if (pts.size() < 2) return pts.empty() ? 0.0 : pts[0].second;
  size_t seg = 0;
  while (seg + 2 < pts.size() && x > pts[seg + 1].first) ++seg;
  auto [x0, y0] = pts[seg];
  auto [x1, y1] = pts[seg + 1];
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

int eval_gate(GateFn kind, const std::vector<int>& in) {
  switch (kind) {
    case GateFn::Not:
      return in[0] ? 0 : 1;
    case GateFn::And:
    case GateFn::Nand: {
      bool all = std::all_of(in.begin(), in.end(), [](int b) { return b != 0; });
      return (kind == GateFn::And) == all ? 1 : 0;
    }
    case GateFn::Or:
    case GateFn::Nor: {
      bool any = std::any_of(in.begin(), in.end(), [](int b) { return b != 0; });
      return (kind == GateFn::Or) == any ? 1 : 0;
    }
    default:
      throw std::invalid_argument("eval_gate: unsupported gate kind");
  }
}

}  // namespace

double DelayModel::gate_delay(GateFn kind, int fan_in, Technology tech) const {
  bool nor_family = kind == GateFn::Nor || kind == GateFn::Or;
  if (tech == Technology::Rtl) return nor_family ? rtl_nor_s : rtl_nand_s;
  return interp_anchors(nor_family ? cmos_nor : cmos_nand,
                        static_cast<double>(fan_in));
}

double DelayModel::gate_delay(const Gate& g, Technology tech) const {
  if (g.delay_override) return *g.delay_override;
  return gate_delay(g.kind, g.fan_in(), tech);
}

Stimulus parse_stimulus_csv(const std::string& text) {
  Stimulus s;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (lineno == 1 && line.rfind("time_us", 0) == 0) continue;  // header
    std::istringstream ls(line);
    std::string t_str, net, level_str;
    if (!std::getline(ls, t_str, ',') || !std::getline(ls, net, ',') ||
        !std::getline(ls, level_str))
      throw std::invalid_argument("stimulus line " + std::to_string(lineno) +
                                  ": expected time_us,net,level");
    double t = std::stod(t_str) * 1e-6;
    int level = std::stoi(level_str);
    if (t < 0.0)
      throw std::invalid_argument("stimulus line " + std::to_string(lineno) +
                                  ": negative time");
    if (t == 0.0)
      s.initial[net] = level;
    else
      s.events.push_back({t, net, level});
  }
  std::stable_sort(s.events.begin(), s.events.end(),
                   [](const StimulusEvent& a, const StimulusEvent& b) {
                     return a.time < b.time;
                   });
  return s;
}

int Waveform::final_level(const std::string& net) const {
  auto it = changes.find(net);
  if (it == changes.end() || it->second.empty())
    throw std::invalid_argument("waveform: no records for net " + net);
  return it->second.back().second;
}

std::string waveform_to_csv(const Waveform& w) {
  std::ostringstream os;
  os << "time_us,net,level\n";
  // merged time order; ties break on net name for stable output
  std::vector<std::tuple<double, std::string, int>> rows;
  for (const auto& [net, recs] : w.changes)
    for (const auto& [t, level] : recs) rows.emplace_back(t, net, level);
  std::sort(rows.begin(), rows.end());
  os.precision(12);
  for (const auto& [t, net, level] : rows)
    os << t * 1e6 << ',' << net << ',' << level << "\n";
  return os.str();
}

std::vector<int> steady_state(const Netlist& n,
                              const std::map<std::string, int>& input_levels) {
  n.validate();
  std::unordered_map<std::string, int> level;
  level["const0"] = 0;
  level["const1"] = 1;
  for (const auto& in : n.inputs) {
    auto it = input_levels.find(in);
    if (it == input_levels.end())
      throw std::invalid_argument("steady_state: missing level for input " + in);
    level[in] = it->second ? 1 : 0;
  }
  std::vector<int> in_buf;
  for (int gi : n.topo_order()) {
    const Gate& g = n.gates[static_cast<size_t>(gi)];
    in_buf.clear();
    for (const auto& net : g.inputs) in_buf.push_back(level.at(net));
    level[g.output] = eval_gate(g.kind, in_buf);
  }
  std::vector<int> out;
  out.reserve(n.outputs.size());
  for (const auto& net : n.outputs) out.push_back(level.at(net));
  return out;
}

Waveform simulate(const Netlist& n, const Stimulus& s, double t_end,
                  const DelayModel& delays) {
  if (t_end < 0.0) throw std::invalid_argument("simulate: t_end must be >= 0");
  n.validate();

  std::unordered_map<std::string, int> level;
  level["const0"] = 0;
  level["const1"] = 1;
  for (const auto& in : n.inputs) {
    auto it = s.initial.find(in);
    if (it == s.initial.end())
      throw std::invalid_argument("simulate: input " + in +
                                  " has no initial level");
    level[in] = it->second ? 1 : 0;
  }
  // Gate outputs start at the zero-delay steady state of the initial inputs.
  std::vector<int> in_buf;
  auto order = n.topo_order();
  for (int gi : order) {
    const Gate& g = n.gates[static_cast<size_t>(gi)];
    in_buf.clear();
    for (const auto& net : g.inputs) in_buf.push_back(level.at(net));
    level[g.output] = eval_gate(g.kind, in_buf);
  }

  // fanout: net -> gate indices listening on it
  std::unordered_map<std::string, std::vector<int>> fanout;
  for (size_t gi = 0; gi < n.gates.size(); ++gi)
    for (const auto& net : n.gates[gi].inputs)
      fanout[net].push_back(static_cast<int>(gi));

  Waveform w;
  w.t_end = t_end;
  auto record = [&](const std::string& net, double t, int value) {
    auto& recs = w.changes[net];
    if (!recs.empty() && recs.back().second == value) return;
    recs.emplace_back(t, value);
  };
  for (const auto& in : n.inputs) record(in, 0.0, level[in]);
  for (const auto& g : n.gates) record(g.output, 0.0, level[g.output]);

  // Transport delay: each gate keeps the last value it scheduled; a new
  // evaluation only enqueues when it differs from that pending value.
  std::vector<int> pending(n.gates.size());
  for (size_t gi = 0; gi < n.gates.size(); ++gi)
    pending[gi] = level[n.gates[gi].output];

  struct Event {
    double time;
    int seq;       // insertion order, tie-breaks identical times
    bool is_stim;
    int gate;      // or index into stimulus events
    int value;
  };
  auto later = [](const Event& a, const Event& b) {
    if (a.time != b.time) return a.time > b.time;
    if (a.is_stim != b.is_stim) return b.is_stim;  // stimuli first
    return a.seq > b.seq;
  };
  std::priority_queue<Event, std::vector<Event>, decltype(later)> queue(later);
  int seq = 0;
  for (size_t si = 0; si < s.events.size(); ++si) {
    const auto& ev = s.events[si];
    if (std::find(n.inputs.begin(), n.inputs.end(), ev.net) == n.inputs.end())
      throw std::invalid_argument("simulate: stimulus drives non-input net " +
                                  ev.net);
    if (ev.time <= t_end)
      queue.push({ev.time, seq++, true, static_cast<int>(si), ev.level});
  }

  std::vector<int> touched;
  while (!queue.empty()) {
    double now = queue.top().time;
    // Commit every change arriving at this timestamp, then evaluate the
    // affected gates once, in gate order.
    touched.clear();
    while (!queue.empty() && queue.top().time == now) {
      Event ev = queue.top();
      queue.pop();
      const std::string& net = ev.is_stim
                                   ? s.events[static_cast<size_t>(ev.gate)].net
                                   : n.gates[static_cast<size_t>(ev.gate)].output;
      int value = ev.value ? 1 : 0;
      if (level[net] == value) continue;
      level[net] = value;
      record(net, now, value);
      auto it = fanout.find(net);
      if (it != fanout.end())
        touched.insert(touched.end(), it->second.begin(), it->second.end());
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int gi : touched) {
      const Gate& g = n.gates[static_cast<size_t>(gi)];
      in_buf.clear();
      for (const auto& net : g.inputs) in_buf.push_back(level.at(net));
      int value = eval_gate(g.kind, in_buf);
      if (value == pending[static_cast<size_t>(gi)]) continue;
      pending[static_cast<size_t>(gi)] = value;
      double at = now + delays.gate_delay(g, n.tech);
      if (at <= t_end) queue.push({at, seq++, false, gi, value});
    }
  }
  return w;
}

CriticalPath critical_path(const Netlist& n, const DelayModel& delays) {
  auto drivers = n.driver_map();
  std::vector<double> arrival(n.gates.size(), 0.0);
  std::vector<int> pred(n.gates.size(), -1);
  for (int gi : n.topo_order()) {
    const Gate& g = n.gates[static_cast<size_t>(gi)];
    double worst_in = 0.0;
    int worst_pred = -1;
    for (const auto& net : g.inputs) {
      if (is_const_net(net)) continue;
      int d = drivers.at(net);
      if (d >= 0 && arrival[static_cast<size_t>(d)] > worst_in) {
        worst_in = arrival[static_cast<size_t>(d)];
        worst_pred = d;
      }
    }
    arrival[static_cast<size_t>(gi)] = worst_in + delays.gate_delay(g, n.tech);
    pred[static_cast<size_t>(gi)] = worst_pred;
  }

  CriticalPath cp;
  int end = -1;
  for (const auto& out : n.outputs) {
    if (is_const_net(out)) continue;
    int d = drivers.at(out);
    if (d >= 0 && arrival[static_cast<size_t>(d)] > cp.delay) {
      cp.delay = arrival[static_cast<size_t>(d)];
      end = d;
    }
  }
  for (int g = end; g >= 0; g = pred[static_cast<size_t>(g)])
    cp.gate_ids.push_back(n.gates[static_cast<size_t>(g)].id);
  std::reverse(cp.gate_ids.begin(), cp.gate_ids.end());
  return cp;
}

}  // namespace rtl
