#include "rtl/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

#include "rtl/gate_cell.hpp"

namespace rtl {

const char* to_string(Technology t) {
  return t == Technology::Rtl ? "rtl" : "cmos";
}

bool is_const_net(const std::string& net) {
  return net == "const0" || net == "const1";
}

NetlistError::NetlistError(int line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg),
      line_(line) {}

std::map<std::string, int> Netlist::driver_map() const {
  std::map<std::string, int> drivers;
  for (const auto& in : inputs) {
    if (!drivers.emplace(in, -1).second)
      throw NetlistError(0, "duplicate primary input " + in);
  }
  for (size_t gi = 0; gi < gates.size(); ++gi) {
    const Gate& g = gates[gi];
    if (is_const_net(g.output))
      throw NetlistError(static_cast<int>(gi) + 1,
                         "gate " + g.id + " drives constant net " + g.output);
    if (!drivers.emplace(g.output, static_cast<int>(gi)).second)
      throw NetlistError(static_cast<int>(gi) + 1,
                         "net " + g.output + " driven more than once");
  }
  return drivers;
}

std::vector<int> Netlist::topo_order() const {
  auto drivers = driver_map();
  std::vector<int> indegree(gates.size(), 0);
  std::vector<std::vector<int>> fanout(gates.size());
  for (size_t gi = 0; gi < gates.size(); ++gi) {
    for (const auto& in : gates[gi].inputs) {
      if (is_const_net(in)) continue;
      auto it = drivers.find(in);
      if (it == drivers.end())
        throw NetlistError(static_cast<int>(gi) + 1,
                           "net " + in + " is not driven");
      if (it->second >= 0) {
        fanout[static_cast<size_t>(it->second)].push_back(static_cast<int>(gi));
        ++indegree[gi];
      }
    }
  }
  std::deque<int> ready;
  for (size_t gi = 0; gi < gates.size(); ++gi)
    if (indegree[gi] == 0) ready.push_back(static_cast<int>(gi));
  std::vector<int> order;
  order.reserve(gates.size());
  while (!ready.empty()) {
    int gi = ready.front();
    ready.pop_front();
    order.push_back(gi);
    for (int succ : fanout[static_cast<size_t>(gi)])
      if (--indegree[static_cast<size_t>(succ)] == 0) ready.push_back(succ);
  }
  if (order.size() != gates.size())
    throw NetlistError(0, "combinational cycle detected");
  return order;
}

void Netlist::validate() const {
  auto drivers = driver_map();
  for (size_t gi = 0; gi < gates.size(); ++gi) {
    const Gate& g = gates[gi];
    if (g.inputs.empty())
      throw NetlistError(static_cast<int>(gi) + 1,
                         "gate " + g.id + " has no inputs");
    if (g.kind == GateFn::Not && g.fan_in() != 1)
      throw NetlistError(static_cast<int>(gi) + 1,
                         "NOT gate " + g.id + " must have exactly one input");
    if (g.kind == GateFn::Xor)
      throw NetlistError(static_cast<int>(gi) + 1,
                         "gate " + g.id + ": XOR is not a netlist gate kind");
  }
  for (const auto& out : outputs) {
    if (!is_const_net(out) && !drivers.count(out))
      throw NetlistError(0, "output net " + out + " does not exist");
  }
  topo_order();  // driven-input and cycle checks
}

namespace {

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> parts;
  std::string tok;
  while (is >> tok) parts.push_back(tok);
  return parts;
}

std::vector<std::string> split_commas(const std::string& s, int line) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  for (const auto& p : parts)
    if (!valid_ident(p)) throw NetlistError(line, "bad net identifier '" + p + "'");
  return parts;
}

}  // namespace

Netlist parse_netlist(const std::string& text) {
  Netlist n;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto parts = split_ws(raw);
    if (parts.empty()) continue;
    const std::string& kw = parts[0];
    if (kw == "name") {
      if (parts.size() != 2 || !valid_ident(parts[1]))
        throw NetlistError(lineno, "expected: name <ident>");
      n.name = parts[1];
    } else if (kw == "tech") {
      if (parts.size() != 2 || (parts[1] != "rtl" && parts[1] != "cmos"))
        throw NetlistError(lineno, "expected: tech rtl|cmos");
      n.tech = parts[1] == "rtl" ? Technology::Rtl : Technology::Cmos;
    } else if (kw == "input" || kw == "output") {
      if (parts.size() < 2)
        throw NetlistError(lineno, "expected at least one net after " + kw);
      auto& dst = kw == "input" ? n.inputs : n.outputs;
      for (size_t i = 1; i < parts.size(); ++i) {
        if (!valid_ident(parts[i]))
          throw NetlistError(lineno, "bad net identifier '" + parts[i] + "'");
        dst.push_back(parts[i]);
      }
    } else if (kw == "gate") {
      if (parts.size() < 4)
        throw NetlistError(lineno,
                           "expected: gate <id> <KIND> in=... out=... [delay=...]");
      Gate g;
      g.id = parts[1];
      if (!valid_ident(g.id))
        throw NetlistError(lineno, "bad gate identifier '" + g.id + "'");
      auto kind = gate_fn_from_string(parts[2]);
      if (!kind || *kind == GateFn::Xor)
        throw NetlistError(lineno, "unknown gate kind '" + parts[2] + "'");
      g.kind = *kind;
      for (size_t i = 3; i < parts.size(); ++i) {
        const std::string& field = parts[i];
        if (field.rfind("in=", 0) == 0) {
          g.inputs = split_commas(field.substr(3), lineno);
        } else if (field.rfind("out=", 0) == 0) {
          g.output = field.substr(4);
          if (!valid_ident(g.output))
            throw NetlistError(lineno, "bad net identifier '" + g.output + "'");
        } else if (field.rfind("delay=", 0) == 0) {
          try {
            g.delay_override = std::stod(field.substr(6));
          } catch (const std::exception&) {
            throw NetlistError(lineno, "bad delay value '" + field + "'");
          }
        } else {
          throw NetlistError(lineno, "unknown gate field '" + field + "'");
        }
      }
      if (g.inputs.empty()) throw NetlistError(lineno, "gate " + g.id + " missing in=");
      if (g.output.empty()) throw NetlistError(lineno, "gate " + g.id + " missing out=");
      n.gates.push_back(std::move(g));
    } else {
      throw NetlistError(lineno, "unknown statement '" + kw + "'");
    }
  }
  try {
    n.validate();
  } catch (const NetlistError& e) {
    throw NetlistError(e.line(), e.what());
  }
  return n;
}

std::string emit_netlist(const Netlist& n) {
  std::ostringstream os;
  os.precision(17);
  if (!n.name.empty()) os << "name " << n.name << "\n";
  os << "tech " << to_string(n.tech) << "\n";
  if (!n.inputs.empty()) {
    os << "input";
    for (const auto& in : n.inputs) os << ' ' << in;
    os << "\n";
  }
  if (!n.outputs.empty()) {
    os << "output";
    for (const auto& out : n.outputs) os << ' ' << out;
    os << "\n";
  }
  for (const auto& g : n.gates) {
    os << "gate " << g.id << ' ' << to_string(g.kind) << " in=";
    for (size_t i = 0; i < g.inputs.size(); ++i)
      os << (i ? "," : "") << g.inputs[i];
    os << " out=" << g.output;
    if (g.delay_override) os << " delay=" << *g.delay_override;
    os << "\n";
  }
  return os.str();
}

Netlist gen_ripple_adder(int bits) {
  if (bits < 1) throw std::invalid_argument("gen_ripple_adder: bits must be >= 1");
  Netlist n;
  n.name = "adder" + std::to_string(bits);
  n.tech = Technology::Rtl;
  for (int i = 0; i < bits; ++i) n.inputs.push_back("a" + std::to_string(i));
  for (int i = 0; i < bits; ++i) n.inputs.push_back("b" + std::to_string(i));
  n.inputs.push_back("cin");

  auto add_gate = [&](const std::string& id, GateFn kind,
                      std::vector<std::string> in, const std::string& out) {
    n.gates.push_back(Gate{id, kind, std::move(in), out, std::nullopt});
  };

  std::string carry = "cin";
  for (int i = 0; i < bits; ++i) {
    std::string s = std::to_string(i);
    std::string a = "a" + s, b = "b" + s, c = carry;
    std::string na = "na" + s, nb = "nb" + s, nc = "nc" + s;
    add_gate("not_a" + s, GateFn::Not, {a}, na);
    add_gate("not_b" + s, GateFn::Not, {b}, nb);
    add_gate("not_c" + s, GateFn::Not, {c}, nc);
    // sum in canonical SOP: a^b^c has minterms 001, 010, 100, 111
    add_gate("sm0_" + s, GateFn::And, {na, nb, c}, "sm0_" + s);
    add_gate("sm1_" + s, GateFn::And, {na, b, nc}, "sm1_" + s);
    add_gate("sm2_" + s, GateFn::And, {a, nb, nc}, "sm2_" + s);
    add_gate("sm3_" + s, GateFn::And, {a, b, c}, "sm3_" + s);
    add_gate("sum" + s, GateFn::Or,
             {"sm0_" + s, "sm1_" + s, "sm2_" + s, "sm3_" + s}, "s" + s);
    // carry = ab + bc + ac
    add_gate("cp0_" + s, GateFn::And, {a, b}, "cp0_" + s);
    add_gate("cp1_" + s, GateFn::And, {b, c}, "cp1_" + s);
    add_gate("cp2_" + s, GateFn::And, {a, c}, "cp2_" + s);
    std::string cout = i + 1 == bits ? "cout" : "c" + std::to_string(i + 1);
    add_gate("carry" + s, GateFn::Or, {"cp0_" + s, "cp1_" + s, "cp2_" + s},
             cout);
    carry = cout;
  }
  for (int i = 0; i < bits; ++i) n.outputs.push_back("s" + std::to_string(i));
  n.outputs.push_back("cout");
  n.validate();
  return n;
}

Netlist gen_mux(int n_data) {
  if (n_data < 2 || (n_data & (n_data - 1)) != 0)
    throw std::invalid_argument("gen_mux: size must be a power of two >= 2");
  int sel_bits = 0;
  while ((1 << sel_bits) < n_data) ++sel_bits;

  Netlist n;
  n.name = "mux" + std::to_string(n_data);
  n.tech = Technology::Rtl;
  for (int j = 0; j < sel_bits; ++j) n.inputs.push_back("s" + std::to_string(j));
  for (int i = 0; i < n_data; ++i) n.inputs.push_back("d" + std::to_string(i));
  n.outputs.push_back("y");

  for (int j = 0; j < sel_bits; ++j) {
    std::string s = std::to_string(j);
    n.gates.push_back(
        Gate{"not_s" + s, GateFn::Not, {"s" + s}, "ns" + s, std::nullopt});
  }
  std::vector<std::string> terms;
  for (int i = 0; i < n_data; ++i) {
    std::string id = std::to_string(i);
    std::vector<std::string> in{"d" + id};
    for (int j = 0; j < sel_bits; ++j) {
      bool set = (i >> j) & 1;
      in.push_back((set ? "s" : "ns") + std::to_string(j));
    }
    n.gates.push_back(Gate{"and" + id, GateFn::And, std::move(in), "t" + id,
                           std::nullopt});
    terms.push_back("t" + id);
  }
  n.gates.push_back(Gate{"or_y", GateFn::Or, std::move(terms), "y", std::nullopt});
  n.validate();
  return n;
}

Netlist decompose_fanin(const Netlist& src, int cap) {
  if (cap < 2) throw std::invalid_argument("decompose_fanin: cap must be >= 2");
  Netlist n;
  n.name = src.name;
  n.tech = Technology::Cmos;
  n.inputs = src.inputs;
  n.outputs = src.outputs;

  for (const auto& g : src.gates) {
    if (g.fan_in() <= cap || g.kind == GateFn::Not) {
      n.gates.push_back(g);
      continue;
    }
    // Reduce with balanced layers of same-kind associative gates; NAND/NOR
    // keep the inversion in the single root gate.
    GateFn tree_kind =
        (g.kind == GateFn::And || g.kind == GateFn::Nand) ? GateFn::And
                                                          : GateFn::Or;
    std::vector<std::string> signals = g.inputs;
    int layer = 0;
    int serial = 0;
    while (static_cast<int>(signals.size()) > cap) {
      int width = static_cast<int>(signals.size());
      int groups = (width + cap - 1) / cap;
      std::vector<std::string> next;
      int pos = 0;
      for (int gi = 0; gi < groups; ++gi) {
        // balanced split: spread the remainder over the leading groups
        int size = width / groups + (gi < width % groups ? 1 : 0);
        std::vector<std::string> in(signals.begin() + pos,
                                    signals.begin() + pos + size);
        pos += size;
        if (size == 1) {
          next.push_back(in[0]);
          continue;
        }
        std::string out =
            g.id + "_l" + std::to_string(layer) + "_" + std::to_string(serial);
        n.gates.push_back(
            Gate{out, tree_kind, std::move(in), out, g.delay_override});
        next.push_back(out);
        ++serial;
      }
      signals = std::move(next);
      ++layer;
    }
    n.gates.push_back(
        Gate{g.id, g.kind, std::move(signals), g.output, g.delay_override});
  }
  n.validate();
  return n;
}

ComponentStats& ComponentStats::operator+=(const ComponentStats& o) {
  for (const auto& [k, v] : o.gate_count) gate_count[k] += v;
  memristor_count += o.memristor_count;
  transistor_count += o.transistor_count;
  opamp_count += o.opamp_count;
  area_um2 += o.area_um2;
  return *this;
}

ComponentStats component_stats(const Netlist& n, const AreaModel& model) {
  ComponentStats s;
  for (const auto& g : n.gates) {
    s.gate_count[std::string(to_string(g.kind)) + std::to_string(g.fan_in())]++;
    if (n.tech == Technology::Rtl) {
      s.memristor_count += g.fan_in() + 1;  // inputs plus reference
      if (model.opamp_threshold) {
        s.opamp_count += 1;
        s.transistor_count += 8 + 2;  // opamp plus parity inverter
      } else {
        s.transistor_count += 2 * chain_stages(g.kind);
      }
    } else {
      switch (g.kind) {
        case GateFn::Not:
          s.transistor_count += 2;
          break;
        case GateFn::Nand:
        case GateFn::Nor:
          s.transistor_count += 2 * g.fan_in();
          break;
        default:  // AND/OR carry an appended inverter
          s.transistor_count += 2 * g.fan_in() + 2;
          break;
      }
    }
  }
  s.area_um2 = static_cast<double>(s.memristor_count) * model.memristor_area_um2 +
               static_cast<double>(s.transistor_count) * model.transistor_area_um2;
  return s;
}

std::string stats_summary(const ComponentStats& s) {
  std::ostringstream os;
  long gates = 0;
  for (const auto& [k, v] : s.gate_count) gates += v;
  os << "gates: " << gates << " (";
  bool first = true;
  for (const auto& [k, v] : s.gate_count) {
    os << (first ? "" : ", ") << v << "x " << k;
    first = false;
  }
  os << ")\n";
  os << "memristors: " << s.memristor_count << "\n";
  os << "transistors: " << s.transistor_count << "\n";
  os << "opamps: " << s.opamp_count << "\n";
  os << "area_um2: " << s.area_um2 << "\n";
  return os.str();
}

}  // namespace rtl
