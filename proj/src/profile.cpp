#include "rtl/profile.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rtl {

namespace {
std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}
}  // namespace

Profile Profile::parse(const std::string& text) {
  Profile p;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("profile line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("profile line " + std::to_string(lineno) +
                                  ": empty key");
    p.kv_[key] = value;
  }
  return p;
}

Profile Profile::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open profile file " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse(os.str());
}

bool Profile::has(const std::string& key) const { return kv_.count(key) > 0; }

double Profile::number(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw std::invalid_argument("profile key " + key + ": not a number: " +
                                it->second);
  }
}

std::string Profile::text(const std::string& key,
                          const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

void Profile::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

CellProfile cell_profile_from(const Profile& p) {
  CellProfile c;
  c.v_high = p.number("v_high", c.v_high);
  c.v_low = p.number("v_low", c.v_low);
  c.r_input = p.number("r_input", c.r_input);
  std::string device = p.text("device", "inverter");
  if (device == "opamp")
    c.device = DeviceKind::Opamp;
  else if (device == "inverter")
    c.device = DeviceKind::InverterChain;
  else
    throw std::invalid_argument("profile: device must be inverter or opamp");
  c.delta_frac = p.number("delta_frac", c.delta_frac);
  c.delta_min = p.number("delta_min", c.delta_min);
  for (int i = 0; i < 3; ++i)
    c.stage_rail_frac[static_cast<size_t>(i)] =
        p.number("stage_rail_frac" + std::to_string(i),
                 c.stage_rail_frac[static_cast<size_t>(i)]);
  return c;
}

InverterParams inverter_params_from(const Profile& p) {
  InverterParams i;
  i.v_tn = p.number("v_tn", i.v_tn);
  i.v_tp = p.number("v_tp", i.v_tp);
  i.mu_p_w_p = p.number("mu_p_w_p", i.mu_p_w_p);
  i.mu_n_w_n = p.number("mu_n_w_n", i.mu_n_w_n);
  i.v_dd = p.number("v_dd", i.v_dd);
  return i;
}

MosfetBiasParams mosfet_bias_from(const Profile& p) {
  MosfetBiasParams m;
  m.v_tn0 = p.number("v_tn0", m.v_tn0);
  m.v_bs = p.number("v_bs", m.v_bs);
  m.v_bm = p.number("v_bm", m.v_bm);
  m.v_bx = p.number("v_bx", m.v_bx);
  m.n_a = p.number("n_a", m.n_a);
  m.n_i = p.number("n_i", m.n_i);
  m.temp = p.number("temp", m.temp);
  m.gamma1 = p.number("gamma1", m.gamma1);
  m.gamma2 = p.number("gamma2", m.gamma2);
  m.c_narrow = p.number("c_narrow", m.c_narrow);
  return m;
}

}  // namespace rtl
