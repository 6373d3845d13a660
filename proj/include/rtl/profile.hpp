#pragma once

#include <map>
#include <string>

#include "rtl/gate_cell.hpp"
#include "rtl/threshold.hpp"

namespace rtl {

// Flat `key = value` files; '#' starts a comment. Values stay as strings,
// numeric accessors convert on demand.
class Profile {
 public:
  Profile() = default;
  static Profile parse(const std::string& text);
  static Profile load(const std::string& path);

  bool has(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  void set(const std::string& key, const std::string& value);

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

// Defaults are the "tsmc025-like" working profile; any key can be
// overridden from the file. Keys match the struct field names.
CellProfile cell_profile_from(const Profile& p);
InverterParams inverter_params_from(const Profile& p);
MosfetBiasParams mosfet_bias_from(const Profile& p);

}  // namespace rtl
