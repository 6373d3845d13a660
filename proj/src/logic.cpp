#include "rtl/logic.hpp"

namespace rtl {

const char* to_string(GateFn fn) {
  switch (fn) {
    case GateFn::Nand: return "NAND";
    case GateFn::Nor: return "NOR";
    case GateFn::And: return "AND";
    case GateFn::Or: return "OR";
    case GateFn::Not: return "NOT";
    case GateFn::Xor: return "XOR";
  }
  return "?";
}

std::optional<GateFn> gate_fn_from_string(std::string_view s) {
  std::string up;
  up.reserve(s.size());
  for (char c : s) up.push_back(static_cast<char>(c >= 'a' && c <= 'z' ? c - 32 : c));
  if (up == "NAND") return GateFn::Nand;
  if (up == "NOR") return GateFn::Nor;
  if (up == "AND") return GateFn::And;
  if (up == "OR") return GateFn::Or;
  if (up == "NOT") return GateFn::Not;
  if (up == "XOR") return GateFn::Xor;
  return std::nullopt;
}

bool inverting_parity(GateFn fn) {
  switch (fn) {
    case GateFn::Nand:
    case GateFn::Nor:
    case GateFn::Not:
      return true;
    default:
      return false;
  }
}

}  // namespace rtl
