#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rtl {

// Boolean functions a single cell (or netlist gate) can realize. Xor is
// accepted by the expression compiler and the window enumerator, but it is
// not threshold-realizable and never appears in a netlist.
enum class GateFn { Nand, Nor, And, Or, Not, Xor };

const char* to_string(GateFn fn);
std::optional<GateFn> gate_fn_from_string(std::string_view s);

// Number of logical inversions between the comparator and the cell output.
// Odd for NAND/NOR/NOT, even for AND/OR.
bool inverting_parity(GateFn fn);

}  // namespace rtl
