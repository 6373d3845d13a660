#pragma once

#include <string>
#include <vector>

namespace rtl::repro {

struct Result {
  std::string name;
  std::string csv;                 // plot-ready data
  std::vector<std::string> notes;  // check lines and discrepancy flags
  bool ok = true;
};

// Reference-data reproduction scripts: divider currents vs fan-in, the
// two-input truth table, tolerance Monte Carlo, NOR window bounds, the
// V_tn/V_th NAND sweep, the delay table, the adder/mux comparison and the
// adder waveform. Names: table1, table2, fig2, fig3, fig5, table5, table7,
// fig8.
Result run(const std::string& name);
std::vector<std::string> names();

}  // namespace rtl::repro
