// Command-line front end for the resistive threshold logic kit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rtl/analysis.hpp"
#include "rtl/bool_compiler.hpp"
#include "rtl/gate_cell.hpp"
#include "rtl/netlist.hpp"
#include "rtl/profile.hpp"
#include "rtl/repro.hpp"
#include "rtl/simulator.hpp"
#include "rtl/threshold.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitIo = 66;

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot open " + path + " for writing");
  f << content;
}

rtl::Profile load_profile(const std::string& path) {
  return path.empty() ? rtl::Profile() : rtl::Profile::load(path);
}

int cmd_gate(const std::string& fn_name, int n, double m_flag,
             const std::string& profile_path, const std::string& device) {
  auto fn = rtl::gate_fn_from_string(fn_name);
  if (!fn || *fn == rtl::GateFn::Xor) {
    std::cerr << "gate: unsupported function '" << fn_name
              << "' (use nand, nor, and, or, not)\n";
    return kExitUsage;
  }
  rtl::Profile prof = load_profile(profile_path);
  if (!device.empty()) prof.set("device", device);
  rtl::CellProfile cell_prof = rtl::cell_profile_from(prof);

  rtl::GateCellConfig cell;
  try {
    cell = rtl::build_cell(*fn, n, cell_prof);
    if (m_flag > 0.0) {
      cell.divider.m = m_flag;
      bool and_family = *fn == rtl::GateFn::Nand || *fn == rtl::GateFn::And;
      cell.window =
          and_family
              ? rtl::nand_window(n, m_flag, cell_prof.v_high, cell_prof.v_low)
              : rtl::nor_window(n, m_flag, cell_prof.v_high, cell_prof.v_low);
      if (!cell.window.feasible()) throw std::runtime_error("window infeasible");
      cell.effective_threshold = cell.window.midpoint();
    }
  } catch (const std::runtime_error& e) {
    std::cerr << "gate: infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  }

  std::cout << "function: " << rtl::to_string(*fn) << "\n";
  std::cout << "n: " << n << "\n";
  std::cout << "m: " << cell.divider.m << "\n";
  std::cout << "window: (" << cell.window.low << ", " << cell.window.high
            << ")\n";
  std::cout << "threshold: " << cell.effective_threshold << "\n";
  auto nm = rtl::cell_noise_margin(cell);
  std::cout << "noise_margin: low " << nm.nm_low << ", high " << nm.nm_high
            << "\n";
  std::cout << rtl::cell_to_profile_text(cell);

  // truth table: exhaustive for small n, boundary rows otherwise
  std::cout << "truth:\n";
  auto show_row = [&](const std::vector<int>& in) {
    for (int b : in) std::cout << b;
    std::cout << " -> " << rtl::evaluate(cell, in) << "\n";
  };
  if (n <= 4) {
    for (int row = 0; row < (1 << n); ++row) {
      std::vector<int> in(static_cast<size_t>(n));
      for (int b = 0; b < n; ++b) in[static_cast<size_t>(b)] = (row >> (n - 1 - b)) & 1;
      show_row(in);
    }
  } else {
    for (int k : {0, 1, n - 1, n}) {
      std::vector<int> in(static_cast<size_t>(n), 0);
      for (int b = 0; b < k; ++b) in[static_cast<size_t>(b)] = 1;
      show_row(in);
    }
  }
  return kExitOk;
}

int cmd_compile(const std::string& expr, const std::string& table_path,
                const std::string& tech, int fanin_cap,
                const std::string& out_path) {
  rtl::Cover cover;
  try {
    rtl::TruthTable table;
    if (!expr.empty()) {
      table = rtl::to_truth_table(rtl::parse_expr(expr));
    } else {
      table = rtl::parse_truth_table(read_file(table_path));
    }
    cover = rtl::quine_mccluskey(table);
  } catch (const rtl::CompileError& e) {
    std::cerr << "compile: " << e.what() << "\n";
    return kExitParse;
  }
  rtl::Netlist net = tech == "cmos" ? rtl::synthesize_cmos(cover, fanin_cap)
                                    : rtl::synthesize_rtl(cover);
  write_file(out_path, rtl::emit_netlist(net));
  std::cout << rtl::stats_summary(rtl::component_stats(net));
  return kExitOk;
}

int cmd_mc(int n, double tol, int trials, uint64_t seed, int k,
           const std::string& out_path) {
  rtl::DividerConfig c{n, 100e3, 1.0, 1.0, 0.0};
  std::vector<int> all_high(static_cast<size_t>(n), 1);
  rtl::PerturbationSpec spec{tol, k, trials, seed};
  rtl::SensitivityResult res = rtl::perturb_sensitivity(c, all_high, spec);
  std::cout << "max_pct_change: " << res.max_pct_change << "\n";
  std::cout << "mean_pct_change: " << res.mean_pct_change << "\n";
  std::cout << "analytic_worst_pct: "
            << rtl::analytic_worst_case_pct(c, all_high, tol) << "\n";
  if (!out_path.empty()) write_file(out_path, rtl::samples_csv(res));
  return kExitOk;
}

int run_repro(const std::string& which, const std::string& out_dir) {
  bool all_ok = true;
  std::vector<std::string> selected =
      which == "all" ? rtl::repro::names() : std::vector<std::string>{which};
  for (const auto& name : selected) {
    rtl::repro::Result res = rtl::repro::run(name);
    std::cout << "== " << res.name << " ==\n";
    for (const auto& line : res.notes) std::cout << line << "\n";
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      write_file(out_dir + "/" + res.name + ".csv", res.csv);
    } else {
      std::cout << res.csv;
    }
    all_ok = all_ok && res.ok;
  }
  std::cout << (all_ok ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return all_ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resistive threshold logic design kit"};
  app.require_subcommand(1);

  // gate
  auto* gate = app.add_subcommand("gate", "solve a single universal cell");
  std::string gate_fn, gate_profile, gate_device;
  int gate_n = 2;
  double gate_m = 0.0;
  gate->add_option("--fn", gate_fn, "nand|nor|and|or|not")->required();
  gate->add_option("--n", gate_n, "fan-in")->required();
  gate->add_option("--m", gate_m, "override R0/Ri ratio");
  gate->add_option("--profile", gate_profile, "device profile file");
  gate->add_option("--device", gate_device, "inverter|opamp");

  // compile
  auto* compile = app.add_subcommand("compile", "boolean function to netlist");
  std::string comp_expr, comp_table, comp_tech = "rtl", comp_out = "out.net";
  int comp_cap = 5;
  auto* expr_opt = compile->add_option("--expr", comp_expr, "boolean expression");
  auto* table_opt =
      compile->add_option("--table", comp_table, "truth table file");
  expr_opt->excludes(table_opt);
  compile->add_option("--tech", comp_tech, "rtl|cmos")
      ->check(CLI::IsMember({"rtl", "cmos"}));
  compile->add_option("--fanin-cap", comp_cap, "CMOS fan-in cap");
  compile->add_option("-o,--output", comp_out, "netlist output path");

  // gen
  auto* gen = app.add_subcommand("gen", "structural generators");
  auto* gen_adder = gen->add_subcommand("adder", "ripple-carry adder");
  auto* gen_mux_cmd = gen->add_subcommand("mux", "n-to-1 multiplexer");
  gen->require_subcommand(1);
  int adder_bits = 16, mux_size = 16;
  std::string gen_out = "out.net";
  gen_adder->add_option("--bits", adder_bits, "operand width");
  gen_mux_cmd->add_option("--size", mux_size, "data inputs (power of two)");
  gen_adder->add_option("-o,--output", gen_out, "netlist output path");
  gen_mux_cmd->add_option("-o,--output", gen_out, "netlist output path");

  // sim
  auto* sim = app.add_subcommand("sim", "event-driven simulation");
  std::string sim_net, sim_stim, sim_out = "wave.csv";
  double sim_t_end_us = 100.0;
  sim->add_option("--netlist", sim_net, "netlist file")->required();
  sim->add_option("--stim", sim_stim, "stimulus CSV")->required();
  sim->add_option("--t-end", sim_t_end_us, "end time, microseconds");
  sim->add_option("-o,--output", sim_out, "waveform CSV path");

  // mc
  auto* mc = app.add_subcommand("mc", "divider tolerance Monte Carlo");
  int mc_n = 100, mc_trials = 10000, mc_k = 0;
  double mc_tol = 0.10;
  uint64_t mc_seed = 42;
  mc->add_option("--n", mc_n, "fan-in")->required();
  mc->add_option("--tol", mc_tol, "tolerance fraction");
  mc->add_option("--trials", mc_trials, "trial count");
  mc->add_option("--seed", mc_seed, "RNG seed");
  mc->add_option("--k", mc_k, "resistors perturbed per trial (0 = all)");
  std::string mc_out;
  mc->add_option("-o,--output", mc_out, "sample dump CSV path");

  // compare
  auto* compare = app.add_subcommand("compare", "netlist comparison report");
  std::string cmp_a, cmp_b, cmp_csv;
  compare->add_option("--a", cmp_a, "first netlist")->required();
  compare->add_option("--b", cmp_b, "second netlist")->required();
  compare->add_option("--csv", cmp_csv, "also write CSV report here");

  // power
  auto* power = app.add_subcommand("power", "power estimate");
  std::string pow_net;
  double pow_activity = 1.0;
  power->add_option("--netlist", pow_net, "netlist file")->required();
  power->add_option("--p-high", pow_activity, "input high probability");

  // repro
  auto* repro = app.add_subcommand("repro", "reference-data reproduction");
  std::string repro_name = "all", repro_out;
  repro->add_option("name", repro_name, "script name or 'all'");
  repro->add_option("-o,--outdir", repro_out, "CSV output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gate) return cmd_gate(gate_fn, gate_n, gate_m, gate_profile, gate_device);
    if (*compile) {
      if (comp_expr.empty() == comp_table.empty()) {
        std::cerr << "compile: exactly one of --expr/--table is required\n";
        return kExitUsage;
      }
      return cmd_compile(comp_expr, comp_table, comp_tech, comp_cap, comp_out);
    }
    if (*gen) {
      rtl::Netlist n = *gen_adder ? rtl::gen_ripple_adder(adder_bits)
                                  : rtl::gen_mux(mux_size);
      write_file(gen_out, rtl::emit_netlist(n));
      std::cout << rtl::stats_summary(rtl::component_stats(n));
      return kExitOk;
    }
    if (*sim) {
      rtl::Netlist n;
      rtl::Stimulus stim;
      try {
        n = rtl::parse_netlist(read_file(sim_net));
        stim = rtl::parse_stimulus_csv(read_file(sim_stim));
      } catch (const rtl::NetlistError& e) {
        std::cerr << "sim: " << sim_net << ": " << e.what() << "\n";
        return kExitParse;
      }
      rtl::Waveform w = rtl::simulate(n, stim, sim_t_end_us * 1e-6);
      write_file(sim_out, rtl::waveform_to_csv(w));
      rtl::CriticalPath cp = rtl::critical_path(n);
      std::cout << "critical_path_us: " << cp.delay * 1e6 << "\n";
      return kExitOk;
    }
    if (*mc) return cmd_mc(mc_n, mc_tol, mc_trials, mc_seed, mc_k, mc_out);
    if (*compare) {
      rtl::Netlist a, b;
      try {
        a = rtl::parse_netlist(read_file(cmp_a));
        b = rtl::parse_netlist(read_file(cmp_b));
      } catch (const rtl::NetlistError& e) {
        std::cerr << "compare: " << e.what() << "\n";
        return kExitParse;
      }
      rtl::CompareReport r = rtl::compare_report(a, b);
      std::cout << rtl::report_text(r);
      if (!cmp_csv.empty()) write_file(cmp_csv, rtl::report_csv(r));
      return kExitOk;
    }
    if (*power) {
      rtl::Netlist n;
      try {
        n = rtl::parse_netlist(read_file(pow_net));
      } catch (const rtl::NetlistError& e) {
        std::cerr << "power: " << e.what() << "\n";
        return kExitParse;
      }
      std::cout << "power_w: "
                << rtl::power_estimate(n, {}, {pow_activity}) << "\n";
      return kExitOk;
    }
    if (*repro) return run_repro(repro_name, repro_out);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
