#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtl/netlist.hpp"

namespace rtl {

constexpr int kMaxExprVars = 24;   // truth-table materialization guard
constexpr int kMaxQmVars = 16;     // tabulation cost guard

struct SourcePos {
  int line = 1;
  int col = 1;
};

class CompileError : public std::runtime_error {
 public:
  CompileError(SourcePos pos, const std::string& msg);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct BoolExpr {
  enum class Kind { Var, Not, And, Or, Xor };
  Kind kind = Kind::Var;
  int var = -1;  // index into ParsedExpr::vars when kind == Var
  std::unique_ptr<BoolExpr> lhs, rhs;
  SourcePos pos;
};

struct ParsedExpr {
  std::unique_ptr<BoolExpr> root;
  std::vector<std::string> vars;  // order of first appearance
};

// Grammar (precedence NOT > AND > XOR > OR):
//   expr   := xterm ('|' xterm)*
//   xterm  := term ('^' term)*
//   term   := factor ('&' factor)*
//   factor := '!' factor | '(' expr ')' | ident
ParsedExpr parse_expr(const std::string& text);

// assignment bit i = value of vars[i]
bool eval_expr(const BoolExpr& e, uint32_t assignment);

// 2^n rows in binary counting order; vars[0] is the most significant row
// bit. out values: 0, 1, or 2 for don't-care.
struct TruthTable {
  std::vector<std::string> vars;
  std::vector<uint8_t> out;

  int n_vars() const { return static_cast<int>(vars.size()); }
  // row index -> eval_expr-style assignment (bit i = vars[i])
  uint32_t row_assignment(uint32_t row) const;
};

TruthTable to_truth_table(const ParsedExpr& e);

// Per-variable pattern of '0', '1', '-'.
struct Implicant {
  std::string pattern;

  int literal_count() const;
  bool covers(const TruthTable& t, uint32_t row) const;
};

struct Cover {
  std::vector<std::string> vars;
  std::vector<Implicant> implicants;
};

// One implicant per on-set minterm, no minimization.
Cover canonical_sop(const TruthTable& t);

// Prime implicant generation, essential-prime extraction, then greedy
// largest-coverage set cover. The result is functionally equal to the table
// (don't-cares may resolve either way), not guaranteed minimum.
Cover quine_mccluskey(const TruthTable& t);

bool cover_eval(const Cover& c, uint32_t row);

// Two-level wide-gate netlist: shared NOTs for complemented literals, one
// AND per multi-literal implicant, one OR when there are >= 2 implicants.
// Constant functions tie the output to const0/const1.
Netlist synthesize_rtl(const Cover& c, const std::string& out_net = "f");

// synthesize_rtl followed by decompose_fanin(cap); Technology::Cmos.
Netlist synthesize_cmos(const Cover& c, int fanin_cap,
                        const std::string& out_net = "f");

// Header of variable names, then `<bits> <0|1|->` rows; unlisted rows are 0.
TruthTable parse_truth_table(const std::string& text);

}  // namespace rtl
