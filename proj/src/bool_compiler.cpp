#include "rtl/bool_compiler.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace rtl {

CompileError::CompileError(SourcePos pos, const std::string& msg)
    : std::runtime_error("line " + std::to_string(pos.line) + ", col " +
                         std::to_string(pos.col) + ": " + msg),
      pos_(pos) {}

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  ParsedExpr parse() {
    ParsedExpr result;
    result.root = parse_or(result);
    skip_ws();
    if (!at_end()) fail("unexpected trailing input");
    return result;
  }

 private:
  std::unique_ptr<BoolExpr> parse_or(ParsedExpr& ctx) {
    auto lhs = parse_xor(ctx);
    skip_ws();
    while (peek() == '|') {
      SourcePos op = pos();
      advance();
      lhs = binary(BoolExpr::Kind::Or, std::move(lhs), parse_xor(ctx), op);
      skip_ws();
    }
    return lhs;
  }

  std::unique_ptr<BoolExpr> parse_xor(ParsedExpr& ctx) {
    auto lhs = parse_and(ctx);
    skip_ws();
    while (peek() == '^') {
      SourcePos op = pos();
      advance();
      lhs = binary(BoolExpr::Kind::Xor, std::move(lhs), parse_and(ctx), op);
      skip_ws();
    }
    return lhs;
  }

  std::unique_ptr<BoolExpr> parse_and(ParsedExpr& ctx) {
    auto lhs = parse_factor(ctx);
    skip_ws();
    while (peek() == '&') {
      SourcePos op = pos();
      advance();
      lhs = binary(BoolExpr::Kind::And, std::move(lhs), parse_factor(ctx), op);
      skip_ws();
    }
    return lhs;
  }

  std::unique_ptr<BoolExpr> parse_factor(ParsedExpr& ctx) {
    skip_ws();
    SourcePos at = pos();
    char c = peek();
    if (c == '!') {
      advance();
      auto node = std::make_unique<BoolExpr>();
      node->kind = BoolExpr::Kind::Not;
      node->lhs = parse_factor(ctx);
      node->pos = at;
      return node;
    }
    if (c == '(') {
      advance();
      auto inner = parse_or(ctx);
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      advance();
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                           peek() == '_')) {
        name.push_back(peek());
        advance();
      }
      auto node = std::make_unique<BoolExpr>();
      node->kind = BoolExpr::Kind::Var;
      node->pos = at;
      auto it = std::find(ctx.vars.begin(), ctx.vars.end(), name);
      if (it == ctx.vars.end()) {
        if (static_cast<int>(ctx.vars.size()) >= kMaxExprVars)
          throw CompileError(at, "too many distinct variables (max " +
                                     std::to_string(kMaxExprVars) + ")");
        node->var = static_cast<int>(ctx.vars.size());
        ctx.vars.push_back(name);
      } else {
        node->var = static_cast<int>(it - ctx.vars.begin());
      }
      return node;
    }
    fail(at_end() ? "unexpected end of input" : "unexpected character");
    return nullptr;
  }

  std::unique_ptr<BoolExpr> binary(BoolExpr::Kind kind,
                                   std::unique_ptr<BoolExpr> lhs,
                                   std::unique_ptr<BoolExpr> rhs,
                                   SourcePos at) {
    auto node = std::make_unique<BoolExpr>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    node->pos = at;
    return node;
  }

  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[i_]; }
  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
      advance();
  }
  SourcePos pos() const { return {line_, col_}; }
  [[noreturn]] void fail(const std::string& msg) {
    throw CompileError(pos(), msg);
  }

  const std::string& text_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

ParsedExpr parse_expr(const std::string& text) {
  return ExprParser(text).parse();
}

bool eval_expr(const BoolExpr& e, uint32_t assignment) {
  switch (e.kind) {
    case BoolExpr::Kind::Var:
      return (assignment >> e.var) & 1u;
    case BoolExpr::Kind::Not:
      return !eval_expr(*e.lhs, assignment);
    case BoolExpr::Kind::And:
      return eval_expr(*e.lhs, assignment) && eval_expr(*e.rhs, assignment);
    case BoolExpr::Kind::Or:
      return eval_expr(*e.lhs, assignment) || eval_expr(*e.rhs, assignment);
    case BoolExpr::Kind::Xor:
      return eval_expr(*e.lhs, assignment) != eval_expr(*e.rhs, assignment);
  }
  return false;
}

uint32_t TruthTable::row_assignment(uint32_t row) const {
  // row bit order: vars[0] is the most significant counting bit
  uint32_t a = 0;
  int n = n_vars();
  for (int v = 0; v < n; ++v)
    if ((row >> (n - 1 - v)) & 1u) a |= 1u << v;
  return a;
}

TruthTable to_truth_table(const ParsedExpr& e) {
  int n = static_cast<int>(e.vars.size());
  if (n > kMaxExprVars)
    throw CompileError({}, "too many variables for truth table");
  TruthTable t;
  t.vars = e.vars;
  t.out.resize(1u << n);
  for (uint32_t row = 0; row < t.out.size(); ++row)
    t.out[row] = eval_expr(*e.root, t.row_assignment(row)) ? 1 : 0;
  return t;
}

int Implicant::literal_count() const {
  return static_cast<int>(
      std::count_if(pattern.begin(), pattern.end(), [](char c) { return c != '-'; }));
}

bool Implicant::covers(const TruthTable& t, uint32_t row) const {
  int n = t.n_vars();
  for (int v = 0; v < n; ++v) {
    char want = pattern[static_cast<size_t>(v)];
    if (want == '-') continue;
    int bit = (row >> (n - 1 - v)) & 1u;
    if ((want == '1') != (bit == 1)) return false;
  }
  return true;
}

bool cover_eval(const Cover& c, uint32_t row) {
  TruthTable probe;
  probe.vars = c.vars;
  return std::any_of(c.implicants.begin(), c.implicants.end(),
                     [&](const Implicant& imp) { return imp.covers(probe, row); });
}

namespace {

std::string row_pattern(uint32_t row, int n) {
  std::string p(static_cast<size_t>(n), '0');
  for (int v = 0; v < n; ++v)
    if ((row >> (n - 1 - v)) & 1u) p[static_cast<size_t>(v)] = '1';
  return p;
}

// Merge two patterns differing in exactly one specified position.
std::optional<std::string> merge_patterns(const std::string& a,
                                          const std::string& b) {
  int diff = -1;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (a[i] == '-' || b[i] == '-' || diff >= 0) return std::nullopt;
    diff = static_cast<int>(i);
  }
  if (diff < 0) return std::nullopt;
  std::string merged = a;
  merged[static_cast<size_t>(diff)] = '-';
  return merged;
}

std::vector<uint32_t> minterms_covered(const std::string& pattern, int n) {
  std::vector<int> free_pos;
  uint32_t base = 0;
  for (int v = 0; v < n; ++v) {
    char c = pattern[static_cast<size_t>(v)];
    if (c == '-')
      free_pos.push_back(n - 1 - v);
    else if (c == '1')
      base |= 1u << (n - 1 - v);
  }
  std::vector<uint32_t> rows;
  rows.reserve(1u << free_pos.size());
  for (uint32_t mask = 0; mask < (1u << free_pos.size()); ++mask) {
    uint32_t row = base;
    for (size_t i = 0; i < free_pos.size(); ++i)
      if ((mask >> i) & 1u) row |= 1u << free_pos[i];
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Cover canonical_sop(const TruthTable& t) {
  if (t.n_vars() > kMaxExprVars)
    throw CompileError({}, "too many variables for canonical SOP");
  Cover c;
  c.vars = t.vars;
  for (uint32_t row = 0; row < t.out.size(); ++row)
    if (t.out[row] == 1) c.implicants.push_back({row_pattern(row, t.n_vars())});
  return c;
}

Cover quine_mccluskey(const TruthTable& t) {
  int n = t.n_vars();
  if (n > kMaxQmVars)
    throw CompileError({}, "quine_mccluskey: more than " +
                               std::to_string(kMaxQmVars) + " variables");
  Cover result;
  result.vars = t.vars;

  std::vector<uint32_t> on_set;
  std::set<std::string> current;
  for (uint32_t row = 0; row < t.out.size(); ++row) {
    if (t.out[row] == 1) on_set.push_back(row);
    if (t.out[row] == 1 || t.out[row] == 2)
      current.insert(row_pattern(row, n));
  }
  if (on_set.empty()) return result;  // constant 0

  // Tabulation: repeatedly merge adjacent implicants; anything never merged
  // is prime.
  std::set<std::string> primes;
  while (!current.empty()) {
    std::set<std::string> merged_set;
    std::set<std::string> used;
    std::vector<std::string> items(current.begin(), current.end());
    for (size_t i = 0; i < items.size(); ++i) {
      for (size_t j = i + 1; j < items.size(); ++j) {
        if (auto merged = merge_patterns(items[i], items[j])) {
          merged_set.insert(*merged);
          used.insert(items[i]);
          used.insert(items[j]);
        }
      }
    }
    for (const auto& item : items)
      if (!used.count(item)) primes.insert(item);
    current = std::move(merged_set);
  }

  // Essential primes, then greedy largest-coverage over the remainder.
  std::vector<std::string> prime_list(primes.begin(), primes.end());
  std::map<uint32_t, std::vector<int>> coverers;
  std::vector<std::vector<uint32_t>> covers(prime_list.size());
  std::set<uint32_t> on(on_set.begin(), on_set.end());
  for (size_t p = 0; p < prime_list.size(); ++p) {
    for (uint32_t row : minterms_covered(prime_list[p], n))
      if (on.count(row)) {
        covers[p].push_back(row);
        coverers[row].push_back(static_cast<int>(p));
      }
  }
  std::set<uint32_t> uncovered(on_set.begin(), on_set.end());
  std::set<int> chosen;
  for (const auto& [row, ps] : coverers) {
    if (ps.size() == 1) chosen.insert(ps[0]);
  }
  for (int p : chosen)
    for (uint32_t row : covers[static_cast<size_t>(p)]) uncovered.erase(row);
  while (!uncovered.empty()) {
    int best = -1;
    size_t best_gain = 0;
    for (size_t p = 0; p < prime_list.size(); ++p) {
      if (chosen.count(static_cast<int>(p))) continue;
      size_t gain = 0;
      for (uint32_t row : covers[p]) gain += uncovered.count(row);
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<int>(p);
      }
    }
    chosen.insert(best);
    for (uint32_t row : covers[static_cast<size_t>(best)]) uncovered.erase(row);
  }
  for (int p : chosen)
    result.implicants.push_back({prime_list[static_cast<size_t>(p)]});

  // Internal exhaustive check: functional equality on every specified row.
  for (uint32_t row = 0; row < t.out.size(); ++row) {
    if (t.out[row] == 2) continue;
    if (cover_eval(result, row) != (t.out[row] == 1))
      throw std::logic_error("quine_mccluskey: cover does not match the table");
  }
  return result;
}

Netlist synthesize_rtl(const Cover& c, const std::string& out_net) {
  Netlist n;
  n.name = "synth";
  n.tech = Technology::Rtl;
  n.inputs = c.vars;

  int nvars = static_cast<int>(c.vars.size());
  if (nvars == 0) throw std::invalid_argument("synthesize_rtl: no variables");

  // A no-literal implicant makes the function constant 1; an empty cover is
  // constant 0. Both tie the output to a constant pseudo-input.
  bool const1 = std::any_of(c.implicants.begin(), c.implicants.end(),
                            [](const Implicant& i) { return i.literal_count() == 0; });
  if (const1 || c.implicants.empty()) {
    n.outputs.push_back(const1 ? "const1" : "const0");
    n.validate();
    return n;
  }

  // Shared inverters for every variable complemented anywhere in the cover.
  std::map<int, std::string> inverted;
  for (const auto& imp : c.implicants)
    for (int v = 0; v < nvars; ++v)
      if (imp.pattern[static_cast<size_t>(v)] == '0' && !inverted.count(v)) {
        std::string net = "n_" + c.vars[static_cast<size_t>(v)];
        n.gates.push_back(Gate{"inv_" + c.vars[static_cast<size_t>(v)],
                               GateFn::Not,
                               {c.vars[static_cast<size_t>(v)]},
                               net,
                               std::nullopt});
        inverted[v] = net;
      }

  bool single_term = c.implicants.size() == 1;
  std::vector<std::string> term_nets;
  for (size_t ti = 0; ti < c.implicants.size(); ++ti) {
    const auto& imp = c.implicants[ti];
    std::vector<std::string> literals;
    for (int v = 0; v < nvars; ++v) {
      char want = imp.pattern[static_cast<size_t>(v)];
      if (want == '1') literals.push_back(c.vars[static_cast<size_t>(v)]);
      else if (want == '0') literals.push_back(inverted.at(v));
    }
    if (literals.size() == 1) {
      term_nets.push_back(literals[0]);
      continue;
    }
    std::string net = single_term ? out_net : "t" + std::to_string(ti);
    n.gates.push_back(
        Gate{"and_t" + std::to_string(ti), GateFn::And, std::move(literals), net,
             std::nullopt});
    term_nets.push_back(net);
  }
  if (single_term) {
    n.outputs.push_back(term_nets[0]);
  } else {
    n.gates.push_back(
        Gate{"or_" + out_net, GateFn::Or, std::move(term_nets), out_net,
             std::nullopt});
    n.outputs.push_back(out_net);
  }
  n.validate();
  return n;
}

Netlist synthesize_cmos(const Cover& c, int fanin_cap,
                        const std::string& out_net) {
  Netlist cmos = decompose_fanin(synthesize_rtl(c, out_net), fanin_cap);
  return cmos;
}

TruthTable parse_truth_table(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  TruthTable t;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> parts;
    std::string tok;
    while (ls >> tok) parts.push_back(tok);
    if (parts.empty()) continue;
    if (!have_header) {
      t.vars = parts;
      if (t.n_vars() > kMaxExprVars)
        throw CompileError({lineno, 1}, "too many variables");
      t.out.assign(1ull << t.n_vars(), 0);
      have_header = true;
      continue;
    }
    if (parts.size() != 2)
      throw CompileError({lineno, 1}, "expected: <bits> <0|1|->");
    const std::string& bits = parts[0];
    if (static_cast<int>(bits.size()) != t.n_vars())
      throw CompileError({lineno, 1}, "row width does not match header");
    uint32_t row = 0;
    for (char b : bits) {
      if (b != '0' && b != '1')
        throw CompileError({lineno, 1}, "bad bit character in row");
      row = (row << 1) | static_cast<uint32_t>(b - '0');
    }
    if (parts[1] == "0") t.out[row] = 0;
    else if (parts[1] == "1") t.out[row] = 1;
    else if (parts[1] == "-") t.out[row] = 2;
    else throw CompileError({lineno, 1}, "output must be 0, 1 or -");
  }
  if (!have_header) throw CompileError({1, 1}, "missing header line");
  return t;
}

}  // namespace rtl
