// compcc: command-line front end for comparison decision trees, comparison
// protocols and geometric tilings.
//
// Exit codes: 0 ok, 1 usage or invalid input, 2 verification failed,
// 3 parse error, 4 cap exceeded. Failures print one line
// `error[<kind>]: <message>` to stderr.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "compcc/compcc.hpp"

namespace {

using namespace compcc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitParse = 3;
constexpr int kExitCap = 4;

constexpr int kCountFormulaCap = 6;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return kExitParse;
    case ErrorKind::cap_exceeded: return kExitCap;
    case ErrorKind::invalid_argument:
    case ErrorKind::internal: return kExitUsage;
  }
  return kExitUsage;
}

void emit(const std::string& output_path, const std::string& text) {
  if (output_path.empty()) {
    std::cout << text;
  } else {
    io::write_file(output_path, text);
  }
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// Strip counts of the canonical minimum tiling.
std::pair<std::size_t, std::size_t> strip_counts(const FunctionMatrix& m, const Tiling& t) {
  const StripLayout s = strip_layout(m, t);
  return {s.row_starts.size(), s.col_starts.size()};
}

int cmd_analyze(const std::string& input) {
  const auto doc = io::parse_function(io::read_file(input));
  std::ostringstream out;
  if (const auto* tt = std::get_if<TruthTable>(&doc)) {
    const BlockDecomposition d = blocks(*tt);
    out << "kind: truth_table\n"
        << "n: " << tt->arity() << "\n"
        << "mu: " << mu(*tt) << "\n"
        << "dcomp: " << dcomp(*tt) << "\n"
        << "first_value: " << static_cast<int>(d.first_value) << "\n"
        << "boundaries:";
    for (const Input b : d.boundaries) out << " " << b;
    out << "\n";
  } else {
    const auto& m = std::get<FunctionMatrix>(doc);
    const Tiling t = chi_geom_tiling(m);
    const std::size_t chi = t.tiles.size();
    const auto [r, c] = strip_counts(m, t);
    out << "kind: matrix\n";
    if (const auto n = m.arity()) out << "n: " << *n << "\n";
    out << "rows: " << m.rows() << "\n"
        << "cols: " << m.cols() << "\n"
        << "chi_geom: " << chi << "\n"
        << "log2_chi_geom: " << std::fixed << std::setprecision(6) << std::log2(static_cast<double>(chi))
        << "\n"
        << "ceil_log2_chi_geom: " << ceil_log2(chi) << "\n"
        << "rank: " << rank(m) << "\n"
        << "row_strips: " << r << "\n"
        << "col_strips: " << c << "\n";
  }
  std::cout << out.str();
  return kExitOk;
}

int cmd_build(const std::string& what, const std::string& input, const std::string& output) {
  const std::string text = io::read_file(input);
  if (what == "tree") {
    emit(output, io::serialize(build_tree(io::parse_truth_table(text))));
    return kExitOk;
  }
  const FunctionMatrix m = io::parse_matrix(text);
  const Tiling t = chi_geom_tiling(m);
  if (what == "tiling") {
    emit(output, io::serialize(t, m.rows(), m.cols()));
  } else {
    emit(output, io::serialize(protocol_from_tiling(m, t)));
  }
  return kExitOk;
}

int cmd_verify(const std::string& artifact_path, const std::string& function_path) {
  const std::string artifact = io::read_file(artifact_path);
  const std::string function = io::read_file(function_path);
  std::ostringstream out;
  bool ok = false;
  switch (io::sniff(artifact)) {
    case io::DocumentKind::tree: {
      const ComparisonTree tree = io::parse_tree(artifact);
      const TruthTable tt = io::parse_truth_table(function);
      const TreeVerdict v = verify_tree(tree, tt);
      ok = v.correct;
      out << "ok: " << yes_no(ok) << "\n"
          << "depth: " << v.depth << "\n"
          << "dcomp: " << dcomp(tt) << "\n"
          << "depth_at_least_dcomp: " << yes_no(v.depth >= dcomp(tt)) << "\n"
          << "optimal: " << yes_no(v.depth == dcomp(tt)) << "\n";
      if (v.witness) out << "witness: y=" << *v.witness << "\n";
      break;
    }
    case io::DocumentKind::protocol: {
      const Protocol p = io::parse_protocol(artifact);
      const FunctionMatrix m = io::parse_matrix(function);
      const ProtocolVerdict v = verify_protocol(p, m);
      const std::size_t chi = chi_geom(m);
      const int n = m.require_arity();
      ok = v.correct;
      out << "ok: " << yes_no(ok) << "\n"
          << "cost: " << v.cost << "\n"
          << "chi_geom: " << chi << "\n"
          << "lower_bound: " << ceil_log2(chi) << "\n"
          << "cost_at_least_lower_bound: " << yes_no(v.cost >= ceil_log2(chi)) << "\n"
          << "cost_within_2n_plus_1: " << yes_no(v.cost <= 2 * n + 1) << "\n";
      if (v.witness) out << "witness: x=" << v.witness->first << " y=" << v.witness->second << "\n";
      break;
    }
    case io::DocumentKind::tiling: {
      const io::TilingDocument doc = io::parse_tiling(artifact);
      const FunctionMatrix m = io::parse_matrix(function);
      if (doc.rows != m.rows() || doc.cols != m.cols()) {
        fail(ErrorKind::invalid_argument, "tiling shape does not match the matrix");
      }
      const TilingVerdict v = verify_tiling(m, doc.tiling);
      const std::size_t chi = chi_geom(m);
      ok = v.valid;
      out << "ok: " << yes_no(ok) << "\n"
          << "tiles: " << doc.tiling.tiles.size() << "\n"
          << "chi_geom: " << chi << "\n"
          << "minimal: " << yes_no(ok && doc.tiling.tiles.size() == chi) << "\n";
      if (!ok) out << "failure: " << v.describe() << "\n";
      break;
    }
    case io::DocumentKind::function:
      fail(ErrorKind::invalid_argument, "first file must be a tree, protocol or tiling document");
  }
  std::cout << out.str();
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_oracle(const std::string& target, const std::string& input, int cap) {
  const std::string text = io::read_file(input);
  std::size_t exact = 0;
  std::size_t fast = 0;
  if (target == "dtree-depth") {
    const TruthTable tt = io::parse_truth_table(text);
    exact = static_cast<std::size_t>(min_depth_oracle(tt, cap > 0 ? cap : kTreeOracleCap));
    fast = static_cast<std::size_t>(dcomp(tt));
  } else {
    const FunctionMatrix m = io::parse_matrix(text);
    const std::size_t cell_cap = cap > 0 ? static_cast<std::size_t>(cap) : kPartitionOracleCap;
    if (target == "min-partition") {
      const CellRegion region = CellRegion::of_color(m, 1);
      exact = min_partition_oracle(region, cell_cap);
      fast = min_partition(region).size();
    } else {
      exact = chi_geom_oracle(m, cell_cap);
      fast = chi_geom(m);
    }
  }
  std::cout << "target: " << target << "\n"
            << "oracle: " << exact << "\n"
            << "fast: " << fast << "\n"
            << "agree: " << yes_no(exact == fast) << "\n";
  return exact == fast ? kExitOk : kExitVerifyFailed;
}

int cmd_count(int n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "n must be positive");
  if (n > kCountFormulaCap) {
    fail(ErrorKind::cap_exceeded,
         "count arity " + std::to_string(n) + " exceeds cap " + std::to_string(kCountFormulaCap));
  }
  const std::uint64_t size = std::uint64_t{1} << n;
  std::ostringstream out;
  out << "n: " << n << "\n" << "k count_by_mu\n";
  BigInt above_half = 0;
  for (std::uint64_t k = 1; k <= size; ++k) {
    const BigInt c = count_by_mu(n, k);
    out << k << " " << c << "\n";
    if (k > size / 2) above_half += c;
  }
  const BigInt max_count = count_max_complexity(n);
  bool ok = above_half == max_count;
  out << "max_complexity: " << max_count << "\n"
      << "sum_over_k_above_half: " << above_half << "\n";
  if (n <= kEnumerationCap) {
    const auto histogram = enumerate_histogram(n);
    bool agree = true;
    out << "histogram:";
    for (const auto& [k, c] : histogram) {
      out << " " << k << ":" << c;
      agree = agree && BigInt(c) == count_by_mu(n, k);
    }
    out << "\n" << "enumeration_agrees: " << yes_no(agree) << "\n";
    ok = ok && agree;
  } else {
    out << "enumeration: skipped (n > " << kEnumerationCap << ")\n";
  }
  std::cout << out.str();
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_render(const std::string& input, const std::string& format, const std::string& output) {
  const std::string text = io::read_file(input);
  Tiling t;
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (io::sniff(text) == io::DocumentKind::tiling) {
    io::TilingDocument doc = io::parse_tiling(text);
    t = std::move(doc.tiling);
    rows = doc.rows;
    cols = doc.cols;
  } else {
    const FunctionMatrix m = io::parse_matrix(text);
    t = chi_geom_tiling(m);
    rows = m.rows();
    cols = m.cols();
  }
  emit(output, format == "svg" ? render_svg(t, rows, cols) : render_ascii(t, rows, cols));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparison decision trees, comparison protocols and geometric tilings"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string function;
  std::string format = "ascii";
  std::string what;
  int cap = 0;
  int n = 0;

  auto* analyze = app.add_subcommand("analyze", "Complexity measures of a truth table or matrix");
  analyze->add_option("--input", input, "Truth table or matrix file")->required();

  auto* build = app.add_subcommand("build", "Synthesize a tree, tiling or protocol");
  build->add_option("what", what, "tree | tiling | protocol")
      ->required()
      ->check(CLI::IsMember({"tree", "tiling", "protocol"}));
  build->add_option("--input", input, "Truth table (tree) or matrix file")->required();
  build->add_option("--output", output, "Destination (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Exhaustively check an artifact against a function");
  verify->add_option("--input", input, "Tree, protocol or tiling document")->required();
  verify->add_option("--function", function, "Truth table or matrix file")->required();

  auto* oracle = app.add_subcommand("oracle", "Run a brute-force oracle");
  oracle->add_option("target", what, "dtree-depth | min-partition | chi-geom")
      ->required()
      ->check(CLI::IsMember({"dtree-depth", "min-partition", "chi-geom"}));
  oracle->add_option("--input", input, "Input file")->required();
  oracle->add_option("--cap", cap, "Override the oracle cap (arity or cell count)");

  auto* count = app.add_subcommand("count", "Counting formulas for mu and D^comp");
  count->add_option("n", n, "Arity")->required();

  auto* render = app.add_subcommand("render", "Draw a tiling (or a matrix's minimum tiling)");
  render->add_option("--input", input, "Tiling or matrix file")->required();
  render->add_option("--format", format, "ascii | svg")->check(CLI::IsMember({"ascii", "svg"}));
  render->add_option("--output", output, "Destination (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error[usage]: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(input);
    if (*build) return cmd_build(what, input, output);
    if (*verify) return cmd_verify(input, function);
    if (*oracle) return cmd_oracle(what, input, cap);
    if (*count) return cmd_count(n);
    if (*render) return cmd_render(input, format, output);
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
