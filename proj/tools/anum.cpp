// anum: Cartier-Manin matrices and a-numbers of hyperelliptic curves.
//
// Exit status: 0 success, 1 verification mismatch, 2 usage error,
// 3 curve validation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "anum/cartier.hpp"
#include "anum/closedform.hpp"
#include "anum/curves.hpp"
#include "anum/harness.hpp"
#include "anum/report_io.hpp"

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurveArgs {
  std::uint64_t p = 0;
  std::string family;
  std::optional<std::uint64_t> m;
  std::string poly;
};

struct GridArgs {
  std::string p_list;
  std::string families = "A,B";
  std::string k_range = "0..3";
  std::string patterns = "sp+1,sp-1,sp";
  std::optional<unsigned> threads;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

anum::Prime parse_prime(std::uint64_t value, const std::string& flag) {
  try {
    return anum::Prime(value);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

anum::FamilyTag parse_family(const std::string& name, const std::string& flag) {
  if (name == "A" || name == "a") return anum::FamilyTag::A;
  if (name == "B" || name == "b") return anum::FamilyTag::B;
  throw UsageError(flag + ": unknown family '" + name + "' (expected A or B)");
}

anum::CurveSpec build_curve(const CurveArgs& args) {
  const anum::Prime p = parse_prime(args.p, "--p");
  const bool has_family = !args.family.empty();
  const bool has_poly = !args.poly.empty();
  if (has_family == has_poly) throw UsageError("--family/--m: give exactly one of --family with --m, or --poly");
  if (has_family && !args.m) throw UsageError("--m: required with --family");
  if (has_poly && args.m) throw UsageError("--m: not allowed with --poly");

  anum::CurveFamily family;
  if (has_family) {
    family = parse_family(args.family, "--family") == anum::FamilyTag::A ? anum::CurveFamily::family_a(*args.m)
                                                                         : anum::CurveFamily::family_b(*args.m);
  } else {
    try {
      family = anum::CurveFamily::generic(anum::parse_coefficients(args.poly));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--poly: ") + e.what());
    }
  }
  return anum::make_curve(p, family);
}

anum::SweepGrid build_grid(const GridArgs& args) {
  anum::SweepGrid grid;
  const auto primes = split(args.p_list, ',');
  if (primes.empty()) throw UsageError("--p-list: at least one prime is required");
  for (const auto& token : primes) {
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError("--p-list: bad prime '" + token + "'");
    }
    grid.primes.push_back(parse_prime(v, "--p-list"));
  }

  const auto families = split(args.families, ',');
  if (families.empty()) throw UsageError("--families: at least one family is required");
  for (const auto& f : families) grid.families.push_back(parse_family(f, "--families"));

  const auto dots = args.k_range.find("..");
  try {
    if (dots == std::string::npos) {
      grid.k_min = grid.k_max = std::stoll(args.k_range);
    } else {
      grid.k_min = std::stoll(args.k_range.substr(0, dots));
      grid.k_max = std::stoll(args.k_range.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw UsageError("--k-range: expected LO..HI, got '" + args.k_range + "'");
  }
  if (grid.k_min < 0 || grid.k_max < grid.k_min) throw UsageError("--k-range: need 0 <= LO <= HI");

  const auto patterns = split(args.patterns, ',');
  if (patterns.empty()) throw UsageError("--patterns: at least one pattern is required");
  for (const auto& token : patterns) {
    try {
      grid.patterns.push_back(anum::parse_pattern(token));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--patterns: ") + e.what());
    }
  }
  return grid;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw UsageError("--output: cannot open '" + output + "'");
  out << text;
}

std::string render(const anum::SweepResult& result, const std::string& format) {
  if (format == "csv") return anum::to_csv(result.reports);
  if (format == "json") return anum::to_json(result.reports).dump(2) + '\n';
  return anum::to_text(result);
}

void add_curve_flags(CLI::App* cmd, CurveArgs& args) {
  cmd->add_option("--p", args.p, "odd prime characteristic")->required();
  cmd->add_option("--family", args.family, "curve family: A (x^m+1) or B (x^m+x)");
  cmd->add_option("--m", args.m, "exponent m for --family");
  cmd->add_option("--poly", args.poly, "coefficients of f, constant term first, e.g. 1,0,0,1");
}

void add_grid_flags(CLI::App* cmd, GridArgs& args) {
  cmd->add_option("--p-list", args.p_list, "comma-separated primes")->required();
  cmd->add_option("--families", args.families, "comma-separated families (A,B)")->capture_default_str();
  cmd->add_option("--k-range", args.k_range, "inclusive k range LO..HI")->capture_default_str();
  cmd->add_option("--patterns", args.patterns, "sp+1, sp-1, sp with optional :odd/:even/:both")->capture_default_str();
  cmd->add_option("--threads", args.threads, "worker threads (overrides ANUM_THREADS)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cartier-Manin matrices and a-numbers of hyperelliptic curves y^2 = f(x)"};
  app.require_subcommand(1);

  CurveArgs curve_args;
  GridArgs grid_args;
  std::string format = "text";
  std::string output;
  const auto formats = CLI::IsMember({"text", "json", "csv"});

  auto* compute = app.add_subcommand("compute", "genus, rank and a-number of one curve");
  add_curve_flags(compute, curve_args);
  compute->add_option("--format", format, "text, json or csv")->capture_default_str()->check(formats);
  compute->add_option("--output", output, "output file (default stdout)");

  auto* matrix = app.add_subcommand("matrix", "dump the Cartier-Manin matrix");
  add_curve_flags(matrix, curve_args);
  matrix->add_option("--output", output, "output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "compute a-numbers over a parameter grid");
  add_grid_flags(sweep, grid_args);
  sweep->add_option("--format", format, "text, json or csv")->capture_default_str()->check(formats);
  sweep->add_option("--output", output, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "check the closed forms over a parameter grid");
  add_grid_flags(verify, grid_args);
  verify->add_option("--format", format, "text, json or csv")->capture_default_str()->check(formats);
  verify->add_option("--output", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (compute->parsed() || matrix->parsed()) {
      const anum::CurveSpec spec = build_curve(curve_args);
      if (matrix->parsed()) {
        emit(anum::format_matrix_dump(spec, anum::cartier_matrix(spec)), output);
        return 0;
      }
      const anum::ANumberReport report = anum::evaluate(spec);
      if (format == "csv") {
        emit(anum::to_csv({report}), output);
      } else if (format == "json") {
        emit(anum::to_json(report).dump(2) + '\n', output);
      } else {
        emit(anum::to_text(report), output);
      }
      return 0;
    }

    const anum::SweepGrid grid = build_grid(grid_args);
    anum::SweepOptions options;
    options.threads = grid_args.threads;
    if (sweep->parsed()) {
      const anum::SweepResult result = anum::sweep(grid, options);
      emit(render(result, format), output);
      if (format != "text") {
        for (const auto& s : result.skips) std::cerr << anum::to_text(s) << '\n';
      }
      return 0;
    }

    const anum::VerifyResult result = anum::verify(grid, options);
    if (format == "text") {
      std::ostringstream os;
      for (const auto& r : result.mismatches) os << "MISMATCH " << anum::csv_row(r) << '\n';
      for (const auto& s : result.sweep.skips) os << anum::to_text(s) << '\n';
      os << result.sweep.reports.size() << " points checked, " << result.mismatches.size() << " mismatches, "
         << result.sweep.skips.size() << " skipped\n";
      emit(os.str(), output);
    } else {
      anum::SweepResult mismatches{result.mismatches, result.sweep.skips};
      emit(render(mismatches, format), output);
    }
    return result.exit_status == 0 ? 0 : kExitMismatch;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const anum::CurveError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const anum::SlotLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
