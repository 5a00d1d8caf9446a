// sigmabias: certified density bounds and comparison censuses for the sum of
// divisors over the progressions mn and mn+1.
//
//   sigmabias bound  --modulus 30 --smooth-y 157 --cap 1000000000
//   sigmabias sieve  --modulus 30 --limit 1000000
//   sigmabias lambda --k 30

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sigmabias/density.hpp"
#include "sigmabias/errors.hpp"
#include "sigmabias/report_io.hpp"
#include "sigmabias/sieve.hpp"
#include "sigmabias/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCheckpoint = 3;

std::string resolve_checkpoint_path(const std::string& flag_value) {
  if (flag_value.empty()) return flag_value;
  std::filesystem::path p(flag_value);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SIGMABIAS_CHECKPOINT_DIR"); dir && *dir)
      p = std::filesystem::path(dir) / p;
  }
  return p.string();
}

struct BoundArgs {
  sigmabias::BoundConfig config;
  std::string mode = "auto";
  std::string checkpoint;
  std::string output = "bound_report.txt";
  std::string format = "text";
  bool quiet = false;
};

int run_bound(BoundArgs& args) {
  using namespace sigmabias;
  if (args.mode == "exact")
    args.config.mode = AccumMode::kExact;
  else if (args.mode == "fast")
    args.config.mode = AccumMode::kFast;
  else if (args.mode == "auto")
    args.config.mode = AccumMode::kAuto;
  else {
    std::cerr << "sigmabias: unknown accumulation mode '" << args.mode << "'\n";
    return kExitUsage;
  }
  if (args.format == "csv-dump")
    args.config.collect_pair_csv = true;
  else if (args.format != "text") {
    std::cerr << "sigmabias: unknown format '" << args.format << "'\n";
    return kExitUsage;
  }
  args.config.checkpoint_path = resolve_checkpoint_path(args.checkpoint);
  if (!args.quiet && args.config.cap >= 100'000'000)
    std::cerr << "sigmabias: cap " << args.config.cap
              << " is a long run (minutes at the default settings); consider --workers\n";
  if (!args.quiet)
    args.config.progress = [](std::uint64_t done, std::uint64_t total) {
      std::cerr << "\rsigmabias: " << done << "/" << total << " b values" << std::flush;
      if (done == total) std::cerr << '\n';
    };
  const BoundReport report = density_upper_bound(args.config);
  atomic_write_file(args.output, bound_report_text(report));
  std::cout << "upper bound (display, rounded up): " << report.display << "\n"
            << "pairs: " << report.pair_count << "  valid: " << report.valid_pair_count << "\n"
            << "report: " << args.output << "\n";
  return kExitOk;
}

struct SieveArgs {
  sigmabias::SieveConfig config;
  bool extended = false;
  bool gap_scan = false;
  std::string output = "sieve_report.txt";
  std::string format = "text";
};

int run_sieve(SieveArgs& args) {
  using namespace sigmabias;
  if (args.config.limit > 1'000'000 && !args.extended) {
    std::cerr << "sigmabias: limits above 1e6 need --extended\n";
    return kExitUsage;
  }
  if (args.format == "csv-dump") {
    if (args.config.csv_row_cap == 0) args.config.csv_row_cap = 100'000;
  } else if (args.format != "text") {
    std::cerr << "sigmabias: unknown format '" << args.format << "'\n";
    return kExitUsage;
  }
  if (!args.gap_scan) args.config.gap_list_cap = 0;
  const SieveReport report = compare_progressions(args.config);
  atomic_write_file(args.output, sieve_report_text(report));
  std::cout << "n <= " << report.limit << ": less " << report.count_less << ", equal "
            << report.count_equal << ", greater " << report.count_greater << "\n";
  if (args.gap_scan) {
    std::cout << "gap cases (B \\ C): " << report.gap_count << " [";
    for (std::size_t i = 0; i < report.gap_list.size(); ++i)
      std::cout << (i ? " " : "") << report.gap_list[i];
    std::cout << "]\n";
  }
  std::cout << "report: " << args.output << "\n";
  return kExitOk;
}

struct LambdaArgs {
  std::uint64_t k = 30;
  unsigned exponent = 1;
  bool full = false;
  sigmabias::LambdaParams params;
};

int run_lambda(const LambdaArgs& args) {
  using namespace sigmabias;
  const Factored kf = default_factorizer().factorize(args.k);
  const Enclosure enc = lambda_constant(kf, args.exponent, args.params);
  std::cout << "Lambda_" << args.k << "(" << args.exponent << ") enclosure\n";
  std::cout << "lo_decimal: " << decimal_string(enc.lo, 15, Rounding::kDown) << "\n";
  std::cout << "hi_decimal: " << decimal_string(enc.hi, 15, Rounding::kUp) << "\n";
  auto fraction = [&](const char* name, const BigRational& v) {
    const std::string s = rational_string(v);
    if (args.full || s.size() <= 120)
      std::cout << name << ": " << s << "\n";
    else
      std::cout << name << ": (" << s.size() << "-character fraction; pass --full to print)\n";
  };
  fraction("lo", enc.lo);
  fraction("hi", enc.hi);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified sigma-comparison engine over arithmetic progressions"};
  app.set_version_flag("--version", sigmabias::kVersion);
  app.require_subcommand(1);

  BoundArgs bound;
  CLI::App* cmd_bound = app.add_subcommand("bound", "certified upper density bound");
  cmd_bound->add_option("--modulus,-m", bound.config.modulus, "even squarefree modulus m");
  cmd_bound->add_option("--smooth-y,-y", bound.config.smooth_y, "smoothness bound y");
  cmd_bound->add_option("--cap,-z", bound.config.cap, "pair cap z (a*b <= z)");
  cmd_bound->add_option("--exponent,-r", bound.config.exponent, "moment exponent r");
  cmd_bound->add_option("--zeta-terms", bound.config.zeta_terms, "terms in the zeta(2) bracket");
  cmd_bound->add_option("--mode", bound.mode, "accumulation: auto|exact|fast");
  cmd_bound->add_option("--workers,-j", bound.config.workers, "worker threads");
  cmd_bound->add_option("--checkpoint", bound.checkpoint,
                        "checkpoint file (resumes if it exists; relative paths go under "
                        "$SIGMABIAS_CHECKPOINT_DIR)");
  cmd_bound->add_option("--output,-o", bound.output, "report path");
  cmd_bound->add_option("--format", bound.format, "text|csv-dump (per-pair dump, cap <= 1e6)");
  cmd_bound->add_flag("--quiet,-q", bound.quiet, "suppress progress output");

  SieveArgs sieve;
  CLI::App* cmd_sieve = app.add_subcommand("sieve", "sigma comparison census");
  cmd_sieve->add_option("--modulus,-m", sieve.config.modulus, "modulus m >= 2");
  cmd_sieve->add_option("--limit,-n", sieve.config.limit, "compare n = 1..limit")
      ->check(CLI::PositiveNumber);
  cmd_sieve->add_option("--block-size", sieve.config.block_values, "sieve values per block");
  cmd_sieve->add_option("--workers,-j", sieve.config.workers, "worker threads");
  cmd_sieve->add_flag("--extended", sieve.extended, "allow limits above 1e6");
  cmd_sieve->add_flag("--gap-scan", sieve.gap_scan, "list the B \\ C gap cases");
  cmd_sieve->add_option("--gap-cap", sieve.config.gap_list_cap, "max gap cases listed");
  cmd_sieve->add_option("--csv-cap", sieve.config.csv_row_cap, "max CSV rows (with --format csv-dump)");
  cmd_sieve->add_option("--output,-o", sieve.output, "report path");
  cmd_sieve->add_option("--format", sieve.format, "text|csv-dump");

  LambdaArgs lambda;
  CLI::App* cmd_lambda = app.add_subcommand("lambda", "enclosure of Lambda_k(r)");
  cmd_lambda->add_option("--k,-k", lambda.k, "modulus k")->check(CLI::PositiveNumber);
  cmd_lambda->add_option("--exponent,-r", lambda.exponent, "moment exponent r");
  cmd_lambda->add_option("--zeta-terms", lambda.params.zeta_terms, "terms in the zeta(2) bracket");
  cmd_lambda->add_option("--prime-cutoff", lambda.params.prime_cutoff, "Euler product cutoff (r >= 2)");
  cmd_lambda->add_flag("--full", lambda.full, "print exact fractions no matter how long");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_bound->parsed()) return run_bound(bound);
    if (cmd_sieve->parsed()) return run_sieve(sieve);
    if (cmd_lambda->parsed()) return run_lambda(lambda);
  } catch (const sigmabias::CheckpointError& e) {
    std::cerr << "sigmabias: " << e.what() << "\n";
    return kExitCheckpoint;
  } catch (const sigmabias::ConfigError& e) {
    std::cerr << "sigmabias: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "sigmabias: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "sigmabias: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
