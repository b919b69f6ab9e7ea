// Command-line front end: zero tables, zero-sum identity verification,
// hyperfactorial extremum reports, and the aggregate verification report,
// emitted as CSV or JSON.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psiroots/psiroots.hpp"

namespace {

using namespace psiroots;

std::string cache_dir_from_env() {
  const char* dir = std::getenv("DIGAMMA_ZEROS_CACHE");
  return dir ? dir : "";
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    write_file_atomic(out_path, payload);
  }
}

ZeroFamily parse_family(const std::string& name) {
  return name == "psi" ? ZeroFamily::Psi : ZeroFamily::PsiG;
}

std::vector<IdentityId> parse_identities(const std::string& id) {
  if (id == "all") {
    return {kAllIdentities, kAllIdentities + 6};
  }
  for (IdentityId cand : kAllIdentities) {
    if (id == identity_name(cand)) return {cand};
  }
  throw CLI::ValidationError("--id", "unknown identity '" + id + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zeros and extrema of digamma-related functions"};
  app.require_subcommand(1);

  unsigned threads = default_threads();
  app.add_option("--threads", threads, "worker threads (affects wall time only)")
      ->check(CLI::PositiveNumber);

  std::string family = "psi";
  std::string format = "csv";
  std::string out_path;
  std::string id = "all";
  std::int64_t k_max = 0;
  std::int64_t terms = 100000;
  std::int64_t n_max = 0;
  bool inject_error = false;

  auto* zeros_cmd = app.add_subcommand("zeros", "locate zeros of psi or psi_G");
  zeros_cmd->fallthrough();
  zeros_cmd->add_option("--family", family, "zero family")
      ->required()
      ->check(CLI::IsMember({"psi", "psig"}));
  zeros_cmd->add_option("--k-max", k_max, "largest zero index")
      ->required()
      ->check(CLI::NonNegativeNumber);
  zeros_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  zeros_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* sums_cmd = app.add_subcommand("sums", "verify closed-form zero-sum identities");
  sums_cmd->fallthrough();
  sums_cmd->add_option("--id", id, "identity id or 'all'");
  sums_cmd->add_option("--k", terms, "number of exactly-located zeros")
      ->check(CLI::Range(std::int64_t{50}, std::int64_t{10000000}));
  sums_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sums_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* extrema_cmd = app.add_subcommand("extrema", "hyperfactorial extremum report");
  extrema_cmd->fallthrough();
  extrema_cmd->add_option("--n-max", n_max, "largest negative-axis window index")
      ->required()
      ->check(CLI::NonNegativeNumber);
  extrema_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  extrema_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "run the full verification report (JSON)");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--out", out_path, "output path (default stdout)");
  verify_cmd->add_flag("--inject-wrong-constant", inject_error)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  const std::string cache_dir = cache_dir_from_env();

  try {
    if (zeros_cmd->parsed()) {
      const auto table = cached_zero_table(cache_dir, parse_family(family), k_max, threads);
      emit(format == "csv" ? zeros_csv(table) : zeros_json(table), out_path);
      return 0;
    }

    if (sums_cmd->parsed()) {
      const auto ids = parse_identities(id);
      std::vector<ZeroRecord> psi_zeros, psig_zeros;
      for (IdentityId i : ids) {
        auto& t = identity_family(i) == ZeroFamily::Psi ? psi_zeros : psig_zeros;
        if (t.empty()) {
          t = cached_zero_table(cache_dir, identity_family(i), terms - 1, threads);
        }
      }
      std::vector<SeriesResult> results;
      bool ok = true;
      for (IdentityId i : ids) {
        const auto& t = identity_family(i) == ZeroFamily::Psi ? psi_zeros : psig_zeros;
        results.push_back(verify_identity(i, terms, t, threads));
        ok = ok && results.back().rel_error <= identity_tolerance(i);
      }
      emit(format == "csv" ? sums_csv(results) : sums_json(results), out_path);
      return ok ? 0 : 1;
    }

    if (extrema_cmd->parsed()) {
      std::vector<ExtremumRecord> records;
      const auto [pos_max, pos_min] = find_positive_extrema();
      records.push_back(pos_max);
      records.push_back(pos_min);
      for (std::int64_t n = 1; n <= n_max; ++n) {
        for (const auto& e : find_negative_extrema(n)) records.push_back(e);
      }
      emit(format == "csv" ? extrema_csv(records) : extrema_json(records), out_path);
      return 0;
    }

    // verify
    const auto psi_zeros =
        cached_zero_table(cache_dir, ZeroFamily::Psi, kReportTableTerms - 1, threads);
    const auto psig_zeros =
        cached_zero_table(cache_dir, ZeroFamily::PsiG, kReportTableTerms - 1, threads);
    const auto report = build_verification_report(psi_zeros, psig_zeros, threads, inject_error);
    emit(report_json(report), out_path);
    return report.pass ? 0 : 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
