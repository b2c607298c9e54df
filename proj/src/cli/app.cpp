#include "primorials/cli/app.hpp"

#include "primorials/cli/report.hpp"
#include "primorials/cli/scan_state.hpp"
#include "primorials/errors.hpp"
#include "primorials/primes.hpp"
#include "primorials/primorial.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace primorials::cli {
namespace {

struct Options {
  PipelinePolicy policy;
  unsigned threads = 0;
  std::string format = "csv";
  std::string cache;
  std::string output;
  bool no_timings = false;
  std::size_t max_index = 0;
};

unsigned default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

void add_policy_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.policy.seed, "PRNG seed for extra Miller-Rabin bases")->capture_default_str();
  cmd->add_option("--mr-extra-rounds", o.policy.mr_extra_rounds, "Seeded Miller-Rabin rounds beyond the fixed bases")
      ->capture_default_str();
  cmd->add_option("--proof-bit-cap", o.policy.proof_bit_cap, "Largest bit length for certificate attempts (0 disables)")
      ->capture_default_str();
  cmd->add_option("--trial-bound", o.policy.trial_bound, "Trial division bound")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t{2}, kMaxSieveLimit));
  cmd->add_option("--threads", o.threads, "Worker threads (default: all cores, or $PRIMORIALS_THREADS)");
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "structured"}))->capture_default_str();
  cmd->add_option("--output", o.output, "Output file (default: stdout)");
  cmd->add_option("--cache", o.cache, "Scan-state cache file; created or resumed");
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
  } else {
    write_file_atomically(o.output, text);
  }
}

struct RowsOrExit {
  std::vector<ScanRow> rows;
  int exit_code = kExitSuccess;
  bool row_errors = false;
};

// Rows 1..max_index, taken from the cache where possible and computed otherwise.
RowsOrExit collect_rows(const Options& o, std::ostream& err) {
  RowsOrExit result;
  ScanState state;
  if (!o.cache.empty()) {
    std::optional<ScanState> loaded;
    try {
      loaded = load_scan_state(o.cache);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      result.exit_code = kExitUsage;
      return result;
    }
    if (loaded) {
      if (!(loaded->policy == o.policy)) {
        err << "error: cache " << o.cache << " was written with a different policy ("
            << policy_to_json(loaded->policy).dump() << " vs " << policy_to_json(o.policy).dump()
            << "); refusing to mix results\n";
        result.exit_code = kExitUsage;
        return result;
      }
      state = std::move(*loaded);
    }
  }
  if (state.created.empty()) state.created = utc_timestamp();
  state.policy = o.policy;

  std::vector<std::size_t> missing;
  for (std::size_t n = 1; n <= o.max_index; ++n) {
    if (!state.rows.count(n)) missing.push_back(n);
  }
  std::vector<ScanRow> fresh = scan_indices(missing, o.policy, o.threads);

  std::map<std::size_t, ScanRow> errored;
  for (ScanRow& r : fresh) {
    const bool failed = r.plus_class.verdict == Verdict::Unknown || r.minus_class.verdict == Verdict::Unknown;
    if (failed) {
      result.row_errors = true;
      errored.emplace(r.index, std::move(r));
    } else {
      state.rows.emplace(r.index, std::move(r));
    }
  }
  if (!o.cache.empty() && !missing.empty()) {
    state.updated = utc_timestamp();
    save_scan_state(o.cache, state);
  }
  for (std::size_t n = 1; n <= o.max_index; ++n) {
    auto it = state.rows.find(n);
    result.rows.push_back(it != state.rows.end() ? it->second : errored.at(n));
  }
  return result;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
  RowsOrExit rows = collect_rows(o, err);
  if (rows.exit_code != kExitSuccess) return rows.exit_code;
  const bool timings = !o.no_timings;
  emit(o, o.format == "csv" ? scan_csv(rows.rows, timings) : scan_structured(rows.rows, o.policy, timings), out);
  if (rows.row_errors) {
    err << "error: some rows could not be classified (verdict unknown)\n";
    return kExitResource;
  }
  return kExitSuccess;
}

struct ClaimsOptions {
  std::uint64_t prime_bound = 1000;
  std::uint64_t search_cap = 1'000'000;
  std::size_t disjointness_max_index = 500;
};

int cmd_claims(const Options& o, const ClaimsOptions& c, std::ostream& out, std::ostream& err) {
  RowsOrExit rows = collect_rows(o, err);
  if (rows.exit_code != kExitSuccess) return rows.exit_code;

  std::vector<std::size_t> plus_indices;
  std::vector<std::size_t> minus_indices;
  std::set<BigInt> plus_values;
  for (const ScanRow& r : rows.rows) {
    if (is_prime_verdict(r.plus_class.verdict)) {
      plus_indices.push_back(r.index);
      plus_values.insert(r.plus_value);
    }
    if (is_prime_verdict(r.minus_class.verdict)) minus_indices.push_back(r.index);
  }

  std::vector<CheckedReport> reports;
  for (ClaimReport& r : census_reports(rows.rows, c.prime_bound)) reports.push_back({std::move(r), false});
  reports.push_back({verify_plus_pair_witnesses(plus_indices, o.policy, c.search_cap, o.threads), false});
  reports.push_back({verify_minus_pair_witnesses(minus_indices, plus_values, o.policy, c.search_cap, o.threads), false});
  reports.push_back({check_disjointness(std::max(c.disjointness_max_index, o.max_index)), false});

  bool ok = !rows.row_errors;
  bool cap_errors = rows.row_errors;
  for (CheckedReport& cr : reports) {
    cr.rechecked = recheck_report(cr.report, o.policy);
    if (cr.report.outcome == ClaimOutcome::Fail || !cr.rechecked) ok = false;
    if (cr.report.cap_errors > 0) cap_errors = true;
  }
  emit(o, o.format == "csv" ? claims_csv(reports) : claims_structured(reports, o.policy), out);
  if (cap_errors) return kExitResource;
  return ok ? kExitSuccess : kExitNegative;
}

struct CertOptions {
  std::size_t index = 0;
  std::string side = "plus";
  std::string file;
};

int cmd_cert_emit(const Options& o, const CertOptions& c, std::ostream& out, std::ostream& err) {
  const PrimorialCandidate cand = candidates(c.index);
  const bool plus = c.side == "plus";
  const BigInt& value = plus ? cand.plus : cand.minus;
  const NeighborFactorization ctx{plus ? NeighborSide::MinusOne : NeighborSide::PlusOne,
                                  factors_from_primes(cand.factors)};
  const Classification cls = classify(value, ctx, o.policy);
  const std::string label = "p_" + std::to_string(c.index) + "#" + (plus ? "+1" : "-1") + " = " + abbreviate(value);
  switch (cls.verdict) {
    case Verdict::CertifiedPrime: {
      const std::string text = serialize_certificate(*cls.certificate);
      if (c.file.empty()) {
        out << text;
      } else {
        write_file_atomically(c.file, text);
        out << "wrote certificate for " << label << " to " << c.file << "\n";
      }
      return kExitSuccess;
    }
    case Verdict::Composite:
      out << label << " is composite: " << evidence_summary(cls) << "\n";
      return kExitNegative;
    case Verdict::NotPrimeTrivial:
      out << label << " is not prime\n";
      return kExitNegative;
    case Verdict::ProbablePrime:
    case Verdict::Unknown:
      break;
  }
  err << label << " is a probable prime but no certificate was produced ("
      << (cls.trace.empty() ? std::string("no trace") : cls.trace.back().outcome) << ")\n";
  return kExitResource;
}

int cmd_cert_check(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << path << "\n";
    return kExitUsage;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const VerifyResult r = verify_certificate_text(buf.str());
  if (r.accepted) {
    out << "accept\n";
    return kExitSuccess;
  }
  out << "reject: " << reason_name(r.reason) << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
  return kExitNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primorial prime candidates p_n# +- 1: classification, certificates and claim checks"};
  app.name("primorials");
  app.require_subcommand(1);

  Options opts;
  opts.threads = default_threads();
  ClaimsOptions claims_opts;
  CertOptions cert_opts;
  std::string check_path;

  CLI::App* scan = app.add_subcommand("scan", "Classify p_n# + 1 and p_n# - 1 for n = 1..max-index");
  scan->add_option("--max-index", opts.max_index, "Largest primorial index")->required()->check(CLI::PositiveNumber);
  add_policy_flags(scan, opts);
  add_output_flags(scan, opts);
  scan->add_flag("--no-timings", opts.no_timings, "Write 0 in the ms_elapsed column");

  CLI::App* claims = app.add_subcommand("claims", "Census and witness checks for the primorial-prime claims");
  claims->add_option("--max-index", opts.max_index, "Largest primorial index")->required()->check(CLI::PositiveNumber);
  claims->add_option("--prime-bound", claims_opts.prime_bound, "Bound for the neither-plus-nor-minus census")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t{2}, kMaxSieveLimit));
  claims->add_option("--search-cap", claims_opts.search_cap, "Odd candidates tried per witness search")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  claims->add_option("--disjointness-max-index", claims_opts.disjointness_max_index,
                     "Index range for the plus/minus disjointness check")
      ->capture_default_str();
  add_policy_flags(claims, opts);
  add_output_flags(claims, opts);

  CLI::App* cert = app.add_subcommand("cert", "Emit or check primality certificates");
  cert->require_subcommand(1);
  CLI::App* emit_cmd = cert->add_subcommand("emit", "Write a certificate for p_n# +- 1");
  emit_cmd->add_option("--index", cert_opts.index, "Primorial index")->required()->check(CLI::PositiveNumber);
  emit_cmd->add_option("--side", cert_opts.side, "plus or minus")->required()->check(CLI::IsMember({"plus", "minus"}));
  emit_cmd->add_option("--file", cert_opts.file, "Certificate file (default: stdout)");
  add_policy_flags(emit_cmd, opts);
  CLI::App* check_cmd = cert->add_subcommand("check", "Independently verify a certificate file");
  check_cmd->add_option("file", check_path, "Certificate file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (*scan) return cmd_scan(opts, out, err);
    if (*claims) return cmd_claims(opts, claims_opts, out, err);
    if (*emit_cmd) return cmd_cert_emit(opts, cert_opts, out, err);
    if (*check_cmd) return cmd_cert_check(check_path, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}

}  // namespace primorials::cli
