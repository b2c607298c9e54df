#include "primorials/cli/scan_state.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace primorials::cli {

using nlohmann::ordered_json;

ordered_json policy_to_json(const PipelinePolicy& policy) {
  ordered_json j;
  j["seed"] = policy.seed;
  j["mr_extra_rounds"] = policy.mr_extra_rounds;
  j["proof_bit_cap"] = policy.proof_bit_cap;
  j["trial_bound"] = policy.trial_bound;
  j["witness_cap"] = policy.witness_cap;
  return j;
}

PipelinePolicy policy_from_json(const ordered_json& j) {
  PipelinePolicy p;
  p.seed = j.at("seed").get<std::uint64_t>();
  p.mr_extra_rounds = j.at("mr_extra_rounds").get<unsigned>();
  p.proof_bit_cap = j.at("proof_bit_cap").get<std::size_t>();
  p.trial_bound = j.at("trial_bound").get<std::uint64_t>();
  p.witness_cap = j.at("witness_cap").get<unsigned>();
  return p;
}

ordered_json classification_to_json(const Classification& c) {
  ordered_json j;
  j["verdict"] = verdict_name(c.verdict);
  if (c.certificate) {
    j["certificate"] = serialize_certificate(*c.certificate);
  } else {
    j["certificate"] = nullptr;
  }
  if (c.evidence) {
    ordered_json e;
    e["kind"] = evidence_kind_name(c.evidence->kind);
    e["value"] = to_decimal(c.evidence->value);
    if (c.evidence->kind == EvidenceKind::LucasWitness) {
      e["p"] = to_decimal(c.evidence->lucas_p);
      e["q"] = to_decimal(c.evidence->lucas_q);
    }
    j["evidence"] = e;
  } else {
    j["evidence"] = nullptr;
  }
  ordered_json trace = ordered_json::array();
  for (const TraceStep& s : c.trace) trace.push_back({s.test, s.outcome});
  j["trace"] = trace;
  return j;
}

Classification classification_from_json(const ordered_json& j) {
  Classification c;
  auto verdict = parse_verdict(j.at("verdict").get<std::string>());
  if (!verdict) throw std::runtime_error("unknown verdict in cache");
  c.verdict = *verdict;
  if (!j.at("certificate").is_null()) {
    ParseResult parsed = parse_certificate(j.at("certificate").get<std::string>());
    if (!parsed.certificate) throw std::runtime_error("corrupt certificate in cache: " + parsed.detail);
    c.certificate = std::move(*parsed.certificate);
  }
  if (!j.at("evidence").is_null()) {
    const ordered_json& e = j.at("evidence");
    auto kind = parse_evidence_kind(e.at("kind").get<std::string>());
    if (!kind) throw std::runtime_error("unknown evidence kind in cache");
    CompositeEvidence ev{*kind, from_decimal(e.at("value").get<std::string>()), 0, 0};
    if (*kind == EvidenceKind::LucasWitness) {
      ev.lucas_p = from_decimal(e.at("p").get<std::string>());
      ev.lucas_q = from_decimal(e.at("q").get<std::string>());
    }
    c.evidence = std::move(ev);
  }
  for (const auto& step : j.at("trace")) c.trace.push_back({step.at(0).get<std::string>(), step.at(1).get<std::string>()});
  return c;
}

ordered_json row_to_json(const ScanRow& row, bool timings) {
  ordered_json j;
  j["index"] = row.index;
  j["nth_prime"] = row.nth_prime;
  j["plus_value"] = to_decimal(row.plus_value);
  j["minus_value"] = to_decimal(row.minus_value);
  j["plus"] = classification_to_json(row.plus_class);
  j["minus"] = classification_to_json(row.minus_class);
  j["ms_elapsed"] = timings ? row.ms_elapsed : 0.0;
  return j;
}

ScanRow row_from_json(const ordered_json& j) {
  ScanRow row;
  row.index = j.at("index").get<std::size_t>();
  row.nth_prime = j.at("nth_prime").get<std::uint64_t>();
  row.plus_value = from_decimal(j.at("plus_value").get<std::string>());
  row.minus_value = from_decimal(j.at("minus_value").get<std::string>());
  row.plus_class = classification_from_json(j.at("plus"));
  row.minus_class = classification_from_json(j.at("minus"));
  row.ms_elapsed = j.at("ms_elapsed").get<double>();
  if (row.plus_value - row.minus_value != 2) throw std::runtime_error("cache row violates plus - minus = 2");
  return row;
}

std::string scan_state_to_text(const ScanState& state) {
  ordered_json j;
  j["format"] = "primorials-scan-state";
  j["format_version"] = state.format_version;
  j["policy"] = policy_to_json(state.policy);
  j["created"] = state.created;
  j["updated"] = state.updated;
  ordered_json rows = ordered_json::array();
  for (const auto& [index, row] : state.rows) rows.push_back(row_to_json(row));
  j["rows"] = rows;
  return j.dump(1) + "\n";
}

ScanState scan_state_from_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("cache is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "primorials-scan-state") throw std::runtime_error("not a scan-state file");
    ScanState state;
    state.format_version = j.at("format_version").get<int>();
    if (state.format_version != ScanState::kFormatVersion) {
      throw std::runtime_error("unsupported cache format version " + std::to_string(state.format_version));
    }
    state.policy = policy_from_json(j.at("policy"));
    state.created = j.at("created").get<std::string>();
    state.updated = j.at("updated").get<std::string>();
    for (const auto& r : j.at("rows")) {
      ScanRow row = row_from_json(r);
      state.rows.emplace(row.index, std::move(row));
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed cache: ") + e.what());
  }
}

std::optional<ScanState> load_scan_state(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read cache " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return scan_state_from_text(buf.str());
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void save_scan_state(const std::filesystem::path& path, const ScanState& state) {
  write_file_atomically(path, scan_state_to_text(state));
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace primorials::cli
