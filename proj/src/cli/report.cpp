#include "primorials/cli/report.hpp"

#include "primorials/cli/scan_state.hpp"

#include <cstdio>

namespace primorials::cli {

using nlohmann::ordered_json;

namespace {

std::string ms_text(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

std::string opt_text(const std::optional<BigInt>& v) { return v ? abbreviate(*v) : ""; }

}  // namespace

std::string evidence_summary(const Classification& c) {
  switch (c.verdict) {
    case Verdict::CertifiedPrime:
      return c.certificate && c.certificate->kind == CertificateKind::NPlusOne ? "cert=n+1" : "cert=n-1";
    case Verdict::ProbablePrime:
      return "bpsw";
    case Verdict::NotPrimeTrivial:
      return "value<=1";
    case Verdict::Unknown:
      return "error";
    case Verdict::Composite:
      break;
  }
  if (!c.evidence) return "";
  switch (c.evidence->kind) {
    case EvidenceKind::SmallFactor: return "factor=" + abbreviate(c.evidence->value);
    case EvidenceKind::FermatMRWitness: return "mr-witness=" + abbreviate(c.evidence->value);
    case EvidenceKind::LucasWitness:
      return "lucas-witness=" + to_decimal(c.evidence->value) + "/" + to_decimal(c.evidence->lucas_p) + "/" +
             to_decimal(c.evidence->lucas_q);
  }
  return "";
}

std::string scan_csv(std::span<const ScanRow> rows, bool timings) {
  std::string out = "n,p_n,digits_plus,plus_verdict,plus_evidence,minus_verdict,minus_evidence,ms_elapsed\n";
  for (const ScanRow& r : rows) {
    out += std::to_string(r.index) + "," + std::to_string(r.nth_prime) + "," +
           std::to_string(decimal_digits(r.plus_value)) + "," + std::string(verdict_name(r.plus_class.verdict)) + "," +
           evidence_summary(r.plus_class) + "," + std::string(verdict_name(r.minus_class.verdict)) + "," +
           evidence_summary(r.minus_class) + "," + ms_text(timings ? r.ms_elapsed : 0.0) + "\n";
  }
  return out;
}

std::string scan_structured(std::span<const ScanRow> rows, const PipelinePolicy& policy, bool timings) {
  ordered_json j;
  j["policy"] = policy_to_json(policy);
  ordered_json arr = ordered_json::array();
  for (const ScanRow& r : rows) arr.push_back(row_to_json(r, timings));
  j["rows"] = arr;
  return j.dump(2) + "\n";
}

std::string claims_csv(std::span<const CheckedReport> reports) {
  std::string out = "claim,record,index,lo,hi,witness,status,result,detail\n";
  for (const CheckedReport& cr : reports) {
    const ClaimReport& r = cr.report;
    const std::string name(claim_name(r.id));
    std::string detail = "range=" + r.range + ";label=" + r.label;
    for (const auto& [k, v] : r.counts) detail += ";" + k + "=" + std::to_string(v);
    detail += std::string(";rechecked=") + (cr.rechecked ? "yes" : "no");
    out += name + ",summary,,,,,," + std::string(outcome_name(r.outcome)) + "," + detail + "\n";
    for (const ClaimInstance& i : r.instances) {
      std::string skipped;
      for (const BigInt& s : i.skipped) skipped += (skipped.empty() ? "skipped=" : ";") + abbreviate(s);
      std::string note = i.note;
      if (!skipped.empty()) note = note.empty() ? skipped : skipped + ";" + note;
      out += name + ",instance," + (i.index ? std::to_string(*i.index) : "") + "," + abbreviate(i.lo) + "," +
             opt_text(i.hi) + "," + opt_text(i.witness) + "," + std::string(verdict_name(i.status)) + "," +
             (i.passed ? "pass" : "fail") + "," + note + "\n";
    }
  }
  return out;
}

std::string claims_structured(std::span<const CheckedReport> reports, const PipelinePolicy& policy) {
  ordered_json j;
  j["policy"] = policy_to_json(policy);
  ordered_json arr = ordered_json::array();
  for (const CheckedReport& cr : reports) {
    const ClaimReport& r = cr.report;
    ordered_json rj;
    rj["claim"] = claim_name(r.id);
    rj["range"] = r.range;
    rj["label"] = r.label;
    rj["outcome"] = outcome_name(r.outcome);
    rj["rechecked"] = cr.rechecked;
    ordered_json counts;
    for (const auto& [k, v] : r.counts) counts[k] = v;
    rj["counts"] = counts;
    ordered_json instances = ordered_json::array();
    for (const ClaimInstance& i : r.instances) {
      ordered_json ij;
      ij["index"] = i.index ? ordered_json(*i.index) : ordered_json(nullptr);
      ij["lo"] = to_decimal(i.lo);
      ij["hi"] = i.hi ? ordered_json(to_decimal(*i.hi)) : ordered_json(nullptr);
      ij["witness"] = i.witness ? ordered_json(to_decimal(*i.witness)) : ordered_json(nullptr);
      ij["status"] = verdict_name(i.status);
      ordered_json skipped = ordered_json::array();
      for (const BigInt& s : i.skipped) skipped.push_back(to_decimal(s));
      ij["skipped"] = skipped;
      ij["passed"] = i.passed;
      ij["note"] = i.note;
      instances.push_back(ij);
    }
    rj["instances"] = instances;
    arr.push_back(rj);
  }
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace primorials::cli
