#pragma once

#include "primorials/claims.hpp"

#include <span>
#include <string>
#include <vector>

namespace primorials::cli {

enum class Format { Csv, Structured };

/// Short evidence column: "factor=59", "cert=n-1", "mr-witness=...", ...
std::string evidence_summary(const Classification& c);

/// Columns: n,p_n,digits_plus,plus_verdict,plus_evidence,minus_verdict,minus_evidence,ms_elapsed
std::string scan_csv(std::span<const ScanRow> rows, bool timings = true);
std::string scan_structured(std::span<const ScanRow> rows, const PipelinePolicy& policy, bool timings = true);

struct CheckedReport {
  ClaimReport report;
  bool rechecked = false;
};

/// Columns: claim,record,index,lo,hi,witness,status,result,detail. One
/// "summary" record per claim followed by its "instance" records.
std::string claims_csv(std::span<const CheckedReport> reports);
std::string claims_structured(std::span<const CheckedReport> reports, const PipelinePolicy& policy);

}  // namespace primorials::cli
