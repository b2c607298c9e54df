#pragma once

#include "primorials/claims.hpp"
#include "primorials/primality.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

namespace primorials::cli {

/// Persisted progress of an index scan. Rows are keyed by index; the policy
/// snapshot decides whether a later run may reuse them.
struct ScanState {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  PipelinePolicy policy;
  std::map<std::size_t, ScanRow> rows;
  std::string created;
  std::string updated;
};

nlohmann::ordered_json policy_to_json(const PipelinePolicy& policy);
PipelinePolicy policy_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json classification_to_json(const Classification& c);
Classification classification_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json row_to_json(const ScanRow& row, bool timings = true);
ScanRow row_from_json(const nlohmann::ordered_json& j);

std::string scan_state_to_text(const ScanState& state);
ScanState scan_state_from_text(const std::string& text);

/// std::nullopt when the file does not exist; throws std::runtime_error when
/// it exists but cannot be parsed.
std::optional<ScanState> load_scan_state(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void save_scan_state(const std::filesystem::path& path, const ScanState& state);

void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

std::string utc_timestamp();

}  // namespace primorials::cli
