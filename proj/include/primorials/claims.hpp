#pragma once

#include "primorials/bigint.hpp"
#include "primorials/primality.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace primorials {

/// Both candidates of one primorial index with their classifications.
struct ScanRow {
  std::size_t index = 0;
  std::uint64_t nth_prime = 0;
  BigInt plus_value;
  BigInt minus_value;
  Classification plus_class;
  Classification minus_class;
  double ms_elapsed = 0.0;
};

/// Classifies p_n# + 1 and p_n# - 1 for each requested index. Rows come back
/// in the order of `indices`; a row whose classification throws is returned
/// with Verdict::Unknown and the error in its trace.
std::vector<ScanRow> scan_indices(std::span<const std::size_t> indices, const PipelinePolicy& policy,
                                  unsigned threads = 0);

/// Rows for n = 1..n_max.
std::vector<ScanRow> scan(std::size_t n_max, const PipelinePolicy& policy = {}, unsigned threads = 0);

enum class ClaimId { C2_1, C2_2, C2_3, C2_4, C2_5, P1_7 };
std::string_view claim_name(ClaimId id);

enum class ClaimOutcome { Pass, Fail, Vacuous };
std::string_view outcome_name(ClaimOutcome o);

/// One checked item: a census member (value in `lo`) or a consecutive pair
/// (lo, hi) with the witness found between them.
struct ClaimInstance {
  std::optional<std::size_t> index;
  BigInt lo;
  std::optional<BigInt> hi;
  std::optional<BigInt> witness;
  Verdict status = Verdict::Unknown;  // of the witness, or of the census member
  std::vector<BigInt> skipped;        // plus-primorial primes passed over (minus pairs)
  bool passed = false;
  std::string note;
};

struct ClaimReport {
  ClaimId id = ClaimId::C2_1;
  std::string range;
  std::string label;
  std::vector<ClaimInstance> instances;
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  ClaimOutcome outcome = ClaimOutcome::Vacuous;
  std::size_t cap_errors = 0;

  std::uint64_t count(std::string_view key) const;
};

inline constexpr std::string_view kCensusLabel = "finite census: infinitude not decidable";

/// m = p_k# for some k >= 1, decided by dividing out 2, 3, 5, ... in order.
bool is_primorial_value(const BigInt& m);

/// Prime p_k# + 1 values (k >= 1) not exceeding `bound`.
std::set<BigInt> plus_primorial_primes_up_to(const BigInt& bound, const PipelinePolicy& policy = {});

/// Plus, minus and neither census reports from already classified rows.
std::array<ClaimReport, 3> census_reports(std::span<const ScanRow> rows, std::uint64_t prime_bound);
std::array<ClaimReport, 3> census_reports(std::size_t n_max, std::uint64_t prime_bound,
                                               const PipelinePolicy& policy = {}, unsigned threads = 0);

/// { p_k# + 1 } and { p_n# - 1 } over k, n <= n_max share no value.
ClaimReport check_disjointness(std::size_t n_max);

/// For each consecutive pair (P, Q) of the given plus-primorial prime indices,
/// the witness is next_prime_above(P) and must satisfy P < r < Q.
ClaimReport verify_plus_pair_witnesses(std::span<const std::size_t> plus_prime_indices, const PipelinePolicy& policy = {},
                             std::uint64_t search_cap = 1'000'000, unsigned threads = 0);

/// For each consecutive pair (P, Q) of minus-primorial primes, walks the primes
/// above P, skipping members of `plus_values`, until one lies below Q.
ClaimReport verify_minus_pair_witnesses(std::span<const std::size_t> minus_prime_indices, const std::set<BigInt>& plus_values,
                             const PipelinePolicy& policy = {}, std::uint64_t search_cap = 1'000'000,
                             unsigned threads = 0);

/// Re-derives the stated property of every instance from scratch.
bool recheck_report(const ClaimReport& report, const PipelinePolicy& policy = {});

}  // namespace primorials
