#include "primorials/claims.hpp"

#include "primorials/errors.hpp"
#include "primorials/next_prime.hpp"
#include "primorials/parallel.hpp"
#include "primorials/primes.hpp"
#include "primorials/primorial.hpp"

#include <algorithm>
#include <chrono>

namespace primorials {

std::string_view claim_name(ClaimId id) {
  switch (id) {
    case ClaimId::C2_1: return "C2.1";
    case ClaimId::C2_2: return "C2.2";
    case ClaimId::C2_3: return "C2.3";
    case ClaimId::C2_4: return "C2.4";
    case ClaimId::C2_5: return "C2.5";
    case ClaimId::P1_7: return "P1.7";
  }
  return "?";
}

std::string_view outcome_name(ClaimOutcome o) {
  switch (o) {
    case ClaimOutcome::Pass: return "pass";
    case ClaimOutcome::Fail: return "fail";
    case ClaimOutcome::Vacuous: return "vacuous";
  }
  return "?";
}

std::uint64_t ClaimReport::count(std::string_view key) const {
  for (const auto& [k, v] : counts) {
    if (k == key) return v;
  }
  return 0;
}

namespace {

Classification failed_classification(const std::exception& e) {
  Classification c;
  c.verdict = Verdict::Unknown;
  c.trace.push_back({"error", e.what()});
  return c;
}

Classification classify_guarded(const BigInt& n, const NeighborFactorization& ctx, const PipelinePolicy& policy) {
  try {
    return classify(n, ctx, policy);
  } catch (const std::exception& e) {
    return failed_classification(e);
  }
}

ClaimOutcome outcome_of(const std::vector<ClaimInstance>& instances) {
  if (instances.empty()) return ClaimOutcome::Vacuous;
  for (const ClaimInstance& i : instances) {
    if (!i.passed) return ClaimOutcome::Fail;
  }
  return ClaimOutcome::Pass;
}

void require_ascending(std::span<const std::size_t> indices) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] == 0) throw InvalidArgument("primorial index must be >= 1");
    if (i > 0 && indices[i] <= indices[i - 1]) throw InvalidArgument("indices must be strictly ascending");
  }
}

// p_n# for every requested index, sharing one prime table.
std::vector<BigInt> primorials_for(std::span<const std::size_t> indices) {
  std::vector<BigInt> out;
  if (indices.empty()) return out;
  const std::size_t top = *std::max_element(indices.begin(), indices.end());
  const PrimeList primes = first_n_primes(top);
  for (std::size_t n : indices) {
    out.push_back(product_tree(std::span<const std::uint64_t>(primes.primes.data(), n)));
  }
  return out;
}

bool is_prime_for_recheck(const BigInt& v, const PipelinePolicy& policy) {
  if (auto w = to_u64(v)) return is_prime_word(*w);
  return is_prime_verdict(classify(v, policy).verdict);
}

}  // namespace

std::vector<ScanRow> scan_indices(std::span<const std::size_t> indices, const PipelinePolicy& policy,
                                  unsigned threads) {
  std::vector<ScanRow> rows(indices.size());
  if (indices.empty()) return rows;
  for (std::size_t n : indices) {
    if (n == 0) throw InvalidArgument("primorial index must be >= 1");
  }
  const std::size_t top = *std::max_element(indices.begin(), indices.end());
  const PrimeList primes = first_n_primes(top);

  parallel_for(indices.size(), threads, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = indices[i];
    const std::span<const std::uint64_t> prefix(primes.primes.data(), n);
    const PrimorialCandidate cand = candidates_from(prefix);
    const std::vector<Factor> factors = factors_from_primes(prefix);

    ScanRow& row = rows[i];
    row.index = n;
    row.nth_prime = prefix.back();
    row.plus_value = cand.plus;
    row.minus_value = cand.minus;
    row.plus_class = classify_guarded(cand.plus, NeighborFactorization{NeighborSide::MinusOne, factors}, policy);
    row.minus_class = classify_guarded(cand.minus, NeighborFactorization{NeighborSide::PlusOne, factors}, policy);
    row.ms_elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  });
  return rows;
}

std::vector<ScanRow> scan(std::size_t n_max, const PipelinePolicy& policy, unsigned threads) {
  if (n_max == 0) throw InvalidArgument("scan needs n_max >= 1");
  std::vector<std::size_t> indices(n_max);
  for (std::size_t i = 0; i < n_max; ++i) indices[i] = i + 1;
  return scan_indices(indices, policy, threads);
}

bool is_primorial_value(const BigInt& m) {
  if (m < 2) return false;
  BigInt rest = m;
  std::uint64_t p = 2;
  for (;;) {
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) return false;
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    if (rest == 1) return true;
    // Next prime by trial: primorial factors stay tiny.
    do {
      ++p;
    } while (!is_prime_word(p));
  }
}

std::set<BigInt> plus_primorial_primes_up_to(const BigInt& bound, const PipelinePolicy& policy) {
  std::set<BigInt> out;
  std::vector<std::uint64_t> primes;
  BigInt product = 1;
  for (std::uint64_t p = 2;; ++p) {
    if (!is_prime_word(p)) continue;
    primes.push_back(p);
    product *= from_u64(p);
    const BigInt plus = product + 1;
    if (plus > bound) break;
    const std::vector<Factor> factors = factors_from_primes(primes);
    if (is_prime_verdict(classify(plus, NeighborFactorization{NeighborSide::MinusOne, factors}, policy).verdict)) {
      out.insert(plus);
    }
  }
  return out;
}

std::array<ClaimReport, 3> census_reports(std::span<const ScanRow> rows, std::uint64_t prime_bound) {
  if (prime_bound < 2) throw InvalidArgument("prime_bound must be >= 2");
  std::vector<const ScanRow*> ordered;
  for (const ScanRow& r : rows) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(), [](const ScanRow* a, const ScanRow* b) { return a->index < b->index; });
  const std::size_t n_max = ordered.empty() ? 0 : ordered.back()->index;

  std::array<ClaimReport, 3> out;
  out[0].id = ClaimId::C2_1;
  out[1].id = ClaimId::C2_2;
  for (int side = 0; side < 2; ++side) {
    ClaimReport& rep = out[side];
    rep.range = "n <= " + std::to_string(n_max);
    rep.label = std::string(kCensusLabel);
    std::uint64_t certified = 0;
    std::uint64_t probable = 0;
    for (const ScanRow* r : ordered) {
      const Classification& c = side == 0 ? r->plus_class : r->minus_class;
      if (!is_prime_verdict(c.verdict)) continue;
      (c.verdict == Verdict::CertifiedPrime ? certified : probable)++;
      ClaimInstance inst;
      inst.index = r->index;
      inst.lo = side == 0 ? r->plus_value : r->minus_value;
      inst.status = c.verdict;
      inst.passed = true;
      rep.instances.push_back(std::move(inst));
    }
    rep.counts = {{side == 0 ? "plus_primorial_primes" : "minus_primorial_primes", certified + probable},
                  {"certified", certified},
                  {"probable", probable},
                  {"indices_examined", ordered.size()}};
    rep.outcome = outcome_of(rep.instances);
  }

  // "neither" membership looks at every p_k# +- 1 below the bound, whatever n_max is.
  std::set<std::uint64_t> primorial_primes;
  {
    std::uint64_t product = 1;
    for (std::uint64_t p = 2;; ++p) {
      if (!is_prime_word(p)) continue;
      if (product > (prime_bound + 1) / p) break;
      product *= p;
      if (product - 1 > prime_bound) break;
      if (is_prime_word(product - 1)) primorial_primes.insert(product - 1);
      if (product + 1 <= prime_bound && is_prime_word(product + 1)) primorial_primes.insert(product + 1);
    }
  }
  ClaimReport& neither = out[2];
  neither.id = ClaimId::C2_3;
  neither.range = "primes <= " + std::to_string(prime_bound);
  neither.label = std::string(kCensusLabel);
  std::uint64_t primes_seen = 0;
  for_each_prime(2, prime_bound, [&](std::uint64_t p) {
    ++primes_seen;
    if (primorial_primes.count(p)) return;
    ClaimInstance inst;
    inst.lo = from_u64(p);
    inst.status = Verdict::CertifiedPrime;
    inst.passed = true;
    neither.instances.push_back(std::move(inst));
  });
  neither.counts = {{"neither_primes", neither.instances.size()},
                    {"primes_examined", primes_seen},
                    {"primorial_primes_in_range", primorial_primes.size()}};
  neither.outcome = outcome_of(neither.instances);
  return out;
}

std::array<ClaimReport, 3> census_reports(std::size_t n_max, std::uint64_t prime_bound,
                                               const PipelinePolicy& policy, unsigned threads) {
  const std::vector<ScanRow> rows = scan(n_max, policy, threads);
  return census_reports(rows, prime_bound);
}

ClaimReport check_disjointness(std::size_t n_max) {
  if (n_max == 0) throw InvalidArgument("n_max must be >= 1");
  const PrimeList primes = first_n_primes(n_max);
  std::vector<BigInt> plus_values;
  std::vector<BigInt> minus_values;
  BigInt product = 1;
  for (std::uint64_t p : primes.primes) {
    product *= from_u64(p);
    plus_values.push_back(product + 1);
    minus_values.push_back(product - 1);
  }
  // Both sequences are already increasing.
  std::vector<BigInt> shared;
  std::set_intersection(plus_values.begin(), plus_values.end(), minus_values.begin(), minus_values.end(),
                        std::back_inserter(shared));

  ClaimReport rep;
  rep.id = ClaimId::P1_7;
  rep.range = "n <= " + std::to_string(n_max);
  rep.label = "value-level disjointness of p_k#+1 and p_n#-1";
  for (const BigInt& v : shared) {
    ClaimInstance inst;
    inst.lo = v;
    inst.passed = false;
    inst.note = "value is both p_k#+1 and p_n#-1";
    rep.instances.push_back(std::move(inst));
  }
  rep.counts = {{"n_max", n_max}, {"plus_values", plus_values.size()}, {"minus_values", minus_values.size()},
                {"shared_values", shared.size()}};
  rep.outcome = shared.empty() ? ClaimOutcome::Pass : ClaimOutcome::Fail;
  return rep;
}

namespace {

ClaimReport pair_report(ClaimId id, std::span<const std::size_t> indices, const std::vector<BigInt>& values,
                        const std::function<void(ClaimInstance&)>& find_witness, unsigned threads) {
  ClaimReport rep;
  rep.id = id;
  rep.range = indices.empty() ? "no indices" : "n in [" + std::to_string(indices.front()) + ".." +
                                                   std::to_string(indices.back()) + "]";
  rep.label = "consecutive pairs";
  const std::size_t pairs = values.size() < 2 ? 0 : values.size() - 1;
  rep.instances.resize(pairs);
  parallel_for(pairs, threads, [&](std::size_t i) {
    ClaimInstance& inst = rep.instances[i];
    inst.index = indices[i];
    inst.lo = values[i];
    inst.hi = values[i + 1];
    try {
      find_witness(inst);
    } catch (const SearchCapExceeded& e) {
      inst.passed = false;
      inst.note = std::string("search-cap-exceeded: ") + e.what();
    }
  });
  for (const ClaimInstance& inst : rep.instances) {
    if (inst.note.rfind("search-cap-exceeded", 0) == 0) ++rep.cap_errors;
  }
  std::uint64_t witnessed = 0;
  for (const ClaimInstance& inst : rep.instances) witnessed += inst.passed ? 1 : 0;
  rep.counts = {{"pairs", pairs}, {"witnessed", witnessed}, {"cap_errors", rep.cap_errors}};
  rep.outcome = outcome_of(rep.instances);
  if (rep.outcome == ClaimOutcome::Vacuous) rep.label = "vacuous: fewer than two primes of this kind";
  return rep;
}

}  // namespace

ClaimReport verify_plus_pair_witnesses(std::span<const std::size_t> plus_prime_indices, const PipelinePolicy& policy,
                             std::uint64_t search_cap, unsigned threads) {
  require_ascending(plus_prime_indices);
  std::vector<BigInt> values = primorials_for(plus_prime_indices);
  for (BigInt& v : values) v += 1;
  return pair_report(
      ClaimId::C2_4, plus_prime_indices, values,
      [&](ClaimInstance& inst) {
        NextPrime r = next_prime_above(inst.lo, search_cap, policy);
        inst.witness = r.value;
        inst.status = r.status.verdict;
        inst.passed = r.value > inst.lo && r.value < *inst.hi;
        if (!inst.passed) inst.note = "next prime is not below the upper value";
      },
      threads);
}

ClaimReport verify_minus_pair_witnesses(std::span<const std::size_t> minus_prime_indices, const std::set<BigInt>& plus_values,
                             const PipelinePolicy& policy, std::uint64_t search_cap, unsigned threads) {
  require_ascending(minus_prime_indices);
  std::vector<BigInt> values = primorials_for(minus_prime_indices);
  for (BigInt& v : values) v -= 1;
  return pair_report(
      ClaimId::C2_5, minus_prime_indices, values,
      [&](ClaimInstance& inst) {
        NextPrime r = next_prime_above(inst.lo, search_cap, policy);
        while (r.value < *inst.hi && plus_values.count(r.value)) {
          inst.skipped.push_back(r.value);
          r = next_prime_above(r.value, search_cap, policy);
        }
        inst.witness = r.value;
        inst.status = r.status.verdict;
        inst.passed = r.value < *inst.hi;
        if (!inst.passed) inst.note = "no non-plus-primorial prime below the upper value";
      },
      threads);
}

bool recheck_report(const ClaimReport& report, const PipelinePolicy& policy) {
  switch (report.id) {
    case ClaimId::P1_7: {
      const ClaimReport fresh = check_disjointness(report.count("n_max"));
      return fresh.outcome == report.outcome && fresh.count("shared_values") == report.count("shared_values");
    }
    case ClaimId::C2_1:
    case ClaimId::C2_2:
      for (const ClaimInstance& i : report.instances) {
        const BigInt neighbour = report.id == ClaimId::C2_1 ? BigInt(i.lo - 1) : BigInt(i.lo + 1);
        if (!is_primorial_value(neighbour) || !is_prime_for_recheck(i.lo, policy)) return false;
      }
      return true;
    case ClaimId::C2_3:
      for (const ClaimInstance& i : report.instances) {
        auto w = to_u64(i.lo);
        if (!w || !is_prime_word(*w)) return false;
        if (is_primorial_value(i.lo - 1) || is_primorial_value(i.lo + 1)) return false;
      }
      return true;
    case ClaimId::C2_4:
    case ClaimId::C2_5:
      for (const ClaimInstance& i : report.instances) {
        if (!i.passed) continue;
        if (!i.witness || !i.hi) return false;
        const BigInt& w = *i.witness;
        if (!(i.lo < w && w < *i.hi)) return false;
        if (!is_prime_for_recheck(w, policy)) return false;
        if (report.id == ClaimId::C2_5) {
          if (is_primorial_value(w - 1)) return false;
          for (const BigInt& s : i.skipped) {
            if (!is_primorial_value(s - 1) || !is_prime_for_recheck(s, policy)) return false;
          }
        }
      }
      return true;
  }
  return false;
}

}  // namespace primorials
