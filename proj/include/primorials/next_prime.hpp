#pragma once

#include "primorials/bigint.hpp"
#include "primorials/primality.hpp"

#include <cstdint>

namespace primorials {

struct NextPrime {
  BigInt value;
  Classification status;  // CertifiedPrime for word-sized results, else ProbablePrime
};

/// Smallest r > x that passes the full pipeline. Odd candidates are screened
/// by their residues modulo the first 64 primes before any expensive test.
/// Throws SearchCapExceeded after `search_cap` odd candidates.
NextPrime next_prime_above(const BigInt& x, std::uint64_t search_cap, const PipelinePolicy& policy = {});

}  // namespace primorials
