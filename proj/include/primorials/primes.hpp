#pragma once

#include "primorials/bigint.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace primorials {

/// All primes up to an inclusive bound, increasing.
struct PrimeList {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;
};

inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kSieveSegment = std::uint64_t{1} << 18;

/// Visits every prime in [lo, hi] in increasing order. Works segment by
/// segment, so memory is O(sqrt(hi) + segment) regardless of the range.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit);

/// Segmented sieve of Eratosthenes. Requires 2 <= limit <= 2^40.
PrimeList sieve(std::uint64_t limit);

/// The first n primes. Requires n >= 1.
PrimeList first_n_primes(std::size_t n);

/// Upper bound used by first_n_primes before sieving.
std::uint64_t nth_prime_upper_bound(std::size_t n);

/// Shared read-only sieve up to `limit`, computed once per distinct limit.
std::shared_ptr<const std::vector<std::uint64_t>> cached_primes_up_to(std::uint64_t limit);

/// Exact primality for the full 64-bit range.
bool is_prime_word(std::uint64_t x);

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

}  // namespace primorials
