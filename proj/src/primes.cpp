#include "primorials/primes.hpp"

#include "primorials/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace primorials {
namespace {

std::uint64_t isqrt_u64(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Plain sieve for the base primes; only ever called with limit <= 2^20.
std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit) {
  if (hi > kMaxSieveLimit) throw InvalidArgument("sieve bound above 2^40: " + std::to_string(hi));
  lo = std::max<std::uint64_t>(lo, 2);
  if (lo > hi) return;

  const std::vector<std::uint64_t> base = simple_sieve(isqrt_u64(hi));
  std::vector<unsigned char> composite(kSieveSegment);

  for (std::uint64_t low = lo; low <= hi; low += kSieveSegment) {
    const std::uint64_t high = std::min(hi, low + kSieveSegment - 1);
    std::fill(composite.begin(), composite.end(), 0);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      for (std::uint64_t j = start; j <= high; j += p) composite[j - low] = 1;
    }
    for (std::uint64_t v = low; v <= high; ++v) {
      if (!composite[v - low]) visit(v);
    }
    if (high == hi) break;
  }
}

PrimeList sieve(std::uint64_t limit) {
  if (limit < 2 || limit > kMaxSieveLimit) {
    throw InvalidArgument("sieve limit out of range [2, 2^40]: " + std::to_string(limit));
  }
  PrimeList out;
  out.limit = limit;
  if (limit > 100) {
    auto estimate = static_cast<std::size_t>(1.26 * static_cast<double>(limit) / std::log(static_cast<double>(limit)));
    out.primes.reserve(estimate);
  }
  for_each_prime(2, limit, [&](std::uint64_t p) { out.primes.push_back(p); });
  return out;
}

std::uint64_t nth_prime_upper_bound(std::size_t n) {
  static constexpr std::array<std::uint64_t, 6> kSmall{0, 2, 3, 5, 7, 11};
  if (n < kSmall.size()) return kSmall[n];
  const double x = static_cast<double>(n);
  const double bound = x * (std::log(x) + std::log(std::log(x))) * 1.1;
  return static_cast<std::uint64_t>(std::ceil(bound));
}

PrimeList first_n_primes(std::size_t n) {
  if (n == 0) throw InvalidArgument("first_n_primes requires n >= 1");
  std::uint64_t bound = nth_prime_upper_bound(n);
  for (;;) {
    if (bound > kMaxSieveLimit) {
      throw ResourceError("first_n_primes(" + std::to_string(n) + ") exceeds the sieve limit");
    }
    PrimeList list = sieve(std::max<std::uint64_t>(bound, 2));
    if (list.primes.size() >= n) {
      list.primes.resize(n);
      list.limit = list.primes.back();
      return list;
    }
    bound += bound / 2;
  }
}

std::shared_ptr<const std::vector<std::uint64_t>> cached_primes_up_to(std::uint64_t limit) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const std::vector<std::uint64_t>>> cache;
  limit = std::max<std::uint64_t>(limit, 2);
  std::lock_guard lock(mu);
  auto it = cache.find(limit);
  if (it != cache.end()) return it->second;
  auto primes = std::make_shared<const std::vector<std::uint64_t>>(sieve(limit).primes);
  cache.emplace(limit, primes);
  return primes;
}

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod_u64(result, base, m);
    base = mul_mod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime_word(std::uint64_t x) {
  static constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (x < 2) return false;
  for (std::uint64_t p : kWitnesses) {
    if (x == p) return true;
    if (x % p == 0) return false;
  }
  if (x < 41 * 41) return true;

  // The first twelve primes as witnesses are exact below 3.3e24.
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t y = pow_mod_u64(a, d, x);
    if (y == 1 || y == x - 1) continue;
    bool passed = false;
    for (int r = 1; r < s; ++r) {
      y = mul_mod_u64(y, y, x);
      if (y == x - 1) {
        passed = true;
        break;
      }
    }
    if (!passed) return false;
  }
  return true;
}

}  // namespace primorials
