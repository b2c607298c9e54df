#include "primorials/next_prime.hpp"

#include "primorials/errors.hpp"
#include "primorials/primes.hpp"

#include <array>

namespace primorials {
namespace {

constexpr std::size_t kFilterPrimes = 64;

const std::vector<std::uint64_t>& filter_primes() {
  static const std::vector<std::uint64_t> primes = first_n_primes(kFilterPrimes).primes;
  return primes;
}

// Cheap exact test for words, BPSW above; the full pipeline runs only on survivors.
bool screen(const BigInt& candidate) {
  if (auto word = to_u64(candidate)) return is_prime_word(*word);
  return bpsw(candidate);
}

}  // namespace

NextPrime next_prime_above(const BigInt& x, std::uint64_t search_cap, const PipelinePolicy& policy) {
  if (x < 1) throw InvalidArgument("next_prime_above needs x >= 1");
  if (search_cap < 1) throw InvalidArgument("next_prime_above needs search_cap >= 1");
  if (x < 2) return NextPrime{2, classify(BigInt(2), policy)};

  BigInt candidate = x + 1;
  if (mpz_even_p(candidate.get_mpz_t())) candidate += 1;

  const std::vector<std::uint64_t>& small = filter_primes();
  std::array<std::uint64_t, kFilterPrimes> residues{};
  for (std::size_t i = 0; i < kFilterPrimes; ++i) residues[i] = mpz_fdiv_ui(candidate.get_mpz_t(), small[i]);

  for (std::uint64_t step = 0; step < search_cap; ++step) {
    bool divisible = false;
    for (std::size_t i = 0; i < kFilterPrimes; ++i) {
      if (residues[i] == 0 && candidate != small[i]) {
        divisible = true;
        break;
      }
    }
    if (!divisible && screen(candidate)) {
      Classification status = classify(candidate, policy);
      if (is_prime_verdict(status.verdict)) return NextPrime{candidate, std::move(status)};
    }
    candidate += 2;
    for (std::size_t i = 0; i < kFilterPrimes; ++i) {
      residues[i] += 2;
      if (residues[i] >= small[i]) residues[i] -= small[i];
    }
  }
  throw SearchCapExceeded("no prime found within " + std::to_string(search_cap) + " odd steps above " +
                          abbreviate(x));
}

}  // namespace primorials
