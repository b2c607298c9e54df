#include "doctest.h"

#include "oracle.hpp"
#include "primorials/errors.hpp"
#include "primorials/next_prime.hpp"
#include "primorials/primes.hpp"

#include <algorithm>

using namespace primorials;

TEST_CASE("sieve small bounds") {
  CHECK(sieve(13).primes == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13});
  CHECK(sieve(2).primes == std::vector<std::uint64_t>{2});

  const PrimeList hundred = sieve(100);
  CHECK(hundred.primes.size() == 25);
  CHECK(hundred.primes.back() == 97);
  CHECK(hundred.limit == 100);
}

TEST_CASE("sieve rejects out-of-range limits") {
  CHECK_THROWS_AS(sieve(0), InvalidArgument);
  CHECK_THROWS_AS(sieve(1), InvalidArgument);
  CHECK_THROWS_AS(sieve(kMaxSieveLimit + 1), InvalidArgument);
}

TEST_CASE("sieve matches trial division up to 10^6") {
  const std::vector<std::uint64_t> expected = oracle::primes_by_trial(1'000'000);
  const PrimeList full = sieve(1'000'000);
  REQUIRE(full.primes == expected);

  // Every smaller limit is a prefix; probe segment edges and arbitrary bounds.
  const std::vector<std::uint64_t> limits{3, 4, 10, 97, 1000, 65'536, kSieveSegment - 1, kSieveSegment,
                                          kSieveSegment + 1, 2 * kSieveSegment + 7, 999'983};
  for (std::uint64_t L : limits) {
    auto end = std::upper_bound(expected.begin(), expected.end(), L);
    CHECK(sieve(L).primes == std::vector<std::uint64_t>(expected.begin(), end));
  }
}

TEST_CASE("for_each_prime over an interior window") {
  std::vector<std::uint64_t> got;
  for_each_prime(1'000'000'000'000ULL, 1'000'000'000'100ULL, [&](std::uint64_t p) { got.push_back(p); });
  std::vector<std::uint64_t> expected;
  for (std::uint64_t n = 1'000'000'000'000ULL; n <= 1'000'000'000'100ULL; ++n) {
    if (oracle::is_prime_trial(n)) expected.push_back(n);
  }
  CHECK(got == expected);
}

TEST_CASE("first_n_primes") {
  CHECK(first_n_primes(4).primes == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(first_n_primes(1).primes == std::vector<std::uint64_t>{2});
  CHECK(first_n_primes(25).primes.back() == 97);
  CHECK_THROWS_AS(first_n_primes(0), InvalidArgument);

  SUBCASE("n+1 extends n by one element") {
    std::vector<std::uint64_t> previous = first_n_primes(1).primes;
    for (std::size_t n = 2; n <= 1500; ++n) {
      std::vector<std::uint64_t> next = first_n_primes(n).primes;
      REQUIRE(next.size() == n);
      REQUIRE(std::equal(previous.begin(), previous.end(), next.begin()));
      previous = std::move(next);
    }
  }

  SUBCASE("bound estimate covers the n-th prime") {
    const std::vector<std::uint64_t> primes = sieve(2'000'000).primes;
    for (std::size_t n = 1; n <= 100'000; n += (n < 100 ? 1 : 997)) {
      CHECK(nth_prime_upper_bound(n) >= primes[n - 1]);
    }
  }
}

TEST_CASE("is_prime_word") {
  CHECK(is_prime_word(59));
  CHECK(is_prime_word(509));
  CHECK_FALSE(is_prime_word(1));
  CHECK_FALSE(is_prime_word(0));
  CHECK_FALSE(is_prime_word(30031));

  for (std::uint64_t n = 0; n < 200'000; ++n) REQUIRE(is_prime_word(n) == oracle::is_prime_trial(n));

  CHECK(is_prime_word((1ULL << 61) - 1));
  CHECK(is_prime_word(18446744073709551557ULL));  // largest prime below 2^64
  CHECK_FALSE(is_prime_word(18446744073709551615ULL));
  CHECK_FALSE(is_prime_word(3215031751ULL));          // strong pseudoprime to 2, 3, 5, 7
  CHECK_FALSE(is_prime_word(3825123056546413051ULL));  // strong pseudoprime to bases up to 23
  CHECK_FALSE(is_prime_word(4294967297ULL));           // 641 * 6700417
}

TEST_CASE("next_prime_above examples") {
  CHECK(next_prime_above(BigInt(31), 1'000'000).value == 37);
  CHECK(next_prime_above(BigInt(2), 1'000'000).value == 3);
  CHECK(next_prime_above(BigInt(2311), 1'000'000).value == 2333);
  CHECK(next_prime_above(BigInt(1), 10).value == 2);

  const NextPrime r = next_prime_above(BigInt(2311), 1'000'000);
  CHECK(r.status.verdict == Verdict::CertifiedPrime);
  CHECK(r.status.certificate.has_value());
}

TEST_CASE("next_prime_above errors") {
  CHECK_THROWS_AS(next_prime_above(BigInt(0), 10), InvalidArgument);
  CHECK_THROWS_AS(next_prime_above(BigInt(5), 0), InvalidArgument);
  // 1327 .. 1361 is a gap of 34: 16 odd candidates are not enough.
  CHECK_THROWS_AS(next_prime_above(BigInt(1327), 16), SearchCapExceeded);
  CHECK(next_prime_above(BigInt(1327), 17).value == 1361);
}

TEST_CASE("next_prime_above beyond a word is labelled probable") {
  BigInt x = BigInt(1) << 100;
  const NextPrime r = next_prime_above(x, 100'000);
  CHECK(r.value > x);
  CHECK(r.status.verdict == Verdict::ProbablePrime);
  CHECK(r.value == x + 277);  // 2^100 + 277 is the next prime
}

TEST_CASE("next_prime_above is exhaustive below 10^6") {
  const std::vector<std::uint64_t> primes = oracle::primes_by_trial(1'000'100);
  // Cheap policy: the search logic is what is checked here, not certification.
  const PipelinePolicy fast{.mr_extra_rounds = 0, .proof_bit_cap = 0, .trial_bound = 100};
  std::size_t next = 0;
  for (std::uint64_t x = 1; x < 1'000'000; ++x) {
    while (primes[next] <= x) ++next;
    REQUIRE(next_prime_above(from_u64(x), 1'000'000, fast).value == from_u64(primes[next]));
  }
}
