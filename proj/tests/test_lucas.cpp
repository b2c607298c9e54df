#include "doctest.h"

#include "oracle.hpp"
#include "primorials/errors.hpp"
#include "primorials/lucas.hpp"

#include <random>

using namespace primorials;

TEST_CASE("jacobi examples") {
  CHECK(jacobi(BigInt(5), BigInt(9)) == 1);
  CHECK(jacobi(BigInt(3), BigInt(9)) == 0);
  CHECK(jacobi(BigInt(2), BigInt(15)) == 1);
  CHECK(jacobi(BigInt(-7), BigInt(5)) == -1);
  CHECK_THROWS_AS(jacobi(BigInt(3), BigInt(8)), InvalidArgument);
}

TEST_CASE("jacobi matches Euler's criterion over small moduli") {
  for (std::uint64_t m = 3; m < 400; m += 2) {
    for (long a = -300; a <= 300; ++a) {
      REQUIRE(jacobi(BigInt(a), from_u64(m)) == oracle::jacobi_euler(a, m));
    }
  }
}

TEST_CASE("jacobi matches GMP on large operands") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    BigInt m = 0, a = 0;
    for (int w = 0; w < 4; ++w) {
      m = (m << 64) + from_u64(rng());
      a = (a << 64) + from_u64(rng());
    }
    m |= 1;
    if (i % 2) a = -a;
    REQUIRE(jacobi(a, m) == mpz_jacobi(a.get_mpz_t(), m.get_mpz_t()));
  }
}

TEST_CASE("lucas_uv matches the plain recurrence") {
  const std::vector<std::pair<long, long>> params{{1, -1}, {1, 2}, {3, 5}, {1, -3}, {5, 2}, {-2, 7}};
  const std::vector<unsigned long> moduli{3, 5, 29, 209, 1001, 30029, 65537};
  for (auto [p, q] : params) {
    for (unsigned long n : moduli) {
      for (unsigned long k = 0; k < 150; ++k) {
        const LucasTerms t = lucas_uv(BigInt(k), BigInt(p), BigInt(q), BigInt(n));
        const oracle::UV expected = oracle::lucas_recurrence(k, BigInt(p), BigInt(q), BigInt(n));
        REQUIRE(t.u == expected.u);
        REQUIRE(t.v == expected.v);
        BigInt qk;
        mpz_powm_ui(qk.get_mpz_t(), oracle::mod(BigInt(q), BigInt(n)).get_mpz_t(), k, BigInt(n).get_mpz_t());
        REQUIRE(t.qk == qk);
      }
    }
  }
}

TEST_CASE("lucas doubling identities at sampled indices") {
  const BigInt n("340282366920938463463374607431768211507");  // next prime after 2^128
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const BigInt k = from_u64(rng() >> 1);
    const BigInt p = from_u64(rng() % 50 + 1);
    const BigInt q = BigInt(static_cast<long>(rng() % 100)) - 50;
    const LucasTerms a = lucas_uv(k, p, q, n);
    const LucasTerms b = lucas_uv(2 * k, p, q, n);
    REQUIRE(b.u == oracle::mod(a.u * a.v, n));
    REQUIRE(b.v == oracle::mod(a.v * a.v - 2 * a.qk, n));
  }
}

TEST_CASE("selfridge search") {
  auto r = selfridge_parameters(BigInt(2309));
  REQUIRE(r.choice);
  CHECK(jacobi(r.choice->d, BigInt(2309)) == -1);
  CHECK(r.choice->p == 1);
  CHECK(r.choice->q == (1 - r.choice->d) / 4);

  // 5 divides 35, so the first discriminant exposes it.
  auto f = selfridge_parameters(BigInt(35));
  REQUIRE(f.factor);
  CHECK(*f.factor == 5);
}
