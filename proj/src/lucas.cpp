#include "primorials/lucas.hpp"

#include "primorials/errors.hpp"

#include <stdexcept>

namespace primorials {
namespace {

constexpr std::size_t kSpotCheckStride = 16;

BigInt reduce(const BigInt& a, const BigInt& n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r;
}

// x / 2 mod n for odd n.
BigInt halve(BigInt x, const BigInt& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  return x / 2;
}

}  // namespace

LucasTerms lucas_uv(const BigInt& k, const BigInt& p, const BigInt& q, const BigInt& n) {
  if (n < 3 || mpz_even_p(n.get_mpz_t())) throw InvalidArgument("lucas_uv needs an odd modulus >= 3");
  const BigInt pm = reduce(p, n);
  const BigInt qm = reduce(q, n);
  const BigInt dm = reduce(p * p - 4 * q, n);

  LucasTerms t{0, 2 % n, 1};
  std::size_t step = 0;
  for (std::size_t i = bit_length(k); i-- > 0; ++step) {
    t.u = t.u * t.v % n;
    t.v = reduce(t.v * t.v - 2 * t.qk, n);
    t.qk = t.qk * t.qk % n;
    if (mpz_tstbit(k.get_mpz_t(), i)) {
      BigInt u = halve(reduce(pm * t.u + t.v, n), n);
      BigInt v = halve(reduce(dm * t.u + pm * t.v, n), n);
      t.u = std::move(u);
      t.v = std::move(v);
      t.qk = t.qk * qm % n;
    }
    if (step % kSpotCheckStride == 0) {
      if (reduce(t.v * t.v - dm * t.u * t.u - 4 * t.qk, n) != 0) {
        throw std::logic_error("lucas ladder identity V^2 - D U^2 = 4Q^k violated");
      }
    }
  }
  return t;
}

int jacobi(const BigInt& a_in, const BigInt& m_in) {
  if (m_in < 1 || mpz_even_p(m_in.get_mpz_t())) throw InvalidArgument("jacobi needs an odd positive modulus");
  BigInt m = m_in;
  BigInt a = reduce(a_in, m);
  int sign = 1;
  while (a != 0) {
    // Strip factors of two: (2/m) = -1 iff m = 3, 5 (mod 8).
    mp_bitcnt_t twos = mpz_scan1(a.get_mpz_t(), 0);
    if (twos > 0) {
      mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), twos);
      unsigned long m8 = mpz_fdiv_ui(m.get_mpz_t(), 8);
      if ((twos & 1) && (m8 == 3 || m8 == 5)) sign = -sign;
    }
    // Reciprocity: swap, flipping the sign when both are 3 mod 4.
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(m.get_mpz_t(), 4) == 3) sign = -sign;
    std::swap(a, m);
    a = a % m;
  }
  return m == 1 ? sign : 0;
}

SelfridgeOutcome selfridge_parameters(const BigInt& n, unsigned max_tries) {
  BigInt d = 5;
  for (unsigned i = 0; i < max_tries; ++i) {
    int j = jacobi(d, n);
    if (j == -1) return SelfridgeOutcome{SelfridgeChoice{d, 1, (1 - d) / 4}, std::nullopt};
    if (j == 0 && abs(d) != n) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      if (g > 1 && g < n) return SelfridgeOutcome{std::nullopt, g};
    }
    d = sgn(d) > 0 ? BigInt(-(d + 2)) : BigInt(-(d - 2));
  }
  return SelfridgeOutcome{};
}

}  // namespace primorials
