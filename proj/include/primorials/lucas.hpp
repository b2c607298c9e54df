#pragma once

#include "primorials/bigint.hpp"

#include <optional>

namespace primorials {

/// U_k, V_k and Q^k of the Lucas sequences with parameters (P, Q), reduced mod n.
struct LucasTerms {
  BigInt u;
  BigInt v;
  BigInt qk;
};

/// Binary ladder over the bits of k (n odd, n >= 3). Uses the doubling rules
/// U_2k = U_k V_k, V_2k = V_k^2 - 2Q^k and spot-checks V_k^2 - D U_k^2 = 4Q^k
/// every few steps; a failed spot-check throws std::logic_error.
LucasTerms lucas_uv(const BigInt& k, const BigInt& p, const BigInt& q, const BigInt& n);

/// Jacobi symbol (a/m) for odd m >= 1 via the binary algorithm.
int jacobi(const BigInt& a, const BigInt& m);

/// Selfridge method A discriminant search: D = 5, -7, 9, -11, ... with
/// jacobi(D, n) = -1.
struct SelfridgeChoice {
  BigInt d;
  BigInt p;
  BigInt q;
};

struct SelfridgeOutcome {
  std::optional<SelfridgeChoice> choice;
  std::optional<BigInt> factor;  // gcd(|D|, n) when a D exposes a divisor
};

/// n must be odd, >= 3 and not a perfect square, otherwise the search may not end.
SelfridgeOutcome selfridge_parameters(const BigInt& n, unsigned max_tries = 100'000);

}  // namespace primorials
