#pragma once

#include "primorials/bigint.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace primorials {

/// p_n# together with its two neighbours p_n# + 1 and p_n# - 1.
struct PrimorialCandidate {
  std::size_t index = 0;
  BigInt primorial;
  std::vector<std::uint64_t> factors;  // the first `index` primes
  BigInt plus;
  BigInt minus;
};

/// Balanced product tree: adjacent partial products are paired level by level
/// until a single value remains. The empty product is 1.
BigInt product_tree(std::span<const BigInt> values);
BigInt product_tree(std::span<const std::uint64_t> values);

/// Product of the first n primes. Index 0 is rejected.
BigInt primorial(std::size_t n);

PrimorialCandidate candidates(std::size_t n);

/// Builds the candidate for an already known prime prefix.
PrimorialCandidate candidates_from(std::span<const std::uint64_t> first_primes);

}  // namespace primorials
