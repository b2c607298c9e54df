#include "primorials/primorial.hpp"

#include "primorials/errors.hpp"
#include "primorials/primes.hpp"

namespace primorials {

BigInt product_tree(std::span<const BigInt> values) {
  if (values.empty()) return BigInt(1);
  std::vector<BigInt> level(values.begin(), values.end());
  while (level.size() > 1) {
    std::vector<BigInt> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] * level[i + 1]);
    if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return level.front();
}

BigInt product_tree(std::span<const std::uint64_t> values) {
  std::vector<BigInt> leaves;
  leaves.reserve(values.size());
  for (std::uint64_t v : values) leaves.push_back(from_u64(v));
  return product_tree(std::span<const BigInt>(leaves));
}

BigInt primorial(std::size_t n) {
  if (n == 0) throw InvalidArgument("primorial index must be >= 1");
  const PrimeList primes = first_n_primes(n);
  return product_tree(std::span<const std::uint64_t>(primes.primes));
}

PrimorialCandidate candidates_from(std::span<const std::uint64_t> first_primes) {
  if (first_primes.empty()) throw InvalidArgument("primorial index must be >= 1");
  PrimorialCandidate c;
  c.index = first_primes.size();
  c.factors.assign(first_primes.begin(), first_primes.end());
  c.primorial = product_tree(first_primes);
  c.plus = c.primorial + 1;
  c.minus = c.primorial - 1;
  return c;
}

PrimorialCandidate candidates(std::size_t n) {
  if (n == 0) throw InvalidArgument("primorial index must be >= 1");
  const PrimeList primes = first_n_primes(n);
  return candidates_from(primes.primes);
}

}  // namespace primorials
