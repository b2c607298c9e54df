#pragma once

#include "primorials/bigint.hpp"
#include "primorials/certificate.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace primorials {

struct PipelinePolicy {
  std::uint64_t seed = 0;
  unsigned mr_extra_rounds = 8;
  std::size_t proof_bit_cap = 4096;  // 0 disables certificate attempts
  std::uint64_t trial_bound = 1'000'000;
  unsigned witness_cap = 1000;

  friend bool operator==(const PipelinePolicy&, const PipelinePolicy&) = default;
};

enum class Verdict { CertifiedPrime, ProbablePrime, Composite, NotPrimeTrivial, Unknown };

std::string_view verdict_name(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);
inline bool is_prime_verdict(Verdict v) { return v == Verdict::CertifiedPrime || v == Verdict::ProbablePrime; }

enum class EvidenceKind { SmallFactor, FermatMRWitness, LucasWitness };

std::string_view evidence_kind_name(EvidenceKind k);
std::optional<EvidenceKind> parse_evidence_kind(std::string_view s);

/// Re-checkable proof of compositeness. For LucasWitness `value` is the
/// discriminant and (lucas_p, lucas_q) the parameters that failed.
struct CompositeEvidence {
  EvidenceKind kind = EvidenceKind::SmallFactor;
  BigInt value;
  BigInt lucas_p;
  BigInt lucas_q;

  friend bool operator==(const CompositeEvidence&, const CompositeEvidence&) = default;
};

struct TraceStep {
  std::string test;
  std::string outcome;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Classification {
  Verdict verdict = Verdict::Unknown;
  std::optional<PrimalityCertificate> certificate;
  std::optional<CompositeEvidence> evidence;
  std::vector<TraceStep> trace;

  friend bool operator==(const Classification&, const Classification&) = default;
};

enum class NeighborSide { MinusOne, PlusOne };

/// Complete factorization of N-1 (MinusOne) or N+1 (PlusOne).
struct NeighborFactorization {
  NeighborSide side = NeighborSide::MinusOne;
  std::vector<Factor> factors;
};

/// Smallest prime p <= bound with p | n and p < n.
std::optional<std::uint64_t> trial_divide(const BigInt& n, std::uint64_t bound);

struct ProbablePrimeTest {
  bool probable_prime = false;
  std::optional<BigInt> witness;  // first failing base (Miller-Rabin)
  std::size_t rounds = 0;
};

/// Strong probable-prime test. n odd > 3, every base in [2, n-2].
ProbablePrimeTest miller_rabin(const BigInt& n, std::span<const BigInt> bases);

/// Fixed bases {2, 3, 5, 7, 11, 13} that fit below n-1, then `mr_extra_rounds`
/// bases drawn from a PRNG seeded by (policy.seed, n).
std::vector<BigInt> miller_rabin_bases(const BigInt& n, const PipelinePolicy& policy);

struct LucasTest {
  bool probable_prime = false;
  BigInt d;
  BigInt p;
  BigInt q;
  std::optional<BigInt> factor;  // set when parameter search exposed a divisor
};

/// Strong Lucas probable-prime test with Selfridge parameters. n odd > 3;
/// perfect squares are rejected with InvalidArgument.
LucasTest strong_lucas(const BigInt& n);

/// The strong Lucas condition for explicit parameters.
bool strong_lucas_holds(const BigInt& n, const BigInt& p, const BigInt& q);

/// Miller-Rabin on the fixed bases plus strong Lucas, with the small cases and
/// the perfect-square check handled up front.
bool bpsw(const BigInt& n);

struct ProofFailure {
  enum class Kind { CompositeDetected, SearchExhausted };
  Kind kind = Kind::SearchExhausted;
  std::optional<CompositeEvidence> evidence;
  std::string detail;
};

using ProofResult = std::variant<PrimalityCertificate, ProofFailure>;

/// Pocklington proof from the complete factorization of n-1. Bases a = 2, 3, 5,
/// 7, ... are tried per prime, at most `witness_cap` of them.
ProofResult prove_n_minus_one(const BigInt& n, std::span<const Factor> factorization, unsigned witness_cap = 1000);
ProofResult prove_n_minus_one(const BigInt& n, std::span<const std::uint64_t> primes, unsigned witness_cap = 1000);

/// Lucas proof from the complete factorization of n+1. D comes from the
/// Selfridge search; P = 1, 3, 5, ... with Q = (P^2 - D)/4 is re-searched per
/// prime when the gcd condition fails.
ProofResult prove_n_plus_one(const BigInt& n, std::span<const Factor> factorization, unsigned witness_cap = 1000);
ProofResult prove_n_plus_one(const BigInt& n, std::span<const std::uint64_t> primes, unsigned witness_cap = 1000);

/// True iff the evidence still demonstrates that n is composite.
bool evidence_holds(const BigInt& n, const CompositeEvidence& evidence);

/// The layered pipeline: trivial values, trial division, Miller-Rabin, strong
/// Lucas, then a certificate attempt when a factored neighbour is known (or can
/// be found by trial division for word-sized n) and n is within the bit cap.
Classification classify(const BigInt& n, const std::optional<NeighborFactorization>& context,
                        const PipelinePolicy& policy);
Classification classify(const BigInt& n, const PipelinePolicy& policy = {});

}  // namespace primorials
