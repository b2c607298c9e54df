#pragma once

#include "primorials/bigint.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace primorials {

/// A prime power in a factorization.
struct Factor {
  BigInt prime;
  unsigned exponent = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Groups a list of primes (repeats allowed, any order) into sorted prime powers.
std::vector<Factor> factors_from_primes(std::span<const std::uint64_t> primes);
BigInt factorization_product(std::span<const Factor> factors);

enum class CertificateKind { NMinusOne, NPlusOne };

/// Pocklington base for one prime q | N-1.
struct PocklingtonBase {
  BigInt factor;
  BigInt base;

  friend bool operator==(const PocklingtonBase&, const PocklingtonBase&) = default;
};

/// Lucas parameters for one prime q | N+1; `index` is (N+1)/q.
struct LucasParameters {
  BigInt factor;
  BigInt p;
  BigInt q;
  BigInt index;

  friend bool operator==(const LucasParameters&, const LucasParameters&) = default;
};

/// Self-contained N-1 or N+1 primality proof for `subject`, where the
/// factored part is the complete factorization of N-1 (resp. N+1).
struct PrimalityCertificate {
  static constexpr int kFormatVersion = 1;

  CertificateKind kind = CertificateKind::NMinusOne;
  BigInt subject;
  std::vector<Factor> factored_part;
  std::vector<PocklingtonBase> bases;    // NMinusOne only
  BigInt discriminant;                   // NPlusOne only
  std::vector<LucasParameters> lucas;    // NPlusOne only
  int version = kFormatVersion;

  friend bool operator==(const PrimalityCertificate&, const PrimalityCertificate&) = default;
};

enum class RejectReason {
  None,
  Malformed,
  ChecksumMismatch,
  BadFactorizationProduct,
  NonPrimeFactor,
  BadParameters,
  FailedCongruence,
  FailedGcd,
};

std::string_view reason_name(RejectReason r);

struct VerifyResult {
  bool accepted = false;
  RejectReason reason = RejectReason::None;
  std::string detail;

  explicit operator bool() const { return accepted; }
};

/// Re-derives every condition from the certificate alone. Uses its own modular
/// exponentiation and a matrix-power Lucas evaluation, independent of the prover.
VerifyResult verify_certificate(const PrimalityCertificate& cert);

/// Line-oriented text with lowercase hex integers and a trailing CRC-32 line:
///
///   kind n-1
///   subject d3
///   factored_part 2^1 3^1 5^1 7^1
///   witness_data 2:2 3:2 5:2 7:2
///   version 1
///   checksum 0123abcd
///
/// For n+1 certificates witness_data is `d=<D>` followed by `q:p=<P>,q=<Q>,k=<index>`.
std::string serialize_certificate(const PrimalityCertificate& cert);

struct ParseResult {
  std::optional<PrimalityCertificate> certificate;
  RejectReason reason = RejectReason::None;
  std::string detail;
};

ParseResult parse_certificate(std::string_view text);

/// parse_certificate followed by verify_certificate.
VerifyResult verify_certificate_text(std::string_view text);

}  // namespace primorials
