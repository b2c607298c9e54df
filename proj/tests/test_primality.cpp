#include "doctest.h"

#include "oracle.hpp"
#include "primorials/errors.hpp"
#include "primorials/primality.hpp"
#include "primorials/primorial.hpp"

#include <array>

using namespace primorials;

namespace {

std::vector<BigInt> bases(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

PrimalityCertificate cert_of(const ProofResult& r) {
  REQUIRE(std::holds_alternative<PrimalityCertificate>(r));
  return std::get<PrimalityCertificate>(r);
}

ProofFailure failure_of(const ProofResult& r) {
  REQUIRE(std::holds_alternative<ProofFailure>(r));
  return std::get<ProofFailure>(r);
}

NeighborFactorization minus_side(std::initializer_list<std::uint64_t> primes) {
  std::vector<std::uint64_t> v(primes);
  return {NeighborSide::MinusOne, factors_from_primes(v)};
}

NeighborFactorization plus_side(std::initializer_list<std::uint64_t> primes) {
  std::vector<std::uint64_t> v(primes);
  return {NeighborSide::PlusOne, factors_from_primes(v)};
}

}  // namespace

TEST_CASE("trial_divide") {
  CHECK(trial_divide(BigInt(30031), 100) == 59u);
  CHECK(trial_divide(BigInt(209), 100) == 11u);
  CHECK_FALSE(trial_divide(BigInt(211), 14).has_value());
  CHECK_FALSE(trial_divide(BigInt(211), 1000).has_value());  // never reports n itself
  CHECK_FALSE(trial_divide(BigInt(2), 100).has_value());
  CHECK_THROWS_AS(trial_divide(BigInt(1), 100), InvalidArgument);
  CHECK_THROWS_AS(trial_divide(BigInt(10), 1), InvalidArgument);
}

TEST_CASE("miller_rabin") {
  auto r211 = miller_rabin(BigInt(211), bases({2, 3}));
  CHECK(r211.probable_prime);
  CHECK(r211.rounds == 2);

  auto r9 = miller_rabin(BigInt(9), bases({2}));
  CHECK_FALSE(r9.probable_prime);
  REQUIRE(r9.witness);
  CHECK(*r9.witness == 2);

  CHECK(miller_rabin(BigInt(2047), bases({2})).probable_prime);
  CHECK_FALSE(miller_rabin(BigInt(2047), bases({2, 3})).probable_prime);

  CHECK_THROWS_AS(miller_rabin(BigInt(211), bases({1})), InvalidArgument);
  CHECK_THROWS_AS(miller_rabin(BigInt(211), bases({210})), InvalidArgument);
  CHECK_THROWS_AS(miller_rabin(BigInt(3), bases({2})), InvalidArgument);
  CHECK_THROWS_AS(miller_rabin(BigInt(10), bases({2})), InvalidArgument);
}

TEST_CASE("miller_rabin base schedule is seeded and reproducible") {
  const BigInt n("1000000000000000000000000000057");
  const PipelinePolicy policy{};
  const std::vector<BigInt> a = miller_rabin_bases(n, policy);
  CHECK(a.size() == 6 + policy.mr_extra_rounds);
  CHECK(a == miller_rabin_bases(n, policy));
  CHECK(std::vector<BigInt>(a.begin(), a.begin() + 6) == bases({2, 3, 5, 7, 11, 13}));
  for (const BigInt& b : a) {
    CHECK(b >= 2);
    CHECK(b <= n - 2);
  }
  PipelinePolicy other = policy;
  other.seed = 1;
  CHECK(miller_rabin_bases(n, other) != a);
  CHECK(miller_rabin_bases(BigInt(5), policy).front() == 2);
  for (const BigInt& b : miller_rabin_bases(BigInt(5), policy)) CHECK((b == 2 || b == 3));
}

TEST_CASE("strong_lucas") {
  CHECK(strong_lucas(BigInt(2309)).probable_prime);
  CHECK_FALSE(strong_lucas(BigInt(209)).probable_prime);
  CHECK_THROWS_AS(strong_lucas(BigInt(25)), InvalidArgument);
  CHECK_THROWS_AS(strong_lucas(BigInt(3)), InvalidArgument);
  // 5459 = 53 * 103 is the smallest strong Lucas pseudoprime (Selfridge parameters).
  CHECK(strong_lucas(BigInt(5459)).probable_prime);
  CHECK_FALSE(bpsw(BigInt(5459)));
  CHECK_FALSE(strong_lucas_holds(BigInt(209), BigInt(1), BigInt(2)));
}

TEST_CASE("bpsw agrees with trial division below 2*10^5") {
  for (std::uint64_t n = 0; n < 200'000; ++n) REQUIRE(bpsw(from_u64(n)) == oracle::is_prime_trial(n));
}

TEST_CASE("prove_n_minus_one") {
  const PrimalityCertificate c211 = cert_of(prove_n_minus_one(BigInt(211), std::vector<std::uint64_t>{2, 3, 5, 7}));
  CHECK(c211.kind == CertificateKind::NMinusOne);
  CHECK(verify_certificate(c211).accepted);
  // Oracle: the Pocklington conditions straight from their definition.
  for (const PocklingtonBase& b : c211.bases) {
    BigInt full, part;
    mpz_powm_ui(full.get_mpz_t(), b.base.get_mpz_t(), 210, BigInt(211).get_mpz_t());
    mpz_powm_ui(part.get_mpz_t(), b.base.get_mpz_t(), 210 / b.factor.get_ui(), BigInt(211).get_mpz_t());
    CHECK(full == 1);
    CHECK(part != 1);
  }

  CHECK(verify_certificate(cert_of(prove_n_minus_one(BigInt(3), std::vector<std::uint64_t>{2}))).accepted);
  CHECK(verify_certificate(cert_of(prove_n_minus_one(BigInt(2), std::vector<std::uint64_t>{}))).accepted);

  const ProofFailure f = failure_of(prove_n_minus_one(BigInt(30031), std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13}));
  CHECK(f.kind == ProofFailure::Kind::CompositeDetected);
  REQUIRE(f.evidence);
  CHECK(evidence_holds(BigInt(30031), *f.evidence));

  CHECK_THROWS_AS(prove_n_minus_one(BigInt(211), std::vector<std::uint64_t>{2, 3, 5}), InvalidArgument);
}

TEST_CASE("prove_n_minus_one with repeated factors") {
  // 257 - 1 = 2^8, 1297 - 1 = 2^4 * 3^4
  CHECK(verify_certificate(cert_of(prove_n_minus_one(BigInt(257), std::vector<std::uint64_t>(8, 2)))).accepted);
  const std::vector<std::uint64_t> f1297{2, 2, 2, 2, 3, 3, 3, 3};
  const PrimalityCertificate c = cert_of(prove_n_minus_one(BigInt(1297), f1297));
  CHECK(c.factored_part == std::vector<Factor>{{BigInt(2), 4}, {BigInt(3), 4}});
  CHECK(verify_certificate(c).accepted);
}

TEST_CASE("prove_n_minus_one search cap") {
  // 7 - 1 = 2 * 3 and 2 is a square mod 7, so a one-base cap cannot serve q = 2.
  const ProofResult r = prove_n_minus_one(BigInt(7), std::vector<std::uint64_t>{2, 3}, 1);
  CHECK(failure_of(r).kind == ProofFailure::Kind::SearchExhausted);
  CHECK(verify_certificate(cert_of(prove_n_minus_one(BigInt(7), std::vector<std::uint64_t>{2, 3}))).accepted);
}

TEST_CASE("prove_n_plus_one") {
  const PrimalityCertificate c29 = cert_of(prove_n_plus_one(BigInt(29), std::vector<std::uint64_t>{2, 3, 5}));
  CHECK(c29.kind == CertificateKind::NPlusOne);
  CHECK(verify_certificate(c29).accepted);
  // Oracle: plain recurrence for U_30 and U_(30/q) mod 29.
  for (const LucasParameters& l : c29.lucas) {
    CHECK(oracle::lucas_recurrence(30, l.p, l.q, BigInt(29)).u == 0);
    BigInt g;
    BigInt u = oracle::lucas_recurrence(l.index.get_ui(), l.p, l.q, BigInt(29)).u;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), BigInt(29).get_mpz_t());
    CHECK(g == 1);
    CHECK(l.p * l.p - 4 * l.q == c29.discriminant);
  }

  const PrimalityCertificate c5 = cert_of(prove_n_plus_one(BigInt(5), std::vector<std::uint64_t>{2, 3}));
  CHECK(verify_certificate(c5).accepted);
  CHECK(c5.discriminant == -7);

  const ProofFailure f = failure_of(prove_n_plus_one(BigInt(209), std::vector<std::uint64_t>{2, 3, 5, 7}));
  CHECK(f.kind == ProofFailure::Kind::CompositeDetected);
  REQUIRE(f.evidence);
  CHECK(evidence_holds(BigInt(209), *f.evidence));

  CHECK_THROWS_AS(prove_n_plus_one(BigInt(29), std::vector<std::uint64_t>{2, 3}), InvalidArgument);
  CHECK_THROWS_AS(prove_n_plus_one(BigInt(1), std::vector<std::uint64_t>{2}), InvalidArgument);
}

TEST_CASE("prove_n_plus_one re-searches P when the gcd condition fails") {
  // Over many primes the Selfridge P = 1 sometimes has U_((N+1)/q) = 0; the
  // prover must still finish and every certificate must verify.
  std::size_t researched = 0;
  for (std::uint64_t n = 5; n < 20'000; n += 2) {
    if (!oracle::is_prime_trial(n)) continue;
    std::vector<std::uint64_t> f;
    std::uint64_t m = n + 1;
    for (std::uint64_t p = 2; m > 1; ++p) {
      while (m % p == 0) {
        f.push_back(p);
        m /= p;
      }
    }
    const PrimalityCertificate c = cert_of(prove_n_plus_one(from_u64(n), f));
    REQUIRE(verify_certificate(c).accepted);
    for (const LucasParameters& l : c.lucas) researched += l.p != 1 ? 1 : 0;
  }
  CHECK(researched > 0);
}

TEST_CASE("composite evidence re-validates") {
  CHECK(evidence_holds(BigInt(30031), {EvidenceKind::SmallFactor, 59, 0, 0}));
  CHECK_FALSE(evidence_holds(BigInt(30031), {EvidenceKind::SmallFactor, 61, 0, 0}));
  CHECK_FALSE(evidence_holds(BigInt(30031), {EvidenceKind::SmallFactor, 30031, 0, 0}));
  CHECK(evidence_holds(BigInt(9), {EvidenceKind::FermatMRWitness, 2, 0, 0}));
  CHECK_FALSE(evidence_holds(BigInt(2047), {EvidenceKind::FermatMRWitness, 2, 0, 0}));
  CHECK_FALSE(evidence_holds(BigInt(211), {EvidenceKind::FermatMRWitness, 2, 0, 0}));

  const LucasTest l = strong_lucas(BigInt(209));
  CHECK(evidence_holds(BigInt(209), {EvidenceKind::LucasWitness, l.d, l.p, l.q}));
  CHECK_FALSE(evidence_holds(BigInt(211), {EvidenceKind::LucasWitness, l.d, l.p, l.q}));
}

TEST_CASE("classify examples") {
  const PipelinePolicy policy{};
  const Classification c211 = classify(BigInt(211), minus_side({2, 3, 5, 7}), policy);
  CHECK(c211.verdict == Verdict::CertifiedPrime);
  REQUIRE(c211.certificate);
  CHECK(verify_certificate(*c211.certificate).accepted);
  CHECK_FALSE(c211.evidence);

  const Classification c1 = classify(BigInt(1), std::nullopt, policy);
  CHECK(c1.verdict == Verdict::NotPrimeTrivial);
  CHECK_FALSE(c1.certificate);
  CHECK_FALSE(c1.evidence);
  CHECK(classify(BigInt(0), policy).verdict == Verdict::NotPrimeTrivial);

  const Classification c30029 = classify(BigInt(30029), plus_side({2, 3, 5, 7, 11, 13}), policy);
  CHECK(c30029.verdict == Verdict::CertifiedPrime);
  REQUIRE(c30029.certificate);
  CHECK(c30029.certificate->kind == CertificateKind::NPlusOne);

  const Classification c30031 = classify(BigInt(30031), minus_side({2, 3, 5, 7, 11, 13}), policy);
  CHECK(c30031.verdict == Verdict::Composite);
  REQUIRE(c30031.evidence);
  CHECK(c30031.evidence->kind == EvidenceKind::SmallFactor);
  CHECK(c30031.evidence->value == 59);

  const Classification c209 = classify(BigInt(209), plus_side({2, 3, 5, 7}), policy);
  CHECK(c209.verdict == Verdict::Composite);
  CHECK(c209.evidence->value == 11);

  CHECK(classify(BigInt(3), minus_side({2}), policy).verdict == Verdict::CertifiedPrime);
  CHECK(classify(BigInt(2), policy).verdict == Verdict::CertifiedPrime);
}

TEST_CASE("classify pipeline stages") {
  // Without trial division the MR stage has to catch composites.
  const PipelinePolicy no_trial{.trial_bound = 2};
  const Classification c = classify(BigInt(30031), no_trial);
  CHECK(c.verdict == Verdict::Composite);
  REQUIRE(c.evidence);
  CHECK(c.evidence->kind == EvidenceKind::FermatMRWitness);
  CHECK(evidence_holds(BigInt(30031), *c.evidence));

  const Classification sq = classify(BigInt(1'000'003) * BigInt(1'000'003), no_trial);
  CHECK(sq.verdict == Verdict::Composite);
  CHECK(sq.evidence->value == 1'000'003);

  // Proofs disabled: prime is only probable.
  const PipelinePolicy no_proofs{.proof_bit_cap = 0};
  const Classification p = classify(BigInt(211), minus_side({2, 3, 5, 7}), no_proofs);
  CHECK(p.verdict == Verdict::ProbablePrime);
  CHECK_FALSE(p.certificate);

  // Beyond a word and without context: probable, labelled in the trace.
  const BigInt big = (BigInt(1) << 127) - 1;
  const Classification m127 = classify(big, PipelinePolicy{});
  CHECK(m127.verdict == Verdict::ProbablePrime);
  CHECK(m127.trace.back().outcome == "skipped: no factored neighbour");

  // Mersenne prime with N+1 = 2^127 fully factored.
  std::vector<std::uint64_t> twos(127, 2);
  const Classification m127c =
      classify(big, NeighborFactorization{NeighborSide::PlusOne, factors_from_primes(twos)}, PipelinePolicy{});
  CHECK(m127c.verdict == Verdict::CertifiedPrime);

  // Wrong context never throws.
  const Classification wrong = classify(BigInt(211), plus_side({2, 3}), PipelinePolicy{});
  CHECK(wrong.verdict == Verdict::ProbablePrime);
}

TEST_CASE("classify is deterministic") {
  const PipelinePolicy policy{.seed = 42};
  for (std::size_t n = 1; n <= 30; ++n) {
    const PrimorialCandidate c = candidates(n);
    const NeighborFactorization ctx{NeighborSide::MinusOne, factors_from_primes(c.factors)};
    REQUIRE(classify(c.plus, ctx, policy) == classify(c.plus, ctx, policy));
  }
}

TEST_CASE("classify verdict invariants") {
  const PipelinePolicy policy{.trial_bound = 50};
  for (std::uint64_t n = 0; n < 3000; ++n) {
    const Classification c = classify(from_u64(n), policy);
    const bool prime = oracle::is_prime_trial(n);
    REQUIRE(is_prime_verdict(c.verdict) == prime);
    REQUIRE(c.certificate.has_value() == (c.verdict == Verdict::CertifiedPrime));
    REQUIRE(c.evidence.has_value() == (c.verdict == Verdict::Composite));
    REQUIRE((c.verdict == Verdict::NotPrimeTrivial) == (n <= 1));
    if (c.certificate) REQUIRE(verify_certificate(*c.certificate).accepted);
    if (c.evidence) REQUIRE(evidence_holds(from_u64(n), *c.evidence));
  }
}
