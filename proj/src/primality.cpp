#include "primorials/primality.hpp"

#include "primorials/errors.hpp"
#include "primorials/lucas.hpp"
#include "primorials/primes.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <random>

namespace primorials {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::CertifiedPrime: return "certified-prime";
    case Verdict::ProbablePrime: return "probable-prime";
    case Verdict::Composite: return "composite";
    case Verdict::NotPrimeTrivial: return "not-prime-trivial";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::CertifiedPrime, Verdict::ProbablePrime, Verdict::Composite,
                    Verdict::NotPrimeTrivial, Verdict::Unknown}) {
    if (verdict_name(v) == s) return v;
  }
  return std::nullopt;
}

std::string_view evidence_kind_name(EvidenceKind k) {
  switch (k) {
    case EvidenceKind::SmallFactor: return "small-factor";
    case EvidenceKind::FermatMRWitness: return "mr-witness";
    case EvidenceKind::LucasWitness: return "lucas-witness";
  }
  return "unknown";
}

std::optional<EvidenceKind> parse_evidence_kind(std::string_view s) {
  for (EvidenceKind k : {EvidenceKind::SmallFactor, EvidenceKind::FermatMRWitness, EvidenceKind::LucasWitness}) {
    if (evidence_kind_name(k) == s) return k;
  }
  return std::nullopt;
}

namespace {

BigInt powm(const BigInt& base, const BigInt& exp, const BigInt& mod) {
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

BigInt gcd_of(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt reduce(const BigInt& a, const BigInt& n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r;
}

bool is_odd(const BigInt& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

CompositeEvidence small_factor(BigInt f) { return CompositeEvidence{EvidenceKind::SmallFactor, std::move(f), 0, 0}; }

ProofFailure composite_detected(CompositeEvidence ev, std::string detail) {
  return ProofFailure{ProofFailure::Kind::CompositeDetected, std::move(ev), std::move(detail)};
}

ProofFailure exhausted(std::string detail) {
  return ProofFailure{ProofFailure::Kind::SearchExhausted, std::nullopt, std::move(detail)};
}

const std::vector<std::uint64_t>& witness_bases(unsigned cap) {
  // The first 1000 primes cover the default cap; larger caps sieve on demand.
  static const std::vector<std::uint64_t> kDefault = first_n_primes(1000).primes;
  if (cap <= kDefault.size()) return kDefault;
  thread_local std::vector<std::uint64_t> larger;
  if (larger.size() < cap) larger = first_n_primes(cap).primes;
  return larger;
}

std::vector<Factor> sorted_factors(std::span<const Factor> factorization) {
  std::vector<Factor> out(factorization.begin(), factorization.end());
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.prime < b.prime; });
  return out;
}

}  // namespace

std::optional<std::uint64_t> trial_divide(const BigInt& n, std::uint64_t bound) {
  if (n < 2 || bound < 2) throw InvalidArgument("trial_divide needs n >= 2 and bound >= 2");
  const std::uint64_t root = fits_u64(n) ? *to_u64(isqrt(n)) : std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t p : *cached_primes_up_to(bound)) {
    if (p > root) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return p;
  }
  return std::nullopt;
}

ProbablePrimeTest miller_rabin(const BigInt& n, std::span<const BigInt> bases) {
  if (n <= 3 || !is_odd(n)) throw InvalidArgument("miller_rabin needs odd n > 3");
  const BigInt n_minus_one = n - 1;
  for (const BigInt& a : bases) {
    if (a < 2 || a > n - 2) throw InvalidArgument("miller_rabin base outside [2, n-2]: " + to_decimal(a));
  }
  BigInt d = n_minus_one;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  ProbablePrimeTest out;
  for (const BigInt& a : bases) {
    ++out.rounds;
    BigInt x = powm(a, d, n);
    if (x == 1 || x == n_minus_one) continue;
    bool reached = false;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n_minus_one) {
        reached = true;
        break;
      }
    }
    if (!reached) {
      out.witness = a;
      return out;
    }
  }
  out.probable_prime = true;
  return out;
}

std::vector<BigInt> miller_rabin_bases(const BigInt& n, const PipelinePolicy& policy) {
  static constexpr std::array<unsigned, 6> kFixed{2, 3, 5, 7, 11, 13};
  std::vector<BigInt> bases;
  for (unsigned a : kFixed) {
    if (a <= n - 2) bases.emplace_back(a);
  }
  if (n < 5 || policy.mr_extra_rounds == 0) return bases;

  const std::uint64_t low = mpz_getlimbn(n.get_mpz_t(), 0);
  std::seed_seq seq{static_cast<std::uint32_t>(policy.seed), static_cast<std::uint32_t>(policy.seed >> 32),
                    static_cast<std::uint32_t>(low), static_cast<std::uint32_t>(low >> 32),
                    static_cast<std::uint32_t>(bit_length(n))};
  std::mt19937_64 rng(seq);
  const BigInt span = n - 3;  // bases land in [2, n-2]
  const std::size_t words = bit_length(n) / 64 + 2;
  for (unsigned i = 0; i < policy.mr_extra_rounds; ++i) {
    BigInt r = 0;
    for (std::size_t w = 0; w < words; ++w) {
      r <<= 64;
      r += from_u64(rng());
    }
    bases.push_back(r % span + 2);
  }
  return bases;
}

namespace {

bool strong_lucas_condition(const BigInt& n, const BigInt& p, const BigInt& q) {
  BigInt d = n + 1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  LucasTerms t = lucas_uv(d, p, q, n);
  if (t.u == 0) return true;
  for (mp_bitcnt_t r = 0; r < s; ++r) {
    if (t.v == 0) return true;
    t.v = reduce(t.v * t.v - 2 * t.qk, n);
    t.qk = t.qk * t.qk % n;
  }
  return false;
}

}  // namespace

LucasTest strong_lucas(const BigInt& n) {
  if (n <= 3 || !is_odd(n)) throw InvalidArgument("strong_lucas needs odd n > 3");
  if (is_perfect_square(n)) throw InvalidArgument("strong_lucas: perfect square input " + to_decimal(n));
  SelfridgeOutcome sel = selfridge_parameters(n);
  LucasTest out;
  if (sel.factor) {
    out.factor = sel.factor;
    return out;
  }
  if (!sel.choice) throw ResourceError("selfridge parameter search exhausted");
  out.d = sel.choice->d;
  out.p = sel.choice->p;
  out.q = sel.choice->q;
  out.probable_prime = strong_lucas_condition(n, out.p, out.q);
  return out;
}

bool strong_lucas_holds(const BigInt& n, const BigInt& p, const BigInt& q) {
  if (n <= 3 || !is_odd(n)) throw InvalidArgument("strong_lucas needs odd n > 3");
  return strong_lucas_condition(n, p, q);
}

bool bpsw(const BigInt& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (!is_odd(n) || is_perfect_square(n)) return false;
  const std::vector<BigInt> bases = miller_rabin_bases(n, PipelinePolicy{.mr_extra_rounds = 0});
  if (!miller_rabin(n, bases).probable_prime) return false;
  return strong_lucas(n).probable_prime;
}

// ---------------------------------------------------------------------------
// Provers

ProofResult prove_n_minus_one(const BigInt& n, std::span<const Factor> factorization, unsigned witness_cap) {
  if (n < 2) throw InvalidArgument("prove_n_minus_one needs n >= 2");
  const BigInt n_minus_one = n - 1;
  if (factorization_product(factorization) != n_minus_one) {
    throw InvalidArgument("factorization does not multiply to n-1");
  }
  if (n > 2 && !is_odd(n)) return composite_detected(small_factor(2), "even");

  PrimalityCertificate cert;
  cert.kind = CertificateKind::NMinusOne;
  cert.subject = n;
  cert.factored_part = sorted_factors(factorization);

  const std::vector<std::uint64_t>& candidates = witness_bases(witness_cap);
  std::map<std::uint64_t, bool> fermat_ok;
  for (const Factor& f : cert.factored_part) {
    const BigInt cofactor = n_minus_one / f.prime;
    bool found = false;
    for (unsigned i = 0; i < witness_cap && i < candidates.size(); ++i) {
      const BigInt a = reduce(from_u64(candidates[i]), n);
      if (a < 2) continue;
      auto [it, fresh] = fermat_ok.try_emplace(candidates[i], false);
      if (fresh) it->second = powm(a, n_minus_one, n) == 1;
      if (!it->second) {
        return composite_detected(CompositeEvidence{EvidenceKind::FermatMRWitness, a, 0, 0},
                                  "a^(n-1) != 1 for a = " + to_decimal(a));
      }
      const BigInt g = gcd_of(reduce(powm(a, cofactor, n) - 1, n), n);
      if (g == 1) {
        cert.bases.push_back({f.prime, a});
        found = true;
        break;
      }
      if (g != n) return composite_detected(small_factor(g), "gcd exposed a divisor");
    }
    if (!found) return exhausted("no pocklington base for q = " + to_decimal(f.prime));
  }
  return cert;
}

ProofResult prove_n_minus_one(const BigInt& n, std::span<const std::uint64_t> primes, unsigned witness_cap) {
  const std::vector<Factor> factors = factors_from_primes(primes);
  return prove_n_minus_one(n, factors, witness_cap);
}

ProofResult prove_n_plus_one(const BigInt& n, std::span<const Factor> factorization, unsigned witness_cap) {
  if (n < 3) throw InvalidArgument("prove_n_plus_one needs n >= 3");
  const BigInt n_plus_one = n + 1;
  if (factorization_product(factorization) != n_plus_one) {
    throw InvalidArgument("factorization does not multiply to n+1");
  }
  if (!is_odd(n)) return composite_detected(small_factor(2), "even");
  if (is_perfect_square(n)) return composite_detected(small_factor(isqrt(n)), "perfect square");

  SelfridgeOutcome sel = selfridge_parameters(n);
  if (sel.factor) return composite_detected(small_factor(*sel.factor), "discriminant search exposed a divisor");
  if (!sel.choice) return exhausted("no discriminant with jacobi(D, n) = -1");

  PrimalityCertificate cert;
  cert.kind = CertificateKind::NPlusOne;
  cert.subject = n;
  cert.factored_part = sorted_factors(factorization);
  cert.discriminant = sel.choice->d;
  const BigInt& d = cert.discriminant;

  std::map<BigInt, bool> full_ok;  // keyed by P: U_(n+1) = 0 (mod n)
  for (const Factor& f : cert.factored_part) {
    const BigInt index = n_plus_one / f.prime;
    bool found = false;
    BigInt p = 1;
    for (unsigned attempt = 0; attempt < witness_cap; ++attempt, p += 2) {
      const BigInt q = (p * p - d) / 4;
      const BigInt gq = gcd_of(q, n);
      if (gq != 1) {
        if (gq != n) return composite_detected(small_factor(gq), "gcd(Q, n) exposed a divisor");
        continue;
      }
      auto [it, fresh] = full_ok.try_emplace(p, false);
      if (fresh) it->second = lucas_uv(n_plus_one, p, q, n).u == 0;
      if (!it->second) {
        return composite_detected(CompositeEvidence{EvidenceKind::LucasWitness, d, p, q},
                                  "U_(n+1) != 0 for P = " + to_decimal(p));
      }
      const BigInt g = gcd_of(lucas_uv(index, p, q, n).u, n);
      if (g == 1) {
        cert.lucas.push_back({f.prime, p, q, index});
        found = true;
        break;
      }
      if (g != n) return composite_detected(small_factor(g), "gcd exposed a divisor");
    }
    if (!found) return exhausted("no lucas parameters for q = " + to_decimal(f.prime));
  }
  return cert;
}

ProofResult prove_n_plus_one(const BigInt& n, std::span<const std::uint64_t> primes, unsigned witness_cap) {
  const std::vector<Factor> factors = factors_from_primes(primes);
  return prove_n_plus_one(n, factors, witness_cap);
}

bool evidence_holds(const BigInt& n, const CompositeEvidence& ev) {
  switch (ev.kind) {
    case EvidenceKind::SmallFactor:
      return ev.value > 1 && ev.value < n && mpz_divisible_p(n.get_mpz_t(), ev.value.get_mpz_t());
    case EvidenceKind::FermatMRWitness: {
      if (n <= 3 || !is_odd(n) || ev.value < 2 || ev.value > n - 2) return false;
      const std::array<BigInt, 1> base{ev.value};
      return !miller_rabin(n, base).probable_prime;
    }
    case EvidenceKind::LucasWitness:
      if (n <= 3 || !is_odd(n) || is_perfect_square(n)) return false;
      if (ev.lucas_p * ev.lucas_p - 4 * ev.lucas_q != ev.value) return false;
      if (jacobi(ev.value, n) != -1) return false;
      return !strong_lucas_holds(n, ev.lucas_p, ev.lucas_q);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

// Full factorization of a word-sized m >= 1 by trial division, accepting one
// leftover cofactor when it is itself prime.
std::optional<std::vector<Factor>> factor_word(std::uint64_t m, std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : *cached_primes_up_to(std::min<std::uint64_t>(std::max<std::uint64_t>(bound, 2), 1ULL << 32))) {
    if (static_cast<unsigned __int128>(p) * p > m) break;
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  if (m > 1) {
    if (!is_prime_word(m)) return std::nullopt;
    primes.push_back(m);
  }
  return factors_from_primes(primes);
}

std::optional<NeighborFactorization> derive_context(const BigInt& n, std::uint64_t bound) {
  auto word = to_u64(n);
  if (!word || *word < 2) return std::nullopt;
  if (auto f = factor_word(*word - 1, bound)) return NeighborFactorization{NeighborSide::MinusOne, std::move(*f)};
  if (*word < std::numeric_limits<std::uint64_t>::max() && (*word & 1)) {
    if (auto f = factor_word(*word + 1, bound)) return NeighborFactorization{NeighborSide::PlusOne, std::move(*f)};
  }
  return std::nullopt;
}

Classification composite(std::vector<TraceStep> trace, CompositeEvidence ev) {
  return Classification{Verdict::Composite, std::nullopt, std::move(ev), std::move(trace)};
}

Classification probable(std::vector<TraceStep> trace) {
  return Classification{Verdict::ProbablePrime, std::nullopt, std::nullopt, std::move(trace)};
}

}  // namespace

Classification classify(const BigInt& n, const std::optional<NeighborFactorization>& context,
                        const PipelinePolicy& policy) {
  std::vector<TraceStep> trace;
  if (n <= 1) {
    trace.push_back({"trivial", "value <= 1"});
    return Classification{Verdict::NotPrimeTrivial, std::nullopt, std::nullopt, std::move(trace)};
  }

  if (n <= 3) {
    trace.push_back({"small-prime", "pass"});
  } else {
    const std::uint64_t bound = std::max<std::uint64_t>(policy.trial_bound, 2);
    const std::string td = "trial-division(" + std::to_string(bound) + ")";
    if (auto f = trial_divide(n, bound)) {
      trace.push_back({td, "factor " + std::to_string(*f)});
      return composite(std::move(trace), small_factor(from_u64(*f)));
    }
    trace.push_back({td, "no factor"});

    if (is_perfect_square(n)) {
      trace.push_back({"perfect-square", "square root " + to_decimal(isqrt(n))});
      return composite(std::move(trace), small_factor(isqrt(n)));
    }

    const std::vector<BigInt> bases = miller_rabin_bases(n, policy);
    const std::string mr = "miller-rabin(" + std::to_string(bases.size()) + " bases)";
    ProbablePrimeTest m = miller_rabin(n, bases);
    if (!m.probable_prime) {
      trace.push_back({mr, "witness " + to_decimal(*m.witness)});
      return composite(std::move(trace), CompositeEvidence{EvidenceKind::FermatMRWitness, *m.witness, 0, 0});
    }
    trace.push_back({mr, "pass"});

    LucasTest l = strong_lucas(n);
    if (l.factor) {
      trace.push_back({"strong-lucas", "parameter search found factor " + to_decimal(*l.factor)});
      return composite(std::move(trace), small_factor(*l.factor));
    }
    const std::string sl = "strong-lucas(D=" + to_decimal(l.d) + ")";
    if (!l.probable_prime) {
      trace.push_back({sl, "fail"});
      return composite(std::move(trace), CompositeEvidence{EvidenceKind::LucasWitness, l.d, l.p, l.q});
    }
    trace.push_back({sl, "pass"});
  }

  if (policy.proof_bit_cap == 0 || bit_length(n) > policy.proof_bit_cap) {
    trace.push_back({"certificate", "skipped: above proof bit cap"});
    return probable(std::move(trace));
  }
  std::optional<NeighborFactorization> ctx = context;
  if (!ctx) ctx = derive_context(n, policy.trial_bound);
  if (!ctx) {
    trace.push_back({"certificate", "skipped: no factored neighbour"});
    return probable(std::move(trace));
  }

  const bool minus_side = ctx->side == NeighborSide::MinusOne;
  const std::string step = minus_side ? "prove-n-1" : "prove-n+1";
  ProofResult proof;
  try {
    proof = minus_side ? prove_n_minus_one(n, ctx->factors, policy.witness_cap)
                       : prove_n_plus_one(n, ctx->factors, policy.witness_cap);
  } catch (const InvalidArgument& e) {
    trace.push_back({step, std::string("invalid context: ") + e.what()});
    return probable(std::move(trace));
  }

  if (auto* failure = std::get_if<ProofFailure>(&proof)) {
    if (failure->kind == ProofFailure::Kind::CompositeDetected) {
      trace.push_back({step, "composite: " + failure->detail});
      return composite(std::move(trace), *failure->evidence);
    }
    trace.push_back({step, "exhausted: " + failure->detail});
    return probable(std::move(trace));
  }

  auto& cert = std::get<PrimalityCertificate>(proof);
  trace.push_back({step, "certificate"});
  VerifyResult check = verify_certificate(cert);
  if (!check) {
    trace.push_back({"verify", "reject: " + std::string(reason_name(check.reason))});
    return probable(std::move(trace));
  }
  trace.push_back({"verify", "accept"});
  return Classification{Verdict::CertifiedPrime, std::move(cert), std::nullopt, std::move(trace)};
}

Classification classify(const BigInt& n, const PipelinePolicy& policy) { return classify(n, std::nullopt, policy); }

}  // namespace primorials
