#include "primorials/certificate.hpp"

#include "primorials/primes.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>

namespace primorials {

std::vector<Factor> factors_from_primes(std::span<const std::uint64_t> primes) {
  std::map<std::uint64_t, unsigned> counts;
  for (std::uint64_t p : primes) ++counts[p];
  std::vector<Factor> out;
  out.reserve(counts.size());
  for (const auto& [p, e] : counts) out.push_back({from_u64(p), e});
  return out;
}

BigInt factorization_product(std::span<const Factor> factors) {
  BigInt product = 1;
  for (const Factor& f : factors) {
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    product *= power;
  }
  return product;
}

std::string_view reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::Malformed: return "malformed";
    case RejectReason::ChecksumMismatch: return "checksum-mismatch";
    case RejectReason::BadFactorizationProduct: return "bad-factorization-product";
    case RejectReason::NonPrimeFactor: return "non-prime-factor";
    case RejectReason::BadParameters: return "bad-parameters";
    case RejectReason::FailedCongruence: return "failed-congruence";
    case RejectReason::FailedGcd: return "failed-gcd";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Verification. Nothing here calls into the prover or its Lucas ladder.

namespace {

VerifyResult reject(RejectReason reason, std::string detail) {
  return VerifyResult{false, reason, std::move(detail)};
}

BigInt reduce(const BigInt& a, const BigInt& n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r;
}

BigInt power_mod(const BigInt& base, const BigInt& exponent, const BigInt& n) {
  BigInt result = 1;
  const BigInt b = reduce(base, n);
  for (std::size_t i = bit_length(exponent); i-- > 0;) {
    result = result * result % n;
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = result * b % n;
  }
  return result % n;
}

struct Mat2 {
  BigInt a, b, c, d;
};

Mat2 mul(const Mat2& x, const Mat2& y, const BigInt& n) {
  return Mat2{reduce(x.a * y.a + x.b * y.c, n), reduce(x.a * y.b + x.b * y.d, n),
              reduce(x.c * y.a + x.d * y.c, n), reduce(x.c * y.b + x.d * y.d, n)};
}

// U_k mod n from [[P, -Q], [1, 0]]^k, whose lower-left entry is U_k.
BigInt lucas_u_matrix(const BigInt& k, const BigInt& p, const BigInt& q, const BigInt& n) {
  Mat2 result{1, 0, 0, 1};
  const Mat2 step{reduce(p, n), reduce(-q, n), 1, 0};
  for (std::size_t i = bit_length(k); i-- > 0;) {
    result = mul(result, result, n);
    if (mpz_tstbit(k.get_mpz_t(), i)) result = mul(result, step, n);
  }
  return result.c;
}

BigInt gcd_of(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

VerifyResult check_factored_part(const PrimalityCertificate& cert, const BigInt& expected) {
  if (factorization_product(cert.factored_part) != expected) {
    return reject(RejectReason::BadFactorizationProduct,
                  std::string("product of factored_part differs from ") +
                      (cert.kind == CertificateKind::NMinusOne ? "N-1" : "N+1"));
  }
  for (std::size_t i = 0; i < cert.factored_part.size(); ++i) {
    const Factor& f = cert.factored_part[i];
    if (f.exponent == 0) return reject(RejectReason::BadParameters, "zero exponent");
    if (i > 0 && cert.factored_part[i - 1].prime >= f.prime) {
      return reject(RejectReason::BadParameters, "factors not strictly increasing");
    }
    auto word = to_u64(f.prime);
    if (!word || !is_prime_word(*word)) {
      return reject(RejectReason::NonPrimeFactor, "listed factor " + to_decimal(f.prime) + " is not a word-sized prime");
    }
  }
  return VerifyResult{true, RejectReason::None, {}};
}

VerifyResult verify_n_minus_one(const PrimalityCertificate& cert) {
  const BigInt& n = cert.subject;
  if (n < 2) return reject(RejectReason::BadParameters, "subject below 2");
  if (!cert.lucas.empty() || cert.discriminant != 0) {
    return reject(RejectReason::BadParameters, "lucas data in an n-1 certificate");
  }
  const BigInt n_minus_one = n - 1;
  if (auto r = check_factored_part(cert, n_minus_one); !r) return r;
  if (cert.bases.size() != cert.factored_part.size()) {
    return reject(RejectReason::BadParameters, "one base per prime factor required");
  }
  for (std::size_t i = 0; i < cert.bases.size(); ++i) {
    const PocklingtonBase& w = cert.bases[i];
    if (w.factor != cert.factored_part[i].prime) {
      return reject(RejectReason::BadParameters, "base listed for a different factor");
    }
    if (power_mod(w.base, n_minus_one, n) != 1) {
      return reject(RejectReason::FailedCongruence, "a^(N-1) != 1 for q = " + to_decimal(w.factor));
    }
    BigInt partial = power_mod(w.base, n_minus_one / w.factor, n) - 1;
    if (gcd_of(reduce(partial, n), n) != 1) {
      return reject(RejectReason::FailedGcd, "gcd(a^((N-1)/q) - 1, N) != 1 for q = " + to_decimal(w.factor));
    }
  }
  return VerifyResult{true, RejectReason::None, {}};
}

VerifyResult verify_n_plus_one(const PrimalityCertificate& cert) {
  const BigInt& n = cert.subject;
  if (n < 3 || mpz_even_p(n.get_mpz_t())) return reject(RejectReason::BadParameters, "subject must be odd and >= 3");
  if (!cert.bases.empty()) return reject(RejectReason::BadParameters, "pocklington bases in an n+1 certificate");
  const BigInt n_plus_one = n + 1;
  if (auto r = check_factored_part(cert, n_plus_one); !r) return r;
  if (mpz_jacobi(reduce(cert.discriminant, n).get_mpz_t(), n.get_mpz_t()) != -1) {
    return reject(RejectReason::BadParameters, "jacobi(D, N) != -1");
  }
  if (cert.lucas.size() != cert.factored_part.size()) {
    return reject(RejectReason::BadParameters, "one parameter set per prime factor required");
  }
  for (std::size_t i = 0; i < cert.lucas.size(); ++i) {
    const LucasParameters& w = cert.lucas[i];
    if (w.factor != cert.factored_part[i].prime) {
      return reject(RejectReason::BadParameters, "parameters listed for a different factor");
    }
    if (w.p * w.p - 4 * w.q != cert.discriminant) {
      return reject(RejectReason::BadParameters, "P^2 - 4Q != D");
    }
    if (w.index * w.factor != n_plus_one) {
      return reject(RejectReason::BadParameters, "index != (N+1)/q");
    }
    if (gcd_of(reduce(w.q, n), n) != 1) return reject(RejectReason::BadParameters, "gcd(Q, N) != 1");
    if (lucas_u_matrix(n_plus_one, w.p, w.q, n) != 0) {
      return reject(RejectReason::FailedCongruence, "U_(N+1) != 0 for q = " + to_decimal(w.factor));
    }
    if (gcd_of(lucas_u_matrix(w.index, w.p, w.q, n), n) != 1) {
      return reject(RejectReason::FailedGcd, "gcd(U_((N+1)/q), N) != 1 for q = " + to_decimal(w.factor));
    }
  }
  return VerifyResult{true, RejectReason::None, {}};
}

}  // namespace

VerifyResult verify_certificate(const PrimalityCertificate& cert) {
  if (cert.version != PrimalityCertificate::kFormatVersion) {
    return reject(RejectReason::BadParameters, "unsupported version");
  }
  return cert.kind == CertificateKind::NMinusOne ? verify_n_minus_one(cert) : verify_n_plus_one(cert);
}

// ---------------------------------------------------------------------------
// Text format.

namespace {

std::string crc_hex(std::string_view body) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size()));
  std::array<char, 9> buf{};
  std::snprintf(buf.data(), buf.size(), "%08lx", static_cast<unsigned long>(crc & 0xffffffffUL));
  return std::string(buf.data(), 8);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

ParseResult parse_error(std::string detail) {
  return ParseResult{std::nullopt, RejectReason::Malformed, std::move(detail)};
}

// "key" or "key tok tok ..." with single spaces and no empty tokens.
std::optional<std::vector<std::string_view>> fields(std::string_view line, std::string_view key) {
  if (line.substr(0, key.size()) != key) return std::nullopt;
  std::string_view rest = line.substr(key.size());
  std::vector<std::string_view> tokens;
  if (rest.empty()) return tokens;
  if (rest.front() != ' ') return std::nullopt;
  for (std::string_view tok : split(rest.substr(1), ' ')) {
    if (tok.empty()) return std::nullopt;
    tokens.push_back(tok);
  }
  return tokens;
}

std::optional<BigInt> hex_after(std::string_view tok, std::string_view prefix) {
  if (tok.substr(0, prefix.size()) != prefix) return std::nullopt;
  return parse_hex(tok.substr(prefix.size()));
}

}  // namespace

std::string serialize_certificate(const PrimalityCertificate& cert) {
  std::string out;
  out += cert.kind == CertificateKind::NMinusOne ? "kind n-1\n" : "kind n+1\n";
  out += "subject " + to_hex(cert.subject) + "\n";
  out += "factored_part";
  for (const Factor& f : cert.factored_part) out += " " + to_hex(f.prime) + "^" + to_hex(BigInt(f.exponent));
  out += "\nwitness_data";
  if (cert.kind == CertificateKind::NMinusOne) {
    for (const PocklingtonBase& b : cert.bases) out += " " + to_hex(b.factor) + ":" + to_hex(b.base);
  } else {
    out += " d=" + to_hex(cert.discriminant);
    for (const LucasParameters& l : cert.lucas) {
      out += " " + to_hex(l.factor) + ":p=" + to_hex(l.p) + ",q=" + to_hex(l.q) + ",k=" + to_hex(l.index);
    }
  }
  out += "\nversion " + to_hex(BigInt(cert.version)) + "\n";
  out += "checksum " + crc_hex(out) + "\n";
  return out;
}

ParseResult parse_certificate(std::string_view text) {
  if (text.empty() || text.back() != '\n') return parse_error("missing trailing newline");
  std::vector<std::string_view> lines = split(text.substr(0, text.size() - 1), '\n');
  if (lines.size() != 6) return parse_error("expected 6 lines, found " + std::to_string(lines.size()));

  auto checksum = fields(lines[5], "checksum");
  if (!checksum || checksum->size() != 1) return parse_error("bad checksum line");
  std::string_view body = text.substr(0, text.size() - lines[5].size() - 1);
  if ((*checksum)[0] != crc_hex(body)) {
    return ParseResult{std::nullopt, RejectReason::ChecksumMismatch, "crc32 does not match body"};
  }

  PrimalityCertificate cert;
  auto kind = fields(lines[0], "kind");
  if (!kind || kind->size() != 1) return parse_error("bad kind line");
  if ((*kind)[0] == "n-1") {
    cert.kind = CertificateKind::NMinusOne;
  } else if ((*kind)[0] == "n+1") {
    cert.kind = CertificateKind::NPlusOne;
  } else {
    return parse_error("unknown kind");
  }

  auto subject = fields(lines[1], "subject");
  if (!subject || subject->size() != 1) return parse_error("bad subject line");
  auto n = parse_hex((*subject)[0]);
  if (!n) return parse_error("bad subject value");
  cert.subject = *n;

  auto factored = fields(lines[2], "factored_part");
  if (!factored) return parse_error("bad factored_part line");
  for (std::string_view tok : *factored) {
    auto parts = split(tok, '^');
    if (parts.size() != 2) return parse_error("bad factor token");
    auto p = parse_hex(parts[0]);
    auto e = parse_hex(parts[1]);
    if (!p || !e || *e < 1 || *e > 1'000'000) return parse_error("bad factor token");
    cert.factored_part.push_back({*p, static_cast<unsigned>(e->get_ui())});
  }

  auto witness = fields(lines[3], "witness_data");
  if (!witness) return parse_error("bad witness_data line");
  if (cert.kind == CertificateKind::NMinusOne) {
    for (std::string_view tok : *witness) {
      auto parts = split(tok, ':');
      if (parts.size() != 2) return parse_error("bad base token");
      auto q = parse_hex(parts[0]);
      auto a = parse_hex(parts[1]);
      if (!q || !a) return parse_error("bad base token");
      cert.bases.push_back({*q, *a});
    }
  } else {
    if (witness->empty()) return parse_error("missing discriminant");
    auto d = hex_after((*witness)[0], "d=");
    if (!d) return parse_error("bad discriminant token");
    cert.discriminant = *d;
    for (std::size_t i = 1; i < witness->size(); ++i) {
      auto head = split((*witness)[i], ':');
      if (head.size() != 2) return parse_error("bad lucas token");
      auto params = split(head[1], ',');
      if (params.size() != 3) return parse_error("bad lucas token");
      auto factor = parse_hex(head[0]);
      auto p = hex_after(params[0], "p=");
      auto q = hex_after(params[1], "q=");
      auto k = hex_after(params[2], "k=");
      if (!factor || !p || !q || !k) return parse_error("bad lucas token");
      cert.lucas.push_back({*factor, *p, *q, *k});
    }
  }

  auto version = fields(lines[4], "version");
  if (!version || version->size() != 1) return parse_error("bad version line");
  auto v = parse_hex((*version)[0]);
  if (!v || *v != PrimalityCertificate::kFormatVersion) return parse_error("unsupported version");
  cert.version = PrimalityCertificate::kFormatVersion;

  return ParseResult{std::move(cert), RejectReason::None, {}};
}

VerifyResult verify_certificate_text(std::string_view text) {
  ParseResult parsed = parse_certificate(text);
  if (!parsed.certificate) return reject(parsed.reason, parsed.detail);
  return verify_certificate(*parsed.certificate);
}

}  // namespace primorials
