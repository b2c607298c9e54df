#include "primorials/bigint.hpp"

#include <stdexcept>

namespace primorials {

BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

std::optional<std::uint64_t> to_u64(const BigInt& v) {
  if (!fits_u64(v)) return std::nullopt;
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

bool fits_u64(const BigInt& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

std::size_t bit_length(const BigInt& v) {
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::size_t decimal_digits(const BigInt& v) {
  if (sgn(v) == 0) return 1;
  // mpz_sizeinbase may overshoot by one for base 10.
  return BigInt(abs(v)).get_str(10).size();
}

BigInt isqrt(const BigInt& v) {
  if (sgn(v) < 0) throw std::domain_error("isqrt of negative value");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

bool is_perfect_square(const BigInt& v) {
  if (sgn(v) < 0) return false;
  BigInt r = isqrt(v);
  return r * r == v;
}

std::string to_decimal(const BigInt& v) { return v.get_str(10); }

BigInt from_decimal(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty decimal string");
  std::size_t i = (s.front() == '-') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("bad decimal string");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad decimal string: " + std::string(s));
  }
  return BigInt(std::string(s), 10);
}

std::string to_hex(const BigInt& v) { return v.get_str(16); }

std::optional<BigInt> parse_hex(std::string_view s) {
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    if (!ok) return std::nullopt;
  }
  if (s.size() > 1 && s.front() == '0') return std::nullopt;
  if (negative && s == "0") return std::nullopt;
  BigInt r(std::string(s), 16);
  if (negative) r = -r;
  return r;
}

std::string abbreviate(const BigInt& v) {
  std::string digits = to_decimal(v);
  std::size_t n = digits.size() - (digits.front() == '-' ? 1 : 0);
  if (n <= 64) return digits;
  std::size_t lead = digits.front() == '-' ? 11 : 10;
  return digits.substr(0, lead) + "..." + "(" + std::to_string(n) + " digits)";
}

}  // namespace primorials
