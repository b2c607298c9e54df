#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace primorials {

/// Arbitrary-precision integer used throughout the library.
using BigInt = mpz_class;

BigInt from_u64(std::uint64_t v);
std::optional<std::uint64_t> to_u64(const BigInt& v);
bool fits_u64(const BigInt& v);

std::size_t bit_length(const BigInt& v);
std::size_t decimal_digits(const BigInt& v);

BigInt isqrt(const BigInt& v);
bool is_perfect_square(const BigInt& v);

std::string to_decimal(const BigInt& v);
BigInt from_decimal(std::string_view s);

/// Canonical lowercase hex, leading '-' for negatives, no prefix.
std::string to_hex(const BigInt& v);

/// Strict inverse of to_hex: rejects uppercase, leading zeros, "-0", empty input.
std::optional<BigInt> parse_hex(std::string_view s);

/// Values over 64 digits render as the leading 10 digits, "...", and the digit count.
std::string abbreviate(const BigInt& v);

}  // namespace primorials
