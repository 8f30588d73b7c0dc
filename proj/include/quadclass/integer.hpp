#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace quadclass {

// Arbitrary-precision signed integer used for every scalar in the library.
using Integer = mpz_class;

Integer parse_integer(std::string_view text);
std::string to_string(const Integer& value);

bool fits_int64(const Integer& value);
std::int64_t to_int64(const Integer& value);
Integer from_int64(std::int64_t value);

Integer abs_value(const Integer& value);
int sign_of(const Integer& value);
Integer pow_ui(const Integer& base, unsigned long exp);

/// Floor division and the matching non-negative remainder (divisor > 0).
Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);

bool divides(const Integer& d, const Integer& n);
std::optional<Integer> exact_sqrt(const Integer& n);

}  // namespace quadclass
