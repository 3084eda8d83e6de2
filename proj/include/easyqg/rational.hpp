#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace easyqg {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact scalar: always held in lowest terms with a positive denominator.
using Rational = mpq_class;

/// Square matrices are stored row-major as nested vectors.
template <typename T>
using Matrix = std::vector<std::vector<T>>;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "p/q" or "p" (optional leading '-'). Rejects zero denominators and
/// anything that is not plain decimal digits. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Comma-separated list of rationals, e.g. "0,1,-1/2".
std::vector<Rational> parse_rational_list(std::string_view text);

/// num/den in lowest terms; den must be nonzero.
Rational ratio(const Integer& num, const Integer& den);

Rational abs(const Rational& q);

/// n^e for small nonnegative e.
Integer ipow(long n, unsigned e);

}  // namespace easyqg
