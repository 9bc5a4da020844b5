#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace unialign {

/// Exact rational number. All move costs, objectives and heuristic values
/// are carried in this type so that cost comparisons are exact.
using Rational = mpq_class;

/// n/d in canonical form. Throws InvalidInput for d == 0.
Rational ratio(long n, long d);

/// Parses "3", "-2/7", "1.5", "1e-6" or "2.5E+3" into an exact rational.
/// Decimal notation is interpreted exactly (0.1 is 1/10, not the nearest
/// double). Throws InvalidInput on malformed text.
Rational parse_rational(std::string_view text);

/// Canonical text form: "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Exact conversion of a value that is known to be an integer and to fit in
/// 64 bits. Throws InternalInvariantError otherwise.
std::int64_t to_int64(const Rational& value);

/// Smallest integer not less than `value`.
Rational ceil(const Rational& value);

}  // namespace unialign
