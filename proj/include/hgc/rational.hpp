#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hgc {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" or "p"; throws UsageError on malformed input or q = 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

}  // namespace hgc
