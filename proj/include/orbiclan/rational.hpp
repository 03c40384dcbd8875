#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace orbiclan {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Formats as "p/q" with q > 0 and gcd(p, q) = 1 (integers keep the "/1").
std::string to_string(const Rational& r);

/// Accepts "p/q" or a bare integer "p". Throws ParseError otherwise.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& r) { return r.is_zero(); }

} // namespace orbiclan
