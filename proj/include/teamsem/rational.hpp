// Exact rational arithmetic used throughout the workbench.
//
// All team weights, marginals and independence identities are computed with
// arbitrary-precision rationals so that "holds exactly" means exactly that.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace teamsem {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Accepts "3", "-3", "3/4", "-3/4" and plain decimals such as "0.25".
// Throws std::invalid_argument on anything else (including division by zero).
Rat parse_rational(const std::string& text);

// "p/q" with q > 0 in lowest terms; integers print without the "/1".
std::string rat_to_string(const Rat& r);

// Always "p/q", even for integers. Used in JSON output.
std::string rat_to_fraction(const Rat& r);

double rat_to_double(const Rat& r);

// Best rational approximation with denominator <= max_den (Stern-Brocot walk).
Rat approximate_rational(double x, long max_den);

}  // namespace teamsem
