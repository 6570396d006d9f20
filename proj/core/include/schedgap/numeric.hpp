#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

namespace schedgap {

// All quantities that must be exact (processing times, speeds, window
// boundaries, LP values) are arbitrary-precision rationals; all counts that
// can blow past 64 bits (job multiplicities like m^{2(k-i)}) are
// arbitrary-precision integers.  No floating point is used anywhere in
// generation, reduction, validation, or LP solving.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Parse "p", "p/q" or a finite decimal ("0.25") into an exact rational.
// Throws ParameterError on malformed input or q == 0.
Rat parse_rat(const std::string& s);

// Canonical "num/den" form, lowest terms, den > 0.  Round-trips exactly
// through parse_rat.
std::string format_rat(const Rat& q);

// Parse a decimal integer string (optional leading '-').
Int parse_int(const std::string& s);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

Int pow_int(const Int& base, unsigned exp);

// Checked narrowing for desk-scale loops; throws BudgetError if |v| exceeds
// the cap (callers pass the relevant budget).
std::int64_t to_i64(const Int& v, std::int64_t cap, const char* what);

}  // namespace schedgap
