#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace entrocone {

// Exact arithmetic for the whole kernel. mpq keeps values in lowest terms
// with positive denominator, which is exactly the Rational invariant.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

using RatVec = std::vector<Rational>;

/// Parses "p/q" or a plain integer string.
Rational parse_rational(const std::string& s);

/// "p/q" when q != 1, otherwise just "p".
std::string format_rational(const Rational& q);

/// Scales a vector by the unique positive rational making its entries
/// coprime integers. The zero vector is returned unchanged.
RatVec canonical_scaled(const RatVec& v);

/// True if v is already in canonical integer-coprime form.
bool is_canonical_scaled(const RatVec& v);

bool is_integral(const Rational& q);

/// Lexicographic comparison, used for deterministic ordering of rays.
int compare_lex(const RatVec& a, const RatVec& b);

// Dense integer rows/rays used inside the enumeration kernels. Entries are
// kept gcd-reduced; combinations are computed in 128-bit and checked, so a
// genuine overflow surfaces as an error instead of wrapping.
using IntVec = std::vector<std::int64_t>;

/// Divides by the gcd of the absolute values (sign is preserved).
void reduce_by_gcd(IntVec& v);

/// Exact rational row -> coprime integer row (scales by the lcm of
/// denominators). Throws ResourceLimitError if entries exceed int64.
IntVec to_int_row(const RatVec& v);

RatVec to_rat_vec(const IntVec& v);

/// <a, b> in 128-bit arithmetic; throws ResourceLimitError on overflow.
std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// c*x + d*y elementwise with overflow checking, gcd-reduced.
IntVec combine(std::int64_t c, const IntVec& x, std::int64_t d, const IntVec& y);

}  // namespace entrocone
