#include "entrocone/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "entrocone/errors.hpp"

namespace entrocone {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  try {
    Rational q(s);
    return q;
  } catch (const std::exception&) {
    throw ParseError("bad rational literal: '" + s + "'");
  }
}

std::string format_rational(const Rational& q) { return q.str(); }

bool is_integral(const Rational& q) { return denominator(q) == 1; }

RatVec canonical_scaled(const RatVec& v) {
  BigInt den_lcm = 1;
  bool all_zero = true;
  for (const auto& x : v) {
    if (x != 0) {
      all_zero = false;
      den_lcm = lcm(den_lcm, BigInt(denominator(x)));
    }
  }
  if (all_zero) return v;
  BigInt num_gcd = 0;
  for (const auto& x : v) {
    if (x != 0) num_gcd = gcd(num_gcd, BigInt(numerator(x) * (den_lcm / denominator(x))));
  }
  Rational scale(den_lcm, num_gcd);
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * scale;
  return out;
}

bool is_canonical_scaled(const RatVec& v) {
  BigInt g = 0;
  for (const auto& x : v) {
    if (denominator(x) != 1) return false;
    g = gcd(g, BigInt(numerator(x)));
  }
  return g == 0 || g == 1;
}

int compare_lex(const RatVec& a, const RatVec& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

void reduce_by_gcd(IntVec& v) {
  std::uint64_t g = 0;
  for (auto x : v) {
    std::uint64_t m = x < 0 ? static_cast<std::uint64_t>(-(x + 1)) + 1 : static_cast<std::uint64_t>(x);
    g = std::gcd(g, m);
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (auto& x : v) x /= static_cast<std::int64_t>(g);
}

IntVec to_int_row(const RatVec& v) {
  BigInt den_lcm = 1;
  for (const auto& x : v)
    if (x != 0) den_lcm = lcm(den_lcm, BigInt(denominator(x)));
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    BigInt n = numerator(v[i]) * (den_lcm / denominator(v[i]));
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
      throw ResourceLimitError("integer row entry exceeds 64 bits");
    out[i] = static_cast<std::int64_t>(n);
  }
  reduce_by_gcd(out);
  return out;
}

RatVec to_rat_vec(const IntVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

namespace {
inline std::int64_t narrow(__int128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw ResourceLimitError("ray coefficient exceeds 64 bits");
  return static_cast<std::int64_t>(x);
}
}  // namespace

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  __int128 acc = 0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<__int128>(a[i]) * b[i];
  return narrow(acc);
}

IntVec combine(std::int64_t c, const IntVec& x, std::int64_t d, const IntVec& y) {
  IntVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = narrow(static_cast<__int128>(c) * x[i] + static_cast<__int128>(d) * y[i]);
  reduce_by_gcd(out);
  return out;
}

}  // namespace entrocone
