#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>

#include "equilens/errors.hpp"

namespace equilens {

using int128 = __int128;

/// Non-negative rational with 64-bit numerator and denominator, kept reduced.
/// Used for exact point coordinates (Halton, lattice nodes, decimal input).
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0) throw ArgumentError("rational denominator must be positive");
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<int128>(a.num) * b.den < static_cast<int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.num << '/' << r.den;
  }
};

/// floor(r * scale) for 0 <= r and scale*num fitting in 128 bits.
inline std::int64_t floor_scaled(const Rational& r, std::int64_t scale) {
  return static_cast<std::int64_t>(static_cast<int128>(r.num) * scale / r.den);
}

/// Exact floor(x * scale) for a double x >= 0 and integer scale <= 2^53.
/// x*scale is split into an error-free pair (p, e) so boundary points land
/// in the right-hand cell without any tolerance.
std::int64_t floor_scaled(double x, std::int64_t scale);

/// Integer power with overflow check against `limit`; returns -1 on overflow.
std::int64_t checked_pow(std::int64_t base, int exponent,
                         std::int64_t limit = INT64_MAX);

}  // namespace equilens
