#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "equilens/rational.hpp"

namespace equilens {

/// A coordinate in [0,1), either an exact rational or a double.
class UnitCoordinate {
 public:
  UnitCoordinate() = default;
  static UnitCoordinate from_double(double x);
  static UnitCoordinate from_rational(Rational r);

  double value() const { return value_; }
  bool exact() const { return exact_; }
  /// Only meaningful when exact().
  const Rational& rational() const { return rational_; }

 private:
  double value_ = 0.0;
  Rational rational_{};
  bool exact_ = true;
};

using UnitPoint = std::vector<UnitCoordinate>;

/// e(num/den) = exp(2 pi i num/den), reduced by octant in integer arithmetic
/// so that e(1/2), e(1/4), ... come out exact.
std::complex<double> unit_root(std::int64_t num, std::int64_t den);

/// e(t) for a real number of turns t.
std::complex<double> unit_turns(double t);

/// Fractional part of k*x, exact for rational x and error-free split for doubles.
double frac_product(std::int64_t k, const UnitCoordinate& x);

}  // namespace equilens
