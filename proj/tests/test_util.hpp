#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "equilens/point_set.hpp"

namespace equilens::fixtures {

inline PointSet doubles(std::initializer_list<std::vector<double>> rows) {
  PointSet ps(rows.size(), rows.begin()->size());
  std::size_t n = 0;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) ps.set(n, i, UnitCoordinate::from_double(r[i]));
    ++n;
  }
  return ps;
}

inline PointSet rationals(const std::vector<std::vector<Rational>>& rows) {
  PointSet ps(rows.size(), rows.front().size());
  for (std::size_t n = 0; n < rows.size(); ++n) {
    for (std::size_t i = 0; i < rows[n].size(); ++i) ps.set(n, i, UnitCoordinate::from_rational(rows[n][i]));
  }
  return ps;
}

inline bool near(std::complex<double> a, std::complex<double> b, double tol = 1e-12) {
  return std::abs(a - b) <= tol;
}

}  // namespace equilens::fixtures
