#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "equilens/coordinate.hpp"

namespace equilens {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// N points in [0,1)^s stored row-wise. Coordinates that are known exactly
/// keep their rational form next to the double value.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t size, std::size_t dimension);

  std::size_t size() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t dimension() const { return static_cast<std::size_t>(values_.cols()); }

  void set(std::size_t n, std::size_t i, const UnitCoordinate& c);
  void set_point(std::size_t n, const UnitPoint& p);
  UnitCoordinate at(std::size_t n, std::size_t i) const;
  UnitPoint point(std::size_t n) const;

  bool exact(std::size_t n, std::size_t i) const {
    return denominators_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)) > 0;
  }
  /// Rational parts; the denominator is 0 for inexact coordinates.
  std::int64_t numerator(std::size_t n, std::size_t i) const {
    return numerators_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
  }
  std::int64_t denominator(std::size_t n, std::size_t i) const {
    return denominators_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
  }
  const Eigen::MatrixXd& values() const { return values_; }

  /// The first `count` points.
  PointSet head(std::size_t count) const;

 private:
  Eigen::MatrixXd values_;
  IntMatrix numerators_;
  IntMatrix denominators_;
};

}  // namespace equilens
