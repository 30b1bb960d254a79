#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "equilens/coordinate.hpp"
#include "equilens/errors.hpp"
#include "equilens/parallel.hpp"
#include "equilens/point_set.hpp"
#include "equilens/rational.hpp"

namespace equilens {

std::int64_t floor_scaled(double x, std::int64_t scale) {
  const double b = static_cast<double>(scale);
  const double p = x * b;
  const double e = std::fma(x, b, -p);
  const double fp = std::floor(p);
  if (fp == p && e < 0.0) return static_cast<std::int64_t>(fp) - 1;
  return static_cast<std::int64_t>(fp);
}

std::int64_t checked_pow(std::int64_t base, int exponent, std::int64_t limit) {
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) {
    if (r > limit / base) return -1;
    r *= base;
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t g_override = 0;

std::size_t env_threads() {
  static const std::size_t value = [] {
    if (const char* env = std::getenv("EQUILENS_THREADS")) {
      try {
        const long v = std::stol(env);
        if (v > 0) return static_cast<std::size_t>(v);
      } catch (...) {
      }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<std::size_t>(hw == 0 ? 1 : hw);
  }();
  return value;
}

}  // namespace

std::size_t thread_count() { return g_override > 0 ? g_override : env_threads(); }

void set_thread_count(std::size_t n) { g_override = n; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    pool.emplace_back([&, w, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------

UnitCoordinate UnitCoordinate::from_double(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw ArgumentError("coordinate " + std::to_string(x) + " outside [0,1)");
  }
  UnitCoordinate c;
  c.value_ = x;
  c.exact_ = false;
  return c;
}

UnitCoordinate UnitCoordinate::from_rational(Rational r) {
  if (r.num < 0 || r.num >= r.den) {
    throw ArgumentError("coordinate " + std::to_string(r.num) + "/" + std::to_string(r.den) +
                        " outside [0,1)");
  }
  UnitCoordinate c;
  c.rational_ = r;
  c.value_ = r.to_double();
  c.exact_ = true;
  return c;
}

namespace {

std::complex<double> octant_map(int octant, double c, double s) {
  // (c, s) is e(t) for t in [0, 1/8); rotate by a multiple of a quarter turn.
  switch (octant & 7) {
    case 0: return {c, s};
    case 2: return {-s, c};
    case 4: return {-c, -s};
    default: return {s, -c};
  }
}

}  // namespace

std::complex<double> unit_root(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw ArgumentError("unit_root: denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  const int128 scaled = static_cast<int128>(num) * 8;
  int octant = static_cast<int>(scaled / den);
  int128 rem = scaled % den;
  // Octants alternate direction so that the remaining angle is in [0, 1/8].
  double angle;
  if (octant % 2 == 0) {
    angle = static_cast<double>(rem) / static_cast<double>(den) * (std::numbers::pi / 4.0);
  } else {
    angle = static_cast<double>(den - rem) / static_cast<double>(den) * (std::numbers::pi / 4.0);
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  if (octant % 2 == 0) return octant_map(octant, c, s);
  // Odd octant: e(t) = e((octant+1)/8) * e(-(1-r)/8) with an exact quarter turn.
  switch (octant) {
    case 1: return {s, c};
    case 3: return {-c, s};
    case 5: return {-s, -c};
    default: return {c, -s};
  }
}

std::complex<double> unit_turns(double t) {
  t -= std::floor(t);
  const double scaled = t * 8.0;
  int octant = static_cast<int>(std::floor(scaled));
  if (octant > 7) octant = 7;
  const double rem = scaled - octant;
  if (octant % 2 == 0) {
    const double angle = rem * (std::numbers::pi / 4.0);
    return octant_map(octant, std::cos(angle), std::sin(angle));
  }
  const double angle = (1.0 - rem) * (std::numbers::pi / 4.0);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  switch (octant) {
    case 1: return {s, c};
    case 3: return {-c, s};
    case 5: return {-s, -c};
    default: return {c, -s};
  }
}

double frac_product(std::int64_t k, const UnitCoordinate& x) {
  if (x.exact()) {
    const Rational& r = x.rational();
    int128 p = static_cast<int128>(k) * r.num % r.den;
    if (p < 0) p += r.den;
    return static_cast<double>(static_cast<std::int64_t>(p)) / static_cast<double>(r.den);
  }
  const double kd = static_cast<double>(k);
  const double p = kd * x.value();
  const double e = std::fma(kd, x.value(), -p);
  double f = (p - std::floor(p)) + e;
  f -= std::floor(f);
  return f >= 1.0 ? 0.0 : f;
}

// ---------------------------------------------------------------------------

PointSet::PointSet(std::size_t size, std::size_t dimension)
    : values_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size),
                                    static_cast<Eigen::Index>(dimension))),
      numerators_(IntMatrix::Zero(static_cast<Eigen::Index>(size),
                                  static_cast<Eigen::Index>(dimension))),
      denominators_(IntMatrix::Ones(static_cast<Eigen::Index>(size),
                                    static_cast<Eigen::Index>(dimension))) {}

void PointSet::set(std::size_t n, std::size_t i, const UnitCoordinate& c) {
  const auto r = static_cast<Eigen::Index>(n);
  const auto col = static_cast<Eigen::Index>(i);
  values_(r, col) = c.value();
  if (c.exact()) {
    numerators_(r, col) = c.rational().num;
    denominators_(r, col) = c.rational().den;
  } else {
    numerators_(r, col) = 0;
    denominators_(r, col) = 0;
  }
}

void PointSet::set_point(std::size_t n, const UnitPoint& p) {
  if (p.size() != dimension()) throw ArgumentError("point dimension mismatch");
  for (std::size_t i = 0; i < p.size(); ++i) set(n, i, p[i]);
}

UnitCoordinate PointSet::at(std::size_t n, std::size_t i) const {
  const auto r = static_cast<Eigen::Index>(n);
  const auto col = static_cast<Eigen::Index>(i);
  if (denominators_(r, col) > 0) {
    return UnitCoordinate::from_rational(Rational(numerators_(r, col), denominators_(r, col)));
  }
  return UnitCoordinate::from_double(values_(r, col));
}

UnitPoint PointSet::point(std::size_t n) const {
  UnitPoint p(dimension());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = at(n, i);
  return p;
}

PointSet PointSet::head(std::size_t count) const {
  if (count > size()) throw ArgumentError("point set has fewer points than requested");
  PointSet out;
  const auto c = static_cast<Eigen::Index>(count);
  out.values_ = values_.topRows(c);
  out.numerators_ = numerators_.topRows(c);
  out.denominators_ = denominators_.topRows(c);
  return out;
}

}  // namespace equilens
