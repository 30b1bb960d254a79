#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "equilens/lattice.hpp"
#include "equilens/point_set.hpp"

namespace equilens::sequences {

/// Irrational (or decimal) Kronecker step stored as an unevaluated sum
/// hi + lo of doubles.
struct KroneckerAlpha {
  double hi = 0.0;
  double lo = 0.0;
  std::string label;

  /// Accepts "sqrtP", "golden", an optional "+j" / "-j" integer shift, or a
  /// decimal literal.
  static KroneckerAlpha parse(const std::string& token);
};

struct Halton {
  std::vector<int> bases;
};

struct Kronecker {
  std::vector<KroneckerAlpha> alphas;
};

struct Glp {
  lattice::LatticeRuleSpec rule;
};

struct FilePoints {
  std::string path;
  std::shared_ptr<const PointSet> points;
};

struct SequenceSpec;

struct Hybrid {
  std::vector<SequenceSpec> parts;
};

struct SequenceSpec {
  std::variant<Halton, Kronecker, Glp, Hybrid, FilePoints> variant;

  std::size_t dimension() const;
  std::string describe() const;
  /// Number of points the sequence has, if finite (glp, file).
  std::optional<std::size_t> finite_size() const;
};

/// Parses the sequence mini-language: halton:b1,b2,...  kron:a1,a2,...
/// glp:a1,...,as@N  hybrid:(spec)+(spec)  file:PATH.
SequenceSpec parse_sequence(const std::string& text);

/// Radical inverse of n in base b.
Rational halton_coordinate(std::uint64_t n, int base);

/// frac(n * alpha) using error-free products; |error| < 1e-12 for n <= 2^20.
double kronecker_coordinate(std::uint64_t n, const KroneckerAlpha& alpha);

UnitPoint point_at(const SequenceSpec& spec, std::uint64_t n);

/// First N points, generated in parallel (each point is independent).
PointSet generate(const SequenceSpec& spec, std::size_t N);

/// Point file: one point per line, whitespace-separated coordinates in
/// [0,1) written as decimals or p/q; '#' starts a comment line.
PointSet parse_points(std::istream& in);
PointSet load_points(const std::string& path);

/// Parses one coordinate token. Plain decimals with at most 18 fractional
/// digits are kept as exact rationals.
UnitCoordinate parse_coordinate(const std::string& token);

}  // namespace equilens::sequences
