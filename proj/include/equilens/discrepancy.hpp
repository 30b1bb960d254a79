#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "equilens/padic.hpp"
#include "equilens/point_set.hpp"

namespace equilens::discrepancy {

/// Per-coordinate bases and resolution exponents.
struct ResolutionVector {
  std::vector<int> bases;
  std::vector<int> g;

  std::size_t dimension() const { return g.size(); }
  /// b_i^{g_i}; throws ArgumentError past 2^53.
  std::int64_t cells(std::size_t i) const;
  void validate(bool require_positive) const;
};

/// Box prod [lower_i, upper_i) with exact rational endpoints.
struct BadicInterval {
  std::vector<Rational> lower;
  std::vector<Rational> upper;

  double volume() const;
  bool contains(const PointSet& points, std::size_t n) const;
};

/// Maps an index pair (a, d) in Delta_b(g) x nabla_b(g) to its interval
/// prod [phi(a_i), phi(d_i)), with d_i = b_i^{g_i} sent to 1. Returns
/// nullopt for pairs that are not admissible (phi(a_i) >= phi(d_i)).
std::optional<BadicInterval> interval_from_index(const std::vector<std::int64_t>& a,
                                                 const std::vector<std::int64_t>& d,
                                                 const ResolutionVector& res);

/// (#points in J)/N - vol(J) over the first N points.
double local_discrepancy(const PointSet& points, std::size_t N, const BadicInterval& J);

struct DiscreteOptions {
  std::int64_t max_cells = std::int64_t{1} << 24;
  double max_box_evaluations = 4e9;
};

/// Exact maximum of |local discrepancy| over all b-adic intervals of
/// resolution g (extreme) or those anchored at 0 (star).
double discrete_discrepancy(const PointSet& points, std::size_t N, const ResolutionVector& res,
                            const DiscreteOptions& options = {});
double discrete_star_discrepancy(const PointSet& points, std::size_t N,
                                 const ResolutionVector& res, const DiscreteOptions& options = {});

struct EpsilonBounds {
  double epsilon;       ///< 1 - prod (1 - 2 b_i^{-g_i})
  double epsilon_star;  ///< 1 - prod (1 - b_i^{-g_i})
  double delta;         ///< max b_i^{-g_i}
  double extreme_cap;   ///< 2 s delta
  double star_cap;      ///< s delta
};

EpsilonBounds epsilon_bounds(const ResolutionVector& res);

/// D*_N for s = 1: 1/(2N) + max |x_(n) - (2n-1)/(2N)|.
double exact_star_discrepancy_1d(const PointSet& points, std::size_t N);

/// Exact D_N for s <= 3, N <= 64 by enumerating critical boxes.
double exact_extreme_discrepancy_small(const PointSet& points, std::size_t N);

/// Base-b digit length; 0 for k = 0.
int v_b(std::uint64_t k, int base);

/// rho_g((a, d)): 1 on Delta_b(g) x nabla_b(g), else prod b_i^{-(v(a_i)+v(d_i))}.
double rho_g(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& d,
             const ResolutionVector& res);

struct DiscrepancySpectralOptions {
  DiscreteOptions discrete;
  /// Budget for tail-branch index evaluations.
  std::size_t max_tail_evaluations = 50'000'000;
};

struct DiscrepancySpectralResult {
  double value = 0.0;
  double grid_branch = 0.0;  ///< D_{N;b,g} (or its star version)
  double tail_branch = 0.0;  ///< tail maximum when it beats the grid branch, else 0
  double tail_cap = 0.0;     ///< max b_i^{-1-g_i}
  std::size_t tail_evaluated = 0;
};

/// Spectral test of the indicator system with weight rho_g: the maximum of
/// the grid branch (the discrete discrepancy) and the exactly evaluated
/// tail branch. Tail indices are evaluated in decreasing weight classes
/// until the next class weight drops to the running maximum.
DiscrepancySpectralResult discrepancy_spectral_test(const PointSet& points, std::size_t N,
                                                    const ResolutionVector& res, bool star,
                                                    const DiscrepancySpectralOptions& options = {});

/// Smallest g with b_i^{-g_i} < epsilon / (4 s) for every i.
ResolutionVector choose_resolution(double epsilon, const std::vector<int>& bases);

}  // namespace equilens::discrepancy
