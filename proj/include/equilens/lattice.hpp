#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equilens/padic.hpp"
#include "equilens/point_set.hpp"

namespace equilens::lattice {

using padic::IndexVector;

/// Rank-1 lattice rule generated by a modulo N; gcd(a_i, N) = 1.
class LatticeRuleSpec {
 public:
  LatticeRuleSpec(std::vector<std::int64_t> a, std::int64_t N);

  const std::vector<std::int64_t>& generator() const { return a_; }
  std::int64_t modulus() const { return N_; }
  std::size_t dimension() const { return a_.size(); }
  std::string to_string() const;

 private:
  std::vector<std::int64_t> a_;
  std::int64_t N_;
};

/// Exact rational coordinate i of node n: (n a_i mod N) / N.
Rational node_coordinate(const LatticeRuleSpec& spec, std::int64_t n, std::size_t i);

PointSet glp_nodes(const LatticeRuleSpec& spec);

/// k . a == 0 mod N.
bool is_dual(const IndexVector& k, const LatticeRuleSpec& spec);

/// Exhaustive searches over ||k||_inf <= N need this unless the rule is small
/// (s <= 3 and N <= 10^4).
struct SearchOptions {
  bool allow_large = false;
};

struct ShortestDual {
  double value;      ///< reciprocal of the minimum
  IndexVector witness;
};

/// Classical spectral test 1 / min ||k||_2 over nonzero dual k.
ShortestDual sigma_lattice(const LatticeRuleSpec& spec, const SearchOptions& options = {});

/// Babenko-Zaremba index 1 / min r(k) over nonzero dual k.
ShortestDual babenko_zaremba(const LatticeRuleSpec& spec, const SearchOptions& options = {});

struct PAlphaResult {
  double value;       ///< sum over dual k with 0 < ||k||_inf <= K
  double tail_bound;  ///< sum of r(k)^-alpha over all ||k||_inf > K
  std::int64_t K;
};

PAlphaResult p_alpha(const LatticeRuleSpec& spec, double alpha, std::int64_t K);

/// P_alpha for even alpha through the Bernoulli-polynomial kernel:
/// -1 + (1/N) sum_n prod_i (1 + c_alpha B_alpha(x_ni)). alpha in {2, 4, 6}.
double p_alpha_bernoulli(const LatticeRuleSpec& spec, int alpha);

struct SloanKachoyanReport {
  std::size_t checked = 0;
  double max_deviation = 0.0;
  std::vector<IndexVector> violations;
  bool ok() const { return violations.empty(); }
};

/// Compares S_N(e_k, nodes) with the dual-lattice indicator for every
/// ||k||_inf <= K, using a floating Weyl sum over the node coordinates.
SloanKachoyanReport sloan_kachoyan_check(const LatticeRuleSpec& spec, std::int64_t K,
                                         double tolerance = 1e-10);

}  // namespace equilens::lattice
