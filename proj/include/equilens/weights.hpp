#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "equilens/padic.hpp"

namespace equilens::measures {

using padic::IndexVector;
using padic::Signature;

/// One factor of a product weight, acting on a single index slot.
struct CoordinateWeight {
  enum class Kind {
    reciprocal,   ///< 1 / max(1, |k|)
    digit_length  ///< b^{-v_b(k)}, digital (N_0 / N) slots only
  };

  Kind kind = Kind::reciprocal;
  int base = 0;
  Signature signature = Signature::integer;

  double value(std::int64_t k) const;
  /// sup of the factor over the slot's admissible values.
  double sup() const;
  /// sup over admissible |k| > K.
  double tail_sup(std::int64_t K) const;
  /// sum of value^alpha over admissible k.
  double power_total(double alpha) const;
  /// sum of value^alpha over admissible |k| > K (upper bound, tight).
  double power_tail(std::int64_t K, double alpha) const;
  std::string describe() const;
};

/// A weight function on an index set together with the bounds the
/// spectral test and diaphony need to terminate.
struct WeightSpec {
  std::string name;
  std::vector<Signature> signatures;

  /// rho(k) for k != 0.
  std::function<double(const IndexVector&)> value;
  /// Upper bound for sup{rho(k) : ||k||_inf > K}; non-increasing in K.
  std::function<double(double K)> tail_sup;
  /// Optional upper bound for sum_{||k||_inf > K} rho(k)^alpha.
  std::function<double(double K, double alpha)> tail_power_sum;
  /// Optional: bound on rho over all completions of k[0..used), with the
  /// remaining entries of k ignored. Must be non-increasing in |k[used-1]|.
  /// Enables pruning during enumeration.
  std::function<double(const IndexVector& k, std::size_t used)> prefix_bound;

  /// sup_{k in Lambda*} rho(k).
  double normalizer = 1.0;
  /// Non-empty for product weights.
  std::vector<CoordinateWeight> factors;

  std::size_t dimension() const { return signatures.size(); }
  bool has_tail_power_sum() const { return static_cast<bool>(tail_power_sum); }
  /// sum_{k in Lambda*} rho(k)^alpha. Needs tail_power_sum.
  double total_power_sum(double alpha) const;
};

/// Product of per-slot factors.
WeightSpec product_weight(std::vector<CoordinateWeight> factors, std::string name = "product");

/// rho(k) = ||k||_2^{-1}.
WeightSpec euclidean_weight(const std::vector<Signature>& signatures);

/// rho(k) = 1/r(k), r(k) = prod max(1, |k_i|).
WeightSpec r_weight(const std::vector<Signature>& signatures);

/// rho(k) = prod b_i^{-v_{b_i}(k_i)} on digital slots; slots with base 0
/// (trigonometric) get the reciprocal factor instead.
WeightSpec digit_length_weight(const std::vector<Signature>& signatures,
                               const std::vector<int>& bases);

/// Names accepted by weight_for_system: "r", "euclidean", "digit".
std::vector<std::string> builtin_weight_names();

/// Builds a built-in weight matched to a hybrid system's index set.
WeightSpec weight_for_system(const std::string& name, const padic::HybridSystemConfig& config);

/// sum_{k >= 1} k^{-alpha} for k > K, evaluated by direct summation plus an
/// Euler-Maclaurin remainder.
double zeta_tail(double alpha, std::int64_t K);

}  // namespace equilens::measures
