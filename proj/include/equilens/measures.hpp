#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "equilens/padic.hpp"
#include "equilens/point_set.hpp"
#include "equilens/weights.hpp"

namespace equilens::measures {

/// Compensated average (1/N) sum_{n<N} f(x_n).
std::complex<double> weyl_sum(const std::function<std::complex<double>(const UnitPoint&)>& f,
                              const PointSet& points, std::size_t N);

/// A function system bound to the first N points of a sequence: the
/// interface the spectral test and diaphony enumerate against.
class WeylSystem {
 public:
  virtual ~WeylSystem() = default;
  virtual std::size_t dimension() const = 0;
  virtual Signature signature(std::size_t slot) const = 0;
  virtual std::size_t size() const = 0;
  /// S_N(xi_k, omega).
  virtual std::complex<double> weyl_sum(const IndexVector& k) const = 0;
  virtual std::string describe() const = 0;

  std::vector<Signature> signatures() const;
};

/// Hybrid Walsh / b-adic / trigonometric system on a point set. Digits of
/// each point are extracted once; a character value is then a sum of exact
/// per-slot phases passed to a single complex exponential.
class HybridWeylSystem final : public WeylSystem {
 public:
  HybridWeylSystem(padic::HybridSystemConfig config, const PointSet& points, std::size_t N);

  std::size_t dimension() const override { return static_cast<std::size_t>(config_.dimension()); }
  Signature signature(std::size_t slot) const override;
  std::size_t size() const override { return N_; }
  std::complex<double> weyl_sum(const IndexVector& k) const override;
  std::string describe() const override { return config_.describe(); }

  const padic::HybridSystemConfig& config() const { return config_; }
  const PointSet& points() const { return points_; }
  /// Digit-reversed integer of the first digit_capacity digits of point n
  /// in a digital slot.
  std::uint64_t digit_integer(std::size_t n, int slot) const {
    return digit_ints_(static_cast<Eigen::Index>(n), slot);
  }
  int digit_capacity(int slot) const { return capacity_[static_cast<std::size_t>(slot)]; }

 private:
  double slot_phase(std::size_t n, int slot, std::int64_t k) const;

  padic::HybridSystemConfig config_;
  PointSet points_;
  std::size_t N_;
  Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic> digit_ints_;
  std::vector<int> capacity_;
};

struct SpectralOptions {
  /// Largest shell bound before giving up with a bracketing error.
  double max_shell = 1 << 22;
  /// Keep enlarging shells until at least this bound (exactness checks).
  double min_shell = 1.0;
  std::size_t max_evaluations = 20'000'000;
};

struct SpectralResult {
  double value = 0.0;
  IndexVector argmax_index;
  double shell_bound = 0.0;
  double normalizer = 1.0;
  /// Weight tail bound at the final shell; <= value * normalizer on exit.
  double tail_bound = 0.0;
  std::size_t evaluated = 0;
};

/// sigma_N for a system and weight. Shells K = 1, 2, 4, ... are enumerated
/// until weight.tail_sup(K) <= A, the running maximum of rho(k)|S_N(xi_k)|;
/// no index outside the shell can then exceed A, so A / normalizer is exact.
SpectralResult spectral_test(const WeylSystem& system, const WeightSpec& weight,
                             const SpectralOptions& options = {});

/// Erdos-Turan-Koksma-type bound: max(A_K, tail_sup(K)) / normalizer.
double etk_bound(const WeylSystem& system, const WeightSpec& weight, double K);

struct DiaphonyOptions {
  enum class Method { automatic, shells, kernel };
  Method method = Method::automatic;
  double rel_tol = 1e-3;
  double max_shell = 1 << 16;
  std::size_t max_evaluations = 20'000'000;
};

struct DiaphonyResult {
  double value = 0.0;
  double alpha = 2.0;
  /// Final shell bound (0 for the closed-form kernel).
  double truncation_K = 0.0;
  /// |value - exact diaphony| <= tail_error_bound.
  double tail_error_bound = 0.0;
  std::string method;
  std::size_t evaluated = 0;
};

/// True when the pairwise-kernel closed form applies: alpha = 2, a
/// HybridWeylSystem, and a product weight whose factors are reciprocal on
/// trigonometric slots and digit-length (same base) on digital slots.
bool kernel_available(const WeylSystem& system, const WeightSpec& weight, double alpha);

/// L^alpha diaphony. The shell method accumulates rho^alpha |S_N|^alpha
/// until tail_power_sum(K) < rel_tol * accumulated sum; the kernel method
/// evaluates the alpha = 2 sum through pairwise products of 1D kernels.
DiaphonyResult diaphony(const WeylSystem& system, const WeightSpec& weight, double alpha,
                        const DiaphonyOptions& options = {});

}  // namespace equilens::measures
