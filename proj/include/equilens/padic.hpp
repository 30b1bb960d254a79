#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "equilens/coordinate.hpp"

namespace equilens::padic {

inline constexpr int kDefaultPrecision = 64;

/// Truncated b-adic integer: `head` holds digits 0..P-1 (least significant
/// first), every digit at position >= P equals the tail value.
class BadicInteger {
 public:
  enum class Tail { zero, b_minus_1 };

  BadicInteger(int base, std::vector<int> head, Tail tail = Tail::zero);
  /// Exact embedding of an integer; negative values get a (b-1) tail.
  static BadicInteger from_integer(std::int64_t value, int base,
                                   int precision = kDefaultPrecision);

  int base() const { return base_; }
  int precision() const { return static_cast<int>(head_.size()); }
  Tail tail() const { return tail_; }
  const std::vector<int>& head() const { return head_; }
  int digit(std::size_t j) const;

  /// Value of a non-negative representative, sum of head digits; throws
  /// when the tail is b-1 or the value overflows 64 bits.
  std::uint64_t to_unsigned() const;

  friend bool operator==(const BadicInteger&, const BadicInteger&) = default;

 private:
  int base_;
  std::vector<int> head_;
  Tail tail_;
};

/// Number of base-b digits of k (0 for k = 0).
int digit_length(std::uint64_t k, int base);

/// Reverses the first `length` base-b digits of k: sum k_j b^{length-1-j}.
std::uint64_t reverse_digits(std::uint64_t k, int base, int length);

/// Monna map: sum z_j b^{-j-1} mod 1, including the tail's contribution.
double monna_map(const BadicInteger& z);

/// Radical inverse of a non-negative integer as an exact rational.
Rational radical_inverse(std::uint64_t n, int base);

/// First `count` digits of the regular representation of x. Rationals are
/// expanded by exact long division. Doubles are first rounded to the
/// nearest multiple of b^{-D}, where b^D is the largest power not above
/// 2^53, so runs of (b-1) produced by binary rounding collapse to the
/// terminating form; digits past D are zero.
std::vector<int> regular_digits(const UnitCoordinate& x, int base, int count);
std::vector<int> regular_digits(double x, int base, int count);

/// Pseudoinverse of the Monna map truncated to P digits, tail zero.
BadicInteger monna_pseudoinverse(const UnitCoordinate& x, int base, int precision);
BadicInteger monna_pseudoinverse(double x, int base, int precision);

/// Character chi_k of Z_b. Needs z.precision() >= digit_length(k).
std::complex<double> character(std::uint64_t k, const BadicInteger& z);

/// gamma_k(x) = chi_k(phi_b^+(x)).
std::complex<double> badic_function(std::uint64_t k, int base, const UnitCoordinate& x);
std::complex<double> badic_function(std::uint64_t k, int base, double x);

/// w_k(x) = e((sum k_j x_j)/b) over regular digits of x.
std::complex<double> walsh(std::uint64_t k, int base, const UnitCoordinate& x);
std::complex<double> walsh(std::uint64_t k, int base, double x);

/// e_k(x) = e(kx).
std::complex<double> trig(std::int64_t k, const UnitCoordinate& x);
std::complex<double> trig(std::int64_t k, double x);

// --- hybrid systems -------------------------------------------------------

using IndexVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Admissible values of one index entry: N_0, N, or Z.
enum class Signature { nonneg, positive, integer };

enum class SystemKind { walsh, badic, trig };

std::string to_string(SystemKind kind);
std::string to_string(Signature sig);

/// Walsh in s1 coordinates, b-adic in s2, trigonometric in s3. Index
/// entries are ordered by slot (Walsh slots, then b-adic, then trig);
/// coordinate_assignment[slot] is the point coordinate that slot acts on.
struct HybridSystemConfig {
  int s1 = 0;
  int s2 = 0;
  int s3 = 0;
  std::vector<int> walsh_bases;
  std::vector<int> badic_bases;
  std::vector<int> coordinate_assignment;

  /// Identity assignment when coordinate_assignment is empty.
  static HybridSystemConfig make(int s1, int s2, int s3, std::vector<int> walsh_bases,
                                 std::vector<int> badic_bases,
                                 std::vector<int> coordinate_assignment = {});
  static HybridSystemConfig trigonometric(int s);

  int dimension() const { return s1 + s2 + s3; }
  SystemKind kind(int slot) const;
  /// Base of a digital slot; 0 for trigonometric slots.
  int base(int slot) const;
  Signature signature(int slot) const;
  int coordinate(int slot) const { return coordinate_assignment[static_cast<std::size_t>(slot)]; }

  /// Throws ArgumentError on inconsistent sizes, bases < 2 or a
  /// non-bijective assignment.
  void validate() const;
  std::string describe() const;
};

/// Throws ArgumentError unless every entry of k respects its slot signature.
void check_signature(const IndexVector& k, const HybridSystemConfig& config);

/// xi_k(x): product over slots of the slot's function at its coordinate.
std::complex<double> hybrid_eval(const IndexVector& k, const HybridSystemConfig& config,
                                 const UnitPoint& x);

}  // namespace equilens::padic
