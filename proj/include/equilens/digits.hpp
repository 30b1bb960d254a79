#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace equilens::digits {

/// Fixed-length base-b digit string, least significant digit first.
class DigitVector {
 public:
  DigitVector(int base, std::vector<int> digits);
  static DigitVector zero(int base, std::size_t length);
  /// Digits of value mod base^length.
  static DigitVector from_integer(int base, std::size_t length, std::uint64_t value);

  int base() const { return base_; }
  std::size_t size() const { return digits_.size(); }
  int operator[](std::size_t j) const { return digits_[j]; }
  const std::vector<int>& digits() const { return digits_; }

  /// Position of this vector in the lexicographic enumeration of A_b^m
  /// (i.e. the integer value with weight b^j on digit j).
  std::uint64_t rank() const;

  friend bool operator==(const DigitVector&, const DigitVector&) = default;

 private:
  int base_;
  std::vector<int> digits_;
};

/// Non-increasing sequence of positive parts.
class Partition {
 public:
  explicit Partition(std::vector<int> parts);
  const std::vector<int>& parts() const { return parts_; }
  int total() const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// A partition-defined addition on A_b^m: consecutive blocks of sizes
/// t_1, ..., t_r starting at digit 0, each added as Z/b^{t_i}Z.
struct AdditionSpec {
  int base;
  Partition partition;

  AdditionSpec(int base, Partition partition);
  std::size_t length() const { return static_cast<std::size_t>(partition.total()); }
  /// Start offsets of each block plus a final sentinel equal to length().
  std::vector<std::size_t> block_bounds() const;
};

DigitVector xor_add(const DigitVector& x, const DigitVector& y);
DigitVector carry_add(const DigitVector& x, const DigitVector& y);
DigitVector partition_add(const DigitVector& x, const DigitVector& y, const AdditionSpec& spec);

/// Additive inverse under the partition addition.
DigitVector partition_negate(const DigitVector& x, const AdditionSpec& spec);

/// All partitions of m in non-increasing form, from (m) down to (1,...,1).
std::vector<Partition> enumerate_partitions(int m);

struct GroupAxiomReport {
  bool exhaustive = false;
  std::uint64_t carrier_size = 0;
  bool closure = true;
  bool associativity = true;
  bool identity = true;
  bool inverses = true;
  bool commutativity = true;
  std::vector<std::string> violations;

  bool ok() const { return closure && associativity && identity && inverses && commutativity; }
};

/// Checks the abelian group axioms for partition_add. Exhaustive when
/// b^m <= exhaustive_limit, otherwise on `samples` seeded random triples.
GroupAxiomReport verify_group_axioms(const AdditionSpec& spec, std::uint64_t exhaustive_limit,
                                     std::size_t samples = 20000, std::uint64_t seed = 1);

/// Order of x in the group defined by spec.
std::uint64_t element_order(const DigitVector& x, const AdditionSpec& spec);

/// Histogram order -> number of elements, over all of A_b^m. Isomorphism
/// invariant used to tell partition classes apart.
std::map<std::uint64_t, std::uint64_t> order_profile(const AdditionSpec& spec);

std::uint64_t max_element_order(const AdditionSpec& spec);

}  // namespace equilens::digits
