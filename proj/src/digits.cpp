#include "equilens/digits.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "equilens/errors.hpp"

namespace equilens::digits {

namespace {

void require_compatible(const DigitVector& x, const DigitVector& y) {
  if (x.base() != y.base()) throw ArgumentError("digit vectors have different bases");
  if (x.size() != y.size()) throw ArgumentError("digit vectors have different lengths");
}

void require_spec(const DigitVector& x, const AdditionSpec& spec) {
  if (x.base() != spec.base) throw ArgumentError("digit vector base does not match the addition");
  if (x.size() != spec.length()) {
    throw ArgumentError("digit vector length does not match the partition total");
  }
}

std::string show(const DigitVector& x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < x.size(); ++j) os << (j ? "," : "") << x[j];
  os << ')';
  return os.str();
}

// Carry addition of digits [lo, hi), dropping the carry out of the block.
void add_block(const DigitVector& x, const DigitVector& y, std::vector<int>& out,
               std::size_t lo, std::size_t hi) {
  const int b = x.base();
  int carry = 0;
  for (std::size_t j = lo; j < hi; ++j) {
    const int t = x[j] + y[j] + carry;
    out[j] = t % b;
    carry = t / b;
  }
}

}  // namespace

DigitVector::DigitVector(int base, std::vector<int> digits) : base_(base), digits_(std::move(digits)) {
  if (base < 2) throw ArgumentError("base must be at least 2");
  if (digits_.empty()) throw ArgumentError("digit vector must have length >= 1");
  for (int d : digits_) {
    if (d < 0 || d >= base) throw ArgumentError("digit out of range for base");
  }
}

DigitVector DigitVector::zero(int base, std::size_t length) {
  return DigitVector(base, std::vector<int>(length, 0));
}

DigitVector DigitVector::from_integer(int base, std::size_t length, std::uint64_t value) {
  if (base < 2) throw ArgumentError("base must be at least 2");
  std::vector<int> d(length);
  for (std::size_t j = 0; j < length; ++j) {
    d[j] = static_cast<int>(value % static_cast<std::uint64_t>(base));
    value /= static_cast<std::uint64_t>(base);
  }
  return DigitVector(base, std::move(d));
}

std::uint64_t DigitVector::rank() const {
  std::uint64_t r = 0;
  for (std::size_t j = digits_.size(); j-- > 0;) r = r * static_cast<std::uint64_t>(base_) + digits_[j];
  return r;
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ArgumentError("partition must have at least one part");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw ArgumentError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw ArgumentError("partition parts must be non-increasing");
  }
}

int Partition::total() const {
  int t = 0;
  for (int p : parts_) t += p;
  return t;
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

AdditionSpec::AdditionSpec(int b, Partition p) : base(b), partition(std::move(p)) {
  if (b < 2) throw ArgumentError("base must be at least 2");
}

std::vector<std::size_t> AdditionSpec::block_bounds() const {
  std::vector<std::size_t> bounds{0};
  for (int t : partition.parts()) bounds.push_back(bounds.back() + static_cast<std::size_t>(t));
  return bounds;
}

DigitVector xor_add(const DigitVector& x, const DigitVector& y) {
  require_compatible(x, y);
  std::vector<int> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] + y[j]) % x.base();
  return DigitVector(x.base(), std::move(out));
}

DigitVector carry_add(const DigitVector& x, const DigitVector& y) {
  require_compatible(x, y);
  std::vector<int> out(x.size());
  add_block(x, y, out, 0, x.size());
  return DigitVector(x.base(), std::move(out));
}

DigitVector partition_add(const DigitVector& x, const DigitVector& y, const AdditionSpec& spec) {
  require_compatible(x, y);
  require_spec(x, spec);
  std::vector<int> out(x.size());
  const auto bounds = spec.block_bounds();
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) add_block(x, y, out, bounds[i], bounds[i + 1]);
  return DigitVector(x.base(), std::move(out));
}

DigitVector partition_negate(const DigitVector& x, const AdditionSpec& spec) {
  require_spec(x, spec);
  // Within each block: -v = (b^t - 1 - v) + 1, i.e. complement then add one.
  const int b = spec.base;
  std::vector<int> out(x.size());
  const auto bounds = spec.block_bounds();
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    int carry = 1;
    for (std::size_t j = bounds[i]; j < bounds[i + 1]; ++j) {
      const int t = (b - 1 - x[j]) + carry;
      out[j] = t % b;
      carry = t / b;
    }
  }
  return DigitVector(b, std::move(out));
}

std::vector<Partition> enumerate_partitions(int m) {
  if (m < 1) throw ArgumentError("can only partition a positive integer");
  std::vector<Partition> out;
  std::vector<int> current;
  // Parts are chosen largest first, each bounded by the previous one.
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      self(self, remaining - p, p);
      current.pop_back();
    }
  };
  recurse(recurse, m, m);
  return out;
}

namespace {

// Cayley table of partition_add indexed by rank.
std::vector<std::uint32_t> cayley_table(const AdditionSpec& spec, std::uint64_t n) {
  std::vector<DigitVector> elems;
  elems.reserve(n);
  for (std::uint64_t v = 0; v < n; ++v) elems.push_back(DigitVector::from_integer(spec.base, spec.length(), v));
  std::vector<std::uint32_t> table(n * n);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = 0; j < n; ++j) {
      table[i * n + j] = static_cast<std::uint32_t>(partition_add(elems[i], elems[j], spec).rank());
    }
  }
  return table;
}

void note(GroupAxiomReport& report, const std::string& what) {
  if (report.violations.size() < 20) report.violations.push_back(what);
}

}  // namespace

GroupAxiomReport verify_group_axioms(const AdditionSpec& spec, std::uint64_t exhaustive_limit,
                                     std::size_t samples, std::uint64_t seed) {
  GroupAxiomReport report;
  const std::size_t m = spec.length();
  std::uint64_t n = 1;
  bool small = true;
  for (std::size_t j = 0; j < m; ++j) {
    if (n > exhaustive_limit / static_cast<std::uint64_t>(spec.base)) {
      small = false;
      break;
    }
    n *= static_cast<std::uint64_t>(spec.base);
  }
  report.exhaustive = small;
  report.carrier_size = small ? n : 0;
  const DigitVector zero = DigitVector::zero(spec.base, m);

  if (small) {
    // Closure holds by construction of DigitVector (every digit is checked
    // on construction), so only the remaining axioms are tested on ranks.
    const auto table = cayley_table(spec, n);
    auto op = [&](std::uint64_t a, std::uint64_t b) -> std::uint64_t { return table[a * n + b]; };
    for (std::uint64_t a = 0; a < n; ++a) {
      if (op(a, 0) != a || op(0, a) != a) {
        report.identity = false;
        note(report, "identity fails at rank " + std::to_string(a));
      }
      bool has_inverse = false;
      for (std::uint64_t b = 0; b < n && !has_inverse; ++b) has_inverse = op(a, b) == 0 && op(b, a) == 0;
      if (!has_inverse) {
        report.inverses = false;
        note(report, "no inverse for rank " + std::to_string(a));
      }
      for (std::uint64_t b = a + 1; b < n; ++b) {
        if (op(a, b) != op(b, a)) {
          report.commutativity = false;
          note(report, "commutativity fails at ranks " + std::to_string(a) + "," + std::to_string(b));
        }
      }
    }
    // Associativity: (xa)y = x(ay) for all x, y holds for a set of elements
    // closed under the operation (Light's test), so checking it for a set
    // whose closure is the whole carrier covers every triple. The unit
    // vectors at block starts are such a set when the table is a group;
    // the closure is recomputed to confirm it.
    std::vector<std::uint64_t> generators;
    for (std::size_t i = 0; i + 1 < spec.block_bounds().size(); ++i) {
      std::uint64_t r = 1;
      for (std::size_t j = 0; j < spec.block_bounds()[i]; ++j) r *= static_cast<std::uint64_t>(spec.base);
      generators.push_back(r);
    }
    std::vector<char> reached(n, 0);
    std::vector<std::uint64_t> frontier{0};
    reached[0] = 1;
    while (!frontier.empty()) {
      std::vector<std::uint64_t> next;
      for (auto x : frontier) {
        for (auto g : generators) {
          const auto y = op(x, g);
          if (!reached[y]) {
            reached[y] = 1;
            next.push_back(y);
          }
        }
      }
      frontier.swap(next);
    }
    const bool generated = std::all_of(reached.begin(), reached.end(), [](char c) { return c != 0; });
    if (!generated) {
      // Fall back to every triple.
      generators.resize(n);
      for (std::uint64_t a = 0; a < n; ++a) generators[a] = a;
    }
    for (auto g : generators) {
      for (std::uint64_t x = 0; x < n; ++x) {
        const auto xg = op(x, g);
        for (std::uint64_t y = 0; y < n; ++y) {
          if (op(xg, y) != op(x, op(g, y))) {
            report.associativity = false;
            note(report, "associativity fails at ranks " + std::to_string(x) + "," + std::to_string(g) +
                             "," + std::to_string(y));
          }
        }
      }
    }
    return report;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> digit(0, spec.base - 1);
  auto random_vector = [&] {
    std::vector<int> d(m);
    for (auto& v : d) v = digit(rng);
    return DigitVector(spec.base, std::move(d));
  };
  for (std::size_t t = 0; t < samples; ++t) {
    const auto x = random_vector();
    const auto y = random_vector();
    const auto z = random_vector();
    const auto xy = partition_add(x, y, spec);
    if (partition_add(xy, z, spec) != partition_add(x, partition_add(y, z, spec), spec)) {
      report.associativity = false;
      note(report, "associativity fails at " + show(x) + " " + show(y) + " " + show(z));
    }
    if (xy != partition_add(y, x, spec)) {
      report.commutativity = false;
      note(report, "commutativity fails at " + show(x) + " " + show(y));
    }
    if (partition_add(x, zero, spec) != x || partition_add(zero, x, spec) != x) {
      report.identity = false;
      note(report, "identity fails at " + show(x));
    }
    if (partition_add(x, partition_negate(x, spec), spec) != zero) {
      report.inverses = false;
      note(report, "inverse fails at " + show(x));
    }
  }
  return report;
}

std::uint64_t element_order(const DigitVector& x, const AdditionSpec& spec) {
  require_spec(x, spec);
  const DigitVector zero = DigitVector::zero(spec.base, spec.length());
  DigitVector acc = x;
  std::uint64_t order = 1;
  while (acc != zero) {
    acc = partition_add(acc, x, spec);
    ++order;
  }
  return order;
}

std::map<std::uint64_t, std::uint64_t> order_profile(const AdditionSpec& spec) {
  std::uint64_t n = 1;
  for (std::size_t j = 0; j < spec.length(); ++j) n *= static_cast<std::uint64_t>(spec.base);
  std::map<std::uint64_t, std::uint64_t> profile;
  for (std::uint64_t v = 0; v < n; ++v) {
    ++profile[element_order(DigitVector::from_integer(spec.base, spec.length(), v), spec)];
  }
  return profile;
}

std::uint64_t max_element_order(const AdditionSpec& spec) {
  const auto profile = order_profile(spec);
  return profile.rbegin()->first;
}

}  // namespace equilens::digits
