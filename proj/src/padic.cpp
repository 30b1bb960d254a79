#include "equilens/padic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "equilens/errors.hpp"

namespace equilens::padic {

namespace {

void require_base(int base) {
  if (base < 2) throw ArgumentError("base must be at least 2");
}

// Largest D with base^D <= limit.
int digit_capacity(int base, std::uint64_t limit) {
  int d = 0;
  std::uint64_t p = 1;
  while (p <= limit / static_cast<std::uint64_t>(base)) {
    p *= static_cast<std::uint64_t>(base);
    ++d;
  }
  return d;
}

std::uint64_t upow(int base, int e) {
  std::uint64_t p = 1;
  for (int i = 0; i < e; ++i) p *= static_cast<std::uint64_t>(base);
  return p;
}

}  // namespace

BadicInteger::BadicInteger(int base, std::vector<int> head, Tail tail)
    : base_(base), head_(std::move(head)), tail_(tail) {
  require_base(base);
  for (int d : head_) {
    if (d < 0 || d >= base) throw ArgumentError("b-adic digit out of range");
  }
}

BadicInteger BadicInteger::from_integer(std::int64_t value, int base, int precision) {
  require_base(base);
  if (precision < 0) throw ArgumentError("precision must be non-negative");
  std::vector<int> head(static_cast<std::size_t>(precision));
  const bool negative = value < 0;
  // Negative values: digits of -(|v|) are the complement of digits of |v|-1.
  std::uint64_t mag = negative ? static_cast<std::uint64_t>(-(value + 1)) : static_cast<std::uint64_t>(value);
  for (auto& d : head) {
    const int digit = static_cast<int>(mag % static_cast<std::uint64_t>(base));
    d = negative ? base - 1 - digit : digit;
    mag /= static_cast<std::uint64_t>(base);
  }
  if (mag != 0) throw ArgumentError("integer does not fit in the requested precision");
  return BadicInteger(base, std::move(head), negative ? Tail::b_minus_1 : Tail::zero);
}

int BadicInteger::digit(std::size_t j) const {
  if (j < head_.size()) return head_[j];
  return tail_ == Tail::zero ? 0 : base_ - 1;
}

std::uint64_t BadicInteger::to_unsigned() const {
  if (tail_ != Tail::zero) throw ArgumentError("b-adic integer is not a non-negative integer");
  std::uint64_t v = 0;
  for (std::size_t j = head_.size(); j-- > 0;) {
    if (v > (UINT64_MAX - static_cast<std::uint64_t>(head_[j])) / static_cast<std::uint64_t>(base_)) {
      throw ArgumentError("b-adic integer overflows 64 bits");
    }
    v = v * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(head_[j]);
  }
  return v;
}

int digit_length(std::uint64_t k, int base) {
  require_base(base);
  int v = 0;
  while (k > 0) {
    k /= static_cast<std::uint64_t>(base);
    ++v;
  }
  return v;
}

std::uint64_t reverse_digits(std::uint64_t k, int base, int length) {
  std::uint64_t r = 0;
  for (int j = 0; j < length; ++j) {
    r = r * static_cast<std::uint64_t>(base) + k % static_cast<std::uint64_t>(base);
    k /= static_cast<std::uint64_t>(base);
  }
  return r;
}

double monna_map(const BadicInteger& z) {
  const int b = z.base();
  const auto& head = z.head();
  // Tail zero with a short nonzero part: divide the exact integers once so
  // the result is correctly rounded.
  std::size_t len = head.size();
  while (len > 0 && head[len - 1] == 0) --len;
  if (z.tail() == BadicInteger::Tail::zero &&
      static_cast<int>(len) <= digit_capacity(b, static_cast<std::uint64_t>(INT64_MAX))) {
    std::uint64_t num = 0;
    for (std::size_t j = 0; j < len; ++j) num = num * static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(head[j]);
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(upow(b, static_cast<int>(len))));
  }
  // Horner from the most significant stored digit; the (b-1) tail sums to 1.
  double r = 0.0;
  if (z.tail() != BadicInteger::Tail::zero) {
    r = 1.0;
    len = head.size();
  }
  for (std::size_t j = len; j-- > 0;) r = (head[j] + r) / b;
  r -= std::floor(r);
  return r;
}

Rational radical_inverse(std::uint64_t n, int base) {
  require_base(base);
  const int len = digit_length(n, base);
  if (len > digit_capacity(base, static_cast<std::uint64_t>(INT64_MAX))) {
    throw ArgumentError("radical inverse denominator overflows 64 bits");
  }
  return Rational(static_cast<std::int64_t>(reverse_digits(n, base, len)),
                  static_cast<std::int64_t>(upow(base, len)));
}

std::vector<int> regular_digits(const UnitCoordinate& x, int base, int count) {
  require_base(base);
  if (count < 0) throw ArgumentError("digit count must be non-negative");
  std::vector<int> out(static_cast<std::size_t>(count), 0);
  if (x.exact()) {
    // Long division never produces an infinite (b-1) run for a rational
    // below 1, so the expansion is the regular one.
    int128 rem = x.rational().num;
    const int128 den = x.rational().den;
    for (auto& d : out) {
      rem *= base;
      d = static_cast<int>(rem / den);
      rem %= den;
      if (rem == 0) break;
    }
    return out;
  }
  const int D = digit_capacity(base, std::uint64_t{1} << 53);
  const std::uint64_t scale = upow(base, D);
  long double scaled = static_cast<long double>(x.value()) * static_cast<long double>(scale);
  auto q = static_cast<std::uint64_t>(std::llround(scaled));
  if (q >= scale) q = scale - 1;
  // Digits of q / b^D, most significant first.
  std::vector<int> all(static_cast<std::size_t>(D));
  for (int j = D - 1; j >= 0; --j) {
    all[static_cast<std::size_t>(j)] = static_cast<int>(q % static_cast<std::uint64_t>(base));
    q /= static_cast<std::uint64_t>(base);
  }
  for (int j = 0; j < std::min(count, D); ++j) out[static_cast<std::size_t>(j)] = all[static_cast<std::size_t>(j)];
  return out;
}

std::vector<int> regular_digits(double x, int base, int count) {
  return regular_digits(UnitCoordinate::from_double(x), base, count);
}

BadicInteger monna_pseudoinverse(const UnitCoordinate& x, int base, int precision) {
  if (precision < 1) throw ArgumentError("precision must be at least 1");
  return BadicInteger(base, regular_digits(x, base, precision), BadicInteger::Tail::zero);
}

BadicInteger monna_pseudoinverse(double x, int base, int precision) {
  return monna_pseudoinverse(UnitCoordinate::from_double(x), base, precision);
}

std::complex<double> character(std::uint64_t k, const BadicInteger& z) {
  const int b = z.base();
  const int g = digit_length(k, b);
  if (g == 0) return {1.0, 0.0};
  if (z.precision() < g) throw ArgumentError("b-adic integer has too few digits for this character");
  if (g > digit_capacity(b, static_cast<std::uint64_t>(INT64_MAX))) {
    throw ArgumentError("character index too large");
  }
  // phi_b(k) = a / b^g; only z mod b^g matters.
  const std::uint64_t modulus = upow(b, g);
  const std::uint64_t a = reverse_digits(k, b, g);
  std::uint64_t zmod = 0;
  for (int j = g - 1; j >= 0; --j) zmod = zmod * static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(z.digit(static_cast<std::size_t>(j)));
  const auto num = static_cast<std::int64_t>(static_cast<unsigned __int128>(a) * zmod % modulus);
  return unit_root(num, static_cast<std::int64_t>(modulus));
}

std::complex<double> badic_function(std::uint64_t k, int base, const UnitCoordinate& x) {
  require_base(base);
  const int g = digit_length(k, base);
  if (g == 0) return {1.0, 0.0};
  return character(k, monna_pseudoinverse(x, base, g));
}

std::complex<double> badic_function(std::uint64_t k, int base, double x) {
  return badic_function(k, base, UnitCoordinate::from_double(x));
}

std::complex<double> walsh(std::uint64_t k, int base, const UnitCoordinate& x) {
  require_base(base);
  const int g = digit_length(k, base);
  if (g == 0) return {1.0, 0.0};
  const auto xd = regular_digits(x, base, g);
  std::int64_t sum = 0;
  for (int j = 0; j < g; ++j) {
    sum += static_cast<std::int64_t>(k % static_cast<std::uint64_t>(base)) * xd[static_cast<std::size_t>(j)];
    k /= static_cast<std::uint64_t>(base);
  }
  return unit_root(sum % base, base);
}

std::complex<double> walsh(std::uint64_t k, int base, double x) {
  return walsh(k, base, UnitCoordinate::from_double(x));
}

std::complex<double> trig(std::int64_t k, const UnitCoordinate& x) {
  if (x.exact()) {
    const Rational& r = x.rational();
    int128 p = static_cast<int128>(k) * r.num % r.den;
    if (p < 0) p += r.den;
    return unit_root(static_cast<std::int64_t>(p), r.den);
  }
  return unit_turns(frac_product(k, x));
}

std::complex<double> trig(std::int64_t k, double x) { return trig(k, UnitCoordinate::from_double(x)); }

// ---------------------------------------------------------------------------

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::walsh: return "walsh";
    case SystemKind::badic: return "badic";
    default: return "trig";
  }
}

std::string to_string(Signature sig) {
  switch (sig) {
    case Signature::nonneg: return "nonneg";
    case Signature::positive: return "positive";
    default: return "signed";
  }
}

HybridSystemConfig HybridSystemConfig::make(int s1, int s2, int s3, std::vector<int> walsh_bases,
                                            std::vector<int> badic_bases,
                                            std::vector<int> coordinate_assignment) {
  HybridSystemConfig c;
  c.s1 = s1;
  c.s2 = s2;
  c.s3 = s3;
  c.walsh_bases = std::move(walsh_bases);
  c.badic_bases = std::move(badic_bases);
  if (coordinate_assignment.empty()) {
    for (int i = 0; i < s1 + s2 + s3; ++i) coordinate_assignment.push_back(i);
  }
  c.coordinate_assignment = std::move(coordinate_assignment);
  c.validate();
  return c;
}

HybridSystemConfig HybridSystemConfig::trigonometric(int s) { return make(0, 0, s, {}, {}); }

SystemKind HybridSystemConfig::kind(int slot) const {
  if (slot < s1) return SystemKind::walsh;
  if (slot < s1 + s2) return SystemKind::badic;
  return SystemKind::trig;
}

int HybridSystemConfig::base(int slot) const {
  if (slot < s1) return walsh_bases[static_cast<std::size_t>(slot)];
  if (slot < s1 + s2) return badic_bases[static_cast<std::size_t>(slot - s1)];
  return 0;
}

Signature HybridSystemConfig::signature(int slot) const {
  return kind(slot) == SystemKind::trig ? Signature::integer : Signature::nonneg;
}

void HybridSystemConfig::validate() const {
  if (s1 < 0 || s2 < 0 || s3 < 0) throw ArgumentError("system dimensions must be non-negative");
  if (dimension() < 1) throw ArgumentError("hybrid system needs at least one coordinate");
  if (static_cast<int>(walsh_bases.size()) != s1) throw ArgumentError("need one Walsh base per Walsh coordinate");
  if (static_cast<int>(badic_bases.size()) != s2) throw ArgumentError("need one b-adic base per b-adic coordinate");
  for (int b : walsh_bases) require_base(b);
  for (int b : badic_bases) require_base(b);
  if (static_cast<int>(coordinate_assignment.size()) != dimension()) {
    throw ArgumentError("coordinate assignment must have one entry per coordinate");
  }
  std::vector<int> sorted = coordinate_assignment;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < dimension(); ++i) {
    if (sorted[static_cast<std::size_t>(i)] != i) throw ArgumentError("coordinate assignment is not a permutation");
  }
}

std::string HybridSystemConfig::describe() const {
  // Listed in coordinate order, e.g. "walsh:2,badic:3,trig".
  std::vector<std::string> per_coord(static_cast<std::size_t>(dimension()));
  for (int slot = 0; slot < dimension(); ++slot) {
    std::string t = to_string(kind(slot));
    if (kind(slot) != SystemKind::trig) t += ":" + std::to_string(base(slot));
    per_coord[static_cast<std::size_t>(coordinate(slot))] = t;
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < per_coord.size(); ++i) os << (i ? "," : "") << per_coord[i];
  return os.str();
}

void check_signature(const IndexVector& k, const HybridSystemConfig& config) {
  if (k.size() != config.dimension()) throw ArgumentError("index vector dimension does not match the system");
  for (int slot = 0; slot < config.dimension(); ++slot) {
    const auto v = k(slot);
    switch (config.signature(slot)) {
      case Signature::nonneg:
        if (v < 0) throw ArgumentError("negative index on a Walsh or b-adic coordinate");
        break;
      case Signature::positive:
        if (v < 1) throw ArgumentError("index must be positive");
        break;
      default:
        break;
    }
  }
}

std::complex<double> hybrid_eval(const IndexVector& k, const HybridSystemConfig& config, const UnitPoint& x) {
  config.validate();
  check_signature(k, config);
  if (static_cast<int>(x.size()) != config.dimension()) throw ArgumentError("point dimension does not match the system");
  std::complex<double> value{1.0, 0.0};
  for (int slot = 0; slot < config.dimension(); ++slot) {
    const auto& xc = x[static_cast<std::size_t>(config.coordinate(slot))];
    switch (config.kind(slot)) {
      case SystemKind::walsh:
        value *= walsh(static_cast<std::uint64_t>(k(slot)), config.base(slot), xc);
        break;
      case SystemKind::badic:
        value *= badic_function(static_cast<std::uint64_t>(k(slot)), config.base(slot), xc);
        break;
      default:
        value *= trig(k(slot), xc);
        break;
    }
  }
  return value;
}

}  // namespace equilens::padic
