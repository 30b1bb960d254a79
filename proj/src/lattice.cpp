#include "equilens/lattice.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "equilens/errors.hpp"
#include "equilens/parallel.hpp"
#include "equilens/summation.hpp"
#include "equilens/weights.hpp"

namespace equilens::lattice {

namespace {

std::int64_t mod(int128 x, std::int64_t N) {
  auto r = static_cast<std::int64_t>(x % N);
  return r < 0 ? r + N : r;
}

// Modular inverse by the extended Euclidean algorithm; gcd(a, N) = 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t N) {
  std::int64_t r0 = N, r1 = mod(a, N);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  return mod(t0, N);
}

void gate(const LatticeRuleSpec& spec, const SearchOptions& options) {
  if (options.allow_large) return;
  if (spec.dimension() > 3 || spec.modulus() > 10'000) {
    throw ResourceLimitError("exhaustive dual search needs s <= 3 and N <= 10^4; pass allow-large to override");
  }
}

// Calls visit(k) for every nonzero dual k with ||k||_inf <= K, in
// lexicographic order. The first s-1 entries range over the box and the
// last one is solved from k . a == 0 mod N, so only dual vectors are seen.
template <class Visit>
void for_each_dual(const LatticeRuleSpec& spec, std::int64_t K, Visit&& visit) {
  const auto s = spec.dimension();
  const auto& a = spec.generator();
  const std::int64_t N = spec.modulus();
  const std::int64_t inv_last = inverse_mod(a[s - 1], N);
  IndexVector k = IndexVector::Zero(static_cast<Eigen::Index>(s));
  for (std::size_t i = 0; i + 1 < s; ++i) k(static_cast<Eigen::Index>(i)) = -K;
  for (;;) {
    int128 dot = 0;
    for (std::size_t i = 0; i + 1 < s; ++i) dot += static_cast<int128>(k(static_cast<Eigen::Index>(i))) * a[i];
    const std::int64_t r = mod(static_cast<int128>(mod(-dot, N)) * inv_last, N);
    // Smallest value >= -K congruent to r.
    std::int64_t first = r - ((r + K) / N) * N;
    for (std::int64_t v = first; v <= K; v += N) {
      k(static_cast<Eigen::Index>(s - 1)) = v;
      if (!k.isZero()) visit(k);
    }
    std::size_t i = s - 1;
    while (i > 0) {
      auto& e = k(static_cast<Eigen::Index>(i - 1));
      if (e < K) {
        ++e;
        break;
      }
      e = -K;
      --i;
    }
    if (i == 0) return;
  }
}

std::int64_t r_of(const IndexVector& k) {
  std::int64_t r = 1;
  for (Eigen::Index i = 0; i < k.size(); ++i) r *= std::max<std::int64_t>(1, std::abs(k(i)));
  return r;
}

bool lex_less(const IndexVector& x, const IndexVector& y) {
  return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
}

}  // namespace

LatticeRuleSpec::LatticeRuleSpec(std::vector<std::int64_t> a, std::int64_t N) : a_(std::move(a)), N_(N) {
  if (N_ < 2) throw ArgumentError("lattice modulus N must be at least 2");
  if (a_.size() < 2) throw ArgumentError("lattice rule needs dimension s >= 2");
  for (auto ai : a_) {
    if (std::gcd(ai < 0 ? -ai : ai, N_) != 1) {
      throw ArgumentError("generator entry " + std::to_string(ai) + " is not coprime to N=" + std::to_string(N_));
    }
  }
}

std::string LatticeRuleSpec::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << a_[i];
  os << '@' << N_;
  return os.str();
}

Rational node_coordinate(const LatticeRuleSpec& spec, std::int64_t n, std::size_t i) {
  if (n < 0 || n >= spec.modulus()) throw RangeError("lattice node index out of range");
  if (i >= spec.dimension()) throw RangeError("lattice coordinate out of range");
  return Rational(mod(static_cast<int128>(n) * spec.generator()[i], spec.modulus()), spec.modulus());
}

PointSet glp_nodes(const LatticeRuleSpec& spec) {
  const auto N = static_cast<std::size_t>(spec.modulus());
  PointSet out(N, spec.dimension());
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t i = 0; i < spec.dimension(); ++i) {
      out.set(n, i, UnitCoordinate::from_rational(node_coordinate(spec, static_cast<std::int64_t>(n), i)));
    }
  }
  return out;
}

bool is_dual(const IndexVector& k, const LatticeRuleSpec& spec) {
  if (static_cast<std::size_t>(k.size()) != spec.dimension()) throw ArgumentError("index dimension does not match the lattice");
  int128 dot = 0;
  for (std::size_t i = 0; i < spec.dimension(); ++i) dot += static_cast<int128>(k(static_cast<Eigen::Index>(i))) * spec.generator()[i];
  return dot % spec.modulus() == 0;
}

// (N, 0, ..., 0) is dual with ||.||_2 = r(.) = N, so both minima are at
// most N and every minimizer has ||k||_inf <= N.
ShortestDual sigma_lattice(const LatticeRuleSpec& spec, const SearchOptions& options) {
  gate(spec, options);
  std::int64_t best = -1;
  IndexVector witness;
  for_each_dual(spec, spec.modulus(), [&](const IndexVector& k) {
    const std::int64_t n2 = k.squaredNorm();
    if (best < 0 || n2 < best || (n2 == best && lex_less(k, witness))) {
      best = n2;
      witness = k;
    }
  });
  return {1.0 / std::sqrt(static_cast<double>(best)), witness};
}

ShortestDual babenko_zaremba(const LatticeRuleSpec& spec, const SearchOptions& options) {
  gate(spec, options);
  std::int64_t best = -1;
  IndexVector witness;
  for_each_dual(spec, spec.modulus(), [&](const IndexVector& k) {
    const std::int64_t r = r_of(k);
    if (best < 0 || r < best || (r == best && lex_less(k, witness))) {
      best = r;
      witness = k;
    }
  });
  return {1.0 / static_cast<double>(best), witness};
}

PAlphaResult p_alpha(const LatticeRuleSpec& spec, double alpha, std::int64_t K) {
  if (!(alpha > 1.0)) throw ArgumentError("P_alpha needs alpha > 1");
  if (K < 1) throw ArgumentError("truncation bound K must be at least 1");
  CompensatedSum sum;
  for_each_dual(spec, K, [&](const IndexVector& k) { sum.add(std::pow(static_cast<double>(r_of(k)), -alpha)); });
  const auto w = measures::r_weight(std::vector<padic::Signature>(spec.dimension(), padic::Signature::integer));
  return {sum.value(), w.tail_power_sum(static_cast<double>(K), alpha), K};
}

double p_alpha_bernoulli(const LatticeRuleSpec& spec, int alpha) {
  // sum_{k != 0} e(kx) |k|^{-2m} = (-1)^{m+1} (2 pi)^{2m} B_{2m}(x) / (2m)!
  double c;
  std::function<double(double)> B;
  const double two_pi = 2.0 * std::numbers::pi;
  switch (alpha) {
    case 2:
      c = two_pi * two_pi / 2.0;
      B = [](double x) { return x * x - x + 1.0 / 6.0; };
      break;
    case 4:
      c = -std::pow(two_pi, 4) / 24.0;
      B = [](double x) { return x * x * x * x - 2.0 * x * x * x + x * x - 1.0 / 30.0; };
      break;
    case 6:
      c = std::pow(two_pi, 6) / 720.0;
      B = [](double x) {
        const double x2 = x * x;
        return x2 * x2 * x2 - 3.0 * x2 * x2 * x + 2.5 * x2 * x2 - 0.5 * x2 + 1.0 / 42.0;
      };
      break;
    default:
      throw ArgumentError("Bernoulli closed form is available for alpha in {2, 4, 6}");
  }
  const std::int64_t N = spec.modulus();
  CompensatedSum sum;
  for (std::int64_t n = 0; n < N; ++n) {
    double prod = 1.0;
    for (std::size_t i = 0; i < spec.dimension(); ++i) prod *= 1.0 + c * B(node_coordinate(spec, n, i).to_double());
    sum.add(prod);
  }
  return sum.value() / static_cast<double>(N) - 1.0;
}

SloanKachoyanReport sloan_kachoyan_check(const LatticeRuleSpec& spec, std::int64_t K, double tolerance) {
  if (K < 0) throw ArgumentError("K must be non-negative");
  const auto s = spec.dimension();
  const auto N = static_cast<std::size_t>(spec.modulus());
  const auto width = static_cast<std::size_t>(2 * K + 1);
  const auto nodes = glp_nodes(spec);

  // table[i][n * width + (k_i + K)] = e(k_i x_ni) from the double coordinates.
  std::vector<std::vector<std::complex<double>>> table(s, std::vector<std::complex<double>>(N * width));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t n = 0; n < N; ++n) {
      const auto x = UnitCoordinate::from_double(nodes.values()(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)));
      for (std::size_t j = 0; j < width; ++j) {
        table[i][n * width + j] = unit_turns(frac_product(static_cast<std::int64_t>(j) - K, x));
      }
    }
  }

  std::size_t total = 1;
  for (std::size_t i = 0; i < s; ++i) total *= width;
  auto index_of = [&](std::size_t flat) {
    IndexVector k(static_cast<Eigen::Index>(s));
    for (std::size_t i = s; i-- > 0;) {
      k(static_cast<Eigen::Index>(i)) = static_cast<std::int64_t>(flat % width) - K;
      flat /= width;
    }
    return k;
  };

  std::vector<double> deviation(total);
  parallel_for(total, [&](std::size_t flat) {
    const auto k = index_of(flat);
    CompensatedComplexSum sum;
    for (std::size_t n = 0; n < N; ++n) {
      std::complex<double> v{1.0, 0.0};
      for (std::size_t i = 0; i < s; ++i) v *= table[i][n * width + static_cast<std::size_t>(k(static_cast<Eigen::Index>(i)) + K)];
      sum.add(v);
    }
    const auto S = sum.value() / static_cast<double>(N);
    deviation[flat] = std::abs(S - std::complex<double>(is_dual(k, spec) ? 1.0 : 0.0, 0.0));
  });

  SloanKachoyanReport report;
  report.checked = total;
  for (std::size_t flat = 0; flat < total; ++flat) {
    report.max_deviation = std::max(report.max_deviation, deviation[flat]);
    if (deviation[flat] > tolerance) report.violations.push_back(index_of(flat));
  }
  return report;
}

}  // namespace equilens::lattice
