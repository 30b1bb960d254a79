#include "equilens/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "equilens/errors.hpp"

namespace equilens::discrepancy {

namespace {

constexpr std::int64_t kMaxScale = std::int64_t{1} << 53;

void check_points(const PointSet& points, std::size_t N, std::size_t s) {
  if (N == 0) throw ArgumentError("N must be at least 1");
  if (N > points.size()) throw ArgumentError("N exceeds the number of available points");
  if (points.dimension() != s) throw ArgumentError("point dimension does not match the resolution vector");
}

// floor(x * scale) for coordinate i of point n, exact for both storage forms.
std::int64_t cell_of(const PointSet& points, std::size_t n, std::size_t i, std::int64_t scale) {
  const std::int64_t den = points.denominator(n, i);
  if (den > 0) return static_cast<std::int64_t>(static_cast<int128>(points.numerator(n, i)) * scale / den);
  return floor_scaled(points.values()(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)), scale);
}

// x >= r, exactly.
bool at_least(const PointSet& points, std::size_t n, std::size_t i, const Rational& r) {
  const std::int64_t den = points.denominator(n, i);
  if (den > 0) return static_cast<int128>(points.numerator(n, i)) * r.den >= static_cast<int128>(r.num) * den;
  if (r.den > kMaxScale) return points.values()(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)) >= r.to_double();
  return cell_of(points, n, i, r.den) >= r.num;
}

std::uint64_t upow(int base, int e) {
  std::uint64_t p = 1;
  for (int i = 0; i < e; ++i) p *= static_cast<std::uint64_t>(base);
  return p;
}

// Corner table D(t) = C(t) * P - N * prod t_i over t in prod [0, M_i], where
// C(t) counts points with cell_i < t_i. Every b-adic box value is then
// |signed corner sum| / (N P), in exact integers.
struct CornerTable {
  std::vector<std::int64_t> M;
  std::vector<std::size_t> stride;
  std::vector<std::int64_t> D;
  std::int64_t P = 1;
  std::int64_t N = 0;

  CornerTable(const PointSet& points, std::size_t N_, const ResolutionVector& res, const DiscreteOptions& opt) {
    const std::size_t s = res.dimension();
    N = static_cast<std::int64_t>(N_);
    std::size_t total = 1;
    for (std::size_t i = 0; i < s; ++i) {
      M.push_back(res.cells(i));
      if (P > opt.max_cells / M.back()) {
        throw ResourceLimitError("b-adic cell grid exceeds the memory cap; use a smaller resolution g");
      }
      P *= M.back();
    }
    if (N > std::numeric_limits<std::int64_t>::max() / 4 / P) throw ResourceLimitError("N * cells overflows exact counting");
    stride.assign(s, 1);
    for (std::size_t i = s; i-- > 0;) {
      stride[i] = total;
      total *= static_cast<std::size_t>(M[i] + 1);
    }
    std::vector<std::int64_t> count(total, 0);
    for (std::size_t n = 0; n < N_; ++n) {
      std::size_t flat = 0;
      for (std::size_t i = 0; i < s; ++i) flat += static_cast<std::size_t>(cell_of(points, n, i, M[i]) + 1) * stride[i];
      ++count[flat];
    }
    // Prefix sums along each axis turn count into C.
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t flat = 0; flat < total; ++flat) {
        if ((flat / stride[i]) % static_cast<std::size_t>(M[i] + 1) != 0) count[flat] += count[flat - stride[i]];
      }
    }
    D.resize(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::int64_t vol = 1;
      for (std::size_t i = 0; i < s; ++i) vol *= static_cast<std::int64_t>((flat / stride[i]) % static_cast<std::size_t>(M[i] + 1));
      D[flat] = count[flat] * P - N * vol;
    }
  }

  double scale() const { return static_cast<double>(N) * static_cast<double>(P); }
};

}  // namespace

std::int64_t ResolutionVector::cells(std::size_t i) const {
  const std::int64_t c = checked_pow(bases.at(i), g.at(i), kMaxScale);
  if (c < 0) throw ArgumentError("b^g exceeds 2^53");
  return c;
}

void ResolutionVector::validate(bool require_positive) const {
  if (bases.size() != g.size()) throw ArgumentError("need one base per resolution exponent");
  if (g.empty()) throw ArgumentError("resolution vector is empty");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (bases[i] < 2) throw ArgumentError("base must be at least 2");
    if (g[i] < 0) throw ArgumentError("resolution exponents must be non-negative");
    if (require_positive && g[i] < 1) throw ArgumentError("resolution exponents must be at least 1");
    cells(i);
  }
}

double BadicInterval::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    v *= static_cast<double>(static_cast<int128>(upper[i].num) * lower[i].den - static_cast<int128>(lower[i].num) * upper[i].den) /
         (static_cast<double>(upper[i].den) * static_cast<double>(lower[i].den));
  }
  return v;
}

bool BadicInterval::contains(const PointSet& points, std::size_t n) const {
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!at_least(points, n, i, lower[i])) return false;
    if (at_least(points, n, i, upper[i])) return false;
  }
  return true;
}

std::optional<BadicInterval> interval_from_index(const std::vector<std::int64_t>& a,
                                                 const std::vector<std::int64_t>& d,
                                                 const ResolutionVector& res) {
  res.validate(false);
  const std::size_t s = res.dimension();
  if (a.size() != s || d.size() != s) throw ArgumentError("index dimension does not match the resolution vector");
  BadicInterval J;
  bool admissible = true;
  for (std::size_t i = 0; i < s; ++i) {
    const std::int64_t M = res.cells(i);
    if (a[i] < 0 || a[i] >= M) throw ArgumentError("a_i must lie in [0, b^g)");
    if (d[i] < 1 || d[i] > M) throw ArgumentError("d_i must lie in [1, b^g]");
    const int b = res.bases[i];
    const Rational lo(static_cast<std::int64_t>(padic::reverse_digits(static_cast<std::uint64_t>(a[i]), b, res.g[i])), M);
    // d = b^g names the right endpoint 1.
    const Rational hi = d[i] == M ? Rational(1, 1)
                                  : Rational(static_cast<std::int64_t>(padic::reverse_digits(static_cast<std::uint64_t>(d[i]), b, res.g[i])), M);
    if (!(lo < hi)) admissible = false;
    J.lower.push_back(lo);
    J.upper.push_back(hi);
  }
  if (!admissible) return std::nullopt;
  return J;
}

double local_discrepancy(const PointSet& points, std::size_t N, const BadicInterval& J) {
  check_points(points, N, J.lower.size());
  std::size_t count = 0;
  for (std::size_t n = 0; n < N; ++n) count += J.contains(points, n) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(N) - J.volume();
}

double discrete_discrepancy(const PointSet& points, std::size_t N, const ResolutionVector& res,
                            const DiscreteOptions& options) {
  res.validate(true);
  check_points(points, N, res.dimension());
  const std::size_t s = res.dimension();
  double work = 1.0;
  for (std::size_t i = 0; i + 1 < s; ++i) {
    const double m = static_cast<double>(res.cells(i));
    work *= m * (m + 1.0) / 2.0;
  }
  work *= static_cast<double>(res.cells(s - 1) + 1);
  if (work > options.max_box_evaluations) throw ResourceLimitError("too many b-adic boxes; use a smaller resolution g");
  const CornerTable T(points, N, res, options);

  // Odometer over (lo, hi) cell pairs of the leading coordinates; along the
  // last one max |R(hi) - R(lo)| is max R - min R.
  const std::size_t lead = s - 1;
  std::vector<std::int64_t> lo(lead, 0), hi(lead, 1);
  const std::int64_t M_last = T.M[s - 1];
  std::int64_t best = 0;
  for (;;) {
    std::int64_t rmax = std::numeric_limits<std::int64_t>::min();
    std::int64_t rmin = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t t = 0; t <= M_last; ++t) {
      std::int64_t r = 0;
      for (std::size_t mask = 0; mask < (std::size_t{1} << lead); ++mask) {
        std::size_t flat = static_cast<std::size_t>(t) * T.stride[s - 1];
        int sign = 1;
        for (std::size_t i = 0; i < lead; ++i) {
          if (mask >> i & 1) {
            flat += static_cast<std::size_t>(lo[i]) * T.stride[i];
            sign = -sign;
          } else {
            flat += static_cast<std::size_t>(hi[i]) * T.stride[i];
          }
        }
        r += sign * T.D[flat];
      }
      rmax = std::max(rmax, r);
      rmin = std::min(rmin, r);
    }
    best = std::max(best, rmax - rmin);
    std::size_t i = lead;
    while (i > 0) {
      --i;
      if (++hi[i] <= T.M[i]) break;
      if (++lo[i] < T.M[i]) {
        hi[i] = lo[i] + 1;
        break;
      }
      lo[i] = 0;
      hi[i] = 1;
      if (i == 0) {
        i = lead + 1;
        break;
      }
    }
    if (lead == 0 || i == lead + 1) break;
  }
  return static_cast<double>(best) / T.scale();
}

double discrete_star_discrepancy(const PointSet& points, std::size_t N, const ResolutionVector& res,
                                 const DiscreteOptions& options) {
  res.validate(true);
  check_points(points, N, res.dimension());
  const CornerTable T(points, N, res, options);
  std::int64_t best = 0;
  for (auto v : T.D) best = std::max(best, v < 0 ? -v : v);
  return static_cast<double>(best) / T.scale();
}

EpsilonBounds epsilon_bounds(const ResolutionVector& res) {
  res.validate(true);
  double p = 1.0, p_star = 1.0, delta = 0.0;
  for (std::size_t i = 0; i < res.dimension(); ++i) {
    const double inv = std::pow(static_cast<double>(res.bases[i]), -res.g[i]);
    p *= 1.0 - 2.0 * inv;
    p_star *= 1.0 - inv;
    delta = std::max(delta, inv);
  }
  const double s = static_cast<double>(res.dimension());
  return {1.0 - p, 1.0 - p_star, delta, 2.0 * s * delta, s * delta};
}

double exact_star_discrepancy_1d(const PointSet& points, std::size_t N) {
  if (points.dimension() != 1) throw ArgumentError("exact star discrepancy oracle needs s = 1");
  check_points(points, N, 1);
  std::vector<std::size_t> order(N);
  for (std::size_t n = 0; n < N; ++n) order[n] = n;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return points.values()(static_cast<Eigen::Index>(x), 0) < points.values()(static_cast<Eigen::Index>(y), 0);
  });
  const double twoN = 2.0 * static_cast<double>(N);
  double worst = 0.0;
  for (std::size_t r = 0; r < N; ++r) {
    const std::size_t n = order[r];
    const auto odd = static_cast<std::int64_t>(2 * r + 1);
    double dev;
    const std::int64_t den = points.denominator(n, 0);
    if (den > 0) {
      // |x - (2r+1)/(2N)| = |2N num - (2r+1) den| / (2N den)
      int128 diff = static_cast<int128>(2 * static_cast<std::int64_t>(N)) * points.numerator(n, 0) - static_cast<int128>(odd) * den;
      if (diff < 0) diff = -diff;
      dev = static_cast<double>(diff) / (twoN * static_cast<double>(den));
    } else {
      dev = std::abs(points.values()(static_cast<Eigen::Index>(n), 0) - static_cast<double>(odd) / twoN);
    }
    worst = std::max(worst, dev);
  }
  return 1.0 / twoN + worst;
}

double exact_extreme_discrepancy_small(const PointSet& points, std::size_t N) {
  const std::size_t s = points.dimension();
  if (s < 1 || s > 3 || N > 64) throw ResourceLimitError("exact extreme discrepancy oracle is limited to s <= 3, N <= 64");
  check_points(points, N, s);
  const double dN = static_cast<double>(N);

  // Distinct sorted coordinate values and 1-based ranks per axis.
  std::vector<std::vector<double>> c(s);
  std::vector<std::vector<std::size_t>> rank(s, std::vector<std::size_t>(N));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t n = 0; n < N; ++n) c[i].push_back(points.values()(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)));
    std::sort(c[i].begin(), c[i].end());
    c[i].erase(std::unique(c[i].begin(), c[i].end()), c[i].end());
    for (std::size_t n = 0; n < N; ++n) {
      const double x = points.values()(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
      rank[i][n] = static_cast<std::size_t>(std::lower_bound(c[i].begin(), c[i].end(), x) - c[i].begin()) + 1;
    }
  }
  // P[t] = #points with rank_i <= t_i.
  std::vector<std::size_t> stride(s, 1);
  std::size_t total = 1;
  for (std::size_t i = s; i-- > 0;) {
    stride[i] = total;
    total *= c[i].size() + 1;
  }
  std::vector<std::int64_t> P(total, 0);
  for (std::size_t n = 0; n < N; ++n) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < s; ++i) flat += rank[i][n] * stride[i];
    ++P[flat];
  }
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t flat = 0; flat < total; ++flat) {
      if ((flat / stride[i]) % (c[i].size() + 1) != 0) P[flat] += P[flat - stride[i]];
    }
  }

  // Per-axis candidate rank ranges [lo, hi] with their lengths. Closed
  // boxes [c_p, c_q] maximize count/N - vol; open boxes between points (or
  // reaching 0 or 1) maximize vol - count/N.
  struct Range {
    std::size_t lo, hi;
    double length;
  };
  auto closed_ranges = [&](std::size_t i) {
    std::vector<Range> out;
    const auto m = c[i].size();
    for (std::size_t p = 1; p <= m; ++p)
      for (std::size_t q = p; q <= m; ++q) out.push_back({p, q, c[i][q - 1] - c[i][p - 1]});
    return out;
  };
  auto open_ranges = [&](std::size_t i) {
    std::vector<Range> out;
    const auto m = c[i].size();
    for (std::size_t l = 0; l <= m; ++l) {
      const double L = l == 0 ? 0.0 : c[i][l - 1];
      const std::size_t lo = l + 1;  // l = 0 is the closed left end at 0
      for (std::size_t r = 1; r <= m + 1; ++r) {
        const double R = r == m + 1 ? 1.0 : c[i][r - 1];
        const std::size_t hi = r == m + 1 ? m : r - 1;
        if (L < R) out.push_back({lo, hi, R - L});
      }
    }
    return out;
  };

  double best = 0.0;
  for (int mode = 0; mode < 2; ++mode) {
    const bool closed = mode == 0;
    std::vector<std::vector<Range>> ranges;
    for (std::size_t i = 0; i + 1 < s; ++i) ranges.push_back(closed ? closed_ranges(i) : open_ranges(i));
    const std::size_t lead = s - 1;
    const auto& cl = c[s - 1];
    const std::size_t m = cl.size();
    std::vector<std::size_t> pick(lead, 0);
    bool empty = false;
    for (const auto& r : ranges) empty = empty || r.empty();
    while (!empty) {
      double V = 1.0;
      for (std::size_t i = 0; i < lead; ++i) V *= ranges[i][pick[i]].length;
      // Q(t): points inside the leading box with last rank <= t.
      std::vector<double> Q(m + 1, 0.0);
      for (std::size_t t = 0; t <= m; ++t) {
        std::int64_t q = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << lead); ++mask) {
          std::size_t flat = t * stride[s - 1];
          int sign = 1;
          // hi >= lo - 1 always, so empty ranges cancel on their own.
          for (std::size_t i = 0; i < lead; ++i) {
            const auto& rg = ranges[i][pick[i]];
            if (mask >> i & 1) {
              flat += (rg.lo - 1) * stride[i];
              sign = -sign;
            } else {
              flat += rg.hi * stride[i];
            }
          }
          q += sign * P[flat];
        }
        Q[t] = static_cast<double>(q) / dN;
      }
      if (closed) {
        // max over p <= q of (Q(q) - V c_q) - (Q(p-1) - V c_p)
        double min_left = std::numeric_limits<double>::infinity();
        for (std::size_t q = 1; q <= m; ++q) {
          min_left = std::min(min_left, Q[q - 1] - V * cl[q - 1]);
          best = std::max(best, Q[q] - V * cl[q - 1] - min_left);
        }
      } else {
        // max over L < R of (V R - Q(hi)) - (V L - Q(lo-1))
        double min_left = 0.0;  // left end 0, closed
        for (std::size_t r = 1; r <= m; ++r) {
          if (cl[r - 1] > 0.0) best = std::max(best, V * cl[r - 1] - Q[r - 1] - min_left);
          min_left = std::min(min_left, V * cl[r - 1] - Q[r]);
        }
        best = std::max(best, V - Q[m] - min_left);
      }
      std::size_t i = lead;
      while (i > 0) {
        --i;
        if (++pick[i] < ranges[i].size()) break;
        pick[i] = 0;
        if (i == 0) {
          i = lead + 1;
          break;
        }
      }
      if (lead == 0 || i == lead + 1) break;
    }
  }
  return std::min(best, 1.0);
}

int v_b(std::uint64_t k, int base) { return padic::digit_length(k, base); }

double rho_g(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& d, const ResolutionVector& res) {
  res.validate(false);
  const std::size_t s = res.dimension();
  if (a.size() != s || d.size() != s) throw ArgumentError("index dimension does not match the resolution vector");
  bool grid = true;
  double w = 1.0;
  for (std::size_t i = 0; i < s; ++i) {
    if (a[i] < 0) throw ArgumentError("a_i must be non-negative");
    if (d[i] < 1) throw ArgumentError("d_i must be positive");
    const std::int64_t M = res.cells(i);
    if (a[i] >= M || d[i] > M) grid = false;
    const int b = res.bases[i];
    w *= std::pow(static_cast<double>(b), -(v_b(static_cast<std::uint64_t>(a[i]), b) + v_b(static_cast<std::uint64_t>(d[i]), b)));
  }
  return grid ? 1.0 : w;
}

namespace {

// Tail branch of the indicator spectral test: all indices outside the
// grid, visited in classes of equal digit lengths (v(a_i), v(d_i)) whose
// weight prod b_i^{-(v(a_i)+v(d_i))} falls in (2^-t, 2^-(t-1)], t = 1, 2, ...
// The witness resolution of an index is the smallest g' >= g holding it,
// with d_i = b_i^{g'_i} naming the endpoint 1.
class TailSearch {
 public:
  TailSearch(const PointSet& points, std::size_t N, const ResolutionVector& res, bool star, std::size_t budget)
      : points_(points), N_(N), res_(res), star_(star), budget_(budget), s_(res.dimension()) {}

  double run(double floor_value) {
    best_ = floor_value;
    for (int t = 1;; ++t) {
      const double upper = std::ldexp(1.0, -(t - 1));
      if (upper <= best_) break;
      band_hi_ = upper;
      band_lo_ = std::ldexp(1.0, -t);
      va_.assign(s_, 0);
      vd_.assign(s_, 1);
      classes(0, 1.0);
    }
    return best_;
  }

  std::size_t evaluated() const { return evaluated_; }

 private:
  void classes(std::size_t i, double w) {
    if (w <= band_lo_) return;
    if (i == s_) {
      if (w <= band_hi_) members(0);
      return;
    }
    const double b = res_.bases[i];
    for (int va = 0; star_ ? va == 0 : true; ++va) {
      const double wa = w * std::pow(b, -va);
      if (wa <= band_lo_) break;
      for (int vd = 1;; ++vd) {
        const double wd = wa * std::pow(b, -vd);
        if (wd <= band_lo_) break;
        va_[i] = va;
        vd_[i] = vd;
        classes(i + 1, wd);
      }
    }
  }

  static std::int64_t first_of(int b, int v) { return v == 0 ? 0 : static_cast<std::int64_t>(upow(b, v - 1)); }
  static std::int64_t end_of(int b, int v) { return v == 0 ? 1 : static_cast<std::int64_t>(upow(b, v)); }

  void members(std::size_t i) {
    if (i == 0) {
      a_.assign(s_, 0);
      d_.assign(s_, 1);
    }
    if (i == s_) {
      evaluate();
      return;
    }
    const int b = res_.bases[i];
    for (std::int64_t a = first_of(b, va_[i]); a < end_of(b, va_[i]); ++a) {
      for (std::int64_t d = first_of(b, vd_[i]); d < end_of(b, vd_[i]); ++d) {
        a_[i] = a;
        d_[i] = d;
        members(i + 1);
      }
    }
  }

  void evaluate() {
    bool outside = false;
    for (std::size_t i = 0; i < s_; ++i) {
      const std::int64_t M = res_.cells(i);
      if (a_[i] >= M || d_[i] > M) outside = true;
    }
    if (!outside) return;
    if (++evaluated_ > budget_) {
      throw ResourceLimitError("discrepancy spectral test exhausted its tail budget", best_, std::max(best_, band_hi_));
    }
    BadicInterval J;
    for (std::size_t i = 0; i < s_; ++i) {
      const int b = res_.bases[i];
      int g = res_.g[i];
      g = std::max(g, v_b(static_cast<std::uint64_t>(a_[i]), b));
      g = std::max(g, v_b(static_cast<std::uint64_t>(d_[i] - 1), b));
      const std::int64_t M = checked_pow(b, g, kMaxScale);
      if (M < 0) throw ResourceLimitError("tail index resolution exceeds 2^53");
      const Rational lo(static_cast<std::int64_t>(padic::reverse_digits(static_cast<std::uint64_t>(a_[i]), b, g)), M);
      const Rational hi = d_[i] == M ? Rational(1, 1)
                                     : Rational(static_cast<std::int64_t>(padic::reverse_digits(static_cast<std::uint64_t>(d_[i]), b, g)), M);
      if (!(lo < hi)) return;  // not admissible: xi is identically 0
      J.lower.push_back(lo);
      J.upper.push_back(hi);
    }
    double w = 1.0;
    for (std::size_t i = 0; i < s_; ++i) w *= std::pow(static_cast<double>(res_.bases[i]), -(va_[i] + vd_[i]));
    const double value = w * std::abs(local_discrepancy(points_, N_, J));
    best_ = std::max(best_, value);
  }

  const PointSet& points_;
  std::size_t N_;
  const ResolutionVector& res_;
  bool star_;
  std::size_t budget_;
  std::size_t s_;
  std::size_t evaluated_ = 0;
  double best_ = 0.0;
  double band_lo_ = 0.0, band_hi_ = 1.0;
  std::vector<int> va_, vd_;
  std::vector<std::int64_t> a_, d_;
};

}  // namespace

DiscrepancySpectralResult discrepancy_spectral_test(const PointSet& points, std::size_t N,
                                                    const ResolutionVector& res, bool star,
                                                    const DiscrepancySpectralOptions& options) {
  res.validate(true);
  check_points(points, N, res.dimension());
  DiscrepancySpectralResult r;
  r.grid_branch = star ? discrete_star_discrepancy(points, N, res, options.discrete)
                       : discrete_discrepancy(points, N, res, options.discrete);
  for (std::size_t i = 0; i < res.dimension(); ++i) {
    r.tail_cap = std::max(r.tail_cap, std::pow(static_cast<double>(res.bases[i]), -1 - res.g[i]));
  }
  TailSearch search(points, N, res, star, options.max_tail_evaluations);
  // Tail values only matter when they beat the grid branch.
  const double reached = search.run(r.grid_branch);
  r.tail_branch = reached > r.grid_branch ? reached : 0.0;
  r.tail_evaluated = search.evaluated();
  r.value = std::max(r.grid_branch, r.tail_branch);
  return r;
}

ResolutionVector choose_resolution(double epsilon, const std::vector<int>& bases) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ArgumentError("epsilon must lie in (0, 1]");
  if (bases.empty()) throw ArgumentError("need at least one base");
  ResolutionVector res;
  res.bases = bases;
  const double threshold = epsilon / (4.0 * static_cast<double>(bases.size()));
  for (int b : bases) {
    if (b < 2) throw ArgumentError("base must be at least 2");
    int g = 0;
    // b^-g < threshold  <=>  b^g * threshold > 1, in exact powers of b.
    double p = 1.0;
    while (!(p * threshold > 1.0)) {
      p *= b;
      ++g;
    }
    res.g.push_back(g);
  }
  return res;
}

}  // namespace equilens::discrepancy
