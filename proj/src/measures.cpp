#include "equilens/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "equilens/errors.hpp"
#include "equilens/parallel.hpp"
#include "equilens/summation.hpp"

namespace equilens::measures {

using padic::SystemKind;

namespace {

int max_digits(int base) {
  int d = 0;
  std::uint64_t p = 1;
  const auto limit = static_cast<std::uint64_t>(INT64_MAX);
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

// Visits every admissible nonzero k with K_inner < ||k||_inf <= K, skipping
// subtrees whose prefix bound falls strictly below `threshold`. Integer
// slots run 0, 1, -1, 2, -2, ... so the visiting order is fixed.
class ShellEnumerator {
 public:
  ShellEnumerator(std::vector<Signature> sigs, const WeightSpec& weight, std::size_t budget)
      : sigs_(std::move(sigs)), weight_(weight), budget_(budget) {}

  using Sink = std::function<void(const std::vector<IndexVector>&)>;

  // Candidates reach `sink` in enumeration order, kChunk at a time.
  void run(std::int64_t K, std::int64_t K_inner, double threshold, const Sink& sink) {
    K_ = K;
    K_inner_ = K_inner;
    threshold_ = threshold;
    sink_ = &sink;
    out_.clear();
    k_ = IndexVector::Zero(static_cast<Eigen::Index>(sigs_.size()));
    recurse(0, 0);
    if (!out_.empty()) sink(out_);
    out_.clear();
  }

  std::size_t visited() const { return visited_; }

 private:
  bool pruned(std::size_t used) const {
    return weight_.prefix_bound && threshold_ > 0.0 && weight_.prefix_bound(k_, used) < threshold_;
  }

  void recurse(std::size_t slot, std::int64_t current_max) {
    if (slot == sigs_.size()) {
      if (current_max <= K_inner_) return;
      if (++visited_ > budget_) throw ResourceLimitError("index enumeration budget exhausted");
      out_.push_back(k_);
      if (out_.size() == kChunk) {
        (*sink_)(out_);
        out_.clear();
      }
      return;
    }
    const auto idx = static_cast<Eigen::Index>(slot);
    const std::int64_t start = sigs_[slot] == Signature::positive ? 1 : 0;
    for (std::int64_t m = start; m <= K_; ++m) {
      bool any = false;
      const int variants = (sigs_[slot] == Signature::integer && m > 0) ? 2 : 1;
      for (int v = 0; v < variants; ++v) {
        k_(idx) = v == 0 ? m : -m;
        if (pruned(slot + 1)) continue;
        any = true;
        recurse(slot + 1, std::max(current_max, m));
      }
      k_(idx) = 0;
      if (!any) break;
    }
  }

  static constexpr std::size_t kChunk = 1 << 15;

  std::vector<Signature> sigs_;
  const WeightSpec& weight_;
  const Sink* sink_ = nullptr;
  std::size_t budget_;
  std::size_t visited_ = 0;
  std::int64_t K_ = 0;
  std::int64_t K_inner_ = 0;
  double threshold_ = 0.0;
  IndexVector k_;
  std::vector<IndexVector> out_;
};

void check_pairing(const WeylSystem& system, const WeightSpec& weight) {
  if (weight.dimension() != system.dimension()) {
    throw ArgumentError("weight dimension does not match the function system");
  }
  for (std::size_t i = 0; i < system.dimension(); ++i) {
    if (weight.signatures[i] != system.signature(i)) {
      throw ArgumentError("weight index set does not match the function system");
    }
  }
  if (system.size() == 0) throw ArgumentError("N must be at least 1");
}

std::int64_t shell_int(double K) {
  if (K < 1.0) return 0;
  if (K > 4.0e18) return std::numeric_limits<std::int64_t>::max() / 4;
  return static_cast<std::int64_t>(std::floor(K));
}

struct ShellMax {
  double A = 0.0;
  IndexVector argmax;
  std::size_t evaluated = 0;
};

// One shell of the maximum search. Candidates are scored in parallel and
// scanned in enumeration order so ties resolve to the first index found.
void scan_shell(const WeylSystem& system, const WeightSpec& weight, ShellEnumerator& en,
                std::int64_t K, std::int64_t K_inner, ShellMax& state) {
  const double threshold = state.A;
  std::vector<double> score;
  en.run(K, K_inner, threshold, [&](const std::vector<IndexVector>& cands) {
    score.assign(cands.size(), -1.0);
    parallel_for(cands.size(), [&](std::size_t i) {
      const double rho = weight.value(cands[i]);
      if (rho < threshold) return;
      score[i] = rho * std::abs(system.weyl_sum(cands[i]));
    });
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (score[i] >= 0.0) ++state.evaluated;
      if (score[i] > state.A) {
        state.A = score[i];
        state.argmax = cands[i];
      }
    }
  });
}

}  // namespace

std::complex<double> weyl_sum(const std::function<std::complex<double>(const UnitPoint&)>& f,
                              const PointSet& points, std::size_t N) {
  if (N == 0) throw ArgumentError("N must be at least 1");
  if (N > points.size()) throw ArgumentError("N exceeds the number of available points");
  CompensatedComplexSum sum;
  for (std::size_t n = 0; n < N; ++n) sum.add(f(points.point(n)));
  return sum.value() / static_cast<double>(N);
}

std::vector<Signature> WeylSystem::signatures() const {
  std::vector<Signature> out;
  for (std::size_t i = 0; i < dimension(); ++i) out.push_back(signature(i));
  return out;
}

HybridWeylSystem::HybridWeylSystem(padic::HybridSystemConfig config, const PointSet& points, std::size_t N)
    : config_(std::move(config)), N_(N) {
  config_.validate();
  if (N == 0) throw ArgumentError("N must be at least 1");
  if (N > points.size()) throw ArgumentError("N exceeds the number of available points");
  if (static_cast<int>(points.dimension()) != config_.dimension()) {
    throw ArgumentError("point dimension does not match the function system");
  }
  points_ = points.head(N);
  const int s = config_.dimension();
  digit_ints_.setZero(static_cast<Eigen::Index>(N), s);
  capacity_.assign(static_cast<std::size_t>(s), 0);
  for (int slot = 0; slot < s; ++slot) {
    if (config_.kind(slot) == SystemKind::trig) continue;
    const int b = config_.base(slot);
    const int D = max_digits(b);
    capacity_[static_cast<std::size_t>(slot)] = D;
    const auto coord = static_cast<std::size_t>(config_.coordinate(slot));
    for (std::size_t n = 0; n < N; ++n) {
      const auto digits = padic::regular_digits(points_.at(n, coord), b, D);
      std::uint64_t z = 0;
      for (int j = D - 1; j >= 0; --j) z = z * static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(digits[static_cast<std::size_t>(j)]);
      digit_ints_(static_cast<Eigen::Index>(n), slot) = z;
    }
  }
}

Signature HybridWeylSystem::signature(std::size_t slot) const {
  return config_.signature(static_cast<int>(slot));
}

double HybridWeylSystem::slot_phase(std::size_t n, int slot, std::int64_t k) const {
  if (k == 0) return 0.0;
  const auto coord = static_cast<std::size_t>(config_.coordinate(slot));
  switch (config_.kind(slot)) {
    case SystemKind::trig: {
      const std::int64_t den = points_.denominator(n, coord);
      if (den > 0) {
        constexpr std::int64_t kNarrow = std::int64_t{1} << 31;
        const std::int64_t num = points_.numerator(n, coord);
        if (den < kNarrow && k > -kNarrow && k < kNarrow) {
          std::int64_t p = k * num % den;
          if (p < 0) p += den;
          return static_cast<double>(p) / static_cast<double>(den);
        }
        int128 p = static_cast<int128>(k) * num % den;
        if (p < 0) p += den;
        return static_cast<double>(p) / static_cast<double>(den);
      }
      return frac_product(k, UnitCoordinate::from_double(points_.values()(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(coord))));
    }
    case SystemKind::walsh: {
      const int b = config_.base(slot);
      const auto ub = static_cast<std::uint64_t>(b);
      auto kk = static_cast<std::uint64_t>(k);
      std::uint64_t z = digit_integer(n, slot);
      if (padic::digit_length(kk, b) > digit_capacity(slot)) throw ArgumentError("Walsh index too large");
      std::uint64_t sum = 0;
      while (kk > 0) {
        sum += (kk % ub) * (z % ub);
        kk /= ub;
        z /= ub;
      }
      return static_cast<double>(sum % ub) / b;
    }
    default: {
      const int b = config_.base(slot);
      const auto kk = static_cast<std::uint64_t>(k);
      const int g = padic::digit_length(kk, b);
      if (g > digit_capacity(slot)) throw ArgumentError("b-adic index too large");
      const std::uint64_t modulus = upow(b, g);
      const std::uint64_t a = padic::reverse_digits(kk, b, g);
      const std::uint64_t zmod = digit_integer(n, slot) % modulus;
      const auto num = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * zmod % modulus);
      return static_cast<double>(num) / static_cast<double>(modulus);
    }
  }
}

std::complex<double> HybridWeylSystem::weyl_sum(const IndexVector& k) const {
  padic::check_signature(k, config_);
  const int s = config_.dimension();
  CompensatedComplexSum sum;
  for (std::size_t n = 0; n < N_; ++n) {
    double phase = 0.0;
    for (int slot = 0; slot < s; ++slot) phase += slot_phase(n, slot, k(slot));
    phase -= std::floor(phase);
    sum.add(unit_turns(phase));
  }
  return sum.value() / static_cast<double>(N_);
}

SpectralResult spectral_test(const WeylSystem& system, const WeightSpec& weight, const SpectralOptions& options) {
  check_pairing(system, weight);
  if (!weight.value || !weight.tail_sup) throw CapabilityError("weight '" + weight.name + "' has no tail bound; spectral test unavailable");
  if (!(weight.normalizer > 0.0)) throw ArgumentError("weight normalizer must be positive");
  const auto sigs = system.signatures();
  ShellEnumerator en(sigs, weight, options.max_evaluations);
  ShellMax state;
  std::int64_t K_prev = 0;
  std::int64_t K = 1;
  const std::int64_t K_max = std::max<std::int64_t>(1, shell_int(options.max_shell));
  for (;;) {
    try {
      scan_shell(system, weight, en, K, K_prev, state);
    } catch (const ResourceLimitError& e) {
      // everything outside shell K_prev is still bounded by its tail
      const double outer = K_prev > 0 ? weight.tail_sup(static_cast<double>(K_prev)) : weight.normalizer;
      throw ResourceLimitError(e.what(), state.A / weight.normalizer,
                               std::min(1.0, std::max(state.A, outer) / weight.normalizer));
    }
    const double tail = weight.tail_sup(static_cast<double>(K));
    if (tail <= state.A && static_cast<double>(K) >= options.min_shell) {
      SpectralResult r;
      r.value = std::min(1.0, state.A / weight.normalizer);
      r.argmax_index = state.argmax;
      r.shell_bound = static_cast<double>(K);
      r.normalizer = weight.normalizer;
      r.tail_bound = tail;
      r.evaluated = state.evaluated;
      return r;
    }
    if (K >= K_max) {
      throw ResourceLimitError("spectral test did not converge within the shell limit",
                               state.A / weight.normalizer,
                               std::max(state.A, tail) / weight.normalizer);
    }
    K_prev = K;
    K = std::min(K * 2, K_max);
  }
}

double etk_bound(const WeylSystem& system, const WeightSpec& weight, double K) {
  check_pairing(system, weight);
  if (!weight.value || !weight.tail_sup) throw CapabilityError("weight '" + weight.name + "' has no tail bound");
  const std::int64_t K_final = shell_int(K);
  ShellEnumerator en(system.signatures(), weight, std::numeric_limits<std::size_t>::max());
  ShellMax state;
  std::int64_t K_prev = 0;
  for (std::int64_t k = 1; K_prev < K_final; k = std::min(k * 2, K_final)) {
    scan_shell(system, weight, en, k, K_prev, state);
    K_prev = k;
  }
  return std::max(state.A, weight.tail_sup(static_cast<double>(K_final))) / weight.normalizer;
}

bool kernel_available(const WeylSystem& system, const WeightSpec& weight, double alpha) {
  if (alpha != 2.0) return false;
  const auto* hybrid = dynamic_cast<const HybridWeylSystem*>(&system);
  if (hybrid == nullptr) return false;
  const auto& cfg = hybrid->config();
  if (weight.factors.size() != static_cast<std::size_t>(cfg.dimension())) return false;
  for (int slot = 0; slot < cfg.dimension(); ++slot) {
    const auto& f = weight.factors[static_cast<std::size_t>(slot)];
    if (f.signature != cfg.signature(slot)) return false;
    if (cfg.kind(slot) == SystemKind::trig) {
      if (f.kind != CoordinateWeight::Kind::reciprocal) return false;
    } else if (f.kind != CoordinateWeight::Kind::digit_length || f.base != cfg.base(slot)) {
      return false;
    }
  }
  return true;
}

namespace {

DiaphonyResult diaphony_kernel(const HybridWeylSystem& system, const WeightSpec& weight) {
  const auto& cfg = system.config();
  const auto& pts = system.points();
  const std::size_t N = system.size();
  const int s = cfg.dimension();
  const double two_pi2 = 2.0 * std::numbers::pi * std::numbers::pi;

  auto slot_kernel = [&](std::size_t n, std::size_t m, int slot) {
    if (cfg.kind(slot) == SystemKind::trig) {
      const auto c = static_cast<std::size_t>(cfg.coordinate(slot));
      double t;
      const std::int64_t dn = pts.denominator(n, c);
      const std::int64_t dm = pts.denominator(m, c);
      if (dn > 0 && dm > 0) {
        const int128 den = static_cast<int128>(dn) * dm;
        int128 num = static_cast<int128>(pts.numerator(n, c)) * dm - static_cast<int128>(pts.numerator(m, c)) * dn;
        if (num < 0) num += den;
        t = static_cast<double>(num) / static_cast<double>(den);
      } else {
        t = pts.values()(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(c)) -
            pts.values()(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c));
        if (t < 0.0) t += 1.0;
        if (t >= 1.0) t -= 1.0;
      }
      return 1.0 + two_pi2 * (t * t - t + 1.0 / 6.0);
    }
    const auto b = static_cast<std::uint64_t>(cfg.base(slot));
    const double bd = static_cast<double>(b);
    std::uint64_t x = system.digit_integer(n, slot);
    std::uint64_t y = system.digit_integer(m, slot);
    if (x == y) return 1.0 + 1.0 / bd;
    int j0 = 0;
    while (x % b == y % b) {
      x /= b;
      y /= b;
      ++j0;
    }
    const double p = std::pow(bd, -j0);
    return 1.0 + (1.0 - p) / bd - p / (bd * bd);
  };

  std::vector<double> rows(N);
  parallel_for(N, [&](std::size_t n) {
    CompensatedSum row;
    for (std::size_t m = 0; m < N; ++m) {
      double v = 1.0;
      for (int slot = 0; slot < s; ++slot) v *= slot_kernel(n, m, slot);
      row.add(v);
    }
    rows[n] = row.value();
  });
  CompensatedSum total;
  for (double r : rows) total.add(r);
  const double nn = static_cast<double>(N);
  const double excess = total.value() / (nn * nn) - 1.0;
  const double T = weight.total_power_sum(2.0);
  DiaphonyResult r;
  r.alpha = 2.0;
  r.value = std::sqrt(std::clamp(excess / T, 0.0, 1.0));
  r.method = "kernel";
  r.evaluated = N * N;
  return r;
}

}  // namespace

DiaphonyResult diaphony(const WeylSystem& system, const WeightSpec& weight, double alpha,
                        const DiaphonyOptions& options) {
  check_pairing(system, weight);
  if (!(alpha > 1.0)) throw ArgumentError("alpha must exceed 1");
  if (!(options.rel_tol > 0.0)) throw ArgumentError("relative tolerance must be positive");
  if (!weight.has_tail_power_sum()) {
    throw CapabilityError("weight '" + weight.name + "' has no power-sum tail bound; diaphony unavailable");
  }
  const bool kernel_ok = kernel_available(system, weight, alpha);
  if (options.method == DiaphonyOptions::Method::kernel && !kernel_ok) {
    throw CapabilityError("kernel diaphony needs alpha = 2 and a matching product weight");
  }
  if (options.method != DiaphonyOptions::Method::shells && kernel_ok) {
    return diaphony_kernel(dynamic_cast<const HybridWeylSystem&>(system), weight);
  }
  const double T = weight.total_power_sum(alpha);
  if (!(T > 0.0) || !std::isfinite(T)) throw CapabilityError("weight power sum diverges for this alpha");

  const auto sigs = system.signatures();
  ShellEnumerator en(sigs, weight, options.max_evaluations);
  CompensatedSum acc;
  std::size_t evaluated = 0;
  std::int64_t K_prev = 0;
  std::int64_t K = 1;
  const std::int64_t K_max = std::max<std::int64_t>(1, shell_int(options.max_shell));
  for (;;) {
    std::vector<double> terms;
    try {
      en.run(K, K_prev, 0.0, [&](const std::vector<IndexVector>& cands) {
        terms.resize(cands.size());
        parallel_for(cands.size(), [&](std::size_t i) {
          const double rho = weight.value(cands[i]);
          terms[i] = std::pow(rho * std::abs(system.weyl_sum(cands[i])), alpha);
        });
        for (double t : terms) acc.add(t);
        evaluated += cands.size();
      });
    } catch (const ResourceLimitError& e) {
      const double outer = K_prev > 0 ? weight.tail_power_sum(static_cast<double>(K_prev), alpha) : T;
      throw ResourceLimitError(e.what(), std::pow(std::min(1.0, acc.value() / T), 1.0 / alpha),
                               std::pow(std::min(1.0, (acc.value() + outer) / T), 1.0 / alpha));
    }
    const double tail = weight.tail_power_sum(static_cast<double>(K), alpha);
    const double sum = acc.value();
    if (sum > 0.0 && tail < options.rel_tol * sum) {
      DiaphonyResult r;
      r.alpha = alpha;
      r.value = std::pow(std::min(1.0, sum / T), 1.0 / alpha);
      r.truncation_K = static_cast<double>(K);
      r.tail_error_bound = std::pow(std::min(1.0, (sum + tail) / T), 1.0 / alpha) - r.value;
      r.method = "shells";
      r.evaluated = evaluated;
      return r;
    }
    if (K >= K_max) {
      throw ResourceLimitError("diaphony did not converge within the shell limit",
                               std::pow(sum / T, 1.0 / alpha),
                               std::pow(std::min(1.0, (sum + tail) / T), 1.0 / alpha));
    }
    K_prev = K;
    K = std::min(K * 2, K_max);
  }
}

}  // namespace equilens::measures
