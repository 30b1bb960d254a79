#include "equilens/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "equilens/errors.hpp"
#include "equilens/summation.hpp"

namespace equilens::measures {

namespace {

std::int64_t floor_K(double K) {
  if (K < 0) return -1;
  if (K > 9.0e18) return std::numeric_limits<std::int64_t>::max() / 4;
  return static_cast<std::int64_t>(std::floor(K));
}

double ipow(double b, int e) { return std::pow(b, e); }

}  // namespace

double zeta_tail(double alpha, std::int64_t K) {
  if (!(alpha > 1.0)) throw ArgumentError("zeta tail needs alpha > 1");
  if (K < 0) K = 0;
  // Direct terms up to L-1, then Euler-Maclaurin from L.
  const std::int64_t L = std::max<std::int64_t>(K + 1, 64);
  CompensatedSum sum;
  for (std::int64_t k = L - 1; k > K; --k) sum.add(std::pow(static_cast<double>(k), -alpha));
  const double l = static_cast<double>(L);
  const double fl = std::pow(l, -alpha);
  sum.add(l * fl / (alpha - 1.0));
  sum.add(fl / 2.0);
  sum.add(alpha * fl / (12.0 * l));
  sum.add(-alpha * (alpha + 1.0) * (alpha + 2.0) * fl / (720.0 * l * l * l));
  return sum.value();
}

double CoordinateWeight::value(std::int64_t k) const {
  if (kind == Kind::reciprocal) {
    const double a = std::abs(static_cast<double>(k));
    return 1.0 / std::max(1.0, a);
  }
  if (k < 0) throw ArgumentError("digit-length weight needs a non-negative index");
  return ipow(base, padic::digit_length(static_cast<std::uint64_t>(k), base) * -1);
}

double CoordinateWeight::sup() const {
  return signature == Signature::positive ? value(1) : 1.0;
}

double CoordinateWeight::tail_sup(std::int64_t K) const {
  if (K < 0) return sup();
  if (kind == Kind::reciprocal) return 1.0 / (static_cast<double>(K) + 1.0);
  return ipow(base, -padic::digit_length(static_cast<std::uint64_t>(K) + 1, base));
}

double CoordinateWeight::power_total(double alpha) const {
  if (!(alpha > 1.0)) throw ArgumentError("power sums need alpha > 1");
  const double zero_term = signature == Signature::positive ? 0.0 : 1.0;
  if (kind == Kind::reciprocal) {
    const double z = zeta_tail(alpha, 0);
    return zero_term + (signature == Signature::integer ? 2.0 * z : z);
  }
  const double b = base;
  const double r = std::pow(b, 1.0 - alpha);
  return zero_term + (b - 1.0) / b * r / (1.0 - r);
}

double CoordinateWeight::power_tail(std::int64_t K, double alpha) const {
  if (!(alpha > 1.0)) throw ArgumentError("power sums need alpha > 1");
  if (K < 0) return power_total(alpha);
  if (kind == Kind::reciprocal) {
    const double z = zeta_tail(alpha, K);
    return signature == Signature::integer ? 2.0 * z : z;
  }
  const double b = base;
  const double r = std::pow(b, 1.0 - alpha);
  const int V = padic::digit_length(static_cast<std::uint64_t>(K), base);
  // Remaining members of K's own digit-length class, then all longer classes.
  const double partial = (std::pow(b, V) - 1.0 - static_cast<double>(K)) * std::pow(b, -alpha * V);
  const double longer = (b - 1.0) / b * std::pow(r, V + 1) / (1.0 - r);
  return partial + longer;
}

std::string CoordinateWeight::describe() const {
  if (kind == Kind::reciprocal) return "reciprocal";
  return "digit:" + std::to_string(base);
}

double WeightSpec::total_power_sum(double alpha) const {
  if (!tail_power_sum) throw CapabilityError("weight '" + name + "' has no power-sum tail bound");
  return tail_power_sum(0.0, alpha);
}

WeightSpec product_weight(std::vector<CoordinateWeight> factors, std::string name) {
  if (factors.empty()) throw ArgumentError("product weight needs at least one factor");
  for (const auto& f : factors) {
    if (f.kind == CoordinateWeight::Kind::digit_length) {
      if (f.base < 2) throw ArgumentError("digit-length factor needs a base >= 2");
      if (f.signature == Signature::integer) {
        throw ArgumentError("digit-length factor needs a non-negative index slot");
      }
    }
  }
  WeightSpec w;
  w.name = std::move(name);
  w.factors = factors;
  for (const auto& f : factors) w.signatures.push_back(f.signature);

  w.value = [factors](const IndexVector& k) {
    double v = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i) v *= factors[i].value(k(static_cast<Eigen::Index>(i)));
    return v;
  };
  w.prefix_bound = [factors](const IndexVector& k, std::size_t used) {
    double v = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      v *= i < used ? factors[i].value(k(static_cast<Eigen::Index>(i))) : factors[i].sup();
    }
    return v;
  };
  w.tail_sup = [factors](double K) {
    const auto k = floor_K(K);
    double best = 0.0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      double v = factors[i].tail_sup(k);
      for (std::size_t j = 0; j < factors.size(); ++j)
        if (j != i) v *= factors[j].sup();
      best = std::max(best, v);
    }
    return best;
  };
  w.tail_power_sum = [factors](double K, double alpha) {
    const auto k = floor_K(K);
    // prod T - prod B = sum_i tail_i * prod_{j<i} B_j * prod_{j>i} T_j.
    std::vector<double> total(factors.size());
    std::vector<double> tail(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      total[i] = factors[i].power_total(alpha);
      tail[i] = factors[i].power_tail(k, alpha);
    }
    CompensatedSum sum;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      double term = tail[i];
      for (std::size_t j = 0; j < i; ++j) term *= total[j] - tail[j];
      for (std::size_t j = i + 1; j < factors.size(); ++j) term *= total[j];
      sum.add(term);
    }
    return sum.value();
  };

  const bool zero_admissible = std::none_of(factors.begin(), factors.end(),
                                            [](const auto& f) { return f.signature == Signature::positive; });
  if (!zero_admissible) {
    w.normalizer = 1.0;
    for (const auto& f : factors) w.normalizer *= f.sup();
  } else {
    // Best nonzero index: one slot at +-1, the rest at 0.
    w.normalizer = 0.0;
    for (std::size_t i = 0; i < factors.size(); ++i) w.normalizer = std::max(w.normalizer, factors[i].value(1));
  }
  return w;
}

WeightSpec euclidean_weight(const std::vector<Signature>& signatures) {
  if (signatures.empty()) throw ArgumentError("weight needs at least one slot");
  WeightSpec w;
  w.name = "euclidean";
  w.signatures = signatures;
  const auto positive = static_cast<double>(
      std::count(signatures.begin(), signatures.end(), Signature::positive));
  w.value = [](const IndexVector& k) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < k.size(); ++i) s += static_cast<double>(k(i)) * static_cast<double>(k(i));
    return 1.0 / std::sqrt(s);
  };
  w.prefix_bound = [positive](const IndexVector& k, std::size_t used) {
    double s = 0.0;
    for (std::size_t i = 0; i < used; ++i) {
      const auto v = static_cast<double>(k(static_cast<Eigen::Index>(i)));
      s += v * v;
    }
    return 1.0 / std::sqrt(std::max({1.0, s, positive}));
  };
  // ||k||_inf > K forces ||k||_2 >= floor(K) + 1.
  w.tail_sup = [](double K) { return 1.0 / (static_cast<double>(floor_K(K)) + 1.0); };
  w.normalizer = positive > 0 ? 1.0 / std::sqrt(positive) : 1.0;
  return w;
}

WeightSpec r_weight(const std::vector<Signature>& signatures) {
  std::vector<CoordinateWeight> f;
  for (auto sig : signatures) f.push_back({CoordinateWeight::Kind::reciprocal, 0, sig});
  return product_weight(std::move(f), "r");
}

WeightSpec digit_length_weight(const std::vector<Signature>& signatures, const std::vector<int>& bases) {
  if (signatures.size() != bases.size()) throw ArgumentError("need one base per slot");
  std::vector<CoordinateWeight> f;
  for (std::size_t i = 0; i < signatures.size(); ++i) {
    if (bases[i] == 0) {
      f.push_back({CoordinateWeight::Kind::reciprocal, 0, signatures[i]});
    } else {
      f.push_back({CoordinateWeight::Kind::digit_length, bases[i], signatures[i]});
    }
  }
  return product_weight(std::move(f), "digit");
}

std::vector<std::string> builtin_weight_names() { return {"r", "euclidean", "digit"}; }

WeightSpec weight_for_system(const std::string& name, const padic::HybridSystemConfig& config) {
  std::vector<Signature> sigs;
  std::vector<int> bases;
  for (int slot = 0; slot < config.dimension(); ++slot) {
    sigs.push_back(config.signature(slot));
    bases.push_back(config.base(slot));
  }
  if (name == "r") return r_weight(sigs);
  if (name == "euclidean") return euclidean_weight(sigs);
  if (name == "digit") return digit_length_weight(sigs, bases);
  throw ArgumentError("unknown weight '" + name + "' (expected r, euclidean or digit)");
}

}  // namespace equilens::measures
