#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "equilens/errors.hpp"
#include "equilens/lattice.hpp"
#include "equilens/measures.hpp"
#include "equilens/sequences.hpp"
#include "test_util.hpp"

using namespace equilens;
using namespace equilens::measures;
using padic::HybridSystemConfig;

namespace {

const double kPi = std::numbers::pi;

IndexVector iv(std::initializer_list<std::int64_t> v) {
  IndexVector k(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto x : v) k(i++) = x;
  return k;
}

PointSet nodes(std::vector<std::int64_t> a, std::int64_t N) {
  return lattice::glp_nodes(lattice::LatticeRuleSpec(std::move(a), N));
}

PointSet equispaced(std::int64_t N) {
  PointSet ps(static_cast<std::size_t>(N), 1);
  for (std::int64_t n = 0; n < N; ++n) ps.set(static_cast<std::size_t>(n), 0, UnitCoordinate::from_rational(Rational(n, N)));
  return ps;
}

PointSet seq(const std::string& text, std::size_t N) { return sequences::generate(sequences::parse_sequence(text), N); }

HybridWeylSystem trig_system(const PointSet& ps) {
  return HybridWeylSystem(HybridSystemConfig::trigonometric(static_cast<int>(ps.dimension())), ps, ps.size());
}

}  // namespace

TEST(Weights, BuiltinValues) {
  std::vector<Signature> z2(2, Signature::integer), z3(3, Signature::integer);
  EXPECT_DOUBLE_EQ(euclidean_weight(z2).value(iv({3, 4})), 0.2);
  EXPECT_DOUBLE_EQ(r_weight(z3).value(iv({2, 0, -3})), 1.0 / 6.0);
  auto digit = digit_length_weight({Signature::nonneg, Signature::nonneg}, {2, 3});
  EXPECT_DOUBLE_EQ(digit.value(iv({5, 1})), 1.0 / 8.0 / 3.0);
  EXPECT_EQ(builtin_weight_names(), (std::vector<std::string>{"r", "euclidean", "digit"}));
}

TEST(Weights, RTailPowerSum) {
  auto w = r_weight({Signature::integer});
  // 2 (zeta(2) - H_10^(2)), tests/oracles/frozen_values.py
  EXPECT_NEAR(w.tail_power_sum(10.0, 2.0), 0.19033267136337149, 1e-12);
  EXPECT_NEAR(2.0 * zeta_tail(2.0, 10), 0.19033267136337149, 1e-13);
}

TEST(Weights, ZinterhofNormalizer) {
  const double want[] = {3.2898681336964529, 17.402968604504288, 77.946308581879224};
  for (int s = 1; s <= 3; ++s) {
    auto w = r_weight(std::vector<Signature>(static_cast<std::size_t>(s), Signature::integer));
    EXPECT_NEAR(w.total_power_sum(2.0), want[s - 1], 1e-8 * want[s - 1]);
    EXPECT_NEAR(w.total_power_sum(2.0), std::pow(1.0 + kPi * kPi / 3.0, s) - 1.0, 1e-10);
  }
}

TEST(Weights, TailSupBoundsValues) {
  auto cfg = HybridSystemConfig::make(1, 1, 1, {2}, {3});
  for (const auto& name : builtin_weight_names()) {
    auto w = weight_for_system(name, cfg);
    for (double K : {1.0, 2.0, 5.0, 17.0}) {
      EXPECT_GE(w.tail_sup(K), w.tail_sup(2.0 * K));
      // indices just outside the shell
      const auto k1 = static_cast<std::int64_t>(K) + 1;
      for (auto k : {iv({k1, 0, 0}), iv({0, k1, 0}), iv({0, 0, -k1}), iv({1, 0, k1})}) {
        EXPECT_LE(w.value(k), w.tail_sup(K) + 1e-15) << name;
      }
    }
    EXPECT_LT(w.tail_sup(1e6), 1e-5);
  }
}

TEST(Weights, PowerSumMatchesDirectSummation) {
  auto w = digit_length_weight({Signature::nonneg, Signature::integer}, {3, 0});
  const std::int64_t K = 200;
  double inner = 0.0;
  for (std::int64_t a = 0; a <= K; ++a) {
    for (std::int64_t b = -K; b <= K; ++b) {
      if (a == 0 && b == 0) continue;
      inner += std::pow(w.value(iv({a, b})), 2.0);
    }
  }
  EXPECT_NEAR(inner + w.tail_power_sum(static_cast<double>(K), 2.0), w.total_power_sum(2.0), 1e-9);
  EXPECT_GE(w.tail_power_sum(static_cast<double>(K), 2.0), 0.0);
}

TEST(Measures, WeylSumExamples) {
  auto quarters = equispaced(4);
  EXPECT_TRUE(fixtures::near(weyl_sum([](const UnitPoint&) { return std::complex<double>(1.0); }, quarters, 4), 1.0));
  EXPECT_TRUE(fixtures::near(weyl_sum([](const UnitPoint& x) { return padic::trig(1, x[0]); }, quarters, 4), 0.0));
  EXPECT_TRUE(fixtures::near(weyl_sum([](const UnitPoint& x) { return padic::trig(4, x[0]); }, quarters, 4), 1.0));
  EXPECT_THROW(weyl_sum([](const UnitPoint&) { return std::complex<double>(1.0); }, quarters, 0), ArgumentError);
  EXPECT_THROW(weyl_sum([](const UnitPoint&) { return std::complex<double>(1.0); }, quarters, 5), ArgumentError);
}

TEST(Measures, SpectralOrigin) {
  auto origin = fixtures::doubles({{0.0, 0.0}});
  auto sys = trig_system(origin);
  EXPECT_DOUBLE_EQ(spectral_test(sys, r_weight(sys.signatures())).value, 1.0);
  auto hyb = HybridWeylSystem(HybridSystemConfig::make(1, 1, 0, {2}, {3}), origin, 1);
  EXPECT_DOUBLE_EQ(spectral_test(hyb, weight_for_system("digit", hyb.config())).value, 1.0);
}

TEST(Measures, SpectralEquispaced) {
  for (std::int64_t N : {2, 5, 16}) {
    auto ps = equispaced(N);
    auto sys = trig_system(ps);
    auto res = spectral_test(sys, r_weight(sys.signatures()));
    EXPECT_NEAR(res.value, 1.0 / static_cast<double>(N), 1e-12);
    EXPECT_EQ(std::llabs(res.argmax_index(0)), N);
  }
}

TEST(Measures, SpectralLatticeEuclidean) {
  auto ps = nodes({1, 2}, 5);
  auto sys = trig_system(ps);
  auto res = spectral_test(sys, euclidean_weight(sys.signatures()));
  EXPECT_NEAR(res.value, 1.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(res.argmax_index.cast<double>().norm(), std::sqrt(5.0), 1e-12);
}

TEST(Measures, SpectralTerminationIsExact) {
  for (const char* text : {"kron:sqrt2-1,sqrt3-1", "halton:2,3"}) {
    auto ps = seq(text, 64);
    for (const char* sys_name : {"trig", "digital"}) {
      auto cfg = std::string(sys_name) == "trig" ? HybridSystemConfig::trigonometric(2)
                                                  : HybridSystemConfig::make(1, 1, 0, {2}, {3});
      HybridWeylSystem sys(cfg, ps, 64);
      for (const auto& wname : builtin_weight_names()) {
        if (wname == "digit" && cfg.s3 > 0) continue;
        auto w = weight_for_system(wname, cfg);
        auto first = spectral_test(sys, w);
        EXPECT_GE(first.value, 0.0);
        EXPECT_LE(first.value, 1.0);
        EXPECT_LE(first.tail_bound, first.value * first.normalizer * (1 + 1e-15));
        SpectralOptions opt;
        opt.min_shell = 2.0 * first.shell_bound;
        auto second = spectral_test(sys, w, opt);
        EXPECT_NEAR(second.value, first.value, 1e-12) << text << ' ' << sys_name << ' ' << wname;
        // the reported argmax attains the value
        EXPECT_NEAR(w.value(first.argmax_index) * std::abs(sys.weyl_sum(first.argmax_index)) / first.normalizer,
                    first.value, 1e-12);
      }
    }
  }
}

TEST(Measures, SpectralAgreesWithBruteForce) {
  auto ps = seq("halton:2,3", 20);
  HybridWeylSystem sys(HybridSystemConfig::make(1, 0, 1, {2}, {}), ps, 20);
  auto w = weight_for_system("r", sys.config());
  auto res = spectral_test(sys, w);
  const std::int64_t K = 4 * static_cast<std::int64_t>(res.shell_bound);
  double best = 0.0;
  for (std::int64_t a = 0; a <= K; ++a) {
    for (std::int64_t b = -K; b <= K; ++b) {
      if (a == 0 && b == 0) continue;
      auto k = iv({a, b});
      best = std::max(best, w.value(k) * std::abs(sys.weyl_sum(k)));
    }
  }
  EXPECT_NEAR(res.value, best / res.normalizer, 1e-12);
}

TEST(Measures, SpectralBudgetBrackets) {
  auto ps = seq("kron:sqrt2-1", 1024);
  auto sys = trig_system(ps);
  SpectralOptions opt;
  opt.max_shell = 4;
  try {
    spectral_test(sys, r_weight(sys.signatures()), opt);
    FAIL() << "expected a resource limit";
  } catch (const ResourceLimitError& e) {
    ASSERT_TRUE(e.has_bracket());
    EXPECT_LE(e.lower(), e.upper());
    auto full = spectral_test(sys, r_weight(sys.signatures()));
    EXPECT_LE(e.lower(), full.value + 1e-15);
    EXPECT_GE(e.upper(), full.value - 1e-15);
  }
}

TEST(Measures, EtkBound) {
  auto ps = nodes({1, 2}, 5);
  auto sys = trig_system(ps);
  auto w = euclidean_weight(sys.signatures());
  const double sigma = spectral_test(sys, w).value;
  // no dual vector in the unit box: the tail branch (|k|_inf >= 2) dominates
  EXPECT_DOUBLE_EQ(etk_bound(sys, w, 1.0), 0.5);
  EXPECT_GE(etk_bound(sys, w, 1.0), sigma);
  EXPECT_NEAR(etk_bound(sys, w, 64.0), sigma, 1e-12);

  auto r = r_weight(sys.signatures());
  auto kron = seq("kron:sqrt2-1,sqrt3-1", 100);
  auto ks = trig_system(kron);
  const double sk = spectral_test(ks, r).value;
  for (double K : {1.0, 3.0, 10.0, 1000.0}) EXPECT_GE(etk_bound(ks, r, K), sk - 1e-15);
}

TEST(Measures, DiaphonySinglePoint) {
  auto origin = fixtures::doubles({{0.0}});
  auto sys = trig_system(origin);
  auto w = r_weight(sys.signatures());
  auto kernel = diaphony(sys, w, 2.0, {DiaphonyOptions::Method::kernel});
  EXPECT_EQ(kernel.method, "kernel");
  EXPECT_NEAR(kernel.value, 1.0, 1e-12);
  DiaphonyOptions shells{DiaphonyOptions::Method::shells, 1e-3};
  auto sh = diaphony(sys, w, 2.0, shells);
  EXPECT_EQ(sh.method, "shells");
  EXPECT_LE(std::abs(sh.value - 1.0), sh.tail_error_bound + 1e-12);
}

TEST(Measures, DiaphonyTwoPoints) {
  auto ps = equispaced(2);
  auto sys = trig_system(ps);
  auto w = r_weight(sys.signatures());
  EXPECT_NEAR(diaphony(sys, w, 2.0, {DiaphonyOptions::Method::kernel}).value, 0.5, 1e-12);
  for (double tol : {1e-2, 1e-4}) {
    auto sh = diaphony(sys, w, 2.0, {DiaphonyOptions::Method::shells, tol});
    EXPECT_LE(std::abs(sh.value - 0.5), sh.tail_error_bound + 1e-12);
    EXPECT_GT(sh.truncation_K, 0.0);
  }
}

TEST(Measures, DiaphonyKernelMatchesShells) {
  struct Case {
    const char* seq;
    HybridSystemConfig cfg;
    const char* weight;
    std::size_t N;
  };
  std::vector<Case> cases = {
      {"kron:sqrt2-1,sqrt3-1", HybridSystemConfig::trigonometric(2), "r", 32},
      {"halton:2,3", HybridSystemConfig::make(1, 1, 0, {2}, {3}), "digit", 16},
      {"halton:2,3", HybridSystemConfig::make(1, 0, 1, {2}, {}), "digit", 16},
      {"glp:1,5@8", HybridSystemConfig::trigonometric(2), "r", 8},
  };
  for (const auto& c : cases) {
    auto ps = seq(c.seq, c.N);
    HybridWeylSystem sys(c.cfg, ps, c.N);
    auto w = weight_for_system(c.weight, c.cfg);
    ASSERT_TRUE(kernel_available(sys, w, 2.0)) << c.seq;
    auto kernel = diaphony(sys, w, 2.0, {DiaphonyOptions::Method::kernel});
    // the stopping rule is relative to F^2, so small F needs a looser tolerance
    const double tol = c.N == 8 ? 2e-2 : 0.5;
    auto sh = diaphony(sys, w, 2.0, {DiaphonyOptions::Method::shells, tol});
    EXPECT_LE(std::abs(kernel.value - sh.value), sh.tail_error_bound + 1e-9) << c.seq << ' ' << c.cfg.describe();
    EXPECT_GE(kernel.value, 0.0);
    EXPECT_LE(kernel.value, 1.0);
  }
}

TEST(Measures, DiaphonyHonoursRelTol) {
  auto ps = seq("kron:sqrt2-1", 50);
  auto sys = trig_system(ps);
  auto w = r_weight(sys.signatures());
  auto sh = diaphony(sys, w, 3.0, {DiaphonyOptions::Method::shells, 1e-3});
  const double T = w.total_power_sum(3.0);
  const double tail = w.tail_power_sum(sh.truncation_K, 3.0);
  EXPECT_LT(tail / T, 1e-3 * std::pow(sh.value, 3.0));
  EXPECT_FALSE(kernel_available(sys, w, 3.0));
}

TEST(Measures, DiaphonyNeedsPowerSums) {
  auto ps = nodes({1, 2}, 5);
  auto sys = trig_system(ps);
  EXPECT_THROW(diaphony(sys, euclidean_weight(sys.signatures()), 2.0), CapabilityError);
}

TEST(Measures, EvaluationBudgetBrackets) {
  auto ps = nodes({9, 7, 9}, 10);
  auto sys = trig_system(ps);
  auto w = r_weight(sys.signatures());
  const double exact = diaphony(sys, w, 2.0).value;
  DiaphonyOptions opt{DiaphonyOptions::Method::shells, 1e-3};
  opt.max_evaluations = 5000;
  try {
    diaphony(sys, w, 2.0, opt);
    FAIL() << "expected a resource limit";
  } catch (const ResourceLimitError& e) {
    ASSERT_TRUE(e.has_bracket());
    EXPECT_LE(e.lower(), exact + 1e-12);
    EXPECT_GE(e.upper(), exact - 1e-12);
  }
  SpectralOptions sopt;
  sopt.max_evaluations = 10;
  const double sigma = spectral_test(sys, w).value;
  try {
    spectral_test(sys, w, sopt);
    FAIL() << "expected a resource limit";
  } catch (const ResourceLimitError& e) {
    ASSERT_TRUE(e.has_bracket());
    EXPECT_LE(e.lower(), sigma + 1e-15);
    EXPECT_GE(e.upper(), sigma - 1e-15);
  }
}
