#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "zdl/diagnostics.hpp"
#include "zdl/dirichlet.hpp"
#include "zdl/error.hpp"
#include "zdl/parallel.hpp"

using namespace zdl;

namespace {

bool near_exceptional(const ComplexPoint& s) {
  const double period = 2.0 * std::numbers::pi / std::log(2.0);
  const double k = std::round(s.im / period);
  return std::abs(Complex(s.re - 1.0, s.im - k * period)) < 1e-3;
}

ComplexPoint random_point(std::mt19937_64& rng, double re_lo, double re_hi, double im_max) {
  std::uniform_real_distribution<double> re(re_lo, re_hi), im(-im_max, im_max);
  for (;;) {
    const ComplexPoint s{re(rng), im(rng)};
    if (!near_exceptional(s)) return s;
  }
}

}  // namespace

TEST_CASE("bridge identity on 200 random points") {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 200; ++i) {
    const ComplexPoint s = random_point(rng, 0.01, 3.0, 30.0);
    const EvalResult e = eta(s);
    const EvalResult z = zeta(s);
    const Complex factor = eta_factor(s.value());
    const double lhs = std::abs(e.value - factor * z.value);
    const double bound = e.error_estimate + std::abs(factor) * z.error_estimate + 1e-15;
    REQUIRE_MESSAGE(lhs <= bound, "s = " << s.re << " + " << s.im << "i");
  }
}

TEST_CASE("eta and zeta against Euler-Maclaurin at random points") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const ComplexPoint s = random_point(rng, 0.05, 3.0, 30.0);
    REQUIRE(std::abs(eta(s).value - oracle::eta_em(s.value())) <= 1e-10);
    REQUIRE(std::abs(zeta(s).value - oracle::zeta_em(s.value())) <= 1e-9 * std::max(1.0, std::abs(zeta(s).value)));
  }
}

TEST_CASE("reflection: values at conj s are conjugates") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const ComplexPoint s = random_point(rng, 0.05, 3.0, 45.0);
    const EvalResult e = eta(s), ec = eta(s.conj());
    REQUIRE(std::abs(ec.value - std::conj(e.value)) <= e.error_estimate + ec.error_estimate);
    const EvalResult z = zeta(s), zc = zeta(s.conj());
    REQUIRE(std::abs(zc.value - std::conj(z.value)) <= z.error_estimate + zc.error_estimate);
  }
}

TEST_CASE("eta error estimate is honest: doubling the order moves less than the estimate") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const ComplexPoint s = random_point(rng, 0.01, 3.0, 50.0);
    const EvalResult e = eta(s);
    const EvalResult e2 = eta(s, 2 * default_eta_order(s));
    REQUIRE(std::abs(e.value - e2.value) <= e.error_estimate);
  }
}

TEST_CASE("beta-series identity for random s with Re s > 1/2") {
  std::mt19937_64 rng(17);
  const std::uint64_t K = 100000;
  for (int i = 0; i < 40; ++i) {
    const ComplexPoint s = random_point(rng, 0.55, 3.0, 20.0);
    const ComplexPoint two_s{2.0 * s.re, 2.0 * s.im};
    const Complex rhs = eta_factor(s.value()) * oracle::zeta_em(two_s.value());
    const double sigma = s.re;
    const double bound = std::pow(double(K), 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0) + 1e-8;
    REQUIRE(std::abs(beta_series_partial(s, K) - rhs) <= bound);
  }
}

TEST_CASE("chunked_sum is bit-identical for any worker count") {
  auto term = [](std::size_t i) { return Complex(1.0 / double(i + 1), std::sin(double(i))); };
  const Complex reference = chunked_sum(0, 1000003, term, 4096);
  for (const char* threads : {"1", "2", "3", "8"}) {
    setenv("ZDL_THREADS", threads, 1);
    CHECK(thread_count() == unsigned(std::stoi(threads)));
    const Complex again = chunked_sum(0, 1000003, term, 4096);
    CHECK(again.real() == reference.real());
    CHECK(again.imag() == reference.imag());
  }
  unsetenv("ZDL_THREADS");
  CHECK(chunked_sum(5, 5, term) == Complex(0.0));
  CHECK(pairwise_reduce({}) == Complex(0.0));
}

TEST_CASE("parallel_for visits every index once") {
  setenv("ZDL_THREADS", "4", 1);
  std::vector<int> hits(10007, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) REQUIRE(h == 1);
  unsetenv("ZDL_THREADS");
}

TEST_CASE("grid and scans do not depend on the worker count") {
  auto table = std::make_shared<const ArithmeticTable>(build_table(20000));
  const auto spec = DoubleArraySpec::lee({0.5, 14.134725141734693}, table);
  const std::vector<std::uint64_t> Ms{16, 64};
  setenv("ZDL_THREADS", "1", 1);
  const PartialSumGrid g1(spec, 200, 200);
  const UniformityScan s1 = needed_uniformity_scan(spec, Ms, 32, 20000);
  setenv("ZDL_THREADS", "3", 1);
  const PartialSumGrid g3(spec, 200, 200);
  const UniformityScan s3 = needed_uniformity_scan(spec, Ms, 32, 20000);
  unsetenv("ZDL_THREADS");
  for (std::uint32_t M = 0; M <= 200; ++M)
    for (std::uint32_t N = 0; N <= 200; ++N) REQUIRE(g1.at(M, N) == g3.at(M, N));
  CHECK(s1.sup_trace == s3.sup_trace);
}

TEST_CASE("scan monotonicity: a larger window never lowers a supremum") {
  auto table = std::make_shared<const ArithmeticTable>(build_table(50000));
  const std::vector<std::uint64_t> Ms{8, 40, 200};
  const std::vector<std::uint64_t> Ns{10, 100, 1000};
  for (const auto& spec : {DoubleArraySpec::lee({0.5, 14.134725}, table), DoubleArraySpec::lee({0.9, 3.0}, table),
                           DoubleArraySpec::cesaro()}) {
    std::vector<double> previous(Ms.size(), 0.0), previous_v(Ns.size(), 0.0);
    for (std::uint64_t window : {500ull, 2000ull, 8000ull}) {
      const UniformityScan needed = needed_uniformity_scan(spec, Ms, 16, window);
      const UniformityScan verified = lee_verified_scan(spec, Ns, 16, window / 4);
      for (std::size_t i = 0; i < Ms.size(); ++i) {
        REQUIRE(needed.sup_trace[i] >= previous[i]);
        previous[i] = needed.sup_trace[i];
      }
      for (std::size_t i = 0; i < Ns.size(); ++i) {
        REQUIRE(verified.sup_trace[i] >= previous_v[i]);
        previous_v[i] = verified.sup_trace[i];
      }
    }
  }
}

TEST_CASE("scan entries are nonnegative and the verdict matches the trace") {
  auto table = std::make_shared<const ArithmeticTable>(build_table(30000));
  const std::vector<std::uint64_t> Ms{4, 16, 64, 256};
  for (double threshold : {1e-1, 1e-2, 1e-4}) {
    const UniformityScan scan = needed_uniformity_scan(DoubleArraySpec::lee({1.2, 5.0}, table), Ms, 16, 30000, threshold);
    for (double v : scan.sup_trace) CHECK(v >= 0.0);
    if (scan.verdict.kind == ScanVerdictKind::decays_below) {
      for (std::size_t i = scan.verdict.index; i < scan.sup_trace.size(); ++i) CHECK(scan.sup_trace[i] <= threshold);
      if (scan.verdict.index > 0) CHECK(scan.sup_trace[scan.verdict.index - 1] > threshold);
    } else {
      CHECK(scan.sup_trace.back() > threshold);
    }
  }
}

TEST_CASE("classifier soundness on calibration arrays") {
  // Whenever both iterated limits exist and differ by more than 10 tol, some
  // hypothesis of every theorem whose conclusion involves them is failed.
  auto table = std::make_shared<const ArithmeticTable>(build_table(512));
  const std::vector<DoubleArraySpec> specs{DoubleArraySpec::synthetic(SyntheticRule::interchange_ratio),
                                           DoubleArraySpec::cesaro(), DoubleArraySpec::lee({2.0, 0.0}, table),
                                           DoubleArraySpec::lee({0.5, 14.134725141734693}, table),
                                           DoubleArraySpec::synthetic(SyntheticRule::zero)};
  for (const auto& spec : specs) {
    for (double tol : {1e-2, 1e-4, 1e-6}) {
      const PartialSumGrid g(spec, 512, 512);
      const Classification c = classify(g, tol);
      const LimitProbe& a = c.probes[3];
      const LimitProbe& b = c.probes[4];
      const bool differ = a.status == ProbeStatus::exists && b.status == ProbeStatus::exists &&
                          std::abs(a.value - b.value) > 10.0 * tol;
      for (const auto& t : c.theorems) {
        bool all_hold = true, any_inconclusive = false;
        for (const auto& h : t.hypotheses) {
          all_hold &= h.status == HypothesisStatus::holds;
          any_inconclusive |= h.status == HypothesisStatus::inconclusive;
        }
        CHECK(t.conclusion_asserted == all_hold);
        if (any_inconclusive) CHECK_FALSE(t.conclusion_asserted);
        if (differ) CHECK_FALSE(t.conclusion_asserted);
      }
      if (differ) {
        bool some_failed = false;
        for (const auto& h : c.theorems[3].hypotheses) some_failed |= h.status == HypothesisStatus::fails;
        CHECK_MESSAGE(some_failed, spec.name() << " tol " << tol);
      }
    }
  }
}
