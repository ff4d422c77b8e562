#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "zdl/dirichlet.hpp"
#include "zdl/error.hpp"
#include "zdl/zero_finder.hpp"

using namespace zdl;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected zdl::Error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("scan finds one bracket near 14.13 in [10, 15]") {
  const auto brackets = scan_critical_line(10.0, 15.0, 0.01);
  REQUIRE(brackets.size() == 1);
  CHECK(brackets[0].lo < 14.1347);
  CHECK(brackets[0].hi > 14.1347);
  CHECK(brackets[0].abs_min < kScanCutoff);
}

TEST_CASE("scan is empty on [0.1, 5]") { CHECK(scan_critical_line(0.1, 5.0, 0.01).empty()); }

TEST_CASE("scan on the conjugate range mirrors") {
  const auto up = scan_critical_line(10.0, 25.0, 0.01);
  const auto down = scan_critical_line(-25.0, -10.0, 0.01);
  REQUIRE(up.size() == down.size());
  for (std::size_t i = 0; i < up.size(); ++i) {
    const auto& mirrored = down[down.size() - 1 - i];
    CHECK(mirrored.t_min == doctest::Approx(-up[i].t_min).epsilon(1e-9));
    CHECK(mirrored.abs_min == doctest::Approx(up[i].abs_min).epsilon(1e-9));
  }
}

TEST_CASE("scan argument errors") {
  CHECK(code_of([] { scan_critical_line(10.0, 15.0, 0.6); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { scan_critical_line(15.0, 10.0, 0.01); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { scan_critical_line(10.0, 10.0, 0.01); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { scan_critical_line(10.0, 15.0, 0.0); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { scan_critical_line(NAN, 15.0, 0.1); }) == ErrorCode::invalid_argument);
  CHECK_NOTHROW(scan_critical_line(10.0, 15.0, 0.5));
}

TEST_CASE("refined zeros match the Hardy Z bisection oracle") {
  const auto brackets = scan_critical_line(10.0, 25.0, 0.01);
  REQUIRE(brackets.size() == 2);
  const double t1 = oracle::zero_by_bisection(14.0, 14.3);
  const double t2 = oracle::zero_by_bisection(20.9, 21.1);
  const ZeroCandidate z1 = refine(brackets[0]);
  const ZeroCandidate z2 = refine(brackets[1]);
  CHECK(z1.kind == ZeroKind::critical_line);
  CHECK(z1.s.re == 0.5);
  CHECK(std::abs(z1.s.im - t1) <= 1e-5);
  CHECK(std::abs(z1.s.im - 14.134725) <= 1e-5);
  CHECK(std::abs(z2.s.im - t2) <= 1e-4);
  CHECK(std::abs(z2.s.im - 21.022040) <= 1e-4);
  for (const auto& z : {z1, z2}) {
    CHECK(z.residual <= kRefineTolerance);
    CHECK(z.residual_doubled_order <= kRefineTolerance);
  }
}

TEST_CASE("mirrored bracket refines to the conjugate zero") {
  const Bracket b = scan_critical_line(14.0, 14.3, 0.01).at(0);
  const Bracket mirrored{-b.hi, -b.lo, -b.t_min, b.abs_min};
  const ZeroCandidate z = refine(b);
  const ZeroCandidate w = refine(mirrored);
  CHECK(std::abs(z.s.im + w.s.im) <= 1e-8);
}

TEST_CASE("refine rejects a bracket without a zero") {
  // |eta(1/2 + it)| has no zero between 3 and 4.
  CHECK(code_of([] { refine(Bracket{3.0, 4.0, 3.5, 0.7}); }) == ErrorCode::not_a_zero);
  CHECK(code_of([] { refine(Bracket{4.0, 3.0, 3.5, 0.7}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("exceptional zeros") {
  const ZeroCandidate z = exceptional_zero(1);
  CHECK(z.kind == ZeroKind::exceptional);
  CHECK(z.k == 1);
  CHECK(z.s == exceptional_point(1));
  CHECK(z.residual <= 1e-10);
  const ZeroCandidate a = exceptional_zero(2), b = exceptional_zero(-2);
  CHECK(a.s == b.s.conj());
  CHECK(a.residual == doctest::Approx(b.residual).epsilon(1e-6).scale(1e-15));
  CHECK(a.residual <= 1e-10);
  CHECK(code_of([] { exceptional_zero(0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("off-line sweep stays above 1e-3") {
  for (double sigma : {0.6, 0.75}) {
    const OfflineSweep w = offline_sweep(sigma, 50.0, 0.01);
    CHECK(w.sigma == sigma);
    CHECK(w.min_abs > 1e-3);
    CHECK(std::abs(w.t_at_min) <= 50.0);
  }
  CHECK(code_of([] { offline_sweep(0.0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("scanned region holds no refined candidate off the line") {
  for (const Bracket& b : scan_critical_line(-50.0, 50.0, 0.01)) {
    const ZeroCandidate z = refine(b);
    CHECK(z.s.re == 0.5);
  }
}

TEST_CASE("zero CSV") {
  std::ostringstream out;
  write_zero_csv(out, {refine(scan_critical_line(14.0, 14.3, 0.01).at(0)), exceptional_zero(-1)});
  const std::string csv = out.str();
  CHECK(csv.rfind("kind,k_or_t,re,im,residual\n", 0) == 0);
  CHECK(csv.find("\ncritical_line,14.1347251") != std::string::npos);
  CHECK(csv.find("\nexceptional,-1,1,-9.0647202") != std::string::npos);
}
