#include "zdl/zero_finder.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "zdl/dirichlet.hpp"
#include "zdl/error.hpp"
#include "zdl/parallel.hpp"

namespace zdl {

namespace {

double abs_eta_on_line(double t) { return std::abs(eta(ComplexPoint{0.5, t}).value); }

std::vector<double> grid_values(double sigma, double t_lo, std::size_t count, double step) {
  std::vector<double> values(count);
  parallel_for(count, [&](std::size_t i) {
    values[i] = std::abs(eta(ComplexPoint{sigma, t_lo + static_cast<double>(i) * step}).value);
  });
  return values;
}

std::size_t grid_size(double t_lo, double t_hi, double step) {
  return static_cast<std::size_t>(std::floor((t_hi - t_lo) / step + 1e-9)) + 1;
}

void put_double(std::ostream& out, double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  out.write(buf, ptr - buf);
}

}  // namespace

std::vector<Bracket> scan_critical_line(double t_lo, double t_hi, double step) {
  if (!std::isfinite(t_lo) || !std::isfinite(t_hi) || !(t_lo < t_hi))
    throw Error(ErrorCode::invalid_argument, "scan_critical_line: need t_lo < t_hi");
  if (!(step > 0.0) || step > kMaxScanStep)
    throw Error(ErrorCode::invalid_argument,
                "scan_critical_line: step " + std::to_string(step) + " outside (0, 0.5]");

  const std::size_t count = grid_size(t_lo, t_hi, step);
  const std::vector<double> v = grid_values(0.5, t_lo, count, step);
  std::vector<Bracket> brackets;
  for (std::size_t i = 1; i + 1 < count; ++i) {
    if (v[i] < kScanCutoff && v[i] < v[i - 1] && v[i] <= v[i + 1]) {
      const double t = t_lo + static_cast<double>(i) * step;
      brackets.push_back({t - step, t + step, t, v[i]});
    }
  }
  return brackets;
}

ZeroCandidate refine(const Bracket& bracket) {
  if (!(bracket.lo < bracket.hi))
    throw Error(ErrorCode::invalid_argument, "refine: empty bracket");

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = bracket.lo, b = bracket.hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = std::norm(eta(ComplexPoint{0.5, x1}).value);
  double f2 = std::norm(eta(ComplexPoint{0.5, x2}).value);
  const double width_floor = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a) + std::abs(b));
  for (int iter = 0; iter < 200 && b - a > width_floor; ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = std::norm(eta(ComplexPoint{0.5, x1}).value);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = std::norm(eta(ComplexPoint{0.5, x2}).value);
    }
  }
  const double t = f1 <= f2 ? x1 : x2;

  ZeroCandidate z;
  z.s = ComplexPoint{0.5, t};
  z.kind = ZeroKind::critical_line;
  z.residual = abs_eta_on_line(t);
  z.residual_doubled_order = std::abs(eta(z.s, 2 * default_eta_order(z.s)).value);
  const double worst = std::max(z.residual, z.residual_doubled_order);
  if (worst > kStallTolerance)
    throw Error(ErrorCode::not_a_zero, "refine: |eta| stays at " + std::to_string(worst) + " near t = " +
                                           std::to_string(t));
  if (worst > kRefineTolerance)
    throw Error(ErrorCode::refinement_stalled,
                "refine: |eta| = " + std::to_string(worst) + " near t = " + std::to_string(t));
  return z;
}

ZeroCandidate exceptional_zero(std::int64_t k) {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "exceptional_zero: k must be nonzero");
  ZeroCandidate z;
  z.s = exceptional_point(k);
  z.kind = ZeroKind::exceptional;
  z.k = k;
  z.residual = std::abs(eta(z.s).value);
  z.residual_doubled_order = std::abs(eta(z.s, 2 * default_eta_order(z.s)).value);
  return z;
}

OfflineSweep offline_sweep(double sigma, double t_max, double step) {
  if (!(sigma > 0.0) || !(t_max > 0.0) || !(step > 0.0))
    throw Error(ErrorCode::invalid_argument, "offline_sweep: sigma, t_max and step must be positive");
  const std::size_t count = grid_size(-t_max, t_max, step);
  const std::vector<double> v = grid_values(sigma, -t_max, count, step);
  OfflineSweep sweep;
  sweep.sigma = sigma;
  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i)
    if (v[i] < v[best]) best = i;
  sweep.t_at_min = -t_max + static_cast<double>(best) * step;
  sweep.min_abs = v[best];
  return sweep;
}

void write_zero_csv(std::ostream& out, const std::vector<ZeroCandidate>& zeros) {
  out << "kind,k_or_t,re,im,residual\n";
  for (const auto& z : zeros) {
    if (z.kind == ZeroKind::exceptional) {
      out << "exceptional," << z.k << ',';
    } else {
      out << "critical_line,";
      put_double(out, z.s.im);
      out << ',';
    }
    put_double(out, z.s.re);
    out << ',';
    put_double(out, z.s.im);
    out << ',';
    put_double(out, z.residual);
    out << '\n';
  }
}

}  // namespace zdl
