#include "zdl/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "zdl/error.hpp"
#include "zdl/parallel.hpp"

namespace zdl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(const ComplexPoint& s, const char* who) {
  if (!s.finite()) throw Error(ErrorCode::domain, std::string(who) + ": non-finite argument");
}

void require_right_half_plane(const ComplexPoint& s, const char* who) {
  require_finite(s, who);
  if (!(s.re > 0.0))
    throw Error(ErrorCode::domain, std::string(who) + ": requires Re s > 0, got " + std::to_string(s.re));
}

// Tail sums t_k = sum_{i>k} term_i of the Chebyshev weights, normalized by
// d_n, i.e. c_k = 1 - d_k/d_n without the cancellation of the subtraction.
struct ChebyshevWeights {
  std::vector<double> c;
  double log_dn = 0.0;
};

ChebyshevWeights chebyshev_weights(std::uint32_t n) {
  std::vector<double> term(n + 1);
  term[0] = 1.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    term[i + 1] = term[i] * 4.0 * static_cast<double>(n + i) * static_cast<double>(n - i) /
                  (static_cast<double>(2 * i + 1) * static_cast<double>(2 * i + 2));
  }
  double dn = 0.0;
  for (double t : term) dn += t;

  ChebyshevWeights w;
  w.c.resize(n);
  double tail = 0.0;
  for (std::uint32_t k = n; k-- > 0;) {
    tail += term[k + 1];
    w.c[k] = tail / dn;
  }
  w.log_dn = std::log(dn);
  return w;
}

}  // namespace

Complex inverse_power(double n, Complex s) { return std::exp(-s * std::log(n)); }

Complex eta_factor(Complex s) { return 1.0 - std::exp((1.0 - s) * std::numbers::ln2); }

double log_abs_gamma(Complex z) {
  double shift = 0.0;
  while (z.real() < 10.0) {
    shift += std::log(std::abs(z));
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  // B_{2k} / (2k (2k-1) z^{2k-1}) for k = 1..7
  const Complex series =
      inv * (1.0 / 12.0 -
             inv2 * (1.0 / 360.0 -
                     inv2 * (1.0 / 1260.0 -
                             inv2 * (1.0 / 1680.0 -
                                     inv2 * (1.0 / 1188.0 - inv2 * (691.0 / 360360.0 - inv2 * (1.0 / 156.0)))))));
  const Complex lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
  return lg.real() - shift;
}

std::uint32_t default_eta_order(const ComplexPoint& s) {
  const double t = std::abs(s.im);
  if (t <= 50.0) return kDefaultEtaOrder;
  // Each unit of |t| costs a factor e^{pi/2} (0.68 decades) in the bound;
  // each extra term gains log10(3+sqrt 8) = 0.77 decades.
  const double extra = std::ceil(0.9 * (t - 50.0));
  return static_cast<std::uint32_t>(std::min<double>(kMaxEtaOrder, kDefaultEtaOrder + extra));
}

EvalResult eta(const ComplexPoint& s) { return eta(s, default_eta_order(s)); }

EvalResult eta(const ComplexPoint& s, std::uint32_t order) {
  require_right_half_plane(s, "eta");
  const std::uint32_t n = std::clamp<std::uint32_t>(order, 1, kMaxEtaOrder);
  const ChebyshevWeights w = chebyshev_weights(n);
  const Complex z = s.value();

  Complex sum{};
  double magnitude = 0.0;
  for (std::uint32_t k = 0; k < n; ++k) {
    const Complex t = w.c[k] * inverse_power(static_cast<double>(k + 1), z);
    sum += (k % 2 == 0) ? t : -t;
    magnitude += std::abs(t);
  }

  const double log_bound = std::lgamma(s.re) - log_abs_gamma(z) - w.log_dn;
  const double truncation = std::exp(log_bound);
  const double rounding = 4.0 * kEps * (n + 1) * magnitude;
  return {sum, truncation + rounding, n};
}

ComplexPoint exceptional_point(std::int64_t k) {
  return {1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / std::numbers::ln2};
}

EvalResult zeta(const ComplexPoint& s) {
  require_right_half_plane(s, "zeta");
  if (std::abs(s.value() - 1.0) < kExceptionalGuard)
    throw Error(ErrorCode::pole, "zeta: pole at s = 1");
  const auto k = static_cast<std::int64_t>(std::llround(s.im * std::numbers::ln2 / (2.0 * std::numbers::pi)));
  if (k != 0 && std::abs(s.value() - exceptional_point(k).value()) < kExceptionalGuard)
    throw Error(ErrorCode::exceptional_point,
                "zeta: s is within 1e-8 of the exceptional point 1 + 2*pi*i*" + std::to_string(k) +
                    "/log 2; use zeta_at_exceptional");
  const EvalResult e = eta(s);
  const Complex factor = eta_factor(s.value());
  return {e.value / factor, e.error_estimate / std::abs(factor), e.terms_used};
}

EvalResult zeta_at_exceptional(std::int64_t k) {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "zeta_at_exceptional: k must be nonzero");
  const ComplexPoint s0 = exceptional_point(k);
  constexpr double h = 1e-5;

  double eta_err = 0.0;
  std::uint32_t terms = 0;
  auto central = [&](double step) {
    const EvalResult up = eta({s0.re + step, s0.im});
    const EvalResult down = eta({s0.re - step, s0.im});
    eta_err = std::max({eta_err, up.error_estimate, down.error_estimate});
    terms += up.terms_used + down.terms_used;
    return (up.value - down.value) / (2.0 * step);
  };
  const Complex coarse = central(h);
  const Complex fine = central(h / 2.0);
  const Complex derivative = (4.0 * fine - coarse) / 3.0;

  const double error = (std::abs(derivative - fine) + 2.0 * eta_err / h) / std::numbers::ln2;
  return {derivative / std::numbers::ln2, error, terms};
}

Complex euler_product_partial(const ComplexPoint& s, std::uint32_t p_max) {
  require_finite(s, "euler_product_partial");
  if (!(s.re > 1.0))
    throw Error(ErrorCode::domain, "euler_product_partial: the product requires Re s > 1");
  std::vector<bool> composite(std::size_t{p_max} + 1, false);
  Complex product = 1.0;
  const Complex z = s.value();
  for (std::uint64_t p = 2; p <= p_max; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q <= p_max; q += p) composite[q] = true;
    product /= 1.0 - inverse_power(static_cast<double>(p), z);
  }
  return product;
}

Complex lambda_series_partial(const ComplexPoint& s, std::uint32_t M, const ArithmeticTable& table) {
  require_finite(s, "lambda_series_partial");
  if (M > table.n_max())
    throw Error(ErrorCode::out_of_range, "lambda_series_partial: M = " + std::to_string(M) +
                                             " exceeds table bound " + std::to_string(table.n_max()));
  const Complex z = s.value();
  const auto& lambda = table.liouville_data();
  return chunked_sum(1, std::size_t{M} + 1, [&](std::size_t m) {
    return static_cast<double>(lambda[m]) * inverse_power(static_cast<double>(m), z);
  });
}

Complex beta_series_partial(const ComplexPoint& s, std::uint64_t K) {
  require_right_half_plane(s, "beta_series_partial");
  const Complex z = s.value();
  Complex sum{};
  std::uint64_t k = 1;  // next square k^2
  std::uint64_t j = 1;  // next twice-square 2 j^2
  while (k <= K || j <= K) {
    const bool take_square = j > K || (k <= K && k * k < 2 * j * j);
    if (take_square) {
      sum += inverse_power(static_cast<double>(k * k), z);
      ++k;
    } else {
      sum -= 2.0 * inverse_power(static_cast<double>(2 * j * j), z);
      ++j;
    }
  }
  return sum;
}

}  // namespace zdl
