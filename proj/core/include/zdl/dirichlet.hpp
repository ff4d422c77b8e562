#pragma once

#include <cstdint>

#include "zdl/arithmetic.hpp"
#include "zdl/types.hpp"

namespace zdl {

struct EvalResult {
  Complex value;
  double error_estimate = 0.0;  ///< >= 0
  std::uint32_t terms_used = 1;  ///< >= 1
};

inline constexpr std::uint32_t kDefaultEtaOrder = 60;
inline constexpr std::uint32_t kMaxEtaOrder = 400;
inline constexpr double kExceptionalGuard = 1e-8;

/// n^{-s} as exp(-s log n) with a real logarithm.
Complex inverse_power(double n, Complex s);

/// Acceleration order used by eta(): 60 up to |Im s| = 50, then growing
/// linearly with |Im s| to keep the truncation bound below 1e-10.
std::uint32_t default_eta_order(const ComplexPoint& s);

/// Alternating zeta function for Re s > 0 by Chebyshev-weighted
/// acceleration of the alternating series (Borwein's second algorithm).
///
/// With d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), the weights
/// c_k = 1 - d_k/d_n lie in [0, 1] and
///   eta(s) ~= sum_{k<n} (-1)^k c_k (k+1)^{-s}.
/// The truncation error is at most Gamma(sigma) / (|Gamma(s)| d_n) with
/// d_n = T_n(3) >= (3+sqrt 8)^n / 2; error_estimate adds a rounding term.
/// Throws domain for Re s <= 0 or non-finite input.
EvalResult eta(const ComplexPoint& s);
EvalResult eta(const ComplexPoint& s, std::uint32_t order);

/// zeta(s) = eta(s) / (1 - 2^{1-s}) for Re s > 0.
/// Throws pole at s = 1 and exceptional_point within 1e-8 of
/// 1 + 2k pi i / log 2, k != 0 (use zeta_at_exceptional there).
EvalResult zeta(const ComplexPoint& s);

/// The exceptional point 1 + 2k pi i / log 2.
ComplexPoint exceptional_point(std::int64_t k);

/// zeta at an exceptional point: eta'(s) / log 2, with eta' from a central
/// difference (h = 1e-5) and one Richardson level. Throws invalid_argument
/// for k == 0.
EvalResult zeta_at_exceptional(std::int64_t k);

/// Euler product over primes p <= p_max. Throws domain for Re s <= 1.
Complex euler_product_partial(const ComplexPoint& s, std::uint32_t p_max);

/// sum_{m<=M} lambda(m) m^{-s}. Throws out_of_range when M > table bound.
Complex lambda_series_partial(const ComplexPoint& s, std::uint32_t M, const ArithmeticTable& table);

/// beta series over its support: sum_{k<=K} (k^2)^{-s} - 2 sum_{k<=K} (2k^2)^{-s},
/// accumulated in increasing n. Throws domain for Re s <= 0.
Complex beta_series_partial(const ComplexPoint& s, std::uint64_t K);

/// The factor 1 - 2^{1-s}.
Complex eta_factor(Complex s);

/// log|Gamma(z)| for Re z > 0 (Stirling series after upward recurrence).
double log_abs_gamma(Complex z);

}  // namespace zdl
