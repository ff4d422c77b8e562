#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library; powers use std::pow on complex arguments, sums run directly.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline Complex power(double n, Complex e) { return std::pow(Complex(n, 0.0), e); }

/// zeta(s) by Euler-Maclaurin with N terms and Bernoulli corrections up to
/// B_14. Good to ~1e-13 for Re s > 0, |Im s| <= 60 with the default N.
inline Complex zeta_em(Complex s, int N = 200) {
  static constexpr std::array<double, 7> B = {1.0 / 6,  -1.0 / 30, 1.0 / 42, -1.0 / 30,
                                              5.0 / 66, -691.0 / 2730, 7.0 / 6};
  Complex sum = 0.0;
  for (int n = N - 1; n >= 1; --n) sum += power(n, -s);
  const double dN = N;
  sum += power(dN, 1.0 - s) / (s - 1.0) + 0.5 * power(dN, -s);
  // Term k: B_2k / (2k)! * s (s+1) ... (s+2k-2) N^{-s-2k+1}
  Complex rising = s;
  double factorial = 2.0;
  for (int k = 1; k <= 7; ++k) {
    sum += B[k - 1] / factorial * rising * power(dN, -s - (2.0 * k - 1.0));
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum;
}

inline Complex eta_em(Complex s) { return (1.0 - power(2.0, 1.0 - s)) * zeta_em(s); }

/// sum_{n<=N} n^{-sigma} summed from the small end up, plus the
/// Euler-Maclaurin tail N^{1-sigma}/(sigma-1) - N^{-sigma}/2 + sigma N^{-sigma-1}/12.
inline double zeta_direct(double sigma, std::uint64_t N = 1000000) {
  double sum = 0.0;
  for (std::uint64_t n = N; n >= 1; --n) sum += std::pow(static_cast<double>(n), -sigma);
  const double dN = static_cast<double>(N);
  return sum + std::pow(dN, 1.0 - sigma) / (sigma - 1.0) - 0.5 * std::pow(dN, -sigma) +
         sigma * std::pow(dN, -sigma - 1.0) / 12.0;
}

/// Omega(n) by trial division.
inline int big_omega(std::uint64_t n) {
  int count = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      n /= p;
      ++count;
    }
  return count + (n > 1 ? 1 : 0);
}

inline int liouville(std::uint64_t n) { return big_omega(n) % 2 == 0 ? 1 : -1; }

/// beta(n) = sum_{m | n} lambda(m) (-1)^{n/m + 1} by scanning every m <= n.
inline int beta_brute(std::uint64_t n) {
  int sum = 0;
  for (std::uint64_t m = 1; m <= n; ++m)
    if (n % m == 0) sum += liouville(m) * (((n / m) % 2 == 1) ? 1 : -1);
  return sum;
}

/// Riemann-Siegel theta by its asymptotic series (t >= 5).
inline double theta(double t) {
  const double pi = std::numbers::pi;
  return t / 2.0 * std::log(t / (2.0 * pi)) - t / 2.0 - pi / 8.0 + 1.0 / (48.0 * t) +
         7.0 / (5760.0 * t * t * t);
}

/// Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + it), real on the line.
inline double hardy_z(double t) {
  const Complex z = std::exp(Complex(0.0, theta(t))) * zeta_em(Complex(0.5, t));
  return z.real();
}

/// Bisection on a sign change of Z in [lo, hi].
inline double zero_by_bisection(double lo, double hi) {
  double zlo = hardy_z(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double zm = hardy_z(mid);
    if ((zm < 0) == (zlo < 0)) {
      lo = mid;
      zlo = zm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Rectangle sum S(M,N) of an array given as a term callback, by brute force.
template <class F>
Complex rectangle(F&& term, std::uint64_t M, std::uint64_t N) {
  Complex sum = 0.0;
  for (std::uint64_t m = 1; m <= M; ++m)
    for (std::uint64_t n = 1; n <= N; ++n) sum += term(m, n);
  return sum;
}

}  // namespace oracle
