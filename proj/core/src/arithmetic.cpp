#include "zdl/arithmetic.hpp"

#include <cmath>
#include <string>

#include "zdl/error.hpp"

namespace zdl {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  // The double estimate can be off by one in either direction near 2^53 and
  // above; settle it with exact integer arithmetic.
  while (r > 0 && (r > UINT32_MAX || r * r > n)) --r;
  while (r + 1 <= UINT32_MAX && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(std::uint64_t n) {
  const std::uint64_t r = isqrt(n);
  return r * r == n;
}

int beta_closed_form(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::out_of_range, "beta_closed_form: n must be >= 1");
  if (is_perfect_square(n)) return 1;
  if (n % 2 == 0 && is_perfect_square(n / 2)) return -2;
  return 0;
}

ArithmeticTable::ArithmeticTable(std::uint32_t n_max) : n_max_(n_max) {
  if (n_max == 0) throw Error(ErrorCode::invalid_bound, "arithmetic table bound must be >= 1");

  spf_.assign(std::size_t{n_max} + 1, 0);
  omega_.assign(std::size_t{n_max} + 1, 0);
  liouville_.assign(std::size_t{n_max} + 1, 0);
  beta_.assign(std::size_t{n_max} + 1, 0);

  spf_[1] = 1;
  omega_[1] = 0;
  liouville_[1] = 1;
  for (std::uint32_t i = 2; i <= n_max; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t q = std::uint64_t{p} * i;
      if (p > spf_[i] || q > n_max) break;
      spf_[q] = p;
    }
    omega_[i] = static_cast<std::uint8_t>(omega_[i / spf_[i]] + 1);
    liouville_[i] = static_cast<std::int8_t>(-liouville_[i / spf_[i]]);
  }
  for (std::uint32_t n = 1; n <= n_max; ++n) beta_[n] = static_cast<std::int8_t>(beta_closed_form(n));
}

void ArithmeticTable::check(std::uint32_t n) const {
  if (n == 0 || n > n_max_)
    throw Error(ErrorCode::out_of_range,
                "index " + std::to_string(n) + " outside table range 1.." + std::to_string(n_max_));
}

std::uint32_t ArithmeticTable::smallest_prime_factor(std::uint32_t n) const {
  check(n);
  return spf_[n];
}

int ArithmeticTable::omega(std::uint32_t m) const {
  check(m);
  return omega_[m];
}

int ArithmeticTable::liouville(std::uint32_t m) const {
  check(m);
  return liouville_[m];
}

int ArithmeticTable::beta(std::uint32_t n) const {
  check(n);
  return beta_[n];
}

void ArithmeticTable::for_each_divisor(std::uint32_t n,
                                       const std::function<void(std::uint32_t)>& fn) const {
  check(n);
  // Factor n, then walk the exponent vectors.
  std::uint32_t primes[16];
  int exps[16];
  int k = 0;
  for (std::uint32_t r = n; r > 1;) {
    const std::uint32_t p = spf_[r];
    int e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    primes[k] = p;
    exps[k] = e;
    ++k;
  }
  std::function<void(int, std::uint32_t)> walk = [&](int i, std::uint32_t d) {
    if (i == k) {
      fn(d);
      return;
    }
    std::uint32_t pe = 1;
    for (int e = 0; e <= exps[i]; ++e) {
      walk(i + 1, d * pe);
      pe *= primes[i];
    }
  };
  walk(0, 1);
}

int ArithmeticTable::beta_by_definition(std::uint32_t n) const {
  int sum = 0;
  for_each_divisor(n, [&](std::uint32_t m) {
    const std::uint32_t l = n / m;
    const int sign_l = (l % 2 == 1) ? 1 : -1;  // (-1)^(l+1)
    sum += liouville_[m] * sign_l;
  });
  return sum;
}

ArithmeticTable build_table(std::uint32_t n_max) { return ArithmeticTable(n_max); }

}  // namespace zdl
