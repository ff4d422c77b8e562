#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace zdl {

/// Integer square root: the largest r with r*r <= n. Exact for all 64-bit n.
std::uint64_t isqrt(std::uint64_t n);

bool is_perfect_square(std::uint64_t n);

/// Closed form of Lee's beta: 1 on squares, -2 on twice-squares, 0 otherwise.
/// Throws out_of_range for n == 0.
int beta_closed_form(std::uint64_t n);

/// Sieved Omega, Liouville lambda and beta on 1..n_max.
///
/// Built by a linear sieve over smallest prime factors: every composite is
/// crossed out exactly once, so construction is O(n_max). Omega follows from
/// Omega(n) = Omega(n / spf(n)) + 1. The table is immutable once built and
/// may be shared freely between threads.
class ArithmeticTable {
 public:
  /// Throws invalid_bound when n_max == 0.
  explicit ArithmeticTable(std::uint32_t n_max);

  std::uint32_t n_max() const noexcept { return n_max_; }

  std::uint32_t smallest_prime_factor(std::uint32_t n) const;
  int omega(std::uint32_t m) const;
  int liouville(std::uint32_t m) const;
  /// Stored closed-form value.
  int beta(std::uint32_t n) const;

  /// Sum over divisors m of n of (-1)^Omega(m) (-1)^(n/m + 1), enumerated
  /// from the factorization. Independent of the closed form.
  int beta_by_definition(std::uint32_t n) const;

  /// Calls fn(d) for every divisor d of n (unordered).
  void for_each_divisor(std::uint32_t n, const std::function<void(std::uint32_t)>& fn) const;

  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

  /// Raw liouville array, index 0 unused.
  const std::vector<std::int8_t>& liouville_data() const noexcept { return liouville_; }

 private:
  void check(std::uint32_t n) const;

  std::uint32_t n_max_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint8_t> omega_;
  std::vector<std::int8_t> liouville_;
  std::vector<std::int8_t> beta_;
  std::vector<std::uint32_t> primes_;
};

ArithmeticTable build_table(std::uint32_t n_max);

}  // namespace zdl
