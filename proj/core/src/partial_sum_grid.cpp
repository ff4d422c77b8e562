#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "zdl/dirichlet.hpp"
#include "zdl/double_array.hpp"
#include "zdl/error.hpp"
#include "zdl/parallel.hpp"

namespace zdl {

PartialSumGrid::PartialSumGrid(DoubleArraySpec spec, std::uint32_t M_max, std::uint32_t N_max)
    : spec_(std::move(spec)), M_max_(M_max), N_max_(N_max) {
  if (M_max == 0 || N_max == 0) throw Error(ErrorCode::invalid_bound, "grid dimensions must be >= 1");
  const auto* lee = spec_.as_lee();
  if (lee && N_max > lee->table->n_max())
    throw Error(ErrorCode::out_of_range, "grid N_max " + std::to_string(N_max) + " beyond sieve bound " +
                                             std::to_string(lee->table->n_max()));

  const std::size_t width = std::size_t{N_max} + 1;
  cells_.assign((std::size_t{M_max} + 1) * width, Complex{});

  // Row prefix sums, one task per row.
  parallel_for(M_max, [&](std::size_t task) {
    const std::uint64_t m = task + 1;
    Complex* row = cells_.data() + m * width;
    if (lee) {
      for (std::uint64_t n = m; n <= N_max; n += m) row[n] = term(spec_, m, n);
    } else if (spec_.is_cesaro()) {
      for (std::uint64_t n = 1; n <= N_max; ++n) {
        const double sign = (n % 2 == 1) ? 1.0 : -1.0;
        const double b = cesaro_b(n);
        row[n] = sign * b * std::exp(static_cast<double>(m - 1) * std::log1p(-b));
      }
    } else {
      for (std::uint64_t n = 1; n <= N_max; ++n) row[n] = term(spec_, m, n);
    }
    for (std::uint64_t n = 1; n <= N_max; ++n) row[n] += row[n - 1];
  });

  // Accumulate down the columns in row order.
  for (std::size_t m = 2; m <= M_max; ++m) {
    Complex* row = cells_.data() + m * width;
    const Complex* above = row - width;
    for (std::size_t n = 1; n <= N_max; ++n) row[n] += above[n];
  }
}

namespace {

void put_double(std::ostream& out, double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  out.write(buf, ptr - buf);
}

}  // namespace

void PartialSumGrid::write_csv(std::ostream& out, std::uint32_t stride) const {
  if (stride == 0) stride = 1;
  out << "M,N,re,im\n";
  for (std::uint32_t M = 1; M <= M_max_; M += stride) {
    for (std::uint32_t N = 1; N <= N_max_; N += stride) {
      const Complex v = at(M, N);
      out << M << ',' << N << ',';
      put_double(out, v.real());
      out << ',';
      put_double(out, v.imag());
      out << '\n';
    }
  }
}

}  // namespace zdl
