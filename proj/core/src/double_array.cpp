#include "zdl/double_array.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zdl/dirichlet.hpp"
#include "zdl/error.hpp"
#include "zdl/parallel.hpp"

namespace zdl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double ratio_g(std::uint64_t m, std::uint64_t n) {
  if (m == 0 || n == 0) return 0.0;
  return static_cast<double>(m) / static_cast<double>(m + n);
}

int alternating_sign(std::uint64_t l) { return (l % 2 == 1) ? 1 : -1; }  // (-1)^(l+1)

void require_index(std::uint64_t i, const char* who) {
  if (i == 0) throw Error(ErrorCode::invalid_argument, std::string(who) + ": indices start at 1");
}

void require_in_table(const LeeArray& lee, std::uint64_t n, const char* who) {
  if (n > lee.table->n_max())
    throw Error(ErrorCode::out_of_range, std::string(who) + ": index " + std::to_string(n) +
                                             " beyond sieve bound " + std::to_string(lee.table->n_max()));
}

// (1 - b_n)^k
double cesaro_power(std::uint64_t n, double k) { return std::exp(k * std::log1p(-cesaro_b(n))); }

}  // namespace

// ---------------------------------------------------------------------------

DoubleArraySpec DoubleArraySpec::lee(const ComplexPoint& s, std::shared_ptr<const ArithmeticTable> table) {
  if (!table) throw Error(ErrorCode::invalid_argument, "Lee array needs an arithmetic table");
  const EvalResult e = eta(s);  // validates Re s > 0
  LeeArray lee{s, std::move(table), e.value, e.error_estimate};
  return {std::move(lee), "Lee array lambda(m)(-1)^(1+n/m) n^-s at s = " + std::to_string(s.re) + "+" +
                              std::to_string(s.im) + "i"};
}

DoubleArraySpec DoubleArraySpec::cesaro() {
  return {CesaroArray{}, "Cesaro array (-1)^(n+1) b_n (1-b_n)^(m-1), b_n = 2^-(floor(n/2)+1)"};
}

DoubleArraySpec DoubleArraySpec::synthetic(SyntheticRule rule) {
  switch (rule) {
    case SyntheticRule::zero: return {SyntheticArray{rule}, "all-zero array"};
    case SyntheticRule::interchange_ratio:
      return {SyntheticArray{rule}, "array with rectangle sums S(M,N) = M/(M+N)"};
  }
  throw Error(ErrorCode::invalid_argument, "unknown synthetic rule");
}

std::string DoubleArraySpec::name() const {
  return std::visit(overloaded{
                        [](const LeeArray&) -> std::string { return "lee"; },
                        [](const CesaroArray&) -> std::string { return "cesaro"; },
                        [](const SyntheticArray& a) -> std::string {
                          return a.rule == SyntheticRule::zero ? "zero" : "ratio";
                        },
                    },
                    kind_);
}

double cesaro_b(std::uint64_t n) { return std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(n / 2, 2000)) - 1); }

Complex term(const DoubleArraySpec& spec, std::uint64_t m, std::uint64_t n) {
  require_index(m, "term");
  require_index(n, "term");
  return std::visit(overloaded{
                        [&](const LeeArray& lee) -> Complex {
                          require_in_table(lee, n, "term");
                          if (n % m != 0) return 0.0;
                          const double sign = lee.table->liouville(static_cast<std::uint32_t>(m)) *
                                              alternating_sign(n / m);
                          return sign * inverse_power(static_cast<double>(n), lee.s.value());
                        },
                        [&](const CesaroArray&) -> Complex {
                          const double sign = (n % 2 == 1) ? 1.0 : -1.0;
                          return sign * cesaro_b(n) * cesaro_power(n, static_cast<double>(m - 1));
                        },
                        [&](const SyntheticArray& a) -> Complex {
                          if (a.rule == SyntheticRule::zero) return 0.0;
                          return ratio_g(m, n) - ratio_g(m - 1, n) - ratio_g(m, n - 1) + ratio_g(m - 1, n - 1);
                        },
                    },
                    spec.kind());
}

// ---------------------------------------------------------------------------

Complex partial_row_sum(const DoubleArraySpec& spec, std::uint64_t m, std::uint64_t N) {
  require_index(m, "partial_row_sum");
  if (N == 0) return 0.0;
  return std::visit(overloaded{
                        [&](const LeeArray& lee) -> Complex {
                          require_in_table(lee, N, "partial_row_sum");
                          if (m > N) return 0.0;
                          const Complex s = lee.s.value();
                          Complex sum{};
                          for (std::uint64_t l = 1; l <= N / m; ++l)
                            sum += static_cast<double>(alternating_sign(l)) *
                                   inverse_power(static_cast<double>(m * l), s);
                          return static_cast<double>(lee.table->liouville(static_cast<std::uint32_t>(m))) * sum;
                        },
                        [&](const CesaroArray&) -> Complex {
                          // Columns 2j and 2j+1 share b and cancel in pairs.
                          double sum = std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(m, 2000)));
                          if (N % 2 == 0) sum -= cesaro_b(N) * cesaro_power(N, static_cast<double>(m - 1));
                          return sum;
                        },
                        [&](const SyntheticArray& a) -> Complex {
                          if (a.rule == SyntheticRule::zero) return 0.0;
                          return ratio_g(m, N) - ratio_g(m - 1, N);
                        },
                    },
                    spec.kind());
}

Complex partial_column_sum(const DoubleArraySpec& spec, std::uint64_t n, std::uint64_t M) {
  require_index(n, "partial_column_sum");
  if (M == 0) return 0.0;
  return std::visit(overloaded{
                        [&](const LeeArray& lee) -> Complex {
                          require_in_table(lee, n, "partial_column_sum");
                          int coefficient = 0;
                          const auto nn = static_cast<std::uint32_t>(n);
                          lee.table->for_each_divisor(nn, [&](std::uint32_t d) {
                            if (d <= M) coefficient += lee.table->liouville(d) * alternating_sign(nn / d);
                          });
                          if (coefficient == 0) return 0.0;
                          return static_cast<double>(coefficient) *
                                 inverse_power(static_cast<double>(n), lee.s.value());
                        },
                        [&](const CesaroArray&) -> Complex {
                          const double sign = (n % 2 == 1) ? 1.0 : -1.0;
                          return -sign * std::expm1(static_cast<double>(M) * std::log1p(-cesaro_b(n)));
                        },
                        [&](const SyntheticArray& a) -> Complex {
                          if (a.rule == SyntheticRule::zero) return 0.0;
                          return ratio_g(M, n) - ratio_g(M, n - 1);
                        },
                    },
                    spec.kind());
}

Complex rectangle_sum(const DoubleArraySpec& spec, std::uint64_t M, std::uint64_t N) {
  if (M == 0 || N == 0) return 0.0;
  return std::visit(overloaded{
                        [&](const LeeArray&) -> Complex {
                          Complex sum{};
                          for (std::uint64_t m = 1; m <= std::min(M, N); ++m) sum += partial_row_sum(spec, m, N);
                          return sum;
                        },
                        [&](const CesaroArray&) -> Complex {
                          double sum = -std::expm1(static_cast<double>(M) * std::log1p(-0.5));
                          if (N % 2 == 0) sum += std::expm1(static_cast<double>(M) * std::log1p(-cesaro_b(N)));
                          return sum;
                        },
                        [&](const SyntheticArray& a) -> Complex {
                          if (a.rule == SyntheticRule::zero) return 0.0;
                          return ratio_g(M, N);
                        },
                    },
                    spec.kind());
}

Complex row_sum(const DoubleArraySpec& spec, std::uint64_t m, RowSumMode mode) {
  require_index(m, "row_sum");
  if (const auto* truncated = std::get_if<Truncated>(&mode)) return partial_row_sum(spec, m, truncated->N);
  return std::visit(overloaded{
                        [&](const LeeArray& lee) -> Complex {
                          require_in_table(lee, m, "row_sum");
                          return static_cast<double>(lee.table->liouville(static_cast<std::uint32_t>(m))) *
                                 inverse_power(static_cast<double>(m), lee.s.value()) * lee.eta_at_s;
                        },
                        [&](const CesaroArray&) -> Complex {
                          return std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(m, 2000)));
                        },
                        [&](const SyntheticArray&) -> Complex { return 0.0; },
                    },
                    spec.kind());
}

Complex column_sum(const DoubleArraySpec& spec, std::uint64_t n) {
  require_index(n, "column_sum");
  return std::visit(overloaded{
                        [&](const LeeArray&) -> Complex { return partial_column_sum(spec, n, n); },
                        [&](const CesaroArray&) -> Complex { return (n % 2 == 1) ? 1.0 : -1.0; },
                        [&](const SyntheticArray& a) -> Complex {
                          if (a.rule == SyntheticRule::zero) return 0.0;
                          return n == 1 ? 1.0 : 0.0;
                        },
                    },
                    spec.kind());
}

// ---------------------------------------------------------------------------

std::string to_string(SummationMode mode) {
  switch (mode) {
    case SummationMode::row_iterated: return "RowIterated";
    case SummationMode::column_iterated: return "ColumnIterated";
    case SummationMode::pringsheim_diagonal: return "PringsheimDiagonal";
  }
  return "?";
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::converged: return "Converged";
    case VerdictKind::oscillating: return "Oscillating";
    case VerdictKind::inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict classify_trace(const std::vector<Complex>& trace, double tolerance) {
  Verdict v;
  if (trace.empty()) return v;
  v.value = trace.back();
  const std::size_t start = (trace.size() * 3) / 4;
  const auto first = trace.begin() + static_cast<std::ptrdiff_t>(start);

  v.band = {first->real(), first->real(), first->imag(), first->imag()};
  for (auto it = first; it != trace.end(); ++it) {
    v.band.re_lo = std::min(v.band.re_lo, it->real());
    v.band.re_hi = std::max(v.band.re_hi, it->real());
    v.band.im_lo = std::min(v.band.im_lo, it->imag());
    v.band.im_hi = std::max(v.band.im_hi, it->imag());
  }
  v.residual = bounding_diameter(first, trace.end());

  auto reversals = [&](auto part) {
    int count = 0;
    int last_sign = 0;
    for (std::size_t i = std::max<std::size_t>(start, 1); i < trace.size(); ++i) {
      const double d = part(trace[i]) - part(trace[i - 1]);
      const int sign = (d > 0) - (d < 0);
      if (sign == 0) continue;
      if (last_sign != 0 && sign != last_sign) ++count;
      last_sign = sign;
    }
    return count;
  };
  v.sign_reversals = std::max(reversals([](Complex z) { return z.real(); }),
                              reversals([](Complex z) { return z.imag(); }));

  if (trace.size() < 8) return v;
  if (v.residual <= tolerance)
    v.kind = VerdictKind::converged;
  else if (v.residual > 100.0 * tolerance && v.sign_reversals >= 3)
    v.kind = VerdictKind::oscillating;
  return v;
}

std::uint64_t Aspect::rows_for(std::uint64_t K) const {
  if (num == 0 || den == 0) throw Error(ErrorCode::invalid_argument, "aspect must be a positive rational");
  return (num * K + den - 1) / den;
}

namespace {

std::vector<Complex> cumulative(std::vector<Complex> values) {
  for (std::size_t i = 1; i < values.size(); ++i) values[i] += values[i - 1];
  return values;
}

std::vector<Complex> row_sums(const DoubleArraySpec& spec, std::uint64_t count) {
  std::vector<Complex> out(count);
  const std::size_t chunks = (count + kDefaultChunk - 1) / kDefaultChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t lo = c * kDefaultChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(count, lo + kDefaultChunk);
    for (std::uint64_t i = lo; i < hi; ++i) out[i] = row_sum(spec, i + 1);
  });
  return out;
}

std::vector<Complex> column_sums(const DoubleArraySpec& spec, std::uint64_t count) {
  std::vector<Complex> out(count);
  if (const auto* lee = spec.as_lee()) {
    require_in_table(*lee, count, "iterated_sum");
    // Divisor-sum coefficients by a multiples sieve: O(N log N) integer work.
    std::vector<int> coefficient(count + 1, 0);
    const auto& lambda = lee->table->liouville_data();
    for (std::uint64_t m = 1; m <= count; ++m)
      for (std::uint64_t n = m, l = 1; n <= count; n += m, ++l) coefficient[n] += lambda[m] * alternating_sign(l);
    const Complex s = lee->s.value();
    for (std::uint64_t n = 1; n <= count; ++n)
      out[n - 1] = coefficient[n] == 0 ? Complex{}
                                       : static_cast<double>(coefficient[n]) * inverse_power(static_cast<double>(n), s);
    return out;
  }
  for (std::uint64_t n = 1; n <= count; ++n) out[n - 1] = column_sum(spec, n);
  return out;
}

}  // namespace

SummationReport iterated_sum(const DoubleArraySpec& spec, IterationOrder order, std::uint64_t outer_limit,
                             double tolerance) {
  if (outer_limit == 0) throw Error(ErrorCode::invalid_argument, "iterated_sum: outer_limit must be >= 1");
  SummationReport report;
  report.tolerance = tolerance;
  if (order == IterationOrder::rows_then_m) {
    report.mode = SummationMode::row_iterated;
    report.trace = cumulative(row_sums(spec, outer_limit));
  } else {
    report.mode = SummationMode::column_iterated;
    report.trace = cumulative(column_sums(spec, outer_limit));
  }
  report.verdict = classify_trace(report.trace, tolerance);
  return report;
}

SummationReport pringsheim_trace(const DoubleArraySpec& spec, std::uint64_t K_max, Aspect aspect,
                                 double tolerance) {
  if (K_max == 0) throw Error(ErrorCode::invalid_argument, "pringsheim_trace: K_max must be >= 1");
  SummationReport report;
  report.mode = SummationMode::pringsheim_diagonal;
  report.tolerance = tolerance;
  report.aspect = aspect;
  report.trace.reserve(K_max);

  const bool sparse_rows = spec.as_lee() != nullptr;  // rows m > N are empty
  Complex S{};
  std::uint64_t rows = 0;
  for (std::uint64_t K = 1; K <= K_max; ++K) {
    // Grow by one column over the current rows, then by the new rows over
    // all K columns.
    S += partial_column_sum(spec, K, rows);
    const std::uint64_t target = std::max(rows, aspect.rows_for(K));
    // Lee rows beyond K have no terms at n <= K; they join the rectangle
    // now and pick up their terms through later columns.
    const std::uint64_t stop = sparse_rows ? std::min(target, K) : target;
    for (std::uint64_t m = rows + 1; m <= stop; ++m) S += partial_row_sum(spec, m, K);
    rows = target;
    report.trace.push_back(S);
  }
  report.verdict = classify_trace(report.trace, tolerance);
  return report;
}

ModeComparison compare_modes(const DoubleArraySpec& spec, std::uint64_t outer_limit, std::uint64_t K_max,
                             Aspect aspect, double tolerance) {
  ModeComparison cmp;
  cmp.rows = iterated_sum(spec, IterationOrder::rows_then_m, outer_limit, tolerance);
  cmp.columns = iterated_sum(spec, IterationOrder::columns_then_n, outer_limit, tolerance);
  cmp.pringsheim = pringsheim_trace(spec, K_max, aspect, tolerance);
  cmp.diagonal_verdict = cmp.pringsheim.verdict;

  const Verdict& r = cmp.rows.verdict;
  const Verdict& c = cmp.columns.verdict;
  const Verdict& p = cmp.diagonal_verdict;
  if (p.kind != VerdictKind::converged) return cmp;

  const double gap = 10.0 * tolerance;
  std::string reason;
  if (r.kind == VerdictKind::oscillating)
    reason = "the row-iterated sum oscillates";
  else if (c.kind == VerdictKind::oscillating)
    reason = "the column-iterated sum oscillates";
  else if (r.kind == VerdictKind::converged && std::abs(r.value - p.value) > gap)
    reason = "the row-iterated sum differs from the diagonal value";
  else if (c.kind == VerdictKind::converged && std::abs(c.value - p.value) > gap)
    reason = "the column-iterated sum differs from the diagonal value";

  if (!reason.empty()) {
    cmp.double_limit_excluded = true;
    cmp.pringsheim.verdict.kind = VerdictKind::inconclusive;
    cmp.note = "diagonal rectangles settle on the window, but " + reason +
               "; with convergent rows and columns a double limit would force both repeated sums to equal it";
  }
  return cmp;
}

}  // namespace zdl
