#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "zdl/arithmetic.hpp"
#include "zdl/types.hpp"

namespace zdl {

// ---------------------------------------------------------------------------
// Array definitions
// ---------------------------------------------------------------------------

/// a_{m,n} = lambda(m) (-1)^{1+n/m} n^{-s} when m | n, else 0.
/// Row m sums to lambda(m) m^{-s} eta(s); column n is the finite sum
/// beta(n) n^{-s}. eta(s) is evaluated once at construction.
struct LeeArray {
  ComplexPoint s;
  std::shared_ptr<const ArithmeticTable> table;
  Complex eta_at_s;
  double eta_error = 0.0;
};

/// a_{m,n} = (-1)^{n+1} b_n (1 - b_n)^{m-1}, b_n = 2^{-floor(n/2)-1}.
/// Rows sum to 2^{-m}, columns to (-1)^{n+1}.
struct CesaroArray {};

enum class SyntheticRule {
  zero,               ///< a_{m,n} = 0
  interchange_ratio,  ///< rectangle sums S(M,N) = M / (M + N)
};

/// Test arrays. interchange_ratio is the array of mixed differences of
/// g(m,n) = m/(m+n), extended by zero to m = 0 or n = 0, so that its
/// rectangle sums reproduce g exactly: lim_m lim_n = 0, lim_n lim_m = 1.
struct SyntheticArray {
  SyntheticRule rule = SyntheticRule::zero;
};

class DoubleArraySpec {
 public:
  using Kind = std::variant<LeeArray, CesaroArray, SyntheticArray>;

  /// Throws domain for Re s <= 0 or non-finite s.
  static DoubleArraySpec lee(const ComplexPoint& s, std::shared_ptr<const ArithmeticTable> table);
  static DoubleArraySpec cesaro();
  static DoubleArraySpec synthetic(SyntheticRule rule);

  const Kind& kind() const noexcept { return kind_; }
  const std::string& description() const noexcept { return description_; }
  /// Short identifier: "lee", "cesaro", "zero" or "ratio".
  std::string name() const;

  const LeeArray* as_lee() const noexcept { return std::get_if<LeeArray>(&kind_); }
  bool is_cesaro() const noexcept { return std::holds_alternative<CesaroArray>(kind_); }

 private:
  DoubleArraySpec(Kind kind, std::string description)
      : kind_(std::move(kind)), description_(std::move(description)) {}

  Kind kind_;
  std::string description_;
};

double cesaro_b(std::uint64_t n);

/// a_{m,n} for m, n >= 1. Throws invalid_argument for a zero index and
/// out_of_range for a Lee array with n beyond its sieve bound.
Complex term(const DoubleArraySpec& spec, std::uint64_t m, std::uint64_t n);

// ---------------------------------------------------------------------------
// Row and column sums
// ---------------------------------------------------------------------------

struct ClosedForm {};
struct Truncated {
  std::uint64_t N;
};
using RowSumMode = std::variant<ClosedForm, Truncated>;

/// sum_n a_{m,n}: the exact limit (ClosedForm) or the partial sum to N.
Complex row_sum(const DoubleArraySpec& spec, std::uint64_t m, RowSumMode mode = ClosedForm{});

/// sum_m a_{m,n}. Finite for the Lee array (divisors of n only).
Complex column_sum(const DoubleArraySpec& spec, std::uint64_t n);

/// sum_{n<=N} a_{m,n}
Complex partial_row_sum(const DoubleArraySpec& spec, std::uint64_t m, std::uint64_t N);
/// sum_{m<=M} a_{m,n}
Complex partial_column_sum(const DoubleArraySpec& spec, std::uint64_t n, std::uint64_t M);
/// S(M,N) = sum_{m<=M} sum_{n<=N} a_{m,n}
Complex rectangle_sum(const DoubleArraySpec& spec, std::uint64_t M, std::uint64_t N);

// ---------------------------------------------------------------------------
// Summation modes
// ---------------------------------------------------------------------------

/// RowIterated sums every row first, then adds the row sums over m.
/// ColumnIterated sums every column first, then adds over n.
/// PringsheimDiagonal follows rectangle sums S(ceil(aspect K), K).
enum class SummationMode { row_iterated, column_iterated, pringsheim_diagonal };
std::string to_string(SummationMode mode);

enum class IterationOrder { rows_then_m, columns_then_n };

enum class VerdictKind { converged, oscillating, inconclusive };
std::string to_string(VerdictKind kind);

struct Band {
  double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;
};

struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  Complex value;          ///< last trace value
  double residual = 0.0;  ///< diameter of the last quarter
  Band band;              ///< bounding box of the last quarter
  int sign_reversals = 0;
};

inline constexpr double kDefaultVerdictTolerance = 1e-6;

/// Converged when the last quarter's diameter is <= tolerance; Oscillating
/// when it exceeds 100 * tolerance with at least 3 sign reversals of the
/// nonzero increments (real or imaginary part); Inconclusive otherwise and
/// for traces shorter than 8 entries.
Verdict classify_trace(const std::vector<Complex>& trace, double tolerance);

struct Aspect {
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  /// ceil(num * K / den)
  std::uint64_t rows_for(std::uint64_t K) const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct SummationReport {
  SummationMode mode = SummationMode::row_iterated;
  std::vector<Complex> trace;
  Verdict verdict;
  double tolerance = kDefaultVerdictTolerance;
  Aspect aspect;  ///< Pringsheim only
};

/// rows_then_m: trace of sum_{m<=M} row_sum(m), M = 1..outer_limit.
/// columns_then_n: trace of sum_{n<=N} column_sum(n), N = 1..outer_limit.
/// Throws invalid_argument for outer_limit == 0.
SummationReport iterated_sum(const DoubleArraySpec& spec, IterationOrder order, std::uint64_t outer_limit,
                             double tolerance = kDefaultVerdictTolerance);

/// Trace of S(ceil(aspect K), K) for K = 1..K_max.
SummationReport pringsheim_trace(const DoubleArraySpec& spec, std::uint64_t K_max, Aspect aspect = {},
                                 double tolerance = kDefaultVerdictTolerance);

/// All three modes side by side.
///
/// The diagonal trace only samples one family of rectangles, so its own
/// verdict can read Converged for an array with no double limit. When the
/// rows and columns converge (true for every array here) a convergent double
/// series forces both repeated sums to exist and equal it. If the iterated
/// verdicts contradict that, the Pringsheim verdict is reported as
/// Inconclusive and the diagonal verdict is kept separately.
struct ModeComparison {
  SummationReport rows;
  SummationReport columns;
  SummationReport pringsheim;
  Verdict diagonal_verdict;
  bool double_limit_excluded = false;
  std::string note;
};

ModeComparison compare_modes(const DoubleArraySpec& spec, std::uint64_t outer_limit, std::uint64_t K_max,
                             Aspect aspect = {}, double tolerance = kDefaultVerdictTolerance);

// ---------------------------------------------------------------------------
// Partial-sum grid
// ---------------------------------------------------------------------------

/// Memoized rectangle sums S(M,N) for 0 <= M <= M_max, 0 <= N <= N_max,
/// with S(0,.) = S(.,0) = 0. Rows are filled in parallel and accumulated
/// down the columns in index order, so the grid is deterministic.
class PartialSumGrid {
 public:
  PartialSumGrid(DoubleArraySpec spec, std::uint32_t M_max, std::uint32_t N_max);

  const DoubleArraySpec& spec() const noexcept { return spec_; }
  std::uint32_t M_max() const noexcept { return M_max_; }
  std::uint32_t N_max() const noexcept { return N_max_; }

  Complex at(std::uint32_t M, std::uint32_t N) const {
    return cells_[static_cast<std::size_t>(M) * (N_max_ + 1) + N];
  }

  /// CSV rows "M,N,re,im" for M, N in 1..max stepping by stride.
  void write_csv(std::ostream& out, std::uint32_t stride = 1) const;

 private:
  DoubleArraySpec spec_;
  std::uint32_t M_max_;
  std::uint32_t N_max_;
  std::vector<Complex> cells_;
};

}  // namespace zdl
