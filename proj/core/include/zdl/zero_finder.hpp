#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "zdl/types.hpp"

namespace zdl {

enum class ZeroKind { critical_line, exceptional };

struct ZeroCandidate {
  ComplexPoint s;
  double residual = 0.0;  ///< |eta(s)| at the default order
  /// |eta(s)| at twice the default order; guards against evaluator error.
  double residual_doubled_order = 0.0;
  ZeroKind kind = ZeroKind::critical_line;
  std::int64_t k = 0;  ///< exceptional zeros only
};

/// Grid interval [lo, hi] around a local minimum of |eta(1/2 + it)|.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double t_min = 0.0;     ///< grid point of the minimum
  double abs_min = 0.0;   ///< |eta| there
};

inline constexpr double kScanCutoff = 0.5;
inline constexpr double kMaxScanStep = 0.5;
inline constexpr double kRefineTolerance = 1e-9;
inline constexpr double kStallTolerance = 1e-6;

/// Samples |eta(1/2 + it)| on t_lo, t_lo + step, ..., t_hi and returns a
/// bracket for every interior local minimum below 0.5. Negative t is allowed
/// (for mirror checks). Throws invalid_argument when t_lo >= t_hi, step <= 0
/// or step > 0.5.
std::vector<Bracket> scan_critical_line(double t_lo, double t_hi, double step);

/// Golden-section minimization of |eta(1/2 + it)|^2 over the bracket.
/// Throws refinement_stalled when the minimum is between 1e-9 and 1e-6 and
/// not_a_zero above 1e-6.
ZeroCandidate refine(const Bracket& bracket);

/// The zero of the factor 1 - 2^{1-s} at 1 + 2k pi i / log 2; eta vanishes
/// there. The residual is measured, not refined. Throws invalid_argument for
/// k == 0.
ZeroCandidate exceptional_zero(std::int64_t k);

struct OfflineSweep {
  double sigma = 0.0;
  double t_at_min = 0.0;
  double min_abs = 0.0;  ///< min |eta(sigma + it)| over the grid
};

/// min |eta(sigma + it)| for |t| <= t_max on a grid of the given step.
OfflineSweep offline_sweep(double sigma, double t_max = 50.0, double step = 0.01);

/// CSV with header "kind,k_or_t,re,im,residual".
void write_zero_csv(std::ostream& out, const std::vector<ZeroCandidate>& zeros);

}  // namespace zdl
