#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zdl/double_array.hpp"

namespace zdl {

// Notation for a double sequence f(m,n), here the rectangle sums S(M,N):
//   f(inf,n)  = lim_m f(m,n)          first partial limit
//   f(m,inf)  = lim_n f(m,n)          second partial limit
//   f(inf,inf)                        double (Pringsheim) limit
//   f(inf1,inf2) = lim_m lim_n f      first iterated limit
//   f(inf2,inf1) = lim_n lim_m f      second iterated limit
//
// Everything below is judged on a finite window. "Uniform" always means
// uniform on that window: one settling index works for every free index
// in range. Nothing here claims uniformity over all naturals.

enum class LimitKind { first_partial, second_partial, double_limit, first_iterated, second_iterated };
std::string to_string(LimitKind kind);

enum class ProbeStatus { exists, fails_to_settle, inconclusive };
std::string to_string(ProbeStatus status);

enum class HypothesisStatus { holds, fails, inconclusive };
std::string to_string(HypothesisStatus status);

struct LimitProbe {
  LimitKind kind = LimitKind::double_limit;
  /// Partial limits: the limit as a function of the free index.
  /// Iterated limits: the same sequence, read along the outer index.
  /// Double limit: the diagonal S(k,k).
  std::vector<Complex> trace;
  ProbeStatus status = ProbeStatus::inconclusive;
  Complex value;
  double residual = 0.0;

  // Partial limits only. settling_index[i] is the first index of the
  // limit variable after which S stays within tolerance of the limit up to
  // the window edge; window + 1 when the last value is still outside.
  std::vector<std::uint32_t> settling_index;
  HypothesisStatus uniform = HypothesisStatus::inconclusive;
};

/// The five probes, in the order of LimitKind. Partial limits come from the
/// closed-form row and column sums; settling and the double limit are read
/// off the grid. Throws insufficient_data for grids smaller than 16 x 16.
std::vector<LimitProbe> probe_limits(const PartialSumGrid& grid, double tolerance);

// ---------------------------------------------------------------------------

enum class ScanQuantity {
  /// sup over N <= N_max and q <= p of |sum_{m=M}^{M+q} sum_{n<=N} a_{m,n}|,
  /// per M: the uniform Cauchy condition for S(inf,N) in N.
  needed_criterion,
  /// sup over m <= M_max and q <= p of |sum_{n=N}^{N+q} a_{m,n}|, per N:
  /// row tails uniformly small in m.
  lee_verified_criterion,
};
std::string to_string(ScanQuantity quantity);

enum class ScanVerdictKind { decays_below, stalls_above };
std::string to_string(ScanVerdictKind kind);

struct ScanVerdict {
  ScanVerdictKind kind = ScanVerdictKind::stalls_above;
  double threshold = 0.0;
  std::size_t index = 0;  ///< decays_below: first trace index from which every entry is <= threshold
  double floor = 0.0;     ///< stalls_above: minimum over the second half of the trace
};

inline constexpr double kDefaultScanThreshold = 1e-2;

struct UniformityScan {
  ScanQuantity quantity = ScanQuantity::needed_criterion;
  std::vector<std::uint64_t> outer_index;
  std::vector<double> sup_trace;  ///< entries >= 0
  std::uint64_t window = 0;       ///< N_max (needed) or M_max (verified)
  std::uint64_t block = 0;        ///< p
  ScanVerdict verdict;
};

ScanVerdict scan_verdict(const std::vector<double>& sup_trace, double threshold);

/// Rows use n from 1; for the Lee array this equals the n = m.. form since
/// a_{m,n} = 0 for n < m. Throws out_of_range when N_max exceeds a Lee
/// array's sieve bound.
UniformityScan needed_uniformity_scan(const DoubleArraySpec& spec, std::span<const std::uint64_t> M_list,
                                      std::uint64_t p, std::uint64_t N_max,
                                      double threshold = kDefaultScanThreshold);

/// Throws out_of_range when N + p exceeds a Lee array's sieve bound.
UniformityScan lee_verified_scan(const DoubleArraySpec& spec, std::span<const std::uint64_t> N_list,
                                 std::uint64_t p, std::uint64_t M_max, double threshold = kDefaultScanThreshold);

// ---------------------------------------------------------------------------

struct Hypothesis {
  std::string statement;
  HypothesisStatus status = HypothesisStatus::inconclusive;
  std::string basis;
};

struct TheoremCheck {
  std::string name;
  std::vector<Hypothesis> hypotheses;
  std::string conclusion;
  /// True only when every hypothesis holds on the window.
  bool conclusion_asserted = false;
  /// What the probes show for the conclusion; empty when they cannot tell.
  std::optional<bool> conclusion_observed;
  std::string note;
};

struct Classification {
  double tolerance = 0.0;
  std::vector<LimitProbe> probes;
  std::vector<TheoremCheck> theorems;
  /// Set when both partial limits exist but the iterated limits disagree:
  /// a double limit would force them equal, so none exists whatever the
  /// window's tail corner shows.
  bool double_limit_excluded = false;
};

/// Checks the corrected double-sequence theorems (uniform second partial
/// limit plus first iterated limit gives the double limit, and its
/// converses) and Moore's interchange theorem against the probes.
///
/// When every hypothesis of a theorem holds on the window but its
/// conclusion is observed false, the window has overstated a uniformity
/// hypothesis; those hypotheses are reported as failed and no conclusion is
/// asserted. An excluded double limit counts as not existing.
Classification classify(const PartialSumGrid& grid, double tolerance);

}  // namespace zdl
