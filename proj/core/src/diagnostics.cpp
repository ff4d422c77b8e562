#include "zdl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "zdl/dirichlet.hpp"
#include "zdl/error.hpp"
#include "zdl/parallel.hpp"

namespace zdl {

std::string to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::first_partial: return "first_partial";
    case LimitKind::second_partial: return "second_partial";
    case LimitKind::double_limit: return "double";
    case LimitKind::first_iterated: return "first_iterated";
    case LimitKind::second_iterated: return "second_iterated";
  }
  return "?";
}

std::string to_string(ProbeStatus status) {
  switch (status) {
    case ProbeStatus::exists: return "Exists";
    case ProbeStatus::fails_to_settle: return "FailsToSettle";
    case ProbeStatus::inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(HypothesisStatus status) {
  switch (status) {
    case HypothesisStatus::holds: return "holds";
    case HypothesisStatus::fails: return "fails";
    case HypothesisStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(ScanQuantity quantity) {
  return quantity == ScanQuantity::needed_criterion ? "needed_criterion" : "lee_verified_criterion";
}

std::string to_string(ScanVerdictKind kind) {
  return kind == ScanVerdictKind::decays_below ? "DecaysBelow" : "StallsAbove";
}

// ---------------------------------------------------------------------------
// Limit probes
// ---------------------------------------------------------------------------

namespace {

ProbeStatus status_for(double residual, double tolerance) {
  if (residual <= tolerance) return ProbeStatus::exists;
  if (residual > 100.0 * tolerance) return ProbeStatus::fails_to_settle;
  return ProbeStatus::inconclusive;
}

LimitProbe iterated_probe(LimitKind kind, const std::vector<Complex>& limits, double tolerance) {
  LimitProbe probe;
  probe.kind = kind;
  probe.trace = limits;
  probe.value = limits.back();
  const auto first = limits.begin() + static_cast<std::ptrdiff_t>((limits.size() * 3) / 4);
  probe.residual = bounding_diameter(first, limits.end());
  probe.status = status_for(probe.residual, tolerance);
  return probe;
}

HypothesisStatus uniformity_from(const std::vector<std::uint32_t>& settling, std::uint32_t window) {
  const std::uint32_t worst = *std::max_element(settling.begin(), settling.end());
  if (worst > window) return HypothesisStatus::fails;
  if (worst <= (3 * window) / 4) return HypothesisStatus::holds;
  return HypothesisStatus::inconclusive;
}

}  // namespace

std::vector<LimitProbe> probe_limits(const PartialSumGrid& grid, double tolerance) {
  const std::uint32_t M = grid.M_max();
  const std::uint32_t N = grid.N_max();
  if (M < 16 || N < 16)
    throw Error(ErrorCode::insufficient_data, "probe_limits needs a grid of at least 16 x 16, got " +
                                                  std::to_string(M) + " x " + std::to_string(N));
  const DoubleArraySpec& spec = grid.spec();

  // f(m,inf) = sum of the first m row sums; f(inf,n) likewise for columns.
  std::vector<Complex> row_limits(M), column_limits(N);
  {
    Complex acc{};
    for (std::uint32_t m = 1; m <= M; ++m) row_limits[m - 1] = (acc += row_sum(spec, m));
    acc = {};
    for (std::uint32_t n = 1; n <= N; ++n) column_limits[n - 1] = (acc += column_sum(spec, n));
  }

  // Second partial: settle along n for each m.
  LimitProbe second;
  second.kind = LimitKind::second_partial;
  second.trace = row_limits;
  second.value = row_limits.back();
  second.status = ProbeStatus::exists;
  second.settling_index.assign(M, 1);
  for (std::uint32_t m = 1; m <= M; ++m) {
    const Complex limit = row_limits[m - 1];
    second.residual = std::max(second.residual, std::abs(grid.at(m, N) - limit));
    std::uint32_t n = N;
    while (n >= 1 && std::abs(grid.at(m, n) - limit) <= tolerance) --n;
    second.settling_index[m - 1] = n + 1;
  }
  second.uniform = uniformity_from(second.settling_index, N);

  // First partial: settle along m for each n, scanning rows from the edge.
  LimitProbe first;
  first.kind = LimitKind::first_partial;
  first.trace = column_limits;
  first.value = column_limits.back();
  first.status = ProbeStatus::exists;
  first.settling_index.assign(N, 1);
  {
    std::vector<bool> settled(N + 1, true);
    for (std::uint32_t n = 1; n <= N; ++n)
      first.residual = std::max(first.residual, std::abs(grid.at(M, n) - column_limits[n - 1]));
    for (std::uint32_t m = M; m >= 1; --m) {
      for (std::uint32_t n = 1; n <= N; ++n) {
        if (settled[n] && std::abs(grid.at(m, n) - column_limits[n - 1]) > tolerance) {
          settled[n] = false;
          first.settling_index[n - 1] = m + 1;
        }
      }
    }
  }
  first.uniform = uniformity_from(first.settling_index, M);

  // Double limit: spread over the tail corner of the window.
  LimitProbe dbl;
  dbl.kind = LimitKind::double_limit;
  for (std::uint32_t k = 1; k <= std::min(M, N); ++k) dbl.trace.push_back(grid.at(k, k));
  dbl.value = grid.at(M, N);
  {
    double re_lo = dbl.value.real(), re_hi = re_lo, im_lo = dbl.value.imag(), im_hi = im_lo;
    for (std::uint32_t m = (3 * M) / 4; m <= M; ++m) {
      for (std::uint32_t n = (3 * N) / 4; n <= N; ++n) {
        const Complex v = grid.at(m, n);
        re_lo = std::min(re_lo, v.real());
        re_hi = std::max(re_hi, v.real());
        im_lo = std::min(im_lo, v.imag());
        im_hi = std::max(im_hi, v.imag());
      }
    }
    dbl.residual = std::hypot(re_hi - re_lo, im_hi - im_lo);
  }
  dbl.status = status_for(dbl.residual, tolerance);

  std::vector<LimitProbe> probes;
  probes.push_back(std::move(first));
  probes.push_back(std::move(second));
  probes.push_back(std::move(dbl));
  probes.push_back(iterated_probe(LimitKind::first_iterated, row_limits, tolerance));
  probes.push_back(iterated_probe(LimitKind::second_iterated, column_limits, tolerance));
  return probes;
}

// ---------------------------------------------------------------------------
// Uniformity scans
// ---------------------------------------------------------------------------

ScanVerdict scan_verdict(const std::vector<double>& sup_trace, double threshold) {
  ScanVerdict v;
  v.threshold = threshold;
  std::size_t i = sup_trace.size();
  while (i > 0 && sup_trace[i - 1] <= threshold) --i;
  if (!sup_trace.empty() && i < sup_trace.size()) {
    v.kind = ScanVerdictKind::decays_below;
    v.index = i;
    return v;
  }
  v.kind = ScanVerdictKind::stalls_above;
  const auto half = sup_trace.begin() + static_cast<std::ptrdiff_t>(sup_trace.size() / 2);
  v.floor = sup_trace.empty() ? 0.0 : *std::min_element(half, sup_trace.end());
  return v;
}

namespace {

// Tracks max_q |sum_{i<=q} R_i| for a block of row values R where a few
// entries change at a time; prefixes before the first change are reused.
class BlockPrefixMax {
 public:
  explicit BlockPrefixMax(std::size_t size) : values_(size), prefix_(size), prefix_max_(size) {}

  void set(std::size_t i, Complex v) {
    values_[i] = v;
    dirty_from_ = std::min(dirty_from_, i);
  }
  Complex value(std::size_t i) const { return values_[i]; }

  double refresh() {
    if (dirty_from_ >= values_.size()) return current_;
    Complex acc = dirty_from_ == 0 ? Complex{} : prefix_[dirty_from_ - 1];
    double best = dirty_from_ == 0 ? 0.0 : prefix_max_[dirty_from_ - 1];
    for (std::size_t i = dirty_from_; i < values_.size(); ++i) {
      acc += values_[i];
      prefix_[i] = acc;
      best = std::max(best, std::norm(acc));
      prefix_max_[i] = best;
    }
    dirty_from_ = values_.size();
    current_ = best;
    return best;
  }

 private:
  std::vector<Complex> values_, prefix_;
  std::vector<double> prefix_max_;
  std::size_t dirty_from_ = 0;
  double current_ = 0.0;
};

double needed_sup_lee(const LeeArray& lee, const std::vector<Complex>& eta_partial, std::uint64_t M,
                      std::uint64_t p, std::uint64_t N_max) {
  if (M > N_max) return 0.0;
  const std::uint64_t last_row = std::min(M + p, N_max);
  const std::size_t size = last_row - M + 1;
  std::vector<Complex> coefficient(size);
  const Complex s = lee.s.value();
  for (std::size_t i = 0; i < size; ++i) {
    const std::uint64_t m = M + i;
    coefficient[i] = static_cast<double>(lee.table->liouville(static_cast<std::uint32_t>(m))) *
                     inverse_power(static_cast<double>(m), s);
  }
  // R_m(N) = lambda(m) m^{-s} eta_{floor(N/m)}(s) changes exactly when m | N.
  BlockPrefixMax block(size);
  double best = 0.0;
  for (std::uint64_t N = M; N <= N_max; ++N) {
    lee.table->for_each_divisor(static_cast<std::uint32_t>(N), [&](std::uint32_t d) {
      if (d >= M && d <= last_row) block.set(d - M, coefficient[d - M] * eta_partial[N / d]);
    });
    best = std::max(best, block.refresh());
  }
  return std::sqrt(best);
}

double needed_sup_dense(const DoubleArraySpec& spec, std::uint64_t M, std::uint64_t p, std::uint64_t N_max) {
  const std::size_t size = p + 1;
  BlockPrefixMax block(size);
  double best = 0.0;
  for (std::uint64_t N = 1; N <= N_max; ++N) {
    for (std::size_t i = 0; i < size; ++i) block.set(i, block.value(i) + term(spec, M + i, N));
    best = std::max(best, block.refresh());
  }
  return std::sqrt(best);
}

double verified_sup_lee(const LeeArray& lee, std::uint64_t N, std::uint64_t p, std::uint64_t M_max) {
  const Complex s = lee.s.value();
  double best = 0.0;
  for (std::uint64_t m = 1; m <= M_max; ++m) {
    const std::uint64_t l_lo = (N + m - 1) / m;
    const std::uint64_t l_hi = (N + p) / m;
    if (l_lo > l_hi) continue;
    const double lambda = lee.table->liouville(static_cast<std::uint32_t>(m));
    Complex acc{};
    for (std::uint64_t l = l_lo; l <= l_hi; ++l) {
      const double sign = (l % 2 == 1) ? lambda : -lambda;
      acc += sign * inverse_power(static_cast<double>(m * l), s);
      best = std::max(best, std::norm(acc));
    }
  }
  return std::sqrt(best);
}

double verified_sup_dense(const DoubleArraySpec& spec, std::uint64_t N, std::uint64_t p, std::uint64_t M_max) {
  double best = 0.0;
  for (std::uint64_t m = 1; m <= M_max; ++m) {
    Complex acc{};
    for (std::uint64_t n = N; n <= N + p; ++n) {
      acc += term(spec, m, n);
      best = std::max(best, std::norm(acc));
    }
  }
  return std::sqrt(best);
}

bool is_zero_array(const DoubleArraySpec& spec) {
  const auto* a = std::get_if<SyntheticArray>(&spec.kind());
  return a && a->rule == SyntheticRule::zero;
}

}  // namespace

UniformityScan needed_uniformity_scan(const DoubleArraySpec& spec, std::span<const std::uint64_t> M_list,
                                      std::uint64_t p, std::uint64_t N_max, double threshold) {
  UniformityScan scan;
  scan.quantity = ScanQuantity::needed_criterion;
  scan.outer_index.assign(M_list.begin(), M_list.end());
  scan.window = N_max;
  scan.block = p;
  scan.sup_trace.assign(M_list.size(), 0.0);
  for (std::uint64_t M : M_list)
    if (M == 0) throw Error(ErrorCode::invalid_argument, "needed_uniformity_scan: M must be >= 1");

  if (!is_zero_array(spec)) {
    if (const auto* lee = spec.as_lee()) {
      if (N_max > lee->table->n_max())
        throw Error(ErrorCode::out_of_range, "needed_uniformity_scan: N_max " + std::to_string(N_max) +
                                                 " beyond sieve bound " + std::to_string(lee->table->n_max()));
      const std::uint64_t M_min = *std::min_element(M_list.begin(), M_list.end());
      // Partial sums of the alternating series up to the largest N/m needed.
      std::vector<Complex> eta_partial(N_max / M_min + 1);
      for (std::size_t L = 1; L < eta_partial.size(); ++L) {
        const double sign = (L % 2 == 1) ? 1.0 : -1.0;
        eta_partial[L] = eta_partial[L - 1] + sign * inverse_power(static_cast<double>(L), lee->s.value());
      }
      parallel_for(M_list.size(), [&](std::size_t i) {
        scan.sup_trace[i] = needed_sup_lee(*lee, eta_partial, M_list[i], p, N_max);
      });
    } else {
      parallel_for(M_list.size(),
                   [&](std::size_t i) { scan.sup_trace[i] = needed_sup_dense(spec, M_list[i], p, N_max); });
    }
  }
  scan.verdict = scan_verdict(scan.sup_trace, threshold);
  return scan;
}

UniformityScan lee_verified_scan(const DoubleArraySpec& spec, std::span<const std::uint64_t> N_list,
                                 std::uint64_t p, std::uint64_t M_max, double threshold) {
  UniformityScan scan;
  scan.quantity = ScanQuantity::lee_verified_criterion;
  scan.outer_index.assign(N_list.begin(), N_list.end());
  scan.window = M_max;
  scan.block = p;
  scan.sup_trace.assign(N_list.size(), 0.0);
  for (std::uint64_t N : N_list)
    if (N == 0) throw Error(ErrorCode::invalid_argument, "lee_verified_scan: N must be >= 1");

  if (!is_zero_array(spec)) {
    if (const auto* lee = spec.as_lee()) {
      const std::uint64_t N_hi = *std::max_element(N_list.begin(), N_list.end()) + p;
      if (N_hi > lee->table->n_max() || M_max > lee->table->n_max())
        throw Error(ErrorCode::out_of_range, "lee_verified_scan: indices up to " + std::to_string(N_hi) +
                                                 " beyond sieve bound " + std::to_string(lee->table->n_max()));
      parallel_for(N_list.size(),
                   [&](std::size_t i) { scan.sup_trace[i] = verified_sup_lee(*lee, N_list[i], p, M_max); });
    } else {
      parallel_for(N_list.size(),
                   [&](std::size_t i) { scan.sup_trace[i] = verified_sup_dense(spec, N_list[i], p, M_max); });
    }
  }
  scan.verdict = scan_verdict(scan.sup_trace, threshold);
  return scan;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

HypothesisStatus exists_status(const LimitProbe& probe) {
  switch (probe.status) {
    case ProbeStatus::exists: return HypothesisStatus::holds;
    case ProbeStatus::fails_to_settle: return HypothesisStatus::fails;
    case ProbeStatus::inconclusive: return HypothesisStatus::inconclusive;
  }
  return HypothesisStatus::inconclusive;
}

std::string uniform_basis(const LimitProbe& probe, std::uint32_t window) {
  const std::uint32_t worst = *std::max_element(probe.settling_index.begin(), probe.settling_index.end());
  if (worst > window) return "some free index has not settled by the window edge " + std::to_string(window);
  return "largest settling index " + std::to_string(worst) + " of window " + std::to_string(window);
}

// Equality of two probed limits: empty when either side is not settled.
std::optional<bool> limits_agree(const LimitProbe& a, const LimitProbe& b, double gap) {
  if (a.status == ProbeStatus::fails_to_settle || b.status == ProbeStatus::fails_to_settle) {
    // One side provably moves on the window while the other settles.
    if (a.status == ProbeStatus::exists || b.status == ProbeStatus::exists) return false;
    return std::nullopt;
  }
  if (a.status != ProbeStatus::exists || b.status != ProbeStatus::exists) return std::nullopt;
  return std::abs(a.value - b.value) <= gap;
}

TheoremCheck make_check(std::string name, std::vector<Hypothesis> hypotheses, std::string conclusion) {
  TheoremCheck t;
  t.name = std::move(name);
  t.hypotheses = std::move(hypotheses);
  t.conclusion = std::move(conclusion);
  return t;
}

void finish(TheoremCheck& t) {
  bool all_hold = std::all_of(t.hypotheses.begin(), t.hypotheses.end(),
                              [](const Hypothesis& h) { return h.status == HypothesisStatus::holds; });
  if (all_hold && t.conclusion_observed == false) {
    for (auto& h : t.hypotheses) {
      if (h.statement.find("exists-U") != std::string::npos) {
        h.status = HypothesisStatus::fails;
        h.basis += "; contradicted: the conclusion is observed false, so uniformity cannot hold beyond the window";
      }
    }
    t.note = "window overstated uniformity (contrapositive of the theorem)";
    all_hold = false;
  }
  t.conclusion_asserted = all_hold;
}

}  // namespace

Classification classify(const PartialSumGrid& grid, double tolerance) {
  Classification out;
  out.tolerance = tolerance;
  out.probes = probe_limits(grid, tolerance);
  const LimitProbe& first_partial = out.probes[0];
  const LimitProbe& second_partial = out.probes[1];
  LimitProbe dbl = out.probes[2];
  const LimitProbe& first_iter = out.probes[3];
  const LimitProbe& second_iter = out.probes[4];
  const double gap = 10.0 * tolerance;

  if (first_partial.status == ProbeStatus::exists && second_partial.status == ProbeStatus::exists &&
      limits_agree(first_iter, second_iter, gap) == false) {
    out.double_limit_excluded = true;
    dbl.status = ProbeStatus::fails_to_settle;
  }

  const Hypothesis second_u{"f(m,inf) exists-U", second_partial.uniform,
                            uniform_basis(second_partial, grid.N_max())};
  const Hypothesis first_u{"f(inf,n) exists-U", first_partial.uniform, uniform_basis(first_partial, grid.M_max())};
  const Hypothesis second_exists{"f(m,inf) exists", exists_status(second_partial), "closed-form row sums"};
  const Hypothesis first_iter_exists{"f(inf1,inf2) = L exists", exists_status(first_iter),
                                     "last-quarter diameter " + short_number(first_iter.residual)};
  const Hypothesis double_exists{"f(inf,inf) = L exists", exists_status(dbl),
                                 out.double_limit_excluded
                                     ? "excluded: partial limits exist but the iterated limits differ"
                                     : "tail-corner diameter " + short_number(dbl.residual)};

  {
    TheoremCheck t = make_check("uniform_rows_to_double", {second_u, first_iter_exists}, "f(inf,inf) = f(inf1,inf2)");
    t.conclusion_observed = limits_agree(dbl, first_iter, gap);
    finish(t);
    out.theorems.push_back(std::move(t));
  }
  {
    TheoremCheck t = make_check("double_to_iterated", {second_u, double_exists}, "f(inf1,inf2) = f(inf,inf)");
    t.conclusion_observed = limits_agree(first_iter, dbl, gap);
    finish(t);
    out.theorems.push_back(std::move(t));
  }
  {
    TheoremCheck t = make_check("iterated_interchange", {first_iter_exists, second_u, first_u}, "f(inf2,inf1) = f(inf1,inf2)");
    t.conclusion_observed = limits_agree(second_iter, first_iter, gap);
    finish(t);
    out.theorems.push_back(std::move(t));
  }
  {
    TheoremCheck t = make_check("moore_interchange", {second_exists, first_u}, "f(inf,inf) = f(inf1,inf2) = f(inf2,inf1)");
    const auto a = limits_agree(first_iter, second_iter, gap);
    const auto b = limits_agree(dbl, first_iter, gap);
    if (a == false || b == false)
      t.conclusion_observed = false;
    else if (a && b)
      t.conclusion_observed = true;
    finish(t);
    out.theorems.push_back(std::move(t));
  }
  return out;
}

}  // namespace zdl
