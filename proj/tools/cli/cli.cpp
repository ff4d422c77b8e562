#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zdl/arithmetic.hpp"
#include "zdl/diagnostics.hpp"
#include "zdl/dirichlet.hpp"
#include "zdl/error.hpp"
#include "zdl/zero_finder.hpp"

namespace zdl::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr int kSchema = 1;
constexpr std::size_t kMaxTracePoints = 512;

[[noreturn]] void bad_argument(const std::string& message) { throw Error(ErrorCode::invalid_argument, message); }

double parse_real(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty() || text.front() == '+') bad_argument("cannot parse number in '" + std::string(whole) + "'");
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
    bad_argument("cannot parse number in '" + std::string(whole) + "'");
  return value;
}

// Imaginary coefficient: "", "+" and "-" stand for 1 and -1.
double parse_imaginary(std::string_view text, std::string_view whole) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_real(text, whole);
}

}  // namespace

ComplexPoint parse_complex(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_argument("empty complex number");

  if (text.back() != 'i' && text.back() != 'j') return ComplexPoint{parse_real(text, whole), 0.0};
  text.remove_suffix(1);

  // The split is the last sign that is neither leading nor an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return ComplexPoint{0.0, parse_imaginary(text, whole)};
  return ComplexPoint{parse_real(text.substr(0, split), whole), parse_imaginary(text.substr(split), whole)};
}

Aspect parse_aspect(std::string_view text) {
  auto parse_natural = [&](std::string_view part) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || v == 0)
      bad_argument("aspect must be a positive rational a/b, got '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Aspect{parse_natural(text), 1};
  return Aspect{parse_natural(text.substr(0, slash)), parse_natural(text.substr(slash + 1))};
}

namespace {

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json complex_json(Complex z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

// Evenly spaced samples, always keeping the first and last entries.
template <class T, class F>
Json decimate(const std::vector<T>& trace, F&& to_json) {
  Json out = Json::array();
  const std::size_t n = trace.size();
  if (n <= kMaxTracePoints) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(Json{{"index", i + 1}, {"value", to_json(trace[i])}});
    return out;
  }
  for (std::size_t j = 0; j < kMaxTracePoints; ++j) {
    const std::size_t i = j * (n - 1) / (kMaxTracePoints - 1);
    out.push_back(Json{{"index", i + 1}, {"value", to_json(trace[i])}});
  }
  return out;
}

Json verdict_json(const Verdict& v, double tolerance) {
  return Json{{"kind", to_string(v.kind)},
              {"value", complex_json(v.value)},
              {"residual", number(v.residual)},
              {"tolerance", tolerance},
              {"band", {{"re_lo", v.band.re_lo}, {"re_hi", v.band.re_hi}, {"im_lo", v.band.im_lo}, {"im_hi", v.band.im_hi}}},
              {"sign_reversals", v.sign_reversals}};
}

Json report_json(const SummationReport& r) {
  Json j{{"mode", to_string(r.mode)}, {"verdict", verdict_json(r.verdict, r.tolerance)}};
  if (r.mode == SummationMode::pringsheim_diagonal)
    j["aspect"] = std::to_string(r.aspect.num) + "/" + std::to_string(r.aspect.den);
  j["trace_length"] = r.trace.size();
  j["trace"] = decimate(r.trace, complex_json);
  return j;
}

Json probe_json(const LimitProbe& p) {
  Json j{{"kind", to_string(p.kind)},
         {"status", to_string(p.status)},
         {"value", complex_json(p.value)},
         {"residual", number(p.residual)}};
  if (!p.settling_index.empty()) {
    j["uniform_on_window"] = to_string(p.uniform);
    j["settling_index_max"] = *std::max_element(p.settling_index.begin(), p.settling_index.end());
    j["settling_index"] = p.settling_index;
  }
  j["trace_length"] = p.trace.size();
  j["trace"] = decimate(p.trace, complex_json);
  return j;
}

Json scan_json(const UniformityScan& s) {
  Json trace = Json::array();
  for (std::size_t i = 0; i < s.sup_trace.size(); ++i)
    trace.push_back(Json{{"outer_index", s.outer_index[i]}, {"sup", s.sup_trace[i]}});
  Json verdict{{"kind", to_string(s.verdict.kind)}, {"threshold", s.verdict.threshold}};
  if (s.verdict.kind == ScanVerdictKind::decays_below)
    verdict["from_outer_index"] = s.outer_index[s.verdict.index];
  else
    verdict["floor"] = s.verdict.floor;
  return Json{{"quantity", to_string(s.quantity)},
              {"window", s.window},
              {"block", s.block},
              {"sup_trace", trace},
              {"verdict", verdict}};
}

Json theorem_json(const TheoremCheck& t) {
  Json hyps = Json::array();
  for (const auto& h : t.hypotheses)
    hyps.push_back(Json{{"statement", h.statement}, {"status", to_string(h.status)}, {"basis", h.basis}});
  Json observed = t.conclusion_observed ? Json(*t.conclusion_observed) : Json(nullptr);
  Json j{{"theorem", t.name},
         {"hypotheses", hyps},
         {"conclusion", t.conclusion},
         {"conclusion_asserted", t.conclusion_asserted},
         {"conclusion_observed", observed}};
  if (!t.note.empty()) j["note"] = t.note;
  return j;
}

Json s_json(const std::optional<ComplexPoint>& s) {
  return s ? complex_json(s->value()) : Json(nullptr);
}

// ---------------------------------------------------------------------------
// Run configuration shared by the subcommands
// ---------------------------------------------------------------------------

struct Common {
  std::string format;
  std::string out_path;
};

struct Sink {
  std::ostream& stream;
  std::unique_ptr<std::ofstream> file;
};

Sink open_sink(const Common& common, std::ostream& out) {
  if (common.out_path.empty()) return Sink{out, nullptr};
  auto file = std::make_unique<std::ofstream>(common.out_path, std::ios::binary);
  if (!*file) bad_argument("cannot open output file '" + common.out_path + "'");
  std::ostream& ref = *file;
  return Sink{ref, std::move(file)};
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::shared_ptr<const ArithmeticTable> make_table(std::uint64_t n_max) {
  if (n_max == 0 || n_max > 0xFFFFFFFFull) throw Error(ErrorCode::invalid_bound, "--n-max must be in [1, 2^32)");
  return std::make_shared<const ArithmeticTable>(build_table(static_cast<std::uint32_t>(n_max)));
}

DoubleArraySpec make_array(const std::string& name, const std::optional<ComplexPoint>& s, std::uint64_t n_max) {
  if (name == "lee") {
    if (!s) bad_argument("--s is required for the lee array");
    return DoubleArraySpec::lee(*s, make_table(n_max));
  }
  if (name == "cesaro") return DoubleArraySpec::cesaro();
  if (name == "zero") return DoubleArraySpec::synthetic(SyntheticRule::zero);
  if (name == "ratio") return DoubleArraySpec::synthetic(SyntheticRule::interchange_ratio);
  bad_argument("unknown array '" + name + "' (expected lee, cesaro, zero or ratio)");
}

void require_positive(double tol, const char* flag) {
  if (!(tol > 0.0) || !std::isfinite(tol)) bad_argument(std::string(flag) + " must be a positive number");
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_beta(const Common& common, std::uint64_t n_max, std::ostream& out) {
  const auto table = make_table(n_max);
  std::uint64_t mismatches = 0;
  Sink sink = open_sink(common, out);
  Json rows = Json::array();
  if (common.format == "csv") sink.stream << "n,omega,lambda,beta_def,beta_closed,mismatch\n";
  for (std::uint32_t n = 1; n <= table->n_max(); ++n) {
    const int by_def = table->beta_by_definition(n);
    const int closed = beta_closed_form(n);
    const bool mismatch = by_def != closed;
    mismatches += mismatch;
    if (common.format == "csv") {
      sink.stream << n << ',' << int(table->omega(n)) << ',' << int(table->liouville(n)) << ',' << by_def << ','
                  << closed << ',' << int(mismatch) << '\n';
    } else {
      rows.push_back(Json{{"n", n},
                          {"omega", table->omega(n)},
                          {"lambda", table->liouville(n)},
                          {"beta_def", by_def},
                          {"beta_closed", closed},
                          {"mismatch", mismatch}});
    }
  }
  if (common.format == "json")
    write_json(sink.stream,
               Json{{"schema", kSchema}, {"command", "beta"}, {"n_max", n_max}, {"mismatches", mismatches}, {"rows", rows}});
  return mismatches == 0 ? kExitOk : kExitViolation;
}

int cmd_identity(const Common& common, const ComplexPoint& s, std::uint64_t K, std::ostream& out) {
  if (K == 0) throw Error(ErrorCode::invalid_bound, "--K must be >= 1");
  const Complex lhs = beta_series_partial(s, K);
  const ComplexPoint two_s{2.0 * s.re, 2.0 * s.im};
  EvalResult z2s;
  try {
    z2s = zeta(two_s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::exceptional_point) throw;
    z2s = zeta_at_exceptional(std::llround(two_s.im * std::log(2.0) / (2.0 * std::numbers::pi)));
  }
  const Complex rhs = eta_factor(s.value()) * z2s.value;
  const double residual = std::abs(lhs - rhs);
  const double sigma = s.re;
  const double tail = sigma > 0.5 ? std::pow(static_cast<double>(K), 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0)
                                  : std::numeric_limits<double>::infinity();
  const double bound = tail + 1e-8;
  const bool within = residual <= bound;

  Sink sink = open_sink(common, out);
  if (common.format == "csv") {
    sink.stream << "s_re,s_im,K,lhs_re,lhs_im,rhs_re,rhs_im,residual,tail_bound,within_bound\n"
                << format_double(s.re) << ',' << format_double(s.im) << ',' << K << ','
                << format_double(lhs.real()) << ',' << format_double(lhs.imag()) << ','
                << format_double(rhs.real()) << ',' << format_double(rhs.imag()) << ',' << format_double(residual)
                << ',' << format_double(tail) << ',' << int(within) << '\n';
  } else {
    write_json(sink.stream, Json{{"schema", kSchema},
                                 {"command", "identity"},
                                 {"s", complex_json(s.value())},
                                 {"K", K},
                                 {"beta_series", complex_json(lhs)},
                                 {"factor_times_zeta_2s", complex_json(rhs)},
                                 {"zeta_2s_error_estimate", z2s.error_estimate},
                                 {"residual", residual},
                                 {"tail_bound", number(tail)},
                                 {"within_bound", within}});
  }
  return within ? kExitOk : kExitViolation;
}

struct ModesArgs {
  std::string array = "lee";
  std::optional<ComplexPoint> s;
  std::uint64_t limits = 100000;
  std::uint64_t K = 0;
  std::string aspect = "1";
  double tol = kDefaultVerdictTolerance;
  std::uint64_t n_max = 0;
};

int cmd_modes(const Common& common, const ModesArgs& a, std::ostream& out) {
  require_positive(a.tol, "--tol");
  if (a.limits == 0) throw Error(ErrorCode::invalid_bound, "--limits must be >= 1");
  const Aspect aspect = parse_aspect(a.aspect);
  const std::uint64_t K = a.K == 0 ? a.limits : a.K;
  const std::uint64_t need = std::max({a.limits, K, aspect.rows_for(K)});
  const std::uint64_t n_max = a.n_max == 0 ? need : a.n_max;
  if (a.array == "lee" && n_max < need)
    throw Error(ErrorCode::invalid_bound, "--n-max " + std::to_string(n_max) + " below the requested range " +
                                              std::to_string(need));
  const DoubleArraySpec spec = make_array(a.array, a.s, n_max);
  const ModeComparison cmp = compare_modes(spec, a.limits, K, aspect, a.tol);

  Sink sink = open_sink(common, out);
  if (common.format == "csv") {
    sink.stream << "mode,verdict,re,im,residual,sign_reversals\n";
    for (const SummationReport* r : {&cmp.rows, &cmp.columns, &cmp.pringsheim}) {
      sink.stream << to_string(r->mode) << ',' << to_string(r->verdict.kind) << ','
                  << format_double(r->verdict.value.real()) << ',' << format_double(r->verdict.value.imag()) << ','
                  << format_double(r->verdict.residual) << ',' << r->verdict.sign_reversals << '\n';
    }
  } else {
    Json j{{"schema", kSchema},
           {"command", "modes"},
           {"array", spec.name()},
           {"description", spec.description()},
           {"s", s_json(a.array == "lee" ? a.s : std::nullopt)},
           {"limits", a.limits},
           {"K", K},
           {"modes", Json::array({report_json(cmp.rows), report_json(cmp.columns), report_json(cmp.pringsheim)})},
           {"diagonal_verdict", verdict_json(cmp.diagonal_verdict, a.tol)},
           {"double_limit_excluded", cmp.double_limit_excluded}};
    if (!cmp.note.empty()) j["note"] = cmp.note;
    write_json(sink.stream, j);
  }
  return kExitOk;
}

struct UniformityArgs {
  std::string array = "lee";
  std::optional<ComplexPoint> s;
  std::uint32_t window = 1024;
  std::uint64_t scan_n = 0;
  std::uint64_t p = 0;
  double tol = 1e-5;
  double threshold = kDefaultScanThreshold;
  std::uint64_t n_max = 0;
  std::string grid_out;
  std::uint32_t grid_stride = 16;
};

std::vector<std::uint64_t> powers_of_four(std::uint64_t from, std::uint64_t limit) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t x = from; x <= limit; x *= 4) v.push_back(x);
  return v;
}

int cmd_uniformity(const Common& common, const UniformityArgs& a, std::ostream& out) {
  require_positive(a.tol, "--tol");
  require_positive(a.threshold, "--threshold");
  if (a.window < 16) throw Error(ErrorCode::insufficient_data, "--window must be >= 16");
  const bool lee = a.array == "lee";
  const std::uint64_t scan_n = a.scan_n != 0 ? a.scan_n : (lee ? 1000000 : a.window);
  const std::uint64_t p = a.p != 0 ? a.p : std::min<std::uint64_t>(256, scan_n / 4);
  if (scan_n < p + 16) throw Error(ErrorCode::invalid_bound, "--scan-n must be at least --p + 16");
  const std::uint64_t need = std::max<std::uint64_t>(a.window, scan_n);
  const std::uint64_t n_max = a.n_max == 0 ? need : a.n_max;
  if (lee && n_max < need)
    throw Error(ErrorCode::invalid_bound, "--n-max " + std::to_string(n_max) + " below the requested range " +
                                              std::to_string(need));
  const DoubleArraySpec spec = make_array(a.array, a.s, n_max);

  const PartialSumGrid grid(spec, a.window, a.window);
  const Classification cls = classify(grid, a.tol);

  const std::vector<std::uint64_t> M_list = powers_of_four(16, a.window);
  std::vector<std::uint64_t> N_list = powers_of_four(16, scan_n - p);
  if (N_list.back() != scan_n - p) N_list.push_back(scan_n - p);
  const UniformityScan needed = needed_uniformity_scan(spec, M_list, p, scan_n, a.threshold);
  const UniformityScan verified = lee_verified_scan(spec, N_list, p, a.window, a.threshold);

  if (!a.grid_out.empty()) {
    std::ofstream file(a.grid_out, std::ios::binary);
    if (!file) bad_argument("cannot open grid output file '" + a.grid_out + "'");
    grid.write_csv(file, a.grid_stride);
  }

  Sink sink = open_sink(common, out);
  if (common.format == "csv") {
    sink.stream << "quantity,outer_index,sup,verdict\n";
    for (const UniformityScan* scan : {&needed, &verified}) {
      for (std::size_t i = 0; i < scan->sup_trace.size(); ++i)
        sink.stream << to_string(scan->quantity) << ',' << scan->outer_index[i] << ','
                    << format_double(scan->sup_trace[i]) << ',' << to_string(scan->verdict.kind) << '\n';
    }
    return kExitOk;
  }

  Json probes = Json::array();
  for (const auto& p : cls.probes) probes.push_back(probe_json(p));
  Json theorems = Json::array();
  for (const auto& t : cls.theorems) theorems.push_back(theorem_json(t));
  Json j{{"schema", kSchema},
         {"command", "uniformity"},
         {"array", spec.name()},
         {"s", s_json(lee ? a.s : std::nullopt)},
         {"window", {{"M_max", a.window}, {"N_max", a.window}, {"scan_N_max", scan_n}, {"p", p}}},
         {"tolerance", a.tol}};
  if (const auto* l = spec.as_lee()) {
    // Row m sums to lambda(m) m^{-s} eta(s); the largest is row 1.
    j["eta_at_s"] = complex_json(l->eta_at_s);
    j["row_sum_max_abs"] = std::abs(row_sum(spec, 1));
  }
  j["probes"] = probes;
  j["scans"] = Json::array({scan_json(needed), scan_json(verified)});
  j["classification"] = theorems;
  j["double_limit_excluded"] = cls.double_limit_excluded;
  write_json(sink.stream, j);
  return kExitOk;
}

struct ZerosArgs {
  double t_lo = 10.0;
  double t_hi = 25.0;
  double step = 0.01;
  std::int64_t exceptional = 1;
  bool sweep = false;
};

int cmd_zeros(const Common& common, const ZerosArgs& a, std::ostream& out) {
  if (a.exceptional < 0) bad_argument("--exceptional must be >= 0");
  std::vector<ZeroCandidate> zeros;
  Json rejected = Json::array();
  for (const Bracket& b : scan_critical_line(a.t_lo, a.t_hi, a.step)) {
    try {
      zeros.push_back(refine(b));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::not_a_zero && e.code() != ErrorCode::refinement_stalled) throw;
      rejected.push_back(Json{{"lo", b.lo}, {"hi", b.hi}, {"code", std::string(to_string(e.code()))}});
    }
  }
  for (std::int64_t k = 1; k <= a.exceptional; ++k) {
    zeros.push_back(exceptional_zero(k));
    zeros.push_back(exceptional_zero(-k));
  }

  Sink sink = open_sink(common, out);
  if (common.format == "csv") {
    write_zero_csv(sink.stream, zeros);
    return kExitOk;
  }
  Json list = Json::array();
  for (const auto& z : zeros) {
    Json row{{"kind", z.kind == ZeroKind::critical_line ? "critical_line" : "exceptional"}};
    if (z.kind == ZeroKind::exceptional) row["k"] = z.k;
    row["s"] = complex_json(z.s.value());
    row["residual"] = z.residual;
    row["residual_doubled_order"] = z.residual_doubled_order;
    list.push_back(row);
  }
  Json j{{"schema", kSchema},
         {"command", "zeros"},
         {"t_lo", a.t_lo},
         {"t_hi", a.t_hi},
         {"step", a.step},
         {"zeros", list},
         {"rejected_brackets", rejected}};
  if (a.sweep) {
    Json sweeps = Json::array();
    for (double sigma : {0.6, 0.75}) {
      const OfflineSweep w = offline_sweep(sigma);
      sweeps.push_back(Json{{"sigma", sigma}, {"t_at_min", w.t_at_min}, {"min_abs_eta", w.min_abs}});
    }
    j["offline_sweep"] = sweeps;
  }
  write_json(sink.stream, j);
  return kExitOk;
}

int cmd_eval(const Common& common, const std::string& name, const EvalResult& r, const Json& where,
             std::ostream& out) {
  Sink sink = open_sink(common, out);
  if (common.format == "csv") {
    sink.stream << "re,im,error_estimate,terms_used\n"
                << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << ','
                << format_double(r.error_estimate) << ',' << r.terms_used << '\n';
  } else {
    write_json(sink.stream, Json{{"schema", kSchema},
                                 {"command", name},
                                 {"at", where},
                                 {"value", complex_json(r.value)},
                                 {"error_estimate", r.error_estimate},
                                 {"terms_used", r.terms_used}});
  }
  return kExitOk;
}

void write_error(std::ostream& err, std::string_view code, const std::string& message) {
  err << Json{{"schema", kSchema}, {"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirichlet series and double-series summation laboratory", "zdl"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common common;
  std::string s_text;
  auto add_s = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--s", s_text, "Complex argument, e.g. 2, 0.5+14.134725i");
    if (required) opt->required();
  };
  auto parsed_s = [&]() -> std::optional<ComplexPoint> {
    if (s_text.empty()) return std::nullopt;
    return parse_complex(s_text);
  };

  std::function<int()> action;

  std::uint64_t beta_n_max = 20;
  auto* beta = app.add_subcommand("beta", "Table of n, Omega, lambda and beta by both formulas");
  beta->add_option("--n-max", beta_n_max, "Largest n")->capture_default_str();
  beta->callback([&] { action = [&] { return cmd_beta(common, beta_n_max, out); }; });

  std::uint64_t identity_K = 1000000;
  auto* identity = app.add_subcommand("identity", "Beta series against (1 - 2^{1-s}) zeta(2s)");
  add_s(identity, true);
  identity->add_option("--K", identity_K, "Square-root index bound")->capture_default_str();
  identity->callback([&] { action = [&] { return cmd_identity(common, *parsed_s(), identity_K, out); }; });

  ModesArgs modes_args;
  auto* modes = app.add_subcommand("modes", "Row-iterated, column-iterated and Pringsheim sums");
  modes->add_option("--array", modes_args.array, "lee, cesaro, zero or ratio")->capture_default_str();
  add_s(modes, false);
  modes->add_option("--limits", modes_args.limits, "Outer limit for both iterated sums")->capture_default_str();
  modes->add_option("--K", modes_args.K, "Diagonal length (default: --limits)");
  modes->add_option("--aspect", modes_args.aspect, "Rectangle aspect a/b: rows = ceil(a K / b)")
      ->capture_default_str();
  modes->add_option("--tol", modes_args.tol, "Verdict tolerance")->capture_default_str();
  modes->add_option("--n-max", modes_args.n_max, "Sieve bound (default: the largest index needed)");
  modes->callback([&] {
    modes_args.s = parsed_s();
    action = [&] { return cmd_modes(common, modes_args, out); };
  });

  UniformityArgs uni_args;
  auto* uniformity = app.add_subcommand("uniformity", "Limit probes, uniformity scans and theorem checks");
  uniformity->add_option("--array", uni_args.array, "lee, cesaro, zero or ratio")->capture_default_str();
  add_s(uniformity, false);
  uniformity->add_option("--window", uni_args.window, "Grid size M_max = N_max")->capture_default_str();
  uniformity->add_option("--scan-n", uni_args.scan_n, "N_max of the scans (default 1e6 for lee, else --window)");
  uniformity->add_option("--p", uni_args.p, "Block length bound (default: min(256, scan N_max / 4))");
  uniformity->add_option("--tol", uni_args.tol, "Probe tolerance")->capture_default_str();
  uniformity->add_option("--threshold", uni_args.threshold, "Scan threshold")->capture_default_str();
  uniformity->add_option("--n-max", uni_args.n_max, "Sieve bound (default: the largest index needed)");
  uniformity->add_option("--grid-out", uni_args.grid_out, "Also write the grid as CSV M,N,re,im");
  uniformity->add_option("--grid-stride", uni_args.grid_stride, "Stride of the grid CSV")->capture_default_str();
  uniformity->callback([&] {
    uni_args.s = parsed_s();
    action = [&] { return cmd_uniformity(common, uni_args, out); };
  });

  ZerosArgs zero_args;
  auto* zeros = app.add_subcommand("zeros", "Critical-line zeros of eta and the exceptional zeros");
  zeros->add_option("--t-lo", zero_args.t_lo, "Scan start")->capture_default_str();
  zeros->add_option("--t-hi", zero_args.t_hi, "Scan end")->capture_default_str();
  zeros->add_option("--step", zero_args.step, "Scan step (at most 0.5)")->capture_default_str();
  zeros->add_option("--exceptional", zero_args.exceptional, "Include exceptional zeros for |k| <= this")
      ->capture_default_str();
  zeros->add_flag("--sweep", zero_args.sweep, "Add the off-line sweep at Re s = 0.6, 0.75 (json only)");
  zeros->callback([&] { action = [&] { return cmd_zeros(common, zero_args, out); }; });

  std::uint32_t eta_order = 0;
  auto* eta_cmd = app.add_subcommand("eta", "Alternating zeta function");
  add_s(eta_cmd, true);
  eta_cmd->add_option("--order", eta_order, "Acceleration order (default: by |Im s|)");
  eta_cmd->callback([&] {
    action = [&] {
      const ComplexPoint s = *parsed_s();
      const EvalResult r = eta_order == 0 ? eta(s) : eta(s, eta_order);
      return cmd_eval(common, "eta", r, complex_json(s.value()), out);
    };
  });

  std::int64_t zeta_k = 0;
  auto* zeta_cmd = app.add_subcommand("zeta", "Riemann zeta function for Re s > 0");
  add_s(zeta_cmd, false);
  zeta_cmd->add_option("--k", zeta_k, "Evaluate at the exceptional point 1 + 2k pi i / log 2 instead");
  zeta_cmd->callback([&] {
    action = [&] {
      if (zeta_k != 0) {
        const EvalResult r = zeta_at_exceptional(zeta_k);
        return cmd_eval(common, "zeta", r, complex_json(exceptional_point(zeta_k).value()), out);
      }
      const auto s = parsed_s();
      if (!s) bad_argument("zeta needs --s or --k");
      return cmd_eval(common, "zeta", zeta(*s), complex_json(s->value()), out);
    };
  });

  // Formats differ per command: tables default to csv, reports to json.
  for (auto [cmd, format] : {std::pair{beta, "csv"}, {identity, "json"}, {modes, "json"}, {uniformity, "json"},
                             {zeros, "csv"}, {eta_cmd, "json"}, {zeta_cmd, "json"}}) {
    cmd->add_option("--format", common.format, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", common.out_path, "Write the report to this file instead of stdout");
    cmd->preparse_callback([&common, format = std::string(format)](std::size_t) { common.format = format; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    write_error(err, "usage", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    write_error(err, to_string(e.code()), e.what());
    return kExitError;
  }

  try {
    return action();
  } catch (const Error& e) {
    write_error(err, to_string(e.code()), e.what());
    return kExitError;
  } catch (const std::exception& e) {
    write_error(err, "internal", e.what());
    return kExitError;
  }
}

}  // namespace zdl::cli
