#include "holderspec/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "holderspec/config.hpp"
#include "holderspec/errors.hpp"
#include "holderspec/estimators.hpp"
#include "holderspec/holder_lab.hpp"
#include "holderspec/parallel.hpp"
#include "holderspec/spectrum.hpp"
#include "holderspec/thermodynamics.hpp"

namespace holderspec {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct Options {
  std::string config;
  std::string out;
  unsigned threads = 0;
  double q_min = 0.0, q_max = 0.0, tol = 0.0;
  std::size_t q_steps = 0, depth = 0;
  std::string points;
  CLI::App* sub = nullptr;

  bool given(const char* flag) const { return sub->count(flag) > 0; }
};

class Csv {
 public:
  explicit Csv(std::ostream& os) : os_(os) {}

  void header(std::initializer_list<const char*> cols) {
    bool first = true;
    for (const char* c : cols) {
      if (!first) os_ << ',';
      os_ << c;
      first = false;
    }
    os_ << '\n';
  }

  template <class... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((write_cell(cells, first)), ...);
    os_ << '\n';
  }

 private:
  void put(const std::string& s) { os_ << s; }
  void put(const char* s) { os_ << s; }
  void put(double v) { os_ << format_number(v); }
  void put(bool b) { os_ << (b ? "true" : "false"); }
  void put(std::size_t v) { os_ << v; }
  void put(int v) { os_ << v; }
  void put(const std::optional<double>& v) {
    if (v) os_ << format_number(*v);
  }

  template <class T>
  void write_cell(const T& v, bool& first) {
    if (!first) os_ << ',';
    first = false;
    put(v);
  }

  std::ostream& os_;
};

using Command = std::function<std::string(const RunConfig&, const Options&, Csv&)>;

std::vector<double> parse_points(const std::string& text, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_number(json(item), where));
  }
  return out;
}

std::vector<double> points_for(const RunConfig& cfg, const Options& o, const char* block) {
  if (o.given("--points")) return parse_points(o.points, "--points");
  const json& b = command_block(cfg, block);
  if (!b.contains("points")) {
    throw ConfigError(std::string(block) + ".points: missing (or pass --points)");
  }
  return parse_number_list(b["points"], std::string(block) + ".points");
}

Sequence parse_sequence(const json& v, const std::string& where) {
  if (!v.is_object()) throw ConfigError(where + ": expected {\"head\": ..., \"period\": ...}");
  const std::string head = block_string(v, where, "head", "");
  const std::string period = block_string(v, where, "period", "");
  if (period.empty()) throw ConfigError(where + ".period: must be a nonempty digit string");
  try {
    return Sequence(Word::parse(head), PeriodicWord(Word::parse(period)));
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::size_t non_negative(long long v, const std::string& where) {
  if (v < 0) throw ConfigError(where + ": must be non-negative");
  return static_cast<std::size_t>(v);
}

SpectrumOptions spectrum_options(const RunConfig& cfg, const Options& o) {
  const json& b = command_block(cfg, "spectrum");
  SpectrumOptions s;
  s.q_min = o.given("--q-min") ? o.q_min : block_number(b, "spectrum", "q_min", s.q_min);
  s.q_max = o.given("--q-max") ? o.q_max : block_number(b, "spectrum", "q_max", s.q_max);
  s.q_steps = o.given("--q-steps")
                  ? o.q_steps
                  : non_negative(block_integer(b, "spectrum", "q_steps", 201), "spectrum.q_steps");
  s.depth = o.given("--depth") ? o.depth
                               : non_negative(block_integer(b, "spectrum", "depth", 0), "spectrum.depth");
  s.tol = o.given("--tol") ? o.tol : block_number(b, "spectrum", "tol", s.tol);
  s.ell_max = non_negative(block_integer(b, "spectrum", "ell_max", 10), "spectrum.ell_max");
  s.threads = o.threads;
  if (s.q_steps < 3 || !(s.q_max > s.q_min)) {
    throw ConfigError("spectrum: q grid needs q_max > q_min and at least 3 steps");
  }
  return s;
}

DistributionFunction distribution(const RunConfig& cfg) {
  const json& b = command_block(cfg, "cdf");
  DepthPolicy policy;
  policy.max_depth = non_negative(
      block_integer(b, "cdf", "max_depth", static_cast<long long>(policy.max_depth)), "cdf.max_depth");
  policy.mass_tol = block_number(b, "cdf", "mass_tol", policy.mass_tol);
  const auto table = non_negative(block_integer(b, "cdf", "table_depth", 0), "cdf.table_depth");
  return DistributionFunction(cfg.ifs, cfg.psi, policy, table);
}

HolderScales holder_scales(const RunConfig& cfg, const json& b, const std::string& name,
                           int j_min, int j_max) {
  HolderScales s;
  s.base = block_number(b, name, "base", default_scale_base(*cfg.ifs));
  s.j_min = static_cast<int>(block_integer(b, name, "j_min", j_min));
  s.j_max = static_cast<int>(block_integer(b, name, "j_max", j_max));
  s.window = non_negative(block_integer(b, name, "window", 5), name + ".window");
  return s;
}

std::string cmd_check(const RunConfig& cfg, const Options&, Csv& csv) {
  const json& b = command_block(cfg, "check");
  const auto ell = non_negative(block_integer(b, "check", "ell_max", 8), "check.ell_max");
  const auto dist_n = non_negative(block_integer(b, "check", "distortion_depth", 6), "check.distortion_depth");
  const IfsSystem& ifs = *cfg.ifs;
  const auto osc = ifs.check_osc();
  const auto diag = cohomology_diagnostic(ifs, cfg.psi, ell);
  const auto p = pressure(ifs, cfg.raw_psi, kDefaultPressureDepth);
  const double distortion = distortion_bound(cfg.psi, ifs, dist_n, 16);
  csv.header({"quantity", "value"});
  csv.row("maps", ifs.size());
  csv.row("all_affine", ifs.all_affine());
  csv.row("r_min", ifs.r_min());
  csv.row("r_max", ifs.r_max());
  csv.row("osc_satisfied", osc.satisfied);
  csv.row("osc_overlap_width", osc.overlap_width);
  csv.row("pressure_raw", p.value);
  csv.row("pressure_error_bound", p.error_bound);
  csv.row("normalized", cfg.normalized);
  csv.row("ratio_min", diag.ratio_min);
  csv.row("ratio_max", diag.ratio_max);
  csv.row("degenerate", diag.degenerate);
  csv.row("cohomologous_to_geometric", diag.cohomologous_to_geometric());
  csv.row("distortion_bound", distortion);
  return std::string("check: osc_satisfied=") + (osc.satisfied ? "true" : "false") +
         " degenerate=" + (diag.degenerate ? "true" : "false") +
         " ratio_spread=" + format_number(diag.ratio_max - diag.ratio_min);
}

std::string cmd_pressure(const RunConfig& cfg, const Options& o, Csv& csv) {
  const json& b = command_block(cfg, "pressure");
  const std::size_t depth =
      o.given("--depth") ? o.depth
                         : non_negative(block_integer(b, "pressure", "depth",
                                                      static_cast<long long>(kDefaultPressureDepth)),
                                        "pressure.depth");
  if (depth < 2) throw ConfigError("pressure.depth: need at least 2");
  checked_word_count(cfg.ifs->size(), depth);
  csv.header({"k", "pressure_k", "increment_k"});
  double prev = 0.0;
  for (std::size_t k = 1; k <= depth; ++k) {
    const double pk = pressure_at_level(*cfg.ifs, cfg.raw_psi, k);
    const double log_z = pk * static_cast<double>(k);
    csv.row(k, pk, log_z - prev);
    prev = log_z;
  }
  const auto p = pressure(*cfg.ifs, cfg.raw_psi, depth);
  return "pressure: P=" + format_number(p.value) + " error_bound=" + format_number(p.error_bound) +
         " depth_used=" + std::to_string(p.depth_used);
}

std::string cmd_beta(const RunConfig& cfg, const Options& o, Csv& csv) {
  const SpectrumOptions s = spectrum_options(cfg, o);
  const std::size_t k = resolve_depth(*cfg.ifs, cfg.psi, s.depth);
  const BetaSolver solver(*cfg.ifs, cfg.psi, k, s.threads);
  std::vector<double> beta(s.q_steps);
  const double h = (s.q_max - s.q_min) / static_cast<double>(s.q_steps - 1);
  auto q_at = [&](std::size_t i) {
    return i + 1 == s.q_steps ? s.q_max : s.q_min + h * static_cast<double>(i);
  };
  parallel_for(s.q_steps, s.threads, [&](std::size_t i) { beta[i] = solver.solve(q_at(i), s.tol); });
  csv.header({"q", "beta"});
  for (std::size_t i = 0; i < s.q_steps; ++i) csv.row(q_at(i), beta[i]);
  return "beta: " + std::to_string(s.q_steps) + " rows at pressure depth " + std::to_string(k);
}

std::string cmd_spectrum(const RunConfig& cfg, const Options& o, Csv& csv) {
  const SpectrumCurve curve = compute_spectrum(*cfg.ifs, cfg.psi, spectrum_options(cfg, o));
  csv.header({"q", "beta", "alpha", "beta_star"});
  for (const auto& s : curve.samples) csv.row(s.q, s.beta, s.alpha, s.beta_star);
  return "spectrum: alpha_minus=" + format_number(curve.endpoints.alpha_minus) +
         " alpha_plus=" + format_number(curve.endpoints.alpha_plus) +
         " alpha_zero=" + format_number(curve.alpha_zero) +
         " beta_star_max=" + format_number(curve.beta_star_max) +
         " degenerate=" + (curve.degenerate ? "true" : "false");
}

std::string cmd_endpoints(const RunConfig& cfg, const Options&, Csv& csv) {
  const json& b = command_block(cfg, "endpoints");
  const auto ell_max = non_negative(block_integer(b, "endpoints", "ell_max", 10), "endpoints.ell_max");
  if (ell_max < 1) throw ConfigError("endpoints.ell_max: need at least 1");
  csv.header({"ell_max", "alpha_minus", "alpha_plus"});
  SpectrumEndpoints e;
  for (std::size_t ell = 1; ell <= ell_max; ++ell) {
    e = endpoints(*cfg.ifs, cfg.psi, ell);
    csv.row(ell, e.alpha_minus, e.alpha_plus);
  }
  return "endpoints: alpha_minus=" + format_number(e.alpha_minus) +
         " alpha_plus=" + format_number(e.alpha_plus);
}

std::string cmd_cdf(const RunConfig& cfg, const Options& o, Csv& csv) {
  const auto pts = points_for(cfg, o, "cdf");
  const DistributionFunction F = distribution(cfg);
  std::vector<CdfValue> vals(pts.size());
  parallel_for(pts.size(), o.threads, [&](std::size_t i) { vals[i] = cdf_eval(F, pts[i]); });
  csv.header({"x", "F", "error_bound"});
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    csv.row(pts[i], vals[i].value, vals[i].error_bound);
    worst = std::max(worst, vals[i].error_bound);
  }
  return "cdf: " + std::to_string(pts.size()) + " points, max error_bound=" + format_number(worst);
}

std::string cmd_holder(const RunConfig& cfg, const Options& o, Csv& csv) {
  const json& b = command_block(cfg, "holder");
  const DistributionFunction F = distribution(cfg);
  const HolderScales scales = holder_scales(cfg, b, "holder", 1, 20);
  const std::string method_name = block_string(b, "holder", "method", "regression_min");
  HolderMethod method;
  if (method_name == "regression_min") {
    method = HolderMethod::regression_min;
  } else if (method_name == "running_min") {
    method = HolderMethod::running_min;
  } else {
    throw ConfigError("holder.method: expected regression_min or running_min");
  }

  struct Target {
    double t0;
    std::optional<double> exact;
    std::string label;
  };
  std::vector<Target> targets;
  if (o.given("--points") || b.contains("points")) {
    for (double t : points_for(cfg, o, "holder")) targets.push_back({t, std::nullopt, ""});
  }
  if (b.contains("coded_points")) {
    const json& cp = b["coded_points"];
    if (!cp.is_array()) throw ConfigError("holder.coded_points: expected an array");
    for (std::size_t i = 0; i < cp.size(); ++i) {
      const std::string where = "holder.coded_points[" + std::to_string(i) + "]";
      const Sequence omega = parse_sequence(cp[i], where);
      const double exact = omega.head().empty()
                               ? exact_exponent_at_coded_point(*cfg.ifs, cfg.psi, omega.tail())
                               : std::nan("");
      targets.push_back({cfg.ifs->coding_point(omega),
                         std::isnan(exact) ? std::nullopt : std::optional<double>(exact),
                         omega.str()});
    }
  }
  if (targets.empty()) throw ConfigError("holder: give points or coded_points");

  std::vector<HolderEstimate> est(targets.size());
  parallel_for(targets.size(), o.threads, [&](std::size_t i) {
    est[i] = holder_exponent_estimate(F, targets[i].t0, scales, method);
  });
  csv.header({"t0", "coding", "exponent", "exact", "scales_used", "outside_support"});
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    csv.row(targets[i].t0, targets[i].label, est[i].exponent, targets[i].exact,
            est[i].scale_pairs.size(), est[i].outside_support);
    lo = std::min(lo, est[i].exponent);
    hi = std::max(hi, est[i].exponent);
  }
  return "holder: " + std::to_string(targets.size()) + " points, exponents in [" +
         format_number(lo) + ", " + format_number(hi) + "]";
}

std::string cmd_coarse(const RunConfig& cfg, const Options& o, Csv& csv) {
  const json& b = command_block(cfg, "coarse");
  if (!b.contains("deltas")) throw ConfigError("coarse.deltas: missing");
  const auto deltas = parse_number_list(b["deltas"], "coarse.deltas");
  const double width = block_number(b, "coarse", "bin_width", 0.05);
  const DistributionFunction F = distribution(cfg);
  const SpectrumCurve curve = compute_spectrum(*cfg.ifs, cfg.psi, spectrum_options(cfg, o));
  double anchor = 0.0;
  if (b.contains("bin_anchor") && b["bin_anchor"] == "alpha_zero") {
    anchor = curve.alpha_zero;
  } else {
    anchor = block_number(b, "coarse", "bin_anchor", 0.0);
  }
  const auto spectra = coarse_spectrum(F, deltas, width, anchor, o.threads);
  csv.header({"delta", "alpha_lo", "alpha_hi", "alpha_mean", "count", "f", "predicted"});
  std::size_t rows = 0;
  for (const auto& cs : spectra) {
    std::vector<double> means;
    for (const auto& bin : cs.bins) means.push_back(bin.alpha_mean);
    const auto pred = hausdorff_spectrum_prediction(curve, means);
    for (std::size_t i = 0; i < cs.bins.size(); ++i) {
      const auto& bin = cs.bins[i];
      csv.row(cs.delta, bin.alpha_lo, bin.alpha_hi, bin.alpha_mean, bin.count, bin.f, pred[i].dim);
      ++rows;
    }
  }
  return "coarse: " + std::to_string(spectra.size()) + " box sizes, " + std::to_string(rows) +
         " occupied bins";
}

std::string cmd_verify_prop(const RunConfig& cfg, const Options& o, Csv& csv) {
  const json& b = command_block(cfg, "verify_prop");
  const Sequence omega = b.contains("omega") ? parse_sequence(b["omega"], "verify_prop.omega")
                                             : Sequence(PeriodicWord(Word{0}));
  const int k = static_cast<int>(block_integer(b, "verify_prop", "k", 1));
  Word tau;
  if (b.contains("tau")) {
    try {
      tau = Word::parse(block_string(b, "verify_prop", "tau", ""));
    } catch (const Error& e) {
      throw ConfigError(std::string("verify_prop.tau: ") + e.what());
    }
  } else {
    const auto ell = non_negative(block_integer(b, "verify_prop", "ell_max", 6), "verify_prop.ell_max");
    tau = find_tau_block(*cfg.ifs, cfg.psi, k, ell).tau;
  }
  const auto n_min = non_negative(block_integer(b, "verify_prop", "n_min", 1), "verify_prop.n_min");
  const auto n_max = non_negative(block_integer(b, "verify_prop", "n_max", 8), "verify_prop.n_max");
  const auto N_min = non_negative(block_integer(b, "verify_prop", "N_min", 1), "verify_prop.N_min");
  const auto N_max = non_negative(block_integer(b, "verify_prop", "N_max", 6), "verify_prop.N_max");
  const DistributionFunction F = distribution(cfg);
  const auto n_set = admissible_depths(omega, tau, n_min, n_max);
  const auto ex = ratio_scaling_experiment(F, omega, tau, k, n_set, N_min, N_max, o.threads);
  csv.header({"n", "N", "s_nN", "t_nN", "r_nN", "slope_k", "separated", "separator",
              "separator_case", "residual"});
  for (const auto& r : ex.records) {
    csv.row(r.n, r.N, r.s_nN, r.t_nN, r.r_nN, r.slope_k, r.separated, r.separator.str(),
            r.separator_case, r.residual);
  }
  return "verify-prop: tau=" + tau.str() +
         " log_slope_fit=" + format_number(ex.fitted_log_slope_slope) +
         " expected=" + format_number(ex.expected_log_slope_slope) +
         " log_r_fit=" + format_number(ex.fitted_log_r_slope) +
         " expected=" + format_number(ex.expected_log_r_slope) +
         " max_residual_spread=" + format_number(ex.max_residual_spread);
}

std::string cmd_detrend(const RunConfig& cfg, const Options& o, Csv& csv) {
  const json& b = command_block(cfg, "detrend");
  const auto pts = points_for(cfg, o, "detrend");
  const DistributionFunction F = distribution(cfg);
  const HolderScales scales = holder_scales(cfg, b, "detrend", 2, 9);
  const HolderScales est_scales = holder_scales(cfg, command_block(cfg, "holder"), "holder", 1, 20);
  const int degree = static_cast<int>(block_integer(b, "detrend", "degree", -1));
  std::optional<double> alpha_given;
  if (b.contains("alpha_hat")) alpha_given = parse_number(b["alpha_hat"], "detrend.alpha_hat");

  std::vector<DetrendResult> res(pts.size());
  parallel_for(pts.size(), o.threads, [&](std::size_t i) {
    const double a = alpha_given ? *alpha_given
                                 : holder_exponent_estimate(F, pts[i], est_scales).exponent;
    res[i] = detrend_exponent_test(F, pts[i], a, scales, degree);
  });
  csv.header({"t0", "alpha_hat", "half_width", "degree", "coefficient", "residual_exponent",
              "pass", "hypothesis_violated"});
  std::size_t passed = 0;
  for (const auto& r : res) {
    if (r.pass) ++passed;
    if (r.skipped) {
      csv.row(r.t0, r.alpha_hat, std::optional<double>{}, 0, std::optional<double>{},
              std::optional<double>{}, r.pass, r.hypothesis_violated);
      continue;
    }
    for (const auto& w : r.windows) {
      for (std::size_t d = 0; d < w.coefficients.size(); ++d) {
        csv.row(r.t0, r.alpha_hat, w.half_width, static_cast<int>(d + 1), w.coefficients[d],
                r.residual_exponent, r.pass, r.hypothesis_violated);
      }
    }
  }
  return "detrend: " + std::to_string(passed) + "/" + std::to_string(res.size()) + " points pass";
}

std::string cmd_predict_packing(const RunConfig& cfg, const Options& o, Csv& csv) {
  const json& b = command_block(cfg, "predict_packing");
  const SpectrumCurve curve = compute_spectrum(*cfg.ifs, cfg.psi, spectrum_options(cfg, o));
  const double lo = block_number(b, "predict_packing", "alpha_min", curve.endpoints.alpha_minus - 0.1);
  const double hi = block_number(b, "predict_packing", "alpha_max", curve.endpoints.alpha_plus + 0.1);
  const auto steps = non_negative(block_integer(b, "predict_packing", "alpha_steps", 101),
                                  "predict_packing.alpha_steps");
  if (steps < 2 || !(hi > lo)) throw ConfigError("predict_packing: need alpha_max > alpha_min, >= 2 steps");
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = i + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  const auto haus = hausdorff_spectrum_prediction(curve, grid);
  const auto pack = packing_spectrum_prediction(curve, grid);
  csv.header({"alpha", "hausdorff", "packing"});
  for (std::size_t i = 0; i < steps; ++i) csv.row(grid[i], haus[i].dim, pack[i].dim);
  return "predict-packing: alpha_zero=" + format_number(curve.alpha_zero) +
         " packing_plateau=" + format_number(curve.beta_star_max);
}

const std::map<std::string, std::pair<const char*, Command>>& commands() {
  static const std::map<std::string, std::pair<const char*, Command>> table{
      {"check", {"OSC, pressure and degeneracy diagnostics", cmd_check}},
      {"pressure", {"periodic-point pressure levels", cmd_pressure}},
      {"beta", {"beta(q) on the q grid", cmd_beta}},
      {"spectrum", {"beta, alpha and the Legendre transform on the q grid", cmd_spectrum}},
      {"endpoints", {"spectrum endpoints over periodic words", cmd_endpoints}},
      {"cdf", {"distribution function values", cmd_cdf}},
      {"holder", {"pointwise Hölder exponent estimates", cmd_holder}},
      {"coarse", {"coarse box-counting spectrum", cmd_coarse}},
      {"verify-prop", {"perturbed-cylinder scaling experiment", cmd_verify_prop}},
      {"detrend", {"polynomial detrend test", cmd_detrend}},
      {"predict-packing", {"predicted Hausdorff and packing spectra", cmd_predict_packing}},
  };
  return table;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multifractal analysis of self-conformal distribution functions"};
  app.require_subcommand(1);
  Options opts;
  std::map<CLI::App*, std::string> names;
  for (const auto& [name, entry] : commands()) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", opts.config, "JSON run configuration")->required();
    sub->add_option("--out", opts.out, "CSV output path (default: stdout)");
    sub->add_option("--threads", opts.threads, "worker threads (0: all)");
    sub->add_option("--q-min", opts.q_min);
    sub->add_option("--q-max", opts.q_max);
    sub->add_option("--q-steps", opts.q_steps);
    sub->add_option("--depth", opts.depth);
    sub->add_option("--tol", opts.tol);
    sub->add_option("--points", opts.points, "comma-separated evaluation points");
    names[sub] = name;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  opts.sub = sub;
  const std::string& name = names.at(sub);
  try {
    const RunConfig cfg = load_config(opts.config);
    std::string path = opts.out;
    if (path.empty() && cfg.output) path = *cfg.output;
    std::ostringstream buffer;
    Csv csv(buffer);
    const std::string summary = commands().at(name).second(cfg, opts, csv);
    if (path.empty()) {
      out << buffer.str();
      err << summary << '\n';
    } else {
      std::ofstream file(path, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("cannot open output file " + path);
      file << buffer.str();
      if (!file) throw Error("failed writing " + path);
      out << summary << '\n';
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << name << ": config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << '\n';
    return kExitComputation;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace holderspec
