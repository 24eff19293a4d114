#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "lue/asymptotics.hpp"
#include "lue/chebyshev.hpp"
#include "lue/cli/experiment.hpp"
#include "lue/errors.hpp"
#include "lue/kernel.hpp"
#include "lue/limitvar.hpp"
#include "lue/sampler.hpp"

namespace lue::cli {

namespace {

using Json = nlohmann::ordered_json;

// Non-finite values have no JSON number form.
Json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? Json("nan") : Json(v > 0 ? "inf" : "-inf");
}

Json config_json(const ExperimentConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["f"] = c.f;
  j["n"] = c.n;
  j["alpha"] = c.alpha;
  j["eps"] = c.eps;
  j["N"] = c.N;
  j["M"] = c.M;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["quad_points"] = c.quad_points;
  j["format"] = to_string(c.output_format);
  j["output"] = c.output_path;
  j["n_list"] = c.n_list;
  j["limit"] = c.limit;
  j["regime"] = c.regime;
  j["grid_points"] = c.grid_points;
  j["check_equivalence"] = c.check_equivalence;
  return j;
}

// RFC 4180: CRLF records, fields quoted when they contain separators or quotes.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out_ << ',';
      out_ << quote(fields[i]);
    }
    out_ << "\r\n";
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }

  std::ostream& out_;
};

std::string num(double v) { return format_number(v); }
std::string num(long long v) { return std::to_string(v); }

QuadConfig quad_config(const ExperimentConfig& c) {
  QuadConfig q;
  q.points = c.quad_points;
  return q;
}

struct Output {
  Json result;
  std::vector<std::vector<std::string>> csv;
};

Output cmd_variance(const ExperimentConfig& c) {
  const TestFunction f = TestFunction::parse(c.f);
  const KernelContext ctx(LaguerreIndex(c.n, c.alpha));
  VarianceReport r = lss_variance(ctx, f, quad_config(c));
  std::optional<double> eps_value;
  if (c.limit) {
    r.limiting_variance = v_lue(f);
    eps_value = v_lue_eps(f, c.eps);
  }
  Output o;
  o.result["n"] = r.n;
  o.result["alpha"] = r.alpha;
  o.result["finite_n_variance"] = number(r.finite_n_variance);
  o.result["mean"] = number(r.mean);
  o.result["quad_points"] = r.quad_points;
  o.result["truncation"] = number(r.truncation);
  if (r.limiting_variance) o.result["limiting_variance"] = number(*r.limiting_variance);
  if (eps_value) o.result["limiting_variance_eps"] = number(*eps_value);
  std::vector<std::string> head{"n", "alpha", "finite_n_variance", "mean", "quad_points", "truncation"};
  std::vector<std::string> row{num(static_cast<long long>(r.n)), num(static_cast<long long>(r.alpha)),
                               num(r.finite_n_variance), num(r.mean),
                               num(static_cast<long long>(r.quad_points)), num(r.truncation)};
  if (r.limiting_variance) {
    head.push_back("limiting_variance");
    row.push_back(num(*r.limiting_variance));
    head.push_back("limiting_variance_eps");
    row.push_back(num(*eps_value));
  }
  o.csv = {head, row};
  return o;
}

Output cmd_sweep(const ExperimentConfig& c) {
  if (c.n_list.empty()) throw ConfigError("sweep needs a non-empty --n-list");
  if (!std::is_sorted(c.n_list.begin(), c.n_list.end()) ||
      std::adjacent_find(c.n_list.begin(), c.n_list.end()) != c.n_list.end())
    throw ConfigError("sweep --n-list must be strictly ascending");
  const TestFunction f = TestFunction::parse(c.f);
  const double v = v_lue(f);
  Output o;
  o.result["limiting_variance"] = number(v);
  Json rows = Json::array();
  o.csv.push_back({"n", "variance", "abs_error"});
  for (int n : c.n_list) {
    const KernelContext ctx(LaguerreIndex(n, c.alpha));
    const double var = lss_variance(ctx, f, quad_config(c)).finite_n_variance;
    Json row;
    row["n"] = n;
    row["variance"] = number(var);
    row["abs_error"] = number(std::abs(var - v));
    rows.push_back(row);
    o.csv.push_back({num(static_cast<long long>(n)), num(var), num(std::abs(var - v))});
  }
  o.result["rows"] = rows;
  return o;
}

Output cmd_cheb(const ExperimentConfig& c) {
  const TestFunction f = TestFunction::parse(c.f);
  const TestFunction shifted = f.shifted(2.0);
  const ChebyshevExpansion e = expand(shifted, c.N, c.M);
  const double semi = seminorm_h_half(e);
  Output o;
  o.result["coefficients"] = Json::parse(expansion_to_json(e));
  o.result["seminorm"] = number(semi);
  o.csv.push_back({"n", "a_n"});
  for (std::size_t k = 0; k < e.coefficients.size(); ++k)
    o.csv.push_back({num(static_cast<long long>(k)), num(e.coefficients[k])});
  if (c.check_equivalence) {
    const double four_v = 4.0 * v_gue(shifted);
    const double gap = std::abs(four_v - semi) / (1.0 + semi);
    o.result["four_v_gue"] = number(four_v);
    o.result["relative_gap"] = number(gap);
  }
  return o;
}

Output cmd_asymp(const ExperimentConfig& c) {
  const Regime regime = parse_regime(c.regime);
  const auto grid = default_regime_grid(regime, c.grid_points);
  const AsymptoticReport r = asymptotic_report(regime, c.n, c.alpha, grid);
  Output o;
  o.result["regime"] = to_string(r.regime);
  o.result["n"] = r.n;
  o.result["alpha"] = r.alpha;
  o.result["max_abs_err"] = number(r.max_abs_err);
  o.result["max_rel_err"] = number(r.max_rel_err);
  o.result["grid"] = r.grid;
  o.result["direct"] = r.direct;
  o.result["approx"] = r.approx;
  if (regime == Regime::soft) {
    Json e = Json::array();
    for (double x : r.grid) e.push_back(number(soft_edge_error(c.n, c.alpha, 0, x)));
    o.result["error_scale"] = e;
  }
  o.csv.push_back({"x", "direct", "approx"});
  for (std::size_t i = 0; i < r.grid.size(); ++i)
    o.csv.push_back({num(r.grid[i]), num(r.direct[i]), num(r.approx[i])});
  return o;
}

Output cmd_clt(const ExperimentConfig& c) {
  const TestFunction f = TestFunction::parse(c.f);
  const CltReport r = clt_experiment(f, c.n, c.alpha, c.samples, c.seed);
  Output o;
  o.result["n"] = r.n;
  o.result["alpha"] = r.alpha;
  o.result["num_samples"] = r.num_samples;
  o.result["empirical_mean"] = number(r.empirical_mean);
  o.result["empirical_variance"] = number(r.empirical_variance);
  o.result["target_variance"] = number(r.target_variance);
  o.result["ks_statistic"] = number(r.ks_statistic);
  o.result["ks_threshold_1pct"] = number(r.ks_threshold_1pct);
  o.result["degenerate"] = r.degenerate;
  o.csv = {{"n", "alpha", "num_samples", "empirical_mean", "empirical_variance", "target_variance",
            "ks_statistic", "ks_threshold_1pct", "degenerate"},
           {num(static_cast<long long>(r.n)), num(static_cast<long long>(r.alpha)),
            num(static_cast<long long>(r.num_samples)), num(r.empirical_mean),
            num(r.empirical_variance), num(r.target_variance), num(r.ks_statistic),
            num(r.ks_threshold_1pct), r.degenerate ? "true" : "false"}};
  return o;
}

Output cmd_sample(const ExperimentConfig& c) {
  Output o;
  Json spectra = Json::array();
  std::vector<std::string> head{"sample", "seed"};
  for (int k = 1; k <= c.n; ++k) head.push_back("lambda_" + std::to_string(k));
  o.csv.push_back(head);
  for (int i = 0; i < c.samples; ++i) {
    const std::uint64_t s = stream_seed(c.seed, static_cast<std::uint64_t>(i));
    const SpectrumSample spec = sample_spectrum(c.n, c.alpha, s);
    spectra.push_back(spec.eigenvalues);
    std::vector<std::string> row{std::to_string(i), std::to_string(s)};
    for (double v : spec.eigenvalues) row.push_back(num(v));
    o.csv.push_back(std::move(row));
  }
  o.result["spectra"] = spectra;
  return o;
}

Output dispatch(const ExperimentConfig& c) {
  switch (c.command) {
    case Command::variance: return cmd_variance(c);
    case Command::sweep: return cmd_sweep(c);
    case Command::cheb: return cmd_cheb(c);
    case Command::asymp: return cmd_asymp(c);
    case Command::clt: return cmd_clt(c);
    case Command::sample: return cmd_sample(c);
  }
  throw ConfigError("unknown command");
}

void emit(const ExperimentConfig& c, const Output& o, std::ostream& out) {
  if (c.output_format == OutputFormat::json) {
    Json doc;
    doc["version"] = version_string();
    doc["config"] = config_json(c);
    doc["result"] = o.result;
    out << doc.dump(2) << '\n';
  } else {
    CsvWriter w(out);
    for (const auto& r : o.csv) w.row(r);
  }
}

}  // namespace

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Output o = dispatch(cfg);
    if (cfg.output_path == "-") {
      emit(cfg, o, out);
    } else {
      std::ofstream file(cfg.output_path, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file '" + cfg.output_path + "'");
      emit(cfg, o, file);
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NonConvergence& e) {
    err << "non-convergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace lue::cli
