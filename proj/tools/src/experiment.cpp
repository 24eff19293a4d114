#include "lue/cli/experiment.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "lue/test_function.hpp"

namespace lue::cli {

namespace {

template <class T>
T parse_integer(std::string_view key, std::string_view v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(v) + "'");
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  try {
    return parse_number(v);
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(v) + "'");
  }
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v.empty()) return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("invalid boolean for '" + std::string(key) + "': '" + std::string(v) + "'");
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Command parse_command(std::string_view s) {
  if (s == "variance") return Command::variance;
  if (s == "sweep") return Command::sweep;
  if (s == "cheb") return Command::cheb;
  if (s == "asymp") return Command::asymp;
  if (s == "clt") return Command::clt;
  if (s == "sample") return Command::sample;
  throw ConfigError("unknown command '" + std::string(s) + "'");
}

void require_positive(std::string_view key, long long v) {
  if (v < 1) throw ConfigError("'" + std::string(key) + "' must be positive");
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::variance: return "variance";
    case Command::sweep: return "sweep";
    case Command::cheb: return "cheb";
    case Command::asymp: return "asymp";
    case Command::clt: return "clt";
    case Command::sample: return "sample";
  }
  return "variance";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

std::string version_string() { return std::string("lue-lss ") + LUE_VERSION; }

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "command", "f",      "n",     "alpha",  "eps",         "N",           "M",
      "samples", "seed",   "quad-points", "format", "output", "n-list",     "limit",
      "regime",  "grid-points", "check-equivalence"};
  return keys;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "command") {
    cfg.command = parse_command(value);
  } else if (key == "f") {
    try {
      cfg.f = TestFunction::parse(value).to_string();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("invalid test function: ") + e.what());
    }
  } else if (key == "n") {
    cfg.n = parse_integer<int>(key, value);
    require_positive(key, cfg.n);
  } else if (key == "alpha") {
    cfg.alpha = parse_integer<int>(key, value);
    if (cfg.alpha < 0) throw ConfigError("'alpha' must be nonnegative");
  } else if (key == "eps") {
    cfg.eps = parse_real(key, value);
    if (!(cfg.eps > 0.0)) throw ConfigError("'eps' must be positive");
  } else if (key == "N") {
    cfg.N = parse_integer<int>(key, value);
    require_positive(key, cfg.N);
  } else if (key == "M") {
    cfg.M = parse_integer<int>(key, value);
    if (cfg.M < 0) throw ConfigError("'M' must be nonnegative");
  } else if (key == "samples") {
    cfg.samples = parse_integer<int>(key, value);
    require_positive(key, cfg.samples);
  } else if (key == "seed") {
    cfg.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "quad-points") {
    cfg.quad_points = parse_integer<int>(key, value);
    if (cfg.quad_points < 16 || cfg.quad_points > 10000)
      throw ConfigError("'quad-points' must lie in [16, 10000]");
  } else if (key == "format") {
    if (value == "json")
      cfg.output_format = OutputFormat::json;
    else if (value == "csv")
      cfg.output_format = OutputFormat::csv;
    else
      throw ConfigError("'format' must be json or csv");
  } else if (key == "output") {
    if (value.empty()) throw ConfigError("'output' must not be empty");
    cfg.output_path = std::string(value);
  } else if (key == "n-list") {
    cfg.n_list.clear();
    std::string s(value);
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
      const int v = parse_integer<int>(key, tok);
      require_positive(key, v);
      cfg.n_list.push_back(v);
    }
  } else if (key == "limit") {
    cfg.limit = parse_bool(key, value);
  } else if (key == "regime") {
    if (value != "bulk" && value != "soft" && value != "hard")
      throw ConfigError("'regime' must be bulk, soft or hard");
    cfg.regime = std::string(value);
  } else if (key == "grid-points") {
    cfg.grid_points = parse_integer<int>(key, value);
    if (cfg.grid_points < 2) throw ConfigError("'grid-points' must be at least 2");
  } else if (key == "check-equivalence") {
    cfg.check_equivalence = parse_bool(key, value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

ExperimentConfig parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"Finite-n and limiting variance of LUE linear spectral statistics", "lue-lss"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1, 1);
  std::string config_path;
  // Values are collected as text and applied through apply_setting, so flags
  // and config files share one validation path.
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
  const std::vector<std::string> value_keys = {"f", "n", "alpha", "eps", "N", "M", "samples",
                                               "seed", "quad-points", "format", "output",
                                               "n-list", "regime", "grid-points"};
  const std::vector<std::string> switch_keys = {"limit", "check-equivalence"};
  for (auto c : {Command::variance, Command::sweep, Command::cheb, Command::asymp, Command::clt,
                 Command::sample}) {
    auto* sub = app.add_subcommand(std::string(to_string(c)));
    sub->add_option("--config", config_path, "key = value configuration file");
    for (const auto& k : value_keys) sub->add_option("--" + k, values[k]);
    for (const auto& k : switch_keys) sub->add_flag("--" + k, switches[k]);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    throw EarlyExit(app.exit(e));
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(cfg, buf.str());
  }
  auto* sub = app.get_subcommands().front();
  cfg.command = parse_command(sub->get_name());
  for (const auto& k : value_keys)
    if (sub->count("--" + k) > 0) apply_setting(cfg, k, values[k]);
  for (const auto& k : switch_keys)
    if (sub->count("--" + k) > 0) apply_setting(cfg, k, switches[k] ? "true" : "false");
  return cfg;
}

}  // namespace lue::cli
