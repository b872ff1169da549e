#include "cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include "spinprobe/spinprobe.hpp"

namespace spinprobe::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct HelpRequested {
  std::string text;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_plain(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse number '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("cannot parse number '" + text + "'");
  return v;
}

}  // namespace

double parse_value(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty value");
  const auto pos = text.find("pi");
  if (pos == std::string::npos) return parse_plain(text);

  std::string prefix = text.substr(0, pos);
  if (!prefix.empty() && prefix.back() == '*') prefix.pop_back();
  double factor = 1.0;
  if (prefix == "-") {
    factor = -1.0;
  } else if (prefix == "+") {
    factor = 1.0;
  } else if (!prefix.empty()) {
    factor = parse_plain(prefix);
  }
  double value = factor * std::numbers::pi;
  const std::string suffix = text.substr(pos + 2);
  if (!suffix.empty()) {
    if (suffix.front() != '/') throw std::invalid_argument("cannot parse value '" + text + "'");
    const double divisor = parse_plain(suffix.substr(1));
    if (divisor == 0.0) throw std::invalid_argument("division by zero in '" + text + "'");
    value /= divisor;
  }
  return value;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    if (token.find(':') == std::string::npos) {
      out.push_back(parse_value(token));
      continue;
    }
    std::vector<std::string> parts;
    std::stringstream ts(token);
    std::string part;
    while (std::getline(ts, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("range '" + token + "' must read start:stop:count");
    const double a = parse_value(parts[0]);
    const double b = parse_value(parts[1]);
    const double count = parse_plain(trim(parts[2]));
    if (count < 1 || count != std::floor(count)) throw std::invalid_argument("range count must be a positive integer");
    const int n = static_cast<int>(count);
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  }
  return out;
}

namespace {

const std::map<std::string, std::pair<std::string, std::string>> kDefaultGrids = {
    // command -> (theta grid, kpd grid)
    {"ground", {"0", "pi/2"}},
    {"scan-theta", {"-0.5pi,0,0.3pi", "pi/2"}},
    {"probe-map", {"0", "pi/64:pi:64"}},
    {"witness-scan", {"-0.5pi,0.102pi,0.3pi", "pi/32:pi/2:32"}},
    {"hubbard-map", {"0", "pi/2"}},
};

std::vector<double> grid_option(const std::string& field, const std::string& text) {
  try {
    return parse_grid(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

double value_option(const std::string& field, const std::string& text) {
  try {
    return parse_value(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

int threads_from_environment() {
  const char* env = std::getenv("FARADAY_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    const int n = std::stoi(env);
    if (n < 1) throw ConfigError("threads", "FARADAY_THREADS must be a positive integer");
    return n;
  } catch (const std::logic_error&) {
    throw ConfigError("threads", std::string("FARADAY_THREADS is not an integer: '") + env + "'");
  }
}

const std::vector<std::pair<std::string, std::string>>& commands() {
  static const std::vector<std::pair<std::string, std::string>> list{
      {"ground", "ground state, order parameters and G_z matrix"},
      {"scan-theta", "phase detectors C_eps, D_eps and order parameters over a theta grid"},
      {"probe-map", "epsilon(kpd, alpha) and homodyne statistics over theta x kpd x alpha"},
      {"witness-scan", "collective-spin entanglement witness over theta x kpd x alpha"},
      {"hubbard-map", "Bose-Hubbard couplings to (theta, J)"}};
  return list;
}

// Entries of the --config file as "--key=value" arguments: top-level keys plus
// the section named after the active command. They are placed ahead of the
// real arguments, so flags given on the command line win.
std::vector<std::string> config_arguments(const std::vector<std::string>& args) {
  std::string path;
  std::string command;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (command.empty()) {
      for (const auto& c : commands())
        if (a == c.first) command = a;
    }
    if (a == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::ParseError& e) {
    throw ConfigError("config", e.what());
  }
  std::vector<std::string> out;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    const bool applies = item.parents.empty() || (item.parents.size() == 1 && item.parents.front() == command);
    if (!applies) continue;
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
    if (item.name == "product-state") {
      if (CLI::detail::to_flag_value(value.empty() ? "true" : value) > 0) out.push_back("--product-state");
      continue;
    }
    out.push_back("--" + item.name + "=" + value);
  }
  return out;
}

}  // namespace

RunConfig parse_command_line(const std::vector<std::string>& args) {
  CLI::App app{"Spin-1 chain ground states and polarization-spectroscopy signals", "spinprobe"};
  app.require_subcommand(1, 1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file; a [command] section applies to that command; flags override it");

  std::string theta_text;
  std::string kpd_text;
  std::string alpha_text = "0";
  std::string boundary_text = "open";
  std::string format_text = "csv";
  std::string kappa_text = "1";
  std::string sigma_text = "0";
  std::string u0_text = "1";
  std::string u2_text = "0";
  std::string t_text = "0.1";
  int threads = 0;

  RunConfig cfg;
  CLI::Option* theta_opt = app.add_option("--theta", theta_text, "theta value or grid (radians; '0.3pi', 'pi/4', 'a:b:n')");
  app.add_option("--length", cfg.length, "chain length L (2..16)");
  app.add_option("--boundary", boundary_text, "open | periodic");
  CLI::Option* kpd_opt = app.add_option("--kpd-grid", kpd_text, "probe wavevector grid k_P d");
  app.add_option("--alpha-grid", alpha_text, "standing-wave shift grid a/d");
  app.add_option("--kappa", kappa_text, "light-matter coupling");
  app.add_option("--sigma", sigma_text, "Gaussian Wannier width sigma/d (0 = delta functions)");
  app.add_option("--input-variance", cfg.input_variance, "input quadrature variance");
  app.add_option("--output", cfg.output, "output file, '-' for stdout");
  app.add_option("--format", format_text, "csv | json");
  app.add_option("--seed", cfg.seed, "seed for Lanczos start vectors and product states");
  app.add_option("--threads", threads, "worker threads (falls back to FARADAY_THREADS, then 1)");
  app.add_flag("--product-state", cfg.product_state, "witness-scan on a random product state instead of the ground state");
  app.add_option("--u0", u0_text, "Hubbard repulsion U0 (hubbard-map)");
  app.add_option("--u2", u2_text, "spin-dependent interaction U2 (hubbard-map)");
  app.add_option("--t", t_text, "tunneling t (hubbard-map)");

  for (const auto& [name, help] : commands()) {
    app.add_subcommand(name, help)->fallthrough();
  }

  std::vector<std::string> ordered = config_arguments(args);
  if (args.size() > 1) ordered.insert(ordered.end(), args.begin() + 1, args.end());
  std::vector<std::string> reversed(ordered.rbegin(), ordered.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError("command-line", e.what());
  }

  cfg.command = app.get_subcommands().front()->get_name();
  const auto& defaults = kDefaultGrids.at(cfg.command);
  cfg.thetas = grid_option("theta", theta_opt->count() > 0 ? theta_text : defaults.first);
  cfg.kpd_grid = grid_option("kpd-grid", kpd_opt->count() > 0 ? kpd_text : defaults.second);
  cfg.alpha_grid = grid_option("alpha-grid", alpha_text);
  cfg.kappa = value_option("kappa", kappa_text);
  cfg.sigma = value_option("sigma", sigma_text);
  cfg.u0 = value_option("u0", u0_text);
  cfg.u2 = value_option("u2", u2_text);
  cfg.t_hop = value_option("t", t_text);
  try {
    cfg.boundary = parse_boundary(boundary_text);
  } catch (const DomainError& e) {
    throw ConfigError("boundary", e.what());
  }
  if (format_text == "csv") {
    cfg.format = OutputFormat::Csv;
  } else if (format_text == "json") {
    cfg.format = OutputFormat::Json;
  } else {
    throw ConfigError("format", "must be 'csv' or 'json', got '" + format_text + "'");
  }
  cfg.threads = threads > 0 ? threads : threads_from_environment();
  if (threads < 0) throw ConfigError("threads", "must be positive");
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (cfg.command == "hubbard-map") {
    try {
      hubbard_to_spin({cfg.u0, cfg.u2, cfg.t_hop});
    } catch (const DomainError& e) {
      throw ConfigError("u0", e.what());
    }
    return;
  }
  if (cfg.thetas.empty()) throw ConfigError("theta", "grid is empty");
  for (double theta : cfg.thetas) {
    try {
      ModelParams(theta, cfg.length, cfg.boundary);
    } catch (const DomainError& e) {
      throw ConfigError(std::string(e.what()).find("theta") != std::string::npos ? "theta" : "length", e.what());
    } catch (const SizeGuardError& e) {
      throw ConfigError("length", e.what());
    }
  }
  const bool uses_probe = cfg.command == "probe-map" || cfg.command == "witness-scan";
  if (uses_probe) {
    if (cfg.kpd_grid.empty()) throw ConfigError("kpd-grid", "grid is empty");
    if (cfg.alpha_grid.empty()) throw ConfigError("alpha-grid", "grid is empty");
    for (double k : cfg.kpd_grid) {
      if (!(k > 0.0)) throw ConfigError("kpd-grid", "modulated signals need kpd > 0");
    }
  }
  if (!(cfg.kappa > 0.0)) throw ConfigError("kappa", "must be positive");
  if (!(cfg.sigma >= 0.0)) throw ConfigError("sigma", "must be >= 0");
  if (!(cfg.input_variance > 0.0)) throw ConfigError("input-variance", "must be positive");
  if (cfg.threads < 1) throw ConfigError("threads", "must be positive");
  if (cfg.product_state) {
    if (cfg.command != "witness-scan") throw ConfigError("product-state", "only valid for witness-scan");
    if (cfg.length > 10) throw ConfigError("length", "product-state mode needs L <= 10 (full-space vectors)");
  }
  if (cfg.output.empty()) throw ConfigError("output", "path is empty");
}

namespace {

using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string q = "\"";
          for (char ch : v) {
            if (ch == '"') q += '"';
            q += ch;
          }
          return q + "\"";
        }
      },
      c);
}

nlohmann::json json_cell(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, c);
}

nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = cfg.command;
  j["theta"] = cfg.thetas;
  j["length"] = cfg.length;
  j["boundary"] = std::string(to_string(cfg.boundary));
  j["kpd_grid"] = cfg.kpd_grid;
  j["alpha_grid"] = cfg.alpha_grid;
  j["kappa"] = cfg.kappa;
  j["sigma"] = cfg.sigma;
  j["input_variance"] = cfg.input_variance;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["product_state"] = cfg.product_state;
  if (cfg.command == "hubbard-map") {
    j["u0"] = cfg.u0;
    j["u2"] = cfg.u2;
    j["t"] = cfg.t_hop;
  }
  return j;
}

void write_table(const Table& t, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == OutputFormat::Csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << '\n';
    }
    return;
  }
  nlohmann::json doc;
  doc["config"] = config_echo(cfg);
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = json_cell(row[i]);
    doc["rows"].push_back(std::move(r));
  }
  os << doc.dump(2) << '\n';
}

// Runs fn(i) for i in [0, n) on up to `threads` workers; results are stored by
// index, so output order never depends on scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct StateData {
  std::optional<GroundStateReport> report;
  std::optional<StateVector> state;
  std::optional<CorrelationSet> corr;
  std::string error;
  bool numerical_failure = false;
};

// Ground states keyed by theta; L and boundary are fixed for one run.
std::map<double, StateData> solve_states(const RunConfig& cfg, Transverse transverse) {
  std::vector<double> unique;
  for (double t : cfg.thetas)
    if (std::find(unique.begin(), unique.end(), t) == unique.end()) unique.push_back(t);

  std::vector<StateData> results(unique.size());
  parallel_for(unique.size(), cfg.threads, [&](std::size_t i) {
    StateData& d = results[i];
    try {
      if (cfg.product_state) {
        d.state = random_product_state(cfg.length, cfg.seed);
      } else {
        SolverOptions opts;
        opts.seed = cfg.seed;
        d.report = ground_state_global(ModelParams(unique[i], cfg.length, cfg.boundary), opts);
        d.state = d.report->state;
      }
      d.corr = correlations(*d.state, transverse);
    } catch (const ConvergenceError& e) {
      d.error = e.what();
      d.numerical_failure = true;
    } catch (const Error& e) {
      d.error = e.what();
      d.numerical_failure = true;
    }
  });

  std::map<double, StateData> out;
  for (std::size_t i = 0; i < unique.size(); ++i) out.emplace(unique[i], std::move(results[i]));
  return out;
}

template <typename F>
std::pair<double, std::string> guarded(F&& f) {
  try {
    return {f(), {}};
  } catch (const Error& e) {
    return {kNaN, e.what()};
  }
}

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out;
  for (const auto& e : errors) {
    if (e.empty()) continue;
    if (!out.empty()) out += "; ";
    out += e;
  }
  return out;
}

std::pair<int, int> string_pair(int length) {
  const int m = length / 4;
  return {m, length - 1 - m};
}

double string_order_widest(const StateVector& s) {
  const auto [m, n] = string_pair(s.basis().length());
  return string_order(s, m, n, StringConvention::Interior);
}

double dimer_order_center(const StateVector& s, double theta) {
  return dimer_order(s, theta, s.basis().length() / 2 - 1);
}

ExitStatus run_ground(const RunConfig& cfg, Table& t) {
  t.columns = {"theta", "field", "m", "n", "value"};
  const auto states = solve_states(cfg, Transverse::Skip);
  ExitStatus status = ExitStatus::Success;
  for (double theta : cfg.thetas) {
    const StateData& d = states.at(theta);
    if (d.numerical_failure) {
      t.rows.push_back({theta, std::string("error"), std::string(), std::string(), d.error});
      status = ExitStatus::NumericalFailure;
      continue;
    }
    const GroundStateReport& r = *d.report;
    const auto scalar = [&](const std::string& field, Cell v) {
      t.rows.push_back({theta, field, std::string(), std::string(), std::move(v)});
    };
    scalar("energy", r.energy);
    scalar("sector", static_cast<long long>(r.sector));
    scalar("degeneracy", static_cast<long long>(r.degeneracy));
    scalar("degeneracy_saturated", r.degeneracy_saturated);
    scalar("residual", r.residual);
    scalar("gap_estimate", r.gap.value_or(kNaN));
    int extreme = 0;
    for (int s : r.degenerate_sectors) extreme = std::max(extreme, std::abs(s));
    scalar("ferro_jz_max", std::abs(ferromagnetic_signal(extreme, cfg.length)));
    scalar("dimer_order", cfg.length >= 3 ? guarded([&] { return dimer_order_center(*d.state, theta); }).first : kNaN);
    scalar("string_order", cfg.length >= 3 ? guarded([&] { return string_order_widest(*d.state); }).first : kNaN);
    for (int m = 0; m < cfg.length; ++m) {
      t.rows.push_back({theta, std::string("sz_mean"), static_cast<long long>(m), std::string(), d.corr->sz_mean(m)});
    }
    for (int m = 0; m < cfg.length; ++m)
      for (int n = 0; n < cfg.length; ++n)
        t.rows.push_back({theta, std::string("gz"), static_cast<long long>(m), static_cast<long long>(n),
                          d.corr->zz_connected(m, n)});
  }
  return status;
}

ExitStatus run_scan_theta(const RunConfig& cfg, Table& t) {
  t.columns = {"theta", "phase_label", "c_epsilon", "d_epsilon", "dimer_order", "string_order", "gap_estimate", "errors"};
  const auto states = solve_states(cfg, Transverse::Skip);
  for (double theta : cfg.thetas) {
    const StateData& d = states.at(theta);
    const std::string label(to_string(classify_phase(theta).label));
    if (d.numerical_failure) {
      t.rows.push_back({theta, label, kNaN, kNaN, kNaN, kNaN, kNaN, d.error});
      continue;
    }
    const auto c = guarded([&] { return c_epsilon(*d.corr); });
    const auto de = guarded([&] { return d_epsilon(*d.corr); });
    const auto dim = guarded([&] { return dimer_order_center(*d.state, theta); });
    const auto so = guarded([&] { return string_order_widest(*d.state); });
    const std::string cap = d.report->degeneracy_saturated ? "degeneracy cap reached; gap unknown" : "";
    t.rows.push_back({theta, label, c.first, de.first, dim.first, so.first, d.report->gap.value_or(kNaN),
                      join_errors({cap, c.second, de.second, dim.second, so.second})});
  }
  return ExitStatus::Success;
}

ExitStatus run_probe_map(const RunConfig& cfg, Table& t) {
  t.columns = {"theta", "kpd", "alpha", "epsilon", "mean_jz", "x_out_mean", "x_out_variance", "errors"};
  const auto states = solve_states(cfg, Transverse::Skip);
  for (double theta : cfg.thetas) {
    const StateData& d = states.at(theta);
    for (double kpd : cfg.kpd_grid) {
      for (double alpha : cfg.alpha_grid) {
        if (d.numerical_failure) {
          t.rows.push_back({theta, kpd, alpha, kNaN, kNaN, kNaN, kNaN, d.error});
          continue;
        }
        ProbeConfig p{kpd, alpha, cfg.kappa, cfg.sigma, cfg.input_variance};
        std::string error;
        const double mz = max_abs_magnetization(*d.corr);
        if (mz > 1e-8) error = "nonzero magnetization (max |<S_zm>| = " + format_double(mz) + ")";
        try {
          const SignalPoint s = epsilon(*d.corr, p);
          t.rows.push_back({theta, kpd, alpha, s.epsilon, s.mean_jz, s.x_out_mean, s.x_out_variance, error});
        } catch (const Error& e) {
          t.rows.push_back({theta, kpd, alpha, kNaN, kNaN, kNaN, kNaN, join_errors({error, e.what()})});
        }
      }
    }
  }
  return ExitStatus::Success;
}

ExitStatus run_witness_scan(const RunConfig& cfg, Table& t) {
  t.columns = {"theta", "kpd", "alpha", "v_value", "bound", "w_value", "detected", "errors"};
  const auto states = solve_states(cfg, Transverse::Compute);
  for (double theta : cfg.thetas) {
    const StateData& d = states.at(theta);
    for (double kpd : cfg.kpd_grid) {
      for (double alpha : cfg.alpha_grid) {
        if (d.numerical_failure) {
          t.rows.push_back({theta, kpd, alpha, kNaN, kNaN, kNaN, false, d.error});
          continue;
        }
        ProbeConfig p{kpd, alpha, cfg.kappa, cfg.sigma, cfg.input_variance};
        try {
          const WitnessReport w = witness_value(*d.corr, p, 1.0);
          t.rows.push_back({theta, kpd, alpha, w.v_value, w.bound, w.w_value, w.detected, std::string()});
        } catch (const Error& e) {
          t.rows.push_back({theta, kpd, alpha, kNaN, kNaN, kNaN, false, std::string(e.what())});
        }
      }
    }
  }
  return ExitStatus::Success;
}

ExitStatus run_hubbard_map(const RunConfig& cfg, Table& t) {
  t.columns = {"u0", "u2", "t", "theta", "j_scale", "phase_label", "transition_point"};
  const SpinCouplings s = hubbard_to_spin({cfg.u0, cfg.u2, cfg.t_hop});
  const PhaseClassification ph = classify_phase(s.theta);
  t.rows.push_back({cfg.u0, cfg.u2, cfg.t_hop, s.theta, s.j_scale, std::string(to_string(ph.label)), ph.transition_point});
  return ExitStatus::Success;
}

}  // namespace

ExitStatus execute(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.command != "hubbard-map" && !cfg.product_state) {
    const ModelParams probe(cfg.thetas.front(), cfg.length, cfg.boundary);
    if (probe.warning()) log << "warning: " << *probe.warning() << '\n';
  }

  Table table;
  ExitStatus status = ExitStatus::Success;
  if (cfg.command == "ground") {
    status = run_ground(cfg, table);
  } else if (cfg.command == "scan-theta") {
    status = run_scan_theta(cfg, table);
  } else if (cfg.command == "probe-map") {
    status = run_probe_map(cfg, table);
  } else if (cfg.command == "witness-scan") {
    status = run_witness_scan(cfg, table);
  } else if (cfg.command == "hubbard-map") {
    status = run_hubbard_map(cfg, table);
  } else {
    throw ConfigError("command", "unknown command '" + cfg.command + "'");
  }

  if (cfg.output == "-") {
    write_table(table, cfg, out);
  } else {
    std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("output", "cannot open '" + cfg.output + "' for writing");
    write_table(table, cfg, file);
    if (!file) throw ConfigError("output", "write to '" + cfg.output + "' failed");
  }
  return status;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log) {
  try {
    const RunConfig cfg = parse_command_line(args);
    return static_cast<int>(execute(cfg, out, log));
  } catch (const HelpRequested& h) {
    out << h.text;
    return static_cast<int>(ExitStatus::Success);
  } catch (const ConfigError& e) {
    log << "configuration error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::ConfigurationError);
  } catch (const Error& e) {
    log << "numerical failure: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::NumericalFailure);
  }
}

}  // namespace spinprobe::cli
