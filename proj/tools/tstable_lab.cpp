// tstable-lab: command-line surface for the t-stable set toolkit.
//
// Subcommands: counts, saddle, profile, window, chi, experiment,
// partition-check.  Output is CSV (default) or JSON, written atomically when
// --out is given.  Every randomized command requires an explicit --seed and
// produces byte-identical output for identical seeds, independent of --jobs.
//
// Exit codes: 0 success, 2 usage error, 3 domain error, 4 oracle-scale
// refusal.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tstab/tstab.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// logging (TSTABLE_LOG in {error, warn, info, debug}; default warn)

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

LogLevel g_log_level = LogLevel::Warn;

void init_log_level() {
  const char* env = std::getenv("TSTABLE_LOG");
  if (!env) return;
  const std::string v(env);
  if (v == "error") g_log_level = LogLevel::Error;
  else if (v == "warn") g_log_level = LogLevel::Warn;
  else if (v == "info") g_log_level = LogLevel::Info;
  else if (v == "debug") g_log_level = LogLevel::Debug;
  else
    std::cerr << "tstable-lab: warning: unknown TSTABLE_LOG value '" << v
              << "' (expected error|warn|info|debug)\n";
}

template <typename... Args>
void log_at(LogLevel level, const char* tag, Args&&... args) {
  if (g_log_level < level) return;
  std::cerr << "tstable-lab: " << tag << ": ";
  (std::cerr << ... << args) << "\n";
}

#define LOG_INFO(...) log_at(LogLevel::Info, "info", __VA_ARGS__)
#define LOG_DEBUG(...) log_at(LogLevel::Debug, "debug", __VA_ARGS__)

// ---------------------------------------------------------------------------
// table model

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, long long, unsigned long long, double,
                          bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  ordered_json meta;  // optional extras for the JSON format
};

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string cell_to_csv(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, std::string>) return v;
        else return std::to_string(v);
      },
      cell);
}

ordered_json cell_to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else return ordered_json(v);
      },
      cell);
}

std::string render_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << cell_to_csv(row[c]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_json(const std::string& command, const ordered_json& params,
                        const Table& table) {
  ordered_json doc;
  doc["command"] = command;
  doc["params"] = params;
  if (!table.meta.is_null()) doc["meta"] = table.meta;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c)
      obj[table.columns[c]] = cell_to_json(row[c]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

// Atomic write: temp file in the target directory, then rename over.
void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(out_path);
  fs::path tmp(target);
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open output path: " + tmp.string());
    f << payload;
    f.flush();
    if (!f) throw UsageError("failed writing output: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw UsageError("failed to move output into place: " + ec.message());
}

// ---------------------------------------------------------------------------
// integer ranges: "a", "a..b", "a..b:step"

struct Range {
  long long lo = 0;
  long long hi = 0;
  long long step = 1;

  std::vector<long long> values() const {
    std::vector<long long> v;
    for (long long x = lo; x <= hi; x += step) v.push_back(x);
    return v;
  }
};

Range parse_range(const std::string& text) {
  Range r;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    r.lo = r.hi = std::stoll(text);
    return r;
  }
  r.lo = std::stoll(text.substr(0, dots));
  std::string rest = text.substr(dots + 2);
  const auto colon = rest.find(':');
  if (colon != std::string::npos) {
    r.step = std::stoll(rest.substr(colon + 1));
    rest = rest.substr(0, colon);
  }
  r.hi = std::stoll(rest);
  if (r.step < 1 || r.hi < r.lo)
    throw UsageError("bad range '" + text + "' (want lo..hi[:step])");
  return r;
}

// ---------------------------------------------------------------------------
// subcommand handlers

struct Options {
  int t = 0;
  double p = 0.5;
  std::string n_range = "0";
  long long k = 0;
  std::string m_range;
  std::string r_range;
  double eps = 0.2;
  int trials = 100;
  std::uint64_t seed = 0;
  int jobs = 0;
  long long budget_ms = 10000;
  long long nodes = 4096;
  std::string mode = "auto";
  std::string out;
  std::string format = "csv";
};

Table run_counts(const Options& opt, ordered_json& params) {
  const Range ms = parse_range(opt.m_range);
  params = {{"t", opt.t}, {"k", opt.k}, {"m", opt.m_range}, {"nodes", opt.nodes}};
  Table table;
  table.columns = {"t",          "k",         "m",        "exact",
                   "exact_ln",   "contour_ln", "saddle_ln", "saddle_in_window"};
  for (const long long m : ms.values()) {
    const tstab::BigCount exact = tstab::exact_coeff(opt.t, opt.k, m);
    std::vector<Cell> row{static_cast<long long>(opt.t), opt.k, m,
                          exact.to_string(), exact.ln_value()};
    const long long tk = static_cast<long long>(opt.t) * opt.k;
    if (opt.t >= 1 && m > 0 && 2 * m <= tk) {
      row.emplace_back(tstab::contour_log_coeff(opt.t, opt.k, m,
                                                static_cast<int>(opt.nodes)));
    } else {
      row.emplace_back();
    }
    if (opt.t >= 1 && opt.k >= 2 && m > 0 && 2 * m < tk) {
      const auto approx = tstab::approx_log_coeff(opt.t, opt.k, m);
      row.emplace_back(approx.log_value);
      row.emplace_back(approx.in_window);
    } else {
      row.emplace_back();
      row.emplace_back();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table run_saddle(const Options& opt, ordered_json& params) {
  const Range ms = parse_range(opt.m_range);
  params = {{"t", opt.t}, {"k", opt.k}, {"m", opt.m_range}};
  Table table;
  table.columns = {"t", "k",  "m",          "y",         "r0",
                   "s", "r0_leading", "approx_ln", "in_window"};
  const tstab::TruncExpPoly poly(opt.t);
  for (const long long m : ms.values()) {
    const double y = 2.0 * static_cast<double>(m) / static_cast<double>(opt.k);
    const auto sd = tstab::solve_saddle(poly, y);  // throws outside (0, t)
    const auto approx = tstab::approx_log_coeff(opt.t, opt.k, m);
    table.rows.push_back({static_cast<long long>(opt.t), opt.k, m, y, sd.r0,
                          sd.s, tstab::saddle_radius_leading(opt.t, y),
                          approx.log_value, approx.in_window});
  }
  return table;
}

tstab::CountMode parse_mode(const std::string& mode) {
  if (mode == "auto") return tstab::CountMode::Auto;
  if (mode == "exact") return tstab::CountMode::Exact;
  if (mode == "saddle") return tstab::CountMode::Saddle;
  throw UsageError("unknown --mode '" + mode + "' (want auto|exact|saddle)");
}

Table run_profile(const Options& opt, ordered_json& params) {
  const tstab::Params p(opt.t, opt.p);
  const auto profile = tstab::build_profile(p, opt.k, parse_mode(opt.mode));
  params = {{"t", opt.t}, {"p", opt.p}, {"k", opt.k}, {"mode", opt.mode}};
  Table table;
  table.columns = {"m", "log_f", "lambda", "is_mstar"};
  for (long long m = 0; m <= profile.max_m(); ++m) {
    std::vector<Cell> row{m, profile.log_f[static_cast<std::size_t>(m)]};
    if (m < profile.max_m())
      row.emplace_back(profile.ratio(m));
    else
      row.emplace_back();
    row.emplace_back(m == profile.m_star);
    table.rows.push_back(std::move(row));
  }
  table.meta = {{"m_star", profile.m_star},
                {"log_sum", profile.log_sum},
                {"mstar_prediction", tstab::mstar_prediction(p, opt.k)},
                {"mode_used",
                 profile.mode_used == tstab::CountMode::Exact ? "exact" : "saddle"}};
  return table;
}

Table run_window(const Options& opt, ordered_json& params) {
  const tstab::Params p(opt.t, opt.p);
  const Range ns = parse_range(opt.n_range);
  params = {{"t", opt.t}, {"p", opt.p}, {"n", opt.n_range}, {"eps", opt.eps}};
  Table table;
  table.columns = {"n", "t", "p", "eps", "alpha", "lo", "hi"};
  for (const long long n : ns.values()) {
    const auto w = tstab::stability_window(p, n, opt.eps);
    table.rows.push_back({n, static_cast<long long>(opt.t), opt.p, opt.eps,
                          w.alpha, w.lo, w.hi});
  }
  return table;
}

Table run_chi(const Options& opt, ordered_json& params) {
  const tstab::Params p(opt.t, opt.p);
  const Range ns = parse_range(opt.n_range);
  params = {{"t", opt.t}, {"p", opt.p}, {"n", opt.n_range}};
  Table table;
  table.columns = {"n", "t", "p", "alpha", "chi_lower", "chi_upper"};
  for (const long long n : ns.values()) {
    const auto [lo, hi] = tstab::chi_bounds(p, n);
    table.rows.push_back({n, static_cast<long long>(opt.t), opt.p,
                          tstab::alpha_formula(p, n), lo, hi});
  }
  return table;
}

Table run_experiment(const Options& opt, ordered_json& params) {
  const tstab::Params p(opt.t, opt.p);
  const Range ns = parse_range(opt.n_range);
  if (ns.values().size() != 1)
    throw UsageError("experiment takes a single --n");
  const int n = static_cast<int>(ns.lo);

  tstab::ExperimentConfig cfg{p,       n,        opt.trials, opt.eps,
                              opt.seed, opt.budget_ms, opt.jobs};
  LOG_INFO("experiment: n=", n, " t=", opt.t, " trials=", opt.trials,
           " jobs=", opt.jobs);
  const auto records = tstab::run_concentration_experiment(cfg);
  const auto summary = tstab::summarize(records);
  LOG_DEBUG("experiment: timeouts=", summary.timeouts,
            " support=", summary.support_lo, "..", summary.support_hi);

  params = {{"t", opt.t},       {"p", opt.p},     {"n", n},
            {"trials", opt.trials}, {"eps", opt.eps}, {"seed", opt.seed},
            {"budget_ms", opt.budget_ms}};
  Table table;
  table.columns = {"seed",        "n",         "t",         "p",
                   "alpha_exact", "alpha_heuristic", "window_lo", "window_hi",
                   "in_window",   "chi_greedy", "elapsed_ms"};
  for (const auto& rec : records) {
    std::vector<Cell> row;
    row.emplace_back(static_cast<unsigned long long>(rec.seed));
    row.emplace_back(static_cast<long long>(rec.n));
    row.emplace_back(static_cast<long long>(rec.t));
    row.emplace_back(rec.p);
    if (rec.alpha_exact)
      row.emplace_back(static_cast<long long>(*rec.alpha_exact));
    else
      row.emplace_back();
    row.emplace_back(static_cast<long long>(rec.alpha_heuristic));
    row.emplace_back(rec.window.lo);
    row.emplace_back(rec.window.hi);
    if (const auto iw = rec.in_window())
      row.emplace_back(*iw);
    else
      row.emplace_back();
    if (rec.chi_greedy)
      row.emplace_back(static_cast<long long>(*rec.chi_greedy));
    else
      row.emplace_back();
    row.emplace_back(rec.elapsed_ms);
    table.rows.push_back(std::move(row));
  }
  table.meta = {{"exact_trials", summary.exact_trials},
                {"timeouts", summary.timeouts},
                {"support_lo", summary.support_lo},
                {"support_hi", summary.support_hi},
                {"mode_value", summary.mode_value},
                {"fraction_in_window", summary.fraction_in_window()}};
  return table;
}

Table run_partition_check(const Options& opt, ordered_json& params) {
  const tstab::Params p(opt.t, opt.p);
  const Range ns = parse_range(opt.n_range);
  const Range rs = parse_range(opt.r_range);
  params = {{"t", opt.t}, {"p", opt.p}, {"n", opt.n_range}, {"r", opt.r_range}};
  Table table;
  table.columns = {"n", "r", "t", "p", "balanced_is_max", "h_balanced"};
  for (const long long n : ns.values()) {
    for (const long long r : rs.values()) {
      if (r > n) continue;
      const auto report = tstab::verify_balanced_max_report(
          p, static_cast<int>(n), static_cast<int>(r));
      table.rows.push_back({n, r, static_cast<long long>(opt.t), opt.p,
                            report.balanced_is_max && report.local_steps_ok,
                            report.h_balanced});
    }
  }
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  init_log_level();

  CLI::App app{"t-stable set laboratory: counting, formulas, experiments"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
    cmd->add_option("--format", opt.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* counts = app.add_subcommand("counts",
                                    "exact / contour / saddle coefficient counts");
  counts->add_option("--t", opt.t, "max degree t")->required();
  counts->add_option("--k", opt.k, "number of vertices k")->required();
  counts->add_option("--m", opt.m_range, "edge count m (or lo..hi[:step])")
      ->required();
  counts->add_option("--nodes", opt.nodes, "quadrature nodes (>= 64)");
  add_common(counts);

  auto* saddle = app.add_subcommand("saddle", "saddle-point data r0(y), s(y)");
  saddle->add_option("--t", opt.t)->required();
  saddle->add_option("--k", opt.k)->required();
  saddle->add_option("--m", opt.m_range, "m (or lo..hi[:step]); y = 2m/k")
      ->required();
  add_common(saddle);

  auto* profile = app.add_subcommand("profile", "weight profile f(m) and m*");
  profile->add_option("--t", opt.t)->required();
  profile->add_option("--p", opt.p)->required();
  profile->add_option("--k", opt.k)->required();
  profile->add_option("--mode", opt.mode, "auto|exact|saddle");
  add_common(profile);

  auto* window = app.add_subcommand("window", "two-point concentration window");
  window->add_option("--t", opt.t)->required();
  window->add_option("--p", opt.p)->required();
  window->add_option("--n", opt.n_range, "n (or lo..hi[:step])")->required();
  window->add_option("--eps", opt.eps)->required();
  add_common(window);

  auto* chi = app.add_subcommand("chi", "t-improper chromatic number bounds");
  chi->add_option("--t", opt.t)->required();
  chi->add_option("--p", opt.p)->required();
  chi->add_option("--n", opt.n_range, "n (or lo..hi[:step])")->required();
  add_common(chi);

  auto* experiment =
      app.add_subcommand("experiment", "Monte Carlo concentration experiment");
  experiment->add_option("--t", opt.t)->required();
  experiment->add_option("--p", opt.p)->required();
  experiment->add_option("--n", opt.n_range)->required();
  experiment->add_option("--trials", opt.trials)->required();
  experiment->add_option("--seed", opt.seed, "master seed (required)")
      ->required();
  experiment->add_option("--eps", opt.eps);
  experiment->add_option("--jobs", opt.jobs, "worker threads (default: cores)");
  experiment->add_option("--budget-ms", opt.budget_ms,
                         "deterministic per-trial search budget");
  add_common(experiment);

  auto* partition =
      app.add_subcommand("partition-check", "balanced-partition maximiser check");
  partition->add_option("--t", opt.t)->required();
  partition->add_option("--p", opt.p)->required();
  partition->add_option("--n", opt.n_range, "n (or lo..hi[:step], n <= 40)")
      ->required();
  partition->add_option("--r", opt.r_range, "part count r (or lo..hi[:step])")
      ->required();
  add_common(partition);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ordered_json params;
    Table table;
    std::string name;
    if (counts->parsed()) {
      name = "counts";
      table = run_counts(opt, params);
    } else if (saddle->parsed()) {
      name = "saddle";
      table = run_saddle(opt, params);
    } else if (profile->parsed()) {
      name = "profile";
      table = run_profile(opt, params);
    } else if (window->parsed()) {
      name = "window";
      table = run_window(opt, params);
    } else if (chi->parsed()) {
      name = "chi";
      table = run_chi(opt, params);
    } else if (experiment->parsed()) {
      name = "experiment";
      table = run_experiment(opt, params);
    } else if (partition->parsed()) {
      name = "partition-check";
      table = run_partition_check(opt, params);
    }
    const std::string payload =
        opt.format == "json" ? render_json(name, params, table) : render_csv(table);
    write_output(opt.out, payload);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "tstable-lab: error: " << e.what() << "\n";
    return 2;
  } catch (const tstab::OracleScaleError& e) {
    std::cerr << "tstable-lab: refused: " << e.what() << "\n";
    return 4;
  } catch (const tstab::PrecisionLossError& e) {
    std::cerr << "tstable-lab: numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "tstable-lab: domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "tstable-lab: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tstable-lab: internal error: " << e.what() << "\n";
    return 1;
  }
}
