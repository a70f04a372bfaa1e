#include "smclab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "smclab/convexity.hpp"
#include "smclab/data_io.hpp"
#include "smclab/error.hpp"
#include "smclab/region.hpp"
#include "smclab/simulate.hpp"
#include "smclab/vol_stats.hpp"
#include "smclab/windows.hpp"
#include "smclab/writers.hpp"

namespace fs = std::filesystem;

namespace smclab {

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct Common {
  std::string out_dir;
  std::uint64_t seed = 0;
  bool strict = false;
};

struct CurvesArgs {
  std::vector<double> betas{-3, -2, -1, 1, 2, 3};
  std::vector<std::string> ps{"21"};
  std::vector<double> xs;
  double x_min = -0.5;
  double x_max = 0.5;
  int x_steps = 100;
};

struct WindowsArgs {
  std::string data;
  std::string catalog;
  std::vector<std::string> ps{"21", "252"};
  std::size_t step = 1;
  double neutral_tol = kNeutralTolerance;
};

struct RegionArgs {
  std::vector<double> betas{2, 3};
  int resolution = 400;
  int sample_steps = 100;
  double bisect_tol = kBisectionTolerance;
};

struct CounterArgs {
  std::string data;
  std::string catalog;
  std::vector<double> betas{1, 2, 3};
  std::vector<std::string> ps{"21", "252"};
  std::size_t step = 1;
};

struct SimulateArgs {
  std::string kind = "normal";
  double mean = 0.0;
  double vol = 0.01;
  double df = 5.0;
  double phi = 0.0;
  std::size_t n = 1539;
  std::string ticker = "IDX";
  std::vector<double> betas{3, -3};
  double fee = 0.0095;
  double error_sd = 0.0;
};

struct DiagArgs {
  std::string data;
  std::string ticker;
  std::size_t max_lag = 20;
  bool squared = false;
};

fs::path output_dir(const Common& c) {
  fs::path dir = c.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("SMCLAB_OUT");
    dir = env && *env ? fs::path(env) : fs::path(".");
  }
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  return f;
}

template <class Fn>
void write_file(const fs::path& path, Fn&& fn) {
  auto f = open_output(path);
  fn(f);
  if (!f) throw Error("error writing '" + path.string() + "'");
}

std::vector<Horizon> parse_horizons(const std::vector<std::string>& ps, bool allow_infinite, int min_p) {
  std::vector<Horizon> out;
  for (const auto& s : ps) {
    if (s == "inf" || s == "infinity" || s == "-1") {
      if (!allow_infinite) throw UsageError("--p inf is only meaningful for curves");
      out.push_back(Horizon::infinite());
      continue;
    }
    std::size_t used = 0;
    int p = 0;
    try {
      p = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || p < min_p)
      throw UsageError("--p must be an integer >= " + std::to_string(min_p) + (allow_infinite ? " or inf" : "") +
                       ", got '" + s + "'");
    out.push_back(Horizon::days(p));
  }
  if (out.empty()) throw UsageError("--p needs at least one value");
  return out;
}

std::vector<int> parse_window_lengths(const std::vector<std::string>& ps) {
  std::vector<int> out;
  for (auto h : parse_horizons(ps, false, 2)) out.push_back(h.value());
  return out;
}

SeriesMap load_data(const std::string& path) {
  if (path.empty()) throw UsageError("--data is required");
  if (!fs::exists(path)) throw UsageError("no such data path '" + path + "'");
  auto data = load_returns_path(path);
  if (data.empty()) throw UsageError("no return series found in '" + path + "'");
  return data;
}

std::vector<FundSpec> catalog_or_default(const std::string& path) {
  return path.empty() ? default_catalog() : load_catalog(path);
}

int finish(const std::vector<std::string>& warnings, const Common& c, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  return !warnings.empty() && c.strict ? kExitWarnings : kExitOk;
}

int run_curves(const CurvesArgs& a, const Common& c, std::ostream& out) {
  const auto horizons = parse_horizons(a.ps, true, 1);
  std::vector<Rate> grid = a.xs;
  if (grid.empty()) {
    if (a.x_steps < 1 || !(a.x_min < a.x_max)) throw UsageError("invalid grid: need --x-min < --x-max and --x-steps >= 1");
    for (int i = 0; i <= a.x_steps; ++i) grid.push_back(a.x_min + (a.x_max - a.x_min) * i / a.x_steps);
  }
  for (Rate x : grid)
    if (!(x > -1.0)) throw UsageError("invalid grid: index returns must be > -1");
  if (a.betas.empty()) throw UsageError("--beta needs at least one value");
  const auto rows = emit_curve_family(a.betas, horizons, grid);
  const auto path = output_dir(c) / "curves.csv";
  write_file(path, [&](std::ostream& f) { write_curves_csv(f, rows); });
  out << "wrote " << rows.size() << " curve rows to " << path.string() << '\n';
  return kExitOk;
}

int run_windows(const WindowsArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto lengths = parse_window_lengths(a.ps);
  if (a.step < 1) throw UsageError("--step must be >= 1");
  const auto data = load_data(a.data);
  const auto catalog = catalog_or_default(a.catalog);

  std::vector<std::string> warnings;
  std::vector<WindowRecord> records;
  std::map<std::string, Side> sides;
  std::size_t pairs = 0;
  const WindowOptions opt{a.step, a.neutral_tol};
  for (const auto& spec : catalog) {
    const auto letf = data.find(spec.ticker);
    const auto index = data.find(spec.index_ticker);
    if (letf == data.end() || index == data.end()) {
      warnings.push_back("no data for " + (letf == data.end() ? spec.ticker : spec.index_ticker) +
                         "; fund " + spec.ticker + " skipped");
      continue;
    }
    std::optional<AlignedPair> aligned;
    try {
      aligned = align(letf->second, index->second, spec);
    } catch (const AlignmentError& e) {
      warnings.push_back(e.what());
      continue;
    }
    const AlignedPair& pair = *aligned;
    if (pair.dropped_letf || pair.dropped_index)
      warnings.push_back(spec.ticker + ": dropped " + std::to_string(pair.dropped_letf) + " fund and " +
                         std::to_string(pair.dropped_index) + " index dates during alignment");
    ++pairs;
    sides[spec.ticker] = spec.side;
    for (int p : lengths) {
      auto res = evaluate_windows(pair, p, opt);
      warnings.insert(warnings.end(), res.warnings.begin(), res.warnings.end());
      records.insert(records.end(), std::make_move_iterator(res.records.begin()),
                     std::make_move_iterator(res.records.end()));
    }
  }
  if (pairs == 0) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    throw UsageError("no catalog fund has both fund and index data");
  }

  auto summary = summarize_by_ticker(records);
  warnings.insert(warnings.end(), summary.warnings.begin(), summary.warnings.end());

  std::vector<RankingTable> tables;
  for (Side side : {Side::Long, Side::Short}) {
    for (int p : lengths) {
      std::vector<TickerMeans> means;
      for (const auto& s : summary.summaries)
        if (s.p == p && sides[s.ticker] == side) means.push_back({s.ticker, s.sn2.mean, s.smc.mean});
      if (means.size() < 2) {
        if (!means.empty())
          warnings.push_back(std::string(to_string(side)) + " p=" + std::to_string(p) +
                             ": fewer than two tickers; no ranking");
        continue;
      }
      tables.push_back({side, p, rank_by_mean(means)});
    }
  }

  const auto dir = output_dir(c);
  write_file(dir / "windows.csv", [&](std::ostream& f) { write_windows_csv(f, records); });
  write_file(dir / "windows.jsonl", [&](std::ostream& f) { write_windows_jsonl(f, records); });
  write_file(dir / "summary.csv", [&](std::ostream& f) { write_summaries_csv(f, summary.summaries); });
  write_file(dir / "rankings.csv", [&](std::ostream& f) { write_rankings_csv(f, tables); });
  out << "evaluated " << pairs << " funds, " << records.size() << " windows; outputs in " << dir.string() << '\n';
  return finish(warnings, c, err);
}

int run_region(const RegionArgs& a, const Common& c, std::ostream& out) {
  if (a.betas.empty()) throw UsageError("--beta needs at least one value");
  if (a.resolution < 2 || a.sample_steps < 1) throw UsageError("--resolution must be >= 2, --sample-steps >= 1");
  std::vector<BoundaryCurve> curves;
  for (double b : a.betas) {
    curves.push_back(equality_boundary(b, a.resolution, a.bisect_tol));
    if (!curves.back().status.empty())
      out << "beta " << format_number(b) << ": " << curves.back().status << '\n';
    else
      out << "beta " << format_number(b) << ": " << curves.back().points.size() << " boundary points"
          << (curves.back().unresolved ? ", " + std::to_string(curves.back().unresolved) + " unresolved near the edge" : "")
          << '\n';
  }
  const auto dir = output_dir(c);
  write_file(dir / "boundary.csv", [&](std::ostream& f) { write_boundary_csv(f, curves); });
  write_file(dir / "region_samples.csv", [&](std::ostream& f) {
    bool header = true;
    for (double b : a.betas) {
      if (std::abs(b) == 0.0) continue;
      write_region_samples_csv(f, b, region_samples(b, a.sample_steps), header);
      header = false;
    }
    if (header) f << "beta,r1,r2,member\n";
  });
  return kExitOk;
}

int run_counterexamples(const CounterArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto lengths = parse_window_lengths(a.ps);
  if (a.step < 1) throw UsageError("--step must be >= 1");
  if (a.betas.empty()) throw UsageError("--beta needs at least one value");
  const auto data = load_data(a.data);
  std::vector<std::string> warnings;
  std::vector<ReturnSeries> indexes;
  if (a.catalog.empty()) {
    for (const auto& [t, s] : data) indexes.push_back(s);
  } else {
    std::set<std::string> wanted;
    for (const auto& spec : load_catalog(a.catalog)) wanted.insert(spec.index_ticker);
    for (const auto& t : wanted) {
      if (auto it = data.find(t); it != data.end())
        indexes.push_back(it->second);
      else
        warnings.push_back("no data for index " + t);
    }
    if (indexes.empty()) throw UsageError("none of the catalog's indexes has data");
  }

  std::vector<Counterexample> all;
  std::ostringstream totals;
  totals << "beta,p,scanned,skipped,instances\n";
  for (int p : lengths) {
    for (double b : a.betas) {
      const auto scan = counterexample_search(indexes, {b}, p, a.step);
      totals << format_number(std::abs(b)) << ',' << p << ',' << scan.scanned << ',' << scan.skipped << ','
             << scan.instances.size() << '\n';
      out << "beta " << format_number(std::abs(b)) << " p=" << p << ": scanned " << scan.scanned << ", skipped "
          << scan.skipped << ", instances " << scan.instances.size() << '\n';
      all.insert(all.end(), scan.instances.begin(), scan.instances.end());
    }
  }
  const auto dir = output_dir(c);
  write_file(dir / "counterexamples.csv", [&](std::ostream& f) { write_counterexamples_csv(f, all); });
  write_file(dir / "counterexample_totals.csv", [&](std::ostream& f) { f << totals.str(); });
  return finish(warnings, c, err);
}

IndexKind parse_kind(const std::string& s) {
  if (s == "normal") return IndexKind::IidNormal;
  if (s == "t" || s == "student-t") return IndexKind::IidStudentT;
  if (s == "ar1") return IndexKind::Ar1;
  if (s == "constant") return IndexKind::Constant;
  throw UsageError("unknown --kind '" + s + "' (normal, t, ar1, constant)");
}

std::string fund_ticker(const std::string& index, double beta) {
  return index + (beta > 0 ? "_L" : "_S") + format_number(std::abs(beta));
}

int run_simulate(const SimulateArgs& a, const Common& c, std::ostream& out) {
  IndexModel im;
  im.kind = parse_kind(a.kind);
  im.mean = a.mean;
  im.vol = a.vol;
  im.extra = im.kind == IndexKind::Ar1 ? a.phi : a.df;
  im.seed = c.seed;
  try {
    validate(im);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  if (a.n < 1) throw UsageError("--n must be >= 1");

  SeriesMap series;
  const auto index = gen_index(im, a.n, a.ticker);
  series.emplace(a.ticker, index);
  std::vector<FundSpec> catalog;
  for (std::size_t k = 0; k < a.betas.size(); ++k) {
    const double b = a.betas[k];
    FundSpec spec{fund_ticker(a.ticker, b), "synthetic", b > 0 ? Side::Long : Side::Short, b, a.fee,
                  a.ticker, "Synthetic " + format_number(b) + "x fund", "Synthetic index " + a.ticker};
    try {
      validate(spec);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
    LetfModel lm{b, a.fee, a.error_sd, c.seed + k + 1};
    try {
      validate(lm);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
    auto synth = synth_letf(index, lm, spec.ticker);
    if (synth.terminated) out << spec.ticker << ": wiped out after " << synth.letf.size() << " days\n";
    series.emplace(spec.ticker, std::move(synth.letf));
    catalog.push_back(std::move(spec));
  }
  const auto dir = output_dir(c);
  write_file(dir / "returns.csv", [&](std::ostream& f) { write_returns(f, series); });
  write_file(dir / "catalog.csv", [&](std::ostream& f) { write_catalog(f, catalog); });
  out << "wrote " << series.size() << " series of " << a.n << " days to " << (dir / "returns.csv").string() << '\n';
  return kExitOk;
}

int run_diagnostics(const DiagArgs& a, const Common& c, std::ostream& out) {
  const auto data = load_data(a.data);
  std::string ticker = a.ticker;
  if (ticker.empty()) {
    if (data.size() != 1) throw UsageError("--ticker is required when the data holds several series");
    ticker = data.begin()->first;
  }
  const auto it = data.find(ticker);
  if (it == data.end()) throw UsageError("no data for ticker '" + ticker + "'");
  if (a.max_lag < 1 || it->second.size() <= a.max_lag)
    throw UsageError("series '" + ticker + "' needs more than --max-lag observations");
  const auto d = diagnostics(it->second.returns(), a.max_lag, a.squared);
  if (std::isnan(d.acf[1])) throw UsageError("series '" + ticker + "' is constant; autocorrelation undefined");
  const auto dir = output_dir(c);
  write_file(dir / "acf_pacf.csv", [&](std::ostream& f) { write_acf_csv(f, d); });
  write_file(dir / "qq.csv", [&](std::ostream& f) { write_qq_csv(f, d); });
  std::size_t outside = 0;
  for (std::size_t k = 1; k < d.acf.size(); ++k) outside += std::abs(d.acf[k]) >= d.band;
  out << ticker << ": " << outside << " of " << a.max_lag << " lags outside +/-" << format_number(d.band) << '\n';
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_dir, "Output directory (default $SMCLAB_OUT or .)");
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_flag("--strict", c.strict, "Exit 1 when any warning was issued");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shortfall from maximum convexity analytics for leveraged ETF returns", "smclab"};
  app.set_config("--config", "", "TOML configuration file; flags override it");
  app.require_subcommand(1);

  Common common;
  CurvesArgs curves;
  WindowsArgs windows;
  RegionArgs region;
  CounterArgs counter;
  SimulateArgs sim;
  DiagArgs diag;

  auto* c_curves = app.add_subcommand("curves", "Maximum-convexity and periodic leverage curves");
  c_curves->add_option("--beta", curves.betas, "Leverage multiples");
  c_curves->add_option("--p", curves.ps, "Window lengths in days, or inf");
  c_curves->add_option("--x", curves.xs, "Explicit period index returns (overrides the grid)");
  c_curves->add_option("--x-min", curves.x_min);
  c_curves->add_option("--x-max", curves.x_max);
  c_curves->add_option("--x-steps", curves.x_steps);
  add_common(c_curves, common);

  auto* c_windows = app.add_subcommand("windows", "Rolling-window SMC/SN2 records, summaries, rankings");
  c_windows->add_option("--data", windows.data, "Returns CSV file or directory")->required();
  c_windows->add_option("--catalog", windows.catalog, "Fund catalog CSV (default: built-in 20 funds)");
  c_windows->add_option("--p", windows.ps, "Window lengths in days");
  c_windows->add_option("--step", windows.step, "Days between window starts");
  c_windows->add_option("--neutral-tol", windows.neutral_tol, "Band around D = 0 classed as neutral");
  add_common(c_windows, common);

  auto* c_region = app.add_subcommand("region", "2-day region where long-side SMC beats short-side SMC");
  c_region->add_option("--beta", region.betas, "Leverage magnitudes");
  c_region->add_option("--resolution", region.resolution, "Grid intervals per axis for boundary tracing");
  c_region->add_option("--sample-steps", region.sample_steps, "Grid intervals per axis for membership samples");
  c_region->add_option("--bisect-tol", region.bisect_tol, "Stop bisection when |long - short| is below this");
  add_common(c_region, common);

  auto* c_counter = app.add_subcommand("counterexamples", "Windows where long-side SMC beats short-side SMC");
  c_counter->add_option("--data", counter.data, "Index returns CSV file or directory")->required();
  c_counter->add_option("--catalog", counter.catalog, "Restrict to the catalog's index tickers");
  c_counter->add_option("--beta", counter.betas, "Leverage magnitudes");
  c_counter->add_option("--p", counter.ps, "Window lengths in days");
  c_counter->add_option("--step", counter.step, "Days between window starts");
  add_common(c_counter, common);

  auto* c_sim = app.add_subcommand("simulate", "Seeded synthetic index and leveraged fund returns");
  c_sim->add_option("--kind", sim.kind, "normal, t, ar1 or constant");
  c_sim->add_option("--mean", sim.mean, "Daily log drift (the simple return itself for constant)");
  c_sim->add_option("--vol", sim.vol, "Daily log-return standard deviation");
  c_sim->add_option("--df", sim.df, "Student-t degrees of freedom");
  c_sim->add_option("--phi", sim.phi, "AR(1) coefficient");
  c_sim->add_option("--n", sim.n, "Number of days");
  c_sim->add_option("--ticker", sim.ticker, "Index ticker");
  c_sim->add_option("--beta", sim.betas, "Leverage multiples of the synthetic funds");
  c_sim->add_option("--fee", sim.fee, "Annual management fee");
  c_sim->add_option("--error-sd", sim.error_sd, "Daily tracking error standard deviation");
  add_common(c_sim, common);

  auto* c_diag = app.add_subcommand("diagnostics", "QQ, ACF and PACF of one series' log returns");
  c_diag->add_option("--data", diag.data, "Returns CSV file or directory")->required();
  c_diag->add_option("--ticker", diag.ticker, "Series to analyse");
  c_diag->add_option("--max-lag", diag.max_lag, "Largest lag");
  c_diag->add_flag("--squared", diag.squared, "Use squared log returns");
  add_common(c_diag, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (c_curves->parsed()) return run_curves(curves, common, out);
    if (c_windows->parsed()) return run_windows(windows, common, out, err);
    if (c_region->parsed()) return run_region(region, common, out);
    if (c_counter->parsed()) return run_counterexamples(counter, common, out, err);
    if (c_sim->parsed()) return run_simulate(sim, common, out);
    if (c_diag->parsed()) return run_diagnostics(diag, common, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace smclab
