#include "smclab/windows.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>

#include "smclab/error.hpp"
#include "smclab/returns.hpp"

namespace smclab {

RollPlan roll(std::size_t n, std::size_t p, std::size_t step) {
  if (p < 1) throw InvalidInput("window length must be >= 1");
  if (step < 1) throw InvalidInput("step must be >= 1");
  RollPlan plan;
  if (n < p) {
    plan.too_short = true;
    return plan;
  }
  plan.windows.reserve((n - p) / step + 1);
  for (std::size_t first = 0; first + p <= n; first += step) plan.windows.push_back({first, first + p});
  return plan;
}

namespace {

double sum_range(const std::vector<double>& v, WindowSpan w) {
  double s = 0.0;
  for (std::size_t j = w.first; j < w.last; ++j) s += v[j];
  return s;
}

// Same arithmetic as sn2(): centred 2-norm with a corrected mean.
double centred_norm(const std::vector<double>& x, WindowSpan w) {
  const double n = double(w.last - w.first);
  double mean = sum_range(x, w) / n;
  double resid = 0.0;
  for (std::size_t j = w.first; j < w.last; ++j) resid += x[j] - mean;
  mean += resid / n;
  double ss = 0.0;
  for (std::size_t j = w.first; j < w.last; ++j) ss += (x[j] - mean) * (x[j] - mean);
  return std::sqrt(ss);
}

WindowRecord make_record(const AlignedPair& pair, WindowSpan w, int p, double beta) {
  WindowRecord rec;
  rec.ticker = pair.letf.ticker();
  rec.index_ticker = pair.index.ticker();
  rec.end_date = pair.index.dates()[w.last - 1];
  rec.p = p;
  rec.beta = beta;
  return rec;
}

std::string window_warning(const AlignedPair& pair, int p, const std::string& what) {
  return pair.letf.ticker() + " p=" + std::to_string(p) + ": " + what;
}

void check_window_args(int p) {
  if (p < 1) throw InvalidInput("window length must be >= 1");
}

}  // namespace

EvaluationResult evaluate_windows(const AlignedPair& pair, int p, double beta, const WindowOptions& opt) {
  check_window_args(p);
  EvaluationResult result;
  const auto plan = roll(pair.index.size(), std::size_t(p), opt.step);
  if (plan.too_short) {
    result.warnings.push_back(window_warning(pair, p, "series shorter than the window; no windows"));
    return result;
  }

  const auto idx = pair.index.returns();
  const auto letf_log = log_returns(pair.letf.returns());
  const auto index_log = log_returns(idx);
  // log(1 + beta R_j); lev_dead marks factors 1 + beta R_j <= 0.
  std::vector<double> lev_log(idx.size());
  std::vector<char> lev_dead(idx.size(), 0);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (1.0 + beta * idx[j] > 0.0)
      lev_log[j] = std::log1p(beta * idx[j]);
    else
      lev_dead[j] = 1;
  }

  const std::size_t n = plan.windows.size();
  std::vector<std::optional<WindowRecord>> slots(n);
  std::vector<std::string> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto i = std::size_t(k);
    const WindowSpan w = plan.windows[i];
    try {
      WindowRecord rec = make_record(pair, w, p, beta);
      rec.r_index = std::expm1(sum_range(index_log, w));
      rec.r_letf = std::expm1(sum_range(letf_log, w));
      rec.r_max = r_max(rec.r_index, p, beta);
      rec.smc = smc_from_totals(rec.r_max, rec.r_letf);
      rec.sn2 = centred_norm(letf_log, w);
      const bool dead = std::any_of(lev_dead.begin() + std::ptrdiff_t(w.first),
                                    lev_dead.begin() + std::ptrdiff_t(w.last), [](char c) { return c; });
      const double lev = dead ? -1.0 : std::expm1(sum_range(lev_log, w));
      rec.cls = classify(lev - std::max(-1.0, beta * rec.r_index), opt.neutral_tol);
      slots[i] = std::move(rec);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  }

  result.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i])
      result.records.push_back(std::move(*slots[i]));
    else
      result.warnings.push_back(window_warning(
          pair, p, "window ending " + pair.index.dates()[plan.windows[i].last - 1].iso() + " skipped: " + errors[i]));
  }
  return result;
}

EvaluationResult evaluate_windows(const AlignedPair& pair, int p, const WindowOptions& opt) {
  return evaluate_windows(pair, p, pair.spec.beta, opt);
}

EvaluationResult evaluate_windows_reference(const AlignedPair& pair, int p, double beta,
                                            const WindowOptions& opt) {
  check_window_args(p);
  EvaluationResult result;
  const auto plan = roll(pair.index.size(), std::size_t(p), opt.step);
  if (plan.too_short) {
    result.warnings.push_back(window_warning(pair, p, "series shorter than the window; no windows"));
    return result;
  }
  for (const WindowSpan w : plan.windows) {
    const auto len = w.last - w.first;
    const auto index = pair.index.returns().subspan(w.first, len);
    const auto letf = pair.letf.returns().subspan(w.first, len);
    try {
      WindowRecord rec = make_record(pair, w, p, beta);
      rec.r_index = compound_return(index);
      rec.r_letf = compound_return(letf);
      rec.r_max = r_max(rec.r_index, p, beta);
      rec.smc = smc_from_totals(rec.r_max, rec.r_letf);
      rec.sn2 = sn2(letf);
      rec.cls = classify(convexity_gap(index, beta), opt.neutral_tol);
      result.records.push_back(std::move(rec));
    } catch (const Error& e) {
      result.warnings.push_back(window_warning(
          pair, p, "window ending " + pair.index.dates()[w.last - 1].iso() + " skipped: " + e.what()));
    }
  }
  return result;
}

SummaryResult summarize_by_ticker(const std::vector<WindowRecord>& records) {
  struct Group {
    std::string index_ticker;
    std::vector<double> smc, sn2;
  };
  std::map<std::pair<std::string, int>, Group> groups;
  for (const auto& r : records) {
    auto& g = groups[{r.ticker, r.p}];
    g.index_ticker = r.index_ticker;
    g.smc.push_back(r.smc);
    g.sn2.push_back(r.sn2);
  }
  SummaryResult out;
  for (const auto& [key, g] : groups) {
    if (g.smc.size() < 3) {
      out.warnings.push_back(key.first + " p=" + std::to_string(key.second) + ": only " +
                             std::to_string(g.smc.size()) + " windows; summary omitted");
      continue;
    }
    TickerSummary s;
    s.ticker = key.first;
    s.index_ticker = g.index_ticker;
    s.p = key.second;
    s.smc = summary_stats(g.smc);
    s.sn2 = summary_stats(g.sn2);
    s.smc_range_larger = s.smc.range > s.sn2.range;
    s.smc_variance_larger = s.smc.variance > s.sn2.variance;
    s.smc_skew_larger = std::abs(s.smc.skewness) > std::abs(s.sn2.skewness);
    s.smc_kurtosis_larger = s.smc.kurtosis > s.sn2.kurtosis;
    out.summaries.push_back(std::move(s));
  }
  return out;
}

std::vector<RankingRow> rank_by_mean(const std::vector<TickerMeans>& means) {
  if (means.size() < 2) throw InvalidInput("ranking needs at least two tickers");
  auto order = [&](double TickerMeans::*field) {
    std::vector<std::size_t> idx(means.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const double va = means[a].*field, vb = means[b].*field;
      if (va != vb) return va > vb;
      return means[a].ticker < means[b].ticker;
    });
    std::vector<bool> tied(idx.size(), false);
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (means[idx[i]].*field == means[idx[i - 1]].*field) tied[i] = tied[i - 1] = true;
    return std::pair{idx, tied};
  };
  const auto [by_sn2, tie_sn2] = order(&TickerMeans::mean_sn2);
  const auto [by_smc, tie_smc] = order(&TickerMeans::mean_smc);

  std::vector<RankingRow> rows(means.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    r.rank = int(i) + 1;
    r.ticker_by_sn2 = means[by_sn2[i]].ticker;
    r.ticker_by_smc = means[by_smc[i]].ticker;
    r.mean_sn2 = means[by_sn2[i]].mean_sn2;
    r.mean_smc = means[by_smc[i]].mean_smc;
    r.disagreement = r.ticker_by_sn2 != r.ticker_by_smc;
    r.tie = tie_sn2[i] || tie_smc[i];
  }
  return rows;
}

namespace {

struct ScanTask {
  std::size_t series;
  double beta;
  WindowSpan window;
};

std::vector<ScanTask> plan_scan(const std::vector<ReturnSeries>& indexes, const std::vector<double>& betas,
                                int p, std::size_t step) {
  if (p < 1) throw InvalidInput("window length must be >= 1");
  std::vector<ScanTask> tasks;
  for (std::size_t s = 0; s < indexes.size(); ++s) {
    const auto plan = roll(indexes[s].size(), std::size_t(p), step);
    for (double b : betas)
      for (const auto w : plan.windows) tasks.push_back({s, std::abs(b), w});
  }
  return tasks;
}

bool admissible(std::span<const Rate> r, double beta) {
  return std::all_of(r.begin(), r.end(), [beta](Rate x) { return std::abs(beta * x) < 1.0; });
}

Counterexample make_instance(const ReturnSeries& s, const ScanTask& t, int p, Rate lo, Rate sh) {
  return {s.ticker(), s.dates()[t.window.last - 1], t.beta, p, lo, sh};
}

}  // namespace

CounterexampleScan counterexample_search(const std::vector<ReturnSeries>& indexes,
                                         const std::vector<double>& betas, int p, std::size_t step) {
  const auto tasks = plan_scan(indexes, betas, p, step);
  // 0 = compared, not flagged; 1 = flagged; 2 = skipped.
  std::vector<char> state(tasks.size(), 0);
  std::vector<SmcPair> values(tasks.size());
  const auto count = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto i = std::size_t(k);
    const auto& t = tasks[i];
    const auto r = indexes[t.series].returns().subspan(t.window.first, t.window.last - t.window.first);
    if (!admissible(r, t.beta)) {
      state[i] = 2;
      continue;
    }
    double log_index = 0.0, log_up = 0.0, log_down = 0.0;
    for (Rate x : r) {
      log_index += std::log1p(x);
      log_up += std::log1p(t.beta * x);
      log_down += std::log1p(-t.beta * x);
    }
    const Rate r_index = std::expm1(log_index);
    const Rate up = smc_from_totals(r_max(r_index, p, t.beta), std::expm1(log_up));
    const Rate down = smc_from_totals(r_max(r_index, p, -t.beta), std::expm1(log_down));
    values[i] = {up, down};
    state[i] = long_exceeds_short(up, down) ? 1 : 0;
  }

  CounterexampleScan scan;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    ++scan.scanned;
    if (state[i] == 2) {
      ++scan.skipped;
    } else if (state[i] == 1) {
      scan.instances.push_back(
          make_instance(indexes[tasks[i].series], tasks[i], p, values[i].long_smc, values[i].short_smc));
    }
  }
  return scan;
}

CounterexampleScan counterexample_search_reference(const std::vector<ReturnSeries>& indexes,
                                                   const std::vector<double>& betas, int p,
                                                   std::size_t step) {
  CounterexampleScan scan;
  for (const auto& t : plan_scan(indexes, betas, p, step)) {
    ++scan.scanned;
    const auto& s = indexes[t.series];
    const auto r = s.returns().subspan(t.window.first, t.window.last - t.window.first);
    if (!admissible(r, t.beta)) {
      ++scan.skipped;
      continue;
    }
    std::vector<Rate> up(r.size()), down(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
      up[j] = t.beta * r[j];
      down[j] = -t.beta * r[j];
    }
    const Rate lo = smc({up, r, t.beta});
    const Rate sh = smc({down, r, -t.beta});
    if (long_exceeds_short(lo, sh)) scan.instances.push_back(make_instance(s, t, p, lo, sh));
  }
  return scan;
}

}  // namespace smclab
