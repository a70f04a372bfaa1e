#include "smclab/simulate.hpp"

#include <cmath>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/student_t_distribution.hpp>

#include "smclab/error.hpp"
#include "smclab/vol_stats.hpp"

namespace smclab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

void validate(const IndexModel& m) {
  if (!std::isfinite(m.mean)) throw InvalidInput("index model mean must be finite");
  if (m.kind == IndexKind::Constant) {
    if (!(m.mean > -1.0)) throw InvalidInput("constant return must be > -1");
    return;
  }
  if (!(m.vol > 0.0) || !std::isfinite(m.vol)) throw InvalidInput("index model vol must be > 0");
  if (m.kind == IndexKind::IidStudentT && !(m.extra > 2.0))
    throw InvalidInput("student-t degrees of freedom must be > 2");
  if (m.kind == IndexKind::Ar1 && !(std::abs(m.extra) < 1.0))
    throw InvalidInput("AR(1) coefficient must satisfy |phi| < 1");
}

void validate(const LetfModel& m) {
  if (!std::isfinite(m.beta)) throw InvalidInput("beta must be finite");
  if (!(m.annual_fee >= 0.0)) throw InvalidInput("annual fee must be >= 0");
  if (!(m.error_sd >= 0.0)) throw InvalidInput("tracking error sd must be >= 0");
}

ReturnSeries gen_index(const IndexModel& model, std::size_t n, const std::string& ticker, Date start) {
  validate(model);
  if (n < 1) throw InvalidInput("series length must be >= 1");
  std::vector<Rate> r(n);
  boost::random::mt19937_64 rng(stream_seed(model.seed, kIndexStream));
  boost::random::normal_distribution<double> z;

  switch (model.kind) {
    case IndexKind::Constant:
      std::fill(r.begin(), r.end(), model.mean);
      break;
    case IndexKind::IidNormal:
      for (auto& v : r) v = std::expm1(model.mean + model.vol * z(rng));
      break;
    case IndexKind::IidStudentT: {
      boost::random::student_t_distribution<double> t(model.extra);
      const double unit = std::sqrt((model.extra - 2.0) / model.extra);
      for (auto& v : r) v = std::expm1(model.mean + model.vol * unit * t(rng));
      break;
    }
    case IndexKind::Ar1: {
      const double phi = model.extra;
      const double innov = model.vol * std::sqrt(1.0 - phi * phi);
      double dev = model.vol * z(rng);
      r[0] = std::expm1(model.mean + dev);
      for (std::size_t t = 1; t < n; ++t) {
        dev = phi * dev + innov * z(rng);
        r[t] = std::expm1(model.mean + dev);
      }
      break;
    }
  }
  return ReturnSeries(ticker, weekday_calendar(start, n), std::move(r));
}

SynthLetf synth_letf(const ReturnSeries& index, const LetfModel& model, const std::string& ticker) {
  validate(model);
  boost::random::mt19937_64 rng(stream_seed(model.seed, kTrackingStream));
  boost::random::normal_distribution<double> z;
  const double fee = daily_fee(model.annual_fee);

  std::vector<Rate> r;
  std::vector<double> eps;
  r.reserve(index.size());
  eps.reserve(index.size());
  bool terminated = false;
  for (Rate x : index.returns()) {
    // Always draw so that the error stream does not depend on error_sd being zero.
    const double e = model.error_sd * z(rng);
    const double v = model.beta * x - fee + e;
    if (!(v > -1.0)) {
      terminated = true;
      break;
    }
    r.push_back(v);
    eps.push_back(e);
  }
  if (r.empty()) throw InvalidInput("synthetic fund '" + ticker + "' is wiped out on its first day");
  std::vector<Date> dates(index.dates().begin(), index.dates().begin() + std::ptrdiff_t(r.size()));
  return {ReturnSeries(ticker, std::move(dates), std::move(r)), std::move(eps), terminated};
}

}  // namespace smclab
