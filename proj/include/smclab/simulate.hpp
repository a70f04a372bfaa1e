#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smclab/series.hpp"

namespace smclab {

enum class IndexKind {
  IidNormal,    ///< log returns ~ N(mean, vol^2)
  IidStudentT,  ///< log returns = mean + vol * t_df scaled to unit variance
  Ar1,          ///< stationary AR(1) log returns with sd vol and coefficient `extra`
  Constant,     ///< every simple return equals `mean`
};

struct IndexModel {
  IndexKind kind = IndexKind::IidNormal;
  double mean = 0.0;
  double vol = 0.01;
  double extra = 0.0;  ///< degrees of freedom (t) or AR coefficient (ar1)
  std::uint64_t seed = 0;
};

struct LetfModel {
  double beta = 3.0;
  double annual_fee = 0.0;
  double error_sd = 0.0;
  std::uint64_t seed = 0;
};

/// Throws InvalidInput on vol <= 0, df <= 2, |phi| >= 1 or a constant <= -1.
void validate(const IndexModel& m);
void validate(const LetfModel& m);

/// Mixes a user seed with a stream label into an independent 64-bit seed
/// (splitmix64 finaliser over both).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Stream labels so the index draws and each fund's tracking errors never share numbers.
inline constexpr std::uint64_t kIndexStream = 1;
inline constexpr std::uint64_t kTrackingStream = 2;

/// n daily simple returns on weekday dates from 2000-01-03. Log-space
/// innovations keep every return > -1. Generator: boost mt19937_64.
ReturnSeries gen_index(const IndexModel& model, std::size_t n, const std::string& ticker = "IDX",
                       Date start = Date::from_ymd(2000, 1, 3));

struct SynthLetf {
  ReturnSeries letf;
  std::vector<double> errors;  ///< the eps_t drawn for each emitted day
  bool terminated = false;     ///< a day hit -100%; the series stops before it
};

/// beta R_t - annual_fee/252 + eps_t with eps ~ N(0, error_sd^2). A day at or
/// below -100% wipes the fund out: that day and everything after is dropped
/// and `terminated` is set. Throws InvalidInput if the first day is a wipe-out.
SynthLetf synth_letf(const ReturnSeries& index, const LetfModel& model, const std::string& ticker);

}  // namespace smclab
