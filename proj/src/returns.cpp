#include "smclab/returns.hpp"

#include <cmath>

#include "smclab/error.hpp"

namespace smclab {

namespace {

// prod(1 + scale * r) - 1 via a sum of logs. Every factor must be positive.
double compound_scaled(std::span<const Rate> returns, double scale) {
  double log_sum = 0.0;
  for (Rate r : returns) log_sum += std::log1p(scale * r);
  return std::expm1(log_sum);
}

void require_returns(std::span<const Rate> returns) {
  if (returns.empty()) throw InvalidInput("empty return sequence");
  for (Rate r : returns)
    if (!(r > -1.0)) throw DomainError("return <= -1");
}

}  // namespace

Rate compound_return(std::span<const Rate> returns) {
  require_returns(returns);
  return compound_scaled(returns, 1.0);
}

Rate geometric_mean_return(Rate total, int p) {
  if (p < 1) throw InvalidInput("p must be >= 1");
  if (!(total > -1.0)) throw DomainError("total return <= -1");
  return std::expm1(std::log1p(total) / p);
}

std::vector<double> log_returns(std::span<const Rate> returns) {
  std::vector<double> out;
  out.reserve(returns.size());
  for (Rate r : returns) {
    if (!(r > -1.0)) throw DomainError("return <= -1");
    out.push_back(std::log1p(r));
  }
  return out;
}

Rate leveraged_daily_compound(std::span<const Rate> returns, double beta) {
  if (returns.empty()) throw InvalidInput("empty return sequence");
  for (Rate r : returns)
    if (!(1.0 + beta * r > 0.0)) return -1.0;
  return compound_scaled(returns, beta);
}

}  // namespace smclab
