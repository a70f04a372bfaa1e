#pragma once

#include <span>
#include <vector>

#include "smclab/series.hpp"

namespace smclab {

/// prod(1 + R_j) - 1. Throws InvalidInput on empty input, DomainError if any R_j <= -1.
Rate compound_return(std::span<const Rate> returns);

/// (1 + total)^(1/p) - 1: the constant daily return that compounds to `total` in p days.
Rate geometric_mean_return(Rate total, int p);

/// Element-wise log(1 + R_j).
std::vector<double> log_returns(std::span<const Rate> returns);

/// Daily-rebalanced leveraged product: prod(max(0, 1 + beta R_j)) - 1.
/// Returns exactly -1 once any factor is wiped out.
Rate leveraged_daily_compound(std::span<const Rate> returns, double beta);

}  // namespace smclab
