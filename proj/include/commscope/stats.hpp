#pragma once

#include <cstdint>

namespace commscope::stats {

/// P[X >= x] for X ~ Hypergeometric(population, successes, draws).
double hypergeometric_upper_tail(std::uint64_t population, std::uint64_t successes,
                                 std::uint64_t draws, std::uint64_t observed);

/// Survival function of the chi-square distribution.
double chi_squared_upper_tail(double statistic, double df);

/// Survival function of the F distribution.
double fisher_f_upper_tail(double statistic, double df1, double df2);

}  // namespace commscope::stats
