#include "commscope/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>

namespace commscope::stats {
namespace {

double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

}  // namespace

double hypergeometric_upper_tail(std::uint64_t population, std::uint64_t successes,
                                 std::uint64_t draws, std::uint64_t observed) {
  if (successes > population || draws > population)
    throw std::invalid_argument("hypergeometric parameters exceed the population");
  const std::uint64_t lo = draws + successes > population ? draws + successes - population : 0;
  const std::uint64_t hi = std::min(successes, draws);
  if (observed <= lo) return 1.0;
  if (observed > hi) return 0.0;

  // Start from the mode and walk the pmf ratio in both directions so that the
  // reference term is the largest one and no term underflows before it matters.
  const auto mode = static_cast<std::uint64_t>(
      std::floor((static_cast<double>(draws) + 1) * (static_cast<double>(successes) + 1) /
                 (static_cast<double>(population) + 2)));
  const std::uint64_t anchor = std::clamp(mode, lo, hi);
  const double log_anchor = log_choose(successes, anchor) +
                            log_choose(population - successes, draws - anchor) -
                            log_choose(population, draws);
  const double anchor_p = std::exp(log_anchor);

  // ratio(x) = P(x+1) / P(x)
  auto up = [&](std::uint64_t x) {
    return static_cast<double>(successes - x) * static_cast<double>(draws - x) /
           (static_cast<double>(x + 1) *
            static_cast<double>(population - successes - draws + x + 1));
  };

  double tail = 0, total = 0;
  {
    double p = anchor_p;
    for (std::uint64_t x = anchor;; ++x) {
      total += p;
      if (x >= observed) tail += p;
      if (x == hi) break;
      p *= up(x);
    }
  }
  {
    double p = anchor_p;
    for (std::uint64_t x = anchor; x > lo; --x) {
      p /= up(x - 1);
      total += p;
      if (x - 1 >= observed) tail += p;
    }
  }
  // Normalizing by the summed mass removes the lgamma rounding in the anchor.
  return std::clamp(tail / total, 0.0, 1.0);
}

double chi_squared_upper_tail(double statistic, double df) {
  if (statistic <= 0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(df);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

double fisher_f_upper_tail(double statistic, double df1, double df2) {
  if (statistic <= 0) return 1.0;
  boost::math::fisher_f_distribution<double> dist(df1, df2);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace commscope::stats
