#pragma once

#include <utility>
#include <vector>

namespace gexplore::stats {

// Arithmetic mean and sample (n-1) standard deviation. Throws on fewer
// than two values.
std::pair<double, double> summarize(const std::vector<double>& values);

// Paired one-tailed Wilcoxon signed-rank test with alternative "y > x".
// Zero differences are dropped and tied absolute differences receive
// average ranks. The p-value is exact (full enumeration of the 2^n sign
// assignments) for n <= 20; above that a normal approximation with
// continuity correction and tie correction is used:
//   z = (W - n(n+1)/4 - 0.5) / sqrt(n(n+1)(2n+1)/24 - sum(t^3 - t)/48)
//   p = 1 - Phi(z)
// All differences zero yields p = 1 by convention.
double wilcoxon_paired_one_tail(const std::vector<double>& x, const std::vector<double>& y);

// chi-squared statistic of observed counts against a uniform expectation.
double chi_squared_uniform(const std::vector<long>& counts);

} // namespace gexplore::stats
