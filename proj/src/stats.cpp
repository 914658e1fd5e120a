#include "gexplore/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

#include "gexplore/types.hpp"

namespace gexplore::stats {

std::pair<double, double> summarize(const std::vector<double>& values) {
    if (values.size() < 2)
        throw ValidationError("summarize requires at least two repetitions");
    double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                  static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    double stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return {mean, stddev};
}

namespace {

// Ranks of |d| with average ranks for ties, doubled so they stay integral.
std::vector<long> doubled_ranks(const std::vector<double>& abs_diffs) {
    std::size_t n = abs_diffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return abs_diffs[a] < abs_diffs[b]; });
    std::vector<long> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && abs_diffs[order[j + 1]] == abs_diffs[order[i]]) ++j;
        // positions i..j (0-based) share the average rank; doubled it is
        // (i+1 + j+1), i.e. first+last of the 1-based positions
        long doubled = static_cast<long>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = doubled;
        i = j + 1;
    }
    return ranks;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double exact_p(const std::vector<long>& ranks, long observed) {
    // distribution of the doubled positive-rank sum over all sign vectors,
    // computed by convolution
    long total = std::accumulate(ranks.begin(), ranks.end(), 0L);
    std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
    count[0] = 1.0;
    for (long r : ranks) {
        for (long s = total; s >= r; --s) count[s] += count[s - r];
    }
    double at_least = 0.0, all = 0.0;
    for (long s = 0; s <= total; ++s) {
        all += count[s];
        if (s >= observed) at_least += count[s];
    }
    return at_least / all;
}

} // namespace

double wilcoxon_paired_one_tail(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty())
        throw ValidationError("wilcoxon requires two paired samples of equal, non-zero length");
    std::vector<double> diffs;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = y[i] - x[i];
        if (d != 0.0) diffs.push_back(d); // zero differences are dropped
    }
    if (diffs.empty()) return 1.0;

    std::vector<double> abs_diffs;
    for (double d : diffs) abs_diffs.push_back(std::fabs(d));
    std::vector<long> ranks = doubled_ranks(abs_diffs);

    long w_pos = 0;
    for (std::size_t i = 0; i < diffs.size(); ++i)
        if (diffs[i] > 0) w_pos += ranks[i];

    std::size_t n = diffs.size();
    if (n <= 20) return exact_p(ranks, w_pos);

    // normal approximation with tie and continuity corrections; ranks and
    // the statistic are doubled, so the moments are doubled accordingly
    double dn = static_cast<double>(n);
    double mean = 2.0 * dn * (dn + 1.0) / 4.0;
    double var = 4.0 * dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0;
    std::map<long, long> tie_groups;
    for (long r : ranks) tie_groups[r] += 1;
    for (const auto& [r, t] : tie_groups) {
        double td = static_cast<double>(t);
        var -= 4.0 * (td * td * td - td) / 48.0;
    }
    double z = (static_cast<double>(w_pos) - mean - 1.0) / std::sqrt(var);
    return 1.0 - normal_cdf(z);
}

double chi_squared_uniform(const std::vector<long>& counts) {
    long total = std::accumulate(counts.begin(), counts.end(), 0L);
    if (counts.empty() || total == 0) throw ValidationError("chi-squared needs observations");
    double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (long c : counts) {
        double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

} // namespace gexplore::stats
