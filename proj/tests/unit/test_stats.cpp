#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gexplore/rng.hpp"
#include "gexplore/stats.hpp"
#include "gexplore/types.hpp"

using namespace gexplore;
using namespace gexplore::stats;

namespace {

// Independent oracle: enumerate every sign assignment directly, computing
// the tied ranks from scratch with a different algorithm than the
// implementation (per-element counting instead of sorting).
double wilcoxon_brute_force(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> d;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (y[i] != x[i]) d.push_back(y[i] - x[i]);
    if (d.empty()) return 1.0;
    std::size_t n = d.size();

    // average rank of |d_i|: (number strictly below) + (ties + 1) / 2
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        int below = 0, tied = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::fabs(d[j]) < std::fabs(d[i])) ++below;
            if (std::fabs(d[j]) == std::fabs(d[i])) ++tied;
        }
        rank[i] = below + (tied + 1) / 2.0;
    }
    double observed = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (d[i] > 0) observed += rank[i];

    long at_least = 0;
    long total = 1L << n;
    for (long mask = 0; mask < total; ++mask) {
        double w = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1L << i)) w += rank[i];
        if (w >= observed) ++at_least;
    }
    return static_cast<double>(at_least) / static_cast<double>(total);
}

} // namespace

TEST_CASE("summarize computes the mean and the sample standard deviation") {
    auto [m1, s1] = summarize({610, 610, 610, 610, 610});
    CHECK(m1 == 610.0);
    CHECK(s1 == 0.0);

    auto [m2, s2] = summarize({1, 2, 3, 4, 5});
    CHECK(m2 == doctest::Approx(3.0));
    CHECK(s2 == doctest::Approx(std::sqrt(2.5))); // 1.5811...

    auto [m3, s3] = summarize({0, 0, 0, 0, 0});
    CHECK(m3 == 0.0);
    CHECK(s3 == 0.0);

    CHECK_THROWS_AS(summarize({1.0}), ValidationError);
    CHECK_THROWS_AS(summarize({}), ValidationError);
}

TEST_CASE("five positive differences give exactly 1/32") {
    std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> y = {4, 7, 5, 9, 11}; // all improvements, no ties
    CHECK(wilcoxon_paired_one_tail(x, y) == 0.03125);
}

TEST_CASE("five negative differences give one") {
    std::vector<double> x = {4, 7, 5, 9, 11};
    std::vector<double> y = {1, 2, 3, 4, 5};
    CHECK(wilcoxon_paired_one_tail(x, y) == 1.0);
}

TEST_CASE("equal samples give one by the zero-drop convention") {
    std::vector<double> x = {3, 3, 3};
    CHECK(wilcoxon_paired_one_tail(x, x) == 1.0);
}

TEST_CASE("the exact test agrees with brute-force enumeration") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 1 + rng.uniform(8);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            // small integers create plenty of ties and zero differences
            x[i] = static_cast<double>(rng.uniform(11)) - 5.0;
            y[i] = static_cast<double>(rng.uniform(11)) - 5.0;
        }
        double expect = wilcoxon_brute_force(x, y);
        double got = wilcoxon_paired_one_tail(x, y);
        CHECK(std::fabs(expect - got) < 1e-12);
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(wilcoxon_paired_one_tail({}, {}), ValidationError);
    CHECK_THROWS_AS(wilcoxon_paired_one_tail({1, 2}, {1}), ValidationError);
}

TEST_CASE("large samples switch to the documented normal approximation") {
    std::vector<double> x(25), y(25);
    std::iota(x.begin(), x.end(), 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + 1.0 + static_cast<double>(i % 3);
    double p_pos = wilcoxon_paired_one_tail(x, y);
    CHECK(p_pos > 0.0);
    CHECK(p_pos < 1e-4); // 25 improvements out of 25

    double p_neg = wilcoxon_paired_one_tail(y, x);
    CHECK(p_neg > 0.999); // and the opposite tail
}

TEST_CASE("chi-squared statistic of a perfectly uniform sample is zero") {
    CHECK(chi_squared_uniform({10, 10, 10, 10}) == 0.0);
    CHECK(chi_squared_uniform({20, 0}) == doctest::Approx(20.0));
    CHECK_THROWS_AS(chi_squared_uniform({}), ValidationError);
}
