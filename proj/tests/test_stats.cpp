#include "oracles.hpp"
#include "wepkit/core.hpp"
#include "wepkit/stats.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace wepkit;
using namespace wepkit::stats;

namespace {

std::vector<double> draw(std::mt19937_64& rng, std::size_t n, int levels) {
    std::uniform_int_distribution<int> d(0, levels - 1);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

// Normal approximation with tie and continuity corrections, from first principles.
double normal_p(const std::vector<double>& a, const std::vector<double>& b) {
    const double n1 = a.size(), n2 = b.size(), n = n1 + n2;
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::map<double, int> counts;
    for (double x : pooled) ++counts[x];
    double ties = 0.0;
    for (const auto& [v, t] : counts) ties += static_cast<double>(t) * t * t - t;
    const double u = std::min(oracle::pair_count_u(a, b), n1 * n2 - oracle::pair_count_u(a, b));
    const double sigma = std::sqrt(n1 * n2 / 12.0 * ((n + 1) - ties / (n * (n - 1))));
    const double z = std::max(std::abs(u - n1 * n2 / 2) - 0.5, 0.0) / sigma;
    return 2.0 * (1.0 - oracle::normal_cdf(z));
}

// Permutation p-value over every split of the pooled sample.
double permutation_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n = pooled.size(), n1 = a.size();
    const double mean = static_cast<double>(n1) * static_cast<double>(b.size()) / 2.0;
    const double observed = std::abs(oracle::pair_count_u(a, b) - mean);
    std::size_t extreme = 0, total = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != n1) continue;
        std::vector<double> x, y;
        for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? x : y).push_back(pooled[i]);
        ++total;
        if (std::abs(oracle::pair_count_u(x, y) - mean) >= observed - 1e-9) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("U equals pair counting on random inputs up to 8x8") {
    std::mt19937_64 rng(12345);
    int cases = 0;
    for (int rep = 0; rep < 20; ++rep) {
        for (std::size_t n1 = 1; n1 <= 8; ++n1) {
            for (std::size_t n2 = 1; n2 <= 8; ++n2) {
                const auto a = draw(rng, n1, 6);
                const auto b = draw(rng, n2, 6);
                const double ua = oracle::pair_count_u(a, b);
                const auto r = mann_whitney_u(a, b);
                CHECK(u_statistic_a(a, b) == doctest::Approx(ua));
                CHECK(r.u_a == doctest::Approx(ua));
                CHECK(r.statistic == doctest::Approx(std::min(ua, n1 * n2 - ua)));
                ++cases;
            }
        }
    }
    CHECK(cases >= 1000);
}

TEST_CASE("U and p are symmetric; the signed effect flips") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto a = draw(rng, 1 + i % 9, 10);
        const auto b = draw(rng, 1 + (i / 9) % 9, 10);
        const auto ab = mann_whitney_u(a, b);
        const auto ba = mann_whitney_u(b, a);
        CHECK(ab.statistic == doctest::Approx(ba.statistic));
        CHECK(ab.p_value == doctest::Approx(ba.p_value));
        CHECK(ab.effect_size == doctest::Approx(ba.effect_size));
        CHECK(ab.signed_effect == doctest::Approx(-ba.signed_effect));
    }
}

TEST_CASE("normal-approximation p matches an independent computation") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        const auto a = draw(rng, 5 + i % 20, 8);
        const auto b = draw(rng, 5 + (i * 7) % 30, 8);
        if (std::ranges::all_of(a, [&](double x) { return x == a[0]; }) &&
            std::ranges::all_of(b, [&](double x) { return x == a[0]; })) {
            continue;
        }
        CHECK(mann_whitney_u(a, b).p_value == doctest::Approx(std::min(1.0, normal_p(a, b))).epsilon(1e-9));
    }
}

TEST_CASE("exact p matches full permutation enumeration") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 60; ++i) {
        const auto a = draw(rng, 2 + i % 5, 5);
        const auto b = draw(rng, 2 + (i / 5) % 6, 5);
        const auto r = mann_whitney_u(a, b, {.exact = true});
        CHECK(r.p_value == doctest::Approx(permutation_p(a, b)).epsilon(1e-9));
    }
    std::vector<double> big(21, 1.0), other(20, 2.0);
    CHECK_THROWS_AS(mann_whitney_u(big, other, {.exact = true}), ConfigError);
}

TEST_CASE("identical constant samples") {
    const std::vector<double> a(10, 50.0);
    const auto r = mann_whitney_u(a, a);
    CHECK(r.p_value == 1.0);
    CHECK(r.effect_size == 0.0);
    CHECK_THROWS_AS(mann_whitney_u({}, a), DataError);
}

TEST_CASE("rank-biserial from U = 506.5") {
    CHECK(rank_biserial_from_u(506.5, 123, 15) == doctest::Approx(0.451).epsilon(0.001 / 0.451));
    // A sample pair constructed to give that U: 15 values against 0..122.
    std::vector<double> human(123);
    for (int i = 0; i < 123; ++i) human[static_cast<std::size_t>(i)] = i;
    std::vector<double> model(14, 33.0);
    model.push_back(37.0);
    const auto r = mann_whitney_u(human, model);
    CHECK(r.statistic == doctest::Approx(506.5));
    CHECK(r.effect_size == doctest::Approx(1.0 - 2.0 * 506.5 / (123.0 * 15.0)));
    CHECK_THROWS_AS(rank_biserial_from_u(5000, 10, 10), ConfigError);
}

TEST_CASE("bootstrap interval is reproducible and brackets the estimate") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n0(50, 10), n1(60, 10);
    std::vector<double> a(40), b(30);
    for (auto& x : a) x = n0(rng);
    for (auto& x : b) x = n1(rng);
    const auto [lo, hi] = rank_biserial_ci(a, b, 0.95, 2000, 42);
    const auto again = rank_biserial_ci(a, b, 0.95, 2000, 42);
    CHECK(lo == again.first);
    CHECK(hi == again.second);
    const double est = mann_whitney_u(a, b).signed_effect;
    CHECK(lo <= est);
    CHECK(est <= hi);
    CHECK(lo < hi);
    CHECK(rank_biserial_ci(a, b, 0.95, 2000, 43).first != lo);
}

TEST_CASE("binning edges") {
    const std::vector<double> v{0, 4.999, 5, 94.999, 95, 100};
    const auto d = bin_distribution(v);
    REQUIRE(d.masses.size() == kBinCount);
    REQUIRE(d.bin_edges.size() == kBinCount + 1);
    CHECK(d.masses[0] == doctest::Approx(2.0 / 6));
    CHECK(d.masses[1] == doctest::Approx(1.0 / 6));
    CHECK(d.masses[18] == doctest::Approx(1.0 / 6));
    CHECK(d.masses[19] == doctest::Approx(2.0 / 6));
    CHECK(d.n == 6);
    const std::vector<double> bad{50, 100.5};
    CHECK_THROWS_AS(bin_distribution(bad), DataError);
}

TEST_CASE("KL divergence") {
    const std::vector<double> v{10, 20, 30, 30, 90};
    const auto p = bin_distribution(v);
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(kl_divergence(p, p)) < 1e-9);
    const auto a = BinnedDistribution::from_masses({0, 50, 100}, {0.5, 0.5});
    const auto b = BinnedDistribution::from_masses({0, 50, 100}, {0.9, 0.1});
    const double expected = 0.5 * std::log(0.5 / 0.9) + 0.5 * std::log(0.5 / 0.1);
    CHECK(kl_divergence(a, b) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(kl_divergence(a, b) != doctest::Approx(kl_divergence(b, a)));
    // Disjoint supports give a large but finite value.
    const auto c = BinnedDistribution::from_masses({0, 50, 100}, {1.0, 0.0});
    const auto d = BinnedDistribution::from_masses({0, 50, 100}, {0.0, 1.0});
    CHECK(std::isfinite(kl_divergence(c, d)));
    CHECK(kl_divergence(c, d) > 15.0);
    CHECK_THROWS_AS(BinnedDistribution::from_masses({0, 50, 100}, {0.7, 0.7}), DataError);
}

TEST_CASE("KS statistic") {
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b{6, 7, 8};
    CHECK(ks_statistic(a, a) == 0.0);
    CHECK(ks_statistic(a, b) == 1.0);
    const std::vector<double> c{1, 2, 6, 7};
    CHECK(ks_statistic(a, c) == doctest::Approx(0.5));
    // Invariant under a strictly increasing transform applied to both samples.
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const auto x = draw(rng, 3 + i % 7, 12);
        const auto y = draw(rng, 2 + i % 5, 12);
        std::vector<double> tx, ty;
        for (double v : x) tx.push_back(std::exp(v / 3.0) + 7.0);
        for (double v : y) ty.push_back(std::exp(v / 3.0) + 7.0);
        CHECK(ks_statistic(x, y) == doctest::Approx(ks_statistic(tx, ty)));
    }
}

TEST_CASE("paired t-test against numerical integration") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 5 + static_cast<std::size_t>(rep) * 7;
        std::vector<double> x(n), y(n), diff(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = noise(rng) + 0.3 * rep;
            y[i] = noise(rng);
            diff[i] = x[i] - y[i];
        }
        double mean = 0.0;
        for (double d : diff) mean += d;
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (double d : diff) ss += (d - mean) * (d - mean);
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
        const auto r = paired_t_test(x, y);
        CHECK(r.statistic == doctest::Approx(t));
        CHECK(r.df == static_cast<double>(n - 1));
        CHECK(r.effect_size == doctest::Approx(mean / sd));
        CHECK(r.mean_difference == doctest::Approx(mean));
        CHECK(r.p_value == doctest::Approx(oracle::t_two_sided_p(t, static_cast<double>(n - 1))).epsilon(1e-6));
    }
}

TEST_CASE("paired t-test on binary verdicts") {
    // 0/1 verdicts as in the metric comparisons: 8 units improved, 2 got worse.
    std::vector<double> x(30, 1.0), y(30, 1.0);
    for (int i = 0; i < 8; ++i) y[static_cast<std::size_t>(i)] = 0.0;
    for (int i = 8; i < 10; ++i) x[static_cast<std::size_t>(i)] = 0.0;
    const auto r = paired_t_test(x, y);
    CHECK(r.mean_difference == doctest::Approx(0.2));
    CHECK(r.p_value == doctest::Approx(oracle::t_two_sided_p(r.statistic, 29)).epsilon(1e-6));
}

TEST_CASE("paired t-test degenerate inputs") {
    const std::vector<double> x{1, 0, 1, 1}, y{1, 0, 1, 1};
    CHECK_THROWS_AS(paired_t_test(x, y), DegenerateError);
    const std::vector<double> shifted{2, 1, 2, 2};
    CHECK_THROWS_AS(paired_t_test(shifted, y), DegenerateError);
    const std::vector<double> shorter{1, 0};
    CHECK_THROWS_AS(paired_t_test(shorter, y), std::exception);
}

TEST_CASE("median and absolute median difference") {
    const std::vector<double> a{1, 3, 2};
    const std::vector<double> b{10, 20, 30, 40};
    CHECK(median(a) == 2.0);
    CHECK(median(b) == 25.0);
    const auto m = median_and_amd(a, b);
    CHECK(m.amd == 23.0);
    CHECK_THROWS_AS(median({}), DataError);
}

TEST_CASE("significance stars") {
    CHECK(significance_stars(0.0099) == "***");
    CHECK(significance_stars(0.01) == "**");
    CHECK(significance_stars(0.0499) == "**");
    CHECK(significance_stars(0.05) == "*");
    CHECK(significance_stars(0.0999) == "*");
    CHECK(significance_stars(0.10) == "");
    CHECK(significance_stars(0.5) == "");
}

}
