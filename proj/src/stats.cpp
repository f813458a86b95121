#include "wepkit/stats.hpp"

#include "wepkit/core.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

namespace wepkit::stats {

namespace {

void require_non_empty(std::span<const double> v, const char* what) {
    if (v.empty()) throw DataError(std::string(what) + ": empty sample");
}

struct Ranked {
    std::vector<double> ranks;  // midranks, in input order of the pooled sample
    double tie_term = 0.0;      // sum of t^3 - t over tie groups
};

Ranked midranks(std::span<const double> pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::ranges::sort(order, [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
    Ranked r;
    r.ranks.assign(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) r.ranks[order[k]] = mid;
        const double t = static_cast<double>(j - i + 1);
        r.tie_term += t * t * t - t;
        i = j + 1;
    }
    return r;
}

// U for group a (pairs a > b plus half ties) via rank sums.
double rank_sum_u_a(std::span<const double> a, std::span<const double> b, double* tie_term = nullptr) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto r = midranks(pooled);
    const double r1 = std::accumulate(r.ranks.begin(), r.ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);
    if (tie_term) *tie_term = r.tie_term;
    const double n1 = static_cast<double>(a.size());
    return r1 - n1 * (n1 + 1.0) / 2.0;
}

// Tie-aware permutation distribution of the doubled rank sum of group a.
double exact_mwu_p(std::span<const double> a, std::span<const double> b, double u_a) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto r = midranks(pooled);
    const std::size_t n = pooled.size();
    const std::size_t n1 = a.size();
    std::vector<int> doubled(n);
    int max_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        doubled[i] = static_cast<int>(std::lround(2.0 * r.ranks[i]));
        max_sum += doubled[i];
    }
    // ways[k][s]: subsets of size k with doubled rank sum s.
    std::vector<std::vector<long double>> ways(n1 + 1, std::vector<long double>(static_cast<std::size_t>(max_sum) + 1, 0.0L));
    ways[0][0] = 1.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t top = std::min(i + 1, n1);
        for (std::size_t k = top; k >= 1; --k) {
            auto& dst = ways[k];
            const auto& src = ways[k - 1];
            for (int s = max_sum; s >= doubled[i]; --s) dst[static_cast<std::size_t>(s)] += src[static_cast<std::size_t>(s - doubled[i])];
        }
    }
    const double n1d = static_cast<double>(n1);
    const double mean_u = n1d * static_cast<double>(b.size()) / 2.0;
    const double observed = std::abs(u_a - mean_u);
    long double total = 0.0L;
    long double extreme = 0.0L;
    for (int s = 0; s <= max_sum; ++s) {
        const long double w = ways[n1][static_cast<std::size_t>(s)];
        if (w == 0.0L) continue;
        total += w;
        const double u = s / 2.0 - n1d * (n1d + 1.0) / 2.0;
        if (std::abs(u - mean_u) >= observed - 1e-9) extreme += w;
    }
    return std::clamp(static_cast<double>(extreme / total), 0.0, 1.0);
}

double sample_sd(std::span<const double> v, double mean) {
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double percentile(std::vector<double> sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

BinnedDistribution BinnedDistribution::from_masses(std::vector<double> edges, std::vector<double> masses,
                                                   std::size_t n) {
    if (edges.size() != masses.size() + 1) throw DataError("bin edges must number one more than masses");
    double total = 0.0;
    for (double m : masses) {
        if (m < 0.0) throw DataError("negative bin mass");
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DataError("bin masses must sum to 1");
    return BinnedDistribution{std::move(edges), std::move(masses), n};
}

BinnedDistribution bin_distribution(std::span<const double> values) {
    require_non_empty(values, "bin_distribution");
    std::vector<double> counts(kBinCount, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!(v >= 0.0 && v <= 100.0)) {
            throw DataError("value " + std::to_string(v) + " at index " + std::to_string(i) + " is outside [0, 100]");
        }
        auto bin = static_cast<std::size_t>(std::floor(v / kBinWidth));
        counts[std::min(bin, kBinCount - 1)] += 1.0;
    }
    BinnedDistribution d;
    for (std::size_t i = 0; i <= kBinCount; ++i) d.bin_edges.push_back(kBinWidth * static_cast<double>(i));
    for (double c : counts) d.masses.push_back(c / static_cast<double>(values.size()));
    d.n = values.size();
    return d;
}

double kl_divergence(const BinnedDistribution& p, const BinnedDistribution& q, double smoothing) {
    if (p.bin_edges != q.bin_edges) throw DataError("kl_divergence: bin edges differ");
    const double k = static_cast<double>(p.masses.size());
    double kl = 0.0;
    for (std::size_t i = 0; i < p.masses.size(); ++i) {
        const double pi = (p.masses[i] + smoothing) / (1.0 + k * smoothing);
        const double qi = (q.masses[i] + smoothing) / (1.0 + k * smoothing);
        kl += pi * std::log(pi / qi);
    }
    return std::max(kl, 0.0);
}

double u_statistic_a(std::span<const double> a, std::span<const double> b) { return rank_sum_u_a(a, b); }

double rank_biserial_from_u(double u, std::size_t n1, std::size_t n2) {
    if (n1 == 0 || n2 == 0) throw DegenerateError("rank-biserial correlation needs two non-empty samples");
    const double pairs = static_cast<double>(n1) * static_cast<double>(n2);
    if (u < 0.0 || u > pairs) throw ConfigError("U is outside [0, n1 n2]");
    return 1.0 - 2.0 * u / pairs;
}

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, MannWhitneyOptions options) {
    require_non_empty(a, "mann_whitney_u");
    require_non_empty(b, "mann_whitney_u");
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    double tie_term = 0.0;
    const double u_a = rank_sum_u_a(a, b, &tie_term);
    const double u_b = n1 * n2 - u_a;

    TestResult r;
    r.n1 = a.size();
    r.n2 = b.size();
    r.u_a = u_a;
    r.statistic = std::min(u_a, u_b);
    r.effect_size = rank_biserial_from_u(r.statistic, a.size(), b.size());
    r.signed_effect = 2.0 * u_a / (n1 * n2) - 1.0;

    const double n = n1 + n2;
    const double variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (variance <= 0.0) {
        // Every value identical across both samples.
        r.p_value = 1.0;
        r.effect_size = 0.0;
        r.signed_effect = 0.0;
        return r;
    }
    if (options.exact) {
        if (a.size() * b.size() > 400) throw ConfigError("exact Mann-Whitney p requires n1 * n2 <= 400");
        r.p_value = exact_mwu_p(a, b, u_a);
        return r;
    }
    const double deviation = std::max(std::abs(r.statistic - n1 * n2 / 2.0) - 0.5, 0.0);
    const double z = deviation / std::sqrt(variance);
    r.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
    return r;
}

std::pair<double, double> rank_biserial_ci(std::span<const double> a, std::span<const double> b, double level,
                                           std::size_t resamples, std::uint64_t seed) {
    require_non_empty(a, "rank_biserial_ci");
    require_non_empty(b, "rank_biserial_ci");
    if (resamples < 2) throw ConfigError("rank_biserial_ci needs at least 2 resamples");
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("confidence level must lie in (0, 1)");

    const double nn = static_cast<double>(a.size()) * static_cast<double>(b.size());
    std::vector<double> estimates(resamples);

    auto worker = [&](std::size_t begin, std::size_t end) {
        std::vector<double> ra(a.size());
        std::vector<double> rb(b.size());
        for (std::size_t i = begin; i < end; ++i) {
            std::mt19937_64 engine(splitmix64(seed ^ splitmix64(i)));
            auto pick = [&engine](std::size_t n) {
                const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
                return std::min(static_cast<std::size_t>(u * static_cast<double>(n)), n - 1);
            };
            for (auto& x : ra) x = a[pick(a.size())];
            for (auto& x : rb) x = b[pick(b.size())];
            estimates[i] = 2.0 * rank_sum_u_a(ra, rb) / nn - 1.0;
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    const std::size_t chunk = (resamples + threads - 1) / threads;
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(resamples, begin + chunk);
        if (begin < end) pool.emplace_back(worker, begin, end);
    }
    pool.clear();

    std::ranges::sort(estimates);
    const double alpha = 1.0 - level;
    return {percentile(estimates, alpha / 2.0), percentile(estimates, 1.0 - alpha / 2.0)};
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    require_non_empty(a, "ks_statistic");
    require_non_empty(b, "ks_statistic");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::ranges::sort(sa);
    std::ranges::sort(sb);
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < sa.size() || j < sb.size()) {
        double x;
        if (j == sb.size() || (i < sa.size() && sa[i] <= sb[j])) {
            x = sa[i];
        } else {
            x = sb[j];
        }
        while (i < sa.size() && sa[i] == x) ++i;
        while (j < sb.size() && sb[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

TestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DataError("paired_t_test: samples differ in length");
    if (x.size() < 2) throw DataError("paired_t_test: at least two pairs required");
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    const double n = static_cast<double>(d.size());
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
    const double sd = sample_sd(d, mean);
    if (!(sd > 0.0)) throw DegenerateError("paired_t_test: differences have zero variance");
    TestResult r;
    r.n1 = r.n2 = d.size();
    r.df = n - 1.0;
    r.mean_difference = mean;
    r.statistic = mean / (sd / std::sqrt(n));
    r.effect_size = mean / sd;
    const boost::math::students_t dist(r.df);
    r.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.statistic))), 0.0, 1.0);
    return r;
}

double median(std::span<const double> values) {
    require_non_empty(values, "median");
    std::vector<double> v(values.begin(), values.end());
    std::ranges::sort(v);
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

MedianComparison median_and_amd(std::span<const double> a, std::span<const double> b) {
    const double ma = median(a);
    const double mb = median(b);
    return {ma, mb, std::abs(ma - mb)};
}

std::string significance_stars(double p) {
    if (p < 0.01) return "***";
    if (p < 0.05) return "**";
    if (p < 0.10) return "*";
    return "";
}

}  // namespace wepkit::stats
