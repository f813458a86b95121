#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

// Comparison statistics for probability samples expressed in percent [0, 100].
namespace wepkit::stats {

inline constexpr std::size_t kBinCount = 20;
inline constexpr double kBinWidth = 5.0;
inline constexpr double kKlSmoothing = 1e-9;
inline constexpr std::uint64_t kDefaultBootstrapSeed = 20240613;
inline constexpr std::size_t kDefaultBootstrapResamples = 10000;

struct BinnedDistribution {
    std::vector<double> bin_edges;  // masses.size() + 1 values
    std::vector<double> masses;     // sum to 1
    std::size_t n = 0;

    /// Arbitrary edges and masses; masses are validated (non-negative, sum 1 +- 1e-9).
    static BinnedDistribution from_masses(std::vector<double> edges, std::vector<double> masses, std::size_t n = 0);
};

/// Bins [5i, 5i+5) for i < 19 and the closed [95, 100]. Throws DataError
/// naming the first value outside [0, 100].
BinnedDistribution bin_distribution(std::span<const double> values);

/// KL(P || Q) in nats after adding kKlSmoothing to every bin of both sides and
/// renormalising.
double kl_divergence(const BinnedDistribution& p, const BinnedDistribution& q, double smoothing = kKlSmoothing);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double effect_size = 0.0;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    // Mann-Whitney: pairs with a > b plus half the ties, and the rank-biserial
    // correlation oriented a-vs-b (positive when a tends to be larger).
    double u_a = 0.0;
    double signed_effect = 0.0;
    // Paired t-test: degrees of freedom and mean difference.
    double df = 0.0;
    double mean_difference = 0.0;
};

struct MannWhitneyOptions {
    /// Exact permutation p-value (tie-aware); only allowed when n1 * n2 <= 400.
    bool exact = false;
};

/// U = min(U1, U2) over pooled midranks; two-sided p from the normal
/// approximation with tie and continuity corrections; effect_size is the
/// rank-biserial magnitude 1 - 2U / (n1 n2).
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, MannWhitneyOptions options = {});

/// 1 - 2U / (n1 n2) for U = min(U1, U2).
double rank_biserial_from_u(double u, std::size_t n1, std::size_t n2);

/// Pairs (i, j) with a_i > b_j, ties counted one half.
double u_statistic_a(std::span<const double> a, std::span<const double> b);

/// Percentile bootstrap CI for the signed rank-biserial correlation. Each
/// resample draws its own seed from `seed`, so the result does not depend on
/// the number of worker threads.
std::pair<double, double> rank_biserial_ci(std::span<const double> a, std::span<const double> b, double level = 0.95,
                                           std::size_t resamples = kDefaultBootstrapResamples,
                                           std::uint64_t seed = kDefaultBootstrapSeed);

/// sup_x |ECDF_a(x) - ECDF_b(x)|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Two-sided paired t-test on x - y; effect_size is Cohen's d of the
/// differences. Throws DegenerateError when the differences have zero variance.
TestResult paired_t_test(std::span<const double> x, std::span<const double> y);

double median(std::span<const double> values);

struct MedianComparison {
    double median_a;
    double median_b;
    double amd;
};
MedianComparison median_and_amd(std::span<const double> a, std::span<const double> b);

/// "***" below 0.01, "**" below 0.05, "*" below 0.10, otherwise empty.
std::string significance_stars(double p);

}  // namespace wepkit::stats
