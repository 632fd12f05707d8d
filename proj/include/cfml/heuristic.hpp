#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cfml/enumerator.hpp"
#include "cfml/number_theory.hpp"

namespace cfml {

/// |B_n| ~ c * n^two_delta, fitted by least squares in log-log space.
struct PowerLawFit {
    double c = 0.0;
    double two_delta = 0.0;
    std::uint64_t window_lo = 0;
    std::uint64_t window_hi = 0;
    double rms_residual = 0.0;
    std::size_t points = 0;
};

inline constexpr double kDefaultWindowFraction = 0.5;
inline constexpr std::size_t kMaxFitPoints = 10'000;

/// OLS of ln ball[n] on ln n over n in [ceil(window_fraction * N), N], with the
/// window subsampled geometrically to at most kMaxFitPoints points.
/// `ball` is indexed by n (size N + 1) and N must be at least 100.
PowerLawFit fit_growth(std::span<const double> ball, double window_fraction = kDefaultWindowFraction);
PowerLawFit fit_growth(const TallyTable& tally, double window_fraction = kDefaultWindowFraction);

/// |S_n| ~ two_delta * |B_n| / n, using the exact ball count.
inline double sphere_estimate(const PowerLawFit& fit, double ball_n, std::uint64_t n) {
    return fit.two_delta * ball_n / static_cast<double>(n);
}

/// Predicted multiplicity sphere_estimate(ball[n]) * singular_series(n).
double heuristic_mult(const PowerLawFit& fit, const TallyTable& tally, std::uint64_t n,
                      const SpfSieve& sieve);

struct ComparisonRecord {
    std::uint64_t n = 0;
    std::uint64_t exact_mult = 0;
    double heuristic = 0.0;
    double singular = 0.0;
    double ratio = 0.0;  // exact / heuristic; 0 when exact is 0
};

/// One record per n in [2, N].
std::vector<ComparisonRecord> compare(const TallyTable& tally, const PowerLawFit& fit,
                                      const SpfSieve& sieve);

/// (sum_{n=2}^{N} heuristic(n)) / ball[N] for a real-valued ball sequence.
double partial_sum_ratio(std::span<const double> ball, double two_delta, const SpfSieve& sieve,
                         std::uint64_t bound);

/// partial_sum_ratio over the enumerated ball counts.
double partial_sum_check(const TallyTable& tally, const PowerLawFit& fit, const SpfSieve& sieve,
                         std::uint64_t bound);

/// Mean of |ratio - 1| over records with lo <= n <= hi.
double mean_abs_deviation(std::span<const ComparisonRecord> records, std::uint64_t lo,
                          std::uint64_t hi);

}  // namespace cfml
