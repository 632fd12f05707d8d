#include "cfml/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfml/errors.hpp"

namespace cfml {

namespace {

std::vector<double> as_real(std::span<const std::uint64_t> counts) {
    return {counts.begin(), counts.end()};
}

std::vector<std::uint64_t> fit_sample(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> ns;
    const std::uint64_t count = hi - lo + 1;
    if (count <= kMaxFitPoints) {
        ns.resize(count);
        for (std::uint64_t k = 0; k < count; ++k) ns[k] = lo + k;
        return ns;
    }
    const double log_lo = std::log(static_cast<double>(lo));
    const double log_hi = std::log(static_cast<double>(hi));
    ns.reserve(kMaxFitPoints);
    for (std::size_t k = 0; k < kMaxFitPoints; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(kMaxFitPoints - 1);
        auto n = static_cast<std::uint64_t>(std::llround(std::exp(log_lo + t * (log_hi - log_lo))));
        ns.push_back(std::clamp(n, lo, hi));
    }
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

void check_target(std::uint64_t n, std::uint64_t bound, std::uint32_t sieve_limit) {
    if (n < 2 || n > bound) {
        throw ArgumentError("target " + std::to_string(n) + " outside 2.." + std::to_string(bound));
    }
    if (n > sieve_limit) {
        throw ArgumentError("sieve does not cover target " + std::to_string(n));
    }
}

}  // namespace

PowerLawFit fit_growth(std::span<const double> ball, double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction < 1.0)) {
        throw ArgumentError("window fraction must lie in (0, 1)");
    }
    if (ball.size() < 101) {
        throw ArgumentError("growth fit needs N >= 100");
    }
    const std::uint64_t hi = ball.size() - 1;
    const auto lo = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(window_fraction * static_cast<double>(hi))));
    const auto ns = fit_sample(lo, hi);
    if (ns.size() < 10) {
        throw ArgumentError("fit window holds fewer than 10 points");
    }

    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(ns.size());
    ys.reserve(ns.size());
    for (auto n : ns) {
        if (!(ball[n] > 0.0)) {
            throw DataError("ball count is zero at n = " + std::to_string(n));
        }
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(ball[n]));
    }

    const auto count = static_cast<double>(xs.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mean_x += xs[k];
        mean_y += ys[k];
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mean_x) * (xs[k] - mean_x);
        sxy += (xs[k] - mean_x) * (ys[k] - mean_y);
    }
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;

    double sq = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double r = ys[k] - (intercept + slope * xs[k]);
        sq += r * r;
    }
    return PowerLawFit{std::exp(intercept), slope, lo, hi, std::sqrt(sq / count), ns.size()};
}

PowerLawFit fit_growth(const TallyTable& tally, double window_fraction) {
    const auto ball = as_real(tally.ball_view());
    return fit_growth(std::span<const double>(ball), window_fraction);
}

double heuristic_mult(const PowerLawFit& fit, const TallyTable& tally, std::uint64_t n,
                      const SpfSieve& sieve) {
    check_target(n, tally.bound(), sieve.limit());
    return sphere_estimate(fit, static_cast<double>(tally.ball(n)), n) *
           singular_series(static_cast<std::uint32_t>(n), sieve);
}

std::vector<ComparisonRecord> compare(const TallyTable& tally, const PowerLawFit& fit,
                                      const SpfSieve& sieve) {
    std::vector<ComparisonRecord> records;
    if (tally.bound() < 2) return records;
    check_target(tally.bound(), tally.bound(), sieve.limit());
    records.reserve(tally.bound() - 1);
    for (std::uint64_t n = 2; n <= tally.bound(); ++n) {
        ComparisonRecord r;
        r.n = n;
        r.exact_mult = tally.mult(n);
        r.singular = singular_series(static_cast<std::uint32_t>(n), sieve);
        r.heuristic = sphere_estimate(fit, static_cast<double>(tally.ball(n)), n) * r.singular;
        r.ratio = r.exact_mult == 0 ? 0.0 : static_cast<double>(r.exact_mult) / r.heuristic;
        records.push_back(r);
    }
    return records;
}

double partial_sum_ratio(std::span<const double> ball, double two_delta, const SpfSieve& sieve,
                         std::uint64_t bound) {
    if (bound < 2 || bound >= ball.size()) {
        throw ArgumentError("partial sum bound outside 2.." + std::to_string(ball.size() - 1));
    }
    check_target(bound, bound, sieve.limit());
    if (!(ball[bound] > 0.0)) {
        throw DataError("ball count is zero at the partial sum bound");
    }
    long double sum = 0.0L;
    for (std::uint64_t n = 2; n <= bound; ++n) {
        sum += two_delta * ball[n] / static_cast<double>(n) *
               singular_series(static_cast<std::uint32_t>(n), sieve);
    }
    return static_cast<double>(sum / ball[bound]);
}

double partial_sum_check(const TallyTable& tally, const PowerLawFit& fit, const SpfSieve& sieve,
                         std::uint64_t bound) {
    const auto ball = as_real(tally.ball_view());
    return partial_sum_ratio(ball, fit.two_delta, sieve, bound);
}

double mean_abs_deviation(std::span<const ComparisonRecord> records, std::uint64_t lo,
                          std::uint64_t hi) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : records) {
        if (r.n < lo || r.n > hi) continue;
        sum += std::abs(r.ratio - 1.0);
        ++count;
    }
    if (count == 0) {
        throw ArgumentError("no records in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return sum / static_cast<double>(count);
}

}  // namespace cfml
