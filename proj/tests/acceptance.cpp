// Acceptance suite: one line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "cfml/cli.hpp"
#include "cfml/enumerator.hpp"
#include "cfml/equidist.hpp"
#include "cfml/heuristic.hpp"
#include "cfml/io.hpp"
#include "cfml/number_theory.hpp"
#include "cfml/sl2_oracle.hpp"

using namespace cfml;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit_s, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = time_limit_s <= 0.0 || secs < time_limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %2d. %s: %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
                in_time ? "" : ", over time limit");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

TallyTable tally_of(int alphabet, std::uint64_t bound, int workers = 1) {
    EnumConfig config;
    config.alphabet_bound = alphabet;
    config.target_bound = bound;
    config.worker_count = workers;
    return enumerate(config).tally;
}

struct MatHash {
    std::size_t operator()(const Mat2& w) const noexcept {
        std::size_t h = w.a;
        for (auto v : {w.b, w.c, w.d}) h = h * 0x9E3779B97F4A7C15ull ^ (v + (h >> 29));
        return h;
    }
};

constexpr std::uint64_t kBigN = 100'000;
constexpr int kWorkers = 8;

}  // namespace

int main() {
    criterion(1, "local-factor oracle (SL2 brute force == closed form)", 10.0, [] {
        std::size_t cases = 0;
        for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 25, 27}) {
            int p = 0;
            int t = 0;
            as_prime_power(q, p, t);
            const auto group = enumerate_sl2(q);
            for (std::int64_t n = 0; n <= 12; ++n, ++cases) {
                if (cbar_bruteforce(group, n) != cbar_closed(p, t, n)) {
                    return Outcome{false, "mismatch at q=" + std::to_string(q) + " n=" + std::to_string(n)};
                }
            }
        }
        return Outcome{true, std::to_string(cases) + " exact rational matches"};
    });

    criterion(2, "group counts |SL2(Z/p)| and d-classes", 5.0, [] {
        for (int p : {2, 3, 5, 7}) {
            const auto g = enumerate_sl2(p);
            const auto pp = static_cast<std::uint64_t>(p);
            const auto c = count_d_classes(g, p);
            if (g.order() != pp * pp * pp - pp || c.coprime != pp * pp * pp - pp * pp ||
                c.zero != pp * pp - pp) {
                return Outcome{false, "count mismatch at p=" + std::to_string(p)};
            }
        }
        return Outcome{true, "p in {2,3,5,7}"};
    });

    criterion(3, "Ramanujan closed form vs exponential sum, q,n <= 200", 5.0, [] {
        double worst = 0.0;
        for (std::int64_t q = 1; q <= 200; ++q) {
            for (std::int64_t n = 0; n <= 200; ++n) {
                const auto d = ramanujan_c_direct(q, n);
                worst = std::max(worst, std::abs(d - std::complex<double>(double(ramanujan_c(q, n)), 0.0)));
            }
        }
        return Outcome{worst < 1e-6, fmt("max |difference| = %.3g (tol 1e-6)", worst)};
    });

    criterion(4, "exact small fixtures", 1.0, [] {
        const auto a1 = tally_of(1, 13);
        bool ok = a1.ball(13) == 3;
        for (std::uint64_t n = 2; n <= 13; ++n) {
            ok = ok && a1.mult(n) == ((n == 2 || n == 5 || n == 13) ? 1u : 0u);
        }
        const auto a2 = tally_of(2, 5);
        ok = ok && a2.mult(2) == 1 && a2.mult(3) == 2 && a2.mult(4) == 0 && a2.mult(5) == 2 &&
             a2.total_nodes() == 5;
        return Outcome{ok, "A=1,N=13 and A=2,N=5"};
    });

    criterion(5, "conservation and prefix nesting, N=10^4", 5.0, [] {
        for (int alphabet : {2, 5}) {
            const auto big = tally_of(alphabet, 10'000, kWorkers);
            std::uint64_t sum = 0;
            for (auto k : big.mult_view()) sum += k;
            if (sum != big.total_nodes() || big.ball(10'000) != sum) {
                return Outcome{false, "conservation broken for A=" + std::to_string(alphabet)};
            }
            if (big.truncated(1'000) != tally_of(alphabet, 1'000, kWorkers)) {
                return Outcome{false, "N=10^3 table is not a prefix for A=" + std::to_string(alphabet)};
            }
        }
        return Outcome{true, "A in {2,5}"};
    });

    criterion(6, "duplicate-free tree, A=5, N=2000", 5.0, [] {
        std::unordered_set<Mat2, MatHash> seen;
        std::size_t visits = 0;
        for_each_node(Alphabet(5), 2000, [&](const Mat2& w) {
            seen.insert(w);
            ++visits;
        });
        return Outcome{seen.size() == visits,
                       std::to_string(visits) + " nodes, " + std::to_string(visits - seen.size()) + " duplicates"};
    });

    criterion(7, "average singular series tends to 1", 30.0, [] {
        const SpfSieve sieve(1'000'000);
        std::string detail;
        double previous = INFINITY;
        bool decreasing = true;
        double last = 0.0;
        for (std::uint32_t n : {1'000u, 10'000u, 100'000u, 1'000'000u}) {
            last = std::abs(average_singular(n, sieve) - 1.0);
            decreasing = decreasing && last < previous;
            previous = last;
            detail += fmt("%.3g ", last);
        }
        return Outcome{decreasing && last < 1e-3, "|avg-1| at 10^3..10^6: " + detail};
    });

    // Shared A=5, N=10^5 data for criteria 8-11.
    const auto enum_start = Clock::now();
    EnumConfig config;
    config.alphabet_bound = 5;
    config.target_bound = kBigN;
    config.worker_count = kWorkers;
    config.residue_moduli_max = 30;
    const EnumResult big = enumerate(config);
    const double enum_secs = std::chrono::duration<double>(Clock::now() - enum_start).count();
    const SpfSieve sieve(static_cast<std::uint32_t>(kBigN));
    const PowerLawFit fit = fit_growth(big.tally, kDefaultWindowFraction);

    criterion(8, "ratio mult/heuristic improves with n (A=5, N=10^5)", 0.0, [&] {
        const auto records = compare(big.tally, fit, sieve);
        const double high = mean_abs_deviation(records, 90'000, 100'000);
        const double low = mean_abs_deviation(records, 1'000, 2'000);
        return Outcome{high < low && enum_secs < 120.0,
                       fmt("mean|r-1| [9e4,1e5] = %.4g < [1e3,2e3] = %.4g; enumeration %.2fs on 8 workers",
                           high, low, enum_secs)};
    });

    criterion(9, "partial-sum consistency closer to 1 at N=10^5 than 10^3", 0.0, [&] {
        const double at_small = partial_sum_check(big.tally, fit, sieve, 1'000);
        const double at_big = partial_sum_check(big.tally, fit, sieve, kBigN);
        return Outcome{std::abs(at_big - 1.0) < std::abs(at_small - 1.0),
                       fmt("ratio(1e3) = %.6g, ratio(1e5) = %.6g", at_small, at_big)};
    });

    criterion(10, "growth fit sanity", 0.0, [&] {
        const auto quarter = fit_growth(big.tally, 0.25);
        const bool stable = std::abs(quarter.two_delta - fit.two_delta) <= 0.05;
        std::vector<double> square(kBigN + 1);
        std::vector<double> powered(kBigN + 1);
        for (std::size_t n = 0; n <= kBigN; ++n) {
            square[n] = double(n) * double(n);
            powered[n] = 3.0 * std::pow(double(n), 1.5);
        }
        const auto s1 = fit_growth(square);
        const auto s2 = fit_growth(powered);
        const bool synthetic = std::abs(s1.two_delta - 2.0) < 1e-6 && std::abs(s2.two_delta - 1.5) < 1e-6 &&
                               std::abs(s2.c - 3.0) < 1e-4;
        return Outcome{fit.rms_residual < 0.05 && stable && synthetic,
                       fmt("2delta = %.5f (w=0.5), %.5f (w=0.25), rms = %.3g", fit.two_delta,
                           quarter.two_delta, fit.rms_residual) +
                           (synthetic ? "; synthetic exponents recovered" : "; synthetic fit FAILED")};
    });

    criterion(11, "residue errors shrink with modulus (A=5, d <= 10^5)", 0.0, [&] {
        const ResidueHistogram& h = *big.residues;
        double low = 0.0;
        double high = 0.0;
        for (int m = 2; m <= 15; ++m) low = std::max(low, normalized_largest_error(h, m));
        for (int m = 16; m <= 30; ++m) high = std::max(high, normalized_largest_error(h, m));
        const bool m1 = largest_error(h, 1) == 0.0 && normalized_largest_error(h, 1) == 0.0;
        return Outcome{high < low && m1,
                       fmt("max err m in [16,30] = %.4g < m in [2,15] = %.4g; m=1 error %.1f", high, low,
                           largest_error(h, 1))};
    });

    criterion(12, "enumerate CSV identical across --threads", 0.0, [] {
        const fs::path dir = fs::temp_directory_path() / "cfml_acceptance";
        fs::create_directories(dir);
        std::ostringstream sink;
        const auto one = (dir / "t1.csv").string();
        const auto eight = (dir / "t8.csv").string();
        const int c1 = cli::run({"cfml", "enumerate", "--max-n", std::to_string(kBigN), "--threads", "1", "--out", one},
                                sink, sink);
        const int c8 = cli::run({"cfml", "enumerate", "--max-n", std::to_string(kBigN), "--threads", "8", "--out", eight},
                                sink, sink);
        const bool same = c1 == 0 && c8 == 0 && io::read_file(one) == io::read_file(eight);
        fs::remove_all(dir);
        return Outcome{same, "A=5, N=10^5, threads 1 vs 8"};
    });

    std::printf("%d failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
