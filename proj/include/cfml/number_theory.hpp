#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace cfml {

/// Exact rational in lowest terms with positive denominator.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;

/// Smallest-prime-factor table for 0..limit, built with a linear sieve.
class SpfSieve {
  public:
    explicit SpfSieve(std::uint32_t limit);

    std::uint32_t limit() const noexcept { return limit_; }

    /// Least prime divisor of n, for 2 <= n <= limit.
    std::uint32_t spf(std::uint32_t n) const;

    bool is_prime(std::uint32_t n) const;

    /// Distinct prime divisors of n in increasing order.
    std::vector<std::uint32_t> distinct_primes(std::uint32_t n) const;

    /// Primes up to limit in increasing order.
    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

    /// Mobius function; ArgumentError outside 1..limit.
    int mobius(std::uint32_t m) const;

  private:
    void check(std::uint32_t n, std::uint32_t lo) const;

    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

/// Mobius function by trial division, for arguments with no sieve at hand.
int mobius_trial(std::uint64_t m);

/// Ramanujan sum c_q(n) = sum_{s | gcd(q, n)} s * mu(q / s), exact.
/// Negative n is reduced mod q first.
std::int64_t ramanujan_c(std::int64_t q, std::int64_t n);

/// Literal exponential sum over 1 <= a <= q, gcd(a, q) = 1, of e(a n / q).
/// Test oracle only.
std::complex<double> ramanujan_c_direct(std::int64_t q, std::int64_t n);

/// zeta(2) * prod_{p | n} (p - 1) / p.
double singular_series(std::uint32_t n, const SpfSieve& sieve);

/// Local Euler factor 1 + C_p(n): p / (p + 1) when p | n, p^2 / (p^2 - 1) otherwise.
double local_factor(std::uint64_t p, std::uint64_t n);

/// Euler product of local_factor over primes p <= prime_bound.
double singular_series_truncated(std::uint64_t n, std::uint32_t prime_bound);

/// (1 / N) * sum_{n=1}^{N} singular_series(n).
double average_singular(std::uint32_t count, const SpfSieve& sieve);

}  // namespace cfml
