#include "cfml/number_theory.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cfml/errors.hpp"

namespace cfml {

SpfSieve::SpfSieve(std::uint32_t limit) : limit_(limit), spf_(std::size_t{limit} + 1, 0) {
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (std::uint32_t p : primes_) {
            const std::uint64_t composite = std::uint64_t{p} * i;
            if (p > spf_[i] || composite > limit) break;
            spf_[composite] = p;
        }
    }
}

void SpfSieve::check(std::uint32_t n, std::uint32_t lo) const {
    if (n < lo || n > limit_) {
        throw ArgumentError(std::to_string(n) + " outside sieve range " + std::to_string(lo) +
                            ".." + std::to_string(limit_));
    }
}

std::uint32_t SpfSieve::spf(std::uint32_t n) const {
    check(n, 2);
    return spf_[n];
}

bool SpfSieve::is_prime(std::uint32_t n) const {
    check(n, 0);
    return n >= 2 && spf_[n] == n;
}

std::vector<std::uint32_t> SpfSieve::distinct_primes(std::uint32_t n) const {
    check(n, 1);
    std::vector<std::uint32_t> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    return out;
}

int SpfSieve::mobius(std::uint32_t m) const {
    check(m, 1);
    int sign = 1;
    while (m > 1) {
        const std::uint32_t p = spf_[m];
        m /= p;
        if (m % p == 0) return 0;
        sign = -sign;
    }
    return sign;
}

int mobius_trial(std::uint64_t m) {
    if (m == 0) {
        throw ArgumentError("mobius of 0");
    }
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        m /= p;
        if (m % p == 0) return 0;
        sign = -sign;
    }
    return m > 1 ? -sign : sign;
}

std::int64_t ramanujan_c(std::int64_t q, std::int64_t n) {
    if (q < 1) {
        throw ArgumentError("Ramanujan sum needs q >= 1");
    }
    const std::int64_t g = std::gcd(q, std::abs(n % q));
    std::int64_t sum = 0;
    for (std::int64_t s = 1; s * s <= g; ++s) {
        if (g % s != 0) continue;
        sum += s * mobius_trial(static_cast<std::uint64_t>(q / s));
        if (const std::int64_t t = g / s; t != s) {
            sum += t * mobius_trial(static_cast<std::uint64_t>(q / t));
        }
    }
    return sum;
}

std::complex<double> ramanujan_c_direct(std::int64_t q, std::int64_t n) {
    if (q < 1) {
        throw ArgumentError("Ramanujan sum needs q >= 1");
    }
    const std::int64_t r = ((n % q) + q) % q;
    std::complex<double> sum{0.0, 0.0};
    for (std::int64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const double turns = static_cast<double>((a * r) % q) / static_cast<double>(q);
        sum += std::polar(1.0, 2.0 * std::numbers::pi * turns);
    }
    return sum;
}

double singular_series(std::uint32_t n, const SpfSieve& sieve) {
    double product = kZeta2;
    for (std::uint32_t p : sieve.distinct_primes(n)) {
        product *= static_cast<double>(p - 1) / p;
    }
    return product;
}

double local_factor(std::uint64_t p, std::uint64_t n) {
    const auto pd = static_cast<double>(p);
    if (n % p == 0) {
        return pd / (pd + 1.0);
    }
    return pd * pd / (pd * pd - 1.0);
}

double singular_series_truncated(std::uint64_t n, std::uint32_t prime_bound) {
    if (n < 1 || prime_bound < 2) {
        throw ArgumentError("truncated singular series needs n >= 1 and P >= 2");
    }
    const SpfSieve sieve(prime_bound);
    long double product = 1.0L;
    for (std::uint32_t p : sieve.primes()) {
        product *= local_factor(p, n);
    }
    return static_cast<double>(product);
}

double average_singular(std::uint32_t count, const SpfSieve& sieve) {
    if (count < 1) {
        throw ArgumentError("average over an empty range");
    }
    long double sum = 0.0L;
    for (std::uint32_t n = 1; n <= count; ++n) {
        sum += singular_series(n, sieve);
    }
    return static_cast<double>(sum / count);
}

}  // namespace cfml
