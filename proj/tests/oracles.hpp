#pragma once

// Independent reference computations for tests. Nothing here may call into
// the code paths it is used to check.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace cfml::oracle {

// Partial quotients of b/d = [a1, a2, ...] with b/d = 1/(a1 + 1/(a2 + ...)),
// 0 < b < d, via the Euclidean algorithm. The last quotient is >= 2.
inline std::vector<std::uint64_t> partial_quotients(std::uint64_t b, std::uint64_t d) {
    std::vector<std::uint64_t> q;
    while (b != 0) {
        q.push_back(d / b);
        const std::uint64_t r = d % b;
        d = b;
        b = r;
    }
    return q;
}

// mult(n) for n <= bound by counting reduced fractions b/n whose even-length
// continued fraction has every partial quotient <= alphabet.
inline std::vector<std::uint64_t> euclid_mult(int alphabet, std::uint64_t bound) {
    std::vector<std::uint64_t> mult(bound + 1, 0);
    const auto limit = static_cast<std::uint64_t>(alphabet);
    for (std::uint64_t d = 2; d <= bound; ++d) {
        for (std::uint64_t b = 1; b < d; ++b) {
            if (std::gcd(b, d) != 1) continue;
            auto q = partial_quotients(b, d);
            if (q.size() % 2 == 1) {
                // [.., a] = [.., a - 1, 1]
                --q.back();
                q.push_back(1);
            }
            bool ok = true;
            for (auto a : q) ok = ok && a <= limit;
            if (ok) ++mult[d];
        }
    }
    return mult;
}

// zeta(2) * prod_{p | n} (1 - 1/p) by trial division.
inline double trial_singular(std::uint64_t n) {
    const double zeta2 = M_PI * M_PI / 6.0;
    double product = zeta2;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        product *= 1.0 - 1.0 / static_cast<double>(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) product *= 1.0 - 1.0 / static_cast<double>(n);
    return product;
}

inline int trial_mobius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 1) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

}  // namespace cfml::oracle
