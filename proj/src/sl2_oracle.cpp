#include "cfml/sl2_oracle.hpp"

#include <numeric>
#include <string>

#include "cfml/errors.hpp"

namespace cfml {

bool is_prime_small(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t k = 2; k * k <= n; ++k) {
        if (n % k == 0) return false;
    }
    return true;
}

bool as_prime_power(int q, int& p, int& t) {
    if (q < 2) return false;
    int base = 2;
    while (q % base != 0) ++base;
    int exponent = 0;
    int rest = q;
    while (rest % base == 0) {
        rest /= base;
        ++exponent;
    }
    if (rest != 1) return false;
    p = base;
    t = exponent;
    return true;
}

std::uint64_t sl2_order(int q) {
    if (q < 1) {
        throw ArgumentError("modulus must be positive");
    }
    std::uint64_t order = std::uint64_t(q) * q * q;
    int rest = q;
    for (int p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        order = order / (std::uint64_t(p) * p) * (std::uint64_t(p) * p - 1);
    }
    return order;
}

Sl2ModQ enumerate_sl2(int q) {
    if (q < 2 || q > kMaxOracleModulus) {
        throw ArgumentError("SL2 brute force supports 2 <= q <= " +
                            std::to_string(kMaxOracleModulus) + ", got " + std::to_string(q));
    }
    std::vector<int> inverse(static_cast<std::size_t>(q), 0);
    for (int x = 1; x < q; ++x) {
        for (int y = 1; y < q; ++y) {
            if (x * y % q == 1) {
                inverse[static_cast<std::size_t>(x)] = y;
                break;
            }
        }
    }

    Sl2ModQ group{q, {}};
    group.elements.reserve(sl2_order(q));
    auto push = [&](int a, int b, int c, int d) {
        group.elements.push_back({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                                  static_cast<std::uint16_t>(c), static_cast<std::uint16_t>(d)});
    };
    for (int a = 0; a < q; ++a) {
        const int a_inv = inverse[static_cast<std::size_t>(a)];
        for (int b = 0; b < q; ++b) {
            for (int c = 0; c < q; ++c) {
                const int rhs = (1 + b * c) % q;  // a d = 1 + b c
                if (a_inv != 0) {
                    push(a, b, c, a_inv * rhs % q);
                    continue;
                }
                for (int d = 0; d < q; ++d) {
                    if (a * d % q == rhs) push(a, b, c, d);
                }
            }
        }
    }
    return group;
}

DClassCounts count_d_classes(const Sl2ModQ& group, int p) {
    if (group.modulus != p || !is_prime_small(p)) {
        throw ArgumentError("d-class counts need a group of prime modulus p, got modulus " +
                            std::to_string(group.modulus) + " and p = " + std::to_string(p));
    }
    DClassCounts counts;
    for (const auto& w : group.elements) {
        if (w.d % p == 0) {
            ++counts.zero;
        } else {
            ++counts.coprime;
        }
    }
    return counts;
}

Rational cbar_bruteforce(const Sl2ModQ& group, std::int64_t n) {
    const int q = group.modulus;
    // Bucket by d first; c_q(d - n) only depends on d mod q.
    std::vector<std::int64_t> by_d(static_cast<std::size_t>(q), 0);
    for (const auto& w : group.elements) ++by_d[w.d];
    std::int64_t sum = 0;
    for (int d = 0; d < q; ++d) {
        if (by_d[static_cast<std::size_t>(d)] != 0) {
            sum += by_d[static_cast<std::size_t>(d)] * ramanujan_c(q, d - n);
        }
    }
    return {sum, static_cast<std::int64_t>(group.order())};
}

Rational cbar_bruteforce(int q, std::int64_t n) {
    return cbar_bruteforce(enumerate_sl2(q), n);
}

Rational cbar_closed(int p, int t, std::int64_t n) {
    if (!is_prime_small(p)) {
        throw ArgumentError(std::to_string(p) + " is not prime");
    }
    if (t < 1) {
        throw ArgumentError("prime power exponent must be >= 1");
    }
    if (t >= 2) return {0, 1};
    if (n % p == 0) return {-1, p + 1};
    return {1, std::int64_t{p} * p - 1};
}

}  // namespace cfml
