#pragma once

#include <cstdint>
#include <vector>

#include "cfml/number_theory.hpp"

namespace cfml {

/// One element of SL2(Z/qZ), entries reduced to 0..q-1.
struct Sl2Element {
    std::uint16_t a;
    std::uint16_t b;
    std::uint16_t c;
    std::uint16_t d;

    bool operator==(const Sl2Element&) const = default;
};

/// Exhaustive table of SL2(Z/qZ).
struct Sl2ModQ {
    int modulus = 0;
    std::vector<Sl2Element> elements;

    std::uint64_t order() const noexcept { return elements.size(); }
};

inline constexpr int kMaxOracleModulus = 128;

/// q^3 * prod_{p | q} (1 - 1/p^2), computed in integers.
std::uint64_t sl2_order(int q);

/// All solutions of ad - bc = 1 mod q, for 2 <= q <= 128.
Sl2ModQ enumerate_sl2(int q);

struct DClassCounts {
    std::uint64_t coprime = 0;  // gcd(d, p) = 1
    std::uint64_t zero = 0;     // d = 0 mod p

    bool operator==(const DClassCounts&) const = default;
};

/// Splits a prime-modulus group by the class of d. ArgumentError if the
/// group's modulus is not prime.
DClassCounts count_d_classes(const Sl2ModQ& group, int p);

/// (1 / |SL2(Z/qZ)|) * sum over the group of c_q(d - n), exact.
Rational cbar_bruteforce(const Sl2ModQ& group, std::int64_t n);
Rational cbar_bruteforce(int q, std::int64_t n);

/// Closed form of the local factor term at q = p^t:
/// -1/(p+1) if t = 1 and p | n; 1/(p^2-1) if t = 1 and p does not divide n; 0 if t >= 2.
Rational cbar_closed(int p, int t, std::int64_t n);

/// Trial-division primality, for small oracle moduli.
bool is_prime_small(std::int64_t n);

/// Splits q into p^t. Returns false if q is not a prime power.
bool as_prime_power(int q, int& p, int& t);

}  // namespace cfml
