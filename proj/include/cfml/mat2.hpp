#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cfml {

/// Nonnegative 2x2 integer matrix [[a, b], [c, d]].
///
/// Non-identity products of the continued-fraction generators have
/// determinant 1, d >= max(a, b, c) and a <= b <= d, a <= c <= d. The
/// identity is representable only so it can serve as the enumeration root.
struct Mat2 {
    std::uint64_t a = 1;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 1;

    static constexpr Mat2 identity() noexcept { return {1, 0, 0, 1}; }

    constexpr bool is_identity() const noexcept { return *this == identity(); }

    // Signed determinant; entries up to 2^63 keep the products inside 128 bits.
    constexpr __int128 det() const noexcept {
        return static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
    }

    constexpr bool operator==(const Mat2&) const = default;
};

/// Product w * g. Throws OverflowError if any entry would exceed 64 bits.
Mat2 mul(const Mat2& w, const Mat2& g);

/// The projection onto the bottom-right entry (the continued-fraction denominator).
constexpr std::uint64_t project_f(const Mat2& w) noexcept { return w.d; }

/// True when w satisfies the structural invariants of a non-identity
/// semigroup element: det 1, a <= b <= d, a <= c <= d, d >= 2.
bool is_semigroup_element(const Mat2& w) noexcept;

/// Partial-quotient alphabet {1..A} together with its generator set and the
/// A^2 pairwise products used as tree edges.
class Alphabet {
  public:
    explicit Alphabet(int bound);

    int bound() const noexcept { return bound_; }

    /// [[0, 1], [1, i]] for 1 <= i <= A.
    Mat2 generator(int i) const;

    /// generator(i) * generator(j) = [[1, j], [i, i*j + 1]].
    Mat2 compose_pair(int i, int j) const;

    /// All compose_pair(i, j), ordered by i then j.
    std::span<const Mat2> gen_pairs() const noexcept { return pairs_; }

  private:
    void check_index(int i) const;

    int bound_;
    std::vector<Mat2> pairs_;
};

}  // namespace cfml
