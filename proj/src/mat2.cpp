#include "cfml/mat2.hpp"

#include <string>

#include "cfml/errors.hpp"

namespace cfml {

namespace {

std::uint64_t checked_dot(std::uint64_t x0, std::uint64_t y0, std::uint64_t x1, std::uint64_t y1) {
    std::uint64_t p0 = 0;
    std::uint64_t p1 = 0;
    std::uint64_t sum = 0;
    if (__builtin_mul_overflow(x0, y0, &p0) || __builtin_mul_overflow(x1, y1, &p1) ||
        __builtin_add_overflow(p0, p1, &sum)) {
        throw OverflowError("Mat2 product entry exceeds 64 bits");
    }
    return sum;
}

}  // namespace

Mat2 mul(const Mat2& w, const Mat2& g) {
    return {
        checked_dot(w.a, g.a, w.b, g.c),
        checked_dot(w.a, g.b, w.b, g.d),
        checked_dot(w.c, g.a, w.d, g.c),
        checked_dot(w.c, g.b, w.d, g.d),
    };
}

bool is_semigroup_element(const Mat2& w) noexcept {
    return w.det() == 1 && w.a <= w.b && w.b <= w.d && w.a <= w.c && w.c <= w.d && w.d >= 2;
}

Alphabet::Alphabet(int bound) : bound_(bound) {
    if (bound < 1) {
        throw ArgumentError("alphabet bound must be >= 1, got " + std::to_string(bound));
    }
    pairs_.reserve(static_cast<std::size_t>(bound) * static_cast<std::size_t>(bound));
    for (int i = 1; i <= bound; ++i) {
        for (int j = 1; j <= bound; ++j) {
            pairs_.push_back(compose_pair(i, j));
        }
    }
}

void Alphabet::check_index(int i) const {
    if (i < 1 || i > bound_) {
        throw ArgumentError("partial quotient " + std::to_string(i) + " outside 1.." +
                            std::to_string(bound_));
    }
}

Mat2 Alphabet::generator(int i) const {
    check_index(i);
    return {0, 1, 1, static_cast<std::uint64_t>(i)};
}

Mat2 Alphabet::compose_pair(int i, int j) const {
    return mul(generator(i), generator(j));
}

}  // namespace cfml
