#include "doctest.h"

#include "cfml/enumerator.hpp"
#include "cfml/equidist.hpp"
#include "cfml/errors.hpp"

using namespace cfml;
using doctest::Approx;

namespace {

ResidueHistogram fixture() {
    // A=2, d <= 5: T = {2, 3, 3, 5, 5}
    ResidueHistogram h(5);
    for (std::uint64_t d : {2, 3, 3, 5, 5}) h.add(d);
    return h;
}

}  // namespace

TEST_CASE("hand fixture") {
    const auto h = fixture();
    CHECK(absolute_error(h, 0, 1) == 0.0);
    CHECK(absolute_error(h, 0, 2) == Approx(1.5));
    CHECK(absolute_error(h, 1, 2) == Approx(1.5));
    CHECK(largest_error(h, 1) == 0.0);
    CHECK(largest_error(h, 2) == Approx(1.5));
    CHECK(largest_error(h, 5) == Approx(1.0));
    CHECK(normalized_largest_error(h, 1) == 0.0);
    CHECK(normalized_largest_error(h, 2) == Approx(0.3));
    CHECK(normalized_largest_error(h, 5) == Approx(0.2));
}

TEST_CASE("range errors") {
    const auto h = fixture();
    CHECK_THROWS_AS(absolute_error(h, 2, 2), ArgumentError);
    CHECK_THROWS_AS(absolute_error(h, -1, 2), ArgumentError);
    CHECK_THROWS_AS(largest_error(h, 0), ArgumentError);
    CHECK_THROWS_AS(largest_error(h, 6), ArgumentError);
    CHECK_THROWS_AS(normalized_largest_error(ResidueHistogram(3), 2), DataError);
    CHECK_THROWS_AS(ResidueHistogram(0), ArgumentError);
}

TEST_CASE("per-node accumulation equals the tally-derived histogram") {
    const Alphabet alpha(5);
    const std::uint64_t bound = 3000;
    ResidueHistogram direct(30);
    for_each_node(alpha, bound, [&](const Mat2& w) { direct.add(project_f(w)); });

    EnumConfig config;
    config.alphabet_bound = 5;
    config.target_bound = bound;
    config.residue_moduli_max = 30;
    config.worker_count = 3;
    const auto from_tally = *enumerate(config).residues;

    CHECK(from_tally.total() == direct.total());
    for (int m = 1; m <= 30; ++m) {
        for (int r = 0; r < m; ++r) CHECK(from_tally.count(m, r) == direct.count(m, r));
    }
}

TEST_CASE("conservation, bounds and refinement") {
    EnumConfig config;
    config.alphabet_bound = 4;
    config.target_bound = 20000;
    config.residue_moduli_max = 30;
    const auto h = *enumerate(config).residues;
    CHECK(h.count(1, 0) == h.total());
    for (int m = 1; m <= 30; ++m) {
        std::uint64_t sum = 0;
        for (auto k : h.row(m)) sum += k;
        CHECK(sum == h.total());
        CHECK(normalized_largest_error(h, m) <= 1.0 - 1.0 / m + 1e-12);
        for (int k = 2; k * m <= 30; ++k) {
            for (int r = 0; r < m; ++r) {
                std::uint64_t folded = 0;
                for (int s = r; s < k * m; s += m) folded += h.count(k * m, s);
                CHECK(folded == h.count(m, r));
            }
        }
    }
}

TEST_CASE("merge") {
    auto a = fixture();
    const auto b = fixture();
    a.merge(b);
    CHECK(a.total() == 10);
    CHECK(a.count(5, 0) == 4);
    CHECK_THROWS_AS(a.merge(ResidueHistogram(4)), ArgumentError);
}
