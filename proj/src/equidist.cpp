#include "cfml/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfml/enumerator.hpp"
#include "cfml/errors.hpp"

namespace cfml {

ResidueHistogram::ResidueHistogram(int max_modulus) : max_modulus_(max_modulus) {
    if (max_modulus < 1) {
        throw ArgumentError("max modulus must be >= 1, got " + std::to_string(max_modulus));
    }
    counts_.assign(offset(max_modulus + 1), 0);
}

std::size_t ResidueHistogram::offset(int m) const noexcept {
    auto mm = static_cast<std::size_t>(m);
    return mm * (mm - 1) / 2;
}

void ResidueHistogram::add(std::uint64_t value, std::uint64_t times) {
    for (int m = 1; m <= max_modulus_; ++m) {
        counts_[offset(m) + value % static_cast<std::uint64_t>(m)] += times;
    }
    total_ += times;
}

void ResidueHistogram::merge(const ResidueHistogram& other) {
    if (other.max_modulus_ != max_modulus_) {
        throw ArgumentError("cannot merge histograms with different moduli ranges");
    }
    std::transform(counts_.begin(), counts_.end(), other.counts_.begin(), counts_.begin(),
                   std::plus<>{});
    total_ += other.total_;
}

std::span<const std::uint64_t> ResidueHistogram::row(int m) const {
    if (m < 1 || m > max_modulus_) {
        throw ArgumentError("modulus " + std::to_string(m) + " outside 1.." +
                            std::to_string(max_modulus_));
    }
    return std::span<const std::uint64_t>(counts_).subspan(offset(m), static_cast<std::size_t>(m));
}

std::uint64_t ResidueHistogram::count(int m, int r) const {
    auto counts = row(m);
    if (r < 0 || r >= m) {
        throw ArgumentError("residue " + std::to_string(r) + " outside 0.." + std::to_string(m - 1));
    }
    return counts[static_cast<std::size_t>(r)];
}

ResidueHistogram residue_histogram(const TallyTable& tally, int max_modulus) {
    ResidueHistogram h(max_modulus);
    for (std::uint64_t n = 2; n <= tally.bound(); ++n) {
        if (auto k = tally.mult(n); k != 0) {
            h.add(n, k);
        }
    }
    return h;
}

double absolute_error(const ResidueHistogram& h, int r, int m) {
    const double expected = static_cast<double>(h.total()) / m;
    return std::abs(static_cast<double>(h.count(m, r)) - expected);
}

double largest_error(const ResidueHistogram& h, int m) {
    double worst = 0.0;
    for (int r = 0; r < static_cast<int>(h.row(m).size()); ++r) {
        worst = std::max(worst, absolute_error(h, r, m));
    }
    return worst;
}

double normalized_largest_error(const ResidueHistogram& h, int m) {
    if (h.total() == 0) {
        throw DataError("normalized error of an empty truncation");
    }
    return largest_error(h, m) / static_cast<double>(h.total());
}

}  // namespace cfml
