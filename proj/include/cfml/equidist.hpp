#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cfml {

class TallyTable;

/// Counts of f(gamma) mod m over a bounded truncation T of the semigroup,
/// for every modulus 1 <= m <= M.
class ResidueHistogram {
  public:
    /// Empty histogram over moduli 1..max_modulus.
    explicit ResidueHistogram(int max_modulus);

    int max_modulus() const noexcept { return max_modulus_; }
    std::uint64_t total() const noexcept { return total_; }

    /// Records one element whose projection is `value`.
    void add(std::uint64_t value, std::uint64_t times = 1);

    /// Elementwise sum; both histograms must share max_modulus.
    void merge(const ResidueHistogram& other);

    std::uint64_t count(int m, int r) const;
    std::span<const std::uint64_t> row(int m) const;

  private:
    std::size_t offset(int m) const noexcept;

    int max_modulus_;
    std::uint64_t total_ = 0;
    std::vector<std::uint64_t> counts_;  // row m starts at m(m-1)/2
};

/// Residue histogram of the truncation {d <= tally.bound()}, built from the
/// multiplicity table. Equal to accumulating each tree node individually.
ResidueHistogram residue_histogram(const TallyTable& tally, int max_modulus);

/// |counts[m][r] - total/m|.
double absolute_error(const ResidueHistogram& h, int r, int m);

/// max over 0 <= r < m of absolute_error(r, m).
double largest_error(const ResidueHistogram& h, int m);

/// largest_error(m) / total. Throws DataError on an empty truncation.
double normalized_largest_error(const ResidueHistogram& h, int m);

}  // namespace cfml
