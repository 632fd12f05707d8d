#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cfml/equidist.hpp"
#include "cfml/mat2.hpp"

namespace cfml {

struct EnumConfig {
    int alphabet_bound = 5;
    std::uint64_t target_bound = 2;  // N: largest denominator tallied
    int worker_count = 1;
    int residue_moduli_max = 0;  // 0 skips residue collection

    /// Throws ArgumentError unless A >= 1, N >= 1, workers >= 1, 0 <= M <= N.
    void validate() const;
};

/// Exact multiplicities mult(n) = #{gamma : f(gamma) = n} and cumulative ball
/// counts |B_n| for 0 <= n <= N. Entries below 2 are always zero.
class TallyTable {
  public:
    /// mult is indexed by n and has size N + 1.
    TallyTable(std::vector<std::uint64_t> mult, std::uint64_t total_nodes);

    /// Table whose node count is the sum of mult.
    static TallyTable from_mult(std::vector<std::uint64_t> mult);

    std::uint64_t bound() const noexcept { return mult_.size() - 1; }
    std::uint64_t total_nodes() const noexcept { return total_nodes_; }

    std::uint64_t mult(std::uint64_t n) const { return mult_.at(n); }
    std::uint64_t ball(std::uint64_t n) const { return ball_.at(n); }

    std::span<const std::uint64_t> mult_view() const noexcept { return mult_; }
    std::span<const std::uint64_t> ball_view() const noexcept { return ball_; }

    /// Copy restricted to n <= bound.
    TallyTable truncated(std::uint64_t bound) const;

    bool operator==(const TallyTable&) const = default;

  private:
    std::vector<std::uint64_t> mult_;
    std::vector<std::uint64_t> ball_;
    std::uint64_t total_nodes_;
};

struct EnumResult {
    TallyTable tally;
    std::optional<ResidueHistogram> residues;
};

/// Depth-first enumeration of the S_2 Cayley tree rooted at the identity,
/// pruned at d > N. Result does not depend on worker_count.
EnumResult enumerate(const EnumConfig& config);

/// mult[n] for 2 <= n <= N; ArgumentError otherwise.
std::uint64_t sphere_count(const TallyTable& t, std::uint64_t n);

/// Single-threaded traversal over full matrices with checked products.
/// Calls visit once per non-root node with d <= bound, parents before children.
void for_each_node(const Alphabet& alphabet, std::uint64_t bound,
                   const std::function<void(const Mat2&)>& visit);

}  // namespace cfml
