#include "cfml/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "cfml/errors.hpp"

namespace cfml {

void EnumConfig::validate() const {
    if (alphabet_bound < 1) {
        throw ArgumentError("alphabet bound must be >= 1");
    }
    if (target_bound < 1) {
        throw ArgumentError("target bound must be >= 1");
    }
    if (target_bound > (std::uint64_t{1} << 50)) {
        throw ArgumentError("target bound exceeds 2^50");
    }
    if (worker_count < 1) {
        throw ArgumentError("worker count must be >= 1");
    }
    if (residue_moduli_max < 0 || static_cast<std::uint64_t>(residue_moduli_max) > target_bound) {
        throw ArgumentError("residue moduli max must lie in 0..N");
    }
}

TallyTable::TallyTable(std::vector<std::uint64_t> mult, std::uint64_t total_nodes)
    : mult_(std::move(mult)), total_nodes_(total_nodes) {
    if (mult_.empty()) {
        throw ArgumentError("tally needs at least the n = 0 slot");
    }
    ball_.resize(mult_.size());
    std::uint64_t running = 0;
    for (std::size_t n = 0; n < mult_.size(); ++n) {
        running += mult_[n];
        ball_[n] = running;
    }
}

TallyTable TallyTable::from_mult(std::vector<std::uint64_t> mult) {
    std::uint64_t total = 0;
    for (auto k : mult) total += k;
    return TallyTable(std::move(mult), total);
}

TallyTable TallyTable::truncated(std::uint64_t bound) const {
    if (bound > this->bound()) {
        throw ArgumentError("truncation bound above table bound");
    }
    return from_mult({mult_.begin(), mult_.begin() + static_cast<std::ptrdiff_t>(bound) + 1});
}

std::uint64_t sphere_count(const TallyTable& t, std::uint64_t n) {
    if (n < 2 || n > t.bound()) {
        throw ArgumentError("sphere index " + std::to_string(n) + " outside 2.." +
                            std::to_string(t.bound()));
    }
    return t.mult(n);
}

namespace {

// Bottom row (c, d) of a tree node. The bottom row of w * g depends only on
// the bottom row of w, so it is all the tally needs.
struct Row {
    std::uint64_t c;
    std::uint64_t d;
};

// Children of (c, d) under g = [[1, j], [i, ij + 1]] have bottom row
// (c + d*i, (c + d*i)*j + d), increasing in both i and j, so each loop can
// stop at the first child beyond the bound.
template <typename Visit>
inline void for_each_child(Row w, std::uint64_t alphabet, std::uint64_t bound, Visit&& visit) {
    for (std::uint64_t i = 1; i <= alphabet; ++i) {
        const std::uint64_t c = w.c + w.d * i;
        if (c + w.d > bound) break;
        for (std::uint64_t j = 1; j <= alphabet; ++j) {
            const std::uint64_t d = c * j + w.d;
            if (d > bound) break;
            visit(Row{c, d});
        }
    }
}

struct WorkerTally {
    std::vector<std::uint64_t> mult;
    std::uint64_t nodes = 0;
};

// Tallies every strict descendant of root.
void walk_subtree(Row root, std::uint64_t alphabet, std::uint64_t bound, WorkerTally& out,
                  std::vector<Row>& stack) {
    stack.clear();
    stack.push_back(root);
    auto* mult = out.mult.data();
    std::uint64_t nodes = 0;
    while (!stack.empty()) {
        const Row w = stack.back();
        stack.pop_back();
        for_each_child(w, alphabet, bound, [&](Row child) {
            ++mult[child.d];
            ++nodes;
            stack.push_back(child);
        });
    }
    out.nodes += nodes;
}

}  // namespace

EnumResult enumerate(const EnumConfig& config) {
    config.validate();
    const auto alphabet = static_cast<std::uint64_t>(config.alphabet_bound);
    const std::uint64_t bound = config.target_bound;
    const auto workers = static_cast<std::size_t>(config.worker_count);

    WorkerTally head{std::vector<std::uint64_t>(bound + 1, 0), 0};

    // Breadth-first until there are enough independent subtrees to share out.
    // Frontier nodes are already tallied.
    const std::size_t target_frontier = 64 * workers;
    std::vector<Row> frontier{Row{0, 1}};
    while (!frontier.empty() && frontier.size() < target_frontier) {
        std::vector<Row> next;
        for (const Row& w : frontier) {
            for_each_child(w, alphabet, bound, [&](Row child) {
                ++head.mult[child.d];
                ++head.nodes;
                next.push_back(child);
            });
        }
        frontier = std::move(next);
    }

    std::vector<WorkerTally> partials(std::min(workers, std::max<std::size_t>(frontier.size(), 1)));
    std::atomic<std::size_t> next_index{0};
    auto run = [&](WorkerTally& out) {
        out.mult.assign(bound + 1, 0);
        std::vector<Row> stack;
        for (std::size_t k = next_index.fetch_add(1); k < frontier.size();
             k = next_index.fetch_add(1)) {
            walk_subtree(frontier[k], alphabet, bound, out, stack);
        }
    };
    if (partials.size() == 1) {
        run(partials.front());
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(partials.size());
        for (auto& p : partials) {
            pool.emplace_back([&run, &p] { run(p); });
        }
    }

    for (const auto& p : partials) {
        for (std::size_t n = 0; n < p.mult.size(); ++n) head.mult[n] += p.mult[n];
        head.nodes += p.nodes;
    }

    EnumResult result{TallyTable(std::move(head.mult), head.nodes), std::nullopt};
    if (config.residue_moduli_max > 0) {
        result.residues = residue_histogram(result.tally, config.residue_moduli_max);
    }
    return result;
}

void for_each_node(const Alphabet& alphabet, std::uint64_t bound,
                   const std::function<void(const Mat2&)>& visit) {
    std::vector<Mat2> stack{Mat2::identity()};
    while (!stack.empty()) {
        const Mat2 w = stack.back();
        stack.pop_back();
        for (const Mat2& g : alphabet.gen_pairs()) {
            const Mat2 child = mul(w, g);
            if (project_f(child) > bound) continue;
            visit(child);
            stack.push_back(child);
        }
    }
}

}  // namespace cfml
