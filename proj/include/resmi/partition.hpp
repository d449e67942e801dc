#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace resmi {

// A labeling of n objects with compacted cluster ids 0..M-1.
// Immutable after construction; every id in [0, M) occurs at least once.
class Labeling {
public:
    explicit Labeling(std::vector<int> compact_labels, int num_clusters);

    int n() const { return static_cast<int>(labels_.size()); }
    int num_clusters() const { return num_clusters_; }
    int operator[](int i) const { return labels_[i]; }
    const std::vector<int>& labels() const { return labels_; }

    std::vector<std::int64_t> cluster_sizes() const;

private:
    std::vector<int> labels_;
    int num_clusters_;
};

// Remaps arbitrary label values to 0..M-1 by first-appearance order.
template <typename T>
Labeling make_labeling(const std::vector<T>& raw_labels) {
    if (raw_labels.empty())
        throw std::invalid_argument("empty labeling");
    std::unordered_map<T, int> ids;
    std::vector<int> out;
    out.reserve(raw_labels.size());
    for (const auto& v : raw_labels) {
        auto [it, inserted] = ids.emplace(v, static_cast<int>(ids.size()));
        out.push_back(it->second);
    }
    return Labeling(std::move(out), static_cast<int>(ids.size()));
}

// Joint count table of two labelings with row/column marginals.
struct ContingencyTable {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> counts;  // rows x cols, row-major
    std::vector<std::int64_t> row_sums;
    std::vector<std::int64_t> col_sums;
    std::int64_t n = 0;

    std::int64_t at(int r, int c) const { return counts[static_cast<std::size_t>(r) * cols + c]; }
    ContingencyTable transposed() const;
};

ContingencyTable contingency(const Labeling& f, const Labeling& g);

// Pair-level agreement counts over all C(n,2) object pairs, plus the
// Bernoulli parameters of the same-label indicator variables.
// q_f_given_g / q_f_given_gc are absent when the conditioning pair set
// is empty.
struct PairStats {
    std::int64_t n11 = 0;  // same under f, same under g
    std::int64_t n10 = 0;  // same under f only
    std::int64_t n01 = 0;  // same under g only
    std::int64_t n00 = 0;  // different under both
    double q_f = 0.0;
    double q_g = 0.0;
    std::optional<double> q_f_given_g;
    std::optional<double> q_f_given_gc;

    std::int64_t total_pairs() const { return n11 + n10 + n01 + n00; }
};

// Pair counts derived combinatorially from the contingency table,
// O(M M') after the O(n) table build.
PairStats pair_stats(const Labeling& f, const Labeling& g);

// Direct O(n^2) enumeration of all pairs. Test oracle; identical output
// to pair_stats on every input. Intended for n <= 2000.
PairStats pair_stats_bruteforce(const Labeling& f, const Labeling& g);

// Shannon entropy (nats) of the empirical distribution sums/total.
double marginal_entropy(std::span<const std::int64_t> sums, std::int64_t total);

}  // namespace resmi
