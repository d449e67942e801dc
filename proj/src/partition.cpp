#include "resmi/partition.hpp"

#include <cassert>
#include <cmath>

namespace resmi {

namespace {

std::int64_t choose2(std::int64_t k) { return k * (k - 1) / 2; }

}  // namespace

Labeling::Labeling(std::vector<int> compact_labels, int num_clusters)
    : labels_(std::move(compact_labels)), num_clusters_(num_clusters) {
    if (labels_.empty())
        throw std::invalid_argument("empty labeling");
    std::vector<bool> seen(num_clusters_, false);
    for (int v : labels_) {
        if (v < 0 || v >= num_clusters_)
            throw std::invalid_argument("label out of range");
        seen[v] = true;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("empty cluster in labeling");
}

std::vector<std::int64_t> Labeling::cluster_sizes() const {
    std::vector<std::int64_t> sizes(num_clusters_, 0);
    for (int v : labels_) ++sizes[v];
    return sizes;
}

ContingencyTable ContingencyTable::transposed() const {
    ContingencyTable t;
    t.rows = cols;
    t.cols = rows;
    t.n = n;
    t.row_sums = col_sums;
    t.col_sums = row_sums;
    t.counts.assign(counts.size(), 0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            t.counts[static_cast<std::size_t>(c) * rows + r] = at(r, c);
    return t;
}

ContingencyTable contingency(const Labeling& f, const Labeling& g) {
    if (f.n() != g.n())
        throw std::invalid_argument("labelings differ in n");
    ContingencyTable t;
    t.rows = f.num_clusters();
    t.cols = g.num_clusters();
    t.n = f.n();
    t.counts.assign(static_cast<std::size_t>(t.rows) * t.cols, 0);
    t.row_sums.assign(t.rows, 0);
    t.col_sums.assign(t.cols, 0);
    for (int i = 0; i < f.n(); ++i) {
        ++t.counts[static_cast<std::size_t>(f[i]) * t.cols + g[i]];
        ++t.row_sums[f[i]];
        ++t.col_sums[g[i]];
    }
    return t;
}

namespace {

PairStats finish_pair_stats(std::int64_t n, std::int64_t n11, std::int64_t same_f,
                            std::int64_t same_g) {
    PairStats p;
    const std::int64_t total = choose2(n);
    p.n11 = n11;
    p.n10 = same_f - n11;
    p.n01 = same_g - n11;
    p.n00 = total - same_f - same_g + n11;
    p.q_f = static_cast<double>(same_f) / static_cast<double>(total);
    p.q_g = static_cast<double>(same_g) / static_cast<double>(total);
    if (same_g > 0)
        p.q_f_given_g = static_cast<double>(p.n11) / static_cast<double>(same_g);
    if (total - same_g > 0)
        p.q_f_given_gc =
            static_cast<double>(p.n10) / static_cast<double>(total - same_g);
    return p;
}

}  // namespace

PairStats pair_stats(const Labeling& f, const Labeling& g) {
    if (f.n() != g.n())
        throw std::invalid_argument("labelings differ in n");
    if (f.n() < 2)
        throw std::invalid_argument("need at least two objects");
    const ContingencyTable t = contingency(f, g);
    std::int64_t n11 = 0, same_f = 0, same_g = 0;
    for (std::int64_t c : t.counts) n11 += choose2(c);
    for (std::int64_t r : t.row_sums) same_f += choose2(r);
    for (std::int64_t c : t.col_sums) same_g += choose2(c);
    return finish_pair_stats(t.n, n11, same_f, same_g);
}

PairStats pair_stats_bruteforce(const Labeling& f, const Labeling& g) {
    if (f.n() != g.n())
        throw std::invalid_argument("labelings differ in n");
    if (f.n() < 2)
        throw std::invalid_argument("need at least two objects");
    std::int64_t n11 = 0, same_f = 0, same_g = 0;
    for (int i = 1; i < f.n(); ++i) {
        for (int j = 0; j < i; ++j) {
            const bool sf = f[i] == f[j];
            const bool sg = g[i] == g[j];
            same_f += sf;
            same_g += sg;
            n11 += sf && sg;
        }
    }
    return finish_pair_stats(f.n(), n11, same_f, same_g);
}

double marginal_entropy(std::span<const std::int64_t> sums, std::int64_t total) {
    if (total < 1)
        throw std::invalid_argument("zero total in marginal entropy");
    double h = 0.0;
    for (std::int64_t s : sums) {
        if (s < 0)
            throw std::invalid_argument("negative marginal count");
        if (s > 0) {
            const double p = static_cast<double>(s) / static_cast<double>(total);
            h -= p * std::log(p);
        }
    }
    return h < 0.0 ? 0.0 : h;
}

}  // namespace resmi
