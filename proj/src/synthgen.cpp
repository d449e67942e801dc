#include "resmi/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace resmi {

Labeling ground_truth(const GroundTruthSpec& spec) {
    std::vector<int> labels;
    labels.reserve(spec.n);
    if (spec.kind == GroundTruthKind::equal_32) {
        if (spec.n < 32 || spec.n % 32 != 0)
            throw std::invalid_argument("equal_32 requires n divisible by 32");
        const int size = spec.n / 32;
        for (int c = 0; c < 32; ++c)
            labels.insert(labels.end(), size, c);
    } else {
        if (spec.n < 8)
            throw std::invalid_argument("asymmetric requires n >= 8");
        const int main = spec.n / 2;
        const int second = spec.n / 4;
        int rest = spec.n - main - second;
        labels.insert(labels.end(), main, 0);
        labels.insert(labels.end(), second, 1);
        // Remainder over 5 clusters, as even as possible, larger first.
        for (int c = 0; c < 5; ++c) {
            const int size = (rest + (4 - c)) / (5 - c);
            labels.insert(labels.end(), size, 2 + c);
            rest -= size;
        }
    }
    return make_labeling(labels);
}

Labeling random_reassign(int n, int c, Rng& rng) {
    if (c < 1 || c > n)
        throw std::invalid_argument("cluster count out of range");
    std::vector<int> labels(n);
    // One anchor per cluster at a random position, rest i.i.d. uniform.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (int k = 0; k < c; ++k) labels[order[k]] = k;
    for (int k = c; k < n; ++k)
        labels[order[k]] = static_cast<int>(rng.next_below(c));
    return make_labeling(labels);
}

Labeling merge_split(const Labeling& f, int c, Rng& rng) {
    if (c < 1)
        throw std::invalid_argument("cluster count out of range");
    if (c > f.n())
        throw std::invalid_argument("cannot split beyond singletons");
    std::vector<int> labels = f.labels();
    int m = f.num_clusters();
    while (m > c) {
        // Merge two distinct clusters chosen uniformly.
        const int a = static_cast<int>(rng.next_below(m));
        int b = static_cast<int>(rng.next_below(m - 1));
        if (b >= a) ++b;
        const int keep = std::min(a, b), gone = std::max(a, b);
        for (int& v : labels) {
            if (v == gone) v = keep;
            else if (v > gone) --v;
        }
        --m;
    }
    if (m < c) {
        std::vector<std::vector<int>> members(m);
        for (int i = 0; i < static_cast<int>(labels.size()); ++i)
            members[labels[i]].push_back(i);
        while (m < c) {
            std::vector<int> splittable;
            for (int k = 0; k < m; ++k)
                if (members[k].size() >= 2) splittable.push_back(k);
            const int src = splittable[rng.next_below(splittable.size())];
            const auto size = static_cast<std::int64_t>(members[src].size());
            const double u = rng.next_double();
            std::int64_t take = std::llround(u * static_cast<double>(size));
            take = std::clamp<std::int64_t>(take, 1, size - 1);
            rng.shuffle(members[src]);
            members.emplace_back(members[src].end() - take, members[src].end());
            members[src].resize(members[src].size() - take);
            for (int i : members.back()) labels[i] = m;
            ++m;
        }
    }
    return make_labeling(labels);
}

namespace {

// First round(p * pool.size()) positions of a random shuffle of pool.
std::vector<int> pick_subset(std::vector<int> pool, double p, Rng& rng) {
    const auto k = static_cast<std::size_t>(
        std::llround(p * static_cast<double>(pool.size())));
    rng.shuffle(pool);
    pool.resize(k);
    return pool;
}

}  // namespace

Labeling shuffle_labels(const Labeling& f, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("proportion outside [0,1]");
    std::vector<int> all(f.n());
    std::iota(all.begin(), all.end(), 0);
    const std::vector<int> chosen = pick_subset(std::move(all), p, rng);
    std::vector<int> labels = f.labels();
    std::vector<int> bag;
    bag.reserve(chosen.size());
    for (int i : chosen) bag.push_back(labels[i]);
    rng.shuffle(bag);
    for (std::size_t k = 0; k < chosen.size(); ++k) labels[chosen[k]] = bag[k];
    return make_labeling(labels);
}

Labeling shuffle_outside_main(const Labeling& f, double p, int main_cluster,
                              Rng& rng) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("proportion outside [0,1]");
    if (main_cluster < 0 || main_cluster >= f.num_clusters())
        throw std::invalid_argument("main cluster id not present");
    std::vector<int> outside;
    for (int i = 0; i < f.n(); ++i)
        if (f[i] != main_cluster) outside.push_back(i);
    const std::vector<int> chosen = pick_subset(std::move(outside), p, rng);
    std::vector<int> labels = f.labels();
    const int m = f.num_clusters();
    for (int i : chosen)
        labels[i] = static_cast<int>(rng.next_below(m));
    return make_labeling(labels);
}

}  // namespace resmi
