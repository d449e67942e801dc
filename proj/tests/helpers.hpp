#pragma once

#include <vector>

#include "resmi/partition.hpp"
#include "resmi/rng.hpp"

namespace resmi::test {

// Random labeling with n objects and at most max_clusters labels
// (compacted, so the realized count may be smaller).
inline Labeling random_labeling(int n, int max_clusters, Rng& rng) {
    std::vector<int> raw(n);
    const int m = 1 + static_cast<int>(rng.next_below(max_clusters));
    for (int i = 0; i < n; ++i)
        raw[i] = static_cast<int>(rng.next_below(m));
    return make_labeling(raw);
}

}  // namespace resmi::test
