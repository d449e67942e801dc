#pragma once

#include "resmi/partition.hpp"
#include "resmi/rng.hpp"

namespace resmi {

enum class GroundTruthKind { equal_32, asymmetric };

struct GroundTruthSpec {
    GroundTruthKind kind = GroundTruthKind::equal_32;
    int n = 1024;
};

// equal_32: 32 blocks of n/32 objects. asymmetric: one block of n/2,
// one of n/4, the remainder split over 5 blocks as evenly as possible
// with larger parts first (for n=1024: 512, 256, 52, 51, 51, 51, 51).
Labeling ground_truth(const GroundTruthSpec& spec);

// Assigns all n objects to exactly c non-empty clusters: one anchor
// object per cluster at a random position, everything else i.i.d.
// uniform over the c labels.
Labeling random_reassign(int n, int c, Rng& rng);

// Merges (c < M) or splits (c > M) clusters of f until exactly c
// remain. Merge picks two distinct clusters uniformly; split picks a
// cluster of size >= 2 uniformly and moves round(u * size) random
// members, u ~ Unif(0,1), clamped so both parts stay non-empty.
Labeling merge_split(const Labeling& f, int c, Rng& rng);

// Permutes the labels of a uniformly chosen subset of round(p * n)
// objects among themselves; cluster sizes are preserved exactly.
Labeling shuffle_labels(const Labeling& f, double p, Rng& rng);

// Like shuffle_labels but restricted to objects outside main_cluster,
// and selected objects draw a fresh uniform label over all clusters of
// f instead of permuting. main_cluster members never move.
Labeling shuffle_outside_main(const Labeling& f, double p, int main_cluster,
                              Rng& rng);

}  // namespace resmi
