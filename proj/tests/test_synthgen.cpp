#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "helpers.hpp"
#include "resmi/synthgen.hpp"

using namespace resmi;

TEST_CASE("ground_truth equal_32") {
    const Labeling big = ground_truth({GroundTruthKind::equal_32, 1024});
    CHECK(big.num_clusters() == 32);
    for (std::int64_t s : big.cluster_sizes()) CHECK(s == 32);

    const Labeling small = ground_truth({GroundTruthKind::equal_32, 64});
    CHECK(small.num_clusters() == 32);
    for (std::int64_t s : small.cluster_sizes()) CHECK(s == 2);

    CHECK_THROWS(ground_truth({GroundTruthKind::equal_32, 100}));
}

TEST_CASE("ground_truth asymmetric") {
    const Labeling l = ground_truth({GroundTruthKind::asymmetric, 1024});
    CHECK(l.cluster_sizes() ==
          std::vector<std::int64_t>{512, 256, 52, 51, 51, 51, 51});
    CHECK_THROWS(ground_truth({GroundTruthKind::asymmetric, 4}));
}

TEST_CASE("generators are deterministic per seed") {
    for (std::uint64_t stream = 0; stream < 3; ++stream) {
        Rng r1({9, stream}), r2({9, stream});
        CHECK(random_reassign(200, 17, r1).labels() ==
              random_reassign(200, 17, r2).labels());
    }
    const Labeling f = ground_truth({GroundTruthKind::equal_32, 256});
    Rng r1({4, 2}), r2({4, 2}), r3({4, 3});
    CHECK(shuffle_labels(f, 0.5, r1).labels() ==
          shuffle_labels(f, 0.5, r2).labels());
    CHECK(shuffle_labels(f, 0.5, r3).labels() !=
          shuffle_labels(f, 0.5, r1).labels());
}

TEST_CASE("random_reassign produces exactly c non-empty clusters") {
    Rng rng({1, 0});
    for (int c : {1, 2, 3, 32, 100, 1023, 1024}) {
        const Labeling l = random_reassign(1024, c, rng);
        CHECK(l.n() == 1024);
        CHECK(l.num_clusters() == c);
    }
    CHECK_THROWS(random_reassign(10, 11, rng));
}

TEST_CASE("merge_split endpoints and identity") {
    const Labeling f = ground_truth({GroundTruthKind::equal_32, 256});
    Rng rng({2, 0});

    CHECK(merge_split(f, 32, rng).labels() == f.labels());
    CHECK(merge_split(f, 1, rng).num_clusters() == 1);
    CHECK(merge_split(f, 256, rng).num_clusters() == 256);
    CHECK_THROWS_WITH(merge_split(f, 257, rng), "cannot split beyond singletons");
}

TEST_CASE("merge_split coarsens or refines") {
    Rng rng({3, 0});
    for (int trial = 0; trial < 20; ++trial) {
        const Labeling f = test::random_labeling(120, 10, rng);
        const int m = f.num_clusters();

        if (m > 2) {
            const int c = 1 + static_cast<int>(rng.next_below(m - 1));
            const Labeling merged = merge_split(f, c, rng);
            CHECK(merged.num_clusters() == c);
            // Coarsening: each input cluster maps into one output cluster.
            std::map<int, int> image;
            for (int i = 0; i < f.n(); ++i) {
                auto [it, fresh] = image.emplace(f[i], merged[i]);
                CHECK(it->second == merged[i]);
            }
        }

        const int c = m + 1 + static_cast<int>(rng.next_below(20));
        const Labeling split = merge_split(f, c, rng);
        CHECK(split.num_clusters() == c);
        // Refinement: each output cluster maps into one input cluster.
        std::map<int, int> image;
        for (int i = 0; i < f.n(); ++i) {
            auto [it, fresh] = image.emplace(split[i], f[i]);
            CHECK(it->second == f[i]);
        }
    }
}

TEST_CASE("shuffle_labels preserves cluster sizes") {
    Rng rng({6, 0});
    const Labeling f = ground_truth({GroundTruthKind::equal_32, 512});
    for (double p : {0.0, 0.25, 0.5, 1.0}) {
        const Labeling s = shuffle_labels(f, p, rng);
        auto a = f.cluster_sizes();
        auto b = s.cluster_sizes();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
    CHECK(shuffle_labels(f, 0.0, rng).labels() == f.labels());
    CHECK_THROWS(shuffle_labels(f, 1.5, rng));
}

TEST_CASE("shuffle_outside_main never touches the main cluster") {
    Rng rng({6, 1});
    const Labeling f = ground_truth({GroundTruthKind::asymmetric, 1024});
    for (double p : {0.0, 0.3, 1.0}) {
        const Labeling s = shuffle_outside_main(f, p, 0, rng);
        for (int i = 0; i < f.n(); ++i)
            if (f[i] == 0) CHECK(s[i] == 0);
    }
    CHECK(shuffle_outside_main(f, 0.0, 0, rng).labels() == f.labels());
    CHECK_THROWS(shuffle_outside_main(f, 0.5, 99, rng));
}
