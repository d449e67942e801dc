#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "resmi/partition.hpp"
#include "resmi/rng.hpp"

namespace resmi {

// Simple undirected graph with dense node indices.
struct Graph {
    int num_nodes = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, unique
    std::vector<std::string> node_ids;       // external ids, index order
    int dropped_self_loops = 0;

    std::vector<int> degrees() const;
};

// Parses "u v [ignored...]" lines; '#' comments and blank lines are
// skipped, duplicate edges collapsed, self-loops dropped (counted).
Graph load_edge_list(std::istream& in);

// Subgraph induced by the largest connected component, plus the kept
// original node indices.
std::pair<Graph, std::vector<int>> largest_component(const Graph& g);

struct ScorePlusParams {
    int c = 2;
    double ridge_delta = 0.1;
    double eigengap_threshold = 0.1;
    int kmeans_restarts = 20;
    int kmeans_max_iters = 200;
    RngSeed seed;
};

// Lloyd iterations with distance-weighted seeding, best of `restarts`
// by within-cluster sum of squares. Always returns exactly k non-empty
// clusters (an empty cluster steals the point farthest from its
// center).
std::vector<int> kmeans(const std::vector<std::vector<double>>& points, int k,
                        int restarts, int max_iters, Rng& rng);

// SCORE+ spectral community detection: degree-regularized normalized
// adjacency, leading eigenvectors (one extra when the relative eigengap
// is weak), entrywise ratios against the leading eigenvector, k-means
// on the ratio rows.
Labeling score_plus(const Graph& g, const ScorePlusParams& params);

// Stochastic block model sampler; returns the graph and the planted
// labeling.
std::pair<Graph, Labeling> sample_sbm(const std::vector<int>& block_sizes,
                                      double p_in, double p_out, Rng& rng);

}  // namespace resmi
