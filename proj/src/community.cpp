#include "resmi/community.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace resmi {

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(num_nodes, 0);
    for (auto [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

Graph load_edge_list(std::istream& in) {
    Graph g;
    std::map<std::string, int> ids;
    std::set<std::pair<int, int>> edge_set;
    std::string line;
    int line_no = 0;
    auto node = [&](const std::string& tok) {
        auto [it, inserted] = ids.emplace(tok, static_cast<int>(ids.size()));
        if (inserted) g.node_ids.push_back(tok);
        return it->second;
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a) || a[0] == '#') continue;
        if (!(ls >> b))
            throw std::runtime_error("malformed edge list at line " +
                                     std::to_string(line_no));
        const int u = node(a), v = node(b);
        if (u == v) {
            ++g.dropped_self_loops;
            continue;
        }
        edge_set.emplace(std::min(u, v), std::max(u, v));
    }
    g.num_nodes = static_cast<int>(ids.size());
    g.edges.assign(edge_set.begin(), edge_set.end());
    return g;
}

std::pair<Graph, std::vector<int>> largest_component(const Graph& g) {
    std::vector<std::vector<int>> adj(g.num_nodes);
    for (auto [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> comp(g.num_nodes, -1);
    int best = -1, best_size = 0, num_comps = 0;
    for (int s = 0; s < g.num_nodes; ++s) {
        if (comp[s] != -1) continue;
        int size = 0;
        std::vector<int> stack{s};
        comp[s] = num_comps;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            ++size;
            for (int v : adj[u]) {
                if (comp[v] == -1) {
                    comp[v] = num_comps;
                    stack.push_back(v);
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best = num_comps;
        }
        ++num_comps;
    }
    std::vector<int> kept;
    std::vector<int> remap(g.num_nodes, -1);
    for (int i = 0; i < g.num_nodes; ++i) {
        if (comp[i] == best) {
            remap[i] = static_cast<int>(kept.size());
            kept.push_back(i);
        }
    }
    Graph sub;
    sub.num_nodes = static_cast<int>(kept.size());
    for (int i : kept)
        sub.node_ids.push_back(i < static_cast<int>(g.node_ids.size())
                                   ? g.node_ids[i]
                                   : std::to_string(i));
    for (auto [u, v] : g.edges)
        if (remap[u] != -1 && remap[v] != -1)
            sub.edges.emplace_back(remap[u], remap[v]);
    return {std::move(sub), std::move(kept)};
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

struct KmeansRun {
    std::vector<int> assign;
    double cost = std::numeric_limits<double>::infinity();
};

KmeansRun lloyd_once(const std::vector<std::vector<double>>& points, int k,
                     int max_iters, Rng& rng) {
    const int n = static_cast<int>(points.size());
    const std::size_t dim = points[0].size();

    // Distance-weighted seeding.
    std::vector<std::vector<double>> centers;
    centers.push_back(points[rng.next_below(n)]);
    std::vector<double> d2(n);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centers) best = std::min(best, sq_dist(points[i], c));
            d2[i] = best;
            total += best;
        }
        int pick = 0;
        if (total > 0.0) {
            double target = rng.next_double() * total, acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<int>(rng.next_below(n));
        }
        centers.push_back(points[pick]);
    }

    std::vector<int> assign(n, 0);
    double prev_cost = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < max_iters; ++iter) {
        double cost = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int c = 0; c < k; ++c) {
                const double d = sq_dist(points[i], centers[c]);
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            assign[i] = arg;
            cost += best;
        }
        // Repair empty clusters by stealing the farthest point.
        std::vector<int> counts(k, 0);
        for (int a : assign) ++counts[a];
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            int far = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                if (counts[assign[i]] <= 1) continue;
                const double d = sq_dist(points[i], centers[assign[i]]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            --counts[assign[far]];
            assign[far] = c;
            counts[c] = 1;
        }
        for (auto& c : centers) std::fill(c.begin(), c.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            ++counts[assign[i]];
            for (std::size_t d = 0; d < dim; ++d) centers[assign[i]][d] += points[i][d];
        }
        for (int c = 0; c < k; ++c)
            for (std::size_t d = 0; d < dim; ++d) centers[c][d] /= counts[c];
        if (cost >= prev_cost - 1e-12) {
            prev_cost = std::min(prev_cost, cost);
            break;
        }
        prev_cost = cost;
    }

    KmeansRun run;
    run.assign = std::move(assign);
    run.cost = 0.0;
    for (int i = 0; i < n; ++i) run.cost += sq_dist(points[i], centers[run.assign[i]]);
    return run;
}

}  // namespace

std::vector<int> kmeans(const std::vector<std::vector<double>>& points, int k,
                        int restarts, int max_iters, Rng& rng) {
    if (k < 1 || k > static_cast<int>(points.size()))
        throw std::invalid_argument("k out of range for kmeans");
    KmeansRun best;
    for (int r = 0; r < std::max(1, restarts); ++r) {
        KmeansRun run = lloyd_once(points, k, max_iters, rng);
        if (run.cost < best.cost) best = std::move(run);
    }
    return best.assign;
}

Labeling score_plus(const Graph& g, const ScorePlusParams& params) {
    const int n = g.num_nodes;
    const int c = params.c;
    if (c < 2) throw std::invalid_argument("community count must be >= 2");
    if (c + 1 > n) throw std::invalid_argument("graph too small for c communities");

    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
    for (auto [u, v] : g.edges) {
        adj(u, v) = 1.0;
        adj(v, u) = 1.0;
    }
    const std::vector<int> deg = g.degrees();
    const double mean_deg =
        std::accumulate(deg.begin(), deg.end(), 0.0) / static_cast<double>(n);

    Eigen::VectorXd inv_sqrt(n);
    for (int i = 0; i < n; ++i)
        inv_sqrt(i) = 1.0 / std::sqrt(deg[i] + params.ridge_delta * mean_deg);
    const Eigen::MatrixXd lap =
        inv_sqrt.asDiagonal() * adj * inv_sqrt.asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge");

    // Eigen returns ascending order; take the top c+1 by value.
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    std::vector<double> lambda(c + 1);
    Eigen::MatrixXd top(n, c + 1);
    for (int k = 0; k <= c; ++k) {
        const int idx = n - 1 - k;
        lambda[k] = vals(idx);
        top.col(k) = vecs.col(idx);
        // Fix sign: largest-magnitude entry positive.
        int arg = 0;
        top.col(k).cwiseAbs().maxCoeff(&arg);
        if (top(arg, k) < 0.0) top.col(k) = -top.col(k);
    }

    int keep = c;
    if (std::abs(lambda[c - 1]) > 1e-15 &&
        1.0 - lambda[c] / lambda[c - 1] < params.eigengap_threshold)
        keep = c + 1;

    for (int i = 0; i < n; ++i) {
        if (std::abs(top(i, 0)) < 1e-12)
            throw std::runtime_error(
                "leading eigenvector has zero entries; restrict to the "
                "largest connected component");
    }

    std::vector<std::vector<double>> ratios(n, std::vector<double>(keep - 1));
    for (int i = 0; i < n; ++i)
        for (int k = 1; k < keep; ++k)
            ratios[i][k - 1] = top(i, k) / top(i, 0);

    Rng rng(params.seed);
    const std::vector<int> assign =
        kmeans(ratios, c, params.kmeans_restarts, params.kmeans_max_iters, rng);
    return make_labeling(assign);
}

std::pair<Graph, Labeling> sample_sbm(const std::vector<int>& block_sizes,
                                      double p_in, double p_out, Rng& rng) {
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw std::invalid_argument("probabilities outside [0,1]");
    std::vector<int> planted;
    for (std::size_t b = 0; b < block_sizes.size(); ++b)
        planted.insert(planted.end(), block_sizes[b], static_cast<int>(b));
    Graph g;
    g.num_nodes = static_cast<int>(planted.size());
    for (int i = 0; i < g.num_nodes; ++i) {
        for (int j = i + 1; j < g.num_nodes; ++j) {
            const double p = planted[i] == planted[j] ? p_in : p_out;
            if (rng.next_double() < p) g.edges.emplace_back(i, j);
        }
    }
    return {std::move(g), make_labeling(planted)};
}

}  // namespace resmi
