#include "resmi/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>

#include <Eigen/Dense>

namespace resmi {

namespace {

constexpr double kEps = 1e-12;

std::vector<double> log_factorials(std::int64_t up_to) {
    std::vector<double> lf(static_cast<std::size_t>(up_to) + 1, 0.0);
    for (std::int64_t k = 2; k <= up_to; ++k)
        lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
    return lf;
}

double plugin_mi(double n, double n11, double n10, double n01, double n00) {
    // MI of a 2x2 table given as raw counts, 0 log 0 = 0.
    const double r1 = n11 + n10, r0 = n01 + n00;
    const double c1 = n11 + n01, c0 = n10 + n00;
    double mi = 0.0;
    auto add = [&](double cell, double row, double col) {
        if (cell > 0.0) mi += (cell / n) * std::log(cell * n / (row * col));
    };
    add(n11, r1, c1);
    add(n10, r1, c0);
    add(n01, r0, c1);
    add(n00, r0, c0);
    return mi;
}

// Both labelings trivially carry the same information: either both are
// single-cluster or both are all-singletons. Used for the conventional
// value when a chance-corrected denominator degenerates.
bool trivially_identical(const ContingencyTable& t) {
    if (t.rows == 1 && t.cols == 1) return true;
    return t.rows == t.n && t.cols == t.n;
}

}  // namespace

double binary_entropy(double q) {
    if (q < -kEps || q > 1.0 + kEps)
        throw std::invalid_argument("binary_entropy: q outside [0,1]");
    q = std::clamp(q, 0.0, 1.0);
    double h = 0.0;
    if (q > 0.0) h -= q * std::log(q);
    if (q < 1.0) h -= (1.0 - q) * std::log(1.0 - q);
    return h;
}

double mutual_information(const ContingencyTable& t) {
    const double n = static_cast<double>(t.n);
    double mi = 0.0;
    for (int r = 0; r < t.rows; ++r) {
        for (int c = 0; c < t.cols; ++c) {
            const std::int64_t cell = t.at(r, c);
            if (cell == 0) continue;
            const double p = cell / n;
            mi += p * std::log(cell * n /
                               (static_cast<double>(t.row_sums[r]) * t.col_sums[c]));
        }
    }
    return mi < 0.0 ? 0.0 : mi;
}

MeasureResult nmi(const ContingencyTable& t, NmiNormalization norm) {
    const double hf = marginal_entropy(t.row_sums, t.n);
    const double hg = marginal_entropy(t.col_sums, t.n);
    double denom = 0.0;
    switch (norm) {
        case NmiNormalization::average: denom = 0.5 * (hf + hg); break;
        case NmiNormalization::max: denom = std::max(hf, hg); break;
        case NmiNormalization::min: denom = std::min(hf, hg); break;
    }
    MeasureResult r;
    r.measure_name = "NMI";
    if (denom <= kEps) {
        // Both single-cluster: the trivial pair.
        r.defined = false;
        r.value = trivially_identical(t) ? 1.0 : 0.0;
        return r;
    }
    r.value = std::clamp(mutual_information(t) / denom, 0.0, 1.0);
    return r;
}

double expected_mi_permutation(const ContingencyTable& t) {
    const std::int64_t n = t.n;
    const std::vector<double> lf = log_factorials(n);
    const double log_n = std::log(static_cast<double>(n));
    double emi = 0.0;
    for (int i = 0; i < t.rows; ++i) {
        const std::int64_t a = t.row_sums[i];
        for (int j = 0; j < t.cols; ++j) {
            const std::int64_t b = t.col_sums[j];
            const std::int64_t lo = std::max<std::int64_t>(1, a + b - n);
            const std::int64_t hi = std::min(a, b);
            const double log_ab = std::log(static_cast<double>(a)) +
                                  std::log(static_cast<double>(b));
            for (std::int64_t nij = lo; nij <= hi; ++nij) {
                const double log_p = lf[a] + lf[b] + lf[n - a] + lf[n - b] -
                                     lf[n] - lf[nij] - lf[a - nij] - lf[b - nij] -
                                     lf[n - a - b + nij];
                if (!std::isfinite(log_p))
                    throw std::runtime_error("numeric overflow in expected MI");
                const double contrib =
                    (static_cast<double>(nij) / n) *
                    (std::log(static_cast<double>(nij)) + log_n - log_ab);
                emi += contrib * std::exp(log_p);
            }
        }
    }
    return emi < 0.0 ? 0.0 : emi;
}

MeasureResult ami(const ContingencyTable& t) {
    const double hf = marginal_entropy(t.row_sums, t.n);
    const double hg = marginal_entropy(t.col_sums, t.n);
    const double emi = expected_mi_permutation(t);
    const double denom = 0.5 * (hf + hg) - emi;
    MeasureResult r;
    r.measure_name = "AMI";
    if (denom <= kEps) {
        r.defined = false;
        r.value = trivially_identical(t) ? 1.0 : 0.0;
        return r;
    }
    r.value = (mutual_information(t) - emi) / denom;
    return r;
}

MeasureResult rand_index(const PairStats& p) {
    MeasureResult r;
    r.measure_name = "RI";
    r.value = static_cast<double>(p.n11 + p.n00) /
              static_cast<double>(p.total_pairs());
    return r;
}

MeasureResult ari(const PairStats& p) {
    const double total = static_cast<double>(p.total_pairs());
    const double sf = static_cast<double>(p.n11 + p.n10);
    const double sg = static_cast<double>(p.n11 + p.n01);
    const double expected = sf * sg / total;
    const double denom = 0.5 * (sf + sg) - expected;
    MeasureResult r;
    r.measure_name = "ARI";
    if (std::abs(denom) <= kEps) {
        // Both all-singletons or both single-cluster.
        r.defined = false;
        r.value = (p.n10 == 0 && p.n01 == 0) ? 1.0 : 0.0;
        return r;
    }
    r.value = (static_cast<double>(p.n11) - expected) / denom;
    return r;
}

namespace {

// DP over columns; state = remaining row sums packed 5 bits each.
class OmegaCounter {
public:
    OmegaCounter(std::span<const std::int64_t> rows,
                 std::span<const std::int64_t> cols)
        : rows_(rows.begin(), rows.end()), cols_(cols.begin(), cols.end()) {}

    double count() {
        std::vector<std::int64_t> rem = rows_;
        return columns(0, rem);
    }

private:
    std::uint64_t pack(int col, const std::vector<std::int64_t>& rem) const {
        std::uint64_t key = static_cast<std::uint64_t>(col);
        for (std::int64_t r : rem) key = (key << 5) | static_cast<std::uint64_t>(r);
        return key;
    }

    double columns(int col, std::vector<std::int64_t>& rem) {
        if (col == static_cast<int>(cols_.size())) return 1.0;
        const std::uint64_t key = pack(col, rem);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const double result = fill_cell(col, 0, cols_[col], rem);
        memo_.emplace(key, result);
        return result;
    }

    double fill_cell(int col, int row, std::int64_t left,
                     std::vector<std::int64_t>& rem) {
        if (row == static_cast<int>(rows_.size()) - 1) {
            if (left > rem[row]) return 0.0;
            rem[row] -= left;
            const double r = columns(col + 1, rem);
            rem[row] += left;
            return r;
        }
        double total = 0.0;
        const std::int64_t hi = std::min(left, rem[row]);
        for (std::int64_t x = 0; x <= hi; ++x) {
            rem[row] -= x;
            total += fill_cell(col, row + 1, left - x, rem);
            rem[row] += x;
        }
        return total;
    }

    std::vector<std::int64_t> rows_;
    std::vector<std::int64_t> cols_;
    std::unordered_map<std::uint64_t, double> memo_;
};

double sum_span(std::span<const std::int64_t> v) {
    std::int64_t s = 0;
    for (std::int64_t x : v) s += x;
    return static_cast<double>(s);
}

// ln P(row sums = a) when a is modeled as Dirichlet-multinomial with
// per-row concentration alpha; alpha = +inf is the multinomial limit.
double log_row_prob(std::span<const std::int64_t> a, std::int64_t n,
                    double alpha) {
    const std::size_t R = a.size();
    const std::vector<double> lf = log_factorials(n);
    double lp = lf[n];
    for (std::int64_t ar : a) lp -= lf[ar];
    if (!std::isfinite(alpha)) {
        lp -= static_cast<double>(n) * std::log(static_cast<double>(R));
        return lp;
    }
    lp += std::lgamma(alpha * R) - std::lgamma(static_cast<double>(n) + alpha * R);
    for (std::int64_t ar : a)
        lp += std::lgamma(static_cast<double>(ar) + alpha) - std::lgamma(alpha);
    return lp;
}

// One-sided estimate: columns drawn uniformly over their compositions,
// row-sum distribution approximated by a moment-matched
// Dirichlet-multinomial. Fallback when the saddle-point solver fails.
double log_omega_one_sided(std::span<const std::int64_t> row_sums,
                           std::span<const std::int64_t> col_sums) {
    const std::size_t R = row_sums.size();
    if (R == 1 || col_sums.size() == 1) return 0.0;
    const std::int64_t n = static_cast<std::int64_t>(sum_span(row_sums));
    const double dr = static_cast<double>(R);

    double lg = 0.0;  // ln prod_s C(b_s + R - 1, R - 1)
    for (std::int64_t b : col_sums)
        lg += std::lgamma(static_cast<double>(b + R)) -
              std::lgamma(static_cast<double>(b + 1)) - std::lgamma(dr);

    // Match Var(a_r) of the column-aggregate against the DM model.
    double t = 0.0;
    for (std::int64_t b : col_sums)
        t += static_cast<double>(b) * (static_cast<double>(b) + dr) / (dr + 1.0);
    const double dn = static_cast<double>(n);
    double alpha = std::numeric_limits<double>::infinity();
    if (t - dn > 1e-9) {
        alpha = (dn * dn - t) / (dr * (t - dn));
        if (!(alpha > 0.0)) alpha = std::numeric_limits<double>::infinity();
    }
    return lg + log_row_prob(row_sums, n, alpha);
}

// Margins grouped by value; equal margins share a saddle-point variable,
// which keeps the solver and the correction determinant small.
struct GroupedMargins {
    std::vector<double> value;
    std::vector<double> mult;
    double total = 0.0;  // number of margins
};

GroupedMargins group_margins(std::span<const std::int64_t> margins) {
    std::map<std::int64_t, std::int64_t> counts;
    for (std::int64_t m : margins) ++counts[m];
    GroupedMargins g;
    for (auto [value, mult] : counts) {
        g.value.push_back(static_cast<double>(value));
        g.mult.push_back(static_cast<double>(mult));
        g.total += static_cast<double>(mult);
    }
    return g;
}

// Solves sum_j w_j * x y_j / (1 - x y_j) = target for x, given y_j < 1/x.
double solve_tilt(double target, const std::vector<double>& w,
                  const std::vector<double>& y, double x0) {
    double y_max = 0.0;
    for (double yj : y) y_max = std::max(y_max, yj);
    double lo = 0.0, hi = (1.0 - 1e-14) / y_max;
    double x = std::clamp(x0, 0.5 * hi * 1e-12, hi);
    for (int iter = 0; iter < 200; ++iter) {
        double f = -target, fp = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            const double z = x * y[j];
            const double om = 1.0 - z;
            f += w[j] * z / om;
            fp += w[j] * y[j] / (om * om);
        }
        if (std::abs(f) <= 1e-11 * std::max(1.0, target)) return x;
        if (f > 0.0) hi = x; else lo = x;
        double next = x - f / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    return x;
}

// Maximum-entropy estimate of ln Omega: independent geometric cells
// tilted so every margin matches in expectation, then a Gaussian
// lattice-point correction for conditioning on the exact margins.
std::optional<double> log_omega_saddle(const GroupedMargins& rows,
                                       const GroupedMargins& cols) {
    const std::size_t P = rows.value.size(), Q = cols.value.size();
    std::vector<double> u(P, 1.0), v(Q);
    double n = 0.0;
    for (std::size_t i = 0; i < P; ++i) n += rows.mult[i] * rows.value[i];
    for (std::size_t j = 0; j < Q; ++j)
        v[j] = cols.value[j] / (n + cols.value[j]);

    bool converged = false;
    for (int sweep = 0; sweep < 500 && !converged; ++sweep) {
        for (std::size_t i = 0; i < P; ++i)
            u[i] = solve_tilt(rows.value[i], cols.mult, v, u[i]);
        for (std::size_t j = 0; j < Q; ++j)
            v[j] = solve_tilt(cols.value[j], rows.mult, u, v[j]);
        // Column equations hold exactly after the v-update; check rows.
        converged = true;
        for (std::size_t i = 0; i < P; ++i) {
            double got = 0.0;
            for (std::size_t j = 0; j < Q; ++j) {
                const double z = u[i] * v[j];
                got += cols.mult[j] * z / (1.0 - z);
            }
            if (std::abs(got - rows.value[i]) > 1e-9 * std::max(1.0, rows.value[i]))
                converged = false;
        }
    }
    if (!converged) return std::nullopt;

    // ln of the tilted generating function at the saddle.
    double ln_f = 0.0;
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = 0; j < Q; ++j)
            ln_f -= rows.mult[i] * cols.mult[j] * std::log1p(-u[i] * v[j]);
        ln_f -= rows.mult[i] * rows.value[i] * std::log(u[i]);
    }
    for (std::size_t j = 0; j < Q; ++j)
        ln_f -= cols.mult[j] * cols.value[j] * std::log(v[j]);

    // Covariance of the margin sums, reduced to one variable per group.
    // Within-group fluctuation directions contribute eigenvalues d_i, e_j
    // directly; the grouped block plus the rank-one shift along the
    // dependent direction (sum of rows minus sum of columns) covers the rest.
    std::vector<double> d(P, 0.0), e(Q, 0.0);
    Eigen::MatrixXd cross(P, Q);
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = 0; j < Q; ++j) {
            const double z = u[i] * v[j];
            const double var = z / ((1.0 - z) * (1.0 - z));
            cross(i, j) = var;
            d[i] += cols.mult[j] * var;
            e[j] += rows.mult[i] * var;
        }
    }
    const double dims = rows.total + cols.total;
    double theta = 0.0;
    for (std::size_t i = 0; i < P; ++i) theta += rows.mult[i] * d[i];
    for (std::size_t j = 0; j < Q; ++j) theta += cols.mult[j] * e[j];
    theta /= dims;

    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(P + Q, P + Q);
    Eigen::VectorXd dep(P + Q);
    for (std::size_t i = 0; i < P; ++i) {
        block(i, i) = d[i];
        dep(i) = std::sqrt(rows.mult[i]);
    }
    for (std::size_t j = 0; j < Q; ++j) {
        block(P + j, P + j) = e[j];
        dep(P + j) = -std::sqrt(cols.mult[j]);
    }
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < Q; ++j)
            block(i, P + j) = block(P + j, i) =
                std::sqrt(rows.mult[i] * cols.mult[j]) * cross(i, j);
    block += theta * dep * dep.transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(block);
    if (eig.info() != Eigen::Success) return std::nullopt;
    double ln_det = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        const double lambda = eig.eigenvalues()(k);
        if (!(lambda > 0.0)) return std::nullopt;
        ln_det += std::log(lambda);
    }
    for (std::size_t i = 0; i < P; ++i)
        ln_det += (rows.mult[i] - 1.0) * std::log(d[i]);
    for (std::size_t j = 0; j < Q; ++j)
        ln_det += (cols.mult[j] - 1.0) * std::log(e[j]);
    ln_det -= std::log(theta) + std::log(dims);

    const double two_pi = 6.283185307179586;
    const double ln_prob = -0.5 * (dims - 1.0) * std::log(two_pi) +
                           0.5 * std::log(dims) - 0.5 * ln_det;
    return ln_f + ln_prob;
}

}  // namespace

bool exact_omega_feasible(std::size_t rows, std::size_t cols, std::int64_t n) {
    return n <= 20 && rows <= 6 && cols <= 6;
}

double log_omega_exact(std::span<const std::int64_t> row_sums,
                       std::span<const std::int64_t> col_sums) {
    const double n = sum_span(row_sums);
    if (sum_span(col_sums) != n)
        throw std::invalid_argument("row and column sums disagree");
    if (!exact_omega_feasible(row_sums.size(), col_sums.size(),
                              static_cast<std::int64_t>(n)))
        throw std::invalid_argument("exact Omega infeasible");
    OmegaCounter counter(row_sums, col_sums);
    return std::log(counter.count());
}

double log_omega_approx(std::span<const std::int64_t> row_sums,
                        std::span<const std::int64_t> col_sums) {
    if (row_sums.size() == 1 || col_sums.size() == 1) return 0.0;
    const std::int64_t n = static_cast<std::int64_t>(sum_span(row_sums));

    // When one side is all singletons, the count is an exact multinomial:
    // each unit column independently picks a row.
    auto all_ones = [](std::span<const std::int64_t> m) {
        return std::all_of(m.begin(), m.end(),
                           [](std::int64_t x) { return x == 1; });
    };
    if (all_ones(col_sums) || all_ones(row_sums)) {
        const std::vector<double> lf = log_factorials(n);
        double ln = lf[n];
        const auto& split = all_ones(col_sums) ? row_sums : col_sums;
        for (std::int64_t m : split) ln -= lf[m];
        return ln;
    }

    // Canonical orientation keeps the estimate exactly transpose-invariant
    // (solver iteration order would otherwise leak into the last bits).
    GroupedMargins a = group_margins(row_sums);
    GroupedMargins b = group_margins(col_sums);
    auto precedes = [](const GroupedMargins& x, const GroupedMargins& y) {
        if (x.total != y.total) return x.total < y.total;
        if (x.value != y.value) return x.value < y.value;
        return x.mult < y.mult;
    };
    if (precedes(b, a)) std::swap(a, b);
    if (const auto saddle = log_omega_saddle(a, b)) return *saddle;
    // Symmetrized so that RMI stays exactly transpose-invariant.
    return 0.5 * (log_omega_one_sided(row_sums, col_sums) +
                  log_omega_one_sided(col_sums, row_sums));
}

namespace {

struct OmegaValue {
    double log_omega;
    bool exact;
};

OmegaValue log_omega(std::span<const std::int64_t> rows,
                     std::span<const std::int64_t> cols, std::int64_t n,
                     OmegaMode mode) {
    const bool feasible = exact_omega_feasible(rows.size(), cols.size(), n);
    if (mode == OmegaMode::exact || (mode == OmegaMode::automatic && feasible))
        return {log_omega_exact(rows, cols), true};
    return {log_omega_approx(rows, cols), false};
}

double rmi_unnormalized(const ContingencyTable& t, OmegaMode mode, bool& exact) {
    const OmegaValue om = log_omega(t.row_sums, t.col_sums, t.n, mode);
    exact = om.exact;
    return mutual_information(t) - om.log_omega / static_cast<double>(t.n);
}

// RMI of a labeling against itself, from its cluster sizes alone.
double rmi_self(std::span<const std::int64_t> sizes, std::int64_t n,
                OmegaMode mode, bool& exact) {
    const double h = marginal_entropy(sizes, n);
    const OmegaValue om = log_omega(sizes, sizes, n, mode);
    exact = exact && om.exact;
    return h - om.log_omega / static_cast<double>(n);
}

}  // namespace

MeasureResult rmi(const ContingencyTable& t, bool normalized, OmegaMode mode) {
    MeasureResult r;
    r.measure_name = normalized ? "RMI" : "RMI_unnormalized";
    bool exact = true;
    const double raw = rmi_unnormalized(t, mode, exact);
    if (!normalized) {
        r.value = raw;
        r.note = exact ? "exact Omega" : "approximate Omega";
        return r;
    }
    const double self_f = rmi_self(t.row_sums, t.n, mode, exact);
    const double self_g = rmi_self(t.col_sums, t.n, mode, exact);
    const double denom = 0.5 * (self_f + self_g);
    r.note = exact ? "exact Omega" : "approximate Omega";
    if (denom <= kEps) {
        r.defined = false;
        r.value = trivially_identical(t) ? 1.0 : 0.0;
        return r;
    }
    r.value = raw / denom;
    return r;
}

double resmi_numerator(const PairStats& p) {
    double cond = 0.0;
    if (p.q_f_given_g) cond += p.q_g * binary_entropy(*p.q_f_given_g);
    if (p.q_f_given_gc) cond += (1.0 - p.q_g) * binary_entropy(*p.q_f_given_gc);
    return binary_entropy(p.q_f) - cond;
}

MeasureResult resmi(const PairStats& p) {
    MeasureResult r;
    r.measure_name = "ResMI";
    const double denom = 0.5 * (binary_entropy(p.q_f) + binary_entropy(p.q_g));
    if (denom <= kEps) {
        // Both pair indicators are constant.
        r.defined = false;
        r.value = (p.n10 == 0 && p.n01 == 0) ? 1.0 : 0.0;
        return r;
    }
    r.value = std::clamp(resmi_numerator(p) / denom, 0.0, 1.0);
    return r;
}

double resmi_indicator_oracle(const Labeling& f, const Labeling& g) {
    const PairStats p = pair_stats_bruteforce(f, g);
    return plugin_mi(static_cast<double>(p.total_pairs()),
                     static_cast<double>(p.n11), static_cast<double>(p.n10),
                     static_cast<double>(p.n01), static_cast<double>(p.n00));
}

}  // namespace resmi
