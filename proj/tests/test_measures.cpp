#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "helpers.hpp"
#include "resmi/measures.hpp"

using namespace resmi;

namespace {

Labeling relabeled(const Labeling& l, Rng& rng) {
    std::vector<int> perm(l.num_clusters());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<int> raw(l.n());
    for (int i = 0; i < l.n(); ++i) raw[i] = perm[l[i]];
    return make_labeling(raw);
}

Labeling shuffled_copy(const Labeling& l, Rng& rng) {
    std::vector<int> raw = l.labels();
    rng.shuffle(raw);
    return make_labeling(raw);
}

// Average plug-in MI over every permutation of g's label sequence.
double exhaustive_permutation_emi(const Labeling& f, const Labeling& g) {
    std::vector<int> perm = g.labels();
    std::sort(perm.begin(), perm.end());
    double total = 0.0;
    std::int64_t count = 0;
    do {
        total += mutual_information(contingency(f, make_labeling(perm)));
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / static_cast<double>(count);
}

struct McEstimate {
    double mean;
    double stderr;
};

McEstimate monte_carlo(int samples, Rng& rng, auto&& draw) {
    double sum = 0.0, sumsq = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double v = draw(rng);
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / samples;
    const double var = (sumsq - samples * mean * mean) / (samples - 1);
    return {mean, std::sqrt(std::max(0.0, var) / samples)};
}

// Enumerates every non-negative integer matrix with the given margins.
std::int64_t enumerate_tables(std::vector<std::int64_t> rem,
                              const std::vector<std::int64_t>& cols,
                              std::size_t col, std::size_t row,
                              std::int64_t left) {
    if (col == cols.size()) return 1;
    if (row == rem.size() - 1) {
        if (left > rem[row]) return 0;
        rem[row] -= left;
        return enumerate_tables(std::move(rem), cols, col + 1,
                                0, col + 1 < cols.size() ? cols[col + 1] : 0);
    }
    std::int64_t total = 0;
    for (std::int64_t x = 0; x <= std::min(left, rem[row]); ++x) {
        auto next = rem;
        next[row] -= x;
        total += enumerate_tables(std::move(next), cols, col, row + 1, left - x);
    }
    return total;
}

std::int64_t count_tables(const std::vector<std::int64_t>& rows,
                          const std::vector<std::int64_t>& cols) {
    return enumerate_tables(rows, cols, 0, 0, cols.empty() ? 0 : cols[0]);
}

const Labeling kF = make_labeling(std::vector<int>{0, 0, 1, 1});
const Labeling kG = make_labeling(std::vector<int>{0, 1, 0, 1});
const Labeling kSingles = make_labeling(std::vector<int>{0, 1, 2, 3});

}  // namespace

TEST_CASE("binary_entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(binary_entropy(1.0 / 3) ==
          doctest::Approx(std::log(3.0) - (2.0 / 3) * std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS(binary_entropy(-0.01));
    CHECK_THROWS(binary_entropy(1.01));
}

TEST_CASE("mutual_information worked examples") {
    CHECK(mutual_information(contingency(kF, kF)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(mutual_information(contingency(kF, kG)) == doctest::Approx(0.0));
    // All-singleton f attains H(P_g).
    CHECK(mutual_information(contingency(kSingles, kF)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("singleton f attains H(P_g) for arbitrary g") {
    Rng rng({3, 9});
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(40));
        std::vector<int> ids(n);
        std::iota(ids.begin(), ids.end(), 0);
        const Labeling f = make_labeling(ids);
        const Labeling g = test::random_labeling(n, 6, rng);
        const ContingencyTable t = contingency(f, g);
        CHECK(mutual_information(t) ==
              doctest::Approx(marginal_entropy(t.col_sums, t.n)).epsilon(1e-10));
    }
}

TEST_CASE("nmi") {
    CHECK(nmi(contingency(kF, kF)).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nmi(contingency(kSingles, kF)).value ==
          doctest::Approx(2.0 / 3).epsilon(1e-12));
    for (auto norm : {NmiNormalization::average, NmiNormalization::max,
                      NmiNormalization::min})
        CHECK(nmi(contingency(kF, kG), norm).value == doctest::Approx(0.0));

    // max / min variants on the singleton example.
    CHECK(nmi(contingency(kSingles, kF), NmiNormalization::max).value ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(nmi(contingency(kSingles, kF), NmiNormalization::min).value ==
          doctest::Approx(1.0).epsilon(1e-12));

    const auto trivial = make_labeling(std::vector<int>{0, 0, 0});
    const MeasureResult degenerate = nmi(contingency(trivial, trivial));
    CHECK_FALSE(degenerate.defined);
    CHECK(degenerate.value == 1.0);
}

TEST_CASE("expected_mi_permutation trivial cases") {
    const auto one = make_labeling(std::vector<int>{0, 0, 0, 0});
    CHECK(expected_mi_permutation(contingency(one, kF)) == doctest::Approx(0.0));
    // Singleton rows: every permutation attains H(P_g).
    CHECK(expected_mi_permutation(contingency(kSingles, kF)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("expected_mi_permutation equals exhaustive permutation average") {
    Rng rng({17, 0});
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 4 + static_cast<int>(rng.next_below(5));  // n in 4..8
        const Labeling f = test::random_labeling(n, 4, rng);
        const Labeling g = test::random_labeling(n, 4, rng);
        CHECK(expected_mi_permutation(contingency(f, g)) ==
              doctest::Approx(exhaustive_permutation_emi(f, g)).epsilon(1e-10));
    }
}

TEST_CASE("expected_mi_permutation matches Monte Carlo at n=60") {
    Rng rng({23, 0});
    const Labeling f = test::random_labeling(60, 5, rng);
    const Labeling g = test::random_labeling(60, 6, rng);
    const double exact = expected_mi_permutation(contingency(f, g));
    const auto mc = monte_carlo(20000, rng, [&](Rng& r) {
        return mutual_information(contingency(f, shuffled_copy(g, r)));
    });
    CHECK(std::abs(exact - mc.mean) <= 3.0 * mc.stderr);
}

TEST_CASE("ami worked examples") {
    CHECK(ami(contingency(kF, kF)).value == doctest::Approx(1.0).epsilon(1e-12));
    const auto one = make_labeling(std::vector<int>{0, 0, 0, 0});
    CHECK(ami(contingency(one, kF)).value == doctest::Approx(0.0));

    // Independent pair: negative, consistent with the exhaustive E[I].
    const double emi = exhaustive_permutation_emi(kF, kG);
    const double expected = (0.0 - emi) / (std::log(2.0) - emi);
    CHECK(ami(contingency(kF, kG)).value ==
          doctest::Approx(expected).epsilon(1e-10));
    CHECK(ami(contingency(kF, kG)).value < 0.0);
}

TEST_CASE("rand_index") {
    CHECK(rand_index(pair_stats(kF, kF)).value == doctest::Approx(1.0));
    CHECK(rand_index(pair_stats(kF, kG)).value == doctest::Approx(1.0 / 3));
    CHECK(rand_index(pair_stats(kSingles, kSingles)).value == doctest::Approx(1.0));
}

TEST_CASE("ari worked examples") {
    CHECK(ari(pair_stats(kF, kF)).value == doctest::Approx(1.0));
    CHECK(ari(pair_stats(kF, kG)).value == doctest::Approx(-0.5).epsilon(1e-12));

    const MeasureResult both_singletons = ari(pair_stats(kSingles, kSingles));
    CHECK_FALSE(both_singletons.defined);
    CHECK(both_singletons.value == 1.0);
}

TEST_CASE("ari expectation term matches Monte Carlo at n=30") {
    Rng rng({31, 4});
    const Labeling f = test::random_labeling(30, 4, rng);
    const Labeling g = test::random_labeling(30, 5, rng);
    const PairStats p = pair_stats(f, g);
    const double closed_form =
        static_cast<double>(p.n11 + p.n10) * static_cast<double>(p.n11 + p.n01) /
        static_cast<double>(p.total_pairs());
    const auto mc = monte_carlo(100000, rng, [&](Rng& r) {
        return static_cast<double>(pair_stats(f, shuffled_copy(g, r)).n11);
    });
    CHECK(std::abs(closed_form - mc.mean) <= 3.0 * mc.stderr);
}

TEST_CASE("log_omega_exact worked examples") {
    const std::vector<std::int64_t> ones{1, 1}, twos{2, 2}, two{2};
    CHECK(log_omega_exact(ones, ones) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(log_omega_exact(two, ones) == doctest::Approx(0.0));
    CHECK(log_omega_exact(twos, twos) == doctest::Approx(std::log(3.0)).epsilon(1e-12));

    const std::vector<std::int64_t> big(6, 4);
    CHECK_THROWS_WITH(log_omega_exact(big, big), "exact Omega infeasible");
}

TEST_CASE("log_omega_exact DP equals full enumeration for n <= 10") {
    Rng rng({13, 13});
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(9));
        const Labeling f = test::random_labeling(n, 4, rng);
        const Labeling g = test::random_labeling(n, 4, rng);
        const ContingencyTable t = contingency(f, g);
        const std::int64_t exact = count_tables(t.row_sums, t.col_sums);
        CHECK(log_omega_exact(t.row_sums, t.col_sums) ==
              doctest::Approx(std::log(static_cast<double>(exact))).epsilon(1e-10));
    }
}

TEST_CASE("log_omega_approx tracks the exact count on small instances") {
    const std::vector<std::int64_t> ones{1, 1}, twos{2, 2};
    CHECK(log_omega_approx(ones, ones) ==
          doctest::Approx(std::log(2.0)).epsilon(0.1));
    CHECK(log_omega_approx(twos, twos) ==
          doctest::Approx(std::log(3.0)).epsilon(0.1));

    // 10% relative agreement is a reporting target, not a contract.
    Rng rng({99, 2});
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const Labeling f = test::random_labeling(12, 4, rng);
        const Labeling g = test::random_labeling(12, 4, rng);
        const ContingencyTable t = contingency(f, g);
        const double exact = log_omega_exact(t.row_sums, t.col_sums);
        if (exact < 1e-9) continue;
        const double approx = log_omega_approx(t.row_sums, t.col_sums);
        worst = std::max(worst, std::abs(approx - exact) / exact);
    }
    WARN_MESSAGE(worst <= 0.10,
                 "Omega approximation worst relative error ", worst);
    CHECK(worst <= 0.25);
}

TEST_CASE("rmi worked examples") {
    const auto pair01 = make_labeling(std::vector<int>{0, 1});
    const MeasureResult unnorm = rmi(contingency(pair01, pair01), false);
    CHECK(unnorm.value == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
    CHECK(unnorm.note == "exact Omega");

    CHECK(rmi(contingency(pair01, pair01), true).value ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK(rmi(contingency(kF, kG), false).value ==
          doctest::Approx(-std::log(3.0) / 4).epsilon(1e-12));
}

TEST_CASE("rmi omega route selection") {
    Rng rng({8, 8});
    const Labeling f = test::random_labeling(200, 5, rng);
    const Labeling g = test::random_labeling(200, 5, rng);
    CHECK(rmi(contingency(f, g), true).note == "approximate Omega");
    CHECK(rmi(contingency(kF, kG), true).note == "exact Omega");
    CHECK(rmi(contingency(kF, kG), true, OmegaMode::approximate).note ==
          "approximate Omega");
}

TEST_CASE("resmi worked examples") {
    CHECK(resmi::resmi(pair_stats(kF, kF)).value == doctest::Approx(1.0).epsilon(1e-12));

    // All-singleton f: exactly zero, no cluster-count bias.
    const MeasureResult singles = resmi::resmi(pair_stats(kSingles, kF));
    CHECK(singles.value == 0.0);

    const double hb13 = binary_entropy(1.0 / 3);
    const double expected = (hb13 - (2.0 / 3) * std::log(2.0)) / hb13;
    CHECK(resmi::resmi(pair_stats(kF, kG)).value ==
          doctest::Approx(expected).epsilon(1e-10));
    CHECK(resmi::resmi(pair_stats(kF, kG)).value == doctest::Approx(0.2740).epsilon(1e-3));
}

TEST_CASE("resmi degenerate denominator policy") {
    const MeasureResult identical = resmi::resmi(pair_stats(kSingles, kSingles));
    CHECK_FALSE(identical.defined);
    CHECK(identical.value == 1.0);

    const auto one = make_labeling(std::vector<int>{0, 0, 0, 0});
    const MeasureResult mixed = resmi::resmi(pair_stats(kSingles, one));
    CHECK_FALSE(mixed.defined);
    CHECK(mixed.value == 0.0);
}

TEST_CASE("resmi numerator equals the 2x2 indicator-MI oracle") {
    CHECK(resmi_numerator(pair_stats(kF, kF)) ==
          doctest::Approx(resmi_indicator_oracle(kF, kF)).epsilon(1e-12));
    CHECK(resmi_numerator(pair_stats(kF, kG)) ==
          doctest::Approx(resmi_indicator_oracle(kF, kG)).epsilon(1e-12));
    CHECK(resmi_numerator(pair_stats(kSingles, kF)) ==
          doctest::Approx(resmi_indicator_oracle(kSingles, kF)).epsilon(1e-12));

    Rng rng({21, 0});
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(99));
        const Labeling f = test::random_labeling(n, 10, rng);
        const Labeling g = test::random_labeling(n, 10, rng);
        worst = std::max(worst, std::abs(resmi_numerator(pair_stats(f, g)) -
                                         resmi_indicator_oracle(f, g)));
        // Symmetry of the underlying 2x2 MI.
        CHECK(resmi_indicator_oracle(f, g) ==
              doctest::Approx(resmi_indicator_oracle(g, f)).epsilon(1e-12));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("measure axioms on randomized labelings") {
    Rng rng({55, 0});
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 4 + static_cast<int>(rng.next_below(50));
        const Labeling f = test::random_labeling(n, 8, rng);
        const Labeling g = test::random_labeling(n, 8, rng);
        const ContingencyTable fg = contingency(f, g);
        const ContingencyTable gf = contingency(g, f);
        const PairStats pfg = pair_stats(f, g);
        const PairStats pgf = pair_stats(g, f);

        // Symmetry.
        CHECK(nmi(fg).value == doctest::Approx(nmi(gf).value).epsilon(1e-10));
        CHECK(ami(fg).value == doctest::Approx(ami(gf).value).epsilon(1e-10));
        CHECK(rand_index(pfg).value == doctest::Approx(rand_index(pgf).value));
        CHECK(ari(pfg).value == doctest::Approx(ari(pgf).value).epsilon(1e-10));
        CHECK(rmi(fg, false).value ==
              doctest::Approx(rmi(gf, false).value).epsilon(1e-10));
        CHECK(rmi(fg, true).value ==
              doctest::Approx(rmi(gf, true).value).epsilon(1e-10));
        CHECK(resmi::resmi(pfg).value == doctest::Approx(resmi::resmi(pgf).value).epsilon(1e-10));

        // Range.
        CHECK(nmi(fg).value >= 0.0);
        CHECK(nmi(fg).value <= 1.0);
        CHECK(rand_index(pfg).value >= 0.0);
        CHECK(rand_index(pfg).value <= 1.0);
        CHECK(resmi::resmi(pfg).value >= 0.0);
        CHECK(resmi::resmi(pfg).value <= 1.0);
        const double hf = marginal_entropy(fg.row_sums, fg.n);
        const double hg = marginal_entropy(fg.col_sums, fg.n);
        const double mi = mutual_information(fg);
        CHECK(mi >= 0.0);
        CHECK(mi <= std::min(hf, hg) + 1e-12);
        CHECK(resmi_numerator(pfg) >= -1e-12);

        // Label-permutation invariance.
        const Labeling f2 = relabeled(f, rng);
        const Labeling g2 = relabeled(g, rng);
        const ContingencyTable fg2 = contingency(f2, g2);
        const PairStats pfg2 = pair_stats(f2, g2);
        CHECK(nmi(fg2).value == doctest::Approx(nmi(fg).value).epsilon(1e-12));
        CHECK(ami(fg2).value == doctest::Approx(ami(fg).value).epsilon(1e-12));
        CHECK(ari(pfg2).value == doctest::Approx(ari(pfg).value).epsilon(1e-12));
        CHECK(rmi(fg2, true).value ==
              doctest::Approx(rmi(fg, true).value).epsilon(1e-12));
        CHECK(resmi::resmi(pfg2).value == doctest::Approx(resmi::resmi(pfg).value).epsilon(1e-12));

        // Self-similarity for non-degenerate labelings.
        if (f.num_clusters() > 1 && f.num_clusters() < n) {
            const ContingencyTable ff = contingency(f, f);
            const PairStats pff = pair_stats(f, f);
            CHECK(nmi(ff).value == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(ami(ff).value == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(ari(pff).value == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(rmi(ff, true).value == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(resmi::resmi(pff).value == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("singleton collapse: NMI inflated, corrected measures near zero") {
    Rng rng({77, 1});
    const int n = 50;
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    const Labeling f = make_labeling(ids);
    double nmi_min = 1.0, ami_sum = 0.0, ari_sum = 0.0, resmi_sum = 0.0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        const Labeling g = test::random_labeling(n, 6, rng);
        if (g.num_clusters() == 1) continue;
        nmi_min = std::min(nmi_min, nmi(contingency(f, g)).value);
        ami_sum += ami(contingency(f, g)).value;
        const PairStats p = pair_stats(f, g);
        ari_sum += ari(p).value;
        resmi_sum += resmi::resmi(p).value;
    }
    CHECK(nmi_min > 0.0);
    CHECK(ami_sum / trials <= 0.05);
    CHECK(ari_sum / trials <= 0.05);
    CHECK(resmi_sum / trials <= 0.05);
}
