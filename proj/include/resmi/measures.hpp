#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "resmi/partition.hpp"

namespace resmi {

enum class NmiNormalization { average, max, min };

enum class OmegaMode { automatic, exact, approximate };

struct MeasureResult {
    double value = 0.0;
    std::string measure_name;
    bool defined = true;
    std::string note;  // e.g. which Omega route RMI took
};

// Binary entropy h_b(q) in nats, with 0 ln 0 = 0.
double binary_entropy(double q);

// Plug-in mutual information (nats) of the joint counts in t.
double mutual_information(const ContingencyTable& t);

MeasureResult nmi(const ContingencyTable& t,
                  NmiNormalization norm = NmiNormalization::average);

// E[I] when one labeling is uniformly permuted while both sets of
// cluster sizes stay fixed. Exact hypergeometric sum over the feasible
// range of each cell, evaluated with log-factorials.
double expected_mi_permutation(const ContingencyTable& t);

MeasureResult ami(const ContingencyTable& t);

MeasureResult rand_index(const PairStats& p);
MeasureResult ari(const PairStats& p);

// ln of the exact number of non-negative integer matrices with the
// given margins. Column-by-column DP over row remainders; guarded to
// n <= 20 and at most 6 rows/columns.
double log_omega_exact(std::span<const std::int64_t> row_sums,
                       std::span<const std::int64_t> col_sums);

// Analytic estimate of ln Omega for margins too large for the DP.
double log_omega_approx(std::span<const std::int64_t> row_sums,
                        std::span<const std::int64_t> col_sums);

bool exact_omega_feasible(std::size_t rows, std::size_t cols, std::int64_t n);

MeasureResult rmi(const ContingencyTable& t, bool normalized,
                  OmegaMode mode = OmegaMode::automatic);

// Numerator of ResMI: mutual information (nats) between the two
// same-label pair indicators.
double resmi_numerator(const PairStats& p);

MeasureResult resmi(const PairStats& p);

// Verification oracle: the same quantity computed as the plug-in MI of
// the 2x2 pair-indicator table (n11, n10, n01, n00).
double resmi_indicator_oracle(const Labeling& f, const Labeling& g);

}  // namespace resmi
