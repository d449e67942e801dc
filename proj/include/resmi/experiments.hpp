#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "resmi/community.hpp"
#include "resmi/measures.hpp"
#include "resmi/partition.hpp"
#include "resmi/rng.hpp"

namespace resmi {

// Canonical measure order used in every table and CSV.
const std::vector<std::string>& all_measure_names();  // NMI AMI ARI RMI ResMI

// The five headline measures between two labelings. RMI is the
// normalized form.
std::map<std::string, MeasureResult> compute_measures(
    const Labeling& f, const Labeling& g,
    const std::vector<std::string>& names, OmegaMode omega = OmegaMode::automatic);

struct ExperimentRecord {
    std::string experiment;  // a, b, c, d, network
    double param = 0.0;      // c or p
    std::string measure;
    double mean = 0.0;
    double stddev = 0.0;     // sample (n-1) form, 0 for a single run
    int runs = 0;
};

struct RunConfig {
    int n = 1024;
    int runs = 100;
    std::uint64_t seed = 0;
    std::vector<double> grid;  // empty -> experiment default
    std::vector<std::string> measures = all_measure_names();
    OmegaMode omega = OmegaMode::automatic;
    bool full_precision = false;
    // Debug sink: per-run values keyed by (param, measure), for checking
    // the aggregated mean/std independently.
    std::map<std::pair<double, std::string>, std::vector<double>>* per_run = nullptr;
};

std::vector<double> default_grid(char which, int n);

// One of the four synthetic experiments (a: random reassignment,
// b: merge/split, c: label shuffle, d: shuffle outside the main
// cluster). Run r of a grid point uses stream_id derived from
// (grid index, r), so results are independent of execution order.
std::vector<ExperimentRecord> run_experiment(char which, const RunConfig& cfg);

// SCORE+ sweep over community counts; run r at count c uses a distinct
// k-means seed stream.
std::vector<ExperimentRecord> sweep_communities(const Graph& g,
                                                const Labeling& truth,
                                                const std::vector<int>& c_range,
                                                const ScorePlusParams& tmpl,
                                                int runs,
                                                const RunConfig& cfg);

// CSV schema: experiment,param,measure,mean,std,runs. Six significant
// digits unless full_precision.
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records,
               bool full_precision = false);
std::vector<ExperimentRecord> read_csv(std::istream& in);

// Self-contained SVG line chart: one line per measure, one-standard-
// deviation error bars, log x-axis for cluster-count experiments.
std::string render_svg(const std::vector<ExperimentRecord>& records);

// Label file: one token per line, '#' comments and blanks ignored.
Labeling load_labels(std::istream& in);

}  // namespace resmi
