#include "resmi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "resmi/synthgen.hpp"

namespace resmi {

const std::vector<std::string>& all_measure_names() {
    static const std::vector<std::string> names = {"NMI", "AMI", "ARI", "RMI",
                                                   "ResMI"};
    return names;
}

std::map<std::string, MeasureResult> compute_measures(
    const Labeling& f, const Labeling& g, const std::vector<std::string>& names,
    OmegaMode omega) {
    std::map<std::string, MeasureResult> out;
    const ContingencyTable t = contingency(f, g);
    for (const auto& name : names) {
        if (name == "NMI") out[name] = nmi(t);
        else if (name == "AMI") out[name] = ami(t);
        else if (name == "RMI") out[name] = rmi(t, /*normalized=*/true, omega);
        else if (name == "ARI" || name == "RI" || name == "ResMI") {
            const PairStats p = pair_stats(f, g);
            if (name == "ARI") out[name] = ari(p);
            else if (name == "RI") out[name] = rand_index(p);
            else out[name] = resmi(p);
        } else {
            throw std::invalid_argument("unknown measure: " + name);
        }
    }
    return out;
}

std::vector<double> default_grid(char which, int n) {
    std::vector<double> grid;
    if (which == 'a' || which == 'b') {
        for (int c = 1; c <= n; c *= 2) grid.push_back(c);
        if (grid.back() != n) grid.push_back(n);
    } else {
        for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05);
    }
    return grid;
}

namespace {

struct Accumulator {
    std::vector<double> values;

    void add(double v) { values.push_back(v); }
    double mean() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }
    double stddev() const {
        if (values.size() < 2) return 0.0;
        const double m = mean();
        double s = 0.0;
        for (double v : values) s += (v - m) * (v - m);
        return std::sqrt(s / static_cast<double>(values.size() - 1));
    }
};

std::uint64_t run_stream(std::size_t grid_index, int run) {
    return (static_cast<std::uint64_t>(grid_index) << 32) |
           static_cast<std::uint64_t>(run);
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(char which, const RunConfig& cfg) {
    if (which < 'a' || which > 'd')
        throw std::invalid_argument("unknown experiment");
    if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");

    GroundTruthSpec spec;
    spec.n = cfg.n;
    spec.kind = which == 'd' ? GroundTruthKind::asymmetric
                             : GroundTruthKind::equal_32;
    const Labeling truth = ground_truth(spec);

    const std::vector<double> grid =
        cfg.grid.empty() ? default_grid(which, cfg.n) : cfg.grid;

    std::vector<ExperimentRecord> records;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double param = grid[gi];
        if ((which == 'a' || which == 'b') &&
            (param < 1 || param > cfg.n || param != std::floor(param)))
            throw std::invalid_argument("invalid cluster count in grid");
        if ((which == 'c' || which == 'd') && (param < 0.0 || param > 1.0))
            throw std::invalid_argument("invalid proportion in grid");

        std::map<std::string, Accumulator> acc;
        for (int r = 0; r < cfg.runs; ++r) {
            Rng rng({cfg.seed, run_stream(gi, r)});
            Labeling g = [&] {
                switch (which) {
                    case 'a': return random_reassign(cfg.n, static_cast<int>(param), rng);
                    case 'b': return merge_split(truth, static_cast<int>(param), rng);
                    case 'c': return shuffle_labels(truth, param, rng);
                    default: return shuffle_outside_main(truth, param, 0, rng);
                }
            }();
            for (auto& [name, res] : compute_measures(truth, g, cfg.measures, cfg.omega)) {
                acc[name].add(res.value);
                if (cfg.per_run) (*cfg.per_run)[{param, name}].push_back(res.value);
            }
        }
        for (const auto& name : cfg.measures) {
            ExperimentRecord rec;
            rec.experiment = std::string(1, which);
            rec.param = param;
            rec.measure = name;
            rec.mean = acc[name].mean();
            rec.stddev = acc[name].stddev();
            rec.runs = cfg.runs;
            records.push_back(rec);
        }
    }
    return records;
}

std::vector<ExperimentRecord> sweep_communities(const Graph& g,
                                                const Labeling& truth,
                                                const std::vector<int>& c_range,
                                                const ScorePlusParams& tmpl,
                                                int runs, const RunConfig& cfg) {
    if (truth.n() != g.num_nodes)
        throw std::invalid_argument("truth labeling does not cover all nodes");
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    std::vector<ExperimentRecord> records;
    for (std::size_t ci = 0; ci < c_range.size(); ++ci) {
        std::map<std::string, Accumulator> acc;
        for (int r = 0; r < runs; ++r) {
            ScorePlusParams params = tmpl;
            params.c = c_range[ci];
            params.seed = {cfg.seed, run_stream(ci, r)};
            const Labeling est = score_plus(g, params);
            for (auto& [name, res] : compute_measures(truth, est, cfg.measures, cfg.omega))
                acc[name].add(res.value);
        }
        for (const auto& name : cfg.measures) {
            ExperimentRecord rec;
            rec.experiment = "network";
            rec.param = c_range[ci];
            rec.measure = name;
            rec.mean = acc[name].mean();
            rec.stddev = acc[name].stddev();
            rec.runs = runs;
            records.push_back(rec);
        }
    }
    return records;
}

namespace {

std::string format_num(double v, bool full_precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), full_precision ? "%.17g" : "%.6g", v);
    return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records,
               bool full_precision) {
    out << "experiment,param,measure,mean,std,runs\n";
    for (const auto& r : records) {
        out << r.experiment << ',' << format_num(r.param, full_precision) << ','
            << r.measure << ',' << format_num(r.mean, full_precision) << ','
            << format_num(r.stddev, full_precision) << ',' << r.runs << '\n';
    }
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) ||
        line.rfind("experiment,param,measure,mean,std,runs", 0) != 0)
        throw std::runtime_error("unexpected CSV header");
    std::vector<ExperimentRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        ExperimentRecord r;
        std::string field;
        if (!std::getline(ls, r.experiment, ',')) continue;
        if (!std::getline(ls, field, ',')) throw std::runtime_error("bad CSV row");
        r.param = std::stod(field);
        if (!std::getline(ls, r.measure, ',')) throw std::runtime_error("bad CSV row");
        if (!std::getline(ls, field, ',')) throw std::runtime_error("bad CSV row");
        r.mean = std::stod(field);
        if (!std::getline(ls, field, ',')) throw std::runtime_error("bad CSV row");
        r.stddev = std::stod(field);
        if (!std::getline(ls, field, ',')) throw std::runtime_error("bad CSV row");
        r.runs = std::stoi(field);
        records.push_back(r);
    }
    if (records.empty()) throw std::runtime_error("empty CSV body");
    return records;
}

std::string render_svg(const std::vector<ExperimentRecord>& records) {
    if (records.empty()) throw std::runtime_error("no records to plot");

    const bool log_x = records.front().experiment == "a" ||
                       records.front().experiment == "b";
    std::map<std::string, std::vector<const ExperimentRecord*>> series;
    double xmin = records.front().param, xmax = xmin;
    double ymin = 0.0, ymax = 1.0;
    for (const auto& r : records) {
        series[r.measure].push_back(&r);
        xmin = std::min(xmin, r.param);
        xmax = std::max(xmax, r.param);
        ymin = std::min(ymin, r.mean - r.stddev);
        ymax = std::max(ymax, r.mean + r.stddev);
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (log_x && xmin <= 0.0)
        throw std::runtime_error("log axis requires positive parameters");

    const double width = 640, height = 420;
    const double left = 60, right = 600, top = 30, bottom = 370;
    auto tx = [&](double x) {
        const double a = log_x ? std::log(xmin) : xmin;
        const double b = log_x ? std::log(xmax) : xmax;
        const double v = log_x ? std::log(x) : x;
        return left + (right - left) * (v - a) / (b - a);
    };
    auto ty = [&](double y) {
        return bottom - (bottom - top) * (y - ymin) / (ymax - ymin);
    };

    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right
        << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
        << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left << "\" y=\"" << bottom + 20
        << "\" font-size=\"12\">" << format_num(xmin, false) << "</text>\n";
    svg << "<text x=\"" << right - 30 << "\" y=\"" << bottom + 20
        << "\" font-size=\"12\">" << format_num(xmax, false) << "</text>\n";
    svg << "<text x=\"" << 8 << "\" y=\"" << ty(ymax) + 4
        << "\" font-size=\"12\">" << format_num(ymax, false) << "</text>\n";
    svg << "<text x=\"" << 8 << "\" y=\"" << ty(ymin) + 4
        << "\" font-size=\"12\">" << format_num(ymin, false) << "</text>\n";
    if (ymin < 0.0 && ymax > 0.0)
        svg << "<line x1=\"" << left << "\" y1=\"" << ty(0) << "\" x2=\""
            << right << "\" y2=\"" << ty(0)
            << "\" stroke=\"#cccccc\" stroke-dasharray=\"4 4\"/>\n";

    int color_idx = 0;
    double legend_y = top + 6;
    for (auto& [name, pts_unsorted] : series) {
        auto pts = pts_unsorted;
        std::sort(pts.begin(), pts.end(),
                  [](const ExperimentRecord* a, const ExperimentRecord* b) {
                      return a->param < b->param;
                  });
        const char* color = palette[color_idx % 7];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto* p : pts) svg << tx(p->param) << ',' << ty(p->mean) << ' ';
        svg << "\"/>\n";
        for (const auto* p : pts) {
            svg << "<line x1=\"" << tx(p->param) << "\" y1=\""
                << ty(p->mean - p->stddev) << "\" x2=\"" << tx(p->param)
                << "\" y2=\"" << ty(p->mean + p->stddev) << "\" stroke=\""
                << color << "\"/>\n";
            svg << "<circle cx=\"" << tx(p->param) << "\" cy=\"" << ty(p->mean)
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        svg << "<rect x=\"" << right - 90 << "\" y=\"" << legend_y - 9
            << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << right - 76 << "\" y=\"" << legend_y
            << "\" font-size=\"12\">" << name << "</text>\n";
        legend_y += 16;
        ++color_idx;
    }
    svg << "</svg>\n";
    return svg.str();
}

Labeling load_labels(std::istream& in) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        const auto end = line.find_last_not_of(" \t\r");
        tokens.push_back(line.substr(start, end - start + 1));
    }
    if (tokens.empty()) throw std::runtime_error("empty label file");
    return make_labeling(tokens);
}

}  // namespace resmi
