// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "vep/calibration.hpp"
#include "vep/csv.hpp"
#include "vep/metrics.hpp"
#include "vep/models.hpp"
#include "vep/pipeline.hpp"
#include "vep/rng.hpp"

using namespace vep;

namespace {

int failures = 0;

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw CheckFailure(message);
}

void criterion(int number, const std::string& title, const std::function<void()>& body) {
    try {
        body();
        std::printf("PASS  %d. %s\n", number, title.c_str());
    } catch (const std::exception& e) {
        ++failures;
        std::printf("FAIL  %d. %s: %s\n", number, title.c_str(), e.what());
    }
    std::fflush(stdout);
}

struct TableColumn {
    const char* model;
    std::uint64_t tp, fp, fn, tn;
    double tpr, fpr, gm, acc, nmcc;
};

// printed columns of the balanced-bus table
const std::vector<TableColumn> kBalancedTable{
    {"dtmc", 7237, 1023, 2156, 8869, 0.77, 0.10, 0.83, 0.84, 0.84},
    {"cart", 8750, 1945, 643, 7947, 0.93, 0.20, 0.87, 0.87, 0.87},
    {"lda", 8414, 1312, 979, 8580, 0.90, 0.13, 0.88, 0.88, 0.88},
    {"svm", 8227, 1145, 1166, 8747, 0.88, 0.12, 0.88, 0.88, 0.88},
    {"naive_bayes", 8474, 1436, 919, 8456, 0.90, 0.15, 0.88, 0.88, 0.88},
    {"knn", 9221, 4639, 172, 5253, 0.98, 0.47, 0.72, 0.75, 0.78},
    {"random_forest", 8749, 1941, 644, 7951, 0.93, 0.20, 0.87, 0.87, 0.87},
};

// printed columns of the unbalanced-bus table
const std::vector<TableColumn> kUnbalancedTable{
    {"dtmc", 155, 223, 35, 18872, 0.82, 0.01, 0.90, 0.99, 0.79},
    {"cart", 170, 573, 20, 18522, 0.89, 0.03, 0.93, 0.97, 0.72},
    {"lda", 175, 289, 15, 18806, 0.92, 0.02, 0.95, 0.98, 0.79},
    {"svm", 184, 724, 6, 18371, 0.97, 0.04, 0.97, 0.96, 0.72},
    {"naive_bayes", 186, 852, 4, 18243, 0.98, 0.04, 0.97, 0.96, 0.70},
    {"knn", 142, 97, 48, 18998, 0.75, 0.01, 0.86, 0.99, 0.83},
    {"random_forest", 170, 566, 20, 18529, 0.89, 0.03, 0.93, 0.97, 0.72},
};

void check_table(const std::vector<TableColumn>& table) {
    for (const auto& col : table) {
        const auto r = report(ConfusionMatrix{col.tp, col.fp, col.fn, col.tn});
        const auto close = [&](double got, double want, const char* metric) {
            require(std::abs(got - want) <= 0.01 + 1e-12,
                    std::string(col.model) + " " + metric + ": got " + std::to_string(got) +
                        ", table says " + std::to_string(want));
        };
        close(r.tpr, col.tpr, "TPR");
        close(r.fpr, col.fpr, "FPR");
        close(r.gm, col.gm, "GM");
        close(r.acc, col.acc, "ACC");
        close(r.nmcc, col.nmcc, "nMCC");
    }
}

SupervisedSet make_set(const std::vector<std::vector<double>>& rows,
                       const std::vector<std::uint8_t>& labels) {
    SupervisedSet set;
    set.bus_id = 1;
    set.dim = rows.front().size();
    for (const auto& row : rows) set.inputs.insert(set.inputs.end(), row.begin(), row.end());
    set.targets = labels;
    set.anchor_times.resize(labels.size());
    return set;
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "vep_acceptance" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void criterion_auc_oracle() {
    auto rng = Rng::stream(7001, 1);
    int lattice_instances = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const double grid_step = std::vector<double>{0.01, 0.005, 0.02}[
            static_cast<std::size_t>(trial) % 3];
        const auto cells = static_cast<std::size_t>(std::lround(1.0 / grid_step));
        const bool lattice = trial % 2 == 0;

        // lattice instances put scores exactly on the beta grid (ties common);
        // continuous instances use arbitrary scores, at most one per grid cell,
        // which keeps the within-cell discordance the grid cannot see at zero
        // and leaves only grid-resolution error
        std::size_t n = 4 + rng.next_below(lattice ? 197 : std::min<std::uint64_t>(97, cells - 4));
        std::vector<double> scores(n);
        std::vector<std::uint8_t> truth(n);
        bool has0 = false, has1 = false;
        std::vector<std::size_t> cell_order(cells);
        for (std::size_t c = 0; c < cells; ++c) cell_order[c] = c;
        for (std::size_t c = cells; c > 1; --c)
            std::swap(cell_order[c - 1], cell_order[rng.next_below(c)]);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = lattice
                            ? static_cast<double>(rng.next_below(cells + 1)) * grid_step
                            : (static_cast<double>(cell_order[i]) + 0.01 +
                               0.98 * rng.next_double()) *
                                  grid_step;
            truth[i] = rng.next_below(2) ? 1 : 0;
            (truth[i] ? has1 : has0) = true;
        }
        if (!has0) truth[0] = 0;
        if (!has1) truth[n - 1] = 1;

        const double expected = oracle::auc_concordance(scores, truth);
        const double got = roc(scores, truth, grid_step).auc;
        const double tolerance = lattice ? 1e-9 : 1e-9 + grid_step;
        require(std::abs(got - expected) <= tolerance,
                "instance " + std::to_string(trial) + ": |" + std::to_string(got) + " - " +
                    std::to_string(expected) + "| > " + std::to_string(tolerance));
        lattice_instances += lattice;
    }
    require(lattice_instances == 250, "expected half the instances on the beta lattice");
}

void criterion_dtmc_oracle() {
    auto rng = Rng::stream(7002, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.next_below(49);
        std::vector<std::vector<double>> rows(n, std::vector<double>(2));
        std::vector<std::uint8_t> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            rows[i] = {0.9 + 0.2 * rng.next_double(), 0.9 + 0.2 * rng.next_double()};
            labels[i] = rng.next_below(2) ? 1 : 0;
        }
        const auto data = make_set(rows, labels);
        const std::size_t bins = 1 + rng.next_below(4);

        ModelSpec spec;
        spec.kind = ModelKind::dtmc;
        spec.seed = rng.next_u64();
        spec.hyper["n_bins"] = static_cast<double>(bins);
        const auto model = train(spec, data);
        const auto reference = oracle::DtmcOracle::fit(data, bins, 1.0);

        for (int p = 0; p < 20; ++p) {
            const std::vector<double> probe{0.8 + 0.4 * rng.next_double(),
                                            0.8 + 0.4 * rng.next_double()};
            require(model.score(probe) == reference.score(probe),
                    "sequence " + std::to_string(trial) + ": score mismatch");
        }
        for (std::size_t i = 0; i < n; ++i)
            require(model.score(data.input(i)) == reference.score(data.input(i)),
                    "sequence " + std::to_string(trial) + ": training-state score mismatch");
    }
}

double evaluate_nmcc(const TrainedModel& model, const SupervisedSet& train_set,
                     const SupervisedSet& test_set) {
    const auto calib_scores = model.score_all(train_set);
    const auto cal = select_beta(calib_scores, train_set.targets, 0.01);
    const auto scores = model.score_all(test_set);
    std::vector<std::uint8_t> pred(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        pred[i] = scores[i] >= cal.beta_star ? 1 : 0;
    return report(confusion(pred, test_set.targets)).nmcc;
}

void criterion_sanity() {
    auto rng = Rng::stream(7003, 3);
    const auto blob_set = [&](std::size_t n_per_class, bool shuffled) {
        std::vector<std::vector<double>> rows;
        std::vector<std::uint8_t> labels;
        for (std::size_t i = 0; i < n_per_class; ++i) {
            rows.push_back({0.3 + 0.05 * rng.next_gaussian(), 0.3 + 0.05 * rng.next_gaussian()});
            labels.push_back(0);
            rows.push_back({0.7 + 0.05 * rng.next_gaussian(), 0.7 + 0.05 * rng.next_gaussian()});
            labels.push_back(1);
        }
        if (shuffled)
            for (auto& y : labels) y = rng.next_below(2) ? 1 : 0;
        return make_set(rows, labels);
    };

    const auto train_clean = blob_set(1000, false);
    const auto test_clean = blob_set(5000, false);
    const auto train_noise = blob_set(1000, true);
    const auto test_noise = blob_set(5000, true);

    for (ModelKind kind : all_model_kinds()) {
        ModelSpec spec;
        spec.kind = kind;
        spec.seed = 99;
        const double clean = evaluate_nmcc(train(spec, train_clean), train_clean, test_clean);
        require(clean >= 0.9, std::string(to_string(kind)) + ": separable nMCC " +
                                  std::to_string(clean) + " < 0.9");
        const double noise = evaluate_nmcc(train(spec, train_noise), train_noise, test_noise);
        require(noise >= 0.45 && noise <= 0.55,
                std::string(to_string(kind)) + ": shuffled nMCC " + std::to_string(noise) +
                    " outside [0.45, 0.55]");
    }
}

RunConfig study_config(const std::filesystem::path& dir, double v_upper) {
    RunConfig config;
    config.data_path = dir / "data.csv";
    config.out_dir = dir / "out";
    config.v_upper = v_upper;
    config.seed = 1;
    config.synth.seed = 1;
    return config;
}

void criterion_qualitative(std::map<std::string, std::vector<RunResult>>& shared) {
    const auto dir = fresh_dir("qualitative");
    std::ostringstream log;

    auto balanced = study_config(dir, 1.05);
    cmd_synth(balanced, log);
    require(cmd_train(balanced, log).failed == 0, "balanced train batch failed");
    std::vector<RunResult> balanced_results;
    require(cmd_evaluate(balanced, log, &balanced_results).failed == 0,
            "balanced evaluate batch failed");

    auto unbalanced = study_config(dir, 1.08);
    unbalanced.out_dir = dir / "out108";
    require(cmd_train(unbalanced, log).failed == 0, "unbalanced train batch failed");
    std::vector<RunResult> unbalanced_results;
    require(cmd_evaluate(unbalanced, log, &unbalanced_results).failed == 0,
            "unbalanced evaluate batch failed");

    shared["balanced"] = balanced_results;
    shared["unbalanced"] = unbalanced_results;

    // (a) on the rare-event bus: accuracy uniformly high, nMCC spread wide
    const int rare_bus = 6;
    double nmcc_min = 1.0, nmcc_max = 0.0;
    int seen = 0;
    for (const auto& r : unbalanced_results) {
        if (r.bus_id != rare_bus) continue;
        ++seen;
        require(r.metrics.acc >= 0.95, std::string(to_string(r.model)) + " ACC " +
                                           std::to_string(r.metrics.acc) + " < 0.95");
        nmcc_min = std::min(nmcc_min, r.metrics.nmcc);
        nmcc_max = std::max(nmcc_max, r.metrics.nmcc);
    }
    require(seen == 7, "expected 7 models on the rare-event bus");
    require(nmcc_max - nmcc_min >= 0.05, "nMCC spread " + std::to_string(nmcc_max - nmcc_min) +
                                             " < 0.05 across models");

    // (b) beta* moves between the two bounds for at least one model
    bool beta_shifted = false;
    for (const auto& a : balanced_results)
        for (const auto& b : unbalanced_results)
            if (a.bus_id == b.bus_id && a.model == b.model &&
                std::abs(a.calibration.beta_star - b.calibration.beta_star) >= 0.01 - 1e-12)
                beta_shifted = true;
    require(beta_shifted, "no model changed beta* between the bounds");

    // (c) the ranking is emitted and every five-number summary is ordered
    const auto ranking = rank_models(unbalanced_results);
    require(ranking.size() == 7, "ranking must cover all models");
    for (const auto& s : ranking) {
        require(s.bus_count == 15, "ranking must cover all buses");
        require(s.min <= s.q1 && s.q1 <= s.median && s.median <= s.q3 && s.q3 <= s.max,
                std::string(to_string(s.model)) + ": quartiles out of order");
    }
    for (std::size_t i = 1; i < ranking.size(); ++i)
        require(ranking[i - 1].median >= ranking[i].median, "ranking not sorted by median");
    require(std::filesystem::exists(unbalanced.out_dir / "tables.txt"),
            "ranking table file missing");
}

void criterion_determinism() {
    std::ostringstream log;
    std::vector<std::string> outputs;
    for (int jobs : {1, 4}) {
        const auto dir = fresh_dir("determinism_j" + std::to_string(jobs));
        RunConfig config;
        config.data_path = dir / "data.csv";
        config.out_dir = dir / "out";
        config.seed = 5;
        config.synth.seed = 5;
        config.synth.n_buses = 5;
        config.synth.n_samples = 4000;
        config.jobs = jobs;
        cmd_synth(config, log);
        require(cmd_train(config, log).failed == 0, "train batch failed");
        require(cmd_evaluate(config, log, nullptr).failed == 0, "evaluate batch failed");
        outputs.push_back(slurp(config.data_path) + "\x1e" +
                          slurp(config.out_dir / "calibration.json") + "\x1e" +
                          slurp(config.out_dir / "results.jsonl") + "\x1e" +
                          slurp(config.out_dir / "tables.txt"));
    }
    require(outputs[0] == outputs[1], "jobs=1 and jobs=4 runs differ byte-for-byte");
}

void criterion_invariants() {
    auto rng = Rng::stream(7008, 8);

    // labeling: strict inequalities, monotonicity, mutual exclusion
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.next_below(30);
        VoltageSeries series{1, {}, {}};
        for (std::size_t i = 0; i < n; ++i) {
            series.timestamps.push_back(static_cast<TimePoint>(900 * i));
            series.values.push_back(0.5 + rng.next_double());
        }
        const double lower = 0.6 + 0.4 * rng.next_double();
        const VoltageBounds bounds{lower + 0.02 + 0.4 * rng.next_double(), lower};
        const auto over = label_over(series, bounds);
        const auto under = label_under(series, bounds);
        for (std::size_t i = 0; i < n; ++i) {
            require(over.labels[i] == (series.values[i] > bounds.upper ? 1 : 0),
                    "over-bound label must be the strict comparison");
            require(under.labels[i] == (series.values[i] < bounds.lower ? 1 : 0),
                    "under-bound label must be the strict comparison");
            require(!(over.labels[i] && under.labels[i]), "labels must be mutually exclusive");
        }
        const VoltageBounds raised{bounds.upper + rng.next_double(), bounds.lower};
        const auto over_raised = label_over(series, raised);
        for (std::size_t i = 0; i < n; ++i)
            require(over_raised.labels[i] <= over.labels[i],
                    "raising the bound must not raise labels");
    }

    // features: count law and leakage gap
    for (int trial = 0; trial < 1000; ++trial) {
        const FeatureSpec spec{rng.next_below(4), rng.next_below(3), 1 + rng.next_below(5)};
        const std::size_t overhead = spec.horizon + spec.delay + spec.lag;
        const std::size_t n = overhead + 1 + rng.next_below(25);
        VoltageSeries series{1, {}, {}};
        EventSeries events{1, EventKind::over_bound, {}};
        for (std::size_t i = 0; i < n; ++i) {
            series.timestamps.push_back(static_cast<TimePoint>(900 * i));
            series.values.push_back(0.9 + 0.2 * rng.next_double());
            events.labels.push_back(rng.next_below(2) ? 1 : 0);
        }
        const auto set = build(series, events, spec);
        require(set.n() == n - overhead, "example count must be N - (h + d + L)");
        for (std::size_t i = 0; i < set.n(); ++i) {
            const std::size_t anchor = spec.delay + spec.lag + i;
            const std::size_t newest_input = anchor - spec.delay;
            require(anchor + spec.horizon - newest_input >= spec.horizon,
                    "input-target gap must be at least h");
            require(set.targets[i] == events.labels[anchor + spec.horizon],
                    "target must be the label h steps ahead");
            require(set.input(i).back() == series.values[newest_input],
                    "newest input must sit d steps before the anchor");
        }
    }

    // metrics: ranges, complementarity, mcc symmetry
    for (int trial = 0; trial < 1000; ++trial) {
        ConfusionMatrix cm{rng.next_below(40), rng.next_below(40), rng.next_below(40),
                           rng.next_below(40)};
        if (cm.total() == 0) cm.fp = 1;
        const auto r = report(cm);
        for (double v : {r.acc, r.tpr, r.fpr, r.tnr, r.fnr, r.gm, r.nmcc})
            require(v >= 0.0 && v <= 1.0, "rate out of [0, 1]");
        require(r.mcc >= -1.0 && r.mcc <= 1.0, "mcc out of [-1, 1]");
        if (cm.tp + cm.fn > 0)
            require(std::abs(r.tpr + r.fnr - 1.0) < 1e-12, "tpr + fnr must be 1");
        if (cm.tn + cm.fp > 0)
            require(std::abs(r.tnr + r.fpr - 1.0) < 1e-12, "tnr + fpr must be 1");
        const auto swapped = report(ConfusionMatrix{cm.tn, cm.fn, cm.fp, cm.tp});
        require(std::abs(swapped.mcc - r.mcc) < 1e-12, "mcc must be class-symmetric");
    }
}

}  // namespace

int main() {
    std::map<std::string, std::vector<RunResult>> shared;

    criterion(1, "balanced-table metric fixtures reproduce within 0.01",
              [] { check_table(kBalancedTable); });
    criterion(2, "unbalanced-table metric fixtures reproduce within 0.01",
              [] { check_table(kUnbalancedTable); });
    criterion(3, "trapezoidal AUC matches the concordance oracle on 500 instances",
              criterion_auc_oracle);
    criterion(4, "dtmc equals the count-dictionary oracle on 100 sequences",
              criterion_dtmc_oracle);
    criterion(5, "all models pass the separable/shuffled sanity suite", criterion_sanity);
    criterion(6, "synthetic end-to-end study reproduces the qualitative findings",
              [&shared] { criterion_qualitative(shared); });
    criterion(7, "pipeline output is byte-identical across parallelism levels",
              criterion_determinism);
    criterion(8, "labeling/features/metrics invariant suites hold on 1000 cases each",
              criterion_invariants);

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
