#include "vep/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vep/csv.hpp"
#include "vep/labeling.hpp"
#include "vep/rng.hpp"

namespace vep {
namespace {

struct BoundRun {
    EventKind kind;
    double bound;
};

std::vector<BoundRun> bounds_of(const RunConfig& config) {
    std::vector<BoundRun> out;
    if (config.v_upper) out.push_back({EventKind::over_bound, *config.v_upper});
    if (config.v_lower) out.push_back({EventKind::under_bound, *config.v_lower});
    if (out.empty()) throw ConfigError("no voltage bound configured");
    return out;
}

VoltageBounds make_bounds(const RunConfig& config) {
    VoltageBounds b;
    b.upper = config.v_upper ? *config.v_upper : *config.v_lower + 0.5;
    b.lower = config.v_lower ? *config.v_lower : *config.v_upper * 0.5;
    return b;
}

std::filesystem::path model_path(const RunConfig& config, int bus_id, ModelKind model,
                                 EventKind kind) {
    return config.out_dir / "models" /
           ("bus" + std::to_string(bus_id) + "_" + to_string(model) + "_" +
            to_string(kind) + ".json");
}

std::filesystem::path roc_path(const RunConfig& config, int bus_id, ModelKind model,
                               EventKind kind) {
    return config.out_dir / "roc" /
           ("bus" + std::to_string(bus_id) + "_" + to_string(model) + "_" +
            to_string(kind) + ".csv");
}

std::uint64_t task_seed(const RunConfig& config, int bus_id, ModelKind model,
                        EventKind kind) {
    std::uint64_t s = Rng::mix(config.seed, static_cast<std::uint64_t>(bus_id));
    s = Rng::mix(s, static_cast<std::uint64_t>(model));
    return Rng::mix(s, static_cast<std::uint64_t>(kind));
}

int effective_jobs(const RunConfig& config) {
    if (config.jobs > 0) return config.jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(0..n-1) across at most `jobs` worker threads. fn must not throw;
/// results land in caller-owned slots so output order never depends on
/// scheduling.
void run_parallel(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    for (auto& th : pool) th.join();
}

struct CalibrationEntry {
    int bus_id;
    ModelKind model;
    EventKind kind;
    double bound;
    Calibration calibration;
    bool degenerate = false;
};

std::filesystem::path calibration_path(const RunConfig& config) {
    return config.out_dir / "calibration.json";
}

void write_calibration(const std::vector<CalibrationEntry>& entries,
                       const std::filesystem::path& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries) {
        arr.push_back({{"bus", e.bus_id},
                       {"model", to_string(e.model)},
                       {"kind", to_string(e.kind)},
                       {"bound", e.bound},
                       {"beta_star", e.calibration.beta_star},
                       {"gm", e.calibration.gm_at_star},
                       {"grid_step", e.calibration.grid_step},
                       {"degenerate", e.degenerate}});
    }
    nlohmann::json j{{"format", "vep-calibration-v1"}, {"entries", arr}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write calibration file: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw DataError("write failed: " + path.string());
}

std::vector<CalibrationEntry> load_calibration(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open calibration file: " + path.string() +
                        " (run `train` first)");
    nlohmann::json j;
    try {
        in >> j;
        std::vector<CalibrationEntry> entries;
        for (const auto& e : j.at("entries")) {
            CalibrationEntry entry{
                e.at("bus").get<int>(),
                model_kind_from_string(e.at("model").get<std::string>()),
                e.at("kind").get<std::string>() == "ob" ? EventKind::over_bound
                                                        : EventKind::under_bound,
                e.at("bound").get<double>(),
                Calibration{e.at("beta_star").get<double>(), e.at("gm").get<double>(),
                            e.at("grid_step").get<double>()},
                e.at("degenerate").get<bool>()};
            entries.push_back(entry);
        }
        return entries;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed calibration file " + path.string() + ": " + e.what());
    }
}

const CalibrationEntry& find_calibration(const std::vector<CalibrationEntry>& entries,
                                         int bus_id, ModelKind model, EventKind kind) {
    for (const auto& e : entries)
        if (e.bus_id == bus_id && e.model == model && e.kind == kind) return e;
    throw DataError(std::string("missing calibration for (bus ") + std::to_string(bus_id) +
                    ", " + to_string(model) + ", " + to_string(kind) + ")");
}

}  // namespace

void cmd_synth(const RunConfig& config, std::ostream& out) {
    validate(config);
    const NetworkDataset dataset = generate(config.synth);
    if (config.data_path.has_parent_path())
        std::filesystem::create_directories(config.data_path.parent_path());
    save_csv(dataset, config.data_path);
    out << "wrote " << dataset.bus_count() << " buses x " << dataset.sample_count()
        << " samples to " << config.data_path.string() << "\n\n";

    const VoltageBounds bounds = make_bounds(config);
    out << "positive-event ratios\n";
    out << "bus";
    for (const auto& b : bounds_of(config))
        out << "    " << (b.kind == EventKind::over_bound ? ">" : "<") << std::fixed
            << std::setprecision(2) << b.bound;
    out << '\n';
    for (const auto& bus : dataset.buses) {
        out << std::setw(3) << bus.bus_id;
        for (const auto& b : bounds_of(config)) {
            const auto events = label_events(bus, bounds, b.kind);
            out << "   " << std::setw(5) << std::fixed << std::setprecision(1)
                << 100.0 * positive_ratio(events) << '%';
        }
        out << '\n';
    }
    out.unsetf(std::ios::fixed);
}

BatchStatus cmd_train(const RunConfig& config, std::ostream& out) {
    validate(config);
    const NetworkDataset dataset = load_csv(config.data_path);
    const auto [train_part, test_part] = split(dataset, config.split);
    const VoltageBounds bounds = make_bounds(config);
    const auto runs = bounds_of(config);

    std::filesystem::create_directories(config.out_dir / "models");

    struct Task {
        std::size_t run_idx;
        std::size_t bus_idx;
        std::size_t model_idx;
    };
    std::vector<Task> tasks;
    for (std::size_t r = 0; r < runs.size(); ++r)
        for (std::size_t b = 0; b < dataset.bus_count(); ++b)
            for (std::size_t m = 0; m < config.models.size(); ++m) tasks.push_back({r, b, m});

    // per (run, bus) supervised sets, shared read-only across model tasks
    std::vector<std::vector<SupervisedSet>> fit_sets(runs.size());
    std::vector<std::vector<SupervisedSet>> calib_sets(runs.size());
    const NetworkDataset& calib_part =
        config.calibrate_on == CalibrateOn::train ? train_part : test_part;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        fit_sets[r] = decompose(train_part, bounds, config.features, runs[r].kind);
        calib_sets[r] = config.calibrate_on == CalibrateOn::train
                            ? fit_sets[r]
                            : decompose(calib_part, bounds, config.features, runs[r].kind);
    }

    struct Slot {
        std::optional<CalibrationEntry> entry;
        std::string warning;
        std::string error;
    };
    std::vector<Slot> slots(tasks.size());

    run_parallel(tasks.size(), effective_jobs(config), [&](std::size_t i) {
        const Task& task = tasks[i];
        const BoundRun& run = runs[task.run_idx];
        const SupervisedSet& fit = fit_sets[task.run_idx][task.bus_idx];
        const SupervisedSet& calib = calib_sets[task.run_idx][task.bus_idx];
        const int bus_id = dataset.buses[task.bus_idx].bus_id;
        ModelSpec spec = config.models[task.model_idx];
        Slot& slot = slots[i];
        try {
            spec.seed = task_seed(config, bus_id, spec.kind, run.kind);
            const TrainedModel model = train(spec, fit);

            CalibrationEntry entry{bus_id, spec.kind, run.kind, run.bound, {}, false};
            const std::size_t calib_pos = calib.positive_count();
            if (calib_pos == 0 || calib_pos == calib.n()) {
                entry.calibration = Calibration{1.0, 0.0, config.beta_step};
                entry.degenerate = true;
                slot.warning = std::string("bus ") + std::to_string(bus_id) + " " +
                               to_string(spec.kind) + " " + to_string(run.kind) +
                               ": single-class calibration labels, beta* falls back to 1.0";
            } else {
                const auto scores = model.score_all(calib);
                entry.calibration = select_beta(scores, calib.targets, config.beta_step);
            }
            model.save(model_path(config, bus_id, spec.kind, run.kind));
            slot.entry = entry;
        } catch (const std::exception& e) {
            slot.error = std::string("bus ") + std::to_string(bus_id) + " " +
                         to_string(spec.kind) + " " + to_string(run.kind) + ": " + e.what();
        }
    });

    BatchStatus status;
    std::vector<CalibrationEntry> entries;
    for (const auto& slot : slots) {
        if (!slot.warning.empty()) out << "warning: " << slot.warning << '\n';
        if (slot.entry) {
            entries.push_back(*slot.entry);
            ++status.completed;
        } else {
            out << "error: " << slot.error << '\n';
            status.failures.push_back(slot.error);
            ++status.failed;
        }
    }
    write_calibration(entries, calibration_path(config));
    out << "trained " << status.completed << "/" << tasks.size() << " (bus, model) tasks; "
        << "calibration written to " << calibration_path(config).string() << '\n';
    return status;
}

BatchStatus cmd_evaluate(const RunConfig& config, std::ostream& out,
                         std::vector<RunResult>* collected) {
    validate(config);
    const NetworkDataset dataset = load_csv(config.data_path);
    const auto [train_part, test_part] = split(dataset, config.split);
    const VoltageBounds bounds = make_bounds(config);
    const auto runs = bounds_of(config);
    const auto calibrations = load_calibration(calibration_path(config));

    std::filesystem::create_directories(config.out_dir / "roc");

    struct Task {
        std::size_t run_idx;
        std::size_t bus_idx;
        std::size_t model_idx;
    };
    std::vector<Task> tasks;
    for (std::size_t r = 0; r < runs.size(); ++r)
        for (std::size_t b = 0; b < dataset.bus_count(); ++b)
            for (std::size_t m = 0; m < config.models.size(); ++m) tasks.push_back({r, b, m});

    std::vector<std::vector<SupervisedSet>> test_sets(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r)
        test_sets[r] = decompose(test_part, bounds, config.features, runs[r].kind);

    struct Slot {
        std::optional<RunResult> result;
        std::optional<RocCurve> curve;
        std::string warning;
        std::string error;
    };
    std::vector<Slot> slots(tasks.size());

    run_parallel(tasks.size(), effective_jobs(config), [&](std::size_t i) {
        const Task& task = tasks[i];
        const BoundRun& run = runs[task.run_idx];
        const SupervisedSet& test = test_sets[task.run_idx][task.bus_idx];
        const int bus_id = dataset.buses[task.bus_idx].bus_id;
        const ModelKind kind = config.models[task.model_idx].kind;
        Slot& slot = slots[i];
        try {
            const TrainedModel model =
                TrainedModel::load(model_path(config, bus_id, kind, run.kind));
            if (model.feature_dim() != test.dim)
                throw DataError("model feature_dim " + std::to_string(model.feature_dim()) +
                                " does not match dataset window " + std::to_string(test.dim));
            const auto& entry = find_calibration(calibrations, bus_id, kind, run.kind);

            const auto scores = model.score_all(test);
            std::vector<std::uint8_t> pred(scores.size());
            for (std::size_t s = 0; s < scores.size(); ++s)
                pred[s] = scores[s] >= entry.calibration.beta_star ? 1 : 0;

            RunResult result;
            result.bus_id = bus_id;
            result.model = kind;
            result.kind = run.kind;
            result.bound = run.bound;
            result.calibration = entry.calibration;
            result.metrics = report(confusion(pred, test.targets));
            result.metrics.beta = entry.calibration.beta_star;

            const std::size_t test_pos = test.positive_count();
            if (test_pos == 0 || test_pos == test.n()) {
                slot.warning = std::string("bus ") + std::to_string(bus_id) + " " +
                               to_string(kind) + " " + to_string(run.kind) +
                               ": single-class test labels, ROC/AUC undefined, auc set to 0";
            } else {
                const auto curve = roc(scores, test.targets, config.beta_step);
                result.metrics.auc = curve.auc;
                slot.curve = curve;
            }
            slot.result = result;
        } catch (const std::exception& e) {
            slot.error = std::string("bus ") + std::to_string(bus_id) + " " +
                         to_string(kind) + " " + to_string(run.kind) + ": " + e.what();
        }
    });

    BatchStatus status;
    std::vector<RunResult> results;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        auto& slot = slots[i];
        if (!slot.warning.empty()) out << "warning: " << slot.warning << '\n';
        if (slot.result) {
            if (slot.curve) {
                const Task& task = tasks[i];
                write_roc_csv(*slot.curve,
                              roc_path(config, slot.result->bus_id,
                                       config.models[task.model_idx].kind,
                                       runs[task.run_idx].kind));
            }
            results.push_back(*slot.result);
            ++status.completed;
        } else {
            out << "error: " << slot.error << '\n';
            status.failures.push_back(slot.error);
            ++status.failed;
        }
    }

    write_results(results, config.out_dir / "results.jsonl");

    std::ostringstream tables;
    for (const auto& run : runs) {
        for (const auto& bus : dataset.buses) {
            std::vector<RunResult> slice;
            for (const auto& r : results)
                if (r.kind == run.kind && r.bus_id == bus.bus_id) slice.push_back(r);
            if (slice.empty()) continue;
            tables << "bus " << bus.bus_id << ", "
                   << (run.kind == EventKind::over_bound ? "over-bound at " : "under-bound at ")
                   << run.bound << " p.u.\n"
                   << metric_table(slice) << '\n';
        }
        std::vector<RunResult> all_buses;
        for (const auto& r : results)
            if (r.kind == run.kind) all_buses.push_back(r);
        if (!all_buses.empty() && status.failed == 0) {
            tables << "nMCC ranking, "
                   << (run.kind == EventKind::over_bound ? "over-bound at " : "under-bound at ")
                   << run.bound << " p.u. (descending median)\n"
                   << ranking_table(rank_models(all_buses)) << '\n';
        }
    }
    out << tables.str();
    std::ofstream table_file(config.out_dir / "tables.txt", std::ios::binary);
    table_file << tables.str();

    if (collected) *collected = std::move(results);
    return status;
}

void cmd_predict(const RunConfig& config, std::ostream& out) {
    validate(config);
    const NetworkDataset dataset = load_csv(config.data_path);
    const auto runs = bounds_of(config);
    const auto calibrations = load_calibration(calibration_path(config));

    const std::size_t window = config.features.window() + config.features.delay;
    if (dataset.sample_count() < window)
        throw DataError("window length mismatch: need " + std::to_string(window) +
                        " samples, dataset has " + std::to_string(dataset.sample_count()));

    for (const auto& run : runs) {
        out << (run.kind == EventKind::over_bound ? "over-bound at " : "under-bound at ")
            << run.bound << " p.u., horizon " << config.features.horizon << " steps\n";
        for (const auto& bus : dataset.buses) {
            const std::size_t last = bus.size() - 1;
            const std::size_t first = last - config.features.delay - config.features.lag;
            std::vector<double> input(bus.values.begin() + static_cast<std::ptrdiff_t>(first),
                                      bus.values.begin() +
                                          static_cast<std::ptrdiff_t>(first +
                                                                      config.features.window()));
            for (const auto& spec : config.models) {
                const TrainedModel model =
                    TrainedModel::load(model_path(config, bus.bus_id, spec.kind, run.kind));
                const auto& entry =
                    find_calibration(calibrations, bus.bus_id, spec.kind, run.kind);
                const double score = model.score(input);
                const int label = score >= entry.calibration.beta_star ? 1 : 0;
                out << "  bus " << bus.bus_id << "  " << std::setw(13) << std::left
                    << to_string(spec.kind) << std::right << " score "
                    << std::fixed << std::setprecision(4) << score << "  beta* "
                    << std::setprecision(2) << entry.calibration.beta_star << "  label "
                    << label << '\n';
                out.unsetf(std::ios::fixed);
            }
        }
    }
}

void cmd_report(const RunConfig& config, std::ostream& out) {
    const auto results = load_results(config.out_dir / "results.jsonl");

    std::vector<double> bounds_seen;
    for (const auto& r : results)
        if (std::find(bounds_seen.begin(), bounds_seen.end(), r.bound) == bounds_seen.end())
            bounds_seen.push_back(r.bound);

    for (double bound : bounds_seen) {
        std::vector<int> buses;
        for (const auto& r : results)
            if (r.bound == bound && std::find(buses.begin(), buses.end(), r.bus_id) == buses.end())
                buses.push_back(r.bus_id);
        std::sort(buses.begin(), buses.end());

        for (int bus : buses) {
            std::vector<RunResult> slice;
            for (const auto& r : results)
                if (r.bound == bound && r.bus_id == bus) slice.push_back(r);
            out << "bus " << bus << ", bound " << bound << " p.u.\n"
                << metric_table(slice) << '\n';
        }
        std::vector<RunResult> all_buses;
        for (const auto& r : results)
            if (r.bound == bound) all_buses.push_back(r);
        out << "nMCC ranking, bound " << bound << " p.u. (descending median)\n"
            << ranking_table(rank_models(all_buses)) << '\n';
    }
}

}  // namespace vep
