#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "vep/csv.hpp"
#include "vep/pipeline.hpp"

namespace py = pybind11;
using namespace vep;

namespace {

ModelSpec make_model_spec(const std::string& kind, const std::map<std::string, double>& hyper,
                          std::uint64_t seed) {
    ModelSpec spec;
    spec.kind = model_kind_from_string(kind);
    spec.hyper = hyper;
    spec.seed = seed;
    validate(spec);
    return spec;
}

SupervisedSet make_supervised(const std::vector<std::vector<double>>& inputs,
                              const std::vector<std::uint8_t>& targets) {
    if (inputs.size() != targets.size())
        throw DataError("inputs and targets must have the same length");
    if (inputs.empty()) throw DataError("empty supervised set");
    SupervisedSet set;
    set.dim = inputs.front().size();
    set.bus_id = 1;
    for (const auto& row : inputs) {
        if (row.size() != set.dim) throw DataError("ragged input rows");
        set.inputs.insert(set.inputs.end(), row.begin(), row.end());
    }
    set.targets = targets;
    set.anchor_times.resize(targets.size());
    return set;
}

template <typename Fn>
py::tuple run_batch(Fn&& fn) {
    std::ostringstream log;
    const BatchStatus status = fn(log);
    return py::make_tuple(status.completed, status.failed, log.str());
}

}  // namespace

PYBIND11_MODULE(pyvep, m) {
    m.doc() = "voltage excursion event prediction: labeling, classifiers, calibration, metrics";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    py::class_<VoltageSeries>(m, "VoltageSeries")
        .def_readonly("bus_id", &VoltageSeries::bus_id)
        .def_readonly("timestamps", &VoltageSeries::timestamps)
        .def_readonly("values", &VoltageSeries::values)
        .def("__len__", &VoltageSeries::size);

    py::class_<NetworkDataset>(m, "NetworkDataset")
        .def_readonly("buses", &NetworkDataset::buses)
        .def_property_readonly("bus_count", &NetworkDataset::bus_count)
        .def_property_readonly("sample_count", &NetworkDataset::sample_count);

    py::class_<SynthSpec>(m, "SynthSpec")
        .def(py::init<>())
        .def_readwrite("n_buses", &SynthSpec::n_buses)
        .def_readwrite("n_samples", &SynthSpec::n_samples)
        .def_readwrite("seed", &SynthSpec::seed)
        .def_readwrite("base_level", &SynthSpec::base_level)
        .def_readwrite("diurnal_amplitude", &SynthSpec::diurnal_amplitude)
        .def_readwrite("noise_std", &SynthSpec::noise_std)
        .def_readwrite("wind_surge_rate", &SynthSpec::wind_surge_rate)
        .def_readwrite("wind_surge_magnitude", &SynthSpec::wind_surge_magnitude)
        .def_readwrite("per_bus_offset", &SynthSpec::per_bus_offset);

    m.def("generate", &generate, py::arg("spec"));
    m.def("load_csv", &load_csv, py::arg("path"));
    m.def("save_csv", &save_csv, py::arg("dataset"), py::arg("path"));
    m.def(
        "split",
        [](const NetworkDataset& dataset, double train_fraction) {
            return split(dataset, SplitSpec{train_fraction});
        },
        py::arg("dataset"), py::arg("train_fraction") = 0.75);

    py::class_<VoltageBounds>(m, "VoltageBounds")
        .def(py::init([](double upper, double lower) {
                 VoltageBounds b{upper, lower};
                 validate(b);
                 return b;
             }),
             py::arg("upper") = 1.05, py::arg("lower") = 0.95)
        .def_readwrite("upper", &VoltageBounds::upper)
        .def_readwrite("lower", &VoltageBounds::lower);

    py::class_<EventSeries>(m, "EventSeries")
        .def_readonly("bus_id", &EventSeries::bus_id)
        .def_readonly("labels", &EventSeries::labels)
        .def_property_readonly("kind",
                               [](const EventSeries& e) { return std::string(to_string(e.kind)); })
        .def("__len__", &EventSeries::size);

    m.def("label_over", &label_over, py::arg("series"), py::arg("bounds"));
    m.def("label_under", &label_under, py::arg("series"), py::arg("bounds"));
    m.def("positive_ratio", &positive_ratio, py::arg("events"));

    py::class_<FeatureSpec>(m, "FeatureSpec")
        .def(py::init([](std::size_t lag, std::size_t delay, std::size_t horizon) {
                 FeatureSpec spec{lag, delay, horizon};
                 validate(spec);
                 return spec;
             }),
             py::arg("lag") = 1, py::arg("delay") = 0, py::arg("horizon") = 4)
        .def_readwrite("lag", &FeatureSpec::lag)
        .def_readwrite("delay", &FeatureSpec::delay)
        .def_readwrite("horizon", &FeatureSpec::horizon);

    py::class_<SupervisedSet>(m, "SupervisedSet")
        .def_readonly("bus_id", &SupervisedSet::bus_id)
        .def_readonly("dim", &SupervisedSet::dim)
        .def_readonly("targets", &SupervisedSet::targets)
        .def_property_readonly("positives", &SupervisedSet::positive_count)
        .def("__len__", &SupervisedSet::n)
        .def("input", [](const SupervisedSet& s, std::size_t i) {
            if (i >= s.n()) throw py::index_error();
            const auto row = s.input(i);
            return std::vector<double>(row.begin(), row.end());
        });

    m.def("build_supervised", &build, py::arg("series"), py::arg("events"), py::arg("spec"));
    m.def("decompose", &decompose, py::arg("dataset"), py::arg("bounds"), py::arg("spec"),
          py::arg("kind"));
    m.def("make_supervised", &make_supervised, py::arg("inputs"), py::arg("targets"));

    py::enum_<EventKind>(m, "EventKind")
        .value("over_bound", EventKind::over_bound)
        .value("under_bound", EventKind::under_bound);

    py::class_<ModelSpec>(m, "ModelSpec")
        .def(py::init(&make_model_spec), py::arg("kind"),
             py::arg("hyper") = std::map<std::string, double>{}, py::arg("seed") = 1)
        .def_property_readonly(
            "kind", [](const ModelSpec& s) { return std::string(to_string(s.kind)); })
        .def_readwrite("hyper", &ModelSpec::hyper)
        .def_readwrite("seed", &ModelSpec::seed);

    m.def("model_kinds", [] {
        std::vector<std::string> names;
        for (ModelKind kind : all_model_kinds()) names.emplace_back(to_string(kind));
        return names;
    });

    py::class_<TrainedModel>(m, "TrainedModel")
        .def_property_readonly(
            "kind", [](const TrainedModel& m_) { return std::string(to_string(m_.kind())); })
        .def_property_readonly("feature_dim", &TrainedModel::feature_dim)
        .def_property_readonly("example_count", &TrainedModel::example_count)
        .def_property_readonly("positive_count", &TrainedModel::positive_count)
        .def("score",
             [](const TrainedModel& m_, const std::vector<double>& x) { return m_.score(x); })
        .def("score_all", &TrainedModel::score_all)
        .def("predict_label",
             [](const TrainedModel& m_, const std::vector<double>& x, double beta) {
                 return predict_label(m_, x, beta);
             })
        .def("to_json", &TrainedModel::to_json)
        .def_static("from_json", &TrainedModel::from_json)
        .def("save", &TrainedModel::save)
        .def_static("load", &TrainedModel::load);

    m.def("train", &train, py::arg("spec"), py::arg("data"));

    py::class_<RocPoint>(m, "RocPoint")
        .def_readonly("beta", &RocPoint::beta)
        .def_readonly("fpr", &RocPoint::fpr)
        .def_readonly("tpr", &RocPoint::tpr);

    py::class_<RocCurve>(m, "RocCurve")
        .def_readonly("points", &RocCurve::points)
        .def_readonly("auc", &RocCurve::auc);

    py::class_<Calibration>(m, "Calibration")
        .def_readonly("beta_star", &Calibration::beta_star)
        .def_readonly("gm_at_star", &Calibration::gm_at_star)
        .def_readonly("grid_step", &Calibration::grid_step);

    m.def(
        "roc",
        [](const std::vector<double>& scores, const std::vector<std::uint8_t>& truth,
           double grid_step) { return roc(scores, truth, grid_step); },
        py::arg("scores"), py::arg("truth"), py::arg("grid_step") = 0.01);
    m.def(
        "select_beta",
        [](const std::vector<double>& scores, const std::vector<std::uint8_t>& truth,
           double grid_step) { return select_beta(scores, truth, grid_step); },
        py::arg("scores"), py::arg("truth"), py::arg("grid_step") = 0.01);

    py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
        .def(py::init([](std::uint64_t tp, std::uint64_t fp, std::uint64_t fn,
                         std::uint64_t tn) { return ConfusionMatrix{tp, fp, fn, tn}; }),
             py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"))
        .def_readonly("tp", &ConfusionMatrix::tp)
        .def_readonly("fp", &ConfusionMatrix::fp)
        .def_readonly("fn", &ConfusionMatrix::fn)
        .def_readonly("tn", &ConfusionMatrix::tn);

    m.def(
        "confusion",
        [](const std::vector<std::uint8_t>& pred, const std::vector<std::uint8_t>& truth) {
            return confusion(pred, truth);
        },
        py::arg("pred"), py::arg("truth"));

    py::class_<MetricReport>(m, "MetricReport")
        .def_readonly("acc", &MetricReport::acc)
        .def_readonly("tpr", &MetricReport::tpr)
        .def_readonly("fpr", &MetricReport::fpr)
        .def_readonly("tnr", &MetricReport::tnr)
        .def_readonly("fnr", &MetricReport::fnr)
        .def_readonly("gm", &MetricReport::gm)
        .def_readonly("mcc", &MetricReport::mcc)
        .def_readonly("nmcc", &MetricReport::nmcc)
        .def_readonly("auc", &MetricReport::auc)
        .def_property_readonly(
            "degenerate", [](const MetricReport& r) { return r.degenerate.any(); });

    m.def("metric_report", &report, py::arg("cm"));

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("data_path", &RunConfig::data_path)
        .def_readwrite("out_dir", &RunConfig::out_dir)
        .def_readwrite("synth", &RunConfig::synth)
        .def_readwrite("beta_step", &RunConfig::beta_step)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("jobs", &RunConfig::jobs);

    m.def("load_config", &load_config, py::arg("path"));
    m.def("apply_override", &apply_override, py::arg("config"), py::arg("assignment"));

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("bus_id", &RunResult::bus_id)
        .def_property_readonly(
            "model", [](const RunResult& r) { return std::string(to_string(r.model)); })
        .def_readonly("bound", &RunResult::bound)
        .def_readonly("calibration", &RunResult::calibration)
        .def_readonly("metrics", &RunResult::metrics);

    m.def(
        "run_synth",
        [](const RunConfig& config) {
            std::ostringstream log;
            cmd_synth(config, log);
            return log.str();
        },
        py::arg("config"));
    m.def(
        "run_train",
        [](const RunConfig& config) {
            return run_batch([&](std::ostream& log) { return cmd_train(config, log); });
        },
        py::arg("config"));
    m.def(
        "run_evaluate",
        [](const RunConfig& config) {
            std::ostringstream log;
            std::vector<RunResult> results;
            const BatchStatus status = cmd_evaluate(config, log, &results);
            return py::make_tuple(results, status.completed, status.failed, log.str());
        },
        py::arg("config"));
}
