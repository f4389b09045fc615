#include "vep/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace vep {
namespace {

std::string two_decimals(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string four_decimals(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

double median_of(const std::vector<double>& sorted, std::size_t lo, std::size_t hi) {
    const std::size_t len = hi - lo;
    const std::size_t mid = lo + len / 2;
    return len % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
}

}  // namespace

std::string metric_table(std::span<const RunResult> results) {
    if (results.empty()) throw DataError("metric_table: no results");

    std::vector<std::string> headers{""};
    std::vector<std::vector<std::string>> columns;
    for (const auto& r : results) {
        headers.push_back(to_string(r.model));
        const auto& m = r.metrics;
        const bool gm_deg = m.degenerate.tpr || m.degenerate.tnr;
        std::vector<std::string> col{
            two_decimals(r.calibration.beta_star),
            std::to_string(m.cm.tp),
            std::to_string(m.cm.fp),
            std::to_string(m.cm.fn),
            std::to_string(m.cm.tn),
            two_decimals(m.tpr) + (m.degenerate.tpr ? "(deg)" : ""),
            two_decimals(m.fpr) + (m.degenerate.tnr ? "(deg)" : ""),
            two_decimals(m.gm) + (gm_deg ? "(deg)" : ""),
            two_decimals(m.acc),
            two_decimals(m.nmcc) + (m.degenerate.mcc ? "(deg)" : ""),
        };
        columns.push_back(std::move(col));
    }

    static const char* kRowLabels[] = {"beta*", "TP", "FP", "FN",  "TN",
                                       "TPR",   "FPR", "GM", "ACC", "nMCC"};
    std::vector<std::size_t> widths(headers.size());
    widths[0] = 5;  // longest row label
    for (std::size_t c = 0; c < columns.size(); ++c) {
        widths[c + 1] = headers[c + 1].size();
        for (const auto& cell : columns[c]) widths[c + 1] = std::max(widths[c + 1], cell.size());
    }

    std::ostringstream out;
    auto emit_row = [&](const std::string& label, auto cell_at) {
        out << label << std::string(widths[0] - label.size(), ' ');
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const std::string& cell = cell_at(c);
            out << "  " << std::string(widths[c + 1] - cell.size(), ' ') << cell;
        }
        out << '\n';
    };
    emit_row("", [&](std::size_t c) -> const std::string& { return headers[c + 1]; });
    for (std::size_t row = 0; row < 10; ++row)
        emit_row(kRowLabels[row],
                 [&](std::size_t c) -> const std::string& { return columns[c][row]; });
    return out.str();
}

std::vector<DistributionSummary> rank_models(std::span<const RunResult> results) {
    if (results.empty()) throw DataError("rank_models: no results");

    std::map<ModelKind, std::map<int, double>> by_model;  // model -> bus -> nmcc
    for (const auto& r : results) {
        auto [it, inserted] = by_model[r.model].emplace(r.bus_id, r.metrics.nmcc);
        if (!inserted)
            throw DataError(std::string("rank_models: duplicate result for bus ") +
                            std::to_string(r.bus_id) + ", model " + to_string(r.model));
    }

    const auto& reference = by_model.begin()->second;
    for (const auto& [model, buses] : by_model) {
        if (buses.size() != reference.size() ||
            !std::equal(buses.begin(), buses.end(), reference.begin(),
                        [](const auto& a, const auto& b) { return a.first == b.first; }))
            throw DataError(std::string("rank_models: ragged results, model ") +
                            to_string(model) + " does not cover the same buses");
    }

    std::vector<DistributionSummary> summaries;
    for (ModelKind kind : all_model_kinds()) {
        const auto it = by_model.find(kind);
        if (it == by_model.end()) continue;
        std::vector<double> values;
        values.reserve(it->second.size());
        for (const auto& [bus, nmcc] : it->second) values.push_back(nmcc);
        std::sort(values.begin(), values.end());

        DistributionSummary s;
        s.model = kind;
        s.bus_count = values.size();
        s.min = values.front();
        s.max = values.back();
        s.median = median_of(values, 0, values.size());
        if (values.size() == 1) {
            s.q1 = s.q3 = s.median;
        } else {
            // Tukey hinges: halves exclude the middle element for odd n
            const std::size_t half = values.size() / 2;
            s.q1 = median_of(values, 0, half);
            s.q3 = median_of(values, values.size() - half, values.size());
        }
        summaries.push_back(s);
    }

    std::stable_sort(summaries.begin(), summaries.end(),
                     [](const DistributionSummary& a, const DistributionSummary& b) {
                         return a.median > b.median;
                     });
    return summaries;
}

std::string ranking_table(std::span<const DistributionSummary> summaries) {
    std::ostringstream out;
    out << "model          buses  min     q1      median  q3      max\n";
    for (const auto& s : summaries) {
        std::string name = to_string(s.model);
        out << name << std::string(15 - name.size(), ' ');
        std::string buses = std::to_string(s.bus_count);
        out << buses << std::string(7 - buses.size(), ' ');
        out << four_decimals(s.min) << "  " << four_decimals(s.q1) << "  "
            << four_decimals(s.median) << "  " << four_decimals(s.q3) << "  "
            << four_decimals(s.max) << '\n';
    }
    return out.str();
}

void write_results(std::span<const RunResult> results, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write results file: " + path.string());
    for (const auto& r : results) {
        nlohmann::json record{
            {"bus", r.bus_id},
            {"model", to_string(r.model)},
            {"bound", r.bound},
            {"beta_star", r.calibration.beta_star},
            {"tp", r.metrics.cm.tp},
            {"fp", r.metrics.cm.fp},
            {"fn", r.metrics.cm.fn},
            {"tn", r.metrics.cm.tn},
            {"acc", r.metrics.acc},
            {"tpr", r.metrics.tpr},
            {"fpr", r.metrics.fpr},
            {"tnr", r.metrics.tnr},
            {"fnr", r.metrics.fnr},
            {"gm", r.metrics.gm},
            {"auc", r.metrics.auc},
            {"mcc", r.metrics.mcc},
            {"nmcc", r.metrics.nmcc},
        };
        out << record.dump() << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

std::vector<RunResult> load_results(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open results file: " + path.string());

    std::vector<RunResult> results;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            RunResult r;
            r.bus_id = j.at("bus").get<int>();
            r.model = model_kind_from_string(j.at("model").get<std::string>());
            r.bound = j.at("bound").get<double>();
            r.calibration.beta_star = j.at("beta_star").get<double>();
            ConfusionMatrix cm{j.at("tp").get<std::uint64_t>(), j.at("fp").get<std::uint64_t>(),
                               j.at("fn").get<std::uint64_t>(), j.at("tn").get<std::uint64_t>()};
            r.metrics = report(cm);
            r.metrics.auc = j.at("auc").get<double>();
            r.metrics.beta = r.calibration.beta_star;
            results.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw DataError("results file line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (results.empty()) throw DataError("results file is empty: " + path.string());
    return results;
}

}  // namespace vep
