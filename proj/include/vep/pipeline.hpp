#pragma once

#include <iosfwd>
#include <vector>

#include "vep/config.hpp"
#include "vep/report.hpp"

namespace vep {

/// Writes the synthetic dataset CSV and prints the per-bus positive-ratio
/// table for the configured bounds.
void cmd_synth(const RunConfig& config, std::ostream& out);

/// Outcome of a train/evaluate batch. failed > 0 means some (bus, model)
/// task failed while the rest of the batch completed (CLI exit code 3).
struct BatchStatus {
    int completed = 0;
    int failed = 0;
    std::vector<std::string> failures;
};

/// Trains every configured (bus, model) pair on the training partition,
/// calibrates beta*, and persists model files plus calibration.json.
BatchStatus cmd_train(const RunConfig& config, std::ostream& out);

/// Scores the test partition with the persisted models, writes results.jsonl,
/// ROC CSVs, per-bus metric tables and the ranked nMCC summary.
BatchStatus cmd_evaluate(const RunConfig& config, std::ostream& out,
                         std::vector<RunResult>* collected = nullptr);

/// Scores the most recent window of the configured dataset with every
/// persisted model and prints score and beta*-thresholded label per bus.
void cmd_predict(const RunConfig& config, std::ostream& out);

/// Regenerates metric tables and the ranking from an existing results file.
void cmd_report(const RunConfig& config, std::ostream& out);

}  // namespace vep
