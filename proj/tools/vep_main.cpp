#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vep/pipeline.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("-c,--config", args.config_path, "flat key=value configuration file");
    sub->add_option("--set", args.overrides, "override a configuration key, `key=value`");
    for (const auto& [flag, key] :
         {std::pair<const char*, const char*>{"--data", "data"},
          {"--out", "out_dir"},
          {"--seed", "seed"},
          {"--jobs", "jobs"},
          {"--v-upper", "v_upper"},
          {"--v-lower", "v_lower"},
          {"--beta-step", "beta_step"},
          {"--train-fraction", "train_fraction"},
          {"--calibrate-on", "calibrate_on"},
          {"--models", "models"}}) {
        const std::string assignment_key = key;
        sub->add_option_function<std::string>(
            flag,
            [&args, assignment_key](const std::string& value) {
                args.overrides.push_back(assignment_key + "=" + value);
            },
            std::string("sets ") + assignment_key);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voltage excursion event prediction: label, train, calibrate, evaluate"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset CSV");
    auto* train = app.add_subcommand("train", "train and calibrate all (bus, model) pairs");
    auto* evaluate = app.add_subcommand("evaluate", "score the test partition and emit results");
    auto* predict = app.add_subcommand("predict", "score the latest window of the dataset");
    auto* report = app.add_subcommand("report", "regenerate tables from results.jsonl");
    for (auto* sub : {synth, train, evaluate, predict, report}) add_common(sub, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        vep::RunConfig config;
        if (!args.config_path.empty()) config = vep::load_config(args.config_path);
        for (const auto& assignment : args.overrides) vep::apply_override(config, assignment);

        vep::BatchStatus status;
        if (synth->parsed()) {
            vep::cmd_synth(config, std::cout);
        } else if (train->parsed()) {
            status = vep::cmd_train(config, std::cout);
        } else if (evaluate->parsed()) {
            status = vep::cmd_evaluate(config, std::cout);
        } else if (predict->parsed()) {
            vep::cmd_predict(config, std::cout);
        } else if (report->parsed()) {
            vep::cmd_report(config, std::cout);
        }
        if (status.failed > 0) {
            std::cerr << status.failed << " task(s) failed\n";
            return 3;
        }
        return 0;
    } catch (const vep::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const vep::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
