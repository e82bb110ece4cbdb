// Command line front end: ingest (load + count the libraries), run (execute
// an experiment config), predict (classify spectra with a saved model) and
// demo-data (write the synthetic corpus).
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "ramanmp/config.hpp"
#include "ramanmp/datagen.hpp"
#include "ramanmp/dataset.hpp"
#include "ramanmp/eval.hpp"
#include "ramanmp/model_io.hpp"

namespace {

using namespace ramanmp;

void print_library_report(const LoadReport& report) {
    std::cout << report.library << ": accepted " << report.accepted
              << ", rejected " << report.rejections.size() << '\n';
}

void print_assembled(const LabeledDataset& train, const LabeledDataset& test) {
    std::cout << '\n'
              << std::left << std::setw(36) << "polymer type" << std::right
              << std::setw(6) << "train" << std::setw(6) << "test" << '\n';
    for (PolymerType type : all_polymer_types()) {
        const std::size_t n_train = train.count(type);
        const std::size_t n_test = test.count(type);
        if (n_train == 0 && n_test == 0) continue;
        std::cout << std::left << std::setw(36) << canonical_name(type)
                  << std::right << std::setw(6) << n_train << std::setw(6)
                  << n_test << '\n';
    }
    std::cout << std::left << std::setw(36) << "total" << std::right
              << std::setw(6) << train.total_count() << std::setw(6)
              << test.total_count() << '\n';
}

struct IngestArgs {
    std::string slopp, sloppe, mendeley, synonyms, out;
};

int cmd_ingest(const IngestArgs& args) {
    SynonymTable table = SynonymTable::builtin();
    if (!args.synonyms.empty())
        table.merge(SynonymTable::from_csv(args.synonyms));

    const struct {
        const std::string& dir;
        SourceKind kind;
    } libraries[] = {
        {args.slopp, SourceKind::kSlopp},
        {args.sloppe, SourceKind::kSloppE},
        {args.mendeley, SourceKind::kMendeley},
    };

    std::vector<LabeledDataset> loaded;
    for (const auto& lib : libraries) {
        LoadReport report;
        loaded.push_back(load_library(lib.dir, lib.kind, &report, &table));
        print_library_report(report);
        if (!args.out.empty()) {
            std::filesystem::create_directories(args.out);
            const auto file = std::filesystem::path(args.out) /
                              ("load_" + std::string(source_name(lib.kind)) +
                               ".jsonl");
            std::ofstream out(file);
            if (!out)
                throw DataError("cannot write load report: " + file.string());
            report.write_jsonl(out);
        }
    }

    const auto [train, test] = assemble_train_test(loaded[0], loaded[2], loaded[1]);
    print_assembled(train, test);
    return 0;
}

struct RunArgs {
    std::string config;
    std::string out_override;
    std::uint64_t seed_override = 0;
    bool has_seed_override = false;
    int jobs = 1;
};

void write_text(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file);
    if (!out) throw DataError("cannot write " + file.string());
    out << text;
    if (!out) throw DataError("short write to " + file.string());
}

int cmd_run(const RunArgs& args) {
    ExperimentConfig cfg = parse_experiment_config(args.config);
    if (args.has_seed_override) cfg.seed = args.seed_override;
    if (!args.out_override.empty()) cfg.output_dir = args.out_override;
    cfg.validate();

    const std::filesystem::path out = cfg.output_dir;
    std::filesystem::create_directories(out);
    write_text(out / "resolved_config.json", resolved_config_json(cfg));

    const auto [train, test] = load_experiment_data(cfg, out);
    std::cout << "train " << train.total_count() << " samples, test "
              << test.total_count() << " samples\n";

    const EvalContext ctx{train, test, args.jobs};
    const auto seeds = ensemble_seeds(cfg.seed, cfg.n_seeds);
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<VariantReport> variants;
    std::string param_name = "variant";
    std::vector<std::string> param_values;

    if (cfg.experiment == "ablation") {
        variants = run_ablation(ctx, cfg.spec, seeds);
    } else if (cfg.experiment == "bin-sweep") {
        variants = sweep_bins(ctx, cfg.spec, cfg.sweep_widths, seeds);
        param_name = "bin_width";
        for (const int w : cfg.sweep_widths)
            param_values.push_back(std::to_string(w));
    } else if (cfg.experiment == "noise-sweep") {
        variants = sweep_noise(ctx, cfg.spec, cfg.sweep_amplitudes, seeds);
        param_name = "noise_amplitude";
    } else if (cfg.experiment == "final") {
        ModelBundle bundle;
        variants.push_back(run_final(ctx, seeds, &bundle));
        save_model(bundle, out / "model.json");
        write_confusion_csv(out / "confusion.csv",
                            variants.front().runs.front().confusion);
    } else if (cfg.experiment == "compare") {
        variants = run_model_comparison(ctx, cfg.spec, seeds);
        param_name = "model";
    } else {  // custom
        variants.push_back(run_ensemble(ctx, "custom", cfg.spec, seeds));
        write_confusion_csv(out / "confusion.csv",
                            variants.front().runs.front().confusion);
    }

    if (param_values.empty())
        for (const VariantReport& v : variants) param_values.push_back(v.name);

    write_report_json(out / "report.json", cfg.experiment, variants);
    write_sweep_csv(out / "accuracy.csv", variants, param_name, param_values);

    if (!cfg.export_augmented_dir.empty()) {
        export_dataset(augmented_training_set(ctx, cfg.spec, seeds.front()),
                       cfg.export_augmented_dir);
        std::cout << "augmented training set exported to "
                  << cfg.export_augmented_dir.string() << '\n';
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::size_t n_runs = 0;
    std::cout << '\n'
              << std::left << std::setw(24) << "variant" << std::right
              << std::setw(16) << "mean accuracy" << '\n';
    for (const VariantReport& v : variants) {
        n_runs += v.runs.size();
        std::cout << std::left << std::setw(24) << v.name << std::right
                  << std::setw(16) << std::fixed << std::setprecision(4)
                  << v.mean_accuracy << '\n';
        for (const std::string& note : v.notes)
            std::cout << "  note: " << note << '\n';
    }
    std::cout << std::defaultfloat << '\n'
              << cfg.experiment << ": " << variants.size() << " variant(s), "
              << n_runs << " run(s), " << std::fixed << std::setprecision(1)
              << wall << " s\n"
              << "report: " << (out / "report.json").string() << '\n';
    return 0;
}

struct PredictArgs {
    std::string model;
    std::vector<std::string> spectra;
    bool votes = false;
};

int cmd_predict(const PredictArgs& args) {
    const ModelBundle bundle = load_model(args.model);
    for (const std::string& file : args.spectra) {
        const Spectrum s = parse_spectrum_csv_file(file);
        const auto row = build_feature_row(s, bundle.pipeline);
        std::cout << file << ',' << canonical_name(bundle.predict(row));
        if (args.votes) {
            const auto fractions = bundle.vote_fractions(row);
            const auto& classes = bundle.classes();
            for (std::size_t i = 0; i < classes.size(); ++i) {
                if (fractions[i] == 0.0) continue;
                std::cout << ',' << canonical_name(classes[i]) << '='
                          << fractions[i];
            }
        }
        std::cout << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Raman microplastic classification pipeline"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    CLI::App* ingest = app.add_subcommand(
        "ingest", "Load the three spectral libraries and print the counts");
    ingest->add_option("--slopp", ingest_args.slopp, "pristine library root")
        ->required();
    ingest->add_option("--sloppe", ingest_args.sloppe, "weathered library root")
        ->required();
    ingest->add_option("--mendeley", ingest_args.mendeley, "Mendeley library root")
        ->required();
    ingest->add_option("--synonyms", ingest_args.synonyms,
                       "extra label-mapping CSV");
    ingest->add_option("--out", ingest_args.out,
                       "directory for per-library rejection reports (JSONL)");

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Run an experiment config");
    run->add_option("--config", run_args.config, "experiment JSON file")
        ->required();
    run->add_option("--out", run_args.out_override, "override output_dir");
    CLI::Option* seed_opt =
        run->add_option("--seed", run_args.seed_override, "override base seed");
    run->add_option("--jobs", run_args.jobs,
                    "worker threads (0 = all cores, default 1)");

    PredictArgs predict_args;
    CLI::App* predict =
        app.add_subcommand("predict", "Classify spectrum CSVs with a saved model");
    predict->add_option("--model", predict_args.model, "model JSON file")
        ->required();
    predict->add_option("spectra", predict_args.spectra, "spectrum CSV files")
        ->required();
    predict->add_flag("--votes", predict_args.votes,
                      "append per-class vote fractions");

    std::string demo_out = "demo-data";
    std::uint64_t demo_seed = 1;
    CLI::App* demo = app.add_subcommand(
        "demo-data", "Write a synthetic three-library corpus for smoke tests");
    demo->add_option("--out", demo_out, "corpus root directory");
    demo->add_option("--seed", demo_seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(ingest_args);
        if (run->parsed()) {
            run_args.has_seed_override = seed_opt->count() > 0;
            return cmd_run(run_args);
        }
        if (predict->parsed()) return cmd_predict(predict_args);
        if (demo->parsed()) {
            ramanmp::write_demo_corpus(demo_out, demo_seed);
            std::cout << "demo corpus written to " << demo_out << '\n';
            return 0;
        }
    } catch (const ramanmp::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ramanmp::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ramanmp::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
