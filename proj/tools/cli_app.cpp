#include "cli_app.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eigenscan/catalog.hpp"
#include "eigenscan/classifier.hpp"
#include "eigenscan/dataset.hpp"
#include "eigenscan/errors.hpp"
#include "eigenscan/evaluation.hpp"
#include "eigenscan/extract.hpp"
#include "eigenscan/gain_ratio.hpp"
#include "eigenscan/io_util.hpp"
#include "eigenscan/naive_bayes.hpp"

namespace eigenscan::cli {

namespace {

namespace fs = std::filesystem;

// Protocol defaults: 95% variance, 5 folds. The default seed is fixed (not
// drawn from entropy) so unseeded runs are reproducible.
constexpr double kDefaultVariance = 0.95;
constexpr std::size_t kDefaultFolds = 5;
constexpr std::uint64_t kDefaultSeed = 42;

struct Options {
    std::string catalog_path;
    std::string input_dir;
    std::string data_path;
    std::string model_path;
    std::string output_path;
    std::string report_path;
    std::string reduced_data_path;
    std::string output_dir;
    std::string algorithm = "eigenspace";
    double variance = kDefaultVariance;
    double alpha = 1.0;
    std::size_t folds = kDefaultFolds;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
    std::string baseline;

    std::size_t features = 100;
    std::size_t malware = 500;
    std::size_t benign = 500;
    std::size_t informative = 30;
    double delta = 0.35;
    std::size_t top = 0;  // 0 = keep everything
};

FeatureCatalog resolve_catalog(const Options& opt) {
    if (opt.catalog_path.empty()) return default_catalog();
    return load_catalog(opt.catalog_path);
}

Algorithm resolve_algorithm(const Options& opt) {
    if (opt.algorithm == "eigenspace") return Algorithm::Eigenspace;
    if (opt.algorithm == "nb") return Algorithm::NaiveBayes;
    throw DataError("unknown algorithm \"" + opt.algorithm + "\" (use eigenspace or nb)");
}

std::string read_optional_file(const fs::path& path) {
    if (!fs::exists(path)) return {};
    return read_text_file(path);
}

int cmd_extract(const Options& opt) {
    const FeatureCatalog catalog = resolve_catalog(opt);

    std::vector<ArtifactBundle> bundles;
    for (const auto& entry : fs::directory_iterator(opt.input_dir)) {
        if (!entry.is_directory()) continue;
        ArtifactBundle bundle;
        bundle.app_id = entry.path().filename().string();
        bundle.document(DocumentRole::Manifest) = read_optional_file(entry.path() / "manifest.txt");
        bundle.document(DocumentRole::CodeDump) = read_optional_file(entry.path() / "code.txt");
        bundle.document(DocumentRole::EmbeddedFiles) = read_optional_file(entry.path() / "files.txt");
        bundles.push_back(std::move(bundle));
    }
    if (bundles.empty())
        throw DataError("extract: no application subdirectories under " + opt.input_dir);
    std::sort(bundles.begin(), bundles.end(),
              [](const ArtifactBundle& a, const ArtifactBundle& b) { return a.app_id < b.app_id; });

    Dataset ds;
    ds.feature_names = catalog.feature_names();
    ds.labeled = false;
    ds.vectors = extract_batch(bundles, catalog, opt.threads);
    write_dataset(ds, opt.output_path);
    std::fprintf(stderr, "extracted %zu applications x %zu features -> %s\n", ds.vectors.size(),
                 ds.feature_names.size(), opt.output_path.c_str());
    return 0;
}

SyntheticSpec synthetic_spec(const Options& opt, bool informative_given) {
    SyntheticSpec spec;
    spec.feature_count = opt.features;
    spec.malware_count = opt.malware;
    spec.benign_count = opt.benign;
    // the documented default of 30 informative features only makes sense
    // when there are at least that many
    spec.informative_count =
        informative_given ? opt.informative : std::min<std::size_t>(opt.informative, opt.features);
    spec.delta = opt.delta;
    spec.seed = opt.seed;
    return spec;
}

int cmd_gen(const Options& opt, bool informative_given) {
    write_dataset(generate_synthetic(synthetic_spec(opt, informative_given)), opt.output_path);
    return 0;
}

int cmd_rank(const Options& opt) {
    const Dataset ds = read_dataset(opt.data_path);
    const RankedFeatures ranked = rank_features(ds);
    const std::size_t k = opt.top == 0 ? ranked.size() : opt.top;
    if (k > ranked.size())
        throw DataError("rank: --top " + std::to_string(k) + " exceeds the " +
                        std::to_string(ranked.size()) + " features in the dataset");

    std::string csv = "name,score,rank\n";
    for (std::size_t r = 0; r < k; ++r) {
        csv += ranked[r].name;
        csv += ',' + format_double(ranked[r].score);
        csv += ',' + std::to_string(r + 1) + '\n';
    }
    write_text_file_atomic(opt.output_path, csv);

    if (!opt.reduced_data_path.empty())
        write_dataset(select_top(ranked, k, ds), opt.reduced_data_path);
    return 0;
}

int cmd_train(const Options& opt) {
    const Dataset ds = read_dataset(opt.data_path);
    const TrainingSet s = TrainingSet::from_dataset(ds);
    if (resolve_algorithm(opt) == Algorithm::Eigenspace) {
        save_model(train(s, opt.variance), opt.model_path);
    } else {
        save_nb_model(nb_train(s, opt.alpha), opt.model_path);
    }
    return 0;
}

int cmd_classify(const Options& opt) {
    const Dataset ds = read_dataset(opt.data_path);
    const std::string format = model_format(opt.model_path);

    std::vector<ClassificationResult> results;
    if (resolve_algorithm(opt) == Algorithm::Eigenspace) {
        if (format != kEigenspaceModelFormat)
            throw DataError(opt.model_path + " is not an eigenspace model (use --algorithm nb?)");
        const EigenspaceModel model = load_model(opt.model_path);
        if (model.feature_names != ds.feature_names)
            throw DataError("classify: dataset features do not match the model");
        results = classify_batch(model, ds.vectors, opt.threads);
    } else {
        if (format != kNaiveBayesModelFormat)
            throw DataError(opt.model_path + " is not a naive-bayes model");
        const NaiveBayesModel model = load_nb_model(opt.model_path);
        if (model.feature_names != ds.feature_names)
            throw DataError("classify: dataset features do not match the model");
        results = nb_classify_batch(model, ds.vectors, opt.threads);
    }

    std::string csv = "app_id,predicted,score,nearest_app_id\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        csv += ds.vectors[i].app_id;
        csv += ',';
        csv += to_string(results[i].predicted);
        csv += ',' + format_double(results[i].score);
        csv += ',' + results[i].nearest_app_id + '\n';
    }
    write_text_file_atomic(opt.output_path, csv);
    return 0;
}

int cmd_crossval(const Options& opt) {
    const Dataset ds = read_dataset(opt.data_path);
    const Algorithm algorithm =
        opt.baseline == "nb" ? Algorithm::NaiveBayes : Algorithm::Eigenspace;
    const EvaluationReport report =
        cross_validate(ds, opt.folds, opt.seed, opt.variance, algorithm, opt.alpha, opt.threads);
    write_text_file_atomic(opt.report_path, format_report_csv(report));
    std::fprintf(stderr, "%s: %zu-fold mean accuracy %.6f\n", to_string(algorithm), opt.folds,
                 report.mean.acc);
    return 0;
}

int cmd_map(const Options& opt) {
    const std::string format = model_format(opt.model_path);
    if (format != kEigenspaceModelFormat)
        throw DataError("map: " + opt.model_path + " is not an eigenspace model");
    const EigenspaceModel model = load_model(opt.model_path);
    const Dataset ds = read_dataset(opt.data_path);
    if (!ds.labeled) throw DataError("map: dataset has no labels");
    if (model.feature_names != ds.feature_names)
        throw DataError("map: dataset features do not match the model");
    write_text_file_atomic(opt.output_path, format_mapping_csv(export_mapping(model, ds.vectors)));
    return 0;
}

// gen -> rank -> crossval (eigenspace and the nb baseline on the same
// folds), with the protocol defaults, in one command.
int cmd_repro(const Options& opt, bool informative_given) {
    fs::create_directories(opt.output_dir);
    const fs::path dir(opt.output_dir);

    const Dataset generated = generate_synthetic(synthetic_spec(opt, informative_given));
    write_dataset(generated, dir / "dataset.csv");

    const RankedFeatures ranked = rank_features(generated);
    const std::size_t k = opt.top == 0 ? ranked.size() : std::min(opt.top, ranked.size());
    std::string ranking_csv = "name,score,rank\n";
    for (std::size_t r = 0; r < k; ++r) {
        ranking_csv += ranked[r].name;
        ranking_csv += ',' + format_double(ranked[r].score);
        ranking_csv += ',' + std::to_string(r + 1) + '\n';
    }
    write_text_file_atomic(dir / "ranking.csv", ranking_csv);
    const Dataset reduced = select_top(ranked, k, generated);
    write_dataset(reduced, dir / "dataset-ranked.csv");

    const EvaluationReport eigen_report = cross_validate(
        reduced, opt.folds, opt.seed, opt.variance, Algorithm::Eigenspace, opt.alpha, opt.threads);
    write_text_file_atomic(dir / "report-eigenspace.csv", format_report_csv(eigen_report));
    const EvaluationReport nb_report = cross_validate(
        reduced, opt.folds, opt.seed, opt.variance, Algorithm::NaiveBayes, opt.alpha, opt.threads);
    write_text_file_atomic(dir / "report-nb.csv", format_report_csv(nb_report));

    char summary[256];
    std::snprintf(summary, sizeof(summary),
                  "algorithm,mean_tpr,mean_fpr,mean_tnr,mean_fnr,mean_acc,mean_err\n"
                  "eigenspace,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n"
                  "nb,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  eigen_report.mean.tpr, eigen_report.mean.fpr, eigen_report.mean.tnr,
                  eigen_report.mean.fnr, eigen_report.mean.acc, eigen_report.mean.err,
                  nb_report.mean.tpr, nb_report.mean.fpr, nb_report.mean.tnr, nb_report.mean.fnr,
                  nb_report.mean.acc, nb_report.mean.err);
    write_text_file_atomic(dir / "summary.csv", summary);

    std::printf("eigenspace mean accuracy: %.6f\n", eigen_report.mean.acc);
    std::printf("nb mean accuracy: %.6f\n", nb_report.mean.acc);
    return 0;
}

void add_threads(CLI::App* cmd, Options& opt) {
    cmd->add_option("--threads", opt.threads, "Worker threads (default 1, deterministic)")
        ->check(CLI::Range(1u, 256u));
}

void add_seed(CLI::App* cmd, Options& opt) {
    cmd->add_option("--seed", opt.seed, "PRNG seed (default 42)");
}

void add_variance(CLI::App* cmd, Options& opt) {
    cmd->add_option("--variance", opt.variance, "Variance threshold in (0,1] (default 0.95)")
        ->check(CLI::Range(1e-12, 1.0));
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Eigenspace-analysis malware classification toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto* extract_cmd = app.add_subcommand(
        "extract", "Extract binary feature vectors from decoded app artifacts");
    extract_cmd->add_option("--catalog", opt.catalog_path, "Catalog JSON (default: built-in)");
    extract_cmd
        ->add_option("--input", opt.input_dir,
                     "Directory with one subdirectory per app "
                     "(manifest.txt, code.txt, files.txt)")
        ->required()
        ->check(CLI::ExistingDirectory);
    extract_cmd->add_option("--output", opt.output_path, "Dataset CSV to write")->required();
    add_threads(extract_cmd, opt);

    auto* gen_cmd = app.add_subcommand("gen", "Generate a labeled synthetic dataset");
    gen_cmd->add_option("--features", opt.features, "Feature count (default 100)")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--malware", opt.malware, "Malware sample count (default 500)")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--benign", opt.benign, "Benign sample count (default 500)")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--informative", opt.informative,
                        "Number of class-separated features (default 30)");
    gen_cmd->add_option("--delta", opt.delta, "Class separation in [0,0.5] (default 0.35)")
        ->check(CLI::Range(0.0, 0.5));
    add_seed(gen_cmd, opt);
    gen_cmd->add_option("--output", opt.output_path, "Dataset CSV to write")->required();

    auto* rank_cmd = app.add_subcommand("rank", "Rank features by gain ratio");
    rank_cmd->add_option("--data", opt.data_path, "Labeled dataset CSV")
        ->required()
        ->check(CLI::ExistingFile);
    rank_cmd->add_option("--top", opt.top, "Keep the k best-ranked features (default: all)")
        ->check(CLI::PositiveNumber);
    rank_cmd->add_option("--output", opt.output_path, "Ranking CSV (name,score,rank)")->required();
    rank_cmd->add_option("--reduced-data", opt.reduced_data_path,
                         "Also write the dataset projected onto the kept features");

    auto* train_cmd = app.add_subcommand("train", "Train a model from a labeled dataset");
    train_cmd->add_option("--data", opt.data_path, "Labeled dataset CSV")
        ->required()
        ->check(CLI::ExistingFile);
    add_variance(train_cmd, opt);
    train_cmd->add_option("--model", opt.model_path, "Model JSON to write")->required();
    train_cmd->add_option("--algorithm", opt.algorithm, "eigenspace (default) or nb")
        ->check(CLI::IsMember({"eigenspace", "nb"}));
    train_cmd->add_option("--alpha", opt.alpha, "Laplace smoothing for nb (default 1.0)")
        ->check(CLI::PositiveNumber);

    auto* classify_cmd = app.add_subcommand("classify", "Classify a dataset against a model");
    classify_cmd->add_option("--model", opt.model_path, "Model JSON")
        ->required()
        ->check(CLI::ExistingFile);
    classify_cmd->add_option("--data", opt.data_path, "Dataset CSV")
        ->required()
        ->check(CLI::ExistingFile);
    classify_cmd->add_option("--output", opt.output_path, "Predictions CSV to write")->required();
    classify_cmd->add_option("--algorithm", opt.algorithm, "eigenspace (default) or nb")
        ->check(CLI::IsMember({"eigenspace", "nb"}));
    add_threads(classify_cmd, opt);

    auto* crossval_cmd =
        app.add_subcommand("crossval", "Stratified k-fold cross-validation report");
    crossval_cmd->add_option("--data", opt.data_path, "Labeled dataset CSV")
        ->required()
        ->check(CLI::ExistingFile);
    crossval_cmd->add_option("--folds", opt.folds, "Fold count (default 5)")
        ->check(CLI::Range(2, 1000000));
    add_seed(crossval_cmd, opt);
    add_variance(crossval_cmd, opt);
    crossval_cmd
        ->add_option("--baseline", opt.baseline,
                     "Evaluate a baseline instead of the eigenspace model (nb)")
        ->check(CLI::IsMember({"nb"}));
    crossval_cmd->add_option("--alpha", opt.alpha, "Laplace smoothing for nb (default 1.0)")
        ->check(CLI::PositiveNumber);
    crossval_cmd->add_option("--report", opt.report_path, "Report CSV to write")->required();
    add_threads(crossval_cmd, opt);

    auto* map_cmd =
        app.add_subcommand("map", "Map labeled test samples to their nearest training samples");
    map_cmd->add_option("--model", opt.model_path, "Eigenspace model JSON")
        ->required()
        ->check(CLI::ExistingFile);
    map_cmd->add_option("--data", opt.data_path, "Labeled dataset CSV")
        ->required()
        ->check(CLI::ExistingFile);
    map_cmd->add_option("--output", opt.output_path, "Mapping CSV to write")->required();

    auto* repro_cmd = app.add_subcommand(
        "repro", "gen + rank + crossval (eigenspace vs nb) with protocol defaults");
    repro_cmd->add_option("--output-dir", opt.output_dir, "Directory for all artifacts")
        ->required();
    add_seed(repro_cmd, opt);
    repro_cmd->add_option("--features", opt.features, "Feature count (default 100)")
        ->check(CLI::PositiveNumber);
    repro_cmd->add_option("--malware", opt.malware, "Malware sample count (default 500)")
        ->check(CLI::PositiveNumber);
    repro_cmd->add_option("--benign", opt.benign, "Benign sample count (default 500)")
        ->check(CLI::PositiveNumber);
    repro_cmd->add_option("--informative", opt.informative,
                          "Number of class-separated features (default 30)");
    repro_cmd->add_option("--delta", opt.delta, "Class separation (default 0.35)")
        ->check(CLI::Range(0.0, 0.5));
    repro_cmd->add_option("--top", opt.top, "Features kept after ranking (default: all)")
        ->check(CLI::PositiveNumber);
    repro_cmd->add_option("--folds", opt.folds, "Fold count (default 5)")
        ->check(CLI::Range(2, 1000000));
    add_variance(repro_cmd, opt);
    add_threads(repro_cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (extract_cmd->parsed()) return cmd_extract(opt);
        if (gen_cmd->parsed()) return cmd_gen(opt, gen_cmd->count("--informative") > 0);
        if (rank_cmd->parsed()) return cmd_rank(opt);
        if (train_cmd->parsed()) return cmd_train(opt);
        if (classify_cmd->parsed()) return cmd_classify(opt);
        if (crossval_cmd->parsed()) return cmd_crossval(opt);
        if (map_cmd->parsed()) return cmd_map(opt);
        if (repro_cmd->parsed()) return cmd_repro(opt, repro_cmd->count("--informative") > 0);
    } catch (const DegeneracyError& e) {
        std::fprintf(stderr, "eigenscan: %s\n", e.what());
        return 3;
    } catch (const DataError& e) {
        std::fprintf(stderr, "eigenscan: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "eigenscan: %s\n", e.what());
        return 2;
    }
    return 0;
}

}  // namespace eigenscan::cli
