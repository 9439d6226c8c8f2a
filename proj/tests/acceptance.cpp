// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Library behavior is checked in-process; end-to-end criteria drive the
// real binary named by EIGENSCAN_BIN.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "eigenscan/classifier.hpp"
#include "eigenscan/dataset.hpp"
#include "eigenscan/eigenspace.hpp"
#include "eigenscan/evaluation.hpp"
#include "eigenscan/gain_ratio.hpp"
#include "eigenscan/io_util.hpp"
#include "eigenscan/rng.hpp"
#include "oracles.hpp"

using namespace eigenscan;
namespace fs = std::filesystem;

namespace {

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() /
                     ("eigenscan-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string binary_path() {
    const char* bin = std::getenv("EIGENSCAN_BIN");
    require(bin != nullptr && *bin, "EIGENSCAN_BIN is not set (run through ctest)");
    return bin;
}

int run_binary(const std::string& args) {
    const std::string cmd = "\"" + binary_path() + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

Dataset random_instance(Rng& rng, std::size_t& n_out, std::size_t& k_out) {
    const std::size_t n = 3 + rng.next_below(28);       // N <= 30
    std::size_t k = 2 * n + rng.next_below(201 - 2 * n);  // 2N <= K <= 200
    n_out = n;
    k_out = k;
    Dataset ds;
    ds.labeled = true;
    for (std::size_t i = 1; i <= n; ++i) ds.feature_names.push_back("f" + std::to_string(i));
    for (std::size_t s = 0; s < k; ++s) {
        FeatureVector vec;
        vec.app_id = "app" + std::to_string(s);
        for (std::size_t i = 0; i < n; ++i)
            vec.values.push_back(static_cast<std::uint8_t>(rng.next_below(2)));
        vec.label = s == 0 ? Label::Malware
                           : (s == 1 ? Label::Benign
                                     : (rng.next_below(2) ? Label::Malware : Label::Benign));
        ds.vectors.push_back(std::move(vec));
    }
    return ds;
}

double mean_acc_from_summary(const std::string& summary, const std::string& algorithm) {
    // rows: algorithm,mean_tpr,mean_fpr,mean_tnr,mean_fnr,mean_acc,mean_err
    std::size_t pos = summary.find('\n' + algorithm + ',');
    require(pos != std::string::npos, "summary.csv has no " + algorithm + " row");
    pos += 1 + algorithm.size() + 1;
    for (int skip = 0; skip < 4; ++skip) pos = summary.find(',', pos) + 1;
    return std::strtod(summary.c_str() + pos, nullptr);
}

// ---- criteria ----------------------------------------------------------

void criterion_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(2024);
    std::size_t checked = 0;
    for (int instance = 0; instance < 100; ++instance) {
        std::size_t n = 0, k = 0;
        const Dataset ds = random_instance(rng, n, k);
        const TrainingSet s = TrainingSet::from_dataset(ds);
        const EigenspaceModel model = train(s, 1.0);
        for (int q = 0; q < 20; ++q) {
            FeatureVector query;
            query.app_id = "q";
            for (std::size_t i = 0; i < n; ++i)
                query.values.push_back(static_cast<std::uint8_t>(rng.next_below(2)));
            const ClassificationResult fast = classify(model, query);
            const auto slow = oracles::nearest_neighbor(query.values, s.vectors);
            require(fast.nearest_index == slow.index_1based,
                    "nearest index mismatch at instance " + std::to_string(instance) +
                        " (N=" + std::to_string(n) + ", K=" + std::to_string(k) + "): got " +
                        std::to_string(fast.nearest_index) + ", oracle " +
                        std::to_string(slow.index_1based));
            require(fast.predicted == *s.vectors[slow.index_1based - 1].label,
                    "label mismatch at instance " + std::to_string(instance));
            ++checked;
        }
    }
    require(checked == 2000, "expected 2000 oracle comparisons");
    const double elapsed = seconds_since(start);
    require(elapsed < 30.0, "runtime " + std::to_string(elapsed) + "s exceeds 30s");
}

void criterion_eigendecomposition_quality() {
    Rng rng(4096);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.next_below(99);  // N <= 100
        Matrix g(n, n + 1 + rng.next_below(8));
        for (std::size_t c = 0; c < g.cols(); ++c)
            for (std::size_t r = 0; r < n; ++r) g(r, c) = 2.0 * rng.next_unit() - 1.0;
        const Matrix c = covariance(g);
        double frob = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) frob += c(i, j) * c(i, j);
        frob = std::sqrt(frob);

        const EigenPairs pairs = eigendecompose(c);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    dot += pairs.vectors(i, a) * pairs.vectors(i, b);
                require(std::abs(dot - (a == b ? 1.0 : 0.0)) <= 1e-8,
                        "orthonormality residual above 1e-8 at n=" + std::to_string(n));
            }
        for (std::size_t j = 0; j < n; ++j) {
            double residual = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double cg = 0.0;
                for (std::size_t t = 0; t < n; ++t) cg += c(i, t) * pairs.vectors(t, j);
                const double r = cg - pairs.values[j] * pairs.vectors(i, j);
                residual += r * r;
            }
            require(std::sqrt(residual) <= 1e-8 * std::max(1.0, frob),
                    "eigenpair residual above tolerance at n=" + std::to_string(n));
        }
        double trace = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += c(i, i);
        for (double v : pairs.values) sum += v;
        require(std::abs(sum - trace) <= 1e-8 * std::max(1.0, std::abs(trace)),
                "trace-spectrum disagreement at n=" + std::to_string(n));
    }
}

void criterion_variance_selection() {
    EigenPairs pairs;
    pairs.values = {9.0, 0.5, 0.5};
    pairs.vectors = Matrix::identity(3);
    require(select_eigenvectors(pairs, 0.95).count() == 2,
            "[9, 0.5, 0.5] at 0.95 must select 2");

    Rng rng(555);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.next_below(40);
        const std::size_t positive = 1 + rng.next_below(n);
        EigenPairs spectrum;
        spectrum.vectors = Matrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            spectrum.values.push_back(i < positive ? 0.05 + 20.0 * rng.next_unit() : 0.0);
        std::sort(spectrum.values.rbegin(), spectrum.values.rend());
        require(select_eigenvectors(spectrum, 1.0).count() == positive,
                "threshold 1.0 must keep exactly the strictly positive eigenvalues");
    }
}

void criterion_metrics_fidelity() {
    const MetricsRow row = compute_metrics({963, 35, 965, 37});
    const auto to3 = [](double x) { return std::round(x * 1000.0) / 1000.0; };
    require(to3(row.tpr) == 0.963 && to3(row.fpr) == 0.035 && to3(row.tnr) == 0.965 &&
                to3(row.fnr) == 0.037 && to3(row.acc) == 0.964 && to3(row.err) == 0.036,
            "reference confusion counts do not reproduce the reported ratios");

    Rng rng(777);
    for (int trial = 0; trial < 1000; ++trial) {
        ConfusionCounts c;
        c.tp = 1 + rng.next_below(4000);
        c.fn = rng.next_below(4000);
        c.tn = 1 + rng.next_below(4000);
        c.fp = rng.next_below(4000);
        const MetricsRow m = compute_metrics(c);
        require(std::abs(m.tpr + m.fnr - 1.0) <= 1e-12, "TPR+FNR != 1");
        require(std::abs(m.tnr + m.fpr - 1.0) <= 1e-12, "TNR+FPR != 1");
        require(std::abs(m.acc + m.err - 1.0) <= 1e-12, "ACC+ERR != 1");
    }
}

void criterion_gain_ratio() {
    const std::vector<Label> labels = {Label::Malware, Label::Malware, Label::Benign,
                                       Label::Benign};
    require(std::abs(gain_ratio(std::vector<std::uint8_t>{1, 1, 0, 0}, labels) - 1.0) <= 1e-12,
            "perfect separator must score 1");
    require(gain_ratio(std::vector<std::uint8_t>{1, 1, 1, 1}, labels) == 0.0,
            "constant feature must score 0");
    const double value = gain_ratio(std::vector<std::uint8_t>{1, 0, 0, 0}, labels);
    require(std::abs(value - 0.38369) <= 1e-4,
            "hand-entropy case off: got " + format_double(value));
}

void criterion_synthetic_end_to_end() {
    const auto start = std::chrono::steady_clock::now();
    const fs::path dir = scratch_dir() / "repro";
    fs::remove_all(dir);
    const int status = run_binary("repro --output-dir \"" + dir.string() +
                                  "\" --features 100 --informative 30 --delta 0.35 "
                                  "--malware 500 --benign 500 --folds 5 --variance 0.95 "
                                  "--seed 42");
    require(status == 0, "repro exited with status " + std::to_string(status));
    const std::string summary = read_text_file(dir / "summary.csv");
    const double eigen_acc = mean_acc_from_summary(summary, "eigenspace");
    const double nb_acc = mean_acc_from_summary(summary, "nb");
    require(eigen_acc >= 0.95,
            "eigenspace mean ACC " + format_double(eigen_acc) + " below 0.95");
    require(eigen_acc >= nb_acc, "eigenspace ACC " + format_double(eigen_acc) +
                                     " below nb ACC " + format_double(nb_acc));
    const double elapsed = seconds_since(start);
    require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + "s exceeds 60s");
}

void criterion_fold_protocol() {
    std::vector<Label> labels(2925, Label::Malware);
    labels.insert(labels.end(), 3935, Label::Benign);
    const FoldPlan plan = make_folds(labels, 5, 42);
    for (const auto& fold : plan.test_folds) {
        std::size_t malware = 0, benign = 0;
        for (auto idx : fold) (labels[idx] == Label::Malware ? malware : benign) += 1;
        require(malware == 585 && benign == 787,
                "fold sizes " + std::to_string(malware) + "+" + std::to_string(benign) +
                    " instead of 585+787");
    }
}

void criterion_serialization() {
    Rng rng(31337);
    const fs::path path = scratch_dir() / "model.json";
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 0, k = 0;
        const Dataset ds = random_instance(rng, n, k);
        const TrainingSet s = TrainingSet::from_dataset(ds);
        const EigenspaceModel model = train(s, trial % 2 ? 0.95 : 1.0);
        save_model(model, path);
        const EigenspaceModel loaded = load_model(path);
        for (int q = 0; q < 10; ++q) {
            FeatureVector query;
            query.app_id = "q";
            for (std::size_t i = 0; i < n; ++i)
                query.values.push_back(static_cast<std::uint8_t>(rng.next_below(2)));
            const ClassificationResult a = classify(model, query);
            const ClassificationResult b = classify(loaded, query);
            require(a.predicted == b.predicted && a.nearest_index == b.nearest_index,
                    "prediction changed across save/load at trial " + std::to_string(trial));
            require(a.score == b.score, "score not bit-identical across save/load");
        }
    }
}

void criterion_mapping_export() {
    for (std::uint64_t seed : {1001u, 1002u, 1003u}) {
        SyntheticSpec spec;
        spec.feature_count = 40;
        spec.malware_count = 60;
        spec.benign_count = 60;
        spec.informative_count = 10;
        spec.delta = 0.3;
        spec.seed = seed;
        const Dataset ds = generate_synthetic(spec);
        std::vector<Label> labels;
        for (const auto& vec : ds.vectors) labels.push_back(*vec.label);
        const FoldPlan plan = make_folds(labels, 5, seed);

        for (const auto& fold : plan.test_folds) {
            std::vector<char> in_test(ds.size(), 0);
            for (auto idx : fold) in_test[idx] = 1;
            Dataset training;
            training.labeled = true;
            training.feature_names = ds.feature_names;
            for (std::size_t i = 0; i < ds.size(); ++i)
                if (!in_test[i]) training.vectors.push_back(ds.vectors[i]);
            std::vector<FeatureVector> test;
            for (auto idx : fold) test.push_back(ds.vectors[idx]);

            const EigenspaceModel model = train(TrainingSet::from_dataset(training), 0.95);
            const ConfusionCounts from_mapping = mapping_confusion(export_mapping(model, test));
            const auto results = classify_batch(model, test);
            ConfusionCounts direct;
            for (std::size_t i = 0; i < test.size(); ++i) {
                const bool actual = *test[i].label == Label::Malware;
                const bool predicted = results[i].predicted == Label::Malware;
                direct.tp += actual && predicted;
                direct.fn += actual && !predicted;
                direct.fp += !actual && predicted;
                direct.tn += !actual && !predicted;
            }
            require(from_mapping.tp == direct.tp && from_mapping.fp == direct.fp &&
                        from_mapping.tn == direct.tn && from_mapping.fn == direct.fn,
                    "mapping quadrants disagree with the confusion counts");
        }
    }
}

void criterion_cli_determinism() {
    const fs::path dir = scratch_dir() / "determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string d = dir.string();

    // artifact directory for extract
    fs::create_directories(dir / "apps" / "a1");
    fs::create_directories(dir / "apps" / "a2");
    write_text_file_atomic(dir / "apps" / "a1" / "manifest.txt",
                           "android.permission.SEND_SMS android.permission.INTERNET");
    write_text_file_atomic(dir / "apps" / "a2" / "code.txt", "chmod /system/bin/sh exec");

    const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
        {"gen --features 30 --malware 40 --benign 40 --seed 7 --output {}/gen-@.csv",
         {"gen-@.csv"}},
        {"extract --input {}/apps --output {}/extract-@.csv", {"extract-@.csv"}},
        {"rank --data {}/gen-1.csv --top 10 --output {}/rank-@.csv --reduced-data {}/red-@.csv",
         {"rank-@.csv", "red-@.csv"}},
        {"train --data {}/gen-1.csv --variance 0.95 --model {}/model-@.json", {"model-@.json"}},
        {"classify --model {}/model-1.json --data {}/gen-1.csv --output {}/cls-@.csv",
         {"cls-@.csv"}},
        {"crossval --data {}/gen-1.csv --folds 5 --seed 3 --report {}/cv-@.csv", {"cv-@.csv"}},
        {"map --model {}/model-1.json --data {}/gen-1.csv --output {}/map-@.csv", {"map-@.csv"}},
        {"repro --output-dir {}/repro-@ --features 25 --malware 30 --benign 30 --folds 3 "
         "--seed 11",
         {"repro-@/dataset.csv", "repro-@/ranking.csv", "repro-@/dataset-ranked.csv",
          "repro-@/report-eigenspace.csv", "repro-@/report-nb.csv", "repro-@/summary.csv"}},
    };

    auto expand = [&](std::string text, const std::string& run) {
        for (std::size_t pos = text.find("{}"); pos != std::string::npos;
             pos = text.find("{}", pos))
            text.replace(pos, 2, d);
        for (std::size_t pos = text.find('@'); pos != std::string::npos; pos = text.find('@', pos))
            text.replace(pos, 1, run);
        return text;
    };

    for (const auto& [command, outputs] : commands) {
        for (const std::string run : {"1", "2"}) {
            const int status = run_binary(expand(command, run));
            require(status == 0, "command failed (" + expand(command, run) + "), status " +
                                     std::to_string(status));
        }
        for (const auto& output : outputs) {
            const auto a = read_text_file(dir / expand(output, "1"));
            const auto b = read_text_file(dir / expand(output, "2"));
            require(!a.empty() && a == b, "outputs differ between identical runs: " + output);
        }
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"1. oracle equivalence of full-rank classification with brute-force 1-NN",
         criterion_oracle_equivalence},
        {"2. eigendecomposition quality on random PSD matrices",
         criterion_eigendecomposition_quality},
        {"3. variance-threshold eigenvector selection", criterion_variance_selection},
        {"4. confusion metrics fidelity and identities", criterion_metrics_fidelity},
        {"5. gain ratio oracle values", criterion_gain_ratio},
        {"6. synthetic end-to-end repro accuracy targets", criterion_synthetic_end_to_end},
        {"7. stratified fold protocol at the reference class sizes", criterion_fold_protocol},
        {"8. model serialization round trip", criterion_serialization},
        {"9. mapping export reproduces confusion counts", criterion_mapping_export},
        {"10. CLI determinism under a fixed seed", criterion_cli_determinism},
    };

    int failures = 0;
    for (const auto& [name, body] : criteria) {
        try {
            body();
            std::printf("PASS  %s\n", name.c_str());
        } catch (const Failure& f) {
            std::printf("FAIL  %s: %s\n", name.c_str(), f.message.c_str());
            ++failures;
        } catch (const std::exception& e) {
            std::printf("FAIL  %s: unexpected error: %s\n", name.c_str(), e.what());
            ++failures;
        }
        std::fflush(stdout);
    }
    fs::remove_all(scratch_dir());
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
