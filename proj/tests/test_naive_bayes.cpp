#include <cmath>
#include <filesystem>
#include <vector>

#include "doctest.h"

#include "eigenscan/errors.hpp"
#include "eigenscan/naive_bayes.hpp"
#include "eigenscan/rng.hpp"

using namespace eigenscan;

namespace {

FeatureVector vec(std::string id, std::vector<std::uint8_t> values, Label label) {
    FeatureVector v;
    v.app_id = std::move(id);
    v.values = std::move(values);
    v.label = label;
    return v;
}

TrainingSet make_set(const std::vector<FeatureVector>& vectors) {
    Dataset ds;
    ds.labeled = true;
    for (std::size_t i = 1; i <= vectors.front().values.size(); ++i)
        ds.feature_names.push_back("f" + std::to_string(i));
    ds.vectors = vectors;
    return TrainingSet::from_dataset(ds);
}

}  // namespace

TEST_CASE("Laplace arithmetic") {
    // malware: feature 1 always on (2 of 2) -> theta = 3/4
    // benign: feature 1 absent in 3 samples -> theta = 1/5
    const TrainingSet s = make_set({vec("m1", {1}, Label::Malware), vec("m2", {1}, Label::Malware),
                                    vec("b1", {0}, Label::Benign), vec("b2", {0}, Label::Benign),
                                    vec("b3", {0}, Label::Benign)});
    const NaiveBayesModel model = nb_train(s, 1.0);
    CHECK(model.malware_theta[0] == 0.75);
    CHECK(model.benign_theta[0] == 0.2);
    CHECK(model.malware_prior == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(model.benign_prior == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(model.malware_prior + model.benign_prior == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("theta matches a direct counting oracle") {
    Rng rng(79);
    std::vector<FeatureVector> vectors;
    for (int i = 0; i < 20; ++i) {
        std::vector<std::uint8_t> values(6);
        for (auto& x : values) x = static_cast<std::uint8_t>(rng.next_below(2));
        vectors.push_back(vec("a" + std::to_string(i), values,
                              i < 8 ? Label::Malware : Label::Benign));
    }
    const TrainingSet s = make_set(vectors);
    const NaiveBayesModel model = nb_train(s, 1.0);
    for (std::size_t f = 0; f < 6; ++f) {
        double m_ones = 0, b_ones = 0;
        for (const auto& v : vectors)
            (*v.label == Label::Malware ? m_ones : b_ones) += v.values[f];
        CHECK(std::abs(model.malware_theta[f] - (m_ones + 1.0) / 10.0) <= 1e-12);
        CHECK(std::abs(model.benign_theta[f] - (b_ones + 1.0) / 14.0) <= 1e-12);
        CHECK(model.malware_theta[f] > 0.0);
        CHECK(model.malware_theta[f] < 1.0);
    }
}

TEST_CASE("posteriors stay finite and ties go to malware") {
    // identical class-conditional distributions: every posterior is an
    // exact tie, bit for bit
    const TrainingSet s = make_set({vec("m1", {1, 0}, Label::Malware),
                                    vec("m2", {0, 1}, Label::Malware),
                                    vec("b1", {1, 0}, Label::Benign),
                                    vec("b2", {0, 1}, Label::Benign)});
    const NaiveBayesModel model = nb_train(s, 1.0);

    FeatureVector tie;
    tie.app_id = "tie";
    tie.values = {1, 1};
    const ClassificationResult result = nb_classify(model, tie);
    CHECK(result.predicted == Label::Malware);
    CHECK(result.score == 0.0);
    CHECK(result.nearest_index == 0);

    for (const auto& values :
         {std::vector<std::uint8_t>{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
        FeatureVector q;
        q.app_id = "q";
        q.values = values;
        CHECK(std::isfinite(nb_classify(model, q).score));
    }
}

TEST_CASE("feature permutation applied to model and query leaves predictions unchanged") {
    Rng rng(83);
    std::vector<FeatureVector> vectors;
    for (int i = 0; i < 30; ++i) {
        std::vector<std::uint8_t> values(8);
        for (auto& x : values) x = static_cast<std::uint8_t>(rng.next_below(2));
        vectors.push_back(vec("a" + std::to_string(i), values,
                              i % 2 ? Label::Malware : Label::Benign));
    }
    const NaiveBayesModel model = nb_train(make_set(vectors), 1.0);

    std::vector<std::size_t> perm = {3, 0, 7, 1, 5, 2, 6, 4};
    std::vector<FeatureVector> permuted;
    for (const auto& v : vectors) {
        std::vector<std::uint8_t> values(8);
        for (std::size_t i = 0; i < 8; ++i) values[i] = v.values[perm[i]];
        permuted.push_back(vec(v.app_id, values, *v.label));
    }
    const NaiveBayesModel permuted_model = nb_train(make_set(permuted), 1.0);

    for (int t = 0; t < 40; ++t) {
        FeatureVector q;
        q.app_id = "q";
        q.values.resize(8);
        for (auto& x : q.values) x = static_cast<std::uint8_t>(rng.next_below(2));
        FeatureVector pq;
        pq.app_id = "pq";
        pq.values.resize(8);
        for (std::size_t i = 0; i < 8; ++i) pq.values[i] = q.values[perm[i]];
        const auto a = nb_classify(model, q);
        const auto b = nb_classify(permuted_model, pq);
        CHECK(a.predicted == b.predicted);
        CHECK(a.score == doctest::Approx(b.score).epsilon(1e-9));
    }
}

TEST_CASE("a perfect separator among noise beats the majority rate") {
    Rng rng(89);
    std::vector<FeatureVector> vectors;
    for (int i = 0; i < 60; ++i) {
        const bool malware = i < 25;  // majority benign
        std::vector<std::uint8_t> values(10);
        values[0] = malware ? 1 : 0;
        for (std::size_t f = 1; f < 10; ++f)
            values[f] = static_cast<std::uint8_t>(rng.next_below(2));
        vectors.push_back(vec("a" + std::to_string(i), values,
                              malware ? Label::Malware : Label::Benign));
    }
    const NaiveBayesModel model = nb_train(make_set(vectors), 1.0);
    std::size_t correct = 0;
    for (const auto& v : vectors)
        if (nb_classify(model, v).predicted == *v.label) ++correct;
    CHECK(static_cast<double>(correct) / 60.0 >= 35.0 / 60.0);
}

TEST_CASE("nb input validation") {
    const TrainingSet s = make_set({vec("m1", {1, 0}, Label::Malware),
                                    vec("b1", {0, 1}, Label::Benign)});
    CHECK_THROWS_AS(nb_train(s, 0.0), DataError);
    const NaiveBayesModel model = nb_train(s, 1.0);
    FeatureVector bad;
    bad.app_id = "bad";
    bad.values = {1};
    CHECK_THROWS_AS(nb_classify(model, bad), DataError);
}

TEST_CASE("nb model save/load round trip") {
    Rng rng(97);
    std::vector<FeatureVector> vectors;
    for (int i = 0; i < 16; ++i) {
        std::vector<std::uint8_t> values(5);
        for (auto& x : values) x = static_cast<std::uint8_t>(rng.next_below(2));
        vectors.push_back(vec("a" + std::to_string(i), values,
                              i % 3 ? Label::Benign : Label::Malware));
    }
    const NaiveBayesModel model = nb_train(make_set(vectors), 0.5);
    const auto path = std::filesystem::temp_directory_path() / "eigenscan-nb-test.json";
    save_nb_model(model, path);
    const NaiveBayesModel loaded = load_nb_model(path);
    CHECK(loaded.malware_theta == model.malware_theta);
    CHECK(loaded.benign_theta == model.benign_theta);
    CHECK(loaded.malware_prior == model.malware_prior);
    CHECK(loaded.benign_prior == model.benign_prior);
    CHECK(loaded.alpha == model.alpha);
    for (const auto& v : vectors) {
        const auto a = nb_classify(model, v);
        const auto b = nb_classify(loaded, v);
        CHECK(a.predicted == b.predicted);
        CHECK(a.score == b.score);
    }
    std::filesystem::remove(path);
    CHECK_THROWS_AS(parse_nb_model("{}"), DataError);
}
