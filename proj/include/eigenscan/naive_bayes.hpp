#ifndef EIGENSCAN_NAIVE_BAYES_HPP
#define EIGENSCAN_NAIVE_BAYES_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "eigenscan/classifier.hpp"
#include "eigenscan/feature_vector.hpp"

namespace eigenscan {

/// Bernoulli naive Bayes over the same binary vectors, the comparison
/// baseline. Laplace smoothing keeps every theta strictly inside (0,1).
struct NaiveBayesModel {
    std::string catalog_version;
    std::vector<std::string> feature_names;
    double malware_prior = 0.0;
    double benign_prior = 0.0;
    std::vector<double> malware_theta;  // P(feature i = 1 | malware)
    std::vector<double> benign_theta;
    double alpha = 1.0;

    std::size_t dimension() const { return feature_names.size(); }
};

/// theta[c][i] = (count(f_i = 1 in c) + alpha) / (count(c) + 2 alpha);
/// priors are the class frequencies. Requires alpha > 0.
NaiveBayesModel nb_train(const TrainingSet& s, double alpha = 1.0);

/// Log-space posterior comparison; exact ties go to malware. The score is
/// the log-posterior margin of the winning class; nearest_index is the 0
/// sentinel (no nearest-sample notion here).
ClassificationResult nb_classify(const NaiveBayesModel& model, const FeatureVector& v);

std::vector<ClassificationResult> nb_classify_batch(const NaiveBayesModel& model,
                                                    const std::vector<FeatureVector>& vs,
                                                    unsigned threads = 1);

std::string format_nb_model(const NaiveBayesModel& model);
NaiveBayesModel parse_nb_model(const std::string& json_text);
void save_nb_model(const NaiveBayesModel& model, const std::filesystem::path& path);
NaiveBayesModel load_nb_model(const std::filesystem::path& path);

}  // namespace eigenscan

#endif
