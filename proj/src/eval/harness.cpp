#include "leuk/eval/harness.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <exception>
#include <future>
#include <string>
#include <thread>

#include "leuk/classifier/hosvd_model.hpp"
#include "leuk/core/error.hpp"
#include "leuk/core/log.hpp"
#include "leuk/core/rng.hpp"
#include "leuk/data/kfold.hpp"
#include "leuk/eval/elm.hpp"
#include "leuk/eval/knn.hpp"
#include "leuk/simd/kernels.hpp"

namespace leuk::eval {
namespace {

std::size_t min_class_count(const std::vector<int>& labels) {
    const auto zeros = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 0));
    return std::min(zeros, labels.size() - zeros);
}

std::vector<int> predict_hosvd_vector(const FoldData& f, std::size_t rank) {
    const std::size_t d = f.train_features.front().size();
    tensor::Matrix x(d, f.train_features.size());
    for (std::size_t j = 0; j < f.train_features.size(); ++j) {
        for (std::size_t i = 0; i < d; ++i) x(i, j) = f.train_features[j][i];
    }
    const std::size_t k = std::max<std::size_t>(1, std::min({rank, d, min_class_count(f.train_labels)}));
    const auto model = classifier::train_vector_mode(x, f.train_labels, k);
    std::vector<int> out;
    for (const auto& z : f.test_features) {
        // A zero feature vector carries no direction; predict the lowest label.
        if (simd::dot(z, z) == 0.0) {
            out.push_back(model.classes.front().label);
            continue;
        }
        out.push_back(classifier::classify(model, z).label);
    }
    return out;
}

std::vector<int> predict_hosvd_matrix(const FoldData& f, std::array<std::size_t, 3> ranks) {
    if (f.train_images.empty()) throw PreconditionError("hosvd-matrix needs an image dataset");
    const auto& first = f.train_images.front();
    ranks[0] = std::min(ranks[0], first.rows());
    ranks[1] = std::min(ranks[1], first.cols());
    ranks[2] = std::max<std::size_t>(1, std::min(ranks[2], min_class_count(f.train_labels)));
    const auto model = classifier::train_matrix_mode(f.train_images, f.train_labels, ranks);
    std::vector<int> out;
    for (const auto& img : f.test_images) {
        if (img.frobenius_norm() == 0.0) {
            out.push_back(model.classes.front().label);
            continue;
        }
        out.push_back(classifier::classify(model, img).label);
    }
    return out;
}

std::vector<int> predict_knn(const FoldData& f, std::size_t k) {
    std::vector<int> out;
    for (const auto& z : f.test_features) out.push_back(knn_classify(f.train_features, f.train_labels, z, k));
    return out;
}

std::vector<int> predict_elm(const FoldData& f, std::size_t hidden, std::uint64_t seed) {
    const auto model = elm_train(f.train_features, f.train_labels, hidden, derive_seed(seed, f.fold));
    std::vector<int> out;
    for (const auto& z : f.test_features) out.push_back(elm_classify(model, z));
    return out;
}

void check_disjoint(const std::vector<std::size_t>& test, const std::vector<std::size_t>& train) {
    // Both lists ascending.
    std::vector<std::size_t> common;
    std::set_intersection(test.begin(), test.end(), train.begin(), train.end(), std::back_inserter(common));
    if (!common.empty()) throw Error("harness: training indices overlap the test fold");
}

FoldData build_fold(const data::LabeledDataset& dataset, const std::vector<std::vector<std::size_t>>& folds,
                    std::size_t f, std::uint64_t seed, const HarnessConfig& config) {
    const auto& test_idx = folds[f];
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < folds.size(); ++g) {
        if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    check_disjoint(test_idx, train_idx);

    FoldData out;
    out.fold = f;
    for (auto i : train_idx) out.train_labels.push_back(dataset.labels[i]);
    for (auto i : test_idx) out.test_labels.push_back(dataset.labels[i]);

    if (dataset.kind == data::DatasetKind::feature_vectors) {
        for (auto i : train_idx) out.train_features.push_back(dataset.vectors[i]);
        for (auto i : test_idx) out.test_features.push_back(dataset.vectors[i]);
        return out;
    }

    for (auto i : train_idx) out.train_images.push_back(dataset.images[i]);
    for (auto i : test_idx) out.test_images.push_back(dataset.images[i]);
    cnn::Network net;
    if (config.extractor) {
        net = *config.extractor;
    } else {
        cnn::TrainConfig tc = config.cnn_train;
        tc.seed = derive_seed(seed, f);
        net = cnn::train_sgd(cnn::init_weights(config.cnn_train.seed, config.architecture), out.train_images,
                             out.train_labels, tc)
                  .net;
    }
    for (const auto& img : out.train_images) out.train_features.push_back(cnn::forward_extract(net, img).features);
    std::vector<int> head;
    for (const auto& img : out.test_images) {
        auto fwd = cnn::forward_extract(net, img);
        out.test_features.push_back(std::move(fwd.features));
        head.push_back(static_cast<int>(std::max_element(fwd.logits.begin(), fwd.logits.end()) - fwd.logits.begin()));
    }
    out.cnn_predictions = std::move(head);
    return out;
}

}  // namespace

double mean_of(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double sample_std(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double m = mean_of(values);
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(values.size() - 1));
}

ClassifierSpec make_classifier(const std::string& name, const HarnessConfig& config) {
    if (name == "hosvd") {
        return {name, [rank = config.vector_rank](const FoldData& f) { return predict_hosvd_vector(f, rank); }};
    }
    if (name == "hosvd-matrix") {
        return {name, [ranks = config.matrix_ranks](const FoldData& f) { return predict_hosvd_matrix(f, ranks); },
                true};
    }
    if (name == "1nn") return {name, [](const FoldData& f) { return predict_knn(f, 1); }};
    if (name == "5nn") return {name, [](const FoldData& f) { return predict_knn(f, 5); }};
    if (name == "elm") {
        return {name, [h = config.elm_hidden, s = config.elm_seed](const FoldData& f) { return predict_elm(f, h, s); }};
    }
    if (name == "cnn") {
        return {name,
                [](const FoldData& f) {
                    if (!f.cnn_predictions) throw PreconditionError("cnn classifier needs an image dataset");
                    return *f.cnn_predictions;
                },
                true};
    }
    throw PreconditionError("unknown classifier '" + name + "' (known: hosvd, hosvd-matrix, 1nn, 5nn, elm, cnn)");
}

std::vector<std::string> default_classifiers(data::DatasetKind kind) {
    if (kind == data::DatasetKind::images) return {"hosvd", "1nn", "5nn", "elm", "cnn"};
    return {"hosvd", "1nn", "5nn", "elm"};
}

std::vector<FoldData> prepare_folds(const data::LabeledDataset& dataset, std::size_t k, std::uint64_t seed,
                                    const HarnessConfig& config) {
    if (dataset.size() == 0) throw PreconditionError("harness: dataset is empty");
    const auto folds = data::stratified_kfold(dataset.labels, k, seed);
    std::vector<FoldData> out(k);
    if (dataset.kind == data::DatasetKind::feature_vectors || config.extractor) {
        for (std::size_t f = 0; f < k; ++f) out[f] = build_fold(dataset, folds, f, seed, config);
        return out;
    }
    // Per-fold CNN training dominates; folds are independent, results are
    // stored by fold index so the order of completion does not matter.
    std::size_t workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, k);
    std::vector<std::future<void>> jobs;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&] {
            for (std::size_t f = next++; f < k; f = next++) {
                log::debug("training fold " + std::to_string(f) + " extractor");
                out[f] = build_fold(dataset, folds, f, seed, config);
            }
        }));
    }
    std::exception_ptr first_error;
    for (auto& j : jobs) {
        try {
            j.get();
        } catch (...) {
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

EvalReport evaluate_folds(const ClassifierSpec& spec, const std::vector<FoldData>& folds, std::uint64_t seed) {
    EvalReport r;
    r.classifier = spec.name;
    r.seed = seed;
    r.folds = folds.size();
    r.repeats = 1;
    for (const auto& f : folds) {
        std::vector<int> pred;
        try {
            if (spec.needs_images && f.train_images.empty()) {
                throw PreconditionError(spec.name + " needs an image dataset");
            }
            pred = spec.fit_predict(f);
        } catch (const Error& e) {
            throw Error("fold " + std::to_string(f.fold) + ": " + spec.name + ": " + e.what());
        }
        if (pred.size() != f.test_labels.size()) {
            throw Error("fold " + std::to_string(f.fold) + ": " + spec.name + " returned " +
                        std::to_string(pred.size()) + " predictions for " + std::to_string(f.test_labels.size()) +
                        " samples");
        }
        std::size_t correct = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            const int t = f.test_labels[i];
            const int p = pred[i];
            if (t < 0 || t > 1 || p < 0 || p > 1) throw Error("harness: labels must be 0 or 1");
            ++r.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
            correct += t == p ? 1 : 0;
        }
        r.fold_accuracies.push_back(static_cast<double>(correct) / static_cast<double>(pred.size()));
    }
    r.mean = mean_of(r.fold_accuracies);
    r.std = sample_std(r.fold_accuracies);
    return r;
}

EvalReport cross_validate(const ClassifierSpec& spec, const data::LabeledDataset& dataset, std::size_t k,
                          std::uint64_t seed, const HarnessConfig& config) {
    return evaluate_folds(spec, prepare_folds(dataset, k, seed, config), seed);
}

std::vector<EvalReport> evaluate_suite(const std::vector<ClassifierSpec>& specs, const data::LabeledDataset& dataset,
                                       const HarnessConfig& config) {
    if (specs.empty()) throw PreconditionError("evaluate_suite: no classifiers");
    if (config.seeds.empty()) throw PreconditionError("evaluate_suite: no seeds");
    std::vector<EvalReport> reports(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s) {
        reports[s].classifier = specs[s].name;
        reports[s].seed = config.seeds.front();
        reports[s].folds = config.folds;
        reports[s].repeats = config.seeds.size();
    }
    for (std::uint64_t seed : config.seeds) {
        log::info("evaluating seed " + std::to_string(seed));
        const auto folds = prepare_folds(dataset, config.folds, seed, config);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            const auto one = evaluate_folds(specs[s], folds, seed);
            auto& acc = reports[s];
            acc.fold_accuracies.insert(acc.fold_accuracies.end(), one.fold_accuracies.begin(),
                                       one.fold_accuracies.end());
            for (std::size_t t = 0; t < 2; ++t) {
                for (std::size_t p = 0; p < 2; ++p) acc.confusion[t][p] += one.confusion[t][p];
            }
        }
    }
    for (auto& r : reports) {
        r.mean = mean_of(r.fold_accuracies);
        r.std = sample_std(r.fold_accuracies);
    }
    return reports;
}

}  // namespace leuk::eval
