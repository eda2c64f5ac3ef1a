// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail N[,M...]] [--only N[,M...]]
//
// Exit status is 0 when the failing set equals the --expect-fail set.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "leuk/classifier/hosvd_model.hpp"
#include "leuk/classifier/model_io.hpp"
#include "leuk/cnn/network.hpp"
#include "leuk/cnn/network_io.hpp"
#include "leuk/core/binary_io.hpp"
#include "leuk/core/error.hpp"
#include "leuk/core/log.hpp"
#include "leuk/data/kfold.hpp"
#include "leuk/data/pnm.hpp"
#include "leuk/data/preprocess.hpp"
#include "leuk/data/synth.hpp"
#include "leuk/eval/anova.hpp"
#include "leuk/eval/harness.hpp"
#include "leuk/eval/knn.hpp"
#include "leuk/service/server.hpp"
#include "leuk/tensor/hosvd.hpp"
#include "leuk/tensor/svd.hpp"
#include "support.hpp"

using namespace leuk;
using tensor::Matrix;
using tensor::Tensor3;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int precision = 3) {
    std::ostringstream os;
    os.precision(precision);
    os << x;
    return os.str();
}

Tensor3 random_shape_tensor(SplitMix64& rng) {
    const tensor::Dims3 dims{1 + rng.below(8), 1 + rng.below(9), 1 + rng.below(7)};
    return test::random_tensor(rng, dims);
}

// 1 and 2 share one set of 200 decompositions.
struct FullRankRun {
    std::vector<Tensor3> tensors;
    std::vector<tensor::HosvdDecomposition> decomps;
    double seconds = 0.0;
};

const FullRankRun& full_rank_run() {
    static const FullRankRun run = [] {
        FullRankRun r;
        SplitMix64 rng(2024);
        for (int i = 0; i < 200; ++i) r.tensors.push_back(random_shape_tensor(rng));
        const auto t0 = Clock::now();
        for (const auto& t : r.tensors) r.decomps.push_back(tensor::hosvd(t, t.dims()));
        r.seconds = seconds_since(t0);
        return r;
    }();
    return run;
}

Outcome exactness() {
    const auto& run = full_rank_run();
    double worst = 0.0;
    const auto t0 = Clock::now();
    for (std::size_t i = 0; i < run.tensors.size(); ++i) {
        const Tensor3 back = tensor::reconstruct(run.decomps[i]);
        double diff = 0.0;
        for (std::size_t k = 0; k < back.size(); ++k) {
            const double d = back.data()[k] - run.tensors[i].data()[k];
            diff += d * d;
        }
        worst = std::max(worst, std::sqrt(diff) / run.tensors[i].frobenius_norm());
    }
    const double secs = run.seconds + seconds_since(t0);
    return {worst <= 1e-10 && secs < 5.0,
            "200 tensors, worst relative error " + fmt(worst) + ", " + fmt(secs) + " s"};
}

Outcome orthogonality() {
    const auto& run = full_rank_run();
    double worst_factor = 0.0;  // defect / max(1, σ1)
    double worst_slice = 0.0;   // |<slice_i, slice_j>| / ‖core‖²
    for (const auto& d : run.decomps) {
        for (int n = 0; n < 3; ++n) {
            const double s1 = d.mode_singular_values[n].empty() ? 0.0 : d.mode_singular_values[n].front();
            worst_factor = std::max(worst_factor, tensor::orthonormality_defect(d.factors[n]) / std::max(1.0, s1));
        }
        const double core_sq = std::pow(d.core.frobenius_norm(), 2);
        for (int mode = 1; mode <= 3; ++mode) {
            for (std::size_t i = 0; i < d.core.dim(mode); ++i) {
                for (std::size_t j = i + 1; j < d.core.dim(mode); ++j) {
                    const double ip = std::abs(tensor::slice_inner_product(d.core, mode, i, j));
                    worst_slice = std::max(worst_slice, ip / core_sq);
                }
            }
        }
    }
    return {worst_factor <= 1e-10 && worst_slice <= 1e-8,
            "factor defect/max(1,s1) " + fmt(worst_factor) + ", slice inner product/|core|^2 " + fmt(worst_slice)};
}

Outcome truncation_bound() {
    SplitMix64 rng(77);
    int violations = 0;
    double tightest = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Tensor3 t = random_shape_tensor(rng);
        const tensor::Ranks3 ranks{1 + rng.below(t.dim(1)), 1 + rng.below(t.dim(2)), 1 + rng.below(t.dim(3))};
        const auto d = tensor::hosvd(t, ranks);
        const Tensor3 back = tensor::reconstruct(d);
        double diff = 0.0;
        for (std::size_t k = 0; k < back.size(); ++k) diff += std::pow(back.data()[k] - t.data()[k], 2);
        const double err = std::sqrt(diff);
        const double bound = tensor::truncation_error_bound(d.mode_singular_values, ranks);
        // Untruncated cases have bound 0; the reconstruction still carries rounding.
        if (err > bound + 1e-12 * t.frobenius_norm()) ++violations;
        if (bound > 0.0) tightest = std::max(tightest, err / bound);
    }
    return {violations == 0, "100 cases, " + std::to_string(violations) + " violations, max error/bound " +
                                 fmt(tightest)};
}

double normal_equation_residual(const std::vector<Matrix>& basis, const Matrix& z) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd g(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        b(i) = tensor::frobenius_dot(basis[static_cast<std::size_t>(i)], z);
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = tensor::frobenius_dot(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
    }
    const Eigen::VectorXd coef = g.ldlt().solve(b);
    Matrix fit(z.rows(), z.cols());
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& bj = basis[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < fit.size(); ++k) fit.data()[k] += coef(j) * bj.data()[k];
    }
    return tensor::subtract(z, fit).frobenius_norm() / z.frobenius_norm();
}

double anova_f_oracle(const std::vector<std::vector<double>>& groups) {
    double total = 0.0;
    std::size_t n = 0;
    for (const auto& g : groups) {
        for (double x : g) total += x;
        n += g.size();
    }
    const double grand = total / static_cast<double>(n);
    double ssb = 0.0, ssw = 0.0;
    for (const auto& g : groups) {
        double m = 0.0;
        for (double x : g) m += x;
        m /= static_cast<double>(g.size());
        ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        for (double x : g) ssw += (x - m) * (x - m);
    }
    const double dfb = static_cast<double>(groups.size() - 1);
    const double dfw = static_cast<double>(n - groups.size());
    return (ssb / dfb) / (ssw / dfw);
}

std::vector<std::vector<double>> random_groups(SplitMix64& rng) {
    std::vector<std::vector<double>> groups(2 + rng.below(4));
    for (auto& g : groups) {
        g.resize(2 + rng.below(8));
        const double shift = rng.normal();
        for (double& x : g) x = shift + rng.normal();
    }
    return groups;
}

Outcome oracles() {
    std::vector<std::string> failures;
    SplitMix64 rng(404);

    for (int i = 0; i < 100; ++i) {
        const Tensor3 t = random_shape_tensor(rng);
        for (int mode = 1; mode <= 3; ++mode) {
            if (!(tensor::fold(tensor::unfold(t, mode), mode, t.dims()) == t)) {
                failures.push_back("fold roundtrip");
                break;
            }
        }
    }

    double worst_residual = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n0 = 2 + rng.below(4), n1 = 2 + rng.below(4);
        std::vector<Matrix> imgs;
        std::vector<int> labels;
        for (std::size_t i = 0; i < n0 + n1; ++i) {
            imgs.push_back(test::random_matrix(rng, 6, 6));
            labels.push_back(i < n0 ? 0 : 1);
        }
        const std::array<std::size_t, 3> ranks{1 + rng.below(6), 1 + rng.below(6), 1 + rng.below(std::min(n0, n1))};
        const auto model = classifier::train_matrix_mode(imgs, labels, ranks);
        const Matrix z = test::random_matrix(rng, 6, 6);
        const auto r = classifier::classify(model, z);
        for (std::size_t c = 0; c < 2; ++c) {
            worst_residual = std::max(
                worst_residual, std::abs(r.residuals[c] - normal_equation_residual(model.classes[c].basis_matrices, z)));
        }
    }
    if (worst_residual > 1e-9) failures.push_back("matrix residual " + fmt(worst_residual));

    std::vector<std::vector<double>> train;
    std::vector<int> labels;
    for (int i = 0; i < 60; ++i) {
        train.push_back({rng.normal(), rng.normal(), rng.normal()});
        labels.push_back(static_cast<int>(rng.below(2)));
    }
    int knn_mismatch = 0;
    for (int q = 0; q < 50; ++q) {
        const std::vector<double> query{rng.normal(), rng.normal(), rng.normal()};
        const std::size_t k = q % 2 == 0 ? 1 : 5;
        std::vector<std::pair<double, std::size_t>> dist;
        for (std::size_t i = 0; i < train.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < 3; ++j) s += std::pow(train[i][j] - query[j], 2);
            dist.emplace_back(s, i);
        }
        std::sort(dist.begin(), dist.end());
        int votes[2] = {0, 0};
        for (std::size_t i = 0; i < k; ++i) ++votes[labels[dist[i].second]];
        const int expect = votes[1] > votes[0] ? 1 : 0;
        if (eval::knn_classify(train, labels, query, k) != expect) ++knn_mismatch;
    }
    if (knn_mismatch) failures.push_back(std::to_string(knn_mismatch) + " k-NN mismatches");

    double worst_f = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto groups = random_groups(rng);
        const double oracle = anova_f_oracle(groups);
        worst_f = std::max(worst_f, std::abs(eval::anova_oneway(groups).f_statistic - oracle) / oracle);
    }
    if (worst_f > 1e-12) failures.push_back("ANOVA F relative error " + fmt(worst_f));
    const std::vector<std::vector<double>> fixed{{1, 2, 3}, {2, 3, 4}};
    const auto a = eval::anova_oneway(fixed);
    if (std::abs(a.f_statistic - 1.5) > 1e-12 || a.df_between != 1 || a.df_within != 4) {
        failures.push_back("fixed ANOVA case F=" + fmt(a.f_statistic));
    }

    std::string detail = "fold/unfold, matrix residual " + fmt(worst_residual) + ", k-NN 50 queries, ANOVA rel " +
                         fmt(worst_f) + ", F(1,4)=" + fmt(a.f_statistic);
    for (const auto& f : failures) detail += "; " + f;
    return {failures.empty(), detail};
}

Outcome gradient() {
    SplitMix64 rng(55);
    double worst = 0.0;
    const auto t0 = Clock::now();
    for (int i = 0; i < 20; ++i) {
        cnn::Architecture arch;
        arch.side = 4 * (1 + rng.below(2));
        arch.kernel = 1 + 2 * rng.below(2);
        arch.conv1 = 1 + rng.below(3);
        arch.conv2 = 1 + rng.below(3);
        arch.hidden = 2 + rng.below(5);
        auto net = cnn::init_weights(rng.next(), arch);
        // He init leaves biases at 0, so a dead conv stack puts every fc1
        // pre-activation exactly on the ReLU kink. Random biases avoid that.
        for (auto* b : {&net.params.conv1_b, &net.params.conv2_b, &net.params.fc1_b, &net.params.fc2_b}) {
            for (double& x : *b) x = 0.1 * rng.normal();
        }
        Matrix img(arch.side, arch.side);
        for (double& x : img.data()) x = rng.uniform();
        worst = std::max(worst, cnn::gradient_check(net, img, static_cast<int>(rng.below(2)), 1e-5));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-4 && secs < 30.0, "20 networks, worst relative error " + fmt(worst) + ", " + fmt(secs) + " s"};
}

// Frozen outputs of the surrogate experiment (seed 42, 5 folds, rank 8).
constexpr double kGoldenHosvd = 0.485;
constexpr double kGoldenOneNn = 0.95;

Outcome surrogate() {
    const auto ds = data::synth_features(42, 100, 128, 6.0);
    eval::HarnessConfig cfg;
    const auto folds = eval::prepare_folds(ds, 5, 42, cfg);
    const auto hosvd = eval::evaluate_folds(eval::make_classifier("hosvd", cfg), folds, 42);
    const auto onenn = eval::evaluate_folds(eval::make_classifier("1nn", cfg), folds, 42);
    const bool thresholds = hosvd.mean >= 0.95 && hosvd.mean >= onenn.mean - 0.02;
    const bool golden = std::abs(hosvd.mean - kGoldenHosvd) < 1e-12 && std::abs(onenn.mean - kGoldenOneNn) < 1e-12;
    std::string detail = "hosvd " + fmt(hosvd.mean, 4) + ", 1nn " + fmt(onenn.mean, 4) +
                         (golden ? ", goldens match" : ", goldens DIFFER");
    if (!thresholds) {
        detail += "; the two classes are mirror images (means ±m, shared covariance) and subspace residuals "
                  "are invariant under z -> -z, so rank-limited residual classification cannot separate them";
    }
    return {thresholds && golden, detail};
}

struct CliRun {
    int status;
    double seconds;
};

CliRun cli(const std::string& args, const std::filesystem::path& log) {
    const std::string cmd = std::string("HOSVD_LOG=error \"") + LEUK_CLI_PATH + "\" " + args + " >>\"" +
                            log.string() + "\" 2>&1";
    const auto t0 = Clock::now();
    const int status = std::system(cmd.c_str());
    return {status, seconds_since(t0)};
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome end_to_end() {
    test::TempDir dir("acceptance-e2e");
    const auto log = dir / "cli.log";
    const std::string imgs = "\"" + (dir / "imgs").string() + "\"";
    double total = 0.0;
    std::vector<std::string> reports;
    for (int run = 0; run < 2; ++run) {
        const std::string tag = std::to_string(run);
        const auto json = dir / ("report" + tag + ".json");
        const std::vector<std::string> steps{
            "synth --kind images --per-class 20 --seed 42 --out " + imgs + (run ? "_b" : ""),
            "train --mode vector --data " + imgs + (run ? "_b" : "") + " --seed 42 --epochs 5 --cnn \"" +
                (dir / ("net" + tag + ".hcnn")).string() + "\" --out \"" + (dir / ("model" + tag + ".hsvd")).string() +
                "\"",
            "evaluate --data " + imgs + (run ? "_b" : "") + " --seed 42 --json \"" + json.string() + "\""};
        double secs = 0.0;
        for (const auto& s : steps) {
            const auto r = cli(s, log);
            secs += r.seconds;
            if (r.status != 0) return {false, "command failed: leuk " + s + "\n" + read_text(log)};
        }
        if (run == 0) total = secs;
        reports.push_back(read_text(json));
    }
    const auto j = nlohmann::json::parse(reports[0]);
    double mean = -1.0;
    for (const auto& r : j["reports"]) {
        if (r["classifier"] == "hosvd") mean = r["mean"].get<double>();
    }
    const bool identical = reports[0] == reports[1];
    return {total <= 60.0 && mean >= 0.90 && identical,
            "hosvd mean " + fmt(mean, 4) + ", pipeline " + fmt(total) + " s, reruns " +
                (identical ? "bit-identical" : "DIFFER")};
}

template <typename Fn>
bool throws_kind(Fn&& fn, FormatErrorKind kind) {
    try {
        fn();
    } catch (const FormatError& e) {
        return e.kind() == kind;
    } catch (...) {
        return false;
    }
    return false;
}

void put_u32(std::vector<std::byte>& b, std::size_t at, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b[at + i] = static_cast<std::byte>((v >> (8 * i)) & 0xff);
}

template <typename Serialize, typename Deserialize>
std::vector<std::string> container_checks(const std::string& name, const std::vector<std::byte>& bytes,
                                          Serialize serialize, Deserialize deserialize) {
    std::vector<std::string> failures;
    if (serialize(deserialize(bytes)) != bytes) failures.push_back(name + " roundtrip");
    auto magic = bytes;
    magic[0] = std::byte{'X'};
    if (!throws_kind([&] { deserialize(magic); }, FormatErrorKind::bad_magic)) failures.push_back(name + " magic");
    auto version = bytes;
    put_u32(version, 4, 99);
    if (!throws_kind([&] { deserialize(version); }, FormatErrorKind::unsupported_version)) {
        failures.push_back(name + " version");
    }
    auto crc = bytes;
    crc[crc.size() / 2] ^= std::byte{0x40};
    if (!throws_kind([&] { deserialize(crc); }, FormatErrorKind::checksum_mismatch)) failures.push_back(name + " crc");
    return failures;
}

Outcome serialization() {
    SplitMix64 rng(808);
    test::TempDir dir("acceptance-io");
    std::vector<std::string> failures;

    const Matrix feats = test::random_matrix(rng, 12, 10);
    const std::vector<int> labels{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
    std::vector<Matrix> imgs;
    for (int i = 0; i < 10; ++i) imgs.push_back(test::random_matrix(rng, 6, 5));
    const auto vec_model = classifier::train_vector_mode(feats, labels, 3);
    const auto mat_model = classifier::train_matrix_mode(imgs, labels, {3, 3, 2});
    for (const auto* m : {&vec_model, &mat_model}) {
        const auto f = container_checks("model", classifier::serialize_model(*m), classifier::serialize_model,
                                        classifier::deserialize_model);
        failures.insert(failures.end(), f.begin(), f.end());
        classifier::save_model(*m, dir / "m.hsvd");
        if (read_file_bytes(dir / "m.hsvd") != classifier::serialize_model(classifier::load_model(dir / "m.hsvd"))) {
            failures.push_back("model file roundtrip");
        }
    }
    cnn::Architecture arch;
    arch.side = 8;
    arch.hidden = 6;
    const auto net = cnn::init_weights(42, arch);
    const auto f = container_checks("network", cnn::serialize_network(net), cnn::serialize_network,
                                    cnn::deserialize_network);
    failures.insert(failures.end(), f.begin(), f.end());
    cnn::save_network(net, dir / "n.hcnn");
    if (!(cnn::load_network(dir / "n.hcnn") == net)) failures.push_back("network file roundtrip");

    std::string detail = "vector/matrix models and network: roundtrip, bad_magic, unsupported_version, "
                         "checksum_mismatch";
    for (const auto& s : failures) detail += "; " + s;
    return {failures.empty(), detail};
}

Outcome service_check() {
    test::TempDir dir("acceptance-svc");
    const auto synth = data::synth_images(9, 8, 16);
    cnn::Architecture arch;
    arch.side = 16;
    arch.hidden = 12;
    const auto net = cnn::init_weights(42, arch);
    Matrix feats(12, synth.images.size());
    for (std::size_t j = 0; j < synth.images.size(); ++j) {
        const auto v = cnn::forward_extract(net, data::preprocess(synth.images[j], 16)).features;
        for (std::size_t i = 0; i < 12; ++i) feats(i, j) = v[i];
    }
    classifier::save_model(classifier::train_vector_mode(feats, synth.labels, 3), dir / "m.hsvd");
    cnn::save_network(net, dir / "n.hcnn");
    auto pipeline = std::make_shared<const service::InferencePipeline>(
        service::InferencePipeline::load(dir / "m.hsvd", dir / "n.hcnn"));

    service::ClassificationServer server(pipeline, service::ServiceConfig{});
    const int port = server.bind_ephemeral();
    std::thread worker([&] { server.serve(); });
    for (int i = 0; i < 400 && !server.is_running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(5));

    std::vector<std::string> failures;
    httplib::Client client("127.0.0.1", port);
    for (std::size_t i = 0; i < synth.images.size(); ++i) {
        const auto bytes = data::encode_pnm(synth.images[i]);
        const auto res = client.Post("/v1/classify", std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                                     "application/octet-stream");
        if (!res || res->status != 200 || res->body != pipeline->result_json(pipeline->classify_pnm(bytes))) {
            failures.push_back("response " + std::to_string(i) + " differs from in-process result");
        }
    }
    const auto bytes = data::encode_pnm(synth.images[3]);
    const std::string body(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    std::vector<std::future<std::string>> jobs;
    for (int i = 0; i < 50; ++i) {
        jobs.push_back(std::async(std::launch::async, [&] {
            httplib::Client c("127.0.0.1", port);
            const auto res = c.Post("/v1/classify", body, "application/octet-stream");
            return res && res->status == 200 ? res->body : std::string();
        }));
    }
    std::set<std::string> bodies;
    for (auto& j : jobs) bodies.insert(j.get());
    if (bodies.size() != 1 || bodies.begin()->empty()) failures.push_back("concurrent bodies differ");
    const auto bad = client.Post("/v1/classify", "P7 not an image", "application/octet-stream");
    if (!bad || bad->status != 400) failures.push_back("malformed body not 400");
    const auto health = client.Get("/v1/health");
    if (!health || health->status != 200) failures.push_back("health not 200");
    server.stop();
    worker.join();

    std::string detail = std::to_string(synth.images.size()) + " exact responses, 50 concurrent, 400, health";
    for (const auto& s : failures) detail += "; " + s;
    return {failures.empty(), detail};
}

Outcome invariance() {
    SplitMix64 rng(1010);
    std::size_t scale_fail = 0, anova_fail = 0, fold_fail = 0;

    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 3 + rng.below(10);
        const std::size_t n = 4 + rng.below(8);
        const Matrix feats = test::random_matrix(rng, d, 2 * n);
        std::vector<int> labels(2 * n);
        for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i < n ? 0 : 1;
        const auto model = classifier::train_vector_mode(feats, labels, 1 + rng.below(std::min(d, n)));
        std::vector<double> z(d);
        for (double& x : z) x = rng.normal();
        const auto base = classifier::classify(model, z);
        const double alpha = std::exp(rng.uniform(-10.0, 10.0));
        for (double& x : z) x *= alpha;
        const auto scaled = classifier::classify(model, z);
        if (std::abs(base.margin) > 1e-9 && scaled.label != base.label) ++scale_fail;
    }

    for (int trial = 0; trial < 100; ++trial) {
        auto groups = random_groups(rng);
        const auto base = eval::anova_oneway(groups);
        const double shift = rng.uniform(-1e3, 1e3);
        const double scale = std::exp(rng.uniform(-5.0, 5.0));
        for (auto& g : groups) {
            for (double& x : g) x = scale * x + shift;
        }
        const auto moved = eval::anova_oneway(groups);
        if (std::abs(moved.f_statistic - base.f_statistic) > 1e-6 * base.f_statistic ||
            std::abs(moved.p_value - base.p_value) > 1e-6) {
            ++anova_fail;
        }
    }

    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 2 + rng.below(5);
        std::vector<int> labels;
        std::size_t count[2] = {k + rng.below(20), k + rng.below(20)};
        for (int c = 0; c < 2; ++c) labels.insert(labels.end(), count[c], c);
        SplitMix64 shuffler(rng.next());
        shuffler.shuffle(std::span<int>(labels));
        const auto folds = data::stratified_kfold(labels, k, rng.next());
        std::vector<int> seen(labels.size(), 0);
        bool ok = folds.size() == k;
        std::size_t lo[2] = {SIZE_MAX, SIZE_MAX}, hi[2] = {0, 0};
        for (const auto& f : folds) {
            std::size_t per[2] = {0, 0};
            for (std::size_t idx : f) {
                ++seen[idx];
                ++per[labels[idx]];
            }
            for (int c = 0; c < 2; ++c) {
                lo[c] = std::min(lo[c], per[c]);
                hi[c] = std::max(hi[c], per[c]);
            }
        }
        ok = ok && std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
        ok = ok && hi[0] - lo[0] <= 1 && hi[1] - lo[1] <= 1;
        if (!ok) ++fold_fail;
    }

    return {scale_fail + anova_fail + fold_fail == 0,
            "100 trials each: scale " + std::to_string(scale_fail) + " failures, ANOVA affine " +
                std::to_string(anova_fail) + ", stratified partition " + std::to_string(fold_fail)};
}

std::set<int> parse_list(const std::string& text) {
    std::set<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.insert(std::stoi(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected_fail, only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if ((arg == "--expect-fail" || arg == "--only") && i + 1 < argc) {
            (arg == "--only" ? only : expected_fail) = parse_list(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--expect-fail N[,M...]] [--only N[,M...]]\n";
            return 2;
        }
    }
    log::init_from_env();

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"HOSVD exactness", exactness},
        {"orthogonality and all-orthogonality", orthogonality},
        {"truncation bound", truncation_bound},
        {"oracle equivalences", oracles},
        {"gradient check", gradient},
        {"surrogate classification", surrogate},
        {"end-to-end pipeline", end_to_end},
        {"serialization", serialization},
        {"service", service_check},
        {"invariance suite", invariance},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!only.empty() && !only.count(id)) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) failed.insert(id);
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }

    std::set<int> expected;
    for (int id : expected_fail) {
        if (only.empty() || only.count(id)) expected.insert(id);
    }
    std::cout << failed.size() << " failed";
    if (!expected.empty()) std::cout << " (expected failures: " << expected.size() << ")";
    std::cout << std::endl;
    return failed == expected ? 0 : 1;
}
