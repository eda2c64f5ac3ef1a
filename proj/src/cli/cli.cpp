#include "leuk/cli/cli.hpp"

#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <pthread.h>

#include "CLI11.hpp"
#include "leuk/classifier/model_io.hpp"
#include "leuk/cnn/network_io.hpp"
#include "leuk/core/binary_io.hpp"
#include "leuk/core/error.hpp"
#include "leuk/core/log.hpp"
#include "leuk/data/csv.hpp"
#include "leuk/data/synth.hpp"
#include "leuk/eval/report.hpp"
#include "leuk/service/server.hpp"

namespace leuk::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::array<std::size_t, 3> parse_ranks(const std::string& text) {
    std::array<std::size_t, 3> out{};
    std::stringstream ss(text);
    std::string item;
    std::size_t n = 0;
    while (std::getline(ss, item, ',')) {
        if (n == 3) throw UsageError("--ranks takes three comma-separated integers");
        try {
            std::size_t used = 0;
            const long v = std::stol(item, &used);
            if (used != item.size() || v < 1) throw UsageError("--ranks values must be positive integers");
            out[n++] = static_cast<std::size_t>(v);
        } catch (const std::logic_error&) {
            throw UsageError("--ranks values must be positive integers");
        }
    }
    if (n != 3) throw UsageError("--ranks takes three comma-separated integers");
    return out;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw DataError("failed writing " + path.string());
}

data::LabeledDataset features_of(const cnn::Network& net, const data::LabeledDataset& images) {
    data::LabeledDataset out;
    out.kind = data::DatasetKind::feature_vectors;
    out.labels = images.labels;
    out.sources = images.sources;
    for (const auto& img : images.images) out.vectors.push_back(cnn::forward_extract(net, img).features);
    return out;
}

struct TrainArgs {
    std::string data, mode = "vector", ranks = "16,16,4", cnn, out;
    std::size_t rank = 8, side = 64;
    int epochs = 5;
    double lr = 0.03;
    std::uint64_t seed = 42;
    bool reuse_cnn = false;
};

int cmd_train(const TrainArgs& a, std::ostream& out) {
    auto ds = data::load_any(a.data, a.side);
    classifier::HosvdModel model;
    if (a.mode == "matrix") {
        if (ds.kind != data::DatasetKind::images) throw UsageError("--mode matrix needs an image directory");
        model = classifier::train_matrix_mode(ds.images, ds.labels, parse_ranks(a.ranks));
    } else {
        if (ds.kind == data::DatasetKind::images) {
            if (a.cnn.empty()) throw UsageError("--mode vector on images needs --cnn PATH for the feature network");
            cnn::Network net;
            if (a.reuse_cnn) {
                net = cnn::load_network(a.cnn);
            } else {
                cnn::Architecture arch;
                arch.side = a.side;
                const auto trained = cnn::train_sgd(cnn::init_weights(a.seed, arch), ds.images, ds.labels,
                                                    {a.epochs, a.lr, a.seed});
                net = trained.net;
                for (std::size_t e = 0; e < trained.loss_trace.size(); ++e) {
                    log::info("epoch " + std::to_string(e + 1) + " loss " + std::to_string(trained.loss_trace[e]));
                }
                cnn::save_network(net, a.cnn);
            }
            ds = features_of(net, ds);
        }
        std::size_t rank = a.rank;
        rank = std::min({rank, ds.count(0), ds.count(1)});
        if (rank != a.rank) log::warn("rank capped at " + std::to_string(rank) + " by class sample counts");
        model = classifier::train_vector_mode(ds.feature_matrix(), ds.labels, std::max<std::size_t>(rank, 1));
    }
    classifier::save_model(model, a.out);
    out << "trained " << (model.mode == classifier::ModelMode::vector ? "vector" : "matrix") << " model on "
        << ds.size() << " samples -> " << a.out << "\n";
    return kExitOk;
}

struct ClassifyArgs {
    std::string model, cnn, image;
    bool json = false;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
    std::optional<std::filesystem::path> cnn_path;
    if (!a.cnn.empty()) cnn_path = a.cnn;
    const auto pipeline = service::InferencePipeline::load(a.model, cnn_path);
    const auto result = pipeline.classify_pnm(read_file_bytes(a.image));
    if (a.json) {
        out << pipeline.result_json(result) << "\n";
    } else {
        out << data::label_name(result.label) << "\n";
    }
    return kExitOk;
}

struct EvaluateArgs {
    std::string data, classifiers, json, report, cnn, ranks = "16,16,4";
    std::size_t folds = 5, repeats = 6, rank = 8, elm_hidden = 64, side = 64;
    std::uint64_t seed = 42;
    int epochs = 5;
    double lr = 0.03;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
    const auto ds = data::load_any(a.data, a.side);
    eval::HarnessConfig cfg;
    cfg.folds = a.folds;
    cfg.seeds.clear();
    for (std::size_t r = 0; r < a.repeats; ++r) cfg.seeds.push_back(a.seed + r);
    cfg.architecture.side = a.side;
    cfg.cnn_train = {a.epochs, a.lr, 42};
    if (!a.cnn.empty()) cfg.extractor = cnn::load_network(a.cnn);
    cfg.vector_rank = a.rank;
    cfg.matrix_ranks = parse_ranks(a.ranks);
    cfg.elm_hidden = a.elm_hidden;

    const auto names = a.classifiers.empty() ? eval::default_classifiers(ds.kind) : split_list(a.classifiers);
    std::vector<eval::ClassifierSpec> specs;
    for (const auto& n : names) specs.push_back(eval::make_classifier(n, cfg));
    const auto reports = eval::evaluate_suite(specs, ds, cfg);
    const auto anova = eval::anova_of(reports);
    const std::string table = eval::compare_report(reports, anova);
    out << table;
    if (!a.report.empty()) write_text(a.report, table);
    if (!a.json.empty()) write_text(a.json, eval::report_json(reports, anova));
    return kExitOk;
}

int cmd_extract(const std::string& cnn_path, const std::string& data_dir, const std::string& out_path,
                std::ostream& out) {
    const auto net = cnn::load_network(cnn_path);
    const auto ds = data::load_dataset(data_dir, net.arch.side);
    const auto features = features_of(net, ds);
    data::write_feature_csv(features, out_path);
    out << "wrote " << features.size() << " feature vectors -> " << out_path << "\n";
    return kExitOk;
}

struct SynthArgs {
    std::string out, kind = "images";
    std::uint64_t seed = 42;
    std::size_t per_class = 20, dim = 128, side = 64;
    double separation = 6.0;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
    if (a.kind == "features") {
        const auto ds = data::synth_features(a.seed, a.per_class, a.dim, a.separation);
        data::write_feature_csv(ds, a.out);
        out << "wrote " << ds.size() << " feature vectors -> " << a.out << "\n";
        return kExitOk;
    }
    const auto synth = data::synth_images(a.seed, a.per_class, a.side);
    std::size_t counters[2] = {0, 0};
    for (int label = 0; label < 2; ++label) std::filesystem::create_directories(std::filesystem::path(a.out) / data::kClassNames[label]);
    for (std::size_t i = 0; i < synth.images.size(); ++i) {
        const int label = synth.labels[i];
        std::ostringstream name;
        name << "img_" << std::setw(4) << std::setfill('0') << counters[label]++ << ".pgm";
        write_file_bytes(std::filesystem::path(a.out) / data::kClassNames[label] / name.str(),
                         data::encode_pnm(synth.images[i]));
    }
    out << "wrote " << synth.images.size() << " images -> " << a.out << "\n";
    return kExitOk;
}

struct ServeArgs {
    std::string model, cnn, bind = "127.0.0.1";
    int port = 8080;
    std::size_t max_body = 8 * 1024 * 1024;
};

int cmd_serve(const ServeArgs& a, std::ostream& out) {
    service::ServiceConfig cfg;
    cfg.port = a.port;
    cfg.model_path = a.model;
    if (!a.cnn.empty()) cfg.cnn_path = a.cnn;
    cfg.max_body_bytes = a.max_body;
    cfg.bind_address = a.bind;
    cfg.validate();

    auto pipeline = std::make_shared<const service::InferencePipeline>(
        service::InferencePipeline::load(cfg.model_path, cfg.cnn_path));
    service::ClassificationServer server(pipeline, cfg);

    // SIGINT/SIGTERM are taken by a dedicated thread via sigwait; blocking
    // them first keeps the server's worker threads from receiving them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    if (!server.bind()) throw Error("cannot bind " + cfg.bind_address + ":" + std::to_string(cfg.port));
    out << "listening on " << cfg.bind_address << ":" << server.port() << " model " << pipeline->model_id()
        << std::endl;
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        log::info("signal " + std::to_string(sig) + " received, shutting down");
        server.stop();
    });
    server.serve();
    // serve() can also return on its own (listen failure); wake the waiter.
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    log::init_from_env();
    CLI::App app{"HOSVD leukemia image classification toolkit", "leuk"};
    app.set_version_flag("--version", std::string(LEUK_VERSION));
    app.require_subcommand(1);

    TrainArgs train;
    auto* train_cmd = app.add_subcommand("train", "Train a HOSVD model");
    train_cmd->add_option("--data", train.data, "Dataset directory or feature CSV")->required();
    train_cmd->add_option("--mode", train.mode, "vector or matrix")
        ->check(CLI::IsMember({"vector", "matrix"}))
        ->capture_default_str();
    train_cmd->add_option("--rank", train.rank, "Vector-mode rank")->capture_default_str();
    train_cmd->add_option("--ranks", train.ranks, "Matrix-mode ranks k1,k2,k3")->capture_default_str();
    train_cmd->add_option("--cnn", train.cnn, "Feature network path (written unless --reuse-cnn)");
    train_cmd->add_flag("--reuse-cnn", train.reuse_cnn, "Load the network at --cnn instead of training one");
    train_cmd->add_option("--epochs", train.epochs, "CNN epochs")->capture_default_str()->check(CLI::NonNegativeNumber);
    train_cmd->add_option("--lr", train.lr, "CNN learning rate")->capture_default_str()->check(CLI::NonNegativeNumber);
    train_cmd->add_option("--seed", train.seed, "CNN init and shuffle seed")->capture_default_str();
    train_cmd->add_option("--side", train.side, "Image side")->capture_default_str()->check(CLI::PositiveNumber);
    train_cmd->add_option("--out", train.out, "Model output path")->required();

    ClassifyArgs classify;
    auto* classify_cmd = app.add_subcommand("classify", "Classify one PGM/PPM image");
    classify_cmd->add_option("--model", classify.model, "Model path")->required();
    classify_cmd->add_option("--cnn", classify.cnn, "Feature network (vector-mode models)");
    classify_cmd->add_option("--image", classify.image, "Image path")->required();
    classify_cmd->add_flag("--json", classify.json, "Print the full JSON result");

    EvaluateArgs evaluate;
    auto* eval_cmd = app.add_subcommand("evaluate", "Cross-validated comparison of classifiers");
    eval_cmd->add_option("--data", evaluate.data, "Dataset directory or feature CSV")->required();
    eval_cmd->add_option("--folds", evaluate.folds, "Folds")->capture_default_str()->check(CLI::Range(2, 1000));
    eval_cmd->add_option("--seed", evaluate.seed, "First seed")->capture_default_str();
    eval_cmd->add_option("--repeats", evaluate.repeats, "Seeds seed..seed+repeats-1")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000));
    eval_cmd->add_option("--classifiers", evaluate.classifiers, "Comma list: hosvd,hosvd-matrix,1nn,5nn,elm,cnn");
    eval_cmd->add_option("--json", evaluate.json, "Write JSON results");
    eval_cmd->add_option("--report", evaluate.report, "Write the text table");
    eval_cmd->add_option("--cnn", evaluate.cnn, "Fixed feature network (default: train one per fold)");
    eval_cmd->add_option("--epochs", evaluate.epochs, "Per-fold CNN epochs")->capture_default_str();
    eval_cmd->add_option("--lr", evaluate.lr, "Per-fold CNN learning rate")->capture_default_str();
    eval_cmd->add_option("--rank", evaluate.rank, "Vector-mode rank")->capture_default_str();
    eval_cmd->add_option("--ranks", evaluate.ranks, "Matrix-mode ranks")->capture_default_str();
    eval_cmd->add_option("--elm-hidden", evaluate.elm_hidden, "ELM hidden units")->capture_default_str();
    eval_cmd->add_option("--side", evaluate.side, "Image side")->capture_default_str()->check(CLI::PositiveNumber);

    std::string ex_cnn, ex_data, ex_out;
    auto* extract_cmd = app.add_subcommand("extract-features", "Write CNN features of an image directory as CSV");
    extract_cmd->add_option("--cnn", ex_cnn, "Network path")->required();
    extract_cmd->add_option("--data", ex_data, "Image directory")->required();
    extract_cmd->add_option("--out", ex_out, "CSV output path")->required();

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth_cmd->add_option("--out", synth.out, "Output directory (images) or CSV path (features)")->required();
    synth_cmd->add_option("--seed", synth.seed, "Seed")->capture_default_str();
    synth_cmd->add_option("--per-class", synth.per_class, "Samples per class")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    synth_cmd->add_option("--kind", synth.kind, "images or features")
        ->check(CLI::IsMember({"images", "features"}))
        ->capture_default_str();
    synth_cmd->add_option("--dim", synth.dim, "Feature dimension")->capture_default_str()->check(CLI::PositiveNumber);
    synth_cmd->add_option("--separation", synth.separation, "Distance between class means")->capture_default_str();
    synth_cmd->add_option("--side", synth.side, "Image side")->capture_default_str()->check(CLI::PositiveNumber);

    ServeArgs serve;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP classification service");
    serve_cmd->add_option("--model", serve.model, "Model path")->required();
    serve_cmd->add_option("--cnn", serve.cnn, "Feature network (vector-mode models)");
    serve_cmd->add_option("--port", serve.port, "TCP port")->capture_default_str();
    serve_cmd->add_option("--bind", serve.bind, "Bind address")->capture_default_str();
    serve_cmd->add_option("--max-body", serve.max_body, "Largest accepted body in bytes")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << LEUK_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*train_cmd) return cmd_train(train, out);
        if (*classify_cmd) return cmd_classify(classify, out);
        if (*eval_cmd) return cmd_evaluate(evaluate, out);
        if (*extract_cmd) return cmd_extract(ex_cnn, ex_data, ex_out, out);
        if (*synth_cmd) return cmd_synth(synth, out);
        if (*serve_cmd) return cmd_serve(serve, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    err << app.help();
    return kExitUsage;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace leuk::cli
