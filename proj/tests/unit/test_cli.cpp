#include <gtest/gtest.h>

#include <sstream>

#include "leuk/cli/cli.hpp"
#include "support.hpp"

using namespace leuk;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

TEST(Cli, VersionAndUsage) {
    const auto v = run({"--version"});
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out, "0.1.0\n");
    const auto unknown = run({"frobnicate"});
    EXPECT_EQ(unknown.code, 1);
    EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"train", "--bogus"}).code, 1);
    EXPECT_EQ(run({"train", "--data", "x", "--out", "y", "--mode", "cube"}).code, 1);
}

TEST(Cli, RuntimeErrorsExitTwo) {
    test::TempDir dir("cli-err");
    const auto r = run({"classify", "--model", (dir / "none.hsvd").string(), "--image", (dir / "none.pgm").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, SynthTrainClassifyMatrixMode) {
    test::TempDir dir("cli-matrix");
    const auto data = (dir / "imgs").string();
    ASSERT_EQ(run({"synth", "--out", data, "--per-class", "4", "--side", "16"}).code, 0);
    const auto model = (dir / "m.hsvd").string();
    ASSERT_EQ(run({"train", "--data", data, "--mode", "matrix", "--ranks", "4,4,2", "--side", "16", "--out", model}).code, 0);
    const auto r = run({"classify", "--model", model, "--image", data + "/ALL/img_0000.pgm"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out == "healthy\n" || r.out == "ALL\n");
}

TEST(Cli, SynthTrainClassifyVectorModeWithCnn) {
    test::TempDir dir("cli-vector");
    const auto data = (dir / "imgs").string();
    ASSERT_EQ(run({"synth", "--out", data, "--per-class", "4", "--side", "16"}).code, 0);
    const auto model = (dir / "m.hsvd").string();
    const auto net = (dir / "n.hcnn").string();
    EXPECT_EQ(run({"train", "--data", data, "--side", "16", "--out", model}).code, 1);  // --cnn missing
    ASSERT_EQ(run({"train", "--data", data, "--side", "16", "--epochs", "1", "--cnn", net, "--out", model}).code, 0);
    const auto r = run({"classify", "--model", model, "--cnn", net, "--image", data + "/healthy/img_0001.pgm", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"residuals\""), std::string::npos);
    const auto csv = (dir / "f.csv").string();
    ASSERT_EQ(run({"extract-features", "--cnn", net, "--data", data, "--out", csv}).code, 0);
    const auto ev = run({"evaluate", "--data", csv, "--folds", "2", "--repeats", "1", "--classifiers", "hosvd,1nn",
                         "--rank", "2", "--json", (dir / "r.json").string()});
    ASSERT_EQ(ev.code, 0) << ev.err;
    EXPECT_NE(ev.out.find("ANOVA: F(1,2)="), std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(dir / "r.json"));
}

TEST(Cli, SynthFeaturesCsv) {
    test::TempDir dir("cli-feat");
    const auto csv = (dir / "f.csv").string();
    ASSERT_EQ(run({"synth", "--kind", "features", "--out", csv, "--per-class", "5", "--dim", "3"}).code, 0);
    const auto ev = run({"evaluate", "--data", csv, "--folds", "5", "--repeats", "2", "--classifiers", "5nn,elm"});
    EXPECT_EQ(ev.code, 0) << ev.err;
    EXPECT_EQ(run({"evaluate", "--data", csv, "--classifiers", "svm"}).code, 2);
}

}  // namespace
