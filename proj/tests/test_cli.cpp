#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kBin = KRON_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("kron_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const std::string& capture = "/dev/null") {
    const std::string cmd = kBin + " " + args + " >" + capture + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("cli: --version and missing subcommand") {
    CHECK(run("--version") == 0);
    CHECK(run("") != 0);
}

TEST_CASE("cli: generate deterministic golden output") {
    TempDir dir;
    const std::string out = dir / "det.txt";
    CHECK(run("generate --inline \"1 1; 0 1\" --k 2 --mode deterministic --out " + out) == 0);
    // Upper-triangular initiator^2: edges exactly where u's digits dominate v's.
    const std::string body = slurp(out);
    CHECK(body.find("0\t1") != std::string::npos);
    CHECK(body.find("0\t3") != std::string::npos);
    CHECK(body.find("3\t0") == std::string::npos);
    CHECK(fs::exists(out + ".manifest"));
    const std::string manifest = slurp(out + ".manifest");
    CHECK(manifest.find("version=kron 0.1.0") != std::string::npos);
    CHECK(manifest.find("mode=deterministic") != std::string::npos);
}

TEST_CASE("cli: generate is deterministic for a fixed seed") {
    TempDir dir;
    const std::string a = dir / "a.txt", b = dir / "b.txt", c = dir / "c.txt";
    const std::string base = "generate --inline \"0.9 0.6; 0.5 0.2\" --k 8 --mode fast --out ";
    CHECK(run("--seed 42 " + base + a) == 0);
    CHECK(run("--seed 42 " + base + b) == 0);
    CHECK(run("--seed 43 " + base + c) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));
}

TEST_CASE("cli: exit code 2 on usage errors") {
    TempDir dir;
    // unknown mode
    CHECK(run("generate --inline \"0.5 0.5; 0.5 0.5\" --k 2 --mode bogus --out " +
              (dir / "x.txt")) == 2);
    // deterministic mode with a non-binary initiator
    CHECK(run("generate --inline \"0.5 0.5; 0.5 0.5\" --k 2 --mode deterministic --out " +
              (dir / "x.txt")) == 2);
    // no initiator at all
    CHECK(run("generate --k 2 --out " + (dir / "x.txt")) == 2);
    // select sizes outside {2..9}
    write_file(dir / "g.txt", "0\t1\n1\t0\n");
    CHECK(run("select " + (dir / "g.txt") + " --sizes 1") == 2);
}

TEST_CASE("cli: exit code 1 on runtime errors") {
    CHECK(run("stats /nonexistent/graph.txt") == 1);
    TempDir dir;
    write_file(dir / "bad.txt", "0\toops\n");
    CHECK(run("stats " + (dir / "bad.txt")) == 1);
}

TEST_CASE("cli: stats writes series CSVs and a summary") {
    TempDir dir;
    const std::string g = dir / "g.txt", out = dir / "stats";
    CHECK(run("generate --inline \"0.9 0.6; 0.5 0.2\" --k 7 --mode fast --out " + g +
              " --seed 5") == 0);
    const std::string capture = dir / "stdout.txt";
    CHECK(run("stats " + g + " --out " + out, capture) == 0);
    for (const std::string name : {"degree-in", "degree-out", "hop-plot", "scree",
                                   "network-value", "triangle-participation"})
        CHECK(fs::exists(out + "/" + name + ".csv"));
    const std::string summary = slurp(out + "/summary.txt");
    CHECK(summary.rfind("n=", 0) == 0);
    CHECK(summary.find("effective_diameter=") != std::string::npos);
    CHECK(slurp(capture) == summary);
    // series CSVs carry the x,y header
    CHECK(slurp(out + "/degree-out.csv").rfind("x,y", 0) == 0);
}

TEST_CASE("cli: fit writes trace, theta, diagnostics, manifest") {
    TempDir dir;
    const std::string g = dir / "g.txt", prefix = dir / "fit";
    CHECK(run("generate --inline \"0.9 0.6; 0.5 0.2\" --k 8 --mode fast --out " + g +
              " --seed 5") == 0);
    CHECK(run("fit " + g + " --iterations 5 --samples 3000 --burnin 500 --out " + prefix +
              " --seed 1 --diag-samples 2000") == 0);
    const std::string trace = slurp(prefix + ".trace.csv");
    CHECK(trace.rfind("step,loglik,theta_00,theta_01,theta_10,theta_11", 0) == 0);
    // 5 iterations -> 5 trace rows after the header
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 6);
    CHECK(fs::exists(prefix + ".theta"));
    CHECK(slurp(prefix + ".autocorr.csv").rfind("lag,autocorrelation", 0) == 0);
    CHECK(slurp(prefix + ".psr.csv").rfind("length,psr", 0) == 0);
    const std::string manifest = slurp(prefix + ".manifest");
    CHECK(manifest.find("subcommand=fit") != std::string::npos);
    CHECK(manifest.find("loglik=") != std::string::npos);
}

TEST_CASE("cli: fit with --iterations 0 still succeeds") {
    TempDir dir;
    const std::string g = dir / "g.txt", prefix = dir / "fit0";
    CHECK(run("generate --inline \"0.8 0.5; 0.5 0.2\" --k 6 --mode fast --out " + g) == 0);
    CHECK(run("fit " + g + " --iterations 0 --burnin 200 --out " + prefix +
              " --diag-samples 500") == 0);
    CHECK(fs::exists(prefix + ".theta"));
}

TEST_CASE("cli: fit is deterministic for a fixed seed") {
    TempDir dir;
    const std::string g = dir / "g.txt";
    CHECK(run("generate --inline \"0.9 0.6; 0.5 0.2\" --k 7 --mode fast --out " + g) == 0);
    const std::string args = "fit " + g + " --iterations 3 --samples 2000 --burnin 300 --seed 9 "
                             "--diag-samples 1000 --out ";
    CHECK(run(args + (dir / "f1")) == 0);
    CHECK(run(args + (dir / "f2")) == 0);
    CHECK(slurp(dir / "f1.trace.csv") == slurp(dir / "f2.trace.csv"));
    CHECK(slurp(dir / "f1.theta") == slurp(dir / "f2.theta"));
}

TEST_CASE("cli: compare of a graph with itself reports zero divergence") {
    TempDir dir;
    const std::string g = dir / "g.txt", out = dir / "cmp";
    CHECK(run("generate --inline \"0.9 0.6; 0.5 0.2\" --k 7 --mode fast --out " + g) == 0);
    CHECK(run("compare " + g + " " + g + " --out " + out) == 0);
    std::ifstream in(out + "/divergence.csv");
    std::string line;
    std::getline(in, line);  // header
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.substr(line.rfind(',') + 1) == "0");
    }
    CHECK(rows > 0);
    CHECK(fs::exists(out + "/hop-plot.overlay.csv"));
}

TEST_CASE("cli: select emits the table with a best marker") {
    TempDir dir;
    const std::string g = dir / "g.txt", prefix = dir / "sel";
    CHECK(run("generate --inline \"0.9 0.6; 0.5 0.2\" --k 6 --mode fast --out " + g) == 0);
    const std::string capture = dir / "stdout.txt";
    CHECK(run("select " + g + " --sizes 2 --iterations 3 --samples 2000 --burnin 300 --out " +
              prefix, capture) == 0);
    CHECK(slurp(capture).find("<-- best (argmin BIC)") != std::string::npos);
    const std::string csv = slurp(prefix + ".select.csv");
    CHECK(csv.rfind("n1,loglik,bic,padded_n,nonisolated,best,error", 0) == 0);
    const std::string manifest = slurp(prefix + ".select.manifest");
    CHECK(manifest.find("best_n1=2") != std::string::npos);
}
