#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "reflectra/cli.hpp"
#include "reflectra/errors.hpp"
#include "reflectra/fourier.hpp"
#include "reflectra/numeric.hpp"

namespace fs = std::filesystem;
using namespace reflectra;

namespace {

struct Workspace {
    fs::path dir;
    Workspace() {
        dir = fs::temp_directory_path() / ("reflectra_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        write("jacobi.json", R"({"kind": "jacobi", "alpha": 1.5, "beta": 0.5})");
        write("dunkl.json", R"({"family": {"kind": "dunkl", "alpha": 0.5}, "eps": 0.0,
                               "numeric": {"xmax": 8, "step": 0.015625, "lmax": 40, "tol": 1e-6}})");
    }
    ~Workspace() { fs::remove_all(dir); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
    std::string read(const std::string& name) const {
        std::ifstream in(dir / name, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

const Workspace& ws() {
    static Workspace w;
    return w;
}

std::string binary() {
    const char* b = std::getenv("REFLECTRA_BIN");
    return b ? b : "reflectra";
}

// Runs the binary with stdout and stderr captured into the workspace.
int run(const std::string& args, const std::string& out = "stdout.txt", const std::string& err = "stderr.txt") {
    const std::string cmd = "cd '" + ws().dir.string() + "' && '" + binary() + "' " + args + " > '" + ws().path(out) +
                            "' 2> '" + ws().path(err) + "'";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("eps outside [-1, 1] is a usage error") {
    CHECK(run("eigen eval --lambda 2,0 --eps 1.5 --family jacobi.json") == 2);
    CHECK(ws().read("stderr.txt").find("eps out of [-1,1]") != std::string::npos);
}

TEST_CASE("malformed configs report a location") {
    ws().write("broken.json", "{\"kind\": \"jacobi\", \"alpha\": 1.5,,}");
    CHECK(run("family --family broken.json") == 2);
    CHECK(ws().read("stderr.txt").find("broken.json: byte") != std::string::npos);
    ws().write("missing.json", R"({"family": {"kind": "jacobi", "alpha": 1.5}})");
    CHECK(run("family --family missing.json") == 2);
    CHECK(ws().read("stderr.txt").find("missing.json.family: missing \"beta\"") != std::string::npos);
    CHECK(run("eigen eval --lambda 1 --family dunkl.json --step 0.3") == 2);
    CHECK(run("no-such-command") == 2);
    CHECK(run("transform forward --family '{\"kind\":\"dunkl\",\"alpha\":0.5}' --in absent.csv") == 2);
}

TEST_CASE("eigen eval output is deterministic and has the documented columns") {
    CHECK(run("eigen eval --family jacobi.json --eps 0.5 --lambda 2.3,0 --xmax 6 --out a.csv") == 0);
    CHECK(run("--threads 1 eigen eval --family jacobi.json --eps 0.5 --lambda 2.3,0 --xmax 6 --out b.csv") == 0);
    const auto a = ws().read("a.csv");
    CHECK(a == ws().read("b.csv"));
    CHECK(a.rfind("x,re_psi,im_psi,re_phi,im_phi\n", 0) == 0);
    auto f = cli::read_grid_csv(ws().path("a.csv"));
    CHECK(f.size() == 769);
    CHECK(f[384] == cplx(1.0, 0.0));
}

TEST_CASE("forward and inverse through files recover the input") {
    CHECK(run("transform forward --family jacobi.json --eps 0.5 --out F.csv") == 0);
    CHECK(run("--out-dir sub transform inverse --family jacobi.json --eps 0.5 --in F.csv --out f.csv") == 0);
    auto f = cli::read_grid_csv(ws().path("sub/f.csv"));
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(f[i] - fourier::default_bump(f.x(i))));
    CHECK(worst <= 1e-4);
    CHECK(run("transform inverse --family jacobi.json --eps 0.0 --in F.csv") == 2);
}

TEST_CASE("transform roundtrip report line") {
    CHECK(run("transform roundtrip --family jacobi.json --eps 0.5") == 0);
    auto j = nlohmann::json::parse(ws().read("stdout.txt"));
    CHECK(j["check"] == "transform.roundtrip");
    CHECK(j["status"] == "pass");
    CHECK(j["observed"].get<double>() <= 1e-4);
}

TEST_CASE("intertwine apply and heat scan") {
    CHECK(run("intertwine apply --op V --family dunkl.json --xmax 4 --step 0.0625 --out v.csv") == 0);
    auto v = cli::read_grid_csv(ws().path("v.csv"));
    for (const auto& z : v.values()) CHECK(z.real() >= -1e-10);
    CHECK(run("intertwine apply --op V --family jacobi.json --xmax 4 --step 0.0625") == 2);
    CHECK(run("heat scan --family jacobi.json --eps 0.5 --s 1 --umax 1 --xmax 1 --step 0.25 --out w.csv") == 0);
    const auto w = ws().read("w.csv");
    CHECK(w.rfind("u,x,W\n", 0) == 0);
    CHECK(std::count(w.begin(), w.end(), '\n') == 1 + 81);
}

TEST_CASE("table family with a relative path") {
    std::ostringstream t;
    t << "x,B,Bprime\n";
    for (int i = 0; i <= 200; ++i) {
        const double x = 0.05 * i;
        t << x << "," << std::cosh(x) * std::cosh(x) << "," << 2.0 * std::sinh(x) * std::cosh(x) << "\n";
    }
    fs::create_directories(ws().dir / "cfg");
    ws().write("cfg/b.csv", t.str());
    ws().write("cfg/table.json", R"({"kind": "table", "path": "b.csv", "alpha": 0.5})");
    auto fam = cli::load_family(ws().path("cfg/table.json"));
    CHECK(fam.kind() == chebli::Kind::Table);
    CHECK(fam.rho() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(run("family --family cfg/table.json") == 0);
    CHECK(run("transform roundtrip --family cfg/table.json") == 2);
}

TEST_CASE("verify: deterministic report, fault injection isolates Plancherel") {
    CHECK(run("verify all --family jacobi.json --eps 0.5 --out r1.json") == 0);
    CHECK(run("verify all --family jacobi.json --eps 0.5 --out r2.json") == 0);
    CHECK(ws().read("r1.json") == ws().read("r2.json"));
    auto ok = nlohmann::json::parse(ws().read("r1.json"));
    CHECK(ok["summary"]["fail"] == 0);

    CHECK(run("verify all --family jacobi.json --eps 0.5 --fault density --out r3.json") == 1);
    auto bad = nlohmann::json::parse(ws().read("r3.json"));
    CHECK(bad["summary"]["fail"] == 1);
    for (const auto& c : bad["checks"]) {
        INFO(c["check"].get<std::string>());
        if (c["check"] == "fourier.plancherel") CHECK(c["status"] == "fail");
        else CHECK(c["status"] != "fail");
    }
    CHECK(bad["checks"].size() == ok["checks"].size());

    CHECK(run("verify list --out list.json") == 0);
    auto list = nlohmann::json::parse(ws().read("list.json"));
    CHECK(list.size() == ok["checks"].size());
}

TEST_CASE("in-process entry point") {
    CHECK(cli::run({"reflectra", "verify", "list", "--out", ws().path("inproc.json")}) == 0);
    CHECK(cli::run({"reflectra", "eigen", "eval", "--family", ws().path("jacobi.json"), "--eps", "-2", "--lambda", "1"}) == 2);
}
