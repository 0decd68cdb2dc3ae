#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("MZQFI_CLI");
    REQUIRE_MESSAGE(p != nullptr, "MZQFI_CLI must point at the built binary");
    return p;
}

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("report: coherent + squeezed vacuum") {
    const RunResult r =
        run("report --state cs-svs --alpha 2 --xi 0.5 --tau 1.5707963 --upsilon 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("n_a = 4") != std::string::npos);
    CHECK(r.out.find("frak_f_max") != std::string::npos);
    CHECK(r.out.find("v2_bound") != std::string::npos);
    CHECK(r.out.find("snl") != std::string::npos);
}

TEST_CASE("report: domain error exits 3 with machine-readable stderr") {
    const RunResult r = run("report --state cs-pssvs --xi 0 --kappa 1");
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("\"kind\": \"domain\"") != std::string::npos);
}

TEST_CASE("report: two-mode squeezed vacuum closed form") {
    const RunResult r = run("report --state tmsvs --zeta 0.5 --tau 1.5707963");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("f_max_two_param = 1.38109784") != std::string::npos);
    CHECK(r.out.find("separable = false") != std::string::npos);
}

TEST_CASE("report: json mode emits full precision") {
    const RunResult r = run("report --state cs-svs --alpha 2 --xi 0.5 --json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"n_b\": 2.7154031740762191e-01") != std::string::npos);
}

TEST_CASE("report: transmission flag maps to the splitting angle") {
    const RunResult r =
        run("report --state cs-svs --alpha 1 --xi 0.3 --tau-as-transmission 0.5 --json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"transmission\": 5.000000000000") != std::string::npos);
}

TEST_CASE("report: alternate gain convention changes only the gain lines") {
    const std::string args = "report --state cs-svs --alpha 2 --xi 0.5 --json";
    const RunResult base = run(args);
    const RunResult alt = run(args + " --gain-alt");
    CHECK(base.exit_code == 0);
    CHECK(alt.exit_code == 0);
    auto grab = [](const std::string& out, const std::string& key) {
        const auto pos = out.find('"' + key + "\": ");
        REQUIRE(pos != std::string::npos);
        return std::stod(out.substr(pos + key.size() + 4));
    };
    CHECK(grab(base.out, "v2_bound") == grab(alt.out, "v2_bound"));
    CHECK(grab(base.out, "gain_v2_db") != grab(alt.out, "gain_v2_db"));
}

TEST_CASE("sweep: inverted range exits 2") {
    const RunResult r = run("sweep --state cs-svs --na 10 --param nb --range 5:1:10");
    CHECK(r.exit_code == 2);
}

TEST_CASE("sweep: missing required flags exit 2") {
    const RunResult r = run("sweep --param nb --range 1:2:4");
    CHECK(r.exit_code == 2);
}

TEST_CASE("sweep: grid-point domain error exits 3") {
    const RunResult r = run("sweep --state cs-pssvs --alpha 1 --kappa 1 --param xi "
                            "--range 0:1:5");
    CHECK(r.exit_code == 3);
}

TEST_CASE("sweep: writes deterministic csv files") {
    const std::string path1 = "cli_sweep_a.csv";
    const std::string path2 = "cli_sweep_b.csv";
    const std::string args = "sweep --state cs-svs --na 10 --param nb --range "
                             "0.1:40:50 --theory both --output ";
    CHECK(run(args + path1).exit_code == 0);
    CHECK(run(args + path2).exit_code == 0);
    const std::string a = slurp(path1);
    CHECK(a == slurp(path2));
    CHECK(a.rfind("sweep_value,n_a,n_b,", 0) == 0);
    // 50 rows + header
    CHECK(std::count(a.begin(), a.end(), '\n') == 51);
    std::remove(path1.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("sweep: json format to stdout") {
    const RunResult r = run("sweep --state cs-fock --na 10 --param nb --range 1:5:5 "
                            "--format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"frak_f_max\": ") != std::string::npos);
}

TEST_CASE("sweep: unwritable output path exits 4") {
    const RunResult r = run("sweep --state cs-svs --na 10 --param nb --range 1:5:5 "
                            "--output /no/such/dir/out.csv");
    CHECK(r.exit_code == 4);
}

TEST_CASE("oracle-check: separable family passes") {
    const RunResult r = run("oracle-check --state cs-svs --alpha 1 --xi 0.5 --cutoff 60");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("oracle-check: entangled family checks the closed form") {
    const RunResult r = run("oracle-check --state tmsvs --zeta 0.5 --cutoff 60");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("oracle-check: starved cutoff exits 5") {
    const RunResult r = run("oracle-check --state cs-svs --alpha 6 --cutoff 10");
    CHECK(r.exit_code == 5);
    CHECK(r.out.find("truncation") != std::string::npos);
}

TEST_CASE("table1: six rows with the canonical values") {
    const RunResult r = run("table1 --na 10 --nb 10");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("row,frak_g,four_var_jz,frak_f_max,tau_opt,theta_opt", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
    CHECK(r.out.find("tfs,") != std::string::npos);
    CHECK(r.out.find("tmsvs,n/a,") != std::string::npos);
    CHECK(r.out.find("4.2000000000000000e+02") != std::string::npos);  // cs-css frak_f
}

TEST_CASE("config file: flags override key=value entries") {
    const std::string cfg = "cli_test_config.ini";
    {
        std::ofstream os(cfg);
        os << "state=cs-svs\nalpha=2\nxi=0.5\n";
    }
    const RunResult base = run("report --config " + cfg + " --json");
    CHECK(base.exit_code == 0);
    CHECK(base.out.find("\"n_a\": 4.0000000000000000e+00") != std::string::npos);
    const RunResult over = run("report --config " + cfg + " --alpha 3 --json");
    CHECK(over.exit_code == 0);
    CHECK(over.out.find("\"n_a\": 9.0000000000000000e+00") != std::string::npos);
    std::remove(cfg.c_str());
}

TEST_CASE("help exits cleanly") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("report --help").exit_code == 0);
}

TEST_CASE("unknown subcommand exits 2") {
    CHECK(run("frobnicate").exit_code == 2);
}
