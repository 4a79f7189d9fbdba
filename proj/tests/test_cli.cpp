// Integration checks for the cpwx command-line tool. Takes the binary path
// as argv[1], drives it through std::system and inspects exit codes, stdout
// and the produced files.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

int g_failures = 0;
std::string g_cli;
fs::path g_dir;

void check(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "ok: " << what << "\n";
    } else {
        ++g_failures;
        std::cout << "FAILED: " << what << "\n";
    }
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

RunResult run(const std::string& args) {
    const fs::path out_path = g_dir / "stdout.txt";
    const fs::path err_path = g_dir / "stderr.txt";
    const std::string cmd =
        g_cli + " " + args + " >" + out_path.string() + " 2>" + err_path.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

void test_scan_and_estimate() {
    const fs::path input = g_dir / "step.csv";
    write_file(input, "value\n0\n0\n1\n1\n");

    const fs::path profile = g_dir / "profile.csv";
    RunResult r = run("scan --input " + input.string() + " --method wilcoxon --out " +
                      profile.string());
    check(r.exit_code == 0, "scan exits 0");
    check(slurp(profile) == "k,statistic\n1,1.5\n2,2\n3,1.5\n",
          "wilcoxon profile rows are exact half-integers");

    r = run("scan --input " + input.string() + " --method cusum --out " + profile.string());
    check(r.exit_code == 0, "cusum scan exits 0");
    check(slurp(profile) == "k,statistic\n1,-0.5\n2,-1\n3,-0.5\n", "cusum profile rows");

    r = run("estimate --input " + input.string() + " --method wilcoxon");
    check(r.exit_code == 0, "estimate exits 0");
    check(r.out == "k_hat=2 theta_hat=0.5\n", "wilcoxon estimate line");

    r = run("estimate --input " + input.string() + " --method cusum");
    check(r.out == "k_hat=2 theta_hat=0.5\n", "cusum estimate line");

    // constant input: result still printed, warning on stderr
    const fs::path constant = g_dir / "constant.csv";
    write_file(constant, "2\n2\n2\n2\n");
    r = run("estimate --input " + constant.string() + " --method cusum");
    check(r.exit_code == 0, "constant estimate exits 0");
    check(r.out.rfind("k_hat=1 ", 0) == 0, "degenerate cusum profile tie-breaks to 1");
    check(r.err.find("degenerate") != std::string::npos, "degenerate profile warned");

    // single observation: precondition failure
    const fs::path single = g_dir / "single.csv";
    write_file(single, "3.5\n");
    r = run("estimate --input " + single.string() + " --method wilcoxon");
    check(r.exit_code == 2, "1-line input exits 2");

    // non-numeric row reported with its line number
    const fs::path broken = g_dir / "broken.csv";
    write_file(broken, "1\n2\noops\n4\n");
    r = run("scan --input " + broken.string() + " --method cusum --out " + profile.string());
    check(r.exit_code == 2, "non-numeric row exits 2");
    check(r.err.find("line 3") != std::string::npos, "line number in the message");

    // missing input file is an I/O failure
    r = run("estimate --input " + (g_dir / "missing.csv").string() + " --method cusum");
    check(r.exit_code == 3, "missing input exits 3");

    // bad usage
    r = run("estimate --input " + input.string() + " --method mean");
    check(r.exit_code == 2, "unknown method exits 2");
    r = run("");
    check(r.exit_code == 2, "missing subcommand exits 2");
}

void test_theory() {
    RunResult r = run("theory theta-delta --dist normal --delta 0.01");
    check(r.exit_code == 0, "theta-delta exits 0");
    check(std::fabs(std::strtod(r.out.c_str(), nullptr) - 0.00282092441) < 1e-9,
          "theta-delta normal 0.01");

    r = run("theory theta-delta --dist uniform --delta 0.1");
    check(std::fabs(std::strtod(r.out.c_str(), nullptr) - 0.095) < 1e-10,
          "theta-delta uniform 0.1");

    r = run("theory theta-delta --dist normal --delta -1");
    check(r.exit_code == 2, "negative delta exits 2");

    r = run("theory ned-constants --rho 0.4 --k-max 5");
    check(r.exit_code == 0, "ned-constants exits 0");
    check(r.out.rfind("k,a_k\n0,1.063846081\n", 0) == 0, "ned-constants a_0");

    r = run("theory summability --a-geom 0.4 --beta-geom 0.4 --k-max 100");
    check(r.exit_code == 0, "summability exits 0");
    check(r.out.find("converges=true") != std::string::npos, "geometric tails certify");

    r = run("theory summability --a-power 2 --beta-zero --k-max 2000");
    check(r.out.find("converges=false") != std::string::npos,
          "k^-2 sequence flagged divergent");

    r = run("theory summability --k-max 10");
    check(r.exit_code == 2, "summability without sequence choices exits 2");

    const fs::path latent = g_dir / "latent.csv";
    write_file(latent, "0.4\n-1.0\n0.9\n0.1\n-0.6\n1.3\n");
    r = run("theory decompose --input " + latent.string() + " --k-star 2 --delta 0");
    check(r.exit_code == 0, "decompose exits 0");
    check(r.out.rfind("k,two_w_x,two_u_y,shift_count,identity_holds\n", 0) == 0,
          "decompose header");
    check(r.out.find(",0,1\n") != std::string::npos, "zero shift counts at delta 0");
    std::size_t rows = 0;
    for (char c : r.out) {
        if (c == '\n') ++rows;
    }
    check(rows == 6, "decompose row per split");
}

void test_simulate() {
    const fs::path cfg = g_dir / "cfg.json";
    write_file(cfg, R"({
  "schema_version": 1,
  "experiment": { "replications": 1, "master_seed": 9 },
  "model": { "n": 30, "theta": 0.5, "delta": 2.0, "rho": 0.4, "innovation": "normal" }
})");

    const fs::path out1 = g_dir / "sim1";
    const fs::path out2 = g_dir / "sim2";
    RunResult r = run("simulate --config " + cfg.string() + " --out " + out1.string());
    check(r.exit_code == 0, "simulate exits 0");

    const std::string outcomes = slurp(out1 / "outcomes.csv");
    std::size_t rows = 0;
    for (char c : outcomes) {
        if (c == '\n') ++rows;
    }
    check(rows == 3, "outcomes.csv has a header plus one row per method at R=1");

    r = run("simulate --config " + cfg.string() + " --out " + out2.string() +
            " --workers 2");
    check(r.exit_code == 0, "simulate rerun exits 0");
    check(slurp(out1 / "summary.csv") == slurp(out2 / "summary.csv"),
          "summary.csv byte-identical across runs");
    check(slurp(out1 / "outcomes.csv") == slurp(out2 / "outcomes.csv"),
          "outcomes.csv byte-identical across runs");
    check(slurp(out1 / "histogram.csv") == slurp(out2 / "histogram.csv"),
          "histogram.csv byte-identical across runs");

    // worker count from the environment fallback
    const fs::path out3 = g_dir / "sim3";
    const std::string saved_cli = g_cli;
    g_cli = "CPWX_WORKERS=3 " + g_cli;
    r = run("simulate --config " + cfg.string() + " --out " + out3.string());
    g_cli = saved_cli;
    check(r.exit_code == 0, "simulate with CPWX_WORKERS exits 0");
    check(slurp(out1 / "outcomes.csv") == slurp(out3 / "outcomes.csv"),
          "CPWX_WORKERS run byte-identical");

    // schema violation
    const fs::path bad = g_dir / "bad.json";
    write_file(bad, R"({"schema_version": 1, "experiment": {}, "model": {}})");
    r = run("simulate --config " + bad.string() + " --out " + (g_dir / "simbad").string());
    check(r.exit_code == 2, "schema violation exits 2");

    // unreadable config
    r = run("simulate --config " + (g_dir / "missing.json").string() + " --out " +
            (g_dir / "simbad").string());
    check(r.exit_code == 3, "missing config exits 3");

    // unwritable output directory
    r = run("simulate --config " + cfg.string() + " --out /proc/cpwx_forbidden/out");
    check(r.exit_code == 3, "unwritable output dir exits 3");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cpwx_cli_tests <path-to-cpwx-binary>\n";
        return 2;
    }
    g_cli = argv[1];
    g_dir = fs::temp_directory_path() / ("cpwx_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    test_scan_and_estimate();
    test_theory();
    test_simulate();

    fs::remove_all(g_dir);
    if (g_failures == 0) {
        std::cout << "all cli checks passed\n";
        return 0;
    }
    std::cout << g_failures << " cli check(s) failed\n";
    return 1;
}
