// cpwx command-line tool: simulation experiments, scans/estimates on CSV
// series, and theory diagnostics. Talks to the library through the C API.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpwx.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int exit_code_for(int rc) {
    switch (rc) {
    case CPWX_OK: return 0;
    case CPWX_ERR_INVALID:
    case CPWX_ERR_CONFIG: return kExitUsage;
    case CPWX_ERR_IO: return kExitIo;
    default: return 1;
    }
}

int report_api_error(int rc) {
    std::cerr << "error: " << cpwx_last_error() << "\n";
    return exit_code_for(rc);
}

std::string fmt10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// W value as an exact multiple of 0.5, rendered from the doubled integer.
std::string half_integer_text(std::int64_t doubled) {
    const bool negative = doubled < 0;
    const std::uint64_t mag = negative ? -static_cast<std::uint64_t>(doubled)
                                       : static_cast<std::uint64_t>(doubled);
    std::string s = negative ? "-" : "";
    s += std::to_string(mag / 2);
    if (mag % 2 != 0) s += ".5";
    return s;
}

std::string trimmed(const std::string& line) {
    std::size_t b = 0, e = line.size();
    while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    return line.substr(b, e - b);
}

// One numeric value per line; an optional leading "value" header and blank
// lines are skipped. Returns the exit code, 0 on success.
int read_series_csv(const std::string& path, std::vector<double>& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open input file: " << path << "\n";
        return kExitIo;
    }
    out.clear();
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trimmed(line);
        if (t.empty()) continue;
        if (first_content && t == "value") {
            first_content = false;
            continue;
        }
        first_content = false;
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size()) {
            std::cerr << "error: non-numeric value at line " << line_no << ": '" << t
                      << "'\n";
            return kExitUsage;
        }
        out.push_back(v);
    }
    if (in.bad()) {
        std::cerr << "error: failed reading input file: " << path << "\n";
        return kExitIo;
    }
    return 0;
}

int method_id(const std::string& name) {
    return name == "wilcoxon" ? CPWX_METHOD_WILCOXON : CPWX_METHOD_CUSUM;
}

int resolve_workers(std::optional<int> flag_value) {
    if (flag_value) return *flag_value;
    if (const char* env = std::getenv("CPWX_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
        std::cerr << "warning: ignoring invalid CPWX_WORKERS value '" << env << "'\n";
    }
    return 0; // library default: hardware concurrency
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<int> workers_flag) {
    cpwx_experiment* exp = nullptr;
    int rc = cpwx_experiment_run_file(config_path.c_str(), resolve_workers(workers_flag),
                                      &exp);
    if (rc != CPWX_OK) return report_api_error(rc);
    rc = cpwx_experiment_write_outputs(exp, out_dir.c_str());
    cpwx_experiment_free(exp);
    if (rc != CPWX_OK) return report_api_error(rc);
    return 0;
}

int check_not_empty(const std::vector<double>& x, const std::string& path) {
    if (!x.empty()) return 0;
    std::cerr << "error: no values in input file: " << path << "\n";
    return kExitUsage;
}

int run_scan(const std::string& input, const std::string& method, const std::string& out_path) {
    std::vector<double> x;
    if (int code = read_series_csv(input, x); code != 0) return code;
    if (int code = check_not_empty(x, input); code != 0) return code;

    // compute first so a rejected input leaves no partial output file
    std::vector<std::string> rows;
    if (method == "wilcoxon") {
        std::vector<std::int64_t> doubled(x.size() < 2 ? 1 : x.size() - 1);
        const int rc = cpwx_wilcoxon_scan(x.data(), x.size(), doubled.data());
        if (rc != CPWX_OK) return report_api_error(rc);
        for (std::size_t k = 1; k < x.size(); ++k) {
            rows.push_back(half_integer_text(doubled[k - 1]));
        }
    } else {
        std::vector<double> values(x.size() < 2 ? 1 : x.size() - 1);
        const int rc = cpwx_cusum_scan(x.data(), x.size(), values.data());
        if (rc != CPWX_OK) return report_api_error(rc);
        for (std::size_t k = 1; k < x.size(); ++k) {
            rows.push_back(fmt10(values[k - 1]));
        }
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return kExitIo;
    }
    out << "k,statistic\n";
    for (std::size_t k = 0; k < rows.size(); ++k) out << k + 1 << ',' << rows[k] << '\n';
    out.flush();
    if (!out) {
        std::cerr << "error: failed writing output file: " << out_path << "\n";
        return kExitIo;
    }
    return 0;
}

int run_estimate(const std::string& input, const std::string& method) {
    std::vector<double> x;
    if (int code = read_series_csv(input, x); code != 0) return code;
    if (int code = check_not_empty(x, input); code != 0) return code;

    size_t k_hat = 0;
    double theta_hat = 0.0;
    const int rc = cpwx_estimate(x.data(), x.size(), method_id(method), &k_hat, &theta_hat,
                                 nullptr);
    if (rc != CPWX_OK) return report_api_error(rc);

    bool constant = true;
    for (double v : x) {
        if (v != x[0]) {
            constant = false;
            break;
        }
    }
    if (constant) {
        std::cerr << "warning: degenerate profile (all observations equal); "
                     "k_hat is a tie-break artifact\n";
    }
    std::cout << "k_hat=" << k_hat << " theta_hat=" << fmt10(theta_hat) << "\n";
    return 0;
}

int run_theta_delta(const std::string& dist, double delta) {
    double value = 0.0;
    const int d = dist == "normal" ? CPWX_DIST_NORMAL : CPWX_DIST_UNIFORM;
    const int rc = cpwx_theta_delta(d, delta, &value);
    if (rc != CPWX_OK) return report_api_error(rc);
    std::cout << fmt10(value) << "\n";
    return 0;
}

int run_ned_constants(double rho, std::size_t k_max, double abs_mean_z) {
    std::vector<double> a(k_max + 1);
    const double psi0 = 1.0; // psi_j = rho^j
    const int rc = cpwx_ned_constants(&psi0, 1, rho, abs_mean_z, k_max, a.data());
    if (rc != CPWX_OK) return report_api_error(rc);
    std::cout << "k,a_k\n";
    for (std::size_t k = 0; k <= k_max; ++k) std::cout << k << ',' << fmt10(a[k]) << '\n';
    return 0;
}

struct SequenceChoice {
    std::optional<double> geom;   // s_k = r^k, certifiable tail
    std::optional<double> power;  // s_k = k^-p
    bool zero = false;
    std::string file;
};

// Builds s_1..s_k_max; returns the geometric tail ratio or a negative value.
int build_sequence(const SequenceChoice& c, std::size_t k_max, const char* name,
                   std::vector<double>& seq, double& tail_ratio) {
    tail_ratio = -1.0;
    seq.assign(k_max, 0.0);
    const int picked = (c.geom ? 1 : 0) + (c.power ? 1 : 0) + (c.zero ? 1 : 0) +
                       (c.file.empty() ? 0 : 1);
    if (picked != 1) {
        std::cerr << "error: choose exactly one of --" << name << "-geom, --" << name
                  << "-power, --" << name << "-zero, --" << name << "-file\n";
        return kExitUsage;
    }
    if (c.geom) {
        for (std::size_t k = 1; k <= k_max; ++k) {
            seq[k - 1] = std::pow(*c.geom, static_cast<double>(k));
        }
        tail_ratio = *c.geom;
    } else if (c.power) {
        for (std::size_t k = 1; k <= k_max; ++k) {
            seq[k - 1] = std::pow(static_cast<double>(k), -*c.power);
        }
    } else if (!c.file.empty()) {
        std::vector<double> vals;
        if (int code = read_series_csv(c.file, vals); code != 0) return code;
        if (vals.size() < k_max) {
            std::cerr << "error: " << c.file << " supplies " << vals.size()
                      << " values, need k_max = " << k_max << "\n";
            return kExitUsage;
        }
        std::copy(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(k_max),
                  seq.begin());
    }
    // --zero keeps the zero fill; its tail is certifiably empty
    return 0;
}

int run_summability(const SequenceChoice& a_choice, const SequenceChoice& beta_choice,
                    std::size_t k_max) {
    std::vector<double> a, beta;
    double a_ratio = -1.0, beta_ratio = -1.0;
    if (int code = build_sequence(a_choice, k_max, "a", a, a_ratio); code != 0) return code;
    if (int code = build_sequence(beta_choice, k_max, "beta", beta, beta_ratio); code != 0) {
        return code;
    }

    double partial = 0.0, tail = 0.0;
    int verdict = CPWX_SUM_UNKNOWN;
    const int rc = cpwx_check_summability(a.data(), beta.data(), k_max, a_ratio, beta_ratio,
                                          &partial, &tail, &verdict);
    if (rc != CPWX_OK) return report_api_error(rc);

    std::cout << "partial_sum=" << fmt10(partial) << "\n";
    std::cout << "tail_bound=" << (std::isnan(tail) ? std::string("na") : fmt10(tail))
              << "\n";
    const char* text = verdict == CPWX_SUM_CERTIFIED
                           ? "true"
                           : (verdict == CPWX_SUM_DIVERGENT ? "false" : "unknown");
    std::cout << "converges=" << text << "\n";
    return 0;
}

int run_decompose(const std::string& input, std::size_t k_star, double delta, double mu) {
    std::vector<double> y;
    if (int code = read_series_csv(input, y); code != 0) return code;
    if (int code = check_not_empty(y, input); code != 0) return code;

    const std::size_t rows = y.size() < 2 ? 1 : y.size() - 1;
    std::vector<std::int64_t> two_w(rows), two_u(rows), shift(rows);
    std::vector<int> holds(rows);
    const int rc = cpwx_decompose(y.data(), y.size(), k_star, delta, mu, two_w.data(),
                                  two_u.data(), shift.data(), holds.data());
    if (rc != CPWX_OK) return report_api_error(rc);

    std::cout << "k,two_w_x,two_u_y,shift_count,identity_holds\n";
    for (std::size_t k = 1; k < y.size(); ++k) {
        std::cout << k << ',' << two_w[k - 1] << ',' << two_u[k - 1] << ',' << shift[k - 1]
                  << ',' << holds[k - 1] << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Change-point location estimation in dependent time series"};
    app.require_subcommand(1);

    // simulate
    std::string config_path, out_dir;
    std::optional<int> workers_flag;
    auto* simulate = app.add_subcommand("simulate", "Run a replicated experiment from a "
                                                    "config file and write CSV outputs");
    simulate->add_option("--config", config_path, "JSON configuration file")->required();
    simulate->add_option("--out", out_dir, "output directory")->required();
    simulate->add_option("--workers", workers_flag,
                         "worker threads (0 = auto; CPWX_WORKERS is the fallback)");

    // scan
    std::string scan_input, scan_method, scan_out;
    auto* scan = app.add_subcommand("scan", "Write the per-split statistic profile of a "
                                            "series");
    scan->add_option("--input", scan_input, "input CSV, one value per line")->required();
    scan->add_option("--method", scan_method, "wilcoxon or cusum")
        ->required()
        ->check(CLI::IsMember({"wilcoxon", "cusum"}));
    scan->add_option("--out", scan_out, "output CSV")->required();

    // estimate
    std::string est_input, est_method;
    auto* estimate = app.add_subcommand("estimate", "Estimate the change-point location of "
                                                    "a series");
    estimate->add_option("--input", est_input, "input CSV, one value per line")->required();
    estimate->add_option("--method", est_method, "wilcoxon or cusum")
        ->required()
        ->check(CLI::IsMember({"wilcoxon", "cusum"}));

    // theory
    auto* theory = app.add_subcommand("theory", "Numerical diagnostics");
    theory->require_subcommand(1);

    std::string td_dist = "normal";
    double td_delta = 0.0;
    auto* theta_delta = theory->add_subcommand("theta-delta",
                                               "Probability of landing in (Y, Y+delta]");
    theta_delta->add_option("--dist", td_dist, "normal or uniform")
        ->check(CLI::IsMember({"normal", "uniform"}));
    theta_delta->add_option("--delta", td_delta, "shift size, >= 0")->required();

    double ned_rho = 0.0, ned_abs_mean_z = 0.7978845608028654; // E|Z| for standard normal Z
    std::size_t ned_k_max = 10;
    auto* ned = theory->add_subcommand(
        "ned-constants", "Approximation constants a_k of the AR(1)-type linear process "
                         "psi_j = rho^j");
    ned->add_option("--rho", ned_rho, "geometric coefficient ratio, |rho| < 1")->required();
    ned->add_option("--k-max", ned_k_max, "largest k");
    ned->add_option("--abs-mean-z", ned_abs_mean_z, "E|Z_1| of the innovations");

    SequenceChoice a_choice, beta_choice;
    std::size_t sum_k_max = 1000;
    auto* summability = theory->add_subcommand(
        "summability", "Partial sum and verdict for sum k^2 (beta_k + sqrt(a_k))");
    summability->add_option("--k-max", sum_k_max, "window length");
    summability->add_option("--a-geom", a_choice.geom, "a_k = r^k");
    summability->add_option("--a-power", a_choice.power, "a_k = k^-p");
    summability->add_flag("--a-zero", a_choice.zero, "a_k = 0");
    summability->add_option("--a-file", a_choice.file, "a_k from CSV");
    summability->add_option("--beta-geom", beta_choice.geom, "beta_k = r^k");
    summability->add_option("--beta-power", beta_choice.power, "beta_k = k^-p");
    summability->add_flag("--beta-zero", beta_choice.zero, "beta_k = 0");
    summability->add_option("--beta-file", beta_choice.file, "beta_k from CSV");

    std::string dec_input;
    std::size_t dec_k_star = 0;
    double dec_delta = 0.0, dec_mu = 0.0;
    auto* decompose = theory->add_subcommand(
        "decompose", "Verify the exact scan split on a latent series per split point");
    decompose->add_option("--input", dec_input, "latent series CSV")->required();
    decompose->add_option("--k-star", dec_k_star, "change location, 1..n-1")->required();
    decompose->add_option("--delta", dec_delta, "mean shift, >= 0")->required();
    decompose->add_option("--mu", dec_mu, "base mean");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (simulate->parsed()) return run_simulate(config_path, out_dir, workers_flag);
    if (scan->parsed()) return run_scan(scan_input, scan_method, scan_out);
    if (estimate->parsed()) return run_estimate(est_input, est_method);
    if (theta_delta->parsed()) return run_theta_delta(td_dist, td_delta);
    if (ned->parsed()) return run_ned_constants(ned_rho, ned_k_max, ned_abs_mean_z);
    if (summability->parsed()) return run_summability(a_choice, beta_choice, sum_k_max);
    if (decompose->parsed()) return run_decompose(dec_input, dec_k_star, dec_delta, dec_mu);

    return kExitUsage;
}
