#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cpwx.h"

namespace {

const char* kTinyConfig = R"({
  "schema_version": 1,
  "experiment": { "replications": 8, "master_seed": 11, "histogram_bins": 5 },
  "model": { "n": 60, "theta": 0.5, "delta": 3.0, "rho": 0.0, "innovation": "normal" }
})";

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("scan and estimate through the C API") {
    const double x[] = {0.0, 0.0, 1.0, 1.0};

    int64_t doubled[3] = {0, 0, 0};
    REQUIRE(cpwx_wilcoxon_scan(x, 4, doubled) == CPWX_OK);
    CHECK(doubled[0] == 3);
    CHECK(doubled[1] == 4);
    CHECK(doubled[2] == 3);

    double d[3];
    REQUIRE(cpwx_cusum_scan(x, 4, d) == CPWX_OK);
    CHECK(d[0] == doctest::Approx(-0.5));
    CHECK(d[1] == doctest::Approx(-1.0));
    CHECK(d[2] == doctest::Approx(-0.5));

    size_t k_hat = 0;
    double theta_hat = 0.0, max_abs = 0.0;
    REQUIRE(cpwx_estimate(x, 4, CPWX_METHOD_WILCOXON, &k_hat, &theta_hat, &max_abs) ==
            CPWX_OK);
    CHECK(k_hat == 2);
    CHECK(theta_hat == 0.5);
    CHECK(max_abs == 2.0);
    REQUIRE(cpwx_estimate(x, 4, CPWX_METHOD_CUSUM, &k_hat, &theta_hat, nullptr) == CPWX_OK);
    CHECK(k_hat == 2);
}

TEST_CASE("error codes and messages") {
    const double one[] = {1.0};
    int64_t sink[1];
    CHECK(cpwx_wilcoxon_scan(one, 1, sink) == CPWX_ERR_INVALID);
    CHECK(std::strlen(cpwx_last_error()) > 0);

    CHECK(cpwx_wilcoxon_scan(nullptr, 4, sink) == CPWX_ERR_INVALID);
    CHECK(cpwx_estimate(one, 1, 99, nullptr, nullptr, nullptr) == CPWX_ERR_INVALID);

    const double nan_series[] = {0.0, std::nan("")};
    CHECK(cpwx_wilcoxon_scan(nan_series, 2, sink) == CPWX_ERR_INVALID);

    cpwx_experiment* exp = nullptr;
    CHECK(cpwx_experiment_run_json("{ not json", 1, &exp) == CPWX_ERR_CONFIG);
    CHECK(exp == nullptr);
    CHECK(cpwx_experiment_run_file("/nonexistent/cfg.json", 1, &exp) == CPWX_ERR_IO);

    // after a success the message clears
    double v = 0.0;
    REQUIRE(cpwx_theta_delta(CPWX_DIST_UNIFORM, 0.0, &v) == CPWX_OK);
    CHECK(std::strlen(cpwx_last_error()) == 0);
}

TEST_CASE("experiment lifecycle through the C API") {
    cpwx_experiment* exp = nullptr;
    REQUIRE(cpwx_experiment_run_json(kTinyConfig, 2, &exp) == CPWX_OK);
    REQUIRE(exp != nullptr);

    size_t r = 0, methods = 0, bins = 0;
    REQUIRE(cpwx_experiment_replications(exp, &r) == CPWX_OK);
    CHECK(r == 8);
    REQUIRE(cpwx_experiment_method_count(exp, &methods) == CPWX_OK);
    CHECK(methods == 2);
    int m = -1;
    REQUIRE(cpwx_experiment_method_at(exp, 0, &m) == CPWX_OK);
    CHECK(m == CPWX_METHOD_WILCOXON);
    CHECK(cpwx_experiment_method_at(exp, 2, &m) == CPWX_ERR_INVALID);

    double mean = 0.0, sd = 0.0;
    REQUIRE(cpwx_experiment_mean_sd(exp, CPWX_METHOD_WILCOXON, &mean, &sd) == CPWX_OK);
    // delta = 3 with unit noise pins theta_hat at 0.5 almost surely
    CHECK(mean == doctest::Approx(0.5).epsilon(0.05));

    std::vector<double> thetas(r);
    std::vector<size_t> k_hats(r);
    REQUIRE(cpwx_experiment_outcomes(exp, CPWX_METHOD_CUSUM, thetas.data(), k_hats.data()) ==
            CPWX_OK);
    for (size_t i = 0; i < r; ++i) {
        CHECK(thetas[i] == doctest::Approx(static_cast<double>(k_hats[i]) / 60.0));
    }

    REQUIRE(cpwx_experiment_histogram_bins(exp, &bins) == CPWX_OK);
    CHECK(bins == 5);
    std::vector<double> edges(bins + 1);
    std::vector<uint64_t> counts(bins);
    REQUIRE(cpwx_experiment_histogram(exp, CPWX_METHOD_WILCOXON, edges.data(),
                                      counts.data()) == CPWX_OK);
    uint64_t total = 0;
    for (auto c : counts) total += c;
    CHECK(total == r);
    CHECK(edges.front() == 0.0);
    CHECK(edges.back() == 1.0);

    const auto dir = std::filesystem::temp_directory_path() / "cpwx_capi_out";
    std::filesystem::remove_all(dir);
    REQUIRE(cpwx_experiment_write_outputs(exp, dir.string().c_str()) == CPWX_OK);
    CHECK(slurp(dir / "summary.csv").starts_with(
        "method,n,theta,delta,rho,innovation,outliers,R,mean,sd\n"));
    std::filesystem::remove_all(dir);

    cpwx_experiment_free(exp);
}

TEST_CASE("theory calls through the C API") {
    double v = 0.0;
    REQUIRE(cpwx_theta_delta(CPWX_DIST_UNIFORM, 0.1, &v) == CPWX_OK);
    CHECK(v == doctest::Approx(0.095).epsilon(1e-9));
    CHECK(cpwx_theta_delta(CPWX_DIST_UNIFORM, -1.0, &v) == CPWX_ERR_INVALID);
    CHECK(cpwx_theta_delta(42, 0.1, &v) == CPWX_ERR_INVALID);

    REQUIRE(cpwx_hoeffding_h1(CPWX_DIST_NORMAL, 0.0, &v) == CPWX_OK);
    CHECK(v == doctest::Approx(0.0).epsilon(1e-14));
    REQUIRE(cpwx_hoeffding_h1n(CPWX_DIST_NORMAL, 0.3, 0.0, &v) == CPWX_OK);
    CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(cpwx_degenerate_g(CPWX_DIST_NORMAL, 0.0, 0.0, &v) == CPWX_OK);
    CHECK(v == doctest::Approx(0.5));
    REQUIRE(cpwx_degenerate_gn(CPWX_DIST_UNIFORM, 0.5, 0.45, 0.1, &v) == CPWX_OK);
    CHECK(std::isfinite(v));

    const double psi0 = 1.0;
    double a[4];
    REQUIRE(cpwx_ned_constants(&psi0, 1, 0.4, 0.7978845608028654, 3, a) == CPWX_OK);
    CHECK(a[0] == doctest::Approx(1.0638460810704872).epsilon(1e-12));

    double seq_a[20], seq_b[20];
    for (int k = 1; k <= 20; ++k) {
        seq_a[k - 1] = std::pow(0.4, k);
        seq_b[k - 1] = std::pow(0.4, k);
    }
    double partial = 0.0, tail = 0.0;
    int verdict = -1;
    REQUIRE(cpwx_check_summability(seq_a, seq_b, 20, 0.4, 0.4, &partial, &tail, &verdict) ==
            CPWX_OK);
    CHECK(verdict == CPWX_SUM_CERTIFIED);
    CHECK(partial > 0.0);

    REQUIRE(cpwx_check_summability(seq_a, seq_b, 20, -1.0, -1.0, &partial, &tail,
                                   &verdict) == CPWX_OK);
    CHECK(verdict == CPWX_SUM_UNKNOWN);
}

TEST_CASE("decompose through the C API") {
    const double y[] = {0.4, -1.0, 0.9, 0.1, -0.6, 1.3, 0.2, -0.2};
    const size_t n = 8;
    int64_t two_w[7], two_u[7], shift[7];
    int holds[7];
    REQUIRE(cpwx_decompose(y, n, 3, 0.75, 0.5, two_w, two_u, shift, holds) == CPWX_OK);
    for (size_t k = 0; k + 1 < n; ++k) {
        CHECK(holds[k] == 1);
        CHECK(two_w[k] == two_u[k] + 2 * shift[k]);
    }

    // delta = 0: scans coincide
    REQUIRE(cpwx_decompose(y, n, 3, 0.0, 0.5, two_w, two_u, shift, holds) == CPWX_OK);
    for (size_t k = 0; k + 1 < n; ++k) {
        CHECK(shift[k] == 0);
        CHECK(two_w[k] == two_u[k]);
    }

    CHECK(cpwx_decompose(y, n, 0, 0.5, 0.0, two_w, two_u, shift, holds) ==
          CPWX_ERR_INVALID);
    CHECK(cpwx_decompose(y, n, 3, -0.5, 0.0, two_w, two_u, shift, holds) ==
          CPWX_ERR_INVALID);
}
