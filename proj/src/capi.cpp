#include "cpwx.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "cpwx/config.hpp"
#include "cpwx/errors.hpp"
#include "cpwx/montecarlo.hpp"
#include "cpwx/report.hpp"
#include "cpwx/scan.hpp"
#include "cpwx/theory.hpp"

struct cpwx_experiment {
    cpwx::ExperimentResult result;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
    g_last_error = what;
    return code;
}

// Runs the body, translating exceptions into error codes.
template <typename Fn>
int guarded(Fn&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const cpwx::ConfigError& e) {
        return fail(CPWX_ERR_CONFIG, e.what());
    } catch (const cpwx::IoError& e) {
        return fail(CPWX_ERR_IO, e.what());
    } catch (const cpwx::ValidationError& e) {
        return fail(CPWX_ERR_INVALID, e.what());
    } catch (const std::bad_alloc&) {
        return fail(CPWX_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(CPWX_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CPWX_ERR_INTERNAL, "unknown failure");
    }
}

int require_nonnull(const void* p, const char* name) {
    if (p != nullptr) return CPWX_OK;
    return fail(CPWX_ERR_INVALID, (std::string(name) + " must not be NULL").c_str());
}

bool to_method(int m, cpwx::Method& out) {
    if (m == CPWX_METHOD_WILCOXON) {
        out = cpwx::Method::wilcoxon;
        return true;
    }
    if (m == CPWX_METHOD_CUSUM) {
        out = cpwx::Method::cusum;
        return true;
    }
    return false;
}

bool to_dist(int d, cpwx::DistModel& out) {
    if (d == CPWX_DIST_NORMAL) {
        out.kind = cpwx::Dist::normal01;
        return true;
    }
    if (d == CPWX_DIST_UNIFORM) {
        out.kind = cpwx::Dist::uniform01;
        return true;
    }
    return false;
}

int method_code(cpwx::Method m) {
    return m == cpwx::Method::wilcoxon ? CPWX_METHOD_WILCOXON : CPWX_METHOD_CUSUM;
}

// Finds the position of `method` in the experiment's configured method list.
int find_method(const cpwx_experiment* exp, int method, std::size_t& pos) {
    cpwx::Method m;
    if (!to_method(method, m)) return fail(CPWX_ERR_INVALID, "unknown method identifier");
    const auto& methods = exp->result.spec.methods;
    for (std::size_t i = 0; i < methods.size(); ++i) {
        if (methods[i] == m) {
            pos = i;
            return CPWX_OK;
        }
    }
    return fail(CPWX_ERR_INVALID, "method was not part of the experiment");
}

std::optional<cpwx::GeometricTail> tail_from_ratio(double ratio) {
    if (ratio < 0.0) return std::nullopt;
    return cpwx::GeometricTail{ratio};
}

} // namespace

extern "C" {

const char* cpwx_last_error(void) { return g_last_error.c_str(); }

int cpwx_wilcoxon_scan(const double* x, size_t n, int64_t* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(x, "x"); rc != CPWX_OK) return rc;
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        const cpwx::ScanProfile p = cpwx::wilcoxon_scan({x, n});
        std::memcpy(out, p.wilcoxon_doubled.data(), (n - 1) * sizeof(int64_t));
        return CPWX_OK;
    });
}

int cpwx_cusum_scan(const double* x, size_t n, double* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(x, "x"); rc != CPWX_OK) return rc;
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        const cpwx::ScanProfile p = cpwx::cusum_scan({x, n});
        std::memcpy(out, p.cusum_values.data(), (n - 1) * sizeof(double));
        return CPWX_OK;
    });
}

int cpwx_estimate(const double* x, size_t n, int method, size_t* k_hat, double* theta_hat,
                  double* max_abs) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(x, "x"); rc != CPWX_OK) return rc;
        cpwx::Method m;
        if (!to_method(method, m)) return fail(CPWX_ERR_INVALID, "unknown method identifier");
        const cpwx::EstimateResult r = cpwx::estimate_changepoint({x, n}, m);
        if (k_hat) *k_hat = r.k_hat;
        if (theta_hat) *theta_hat = r.theta_hat;
        if (max_abs) *max_abs = r.max_abs_value;
        return CPWX_OK;
    });
}

int cpwx_experiment_run_json(const char* config_json, int workers, cpwx_experiment** out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(config_json, "config_json"); rc != CPWX_OK) return rc;
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        if (workers < 0) return fail(CPWX_ERR_INVALID, "workers must be >= 0");
        const cpwx::ExperimentSpec spec = cpwx::parse_experiment_config(config_json);
        auto handle = std::make_unique<cpwx_experiment>();
        handle->result = cpwx::run_experiment(spec, static_cast<unsigned>(workers));
        *out = handle.release();
        return CPWX_OK;
    });
}

int cpwx_experiment_run_file(const char* config_path, int workers, cpwx_experiment** out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(config_path, "config_path"); rc != CPWX_OK) return rc;
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        if (workers < 0) return fail(CPWX_ERR_INVALID, "workers must be >= 0");
        const cpwx::ExperimentSpec spec = cpwx::load_experiment_config(config_path);
        auto handle = std::make_unique<cpwx_experiment>();
        handle->result = cpwx::run_experiment(spec, static_cast<unsigned>(workers));
        *out = handle.release();
        return CPWX_OK;
    });
}

void cpwx_experiment_free(cpwx_experiment* exp) { delete exp; }

int cpwx_experiment_write_outputs(const cpwx_experiment* exp, const char* out_dir) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(exp, "exp"); rc != CPWX_OK) return rc;
        if (int rc = require_nonnull(out_dir, "out_dir"); rc != CPWX_OK) return rc;
        cpwx::write_experiment_outputs(exp->result, out_dir);
        return CPWX_OK;
    });
}

int cpwx_experiment_replications(const cpwx_experiment* exp, size_t* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(exp, "exp"); rc != CPWX_OK) return rc;
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        *out = exp->result.spec.replications;
        return CPWX_OK;
    });
}

int cpwx_experiment_method_count(const cpwx_experiment* exp, size_t* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(exp, "exp"); rc != CPWX_OK) return rc;
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        *out = exp->result.spec.methods.size();
        return CPWX_OK;
    });
}

int cpwx_experiment_method_at(const cpwx_experiment* exp, size_t index, int* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(exp, "exp"); rc != CPWX_OK) return rc;
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        const auto& methods = exp->result.spec.methods;
        if (index >= methods.size()) return fail(CPWX_ERR_INVALID, "method index out of range");
        *out = method_code(methods[index]);
        return CPWX_OK;
    });
}

int cpwx_experiment_mean_sd(const cpwx_experiment* exp, int method, double* mean, double* sd) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(exp, "exp"); rc != CPWX_OK) return rc;
        std::size_t pos;
        if (int rc = find_method(exp, method, pos); rc != CPWX_OK) return rc;
        const cpwx::McSummary& s = exp->result.summaries[pos];
        if (mean) *mean = s.mean_theta_hat;
        if (sd) *sd = s.sd_theta_hat;
        return CPWX_OK;
    });
}

int cpwx_experiment_outcomes(const cpwx_experiment* exp, int method, double* thetas,
                             size_t* k_hats) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(exp, "exp"); rc != CPWX_OK) return rc;
        std::size_t pos;
        if (int rc = find_method(exp, method, pos); rc != CPWX_OK) return rc;
        const auto& outcomes = exp->result.outcomes;
        for (std::size_t r = 0; r < outcomes.size(); ++r) {
            const cpwx::EstimateResult& e = outcomes[r].estimates[pos];
            if (thetas) thetas[r] = e.theta_hat;
            if (k_hats) k_hats[r] = e.k_hat;
        }
        return CPWX_OK;
    });
}

int cpwx_experiment_histogram_bins(const cpwx_experiment* exp, size_t* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(exp, "exp"); rc != CPWX_OK) return rc;
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        *out = exp->result.spec.histogram_bins;
        return CPWX_OK;
    });
}

int cpwx_experiment_histogram(const cpwx_experiment* exp, int method, double* edges,
                              uint64_t* counts) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(exp, "exp"); rc != CPWX_OK) return rc;
        std::size_t pos;
        if (int rc = find_method(exp, method, pos); rc != CPWX_OK) return rc;
        const cpwx::McSummary& s = exp->result.summaries[pos];
        if (edges) std::memcpy(edges, s.bin_edges.data(), s.bin_edges.size() * sizeof(double));
        if (counts) std::memcpy(counts, s.counts.data(), s.counts.size() * sizeof(uint64_t));
        return CPWX_OK;
    });
}

int cpwx_theta_delta(int dist, double delta, double* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        cpwx::DistModel f;
        if (!to_dist(dist, f)) return fail(CPWX_ERR_INVALID, "unknown distribution identifier");
        *out = cpwx::theta_delta(f, delta);
        return CPWX_OK;
    });
}

int cpwx_hoeffding_h1(int dist, double x, double* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        cpwx::DistModel f;
        if (!to_dist(dist, f)) return fail(CPWX_ERR_INVALID, "unknown distribution identifier");
        *out = cpwx::hoeffding_h1(x, f);
        return CPWX_OK;
    });
}

int cpwx_hoeffding_h1n(int dist, double x, double delta, double* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        cpwx::DistModel f;
        if (!to_dist(dist, f)) return fail(CPWX_ERR_INVALID, "unknown distribution identifier");
        *out = cpwx::hoeffding_h1n(x, f, delta);
        return CPWX_OK;
    });
}

int cpwx_degenerate_g(int dist, double x, double y, double* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        cpwx::DistModel f;
        if (!to_dist(dist, f)) return fail(CPWX_ERR_INVALID, "unknown distribution identifier");
        *out = cpwx::degenerate_g(x, y, f);
        return CPWX_OK;
    });
}

int cpwx_degenerate_gn(int dist, double x, double y, double delta, double* out) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        cpwx::DistModel f;
        if (!to_dist(dist, f)) return fail(CPWX_ERR_INVALID, "unknown distribution identifier");
        *out = cpwx::degenerate_gn(x, y, f, delta);
        return CPWX_OK;
    });
}

int cpwx_ned_constants(const double* psi, size_t psi_len, double tail_ratio,
                       double abs_mean_z, size_t k_max, double* out) {
    return guarded([&]() -> int {
        if (psi_len > 0) {
            if (int rc = require_nonnull(psi, "psi"); rc != CPWX_OK) return rc;
        }
        if (int rc = require_nonnull(out, "out"); rc != CPWX_OK) return rc;
        cpwx::LinearProcessSpec spec;
        spec.psi.assign(psi, psi + psi_len);
        spec.tail = tail_from_ratio(tail_ratio);
        spec.abs_mean_z = abs_mean_z;
        const auto a = cpwx::ned_constants(spec, k_max);
        std::memcpy(out, a.data(), a.size() * sizeof(double));
        return CPWX_OK;
    });
}

int cpwx_check_summability(const double* a, const double* beta, size_t len,
                           double a_tail_ratio, double beta_tail_ratio, double* partial_sum,
                           double* tail_bound, int* verdict) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(a, "a"); rc != CPWX_OK) return rc;
        if (int rc = require_nonnull(beta, "beta"); rc != CPWX_OK) return rc;
        const cpwx::SummabilityReport r = cpwx::check_summability(
            {a, len}, {beta, len}, tail_from_ratio(a_tail_ratio),
            tail_from_ratio(beta_tail_ratio));
        if (partial_sum) *partial_sum = r.partial_sum;
        if (tail_bound) *tail_bound = r.tail_bound;
        if (verdict) {
            switch (r.verdict) {
            case cpwx::Convergence::certified: *verdict = CPWX_SUM_CERTIFIED; break;
            case cpwx::Convergence::divergent: *verdict = CPWX_SUM_DIVERGENT; break;
            default: *verdict = CPWX_SUM_UNKNOWN; break;
            }
        }
        return CPWX_OK;
    });
}

int cpwx_decompose(const double* y, size_t n, size_t k_star, double delta, double mu,
                   int64_t* two_w, int64_t* two_u, int64_t* shift, int* identity) {
    return guarded([&]() -> int {
        if (int rc = require_nonnull(y, "y"); rc != CPWX_OK) return rc;
        const auto reports = cpwx::decompose_wilcoxon({y, n}, k_star, delta, mu);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (two_w) two_w[i] = reports[i].two_w;
            if (two_u) two_u[i] = reports[i].two_u;
            if (shift) shift[i] = reports[i].shift_count;
            if (identity) identity[i] = reports[i].identity_holds ? 1 : 0;
        }
        return CPWX_OK;
    });
}

} // extern "C"
