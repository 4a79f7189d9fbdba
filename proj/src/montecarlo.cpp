#include "cpwx/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "cpwx/datagen.hpp"
#include "cpwx/errors.hpp"
#include "cpwx/scan.hpp"

namespace cpwx {

void ExperimentSpec::validate() const {
    config.validate();
    if (replications < 1) throw ValidationError("experiment: replications must be >= 1");
    if (histogram_bins < 2) throw ValidationError("experiment: histogram_bins must be >= 2");
    if (methods.empty()) throw ValidationError("experiment: at least one method required");
    for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t j = i + 1; j < methods.size(); ++j) {
            if (methods[i] == methods[j]) {
                throw ValidationError("experiment: duplicate method");
            }
        }
    }
}

ReplicationOutcome run_replication(const ExperimentSpec& spec, std::size_t rep_index) {
    if (rep_index >= spec.replications) {
        throw ValidationError("run_replication: rep_index out of range");
    }
    const ChangePointConfig& cfg = spec.config;
    RngStream rng = RngStream::for_replication(spec.master_seed, rep_index);

    const Series latent = gen_ar1(cfg.innovation, cfg.n, cfg.rho, cfg.burn_in, rng);
    Series x = apply_change(latent, cfg.mu, cfg.delta, config_kstar(cfg));
    if (cfg.outliers) x = inject_outliers(x, *cfg.outliers);

    ReplicationOutcome out;
    out.rep_index = rep_index;
    out.estimates.reserve(spec.methods.size());
    for (Method m : spec.methods) {
        out.estimates.push_back(estimate_changepoint(x, m));
    }
    return out;
}

std::vector<McSummary> summarize(std::span<const ReplicationOutcome> outcomes,
                                 std::size_t bins) {
    if (outcomes.empty()) throw ValidationError("summarize: no outcomes");
    if (bins < 2) throw ValidationError("summarize: bins must be >= 2");
    const std::size_t n_methods = outcomes[0].estimates.size();
    for (const auto& o : outcomes) {
        if (o.estimates.size() != n_methods) {
            throw ValidationError("summarize: inconsistent method lists");
        }
    }

    const auto big_r = outcomes.size();
    std::vector<McSummary> summaries(n_methods);
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
        McSummary& s = summaries[mi];
        s.method = outcomes[0].estimates[mi].method;
        s.replications = big_r;

        double sum = 0.0;
        for (const auto& o : outcomes) sum += o.estimates[mi].theta_hat;
        s.mean_theta_hat = sum / static_cast<double>(big_r);

        if (big_r > 1) {
            double ss = 0.0;
            for (const auto& o : outcomes) {
                const double d = o.estimates[mi].theta_hat - s.mean_theta_hat;
                ss += d * d;
            }
            s.sd_theta_hat = std::sqrt(ss / static_cast<double>(big_r - 1));
        } else {
            s.sd_theta_hat = 0.0;
            s.sd_degenerate = true;
        }

        s.bin_edges.resize(bins + 1);
        for (std::size_t b = 0; b <= bins; ++b) {
            s.bin_edges[b] = static_cast<double>(b) / static_cast<double>(bins);
        }
        s.counts.assign(bins, 0);
        for (const auto& o : outcomes) {
            const double v = o.estimates[mi].theta_hat;
            auto b = static_cast<std::size_t>(v * static_cast<double>(bins));
            if (b >= bins) b = bins - 1; // v == 1 closes the last bin
            ++s.counts[b];
        }
    }
    return summaries;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned workers) {
    spec.validate();
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, spec.replications));

    ExperimentResult result;
    result.spec = spec;
    result.outcomes.resize(spec.replications);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure = nullptr;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t rep = next.fetch_add(1);
            if (rep >= spec.replications) return;
            try {
                result.outcomes[rep] = run_replication(spec, rep);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(spec.replications); // stop dispensing work
                return;
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    result.summaries = summarize(result.outcomes, spec.histogram_bins);
    return result;
}

} // namespace cpwx
