#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpwx/series.hpp"

namespace cpwx {

struct ExperimentSpec {
    ChangePointConfig config;
    std::size_t replications = 0;
    std::uint64_t master_seed = 0;
    std::vector<Method> methods{Method::wilcoxon, Method::cusum};
    std::size_t histogram_bins = 50;

    void validate() const; // throws ValidationError
};

struct ReplicationOutcome {
    std::size_t rep_index = 0;
    std::vector<EstimateResult> estimates; // parallel to spec.methods
};

// One replication: an independent stream seeded from (master_seed,
// rep_index) drives innovations -> AR(1) -> mean shift -> optional outliers;
// every requested method estimates on the same realized series. Pure
// function of (spec, rep_index).
ReplicationOutcome run_replication(const ExperimentSpec& spec, std::size_t rep_index);

// Mean, sd (denominator R-1) and a uniform histogram on [0,1] of theta_hat,
// per method. Bins are right-open except the last. Outcomes must be
// nonempty and carry identical method lists.
std::vector<McSummary> summarize(std::span<const ReplicationOutcome> outcomes,
                                 std::size_t bins);

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<ReplicationOutcome> outcomes; // ordered by rep_index
    std::vector<McSummary> summaries;         // parallel to spec.methods
};

// Runs all replications (workers == 0 picks the hardware concurrency) and
// aggregates in rep_index order, so the result is identical for any worker
// count. Any replication failure aborts the whole experiment.
ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned workers = 0);

} // namespace cpwx
