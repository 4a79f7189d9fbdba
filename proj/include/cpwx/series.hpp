#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cpwx {

enum class Method { wilcoxon, cusum };
enum class Innovation { normal01, student_t1 };

// Ordered real-valued observations. Operations that split the series
// additionally require n >= 2 and reject NaN/Inf entries.
using Series = std::vector<double>;

// Throws ValidationError unless every element is finite and x.size() >= min_n.
void validate_series(std::span<const double> x, std::size_t min_n = 2);

// Multiplicative contamination plan: each fraction f maps to the 1-based
// index floor(f*n); the observation there is multiplied by `factor`.
struct OutlierPlan {
    std::vector<double> positions; // fractions in (0,1)
    double factor = 1.0;
};

// Generative parameters for one simulated series.
struct ChangePointConfig {
    std::size_t n = 0;
    double theta = 0.0; // change location fraction, 0 < theta < 1
    double delta = 0.0; // mean shift after the change
    double mu = 0.0;    // base mean
    double rho = 0.0;   // AR(1) coefficient, |rho| < 1
    Innovation innovation = Innovation::normal01;
    std::optional<OutlierPlan> outliers;
    std::size_t burn_in = 100;

    void validate() const; // throws ValidationError
};

// k* = floor(n * theta); the config invariants guarantee 1 <= k* <= n-1.
std::size_t config_kstar(const ChangePointConfig& cfg);

// Per-split statistic values for k = 1..n-1. Wilcoxon values are kept as
// exact doubled integers 2*W_n(k) so that comparisons and tie-breaks never
// depend on floating-point rounding; |2*W_n(k)| <= k*(n-k) always holds.
struct ScanProfile {
    Method method = Method::wilcoxon;
    std::size_t n = 0;
    std::vector<std::int64_t> wilcoxon_doubled; // present iff method == wilcoxon
    std::vector<double> cusum_values;           // present iff method == cusum
};

struct EstimateResult {
    Method method = Method::wilcoxon;
    std::size_t k_hat = 0;      // smallest split index attaining the max, in 1..n-1
    double theta_hat = 0.0;     // k_hat / n
    double max_abs_value = 0.0; // attained maximum |statistic|
};

// Aggregate of estimated locations over replicated experiments.
struct McSummary {
    Method method = Method::wilcoxon;
    std::size_t replications = 0;
    double mean_theta_hat = 0.0;
    double sd_theta_hat = 0.0; // denominator R-1; 0 with sd_degenerate when R == 1
    bool sd_degenerate = false;
    std::vector<double> bin_edges;     // bins+1 uniform edges on [0,1]
    std::vector<std::uint64_t> counts; // per-bin counts, sum == replications
};

const char* method_name(Method m);
const char* innovation_name(Innovation law);

} // namespace cpwx
