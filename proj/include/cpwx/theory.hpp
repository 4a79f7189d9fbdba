#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cpwx/series.hpp"

namespace cpwx {

enum class Dist { normal01, uniform01 };

// Continuous reference distribution with closed-form cdf/pdf/quantile.
struct DistModel {
    Dist kind = Dist::normal01;

    double cdf(double x) const;
    double pdf(double x) const;
    double quantile(double u) const; // u in [0,1]; +-inf endpoints for normal01
};

// First-order Hoeffding components of the kernel h(x,y) = 1{x<=y} with
// Theta = 1/2: h1(x) = 1/2 - F(x), h2(y) = F(y) - 1/2 = -h1(y).
double hoeffding_h1(double x, const DistModel& f);
double hoeffding_h2(double y, const DistModel& f);

// Theta_Delta = integral of (F(y+delta) - F(y)) dF(y): the probability that
// an independent copy lands in (Y, Y+delta]. Computed by adaptive quadrature
// on the quantile-transformed domain, absolute error <= 1e-10.
double theta_delta(const DistModel& f, double delta);

// Hoeffding components of the shift kernel h_n(x,y) = 1{y < x <= y+delta}:
//   h1n(x) = F(x) - F(x-delta) - Theta_Delta
//   h2n(y) = F(y+delta) - F(y) - Theta_Delta
// The overloads taking `theta` reuse a precomputed theta_delta(f, delta).
double hoeffding_h1n(double x, const DistModel& f, double delta);
double hoeffding_h2n(double y, const DistModel& f, double delta);
double hoeffding_h1n(double x, const DistModel& f, double delta, double theta);
double hoeffding_h2n(double y, const DistModel& f, double delta, double theta);

// Degenerate remainders g = h - h1 - h2 - Theta and gn = hn - h1n - h2n -
// Theta_Delta; both have vanishing conditional means in each slot.
double degenerate_g(double x, double y, const DistModel& f);
double degenerate_gn(double x, double y, const DistModel& f, double delta);
double degenerate_gn(double x, double y, const DistModel& f, double delta, double theta);

// Mean of g against dF via the same quantile-domain quadrature.
// y_breakpoints lists discontinuity locations of g in observation space so
// each adaptive pass sees a smooth piece (indicator kernels need them).
double mean_against_dist(const std::function<double(double)>& g, const DistModel& f,
                         std::span<const double> y_breakpoints = {}, double abs_tol = 1e-12);

// Exact split of the Wilcoxon scan on x = y + mu + delta*1{i > k_star} into
// the scan on the latent series plus an integer count of shift-straddling
// pairs: 2W(k) = 2U(k) + 2*shift_count(k) for every k 1..n-1, where
// shift_count counts pairs with y_j < y_i <= y_j + delta across the change.
struct DecompositionReport {
    std::size_t k = 0;
    std::int64_t two_w = 0;       // 2*W_n(k) on the observed series
    std::int64_t two_u = 0;       // 2*U_n(k) on the latent series
    std::int64_t shift_count = 0; // U_n(k, k*) for k <= k*, U_n(k*, k) above
    bool identity_holds = false;  // two_w == two_u + 2*shift_count
};

std::vector<DecompositionReport> decompose_wilcoxon(std::span<const double> y,
                                                    std::size_t k_star, double delta,
                                                    double mu);

// Geometric continuation of a coefficient sequence: each term beyond the
// last supplied one shrinks by `ratio` (0 <= ratio < 1).
struct GeometricTail {
    double ratio = 0.0;
};

// Linear-process coefficients psi_0..psi_{m-1} with an optional geometric
// tail anchored at psi_{m-1}, plus the mean absolute innovation E|Z_1|.
struct LinearProcessSpec {
    std::vector<double> psi;
    std::optional<GeometricTail> tail;
    double abs_mean_z = 1.0;
};

// Near-epoch-dependence approximation constants of the linear process:
// a_k = 2 E|Z_1| sum_{j>k} |psi_j|, k = 0..k_max. Geometric tails are summed
// in closed form.
std::vector<double> ned_constants(const LinearProcessSpec& spec, std::size_t k_max);

enum class Convergence { certified, divergent, unknown };

struct SummabilityReport {
    double partial_sum = 0.0; // sum_{k=1..K} k^2 (beta_k + sqrt(a_k))
    double tail_bound = 0.0;  // exact geometric remainder; NaN unless certified
    Convergence verdict = Convergence::unknown;
};

// Evaluates the regularity series sum k^2 (beta_k + sqrt(a_k)) over the
// supplied window a_1..a_K, beta_1..beta_K. Geometric tail descriptors allow
// closed-form certification; without them a linear-minorant check on the
// partial sums flags divergence, otherwise the verdict stays unknown.
SummabilityReport check_summability(std::span<const double> a, std::span<const double> beta,
                                    std::optional<GeometricTail> a_tail = {},
                                    std::optional<GeometricTail> beta_tail = {});

} // namespace cpwx
