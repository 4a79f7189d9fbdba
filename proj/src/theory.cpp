#include "cpwx/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cpwx/datagen.hpp"
#include "cpwx/errors.hpp"
#include "cpwx/normal.hpp"
#include "cpwx/quadrature.hpp"
#include "cpwx/scan.hpp"

namespace cpwx {

double DistModel::cdf(double x) const {
    if (kind == Dist::normal01) return normal_cdf(x);
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x;
}

double DistModel::pdf(double x) const {
    if (kind == Dist::normal01) return normal_pdf(x);
    return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
}

double DistModel::quantile(double u) const {
    if (kind == Dist::normal01) return normal_quantile(u);
    return std::clamp(u, 0.0, 1.0);
}

double hoeffding_h1(double x, const DistModel& f) { return 0.5 - f.cdf(x); }

double hoeffding_h2(double y, const DistModel& f) { return f.cdf(y) - 0.5; }

double theta_delta(const DistModel& f, double delta) {
    if (delta < 0.0) throw ValidationError("theta_delta: delta must be >= 0");
    if (delta == 0.0) return 0.0;
    const auto integrand = [&f, delta](double u) {
        return f.cdf(f.quantile(u) + delta) - u;
    };
    // The uniform model has a kink where y + delta crosses 1.
    double breakpoints[1];
    std::size_t nb = 0;
    if (f.kind == Dist::uniform01 && delta < 1.0) breakpoints[nb++] = 1.0 - delta;
    return integrate_unit_interval(integrand, std::span<const double>(breakpoints, nb), 5e-12);
}

double hoeffding_h1n(double x, const DistModel& f, double delta, double theta) {
    return f.cdf(x) - f.cdf(x - delta) - theta;
}

double hoeffding_h2n(double y, const DistModel& f, double delta, double theta) {
    return f.cdf(y + delta) - f.cdf(y) - theta;
}

double hoeffding_h1n(double x, const DistModel& f, double delta) {
    return hoeffding_h1n(x, f, delta, theta_delta(f, delta));
}

double hoeffding_h2n(double y, const DistModel& f, double delta) {
    return hoeffding_h2n(y, f, delta, theta_delta(f, delta));
}

double degenerate_g(double x, double y, const DistModel& f) {
    const double h = x <= y ? 1.0 : 0.0;
    return h - hoeffding_h1(x, f) - hoeffding_h2(y, f) - 0.5;
}

double degenerate_gn(double x, double y, const DistModel& f, double delta, double theta) {
    const double hn = (y < x && x <= y + delta) ? 1.0 : 0.0;
    return hn - hoeffding_h1n(x, f, delta, theta) - hoeffding_h2n(y, f, delta, theta) - theta;
}

double degenerate_gn(double x, double y, const DistModel& f, double delta) {
    return degenerate_gn(x, y, f, delta, theta_delta(f, delta));
}

double mean_against_dist(const std::function<double(double)>& g, const DistModel& f,
                         std::span<const double> y_breakpoints, double abs_tol) {
    std::vector<double> cuts;
    cuts.reserve(y_breakpoints.size());
    for (double y : y_breakpoints) cuts.push_back(f.cdf(y));
    const auto integrand = [&](double u) { return g(f.quantile(u)); };
    return integrate_unit_interval(integrand, cuts, abs_tol);
}

std::vector<DecompositionReport> decompose_wilcoxon(std::span<const double> y,
                                                    std::size_t k_star, double delta,
                                                    double mu) {
    validate_series(y, 2);
    if (delta < 0.0) throw ValidationError("decompose: delta must be >= 0");
    const std::size_t n = y.size();
    if (k_star < 1 || k_star >= n) {
        throw ValidationError("decompose: k_star must lie in 1..n-1");
    }

    const Series x = apply_change(y, mu, delta, k_star);
    const ScanProfile wx = wilcoxon_scan(x);
    const ScanProfile uy = wilcoxon_scan(y);

    // shift_count(k) telescopes over straddling-pair counts of single rows:
    //   k <= k*: sum over i <= k of #{j > k* : y_j < y_i <= y_j + delta}
    //   k >  k*: sum over j > k of #{i <= k* : y_j < y_i <= y_j + delta}
    std::vector<std::int64_t> left_rows(n, 0), right_rows(n, 0);
    for (std::size_t i = 0; i < k_star; ++i) {
        for (std::size_t j = k_star; j < n; ++j) {
            if (y[j] < y[i] && y[i] <= y[j] + delta) {
                ++left_rows[i];
                ++right_rows[j];
            }
        }
    }

    std::vector<DecompositionReport> reports(n - 1);
    std::int64_t acc = 0;
    std::vector<std::int64_t> suffix(n + 1, 0);
    for (std::size_t j = n; j-- > k_star;) suffix[j] = suffix[j + 1] + right_rows[j];

    for (std::size_t k = 1; k < n; ++k) {
        auto& r = reports[k - 1];
        r.k = k;
        r.two_w = wx.wilcoxon_doubled[k - 1];
        r.two_u = uy.wilcoxon_doubled[k - 1];
        if (k <= k_star) {
            acc += left_rows[k - 1];
            r.shift_count = acc;
        } else {
            r.shift_count = suffix[k];
        }
        r.identity_holds = r.two_w == r.two_u + 2 * r.shift_count;
    }
    return reports;
}

namespace {

void check_tail_ratio(const std::optional<GeometricTail>& tail, const char* which) {
    if (tail && !(tail->ratio >= 0.0 && tail->ratio < 1.0)) {
        throw ValidationError(std::string(which) + ": geometric tail ratio must lie in [0,1)");
    }
}

// sum_{t>=1} (K+t)^2 c q^t for 0 <= q < 1
double weighted_geometric_tail(double k, double c, double q) {
    if (c == 0.0 || q == 0.0) return 0.0;
    const double r = 1.0 - q;
    return c * (k * k * q / r + 2.0 * k * q / (r * r) + q * (1.0 + q) / (r * r * r));
}

} // namespace

std::vector<double> ned_constants(const LinearProcessSpec& spec, std::size_t k_max) {
    if (spec.abs_mean_z < 0.0) throw ValidationError("ned_constants: E|Z| must be >= 0");
    check_tail_ratio(spec.tail, "ned_constants");
    if (spec.tail && spec.psi.empty()) {
        throw ValidationError("ned_constants: geometric tail needs an anchoring coefficient");
    }
    for (double p : spec.psi) {
        if (!std::isfinite(p)) throw ValidationError("ned_constants: coefficients must be finite");
    }

    const std::size_t m = spec.psi.size();
    // abs_suffix[k] = sum_{j >= k} |psi_j| over the supplied prefix
    std::vector<double> abs_suffix(m + 1, 0.0);
    for (std::size_t j = m; j-- > 0;) abs_suffix[j] = abs_suffix[j + 1] + std::fabs(spec.psi[j]);

    const double anchor = m > 0 ? std::fabs(spec.psi[m - 1]) : 0.0;
    const double ratio = spec.tail ? spec.tail->ratio : 0.0;

    std::vector<double> a(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) {
        double tail_abs = k + 1 < m ? abs_suffix[k + 1] : 0.0;
        if (spec.tail && ratio > 0.0) {
            // geometric terms sit at indices m-1+t, t >= 1
            const std::size_t t0 = k + 1 < m ? 1 : k + 2 - m;
            tail_abs += anchor * std::pow(ratio, static_cast<double>(t0)) / (1.0 - ratio);
        }
        a[k] = 2.0 * spec.abs_mean_z * tail_abs;
    }
    return a;
}

SummabilityReport check_summability(std::span<const double> a, std::span<const double> beta,
                                    std::optional<GeometricTail> a_tail,
                                    std::optional<GeometricTail> beta_tail) {
    if (a.empty() || a.size() != beta.size()) {
        throw ValidationError("check_summability: a and beta must be nonempty, equal length");
    }
    check_tail_ratio(a_tail, "check_summability");
    check_tail_ratio(beta_tail, "check_summability");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] >= 0.0) || !(beta[i] >= 0.0)) {
            throw ValidationError("check_summability: sequences must be nonnegative");
        }
    }

    SummabilityReport report;
    const std::size_t big_k = a.size();
    const std::size_t half = big_k / 2;
    double upper_half_sum = 0.0;
    for (std::size_t k = 1; k <= big_k; ++k) {
        const double kk = static_cast<double>(k);
        const double term = kk * kk * (beta[k - 1] + std::sqrt(a[k - 1]));
        report.partial_sum += term;
        if (k > half) upper_half_sum += term;
    }

    // Tail classification per component: a closed-form remainder exists when a
    // geometric descriptor is supplied or the anchoring entry is already zero.
    const double sqrt_a_anchor = std::sqrt(a[big_k - 1]);
    const double beta_anchor = beta[big_k - 1];
    const bool a_known = a_tail.has_value() || sqrt_a_anchor == 0.0;
    const bool beta_known = beta_tail.has_value() || beta_anchor == 0.0;

    if (a_known && beta_known) {
        const double kd = static_cast<double>(big_k);
        // sqrt(a_{K+t}) decays with the square root of the a-ratio
        const double qa = a_tail ? std::sqrt(a_tail->ratio) : 0.0;
        const double qb = beta_tail ? beta_tail->ratio : 0.0;
        report.tail_bound = weighted_geometric_tail(kd, sqrt_a_anchor, qa) +
                            weighted_geometric_tail(kd, beta_anchor, qb);
        report.verdict = Convergence::certified;
        return report;
    }

    report.tail_bound = std::numeric_limits<double>::quiet_NaN();
    // Harmonic-type minorant on the window: when the terms k^2(beta_k +
    // sqrt(a_k)) average at least 1 across the upper half, the partial sums
    // still grow linearly at K, which a convergent series cannot sustain.
    report.verdict = upper_half_sum > static_cast<double>(big_k - half)
                         ? Convergence::divergent
                         : Convergence::unknown;
    return report;
}

} // namespace cpwx
