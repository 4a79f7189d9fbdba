#pragma once

#include <span>

#include "cpwx/rng.hpp"
#include "cpwx/series.hpp"

namespace cpwx {

// count i.i.d. draws from the innovation law. Each draw consumes exactly one
// uniform: standard normal via the quantile transform, t with 1 df (Cauchy)
// via tan(pi*(u - 1/2)). Output is a pure function of (law, count, stream).
Series gen_innovations(Innovation law, std::size_t count, RngStream& rng);

// AR(1) recursion y_i = rho*y_{i-1} + eps_i started at y_0 = 0; the first
// burn_in outputs are discarded. eps must supply n + burn_in innovations.
Series ar1_filter(std::span<const double> eps, double rho, std::size_t burn_in);

// Convenience: draws the n + burn_in innovations itself.
Series gen_ar1(Innovation law, std::size_t n, double rho, std::size_t burn_in, RngStream& rng);

// Mean-shift injection: x_i = y_i + mu for i <= k_star, y_i + mu + delta after.
Series apply_change(std::span<const double> y, double mu, double delta, std::size_t k_star);

// 1-based indices floor(f*n) for the plan positions. Throws if any index
// falls outside 1..n or two positions collide after mapping.
std::vector<std::size_t> outlier_indices(const OutlierPlan& plan, std::size_t n);

// Multiplies the planned observations by plan.factor, leaving the rest intact.
Series inject_outliers(std::span<const double> x, const OutlierPlan& plan);

} // namespace cpwx
