#include "cpwx/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpwx/errors.hpp"
#include "cpwx/normal.hpp"

namespace cpwx {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
}

Series gen_innovations(Innovation law, std::size_t count, RngStream& rng) {
    Series out(count);
    if (law == Innovation::normal01) {
        for (auto& v : out) v = normal_quantile(rng.next_unit());
    } else {
        for (auto& v : out) v = std::tan(kPi * (rng.next_unit() - 0.5));
    }
    return out;
}

Series ar1_filter(std::span<const double> eps, double rho, std::size_t burn_in) {
    if (!(std::fabs(rho) < 1.0)) throw ValidationError("ar1: |rho| must be < 1");
    if (eps.size() <= burn_in) {
        throw ValidationError("ar1: need more than burn_in innovations");
    }
    Series out(eps.size() - burn_in);
    double y = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        y = rho * y + eps[i];
        if (i >= burn_in) out[i - burn_in] = y;
    }
    return out;
}

Series gen_ar1(Innovation law, std::size_t n, double rho, std::size_t burn_in, RngStream& rng) {
    const Series eps = gen_innovations(law, n + burn_in, rng);
    return ar1_filter(eps, rho, burn_in);
}

Series apply_change(std::span<const double> y, double mu, double delta, std::size_t k_star) {
    if (k_star < 1 || k_star >= y.size()) {
        throw ValidationError("apply_change: k_star must lie in 1..n-1");
    }
    Series out(y.begin(), y.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += i < k_star ? mu : mu + delta;
    }
    return out;
}

std::vector<std::size_t> outlier_indices(const OutlierPlan& plan, std::size_t n) {
    std::vector<std::size_t> idx;
    idx.reserve(plan.positions.size());
    for (double f : plan.positions) {
        const auto i = static_cast<std::size_t>(std::floor(f * static_cast<double>(n)));
        if (i < 1 || i > n) {
            throw ValidationError("outliers: position " + std::to_string(f) +
                                  " maps outside 1..n");
        }
        idx.push_back(i);
    }
    std::vector<std::size_t> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("outliers: two positions map to the same index");
    }
    return idx;
}

Series inject_outliers(std::span<const double> x, const OutlierPlan& plan) {
    const auto idx = outlier_indices(plan, x.size());
    Series out(x.begin(), x.end());
    for (std::size_t i : idx) out[i - 1] *= plan.factor;
    return out;
}

} // namespace cpwx
