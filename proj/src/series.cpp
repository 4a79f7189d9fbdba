#include "cpwx/series.hpp"

#include <cmath>
#include <string>

#include "cpwx/datagen.hpp"
#include "cpwx/errors.hpp"

namespace cpwx {

void validate_series(std::span<const double> x, std::size_t min_n) {
    if (x.size() < min_n) {
        throw ValidationError("series too short: n = " + std::to_string(x.size()) +
                              ", need n >= " + std::to_string(min_n));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            throw ValidationError("series contains a non-finite value at index " +
                                  std::to_string(i + 1));
        }
    }
}

void ChangePointConfig::validate() const {
    if (n < 2) throw ValidationError("config: n must be >= 2");
    if (!(theta > 0.0 && theta < 1.0)) throw ValidationError("config: theta must lie in (0,1)");
    if (!(std::fabs(rho) < 1.0)) throw ValidationError("config: |rho| must be < 1");
    if (!std::isfinite(delta)) throw ValidationError("config: delta must be finite");
    if (!std::isfinite(mu)) throw ValidationError("config: mu must be finite");
    const std::size_t ks = config_kstar(*this);
    if (ks < 1 || ks >= n) {
        throw ValidationError("config: floor(n*theta) must lie in 1..n-1");
    }
    if (outliers) {
        if (!std::isfinite(outliers->factor)) {
            throw ValidationError("config: outlier factor must be finite");
        }
        for (double f : outliers->positions) {
            if (!(f > 0.0 && f < 1.0)) {
                throw ValidationError("config: outlier positions must lie in (0,1)");
            }
        }
        outlier_indices(*outliers, n); // in range and distinct after mapping
    }
}

std::size_t config_kstar(const ChangePointConfig& cfg) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(cfg.n) * cfg.theta));
}

const char* method_name(Method m) {
    return m == Method::wilcoxon ? "wilcoxon" : "cusum";
}

const char* innovation_name(Innovation law) {
    return law == Innovation::normal01 ? "normal" : "t1";
}

} // namespace cpwx
