#pragma once

#include <span>

#include "cpwx/series.hpp"

namespace cpwx {

// Wilcoxon rank scan over all split points k = 1..n-1:
//
//   W_n(k) = sum_{i<=k} sum_{j>k} (1{x_i <= x_j} - 1/2)
//
// returned as exact doubled integers 2*W_n(k) = 2*#{(i,j): i<=k<j, x_i<=x_j}
// - k*(n-k). Ties are counted literally through <=. Runs in O(n log n) by
// rank counting; bit-identical to the quadratic reference below.
ScanProfile wilcoxon_scan(std::span<const double> x);

// Quadratic reference path: carries #{(i,j): i<=k<j, x_i<=x_j} across k by
// moving x_{k+1} from the right block to the left block, adjusting by the
// count of later elements >= x_{k+1} minus the count of earlier elements
// <= x_{k+1}, each found by one linear pass.
ScanProfile wilcoxon_scan_quadratic(std::span<const double> x);

// Literal double-sum transcription, recomputed from scratch for every k.
// Kept as an independent oracle for the scans above; O(n^3), intended for
// small n only.
ScanProfile wilcoxon_scan_naive(std::span<const double> x);

// CUSUM scan D_k = sum_{j<=k} x_j - (k/n) sum_{j<=n} x_j, evaluated as
// (n*S_k - k*S_n)/n from compensated prefix sums so every value has a single
// rounding site and the scan is reproducible across platforms.
ScanProfile cusum_scan(std::span<const double> x);

// Smallest 1-based index maximizing |values[i-1]|; ties only on exact
// equality. Throws ValidationError on empty input.
std::size_t argmax_first_abs(std::span<const std::int64_t> values);
std::size_t argmax_first_abs(std::span<const double> values);

// Runs the scan matching `method` and returns the first-maximum split k_hat
// together with theta_hat = k_hat/n and the attained max |statistic|
// (in W units for Wilcoxon, i.e. half the doubled integer).
EstimateResult estimate_changepoint(std::span<const double> x, Method method);

} // namespace cpwx
