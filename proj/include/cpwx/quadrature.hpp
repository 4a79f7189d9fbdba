#pragma once

#include <functional>
#include <span>

namespace cpwx {

// Recursive adaptive Simpson integration of f over [a, b] to the given
// absolute tolerance. The error budget is split between halves at each
// subdivision; max_depth caps the recursion near non-smooth points.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 48);

// Integral over [0,1], split at the interior breakpoints first so that each
// adaptive pass only ever sees a smooth piece. Breakpoints outside (0,1) are
// ignored; f must be finite at 0 and 1.
double integrate_unit_interval(const std::function<double(double)>& f,
                               std::span<const double> breakpoints, double abs_tol);

} // namespace cpwx
