#pragma once

namespace cpwx {

// Standard normal distribution function, density and quantile.
// cdf/pdf are accurate to well under 1e-12 in absolute terms; the quantile
// uses Wichura's AS241 rational approximations (about 1e-15 relative).
double normal_cdf(double x);
double normal_pdf(double x);
double normal_quantile(double p); // p in [0,1]; returns -inf/+inf at the ends

} // namespace cpwx
