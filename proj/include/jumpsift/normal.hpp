#pragma once

namespace jumpsift {

/// erfc(x) from W. J. Cody's rational Chebyshev approximations (CALERF,
/// Math. Comp. 1969) on |x| <= 0.46875, 0.46875 < |x| <= 4 and |x| > 4.
/// Relative error is near double precision; the fixed coefficients keep KS
/// statistics identical across platforms.
double erfc_cody(double x);

/// Standard normal CDF, 0.5 * erfc(-x / sqrt(2)).
double normal_cdf(double x);

}  // namespace jumpsift
