#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace lshmc {

// Standard normal CDF via erfc; absolute error is at the 1e-15 level.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

// Inverse standard normal CDF (Acklam's rational approximation followed by a
// Halley refinement step).  Used for histogram bin edges and test oracles.
double inv_normal_cdf(double p);

// sup_t |F_n(t) - F(t)| for a 1-D sample against a reference CDF.
// The input need not be sorted.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

// 99% critical value of the one-sample Kolmogorov statistic, sqrt(n) scale.
inline double ks_critical_99(long n) {
  return 1.63 / std::sqrt(static_cast<double>(n));
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lshmc
