#pragma once

#include <span>
#include <vector>

namespace mfa {

double mean(std::span<const double> x);

// Population (1/N) variance and standard deviation.
double variance_population(std::span<const double> x);
double stddev_population(std::span<const double> x);

// Bessel-corrected (1/(N-1)) variance.
double variance_sample(std::span<const double> x);

// Average ranks 1..n with ties sharing their mean rank.
std::vector<double> average_ranks(std::span<const double> x);

// Pearson correlation; returns 0 when either input has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Two-sided p for Student's t with df degrees of freedom.
double student_t_p_two_sided(double t, double df);

// Upper tail of the chi-squared distribution with df degrees of freedom.
double chi_squared_sf(double x, double df);

// Upper tail of the standard normal.
double normal_sf(double z);

// Two-sample Kolmogorov-Smirnov-style statistic of a sample against the
// uniform distribution on [0, 1]: sup |F_emp - F_uniform|.
double ks_statistic_uniform(std::vector<double> sample);

// Linear-interpolation percentile of a sample (percentile in [0, 100]).
double percentile(std::vector<double> sample, double pct);

}  // namespace mfa
