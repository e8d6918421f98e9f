#include "mfa/stats_util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "mfa/errors.hpp"

namespace mfa {

double mean(std::span<const double> x) {
    if (x.empty()) throw ValidationError("mean: empty input");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance_population(std::span<const double> x) {
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return acc / static_cast<double>(x.size());
}

double stddev_population(std::span<const double> x) { return std::sqrt(variance_population(x)); }

double variance_sample(std::span<const double> x) {
    if (x.size() < 2) throw ValidationError("variance_sample: need at least 2 values");
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return acc / static_cast<double>(x.size() - 1);
}

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("pearson: length mismatch");
    if (x.size() < 2) throw ValidationError("pearson: need at least 2 values");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

double student_t_p_two_sided(double t, double df) {
    if (df <= 0.0) throw ValidationError("student_t_p_two_sided: df must be positive");
    if (std::isinf(t)) return 0.0;
    boost::math::students_t dist(df);
    const double tail = boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    return std::min(1.0, 2.0 * tail);
}

double chi_squared_sf(double x, double df) {
    if (df <= 0.0) throw ValidationError("chi_squared_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    boost::math::chi_squared dist(df);
    return boost::math::cdf(boost::math::complement(dist, x));
}

double normal_sf(double z) {
    boost::math::normal dist;
    return boost::math::cdf(boost::math::complement(dist, z));
}

double ks_statistic_uniform(std::vector<double> sample) {
    if (sample.empty()) throw ValidationError("ks_statistic_uniform: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = std::clamp(sample[i], 0.0, 1.0);
        const double hi = (static_cast<double>(i) + 1.0) / n - cdf;
        const double lo = cdf - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

double percentile(std::vector<double> sample, double pct) {
    if (sample.empty()) throw ValidationError("percentile: empty sample");
    std::sort(sample.begin(), sample.end());
    const double idx = pct / 100.0 * static_cast<double>(sample.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(idx));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(idx));
    if (lo == hi) return sample[lo];
    const double w = idx - static_cast<double>(lo);
    return sample[lo] * (1.0 - w) + sample[hi] * w;
}

}  // namespace mfa
