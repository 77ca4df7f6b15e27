#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cliquetop {

// Intensity of the limit process: mu(k, c) = ((k/2+1)^(k/2) / (k+1)!) e^{-c}.
// Self-similar under integration: the integral over (c, infinity) equals
// mu(k, c) itself.
inline double mu(int k, double c) {
    if (k < 1) throw std::invalid_argument("mu: need k >= 1");
    double factorial = 1.0;
    for (int i = 2; i <= k + 1; ++i) factorial *= i;
    return std::pow(k / 2.0 + 1.0, k / 2.0) / factorial * std::exp(-c);
}

// Limit law of the rescaled hitting time: G(c) = exp(-mu(k, c)).
inline double gumbel_cdf(int k, double c) { return std::exp(-mu(k, c)); }

// Inverse of G for synthetic sampling; u in (0,1).
inline double gumbel_quantile(int k, double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("gumbel_quantile: u must lie in (0,1)");
    return -std::log(-std::log(u) / mu(k, 0.0));
}

inline std::vector<double> poisson_pmf(double lambda, int count_max) {
    std::vector<double> pmf(static_cast<std::size_t>(count_max) + 1);
    double term = std::exp(-lambda);
    for (int i = 0; i <= count_max; ++i) {
        pmf[static_cast<std::size_t>(i)] = term;
        term *= lambda / (i + 1);
    }
    return pmf;
}

inline std::vector<double> empirical_pmf(const std::vector<long long>& samples, int count_max) {
    std::vector<double> pmf(static_cast<std::size_t>(count_max) + 1, 0.0);
    for (long long s : samples) {
        if (s < 0) throw std::invalid_argument("empirical_pmf: negative count");
        if (s <= count_max) pmf[static_cast<std::size_t>(s)] += 1.0;
    }
    for (double& p : pmf) p /= static_cast<double>(samples.size());
    return pmf;
}

// Total variation against Poisson(lambda); the Poisson tail beyond the
// largest observed count enters in full.
inline double tv_to_poisson(const std::vector<long long>& samples, double lambda) {
    if (samples.empty()) throw std::invalid_argument("tv_to_poisson: no samples");
    int count_max = 0;
    for (long long s : samples) count_max = std::max(count_max, static_cast<int>(s));
    const std::vector<double> emp = empirical_pmf(samples, count_max);
    const std::vector<double> pois = poisson_pmf(lambda, count_max);
    double sum = 0.0, covered = 0.0;
    for (std::size_t i = 0; i < emp.size(); ++i) {
        sum += std::abs(emp[i] - pois[i]);
        covered += pois[i];
    }
    return 0.5 * (sum + std::max(0.0, 1.0 - covered));
}

// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f));
    }
    return d;
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean_stderr: no samples");
    MeanStderr m;
    m.n = xs.size();
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(m.n);
    if (m.n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - m.mean) * (x - m.mean);
        m.stderr_ = std::sqrt(ss / static_cast<double>(m.n - 1) / static_cast<double>(m.n));
    }
    return m;
}

// r-th factorial moment estimate: mean of x(x-1)...(x-r+1) with its
// plug-in standard error.
inline MeanStderr factorial_moment(const std::vector<long long>& samples, int r) {
    if (r < 1) throw std::invalid_argument("factorial_moment: need r >= 1");
    std::vector<double> prods;
    prods.reserve(samples.size());
    for (long long s : samples) {
        double p = 1.0;
        for (int i = 0; i < r; ++i) p *= static_cast<double>(s - i);
        prods.push_back(p);
    }
    return mean_stderr(prods);
}

}  // namespace cliquetop
