#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "cliquetop/common.hpp"

namespace cliquetop {

// t_c(k, n, c) = (((k/2+1) log n + (k/2) log log n + c) / n)^(1/(k+1)).
// The map c -> t_c parametrizes the critical window; rescale_time is its
// exact algebraic inverse.
inline double critical_time(int k, std::uint32_t n, double c) {
    if (k < 1) throw std::invalid_argument("critical_time: need k >= 1");
    if (n < 3) throw std::invalid_argument("critical_time: need n >= 3");
    const double logn = std::log(static_cast<double>(n));
    const double numerator = (k / 2.0 + 1.0) * logn + (k / 2.0) * std::log(logn) + c;
    if (!(numerator > 0.0)) throw OutOfRegimeError("critical_time: non-positive window numerator");
    const double t = std::pow(numerator / n, 1.0 / (k + 1));
    if (t > 1.0) throw OutOfRegimeError("critical_time: t_c exceeds 1");
    return t;
}

inline double rescale_time(double t, int k, std::uint32_t n) {
    if (k < 1) throw std::invalid_argument("rescale_time: need k >= 1");
    if (n < 3) throw std::invalid_argument("rescale_time: need n >= 3");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("rescale_time: t must lie in [0,1]");
    const double logn = std::log(static_cast<double>(n));
    return n * std::pow(t, k + 1) - (k / 2.0 + 1.0) * logn - (k / 2.0) * std::log(logn);
}

}  // namespace cliquetop
