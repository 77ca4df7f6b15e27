#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace cliquetop {

inline constexpr const char* kVersion = "cliquetop 0.1.0";

// Thrown when a requested (k, n, c) combination leaves the unit interval,
// e.g. critical_time > 1 or a non-positive window numerator.
class OutOfRegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Thrown by hitting-time scans when the observed window does not end in the
// required terminal state.
class WindowTooShortError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when a graph operation receives input it cannot normalize,
// e.g. a normalized Laplacian of a graph with isolated vertices.
class DegenerateInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// splitmix64 finalizer; also the per-trial seed derivation so that trial
// seeds are independent of execution order.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed ^ mix64(trial_index + 1));
}

// 17 significant digits: enough for binary64 round trips in CSV output.
inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Accepts decimal or 0x-prefixed hex 64-bit seed tokens.
inline std::uint64_t parse_seed_token(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty seed token");
    std::size_t pos = 0;
    int base = 10;
    std::string body = s;
    if (s.size() > 2 && (s[0] == '0') && (s[1] == 'x' || s[1] == 'X')) {
        base = 16;
        body = s.substr(2);
    }
    std::uint64_t value = std::stoull(body, &pos, base);
    if (pos != body.size()) throw std::invalid_argument("trailing characters in seed token: " + s);
    return value;
}

}  // namespace cliquetop
