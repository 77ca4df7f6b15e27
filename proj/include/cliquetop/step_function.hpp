#pragma once

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "cliquetop/common.hpp"

namespace cliquetop {

// Right-continuous piecewise-constant map t -> integer, stored as jump times
// plus values. Jump times are strictly increasing and consecutive values
// differ; appending a repeated value is a no-op.
struct StepFunction {
    double start = 0.0;
    long long initial_value = 0;
    std::vector<double> jump_times;
    std::vector<long long> values;  // values[i] holds on [jump_times[i], jump_times[i+1])

    void append(double t, long long v) {
        if (!jump_times.empty() && !(t > jump_times.back()))
            throw std::invalid_argument("StepFunction: jump times must be strictly increasing");
        if (jump_times.empty() && !(t > start))
            throw std::invalid_argument("StepFunction: jump must lie beyond the start");
        const long long last = values.empty() ? initial_value : values.back();
        if (v == last) return;
        jump_times.push_back(t);
        values.push_back(v);
    }

    long long value_at(double t) const {
        if (t < start) throw std::invalid_argument("StepFunction: query before domain start");
        auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
        if (it == jump_times.begin()) return initial_value;
        return values[static_cast<std::size_t>(it - jump_times.begin()) - 1];
    }

    long long terminal_value() const { return values.empty() ? initial_value : values.back(); }

    long long max_value() const {
        long long m = initial_value;
        for (long long v : values) m = std::max(m, v);
        return m;
    }

    // CSV with header `t,value`: one row per jump plus an initial row at the
    // domain start.
    void to_csv(std::ostream& os) const {
        os << "t,value\n";
        os << format_real(start) << ',' << initial_value << '\n';
        for (std::size_t i = 0; i < jump_times.size(); ++i)
            os << format_real(jump_times[i]) << ',' << values[i] << '\n';
    }
};

struct HittingTime {
    double t = 0.0;
    // Set when the process never exceeded the level inside the window, i.e.
    // the true hitting time lies at or before the window start.
    bool vanished_before_window = false;
};

// Smallest jump time after which the process stays <= m; scans from the end.
inline HittingTime hitting_time_generalized(const StepFunction& f, long long m) {
    if (m < 0) throw std::invalid_argument("hitting_time_generalized: need m >= 0");
    if (f.terminal_value() > m)
        throw WindowTooShortError("hitting_time_generalized: process exceeds the level at the window end");
    std::size_t i = f.values.size();
    while (i > 0 && f.values[i - 1] <= m) --i;
    // values[i..] <= m; values[i-1] > m when i > 0
    if (i == f.values.size()) {
        // no jump settles the process; it never exceeded m inside the window
        return {f.start, true};
    }
    if (i == 0 && f.initial_value <= m) return {f.start, true};
    return {f.jump_times[i], false};
}

inline HittingTime hitting_time(const StepFunction& f) { return hitting_time_generalized(f, 0); }

}  // namespace cliquetop
