#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "cliquetop/complex.hpp"
#include "cliquetop/critical_window.hpp"
#include "cliquetop/graph.hpp"
#include "cliquetop/step_function.hpp"
#include "cliquetop/weights.hpp"

namespace cliquetop {

// A (k+1)-vertex set with the time span on which it is a maximal clique:
// birth = max internal weight, death = min over external vertices j of
// max_{l in face} U(j,l). Stored only when birth < death; the face is
// maximal exactly on [birth, death).
struct MaximalityInterval {
    Face face;
    double birth = 0.0;
    double death = 0.0;
};

// Event sweep: as each edge arrives, the (k+1)-cliques it completes are the
// candidate births; the death is computed immediately by scanning external
// vertices. Sweeps the full schedule from t = 0 so no maximal face is
// missed; `t_lo` only filters intervals that die at or before it.
inline std::vector<MaximalityInterval> maximality_intervals(const EdgeWeights& w, int k, double t_lo = 0.0) {
    if (k < 1) throw std::invalid_argument("maximality_intervals: need k >= 1");
    if (!(t_lo >= 0.0 && t_lo < 1.0)) throw std::invalid_argument("maximality_intervals: t_lo must lie in [0,1)");
    const Vertex n = w.vertex_count();
    if (static_cast<std::size_t>(k) + 1 > n) return {};

    EventSchedule sched = event_schedule(w, 0.0, 1.0);
    Graph g(n);
    std::vector<MaximalityInterval> out;
    std::vector<std::uint64_t> common;
    std::vector<Vertex> members(static_cast<std::size_t>(k) + 1);

    auto death_of = [&](const std::vector<Vertex>& face, double birth) {
        // min over external j of max connection weight; early exit once some
        // external already covers the face below its birth.
        double death = std::numeric_limits<double>::infinity();
        for (Vertex j = 0; j < n; ++j) {
            if (std::binary_search(face.begin(), face.end(), j)) continue;
            double mx = 0.0;
            for (Vertex l : face) mx = std::max(mx, w(j, l));
            if (mx <= birth) return 0.0;  // born non-maximal
            death = std::min(death, mx);
        }
        return death;
    };

    // Chooses k-1 further vertices from the common neighborhood of the new
    // edge, mutually adjacent, in increasing order.
    std::vector<Vertex> pool;
    auto emit = [&](double birth) {
        std::vector<Vertex> face(members);
        std::sort(face.begin(), face.end());
        double death = death_of(face, birth);
        if (death > birth && death > t_lo) out.push_back({Face(face), birth, death});
    };
    auto extend = [&](auto&& self, std::size_t chosen, std::size_t next_pool_idx, double birth) -> void {
        if (chosen == static_cast<std::size_t>(k) + 1) {
            emit(birth);
            return;
        }
        for (std::size_t idx = next_pool_idx; idx < pool.size(); ++idx) {
            Vertex v = pool[idx];
            bool ok = true;
            for (std::size_t j = 2; j < chosen; ++j)
                if (!g.has_edge(members[j], v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            members[chosen] = v;
            self(self, chosen + 1, idx + 1, birth);
        }
    };

    for (const EdgeEvent& ev : sched.events) {
        g.add_edge(ev.u, ev.v);
        members[0] = ev.u;
        members[1] = ev.v;
        if (k == 1) {
            emit(ev.weight);
            continue;
        }
        g.common_neighbors(ev.u, ev.v, common);
        pool.clear();
        g.for_each_set(common, [&](Vertex v) { pool.push_back(v); });
        extend(extend, 2, 0, ev.weight);
    }
    std::sort(out.begin(), out.end(), [](const MaximalityInterval& a, const MaximalityInterval& b) {
        return a.birth < b.birth;
    });
    return out;
}

// Interval bundle with the derived counting processes N_k and N_k*.
// N*(t) = #{death > t}; N(t) = N*(t) - Nhat(t) with Nhat(t) = #{birth > t}.
class FaceCountProcess {
public:
    explicit FaceCountProcess(std::vector<MaximalityInterval> intervals) : intervals_(std::move(intervals)) {
        births_.reserve(intervals_.size());
        deaths_.reserve(intervals_.size());
        for (const MaximalityInterval& iv : intervals_) {
            births_.push_back(iv.birth);
            deaths_.push_back(iv.death);
        }
        std::sort(births_.begin(), births_.end());
        std::sort(deaths_.begin(), deaths_.end());
    }

    const std::vector<MaximalityInterval>& intervals() const { return intervals_; }

    long long count_Nk(double t) const { return count_Nk_star(t) - count_Nhat(t); }

    long long count_Nk_star(double t) const {
        return static_cast<long long>(deaths_.end() - std::upper_bound(deaths_.begin(), deaths_.end(), t));
    }

    long long count_Nhat(double t) const {
        return static_cast<long long>(births_.end() - std::upper_bound(births_.begin(), births_.end(), t));
    }

    // Interval endpoints (births and deaths, with multiplicity) inside the
    // t-window (a, b]. This is the jump measure of the counting process: a
    // face alive at a is counted once (its death), a face born after a twice.
    long long endpoints_in(double a, double b) const {
        auto count = [&](const std::vector<double>& xs) {
            return std::upper_bound(xs.begin(), xs.end(), b) - std::upper_bound(xs.begin(), xs.end(), a);
        };
        return static_cast<long long>(count(births_) + count(deaths_));
    }

    double max_death() const { return deaths_.empty() ? 0.0 : deaths_.back(); }

    // N_k as a right-continuous step function from t = 0.
    StepFunction step_function() const {
        StepFunction f;
        f.start = 0.0;
        f.initial_value = 0;
        std::size_t bi = 0, di = 0;
        long long value = 0;
        while (bi < births_.size() || di < deaths_.size()) {
            double t = std::min(bi < births_.size() ? births_[bi] : std::numeric_limits<double>::infinity(),
                                di < deaths_.size() ? deaths_[di] : std::numeric_limits<double>::infinity());
            while (bi < births_.size() && births_[bi] == t) {
                ++value;
                ++bi;
            }
            while (di < deaths_.size() && deaths_[di] == t) {
                --value;
                ++di;
            }
            f.append(t, value);
        }
        return f;
    }

private:
    std::vector<MaximalityInterval> intervals_;
    std::vector<double> births_;
    std::vector<double> deaths_;
};

// Jump measure of the N_k process over the rescaled window (a, b], counted
// with multiplicity (births + deaths). b may be +infinity, which truncates
// at t = 1 and covers every endpoint.
inline long long jump_count(const FaceCountProcess& fc, double a, double b, int k, Vertex n) {
    if (!(a < b)) throw std::invalid_argument("jump_count: need a < b");
    const double ta = critical_time(k, n, a);  // throws OutOfRegimeError when outside [0,1]
    const double tb = std::isinf(b) ? 1.0 : critical_time(k, n, b);
    return fc.endpoints_in(ta, tb);
}

// T' = sup of death times: the last moment an isolated k-face exists.
inline double hitting_time_T_prime(const FaceCountProcess& fc) { return fc.max_death(); }

// T from a Betti step process: smallest jump time with value 0 from there on.
inline HittingTime hitting_time_T(const StepFunction& betti_process) { return hitting_time(betti_process); }

// R statistics. Non-star: (k-1)-faces of X(t) whose link has at most m
// vertices. Star: k-subsets that at some s >= t form a (k-1)-face with at
// most m cofaces; since the coface count is non-decreasing in s, the minimum
// over s >= max(birth, t) is attained at s = max(birth, t).
inline long long count_R(const EdgeWeights& w, int k, long long m, double t, bool star) {
    if (k < 1) throw std::invalid_argument("count_R: need k >= 1");
    if (m < 0) throw std::invalid_argument("count_R: need m >= 0");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("count_R: t must lie in [0,1]");
    const Vertex n = w.vertex_count();
    if (static_cast<std::size_t>(k) > n) return 0;
    long long total = 0;

    if (!star) {
        Graph g = graph_at(w, t);
        detail::enumerate_cliques(g, static_cast<std::size_t>(k),
                                  [&](const std::vector<Vertex>& clique, const std::vector<std::uint64_t>&) {
                                      if (clique.size() != static_cast<std::size_t>(k)) return;
                                      std::vector<std::uint64_t> common;
                                      g.common_neighbors(clique, common);
                                      if (static_cast<long long>(Graph::popcount(common)) <= m) ++total;
                                  });
        return total;
    }

    // All k-subsets; enumerate lexicographically.
    std::vector<Vertex> subset(static_cast<std::size_t>(k));
    auto eval = [&]() {
        double birth = 0.0;
        for (std::size_t i = 0; i < subset.size(); ++i)
            for (std::size_t j = i + 1; j < subset.size(); ++j) birth = std::max(birth, w(subset[i], subset[j]));
        const double s0 = std::max(birth, t);
        long long cofaces = 0;
        for (Vertex j = 0; j < n; ++j) {
            if (std::find(subset.begin(), subset.end(), j) != subset.end()) continue;
            double mx = 0.0;
            for (Vertex l : subset) mx = std::max(mx, w(j, l));
            if (mx <= s0) {
                if (++cofaces > m) return;
            }
        }
        ++total;
    };
    auto rec = [&](auto&& self, std::size_t pos, Vertex next) -> void {
        if (pos == subset.size()) {
            eval();
            return;
        }
        for (Vertex v = next; v < n; ++v) {
            subset[pos] = v;
            self(self, pos + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
    return total;
}

// CSV `face,birth,death` with faces as dash-joined vertex ids.
inline void intervals_to_csv(const std::vector<MaximalityInterval>& intervals, std::ostream& os) {
    os << "face,birth,death\n";
    for (const MaximalityInterval& iv : intervals)
        os << iv.face.to_string() << ',' << format_real(iv.birth) << ',' << format_real(iv.death) << '\n';
}

struct HittingTimes {
    double T = 0.0;
    double T_prime = 0.0;
    double c_T = 0.0;
    double c_T_prime = 0.0;
    bool equal = false;
    bool T_vanished_before_window = false;
};

inline HittingTimes make_hitting_times(const StepFunction& betti_process, const FaceCountProcess& fc, int k, Vertex n) {
    HittingTimes h;
    HittingTime ht = hitting_time_T(betti_process);
    h.T = ht.t;
    h.T_vanished_before_window = ht.vanished_before_window;
    h.T_prime = hitting_time_T_prime(fc);
    h.equal = h.T == h.T_prime;
    h.c_T = rescale_time(h.T, k, n);
    h.c_T_prime = rescale_time(h.T_prime, k, n);
    return h;
}

inline nlohmann::json hitting_times_to_json(const HittingTimes& h) {
    return nlohmann::json{{"T", h.T},       {"T_prime", h.T_prime}, {"c_T", h.c_T},
                          {"c_T_prime", h.c_T_prime}, {"equal", h.equal}};
}

}  // namespace cliquetop
