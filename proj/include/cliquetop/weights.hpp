#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "cliquetop/common.hpp"
#include "cliquetop/graph.hpp"

namespace cliquetop {

// Symmetric matrix of i.i.d. uniform edge weights. Immutable after
// construction; the entire filtration is a deterministic function of
// (n, seed). Weights are pairwise distinct so that all event times are
// distinct and comparisons against thresholds can be exact.
class EdgeWeights {
public:
    EdgeWeights(Vertex n, std::uint64_t seed, std::vector<double> upper_triangle)
        : n_(n), seed_(seed), w_(std::move(upper_triangle)) {
        if (n < 2) throw std::invalid_argument("EdgeWeights: need n >= 2");
        if (w_.size() != pair_count(n)) throw std::invalid_argument("EdgeWeights: wrong triangle size");
        std::vector<double> sorted = w_;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.front() <= 0.0 || sorted.back() >= 1.0)
            throw std::invalid_argument("EdgeWeights: weights must lie strictly in (0,1)");
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("EdgeWeights: weights must be pairwise distinct");
    }

    static EdgeWeights generate(Vertex n, std::uint64_t seed) {
        if (n < 2) throw std::invalid_argument("generate_weights: need n >= 2");
        std::mt19937_64 rng(seed);
        auto draw = [&rng]() {
            // 53 random bits; rejects exact zero to stay in the open interval.
            double u;
            do {
                u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            } while (u == 0.0);
            return u;
        };
        std::vector<double> w(pair_count(n));
        std::set<double> seen;
        for (double& x : w) {
            // Collisions have probability ~0 but are regenerated so that
            // downstream code may assume strict distinctness.
            do {
                x = draw();
            } while (!seen.insert(x).second);
        }
        return EdgeWeights(n, seed, std::move(w));
    }

    Vertex vertex_count() const { return n_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& upper_triangle() const { return w_; }

    double operator()(Vertex i, Vertex j) const {
        if (i == j || i >= n_ || j >= n_) throw std::invalid_argument("EdgeWeights: bad pair");
        if (i > j) std::swap(i, j);
        return w_[index(i, j)];
    }

    static std::size_t pair_count(Vertex n) { return static_cast<std::size_t>(n) * (n - 1) / 2; }

    // Applies a strictly increasing map to every weight (test hook for
    // order-isomorphism properties).
    template <class F>
    EdgeWeights relabeled(F&& f) const {
        std::vector<double> w = w_;
        for (double& x : w) x = f(x);
        return EdgeWeights(n_, seed_, std::move(w));
    }

private:
    std::size_t index(Vertex i, Vertex j) const {
        // row-major upper triangle, i < j
        return static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
    }

    Vertex n_;
    std::uint64_t seed_;
    std::vector<double> w_;
};

inline EdgeWeights generate_weights(Vertex n, std::uint64_t seed) { return EdgeWeights::generate(n, seed); }

inline Graph graph_at(const EdgeWeights& w, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("graph_at: t must lie in [0,1]");
    Graph g(w.vertex_count());
    const Vertex n = w.vertex_count();
    std::size_t idx = 0;
    const std::vector<double>& tri = w.upper_triangle();
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j, ++idx)
            if (tri[idx] <= t) g.add_edge(i, j);
    return g;
}

struct EdgeEvent {
    Vertex u, v;
    double weight;
};

struct EventSchedule {
    std::vector<EdgeEvent> events;  // ascending by weight
    double t_lo = 0.0;
    double t_hi = 1.0;
};

// All and only edges with weight in (t_lo, t_hi], sorted ascending.
inline EventSchedule event_schedule(const EdgeWeights& w, double t_lo, double t_hi) {
    if (!(t_lo >= 0.0 && t_lo < t_hi && t_hi <= 1.0))
        throw std::invalid_argument("event_schedule: need 0 <= t_lo < t_hi <= 1");
    EventSchedule sched;
    sched.t_lo = t_lo;
    sched.t_hi = t_hi;
    const Vertex n = w.vertex_count();
    std::size_t idx = 0;
    const std::vector<double>& tri = w.upper_triangle();
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j, ++idx)
            if (tri[idx] > t_lo && tri[idx] <= t_hi) sched.events.push_back({i, j, tri[idx]});
    std::sort(sched.events.begin(), sched.events.end(),
              [](const EdgeEvent& a, const EdgeEvent& b) { return a.weight < b.weight; });
    return sched;
}

// JSON object {n, seed, weights}: row-major upper triangle, weights written
// with 17 significant digits so the file round-trips bit-exactly.
inline std::string edge_weights_to_json(const EdgeWeights& w) {
    std::ostringstream os;
    os << "{\"n\": " << w.vertex_count() << ", \"seed\": " << w.seed() << ", \"weights\": [";
    const std::vector<double>& tri = w.upper_triangle();
    for (std::size_t i = 0; i < tri.size(); ++i) {
        if (i) os << ", ";
        os << format_real(tri[i]);
    }
    os << "]}";
    return os.str();
}

inline EdgeWeights edge_weights_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("edge weights file: expected a JSON object");
    for (const char* field : {"n", "seed", "weights"})
        if (!j.contains(field)) throw std::invalid_argument(std::string("edge weights file: missing field '") + field + "'");
    Vertex n = j.at("n").get<Vertex>();
    std::uint64_t seed = j.at("seed").get<std::uint64_t>();
    std::vector<double> tri = j.at("weights").get<std::vector<double>>();
    return EdgeWeights(n, seed, std::move(tri));
}

}  // namespace cliquetop
