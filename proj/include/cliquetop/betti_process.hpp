#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cliquetop/graph.hpp"
#include "cliquetop/homology.hpp"
#include "cliquetop/rank.hpp"
#include "cliquetop/step_function.hpp"
#include "cliquetop/weights.hpp"

namespace cliquetop {
namespace detail {

// Row ids for faces of one fixed dimension, assigned in creation order so
// that column pivots are the youngest faces. Tuples of up to 4 vertices are
// packed into a 64-bit key; larger tuples fall back to an ordered map.
class FaceIdTable {
public:
    explicit FaceIdTable(std::size_t tuple_size = 1) : packed_(tuple_size <= 4) {}

    std::uint32_t assign(const Vertex* vs, std::size_t len) {
        const std::uint32_t id = next_++;
        if (packed_)
            packed_ids_.emplace(pack(vs, len), id);
        else
            map_ids_.emplace(std::vector<Vertex>(vs, vs + len), id);
        return id;
    }

    std::uint32_t get(const Vertex* vs, std::size_t len) const {
        if (packed_) return packed_ids_.at(pack(vs, len));
        return map_ids_.at(std::vector<Vertex>(vs, vs + len));
    }

    std::uint32_t size() const { return next_; }

private:
    static std::uint64_t pack(const Vertex* vs, std::size_t len) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < len; ++i) key = (key << 16) | (vs[i] + 1ull);
        return key;
    }

    bool packed_;
    std::uint32_t next_ = 0;
    std::unordered_map<std::uint64_t, std::uint32_t> packed_ids_;
    std::map<std::vector<Vertex>, std::uint32_t> map_ids_;
};

template <class Reducer>
struct ReducerTraits;

template <>
struct ReducerTraits<PrimeColumnReducer> {
    static PrimeColumnReducer make(const FieldChoice& f) { return PrimeColumnReducer(f.p); }
    static PrimeColumnReducer::Column column(std::vector<std::pair<std::uint32_t, int>>& pairs,
                                             const PrimeColumnReducer& r) {
        std::sort(pairs.begin(), pairs.end());
        PrimeColumnReducer::Column c;
        c.reserve(pairs.size());
        for (const auto& [row, sign] : pairs) c.push_back({row, sign > 0 ? 1ull : r.p() - 1});
        return c;
    }
};

template <>
struct ReducerTraits<ExactColumnReducer> {
    static ExactColumnReducer make(const FieldChoice&) { return ExactColumnReducer(); }
    static ExactColumnReducer::Column column(std::vector<std::pair<std::uint32_t, int>>& pairs,
                                             const ExactColumnReducer&) {
        std::sort(pairs.begin(), pairs.end());
        ExactColumnReducer::Column c;
        c.reserve(pairs.size());
        for (const auto& [row, sign] : pairs) c.push_back({row, sign});
        return c;
    }
};

// One pass over the edge schedule maintaining beta_k = f_k - rank d_k -
// rank d_{k+1} exactly at every event.
//
// Boundary matrices only gain columns along the filtration (a new edge row
// is zero in every existing column), so incremental column reduction
// reproduces the from-scratch rank. The reductions are organized lazily:
// since boundaries are cycles, rank d_d can never exceed
// Z_{d-1} = f_{d-1} - rank d_{d-1}, so whenever the installed columns
// already reach that bound, beta_{d-1} = 0 exactly and the remaining
// columns can wait on a stack. Popping newest-first makes the usual case --
// a face whose youngest subface row is still unclaimed -- an O(1) install,
// which keeps the gap closed outside the critical window without touching
// the backlog. A column only ever pays for full reduction while its level's
// Betti number is genuinely in doubt.
template <class Reducer>
class BettiSweep {
public:
    BettiSweep(const EdgeWeights& w, int k, double t_lo, const FieldChoice& field)
        : w_(w),
          k_(k),
          t_lo_(t_lo),
          g_(w.vertex_count()),
          uf_(w.vertex_count()),
          edge_rows_(EdgeWeights::pair_count(w.vertex_count()), UINT32_MAX) {
        if (w.vertex_count() >= 65535) throw std::invalid_argument("betti_process: n too large for packed face keys");
        face_counts_.assign(static_cast<std::size_t>(k_) + 2, 0);
        for (int d = 2; d <= k_ + 1; ++d) levels_.emplace_back(d, field);
        for (int d = 2; d <= k_; ++d) id_tables_.emplace(d, FaceIdTable(static_cast<std::size_t>(d) + 1));
        beta_ = k_ == 0 ? static_cast<long long>(w.vertex_count()) : 0;  // empty complex
    }

    StepFunction run() {
        StepFunction sf;
        sf.start = t_lo_;
        EventSchedule sched = event_schedule(w_, 0.0, 1.0);
        bool initial_set = false;
        for (const EdgeEvent& ev : sched.events) {
            if (!initial_set && ev.weight > t_lo_) {
                sf.initial_value = beta_;
                initial_set = true;
            }
            process_event(ev);
            if (initial_set) sf.append(ev.weight, beta_);
        }
        if (!initial_set) sf.initial_value = beta_;
        return sf;
    }

private:
    struct Level {
        Level(int d_, const FieldChoice& field)
            : d(d_), reducer(ReducerTraits<Reducer>::make(field)), scratch(ReducerTraits<Reducer>::make(field)) {}
        int d;
        Reducer reducer;
        Reducer scratch;               // per-event local reducer over fresh rows
        std::vector<Vertex> pending;   // flat LIFO stack, stride d+1
        std::vector<Vertex> buffer;    // this event's new faces, flat
        std::uint32_t fresh_rows = 0;  // row-id watermark at dim d-1
    };

    void process_event(const EdgeEvent& ev) {
        g_.add_edge(ev.u, ev.v);
        uf_.unite(ev.u, ev.v);
        ++face_counts_[1];
        for (Level& level : levels_) level.fresh_rows = row_watermark(level.d - 1);
        if (k_ >= 1) edge_rows_[tri_index(ev.u, ev.v)] = next_edge_row_++;

        if (k_ == 0) {
            beta_ = static_cast<long long>(uf_.component_count());
            return;
        }

        collect_new_faces(ev);

        for (Level& level : levels_) {
            order_and_push(level);
            const long long bound = cycle_space_dim(level.d - 1);
            while (bound > static_cast<long long>(level.reducer.rank()) && !level.pending.empty()) reduce_one(level);
        }

        beta_ = cycle_space_dim(k_) - (k_ >= 1 ? static_cast<long long>(levels_.back().reducer.rank()) : 0);
        if (beta_ < 0) throw std::logic_error("betti_process: negative rank-nullity, internal error");
    }

    std::uint32_t row_watermark(int d) const {
        if (d <= 0) return 0;
        if (d == 1) return next_edge_row_;
        auto it = id_tables_.find(d);
        return it == id_tables_.end() ? 0 : it->second.size();
    }

    // Drains pop newest-first, so stack this event's columns with the ones
    // that are independent on the fresh rows alone on top: those install
    // with short reductions, and enough of them close the rank gap without
    // burning work on columns that are locally forced to be dependent.
    void order_and_push(Level& level) {
        const std::size_t stride = static_cast<std::size_t>(level.d) + 1;
        if (level.buffer.empty()) return;
        level.scratch.clear();
        dependents_.clear();
        independents_.clear();
        for (std::size_t off = 0; off + stride <= level.buffer.size(); off += stride) {
            const Vertex* face = level.buffer.data() + off;
            pairs_.clear();
            int sign = 1;
            sub_.resize(stride - 1);
            for (std::size_t drop = 0; drop < stride; ++drop, sign = -sign) {
                std::size_t o = 0;
                for (std::size_t i = 0; i < stride; ++i)
                    if (i != drop) sub_[o++] = face[i];
                const std::uint32_t row = row_id(sub_.data(), stride - 1);
                if (row >= level.fresh_rows) pairs_.emplace_back(row - level.fresh_rows, sign);
            }
            const bool indep = level.scratch.add_column(ReducerTraits<Reducer>::column(pairs_, level.scratch));
            std::vector<Vertex>& dst = indep ? independents_ : dependents_;
            dst.insert(dst.end(), face, face + stride);
        }
        level.pending.insert(level.pending.end(), dependents_.begin(), dependents_.end());
        level.pending.insert(level.pending.end(), independents_.begin(), independents_.end());
        level.buffer.clear();
    }

    // Z_d = f_d - rank d_d, the dimension of the cycle space.
    long long cycle_space_dim(int d) {
        if (d == 0) return static_cast<long long>(uf_.component_count());
        const long long rank_d =
            d == 1 ? static_cast<long long>(g_.vertex_count()) - static_cast<long long>(uf_.component_count())
                   : static_cast<long long>(levels_[static_cast<std::size_t>(d) - 2].reducer.rank());
        return face_counts_[static_cast<std::size_t>(d)] - rank_d;
    }

    // All cliques {u,v}+S with S inside the common neighborhood, |S| <= k,
    // registered ascending in |S| so rows exist before their cofaces.
    void collect_new_faces(const EdgeEvent& ev) {
        pool_.clear();
        g_.common_neighbors(ev.u, ev.v, common_);
        g_.for_each_set(common_, [&](Vertex v) { pool_.push_back(v); });
        chosen_.clear();
        extend(ev, 0);
    }

    void extend(const EdgeEvent& ev, std::size_t next_idx) {
        if (chosen_.size() == static_cast<std::size_t>(k_)) return;
        for (std::size_t idx = next_idx; idx < pool_.size(); ++idx) {
            const Vertex v = pool_[idx];
            bool ok = true;
            for (Vertex c : chosen_)
                if (!g_.has_edge(c, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen_.push_back(v);
            record_face(ev);
            extend(ev, idx + 1);
            chosen_.pop_back();
        }
    }

    void record_face(const EdgeEvent& ev) {
        const int d = static_cast<int>(chosen_.size()) + 1;
        face_.assign(chosen_.begin(), chosen_.end());
        face_.push_back(ev.u);
        face_.push_back(ev.v);
        std::sort(face_.begin(), face_.end());
        ++face_counts_[static_cast<std::size_t>(d)];
        if (d >= 2 && d <= k_) id_tables_.at(d).assign(face_.data(), face_.size());
        Level& level = levels_[static_cast<std::size_t>(d) - 2];
        level.pending.insert(level.pending.end(), face_.begin(), face_.end());
    }

    void reduce_one(Level& level) {
        const std::size_t stride = static_cast<std::size_t>(level.d) + 1;
        const Vertex* face = level.pending.data() + level.pending.size() - stride;
        pairs_.clear();
        int sign = 1;
        for (std::size_t drop = 0; drop < stride; ++drop, sign = -sign) {
            std::size_t o = 0;
            sub_.resize(stride - 1);
            for (std::size_t i = 0; i < stride; ++i)
                if (i != drop) sub_[o++] = face[i];
            pairs_.emplace_back(row_id(sub_.data(), stride - 1), sign);
        }
        level.pending.resize(level.pending.size() - stride);
        level.reducer.add_column(ReducerTraits<Reducer>::column(pairs_, level.reducer));
    }

    std::uint32_t row_id(const Vertex* face, std::size_t len) const {
        if (len == 1) return face[0];
        if (len == 2) return edge_rows_[tri_index(face[0], face[1])];
        return id_tables_.at(static_cast<int>(len) - 1).get(face, len);
    }

    std::size_t tri_index(Vertex i, Vertex j) const {
        const Vertex n = g_.vertex_count();
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
    }

    const EdgeWeights& w_;
    int k_;
    double t_lo_;
    Graph g_;
    UnionFind uf_;
    std::vector<std::uint32_t> edge_rows_;
    std::uint32_t next_edge_row_ = 0;
    std::map<int, FaceIdTable> id_tables_;  // dims 2..k
    std::vector<Level> levels_;             // dims 2..k+1
    std::vector<long long> face_counts_;    // by dimension, 0 unused
    long long beta_ = 0;

    std::vector<std::uint64_t> common_;
    std::vector<Vertex> pool_;
    std::vector<Vertex> chosen_;
    std::vector<Vertex> face_;
    std::vector<std::pair<std::uint32_t, int>> pairs_;
    std::vector<Vertex> sub_;
};

}  // namespace detail

// The Betti number process beta_k(t) evaluated at every edge-event time in
// (t_lo, 1], with the value at t_lo itself as the initial value. Values
// agree with betti(clique_complex(graph_at(w, t), k + 1), k, field) at every
// probe time.
inline StepFunction betti_process(const EdgeWeights& w, int k, double t_lo, const FieldChoice& field) {
    if (k < 0) throw std::invalid_argument("betti_process: need k >= 0");
    if (!(t_lo >= 0.0 && t_lo < 1.0)) throw std::invalid_argument("betti_process: t_lo must lie in [0,1)");
    if (field.kind == FieldChoice::Kind::Prime) {
        detail::BettiSweep<PrimeColumnReducer> sweep(w, k, t_lo, field);
        return sweep.run();
    }
    detail::BettiSweep<ExactColumnReducer> sweep(w, k, t_lo, field);
    return sweep.run();
}

}  // namespace cliquetop
