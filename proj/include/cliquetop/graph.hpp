#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cliquetop {

using Vertex = std::uint32_t;

// Undirected simple graph on vertices [0, n) with bitset adjacency rows.
// Row intersections give common neighborhoods in O(n/64) words, which is the
// maximality test used throughout.
class Graph {
public:
    Graph() = default;

    explicit Graph(Vertex n) : n_(n), words_(word_count(n)), bits_(static_cast<std::size_t>(n) * words_, 0) {}

    Vertex vertex_count() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t words_per_row() const { return words_; }

    void add_edge(Vertex u, Vertex v) {
        check_pair(u, v);
        if (has_edge(u, v)) return;
        set_bit(u, v);
        set_bit(v, u);
        ++edge_count_;
    }

    bool has_edge(Vertex u, Vertex v) const {
        check_pair(u, v);
        return (row(u)[v >> 6] >> (v & 63)) & 1ull;
    }

    const std::uint64_t* row(Vertex u) const { return bits_.data() + static_cast<std::size_t>(u) * words_; }

    std::size_t degree(Vertex u) const {
        std::size_t d = 0;
        const std::uint64_t* r = row(u);
        for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(__builtin_popcountll(r[w]));
        return d;
    }

    // All edges (u < v) in lexicographic order.
    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < n_; ++u)
            for_each_in_row(row(u), [&](Vertex v) {
                if (v > u) out.emplace_back(u, v);
            });
        return out;
    }

    // dst := row(u) AND row(v)
    void common_neighbors(Vertex u, Vertex v, std::vector<std::uint64_t>& dst) const {
        dst.resize(words_);
        const std::uint64_t* a = row(u);
        const std::uint64_t* b = row(v);
        for (std::size_t w = 0; w < words_; ++w) dst[w] = a[w] & b[w];
    }

    // dst := AND over all rows of `verts`; empty vertex list gives all-ones up to n.
    void common_neighbors(const std::vector<Vertex>& verts, std::vector<std::uint64_t>& dst) const {
        dst.assign(words_, ~0ull);
        if (n_ % 64 != 0 && words_ > 0) dst[words_ - 1] = (1ull << (n_ % 64)) - 1;
        for (Vertex v : verts) {
            const std::uint64_t* r = row(v);
            for (std::size_t w = 0; w < words_; ++w) dst[w] &= r[w];
        }
    }

    template <class F>
    void for_each_in_row(const std::uint64_t* r, F&& f) const {
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t word = r[w];
            while (word) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
                f(static_cast<Vertex>(w * 64 + bit));
                word &= word - 1;
            }
        }
    }

    template <class F>
    void for_each_set(const std::vector<std::uint64_t>& mask, F&& f) const {
        for_each_in_row(mask.data(), f);
    }

    static std::size_t popcount(const std::vector<std::uint64_t>& mask) {
        std::size_t c = 0;
        for (std::uint64_t w : mask) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

private:
    static std::size_t word_count(Vertex n) { return (static_cast<std::size_t>(n) + 63) / 64; }

    void check_pair(Vertex u, Vertex v) const {
        if (u >= n_ || v >= n_) throw std::invalid_argument("vertex out of range");
        if (u == v) throw std::invalid_argument("self-loops are not allowed");
    }

    void set_bit(Vertex u, Vertex v) { bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ull << (v & 63); }

    Vertex n_ = 0;
    std::size_t words_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::uint64_t> bits_;
};

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), count_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns true when two components merged.
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        --count_;
        return true;
    }

    std::size_t component_count() const { return count_; }

private:
    std::vector<std::uint32_t> parent_;
    std::size_t count_;
};

// Component labels in [0, count), numbered by smallest contained vertex.
struct ComponentLabels {
    std::vector<std::uint32_t> label;
    std::size_t count = 0;
};

inline ComponentLabels connected_components(const Graph& g) {
    UnionFind uf(g.vertex_count());
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        g.for_each_in_row(g.row(u), [&](Vertex v) {
            if (v > u) uf.unite(u, v);
        });
    ComponentLabels out;
    out.label.resize(g.vertex_count());
    std::vector<std::uint32_t> remap(g.vertex_count(), UINT32_MAX);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        std::uint32_t r = uf.find(u);
        if (remap[r] == UINT32_MAX) remap[r] = static_cast<std::uint32_t>(out.count++);
        out.label[u] = remap[r];
    }
    return out;
}

// A graph together with the original labels of its vertices; used wherever a
// subgraph must report findings in source coordinates.
struct LabeledSubgraph {
    Graph graph;
    std::vector<Vertex> labels;  // labels[i] = original id of local vertex i
};

inline LabeledSubgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& verts) {
    LabeledSubgraph out;
    out.labels = verts;
    std::sort(out.labels.begin(), out.labels.end());
    out.graph = Graph(static_cast<Vertex>(out.labels.size()));
    for (std::size_t i = 0; i < out.labels.size(); ++i)
        for (std::size_t j = i + 1; j < out.labels.size(); ++j)
            if (g.has_edge(out.labels[i], out.labels[j]))
                out.graph.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return out;
}

// Largest connected component; ties broken by smallest minimum vertex label.
inline LabeledSubgraph giant_component(const Graph& g) {
    if (g.vertex_count() == 0) throw std::invalid_argument("giant_component: empty graph");
    ComponentLabels comps = connected_components(g);
    std::vector<std::size_t> size(comps.count, 0);
    for (Vertex u = 0; u < g.vertex_count(); ++u) ++size[comps.label[u]];
    // Labels are numbered by smallest contained vertex, so the first argmax
    // realizes the tie-break.
    std::size_t best = 0;
    for (std::size_t c = 1; c < comps.count; ++c)
        if (size[c] > size[best]) best = c;
    std::vector<Vertex> verts;
    verts.reserve(size[best]);
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        if (comps.label[u] == best) verts.push_back(u);
    return induced_subgraph(g, verts);
}

}  // namespace cliquetop
