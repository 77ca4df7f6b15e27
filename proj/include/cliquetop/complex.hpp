#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cliquetop/graph.hpp"

namespace cliquetop {

// A face is a strictly increasing vertex tuple; a (k+1)-clique is a k-face.
struct Face {
    std::vector<Vertex> vertices;

    Face() = default;
    Face(std::initializer_list<Vertex> vs) : vertices(vs) { normalize(); }
    explicit Face(std::vector<Vertex> vs) : vertices(std::move(vs)) { normalize(); }

    int dimension() const { return static_cast<int>(vertices.size()) - 1; }

    bool operator==(const Face& o) const { return vertices == o.vertices; }
    bool operator<(const Face& o) const { return vertices < o.vertices; }

    // Subface with vertex at position `i` removed.
    Face without(std::size_t i) const {
        Face f;
        f.vertices.reserve(vertices.size() - 1);
        for (std::size_t j = 0; j < vertices.size(); ++j)
            if (j != i) f.vertices.push_back(vertices[j]);
        return f;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (i) s += '-';
            s += std::to_string(vertices[i]);
        }
        return s;
    }

private:
    void normalize() {
        std::sort(vertices.begin(), vertices.end());
        if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
            throw std::invalid_argument("Face: duplicate vertices");
    }
};

// Faces stored by dimension up to dim_cap, each level sorted lexicographically.
// Immutable after construction.
class SimplicialComplex {
public:
    SimplicialComplex(Vertex n, int dim_cap) : n_(n), faces_(static_cast<std::size_t>(dim_cap) + 1) {
        if (dim_cap < 0) throw std::invalid_argument("SimplicialComplex: dim_cap must be >= 0");
    }

    Vertex vertex_count() const { return n_; }
    int dim_cap() const { return static_cast<int>(faces_.size()) - 1; }

    std::size_t face_count(int d) const {
        return (d >= 0 && d <= dim_cap()) ? faces_[static_cast<std::size_t>(d)].size() : 0;
    }

    const std::vector<Face>& faces(int d) const {
        if (d < 0 || d > dim_cap()) throw std::invalid_argument("faces: dimension out of range");
        return faces_[static_cast<std::size_t>(d)];
    }

    bool contains(const Face& f) const {
        int d = f.dimension();
        if (d < 0 || d > dim_cap()) return false;
        const std::vector<Face>& level = faces_[static_cast<std::size_t>(d)];
        return std::binary_search(level.begin(), level.end(), f);
    }

    // Index of a face within its sorted dimension level.
    std::size_t face_index(const Face& f) const {
        const std::vector<Face>& level = faces(f.dimension());
        auto it = std::lower_bound(level.begin(), level.end(), f);
        if (it == level.end() || !(*it == f)) throw std::invalid_argument("face_index: face not present");
        return static_cast<std::size_t>(it - level.begin());
    }

    int top_dimension() const {
        for (int d = dim_cap(); d >= 0; --d)
            if (face_count(d) > 0) return d;
        return -1;
    }

    // True when a clique construction saw cliques above dim_cap; such a
    // complex is a truncation, not the full clique complex.
    bool truncated_above_cap() const { return truncated_; }

    // Builder access (package-internal; complexes are immutable afterwards).
    struct Builder;

    // Closes the generator list downward. Vertices not covered by any
    // generator are not faces; `n` only fixes the label space.
    static SimplicialComplex from_generators(Vertex n, int dim_cap, const std::vector<Face>& generators) {
        SimplicialComplex x(n, dim_cap);
        std::vector<std::set<Face>> levels(static_cast<std::size_t>(dim_cap) + 1);
        std::vector<Face> stack(generators.begin(), generators.end());
        while (!stack.empty()) {
            Face f = std::move(stack.back());
            stack.pop_back();
            int d = f.dimension();
            if (d < 0) continue;
            for (Vertex v : f.vertices)
                if (v >= n) throw std::invalid_argument("from_generators: vertex out of range");
            if (d <= dim_cap) {
                if (!levels[static_cast<std::size_t>(d)].insert(f).second) continue;
            } else {
                x.truncated_ = true;
            }
            for (std::size_t i = 0; i < f.vertices.size() && f.dimension() > 0; ++i) stack.push_back(f.without(i));
        }
        for (int d = 0; d <= dim_cap; ++d)
            x.faces_[static_cast<std::size_t>(d)].assign(levels[static_cast<std::size_t>(d)].begin(),
                                                         levels[static_cast<std::size_t>(d)].end());
        return x;
    }

private:
    friend SimplicialComplex clique_complex(const Graph&, int);
    friend SimplicialComplex remove_maximal_k_faces(const SimplicialComplex&, int);

    Vertex n_ = 0;
    bool truncated_ = false;
    std::vector<std::vector<Face>> faces_;
};

namespace detail {

// Enumerates all cliques of g with at most max_size vertices, in
// lexicographic order. Calls f(clique, extension_mask) where extension_mask
// is the common neighborhood restricted to vertices above the last one
// (the candidate set for further extension).
template <class F>
void enumerate_cliques(const Graph& g, std::size_t max_size, F&& f) {
    const Vertex n = g.vertex_count();
    std::vector<Vertex> clique;
    std::vector<std::vector<std::uint64_t>> cand_stack(max_size + 1);
    // cand at depth d: vertices > clique.back() adjacent to every member
    auto above_mask = [&](Vertex v, std::vector<std::uint64_t>& m) {
        // zero out bits <= v
        std::size_t w = (v >> 6);
        for (std::size_t i = 0; i < w && i < m.size(); ++i) m[i] = 0;
        if (w < m.size()) m[w] &= ~((2ull << (v & 63)) - 1);
    };
    auto rec = [&](auto&& self, const std::vector<std::uint64_t>& cand) -> void {
        f(static_cast<const std::vector<Vertex>&>(clique), cand);
        if (clique.size() == max_size) return;
        g.for_each_set(cand, [&](Vertex v) {
            std::vector<std::uint64_t>& next = cand_stack[clique.size() + 1];
            next.resize(cand.size());
            const std::uint64_t* r = g.row(v);
            for (std::size_t w = 0; w < cand.size(); ++w) next[w] = cand[w] & r[w];
            above_mask(v, next);
            clique.push_back(v);
            self(self, next);
            clique.pop_back();
        });
    };
    std::vector<std::uint64_t> all(g.words_per_row(), ~0ull);
    if (n % 64 != 0 && !all.empty()) all.back() = (1ull << (n % 64)) - 1;
    if (max_size == 0) return;
    for (Vertex v = 0; v < n; ++v) {
        std::vector<std::uint64_t>& next = cand_stack[1];
        next.resize(all.size());
        const std::uint64_t* r = g.row(v);
        for (std::size_t w = 0; w < all.size(); ++w) next[w] = all[w] & r[w];
        above_mask(v, next);
        clique.push_back(v);
        rec(rec, next);
        clique.pop_back();
    }
}

}  // namespace detail

// Faces are exactly the cliques of g with at most dim_cap+1 vertices.
inline SimplicialComplex clique_complex(const Graph& g, int dim_cap) {
    if (dim_cap < 0) throw std::invalid_argument("clique_complex: dim_cap must be >= 0");
    SimplicialComplex x(g.vertex_count(), dim_cap);
    std::vector<std::vector<Face>>& levels = x.faces_;
    detail::enumerate_cliques(g, static_cast<std::size_t>(dim_cap) + 1, [&](const std::vector<Vertex>& clique,
                                                                            const std::vector<std::uint64_t>& cand) {
        if (clique.empty()) return;
        Face f;
        f.vertices = clique;
        levels[clique.size() - 1].push_back(std::move(f));
        if (clique.size() == static_cast<std::size_t>(dim_cap) + 1 && Graph::popcount(cand) > 0) x.truncated_ = true;
    });
    // enumeration emits cliques in lexicographic order already
    return x;
}

// Induced subgraph of g on the common neighbors of sigma's vertices, labels
// preserved through the index map.
inline LabeledSubgraph link_graph(const Graph& g, const Face& sigma) {
    if (sigma.vertices.empty()) throw std::invalid_argument("link_graph: empty face");
    for (std::size_t i = 0; i < sigma.vertices.size(); ++i) {
        if (sigma.vertices[i] >= g.vertex_count()) throw std::invalid_argument("link_graph: vertex out of range");
        for (std::size_t j = i + 1; j < sigma.vertices.size(); ++j)
            if (!g.has_edge(sigma.vertices[i], sigma.vertices[j]))
                throw std::invalid_argument("link_graph: sigma is not a clique");
    }
    std::vector<std::uint64_t> mask;
    g.common_neighbors(sigma.vertices, mask);
    std::vector<Vertex> verts;
    g.for_each_set(mask, [&](Vertex v) { verts.push_back(v); });
    return induced_subgraph(g, verts);
}

// All (k+1)-vertex cliques whose common neighborhood is empty, i.e. the
// maximal (k+1)-cliques of g.
inline std::vector<Face> maximal_k_faces(const Graph& g, int k) {
    if (k < 0) throw std::invalid_argument("maximal_k_faces: need k >= 0");
    std::vector<Face> out;
    const std::size_t size = static_cast<std::size_t>(k) + 1;
    detail::enumerate_cliques(g, size, [&](const std::vector<Vertex>& clique, const std::vector<std::uint64_t>&) {
        if (clique.size() != size) return;
        std::vector<std::uint64_t> common;
        g.common_neighbors(clique, common);
        if (Graph::popcount(common) == 0) {
            Face f;
            f.vertices = clique;
            out.push_back(std::move(f));
        }
    });
    return out;
}

// Maximal k-faces of a stored complex: k-faces with no stored (k+1)-coface.
inline std::vector<Face> maximal_k_faces(const SimplicialComplex& x, int k) {
    if (k < 0 || k > x.dim_cap()) throw std::invalid_argument("maximal_k_faces: k out of range");
    std::vector<bool> covered(x.face_count(k), false);
    if (k + 1 <= x.dim_cap()) {
        for (const Face& f : x.faces(k + 1))
            for (std::size_t i = 0; i < f.vertices.size(); ++i) covered[x.face_index(f.without(i))] = true;
    }
    std::vector<Face> out;
    for (std::size_t i = 0; i < covered.size(); ++i)
        if (!covered[i]) out.push_back(x.faces(k)[i]);
    return out;
}

// X' = X minus its maximal k-faces; everything else is unchanged.
inline SimplicialComplex remove_maximal_k_faces(const SimplicialComplex& x, int k) {
    std::vector<Face> sigma = maximal_k_faces(x, k);
    SimplicialComplex out(x.vertex_count(), x.dim_cap());
    out.truncated_ = x.truncated_above_cap();
    for (int d = 0; d <= x.dim_cap(); ++d) {
        if (d != k) {
            out.faces_[static_cast<std::size_t>(d)] = x.faces(d);
            continue;
        }
        std::vector<Face>& level = out.faces_[static_cast<std::size_t>(d)];
        std::set_difference(x.faces(k).begin(), x.faces(k).end(), sigma.begin(), sigma.end(),
                            std::back_inserter(level));
    }
    return out;
}

// 1-skeleton of the link of sigma inside a stored complex: vertices v with
// sigma+{v} a face, edges (u,v) with sigma+{u,v} a face. Exact for arbitrary
// complexes; coincides with the common-neighborhood subgraph on clique
// complexes. Requires faces up to dim(sigma)+2.
inline LabeledSubgraph link_skeleton(const SimplicialComplex& x, const Face& sigma) {
    const int d = sigma.dimension();
    if (d + 1 > x.dim_cap()) throw std::invalid_argument("link_skeleton: dim_cap too small");
    std::vector<Vertex> verts;
    for (const Face& f : x.faces(d + 1)) {
        if (!std::includes(f.vertices.begin(), f.vertices.end(), sigma.vertices.begin(), sigma.vertices.end()))
            continue;
        for (Vertex v : f.vertices)
            if (!std::binary_search(sigma.vertices.begin(), sigma.vertices.end(), v)) verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    LabeledSubgraph out;
    out.labels = verts;
    out.graph = Graph(static_cast<Vertex>(verts.size()));
    if (d + 2 <= x.dim_cap()) {
        for (const Face& f : x.faces(d + 2)) {
            if (!std::includes(f.vertices.begin(), f.vertices.end(), sigma.vertices.begin(), sigma.vertices.end()))
                continue;
            Vertex extra[2];
            int cnt = 0;
            for (Vertex v : f.vertices)
                if (!std::binary_search(sigma.vertices.begin(), sigma.vertices.end(), v)) extra[cnt++] = v;
            auto ia = std::lower_bound(verts.begin(), verts.end(), extra[0]) - verts.begin();
            auto ib = std::lower_bound(verts.begin(), verts.end(), extra[1]) - verts.begin();
            out.graph.add_edge(static_cast<Vertex>(ia), static_cast<Vertex>(ib));
        }
    }
    return out;
}

// V_k: vertices that are isolated in the link of some (k-1)-face.
inline std::vector<Vertex> isolated_link_vertices(const SimplicialComplex& x, int k) {
    if (k < 1) throw std::invalid_argument("isolated_link_vertices: need k >= 1");
    if (x.dim_cap() < k + 1) throw std::invalid_argument("isolated_link_vertices: dim_cap must be >= k+1");
    const std::vector<Face>& bases = x.faces(k - 1);
    std::vector<std::vector<Vertex>> link_verts(bases.size());
    std::vector<std::vector<Vertex>> link_covered(bases.size());
    for (const Face& f : x.faces(k))
        for (std::size_t i = 0; i < f.vertices.size(); ++i)
            link_verts[x.face_index(f.without(i))].push_back(f.vertices[i]);
    for (const Face& f : x.faces(k + 1)) {
        for (std::size_t i = 0; i < f.vertices.size(); ++i)
            for (std::size_t j = i + 1; j < f.vertices.size(); ++j) {
                std::size_t idx = x.face_index(f.without(j).without(i));
                link_covered[idx].push_back(f.vertices[i]);
                link_covered[idx].push_back(f.vertices[j]);
            }
    }
    std::set<Vertex> vk;
    for (std::size_t b = 0; b < bases.size(); ++b) {
        std::sort(link_covered[b].begin(), link_covered[b].end());
        for (Vertex v : link_verts[b])
            if (!std::binary_search(link_covered[b].begin(), link_covered[b].end(), v)) vk.insert(v);
    }
    return std::vector<Vertex>(vk.begin(), vk.end());
}

// Complex file format for the certifier CLI: {n, faces: [[v...], ...]}.
// The loader closes the generating faces downward.
inline SimplicialComplex complex_from_json(const nlohmann::json& j, int dim_cap = -1) {
    if (!j.is_object()) throw std::invalid_argument("complex file: expected a JSON object");
    if (!j.contains("n")) throw std::invalid_argument("complex file: missing field 'n'");
    if (!j.contains("faces")) throw std::invalid_argument("complex file: missing field 'faces'");
    if (!j.at("faces").is_array()) throw std::invalid_argument("complex file: field 'faces' must be an array");
    Vertex n = j.at("n").get<Vertex>();
    std::vector<Face> generators;
    int max_dim = 0;
    std::size_t row = 0;
    for (const auto& item : j.at("faces")) {
        if (!item.is_array())
            throw std::invalid_argument("complex file: faces[" + std::to_string(row) + "] must be an array");
        std::vector<Vertex> vs;
        for (const auto& v : item) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw std::invalid_argument("complex file: faces[" + std::to_string(row) +
                                            "] must hold non-negative integers");
            vs.push_back(v.get<Vertex>());
        }
        Face f(std::move(vs));
        max_dim = std::max(max_dim, f.dimension());
        generators.push_back(std::move(f));
        ++row;
    }
    if (dim_cap < 0) dim_cap = max_dim;
    return SimplicialComplex::from_generators(n, dim_cap, generators);
}

inline nlohmann::json complex_to_json(const SimplicialComplex& x) {
    nlohmann::json faces = nlohmann::json::array();
    // emit maximal faces per dimension as generators
    for (int d = x.dim_cap(); d >= 0; --d)
        for (const Face& f : maximal_k_faces(x, d)) faces.push_back(f.vertices);
    return nlohmann::json{{"n", x.vertex_count()}, {"faces", faces}};
}

}  // namespace cliquetop
