#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "cliquetop/common.hpp"
#include "cliquetop/complex.hpp"
#include "cliquetop/graph.hpp"

namespace cliquetop {

// L = I - D^{-1/2} A D^{-1/2}. Throughout, lambda2 denotes the second
// SMALLEST eigenvalue of L (the spectral gap above 0); the certification
// thresholds k/(k+1) and 1/2 only make sense for that reading.
inline Eigen::MatrixXd normalized_laplacian(const Graph& g) {
    const Vertex n = g.vertex_count();
    std::vector<double> inv_sqrt_deg(n);
    for (Vertex v = 0; v < n; ++v) {
        const std::size_t d = g.degree(v);
        if (d == 0) throw DegenerateInputError("normalized_laplacian: isolated vertex " + std::to_string(v));
        inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(d));
    }
    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
    for (Vertex u = 0; u < n; ++u)
        g.for_each_in_row(g.row(u), [&](Vertex v) {
            if (v > u) {
                const double x = -inv_sqrt_deg[u] * inv_sqrt_deg[v];
                L(u, v) = x;
                L(v, u) = x;
            }
        });
    return L;
}

inline Eigen::VectorXd normalized_laplacian_spectrum(const Graph& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized_laplacian(g), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();  // ascending
}

// Second-smallest eigenvalue of the normalized Laplacian. The caller must
// check connectivity first; a disconnected graph is rejected.
inline double lambda2(const Graph& g) {
    if (g.vertex_count() < 2) throw std::invalid_argument("lambda2: need at least 2 vertices");
    if (connected_components(g).count != 1) throw std::invalid_argument("lambda2: graph is disconnected");
    return normalized_laplacian_spectrum(g)(1);
}

// Diagnostic bundle for one graph against a threshold. Isolated vertices
// enter as zero rows of L, so lambda2 vanishes exactly when the graph is
// disconnected (counting isolated vertices as components).
struct SpectralReport {
    double lambda2 = 0.0;
    bool connected = false;
    int num_components = 0;
    int giant_size = 0;
    double margin = 0.0;
};

inline SpectralReport spectral_report(const Graph& g, double threshold) {
    if (g.vertex_count() == 0) throw std::invalid_argument("spectral_report: empty graph");
    SpectralReport rep;
    ComponentLabels comps = connected_components(g);
    rep.num_components = static_cast<int>(comps.count);
    rep.connected = comps.count == 1;
    std::vector<int> size(comps.count, 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) ++size[comps.label[v]];
    rep.giant_size = *std::max_element(size.begin(), size.end());

    const Vertex n = g.vertex_count();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> inv_sqrt_deg(n, 0.0);
    for (Vertex v = 0; v < n; ++v) {
        const std::size_t d = g.degree(v);
        if (d > 0) {
            inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(d));
            L(v, v) = 1.0;
        }
    }
    for (Vertex u = 0; u < n; ++u)
        g.for_each_in_row(g.row(u), [&](Vertex v) {
            if (v > u) {
                const double x = -inv_sqrt_deg[u] * inv_sqrt_deg[v];
                L(u, v) = x;
                L(v, u) = x;
            }
        });
    if (n >= 2) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L, Eigen::EigenvaluesOnly);
        rep.lambda2 = solver.eigenvalues()(1);
    }
    rep.margin = rep.lambda2 - threshold;
    return rep;
}

enum class LinkFailure { disconnected, small_gap, isolated_vertex_in_link };

inline const char* to_string(LinkFailure f) {
    switch (f) {
        case LinkFailure::disconnected: return "disconnected";
        case LinkFailure::small_gap: return "small_gap";
        case LinkFailure::isolated_vertex_in_link: return "isolated_vertex_in_link";
    }
    return "?";
}

struct LinkFinding {
    Face face;
    LinkFailure reason = LinkFailure::disconnected;
    double lambda2 = 0.0;
    bool has_lambda2 = false;
};

struct GarlandCertificate {
    int k = 0;
    bool certified = false;
    bool purity_ok = false;
    double threshold = 0.0;        // spectral gap the links must exceed
    double margin = 1e-9;          // strictness band; gaps inside it do not certify
    std::vector<LinkFinding> failing;
    double lambda2_min = 0.0;
    bool has_lambda2_min = false;
};

namespace detail {

// Purity: every maximal stored face has dimension exactly `top`.
inline bool is_pure(const SimplicialComplex& x, int top) {
    if (x.face_count(top) == 0) return false;
    for (int d = x.dim_cap(); d > top; --d)
        if (x.face_count(d) > 0) return false;
    for (int d = 0; d < top; ++d)
        if (!maximal_k_faces(x, d).empty()) return false;
    return true;
}

inline GarlandCertificate certify_links(const SimplicialComplex& x, int k, double threshold) {
    GarlandCertificate cert;
    cert.k = k;
    cert.threshold = threshold;
    cert.purity_ok = is_pure(x, k + 1);
    for (const Face& sigma : x.faces(k - 1)) {
        LabeledSubgraph link = link_skeleton(x, sigma);
        const Vertex ln = link.graph.vertex_count();
        if (ln == 0) {
            cert.failing.push_back({sigma, LinkFailure::disconnected, 0.0, false});
            continue;
        }
        bool isolated = false;
        for (Vertex v = 0; v < ln; ++v)
            if (link.graph.degree(v) == 0) isolated = true;
        if (isolated) {
            cert.failing.push_back({sigma, LinkFailure::isolated_vertex_in_link, 0.0, false});
            continue;
        }
        if (connected_components(link.graph).count != 1) {
            cert.failing.push_back({sigma, LinkFailure::disconnected, 0.0, false});
            continue;
        }
        // past the gates the link is connected with >= 2 vertices
        const double l2 = normalized_laplacian_spectrum(link.graph)(1);
        if (!cert.has_lambda2_min || l2 < cert.lambda2_min) {
            cert.lambda2_min = l2;
            cert.has_lambda2_min = true;
        }
        if (!(l2 > threshold + cert.margin)) cert.failing.push_back({sigma, LinkFailure::small_gap, l2, true});
    }
    cert.certified = cert.purity_ok && cert.failing.empty();
    return cert;
}

}  // namespace detail

// Certified means: X is pure (k+1)-dimensional and every (k-1)-face has a
// connected link with spectral gap strictly above k/(k+1); that forces the
// k-th rational cohomology to vanish. Failures are reported per face, never
// thrown.
inline GarlandCertificate garland_certify(const SimplicialComplex& x, int k) {
    if (k < 1) throw std::invalid_argument("garland_certify: need k >= 1");
    if (x.dim_cap() < k + 1) throw std::invalid_argument("garland_certify: dim_cap must be >= k+1");
    return detail::certify_links(x, k, static_cast<double>(k) / (k + 1));
}

// Pure 2-dimensional complex with all vertex links connected and gap > 1/2:
// the fundamental group has property (T).
inline GarlandCertificate zuk_certify(const SimplicialComplex& x) {
    if (x.dim_cap() < 2) throw std::invalid_argument("zuk_certify: dim_cap must be >= 2");
    return detail::certify_links(x, 1, 0.5);
}

inline nlohmann::json certificate_to_json(const GarlandCertificate& cert) {
    nlohmann::json failing = nlohmann::json::array();
    for (const LinkFinding& f : cert.failing) {
        nlohmann::json item{{"face", f.face.vertices}, {"reason", to_string(f.reason)}};
        if (f.has_lambda2)
            item["lambda2"] = f.lambda2;
        else
            item["lambda2"] = nullptr;
        failing.push_back(std::move(item));
    }
    nlohmann::json out{{"k", cert.k},
                       {"certified", cert.certified},
                       {"purity_ok", cert.purity_ok},
                       {"failing", failing}};
    if (cert.has_lambda2_min)
        out["lambda2_min"] = cert.lambda2_min;
    else
        out["lambda2_min"] = nullptr;
    return out;
}

}  // namespace cliquetop
