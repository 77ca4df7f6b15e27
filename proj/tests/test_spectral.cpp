#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cliquetop/homology.hpp"
#include "cliquetop/spectral.hpp"
#include "oracles.hpp"

using namespace cliquetop;

namespace {

Graph complete(Vertex n) {
    Graph g(n);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph cycle(Vertex n) {
    Graph g(n);
    for (Vertex i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

}  // namespace

TEST_CASE("normalized Laplacian spectra of standard graphs") {
    Graph k2 = complete(2);
    Eigen::VectorXd eig = normalized_laplacian_spectrum(k2);
    REQUIRE(eig(0) == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(eig(1) == Catch::Approx(2.0).margin(1e-9));

    for (Vertex m = 3; m <= 10; ++m) {
        REQUIRE(lambda2(complete(m)) ==
                Catch::Approx(static_cast<double>(m) / (m - 1)).margin(1e-9));
    }

    Graph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    Eigen::VectorXd peig = normalized_laplacian_spectrum(p3);
    REQUIRE(peig(0) == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(peig(1) == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(peig(2) == Catch::Approx(2.0).margin(1e-9));
    REQUIRE(lambda2(p3) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("lambda2 preconditions") {
    Graph two_edges(4);
    two_edges.add_edge(0, 1);
    two_edges.add_edge(2, 3);
    REQUIRE_THROWS_AS(lambda2(two_edges), std::invalid_argument);

    Graph isolated(3);
    isolated.add_edge(0, 1);
    REQUIRE_THROWS_AS(normalized_laplacian(isolated), DegenerateInputError);
}

TEST_CASE("spectral report invariants") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 60; ++rep) {
        Graph g = oracles::random_graph(10, 0.12 + 0.06 * (rep % 10), rng);
        SpectralReport rep_out = spectral_report(g, 0.5);
        REQUIRE(rep_out.lambda2 >= -1e-9);
        REQUIRE(rep_out.lambda2 <= 2.0 + 1e-9);
        REQUIRE(rep_out.margin == Catch::Approx(rep_out.lambda2 - 0.5).margin(1e-12));
        std::size_t non_isolated = 0;
        for (Vertex v = 0; v < 10; ++v)
            if (g.degree(v) > 0) ++non_isolated;
        if (non_isolated >= 2) {
            REQUIRE((rep_out.lambda2 <= 1e-9) == (rep_out.num_components >= 2));
        }
    }

    // two components of size >= 2: second eigenvalue is 0
    Graph two(5);
    two.add_edge(0, 1);
    two.add_edge(2, 3);
    two.add_edge(3, 4);
    SpectralReport rep_out = spectral_report(two, 0.5);
    REQUIRE(rep_out.lambda2 == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(rep_out.num_components == 2);
    REQUIRE(rep_out.giant_size == 3);
}

TEST_CASE("giant component") {
    Graph conn = cycle(6);
    LabeledSubgraph same = giant_component(conn);
    REQUIRE(same.graph.vertex_count() == 6);
    REQUIRE(same.graph.edge_count() == 6);

    Graph mixed(5);  // K3 on {0,1,2} plus K2 on {3,4}
    mixed.add_edge(0, 1);
    mixed.add_edge(0, 2);
    mixed.add_edge(1, 2);
    mixed.add_edge(3, 4);
    LabeledSubgraph giant = giant_component(mixed);
    REQUIRE(giant.labels == std::vector<Vertex>{0, 1, 2});
    REQUIRE(giant.graph.edge_count() == 3);

    // tie: two K2s, the one containing vertex 0 wins
    Graph tie(4);
    tie.add_edge(2, 3);
    tie.add_edge(0, 1);
    REQUIRE(giant_component(tie).labels == std::vector<Vertex>{0, 1});

    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = oracles::random_graph(14, 0.12, rng);
        LabeledSubgraph giant_out = giant_component(g);
        ComponentLabels comps = connected_components(g);
        std::vector<std::size_t> size(comps.count, 0);
        for (Vertex v = 0; v < 14; ++v) ++size[comps.label[v]];
        REQUIRE(giant_out.labels.size() == *std::max_element(size.begin(), size.end()));
    }
}

TEST_CASE("garland certification examples") {
    // 2-skeleton of the full simplex on 5 vertices: vertex links are K_4
    SimplicialComplex skel = clique_complex(complete(5), 2);
    GarlandCertificate cert = garland_certify(skel, 1);
    REQUIRE(cert.purity_ok);
    REQUIRE(cert.certified);
    REQUIRE(cert.has_lambda2_min);
    REQUIRE(cert.lambda2_min == Catch::Approx(4.0 / 3.0).margin(1e-9));
    REQUIRE(betti(skel, 1, FieldChoice::rational()) == 0);

    // C4: vertex links are two isolated vertices
    SimplicialComplex c4 = clique_complex(cycle(4), 2);
    GarlandCertificate c4cert = garland_certify(c4, 1);
    REQUIRE_FALSE(c4cert.certified);
    REQUIRE_FALSE(c4cert.purity_ok);  // maximal 1-faces exist
    REQUIRE(c4cert.failing.size() == 4);
    for (const LinkFinding& f : c4cert.failing) REQUIRE(f.reason == LinkFailure::isolated_vertex_in_link);
    REQUIRE(betti(c4, 1, FieldChoice::rational()) == 1);

    // any maximal k-face breaks purity
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    SimplicialComplex px = clique_complex(path, 2);
    REQUIRE_FALSE(garland_certify(px, 1).purity_ok);
}

TEST_CASE("zuk certification examples") {
    SimplicialComplex triangle = clique_complex(complete(3), 2);
    GarlandCertificate cert = zuk_certify(triangle);
    REQUIRE(cert.certified);  // vertex links are K_2 with gap 2 > 1/2

    SimplicialComplex c4 = clique_complex(cycle(4), 2);
    REQUIRE_FALSE(zuk_certify(c4).certified);

    // dense model: the certificate must enumerate every failing vertex
    std::mt19937_64 rng(12);
    Graph dense = oracles::random_graph(30, 0.8, rng);
    SimplicialComplex dx = clique_complex(dense, 2);
    GarlandCertificate dcert = zuk_certify(dx);
    if (!dcert.certified) {
        REQUIRE((!dcert.purity_ok || !dcert.failing.empty()));
    }
    nlohmann::json j = certificate_to_json(dcert);
    REQUIRE(j.contains("failing"));
    REQUIRE(j.contains("lambda2_min"));
    REQUIRE(j.contains("purity_ok"));
}

TEST_CASE("garland certification is sound against rational homology") {
    std::mt19937_64 rng(2718);
    int certified_count = 0;
    for (int rep = 0; rep < 120; ++rep) {
        Graph g = oracles::random_graph(9, 0.45 + 0.05 * (rep % 8), rng);
        SimplicialComplex x = clique_complex(g, 3);
        for (int k : {1, 2}) {
            GarlandCertificate cert = garland_certify(x, k);
            if (cert.certified) {
                ++certified_count;
                REQUIRE(betti(x, k, FieldChoice::rational()) == 0);
            }
        }
    }
    REQUIRE(certified_count > 0);
}

TEST_CASE("lambda2 against the Jacobi oracle") {
    std::mt19937_64 rng(600);
    int compared = 0;
    for (int rep = 0; rep < 40; ++rep) {
        Graph g = oracles::random_graph(12, 0.5, rng);
        if (connected_components(g).count != 1) continue;
        std::vector<double> oracle = oracles::jacobi_eigenvalues(oracles::normalized_laplacian_dense(g));
        REQUIRE(lambda2(g) == Catch::Approx(oracle[1]).margin(1e-8));
        ++compared;
    }
    REQUIRE(compared > 10);
}
