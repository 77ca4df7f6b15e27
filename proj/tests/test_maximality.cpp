#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "cliquetop/betti_process.hpp"
#include "cliquetop/maximality.hpp"
#include "oracles.hpp"

using namespace cliquetop;

namespace {

// U(0,1)=.1, U(2,3)=.2, U(0,2)=.3, U(1,3)=.4, U(0,3)=.5, U(1,2)=.6
EdgeWeights hand_example() {
    // upper triangle row-major: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
    return EdgeWeights(4, 0, {0.1, 0.3, 0.5, 0.6, 0.4, 0.2});
}

}  // namespace

TEST_CASE("hand-enumerated interval table, n=4, k=1") {
    FaceCountProcess fc(maximality_intervals(hand_example(), 1));
    const auto& ivs = fc.intervals();
    REQUIRE(ivs.size() == 4);
    // all four survive: {0,1} [.1,.5), {2,3} [.2,.5), {0,2} [.3,.5), {1,3} [.4,.5)
    auto find = [&](Face f) -> const MaximalityInterval& {
        for (const auto& iv : ivs)
            if (iv.face == f) return iv;
        FAIL("face not found");
        return ivs.front();
    };
    REQUIRE(find(Face{0, 1}).birth == Catch::Approx(0.1));
    REQUIRE(find(Face{0, 1}).death == Catch::Approx(0.5));
    REQUIRE(find(Face{2, 3}).birth == Catch::Approx(0.2));
    REQUIRE(find(Face{2, 3}).death == Catch::Approx(0.5));
    REQUIRE(find(Face{0, 2}).birth == Catch::Approx(0.3));
    REQUIRE(find(Face{0, 2}).death == Catch::Approx(0.5));
    REQUIRE(find(Face{1, 3}).birth == Catch::Approx(0.4));
    REQUIRE(find(Face{1, 3}).death == Catch::Approx(0.5));
    // {0,3} and {1,2} are born covered
    for (const auto& iv : ivs) {
        REQUIRE(iv.face != Face{0, 3});
        REQUIRE(iv.face != Face{1, 2});
    }

    REQUIRE(hitting_time_T_prime(fc) == Catch::Approx(0.5));
    // N_1 step: 1@.1, 2@.2, 3@.3, 4@.4, 0@.5
    StepFunction sf = fc.step_function();
    REQUIRE(sf.jump_times == std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5});
    REQUIRE(sf.values == std::vector<long long>{1, 2, 3, 4, 0});
}

TEST_CASE("sweep equals exhaustive subset scan") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        EdgeWeights w = generate_weights(15, seed);
        std::vector<MaximalityInterval> sweep = maximality_intervals(w, 1);
        std::vector<MaximalityInterval> brute = oracles::intervals_bruteforce(w, 1);
        REQUIRE(sweep.size() == brute.size());
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            REQUIRE(sweep[i].face == brute[i].face);
            REQUIRE(sweep[i].birth == brute[i].birth);
            REQUIRE(sweep[i].death == brute[i].death);
        }
    }
    // k = 2 as well
    EdgeWeights w = generate_weights(10, 77);
    std::vector<MaximalityInterval> sweep = maximality_intervals(w, 2);
    std::vector<MaximalityInterval> brute = oracles::intervals_bruteforce(w, 2);
    REQUIRE(sweep.size() == brute.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        REQUIRE(sweep[i].face == brute[i].face);
        REQUIRE(sweep[i].birth == brute[i].birth);
        REQUIRE(sweep[i].death == brute[i].death);
    }
}

TEST_CASE("counts against per-time enumeration") {
    std::mt19937_64 rng(123);
    for (std::uint64_t seed : {5ull, 6ull}) {
        EdgeWeights w = generate_weights(20, seed);
        FaceCountProcess fc(maximality_intervals(w, 1));
        for (int rep = 0; rep < 25; ++rep) {
            const double t = static_cast<double>(rng() % 1000) / 1000.0;
            const long long direct = static_cast<long long>(maximal_k_faces(graph_at(w, t), 1).size());
            REQUIRE(fc.count_Nk(t) == direct);
        }
        REQUIRE(fc.count_Nk(1.0) == 0);
        REQUIRE(fc.count_Nk(0.0) == 0);
        REQUIRE(fc.count_Nk_star(0.0) == static_cast<long long>(fc.intervals().size()));
        // star is non-increasing, and N* - N = #(birth > t)
        long long prev = fc.count_Nk_star(0.0);
        for (int i = 1; i <= 100; ++i) {
            const double t = static_cast<double>(i) / 100.0;
            const long long star = fc.count_Nk_star(t);
            REQUIRE(star <= prev);
            REQUIRE(fc.count_Nk(t) <= star);
            REQUIRE(star - fc.count_Nk(t) == fc.count_Nhat(t));
            prev = star;
        }
    }
}

TEST_CASE("jump identity: endpoints in (t_c, 1] equal N + 2*Nhat") {
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        EdgeWeights w = generate_weights(25, seed);
        FaceCountProcess fc(maximality_intervals(w, 1));
        for (double c : {-1.0, 0.0, 1.5}) {
            const double tc = critical_time(1, 25, c);
            const long long endpoints = jump_count(fc, c, std::numeric_limits<double>::infinity(), 1, 25);
            REQUIRE(endpoints == fc.count_Nk(tc) + 2 * fc.count_Nhat(tc));
        }
        // direct endpoint scan over a bounded window
        const double a = -0.5, b = 1.0;
        const double ta = critical_time(1, 25, a), tb = critical_time(1, 25, b);
        long long direct = 0;
        for (const auto& iv : fc.intervals()) {
            if (iv.birth > ta && iv.birth <= tb) ++direct;
            if (iv.death > ta && iv.death <= tb) ++direct;
        }
        REQUIRE(jump_count(fc, a, b, 1, 25) == direct);
    }
    FaceCountProcess empty{std::vector<MaximalityInterval>{}};
    REQUIRE(jump_count(empty, 0.0, 1.0, 1, 25) == 0);
    REQUIRE_THROWS_AS(jump_count(empty, 1.0, 0.0, 1, 25), std::invalid_argument);
}

TEST_CASE("hitting times") {
    FaceCountProcess empty{std::vector<MaximalityInterval>{}};
    REQUIRE(hitting_time_T_prime(empty) == 0.0);

    // T' equals the last jump time of the N_k step function
    EdgeWeights w = generate_weights(18, 21);
    FaceCountProcess fc(maximality_intervals(w, 1));
    StepFunction sf = fc.step_function();
    REQUIRE(hitting_time_T_prime(fc) == sf.jump_times.back());

    // single plateau of value 1 on [a, b) returns b
    StepFunction plateau;
    plateau.start = 0.0;
    plateau.initial_value = 0;
    plateau.append(0.25, 1);
    plateau.append(0.75, 0);
    HittingTime ht = hitting_time_T(plateau);
    REQUIRE(ht.t == 0.75);
    REQUIRE_FALSE(ht.vanished_before_window);

    // identically zero: window start, flagged
    StepFunction zero;
    zero.start = 0.1;
    zero.initial_value = 0;
    HittingTime hz = hitting_time_T(zero);
    REQUIRE(hz.t == 0.1);
    REQUIRE(hz.vanished_before_window);

    // terminal value nonzero: window too short
    StepFunction bad;
    bad.start = 0.0;
    bad.initial_value = 0;
    bad.append(0.5, 2);
    REQUIRE_THROWS_AS(hitting_time_T(bad), WindowTooShortError);

    // generalized: m >= max value gives the window start; m=0 reduces to T
    StepFunction steps;
    steps.start = 0.0;
    steps.initial_value = 0;
    steps.append(0.2, 3);
    steps.append(0.4, 1);
    steps.append(0.9, 0);
    REQUIRE(hitting_time_generalized(steps, 0).t == 0.9);
    REQUIRE(hitting_time_generalized(steps, 1).t == 0.4);
    REQUIRE(hitting_time_generalized(steps, 3).vanished_before_window);

    // end-to-start scan oracle on a random trial
    EdgeWeights wr = generate_weights(20, 5);
    StepFunction bp = betti_process(wr, 1, 0.0, FieldChoice::prime());
    HittingTime T = hitting_time_T(bp);
    EventSchedule sched = event_schedule(wr, 0.0, 1.0);
    for (const EdgeEvent& ev : sched.events) {
        if (ev.weight >= T.t) REQUIRE(bp.value_at(ev.weight) == 0);
    }
    if (!T.vanished_before_window) {
        // just before T the process is positive
        bool found_positive = false;
        for (auto it = sched.events.rbegin(); it != sched.events.rend(); ++it)
            if (it->weight < T.t) {
                found_positive = bp.value_at(it->weight) > 0;
                break;
            }
        REQUIRE(found_positive);
    }
}

TEST_CASE("count_R statistics") {
    // boundary case: t=1, m >= n-k counts every k-subset
    EdgeWeights w = generate_weights(8, 9);
    for (int k : {1, 2}) {
        const long long all = k == 1 ? 8 : 28;  // C(8,k)
        REQUIRE(count_R(w, k, 8 - k, 1.0, false) == all);
        REQUIRE(count_R(w, k, 8 - k, 1.0, true) == all);
        REQUIRE(count_R(w, k, 8 - k - 1, 1.0, false) == 0);  // strict boundary of the comparison
    }

    // path 0-1-2 realized at t=0.5
    EdgeWeights path(3, 0, {0.2, 0.9, 0.3});  // U(0,1)=.2 U(0,2)=.9 U(1,2)=.3
    REQUIRE(count_R(path, 1, 1, 0.5, false) == 2);  // endpoints have degree 1
    REQUIRE(count_R(path, 1, 0, 0.5, false) == 0);
    REQUIRE(count_R(path, 2, 0, 0.5, false) == 2);  // both edges lack triangle cofaces

    // exhaustive oracle at n=12: non-star via links, star via the s-grid
    EdgeWeights wr = generate_weights(12, 31);
    std::vector<double> grid;
    for (double x : wr.upper_triangle()) grid.push_back(x);
    std::sort(grid.begin(), grid.end());
    for (double t : {0.2, 0.45, 0.7}) {
        for (int k : {1, 2}) {
            for (long long m : {0ll, 1ll, 3ll}) {
                // non-star oracle: count (k-1)-faces (k-cliques) of G(t) with <= m common neighbors
                Graph g = graph_at(wr, t);
                long long direct = 0;
                std::vector<Vertex> subset(static_cast<std::size_t>(k));
                auto rec = [&](auto&& self, std::size_t pos, Vertex next) -> void {
                    if (pos == subset.size()) {
                        for (std::size_t i = 0; i < subset.size(); ++i)
                            for (std::size_t j = i + 1; j < subset.size(); ++j)
                                if (!g.has_edge(subset[i], subset[j])) return;
                        long long nbrs = 0;
                        for (Vertex v = 0; v < 12; ++v) {
                            if (std::find(subset.begin(), subset.end(), v) != subset.end()) continue;
                            bool adj = true;
                            for (Vertex s : subset)
                                if (!g.has_edge(s, v)) adj = false;
                            if (adj) ++nbrs;
                        }
                        if (nbrs <= m) ++direct;
                        return;
                    }
                    for (Vertex v = next; v < 12; ++v) {
                        subset[pos] = v;
                        self(self, pos + 1, v + 1);
                    }
                };
                rec(rec, 0, 0);
                REQUIRE(count_R(wr, k, m, t, false) == direct);

                // star oracle: minimum coface count over event times s >= max(birth, t)
                long long star_direct = 0;
                auto rec2 = [&](auto&& self, std::size_t pos, Vertex next) -> void {
                    if (pos == subset.size()) {
                        double birth = 0.0;
                        for (std::size_t i = 0; i < subset.size(); ++i)
                            for (std::size_t j = i + 1; j < subset.size(); ++j)
                                birth = std::max(birth, wr(subset[i], subset[j]));
                        long long best = std::numeric_limits<long long>::max();
                        for (double s : grid) {
                            if (s < std::max(birth, t)) continue;
                            Graph gs = graph_at(wr, s);
                            long long nbrs = 0;
                            for (Vertex v = 0; v < 12; ++v) {
                                if (std::find(subset.begin(), subset.end(), v) != subset.end()) continue;
                                bool adj = true;
                                for (Vertex u : subset)
                                    if (!gs.has_edge(u, v)) adj = false;
                                if (adj) ++nbrs;
                            }
                            best = std::min(best, nbrs);
                        }
                        // also probe exactly max(birth, t)
                        {
                            Graph gs = graph_at(wr, std::max(birth, t));
                            long long nbrs = 0;
                            for (Vertex v = 0; v < 12; ++v) {
                                if (std::find(subset.begin(), subset.end(), v) != subset.end()) continue;
                                bool adj = true;
                                for (Vertex u : subset)
                                    if (!gs.has_edge(u, v)) adj = false;
                                if (adj) ++nbrs;
                            }
                            best = std::min(best, nbrs);
                        }
                        if (best <= m) ++star_direct;
                        return;
                    }
                    for (Vertex v = next; v < 12; ++v) {
                        subset[pos] = v;
                        self(self, pos + 1, v + 1);
                    }
                };
                rec2(rec2, 0, 0);
                REQUIRE(count_R(wr, k, m, t, true) == star_direct);
            }
        }
    }
}

TEST_CASE("interval CSV serialization") {
    FaceCountProcess fc(maximality_intervals(hand_example(), 1));
    std::ostringstream os;
    intervals_to_csv(fc.intervals(), os);
    const std::string text = os.str();
    REQUIRE(text.rfind("face,birth,death\n", 0) == 0);
    REQUIRE(text.find("0-1,") != std::string::npos);
}

TEST_CASE("t_lo filters only intervals dead before it") {
    EdgeWeights w = generate_weights(14, 3);
    std::vector<MaximalityInterval> all = maximality_intervals(w, 1, 0.0);
    const double t_lo = 0.3;
    std::vector<MaximalityInterval> windowed = maximality_intervals(w, 1, t_lo);
    std::size_t expect = 0;
    for (const auto& iv : all)
        if (iv.death > t_lo) ++expect;
    REQUIRE(windowed.size() == expect);
}
