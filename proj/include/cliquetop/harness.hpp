#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "cliquetop/betti_process.hpp"
#include "cliquetop/common.hpp"
#include "cliquetop/critical_window.hpp"
#include "cliquetop/maximality.hpp"
#include "cliquetop/statistics.hpp"
#include "cliquetop/weights.hpp"

namespace cliquetop {

struct ExperimentConfig {
    Vertex n = 0;
    int k = 1;
    std::vector<double> c_grid;  // sorted ascending
    int trials = 1;
    std::uint64_t master_seed = 0;
    FieldChoice field = FieldChoice::prime();
    int parallelism = 1;
    bool compute_betti = false;   // interval-only runs skip homology
    double time_budget_seconds = 0.0;  // 0 disables the budget
    bool enforce_limits = true;   // k >= 2 homology is capped at n <= 80 by default

    void validate() const {
        if (n < 3) throw std::invalid_argument("config: need n >= 3");
        if (k < 1) throw std::invalid_argument("config: need k >= 1");
        if (trials < 1) throw std::invalid_argument("config: need trials >= 1");
        if (parallelism < 1) throw std::invalid_argument("config: need parallelism >= 1");
        if (c_grid.empty()) throw std::invalid_argument("config: c_grid must be non-empty");
        if (!std::is_sorted(c_grid.begin(), c_grid.end()))
            throw std::invalid_argument("config: c_grid must be sorted ascending");
        for (double c : c_grid) {
            double t = critical_time(k, n, c);  // throws when out of regime
            if (!(t > 0.0 && t < 1.0)) throw OutOfRegimeError("config: critical time not inside (0,1)");
        }
        if (enforce_limits && compute_betti && k >= 2 && n > 80)
            throw std::invalid_argument("config: k >= 2 homology is limited to n <= 80 (set enforce_limits=false to override)");
    }

    nlohmann::json to_json() const {
        return nlohmann::json{{"n", n},
                              {"k", k},
                              {"c_grid", c_grid},
                              {"trials", trials},
                              {"master_seed", master_seed},
                              {"field", field.kind == FieldChoice::Kind::Prime ? "prime:" + std::to_string(field.p)
                                                                               : std::string("rational")},
                              {"compute_betti", compute_betti}};
    }
};

// Counts observed at one rescaled probe time.
struct ProbeCounts {
    double c = 0.0;
    double t = 0.0;
    long long n_k = 0;
    long long n_k_star = 0;
    long long jumps_after = 0;  // interval endpoints in (t, 1]
    std::optional<long long> beta;
};

struct TrialRecord {
    int trial_index = 0;
    std::uint64_t seed = 0;
    std::vector<ProbeCounts> counts;
    std::vector<double> jump_times;  // endpoint times inside the c-window
    double T_prime = 0.0;
    double c_T_prime = 0.0;
    std::optional<double> T;
    std::optional<double> c_T;
    std::optional<bool> equal;
    bool T_vanished_before_window = false;
};

inline nlohmann::json trial_record_to_json(const TrialRecord& r) {
    nlohmann::json counts = nlohmann::json::array();
    for (const ProbeCounts& pc : r.counts) {
        nlohmann::json item{{"c", pc.c}, {"t", pc.t}, {"N_k", pc.n_k}, {"N_k_star", pc.n_k_star},
                            {"jumps_after", pc.jumps_after}};
        if (pc.beta) item["beta_k"] = *pc.beta;
        counts.push_back(std::move(item));
    }
    nlohmann::json out{{"trial", r.trial_index}, {"seed", r.seed},          {"counts", counts},
                       {"jump_times", r.jump_times}, {"T_prime", r.T_prime}, {"c_T_prime", r.c_T_prime}};
    if (r.T) {
        out["T"] = *r.T;
        out["c_T"] = *r.c_T;
        out["equal"] = *r.equal;
        out["T_vanished_before_window"] = r.T_vanished_before_window;
    }
    return out;
}

inline TrialRecord run_single_trial(const ExperimentConfig& cfg, int index) {
    TrialRecord rec;
    rec.trial_index = index;
    rec.seed = derive_trial_seed(cfg.master_seed, static_cast<std::uint64_t>(index));
    EdgeWeights w = generate_weights(cfg.n, rec.seed);
    FaceCountProcess fc(maximality_intervals(w, cfg.k, 0.0));

    std::optional<StepFunction> bp;
    if (cfg.compute_betti) bp = betti_process(w, cfg.k, 0.0, cfg.field);

    for (double c : cfg.c_grid) {
        ProbeCounts pc;
        pc.c = c;
        pc.t = critical_time(cfg.k, cfg.n, c);
        pc.n_k = fc.count_Nk(pc.t);
        pc.n_k_star = fc.count_Nk_star(pc.t);
        pc.jumps_after = fc.endpoints_in(pc.t, 1.0);
        if (bp) pc.beta = bp->value_at(pc.t);
        rec.counts.push_back(pc);
    }

    const double t_min = critical_time(cfg.k, cfg.n, cfg.c_grid.front());
    const double t_max = critical_time(cfg.k, cfg.n, cfg.c_grid.back());
    for (const MaximalityInterval& iv : fc.intervals()) {
        if (iv.birth > t_min && iv.birth <= t_max) rec.jump_times.push_back(iv.birth);
        if (iv.death > t_min && iv.death <= t_max) rec.jump_times.push_back(iv.death);
    }
    std::sort(rec.jump_times.begin(), rec.jump_times.end());

    rec.T_prime = hitting_time_T_prime(fc);
    rec.c_T_prime = rescale_time(rec.T_prime, cfg.k, cfg.n);
    if (bp) {
        HittingTime ht = hitting_time_T(*bp);
        rec.T = ht.t;
        rec.c_T = rescale_time(ht.t, cfg.k, cfg.n);
        rec.T_vanished_before_window = ht.vanished_before_window;
        rec.equal = (*rec.T == rec.T_prime);
    }
    return rec;
}

struct RunResult {
    std::vector<TrialRecord> records;
    bool budget_exceeded = false;
    int trials_requested = 0;
};

// Runs the campaign with trial-level parallelism. Per-trial seeds are
// derived from (master_seed, index), so the serialized output is a pure
// function of the config regardless of the worker count.
inline RunResult run_trials(const ExperimentConfig& cfg) {
    cfg.validate();
    RunResult result;
    result.trials_requested = cfg.trials;
    std::vector<std::optional<TrialRecord>> slots(static_cast<std::size_t>(cfg.trials));

    const auto start = std::chrono::steady_clock::now();
    std::atomic<int> next{0};
    std::atomic<bool> over_budget{false};
    auto worker = [&]() {
        for (;;) {
            if (over_budget.load(std::memory_order_relaxed)) return;
            const int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= cfg.trials) return;
            if (cfg.time_budget_seconds > 0.0) {
                const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                if (elapsed > cfg.time_budget_seconds) {
                    over_budget.store(true, std::memory_order_relaxed);
                    return;
                }
            }
            slots[static_cast<std::size_t>(i)] = run_single_trial(cfg, i);
        }
    };

    const int workers = std::min(cfg.parallelism, cfg.trials);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    // Flush the completed prefix; a budget stop may leave later slots empty.
    for (auto& slot : slots) {
        if (!slot) break;
        result.records.push_back(std::move(*slot));
    }
    result.budget_exceeded = over_budget.load();
    return result;
}

inline void records_to_jsonl(const std::vector<TrialRecord>& records, std::ostream& os) {
    for (const TrialRecord& r : records) os << trial_record_to_json(r).dump() << '\n';
}

// ---------------------------------------------------------------------------
// Statistics over a finished campaign.

namespace detail {
inline const ProbeCounts& probe_at(const TrialRecord& r, double c) {
    for (const ProbeCounts& pc : r.counts)
        if (std::abs(pc.c - c) < 1e-12) return pc;
    throw std::invalid_argument("no probe at requested c");
}
}  // namespace detail

struct PoissonGofReport {
    double c = 0.0;
    double mu = 0.0;
    std::size_t sample_size = 0;
    std::vector<double> empirical_pmf;        // of N_k(t_c)
    std::vector<double> target_pmf;           // Poisson(mu)
    double tv = 0.0;
    std::optional<double> tv_beta;            // of beta_k(t_c) when recorded
    std::vector<double> empirical_pmf_beta;
};

inline PoissonGofReport poisson_gof(const std::vector<TrialRecord>& records, double c, int k) {
    if (records.empty()) throw std::invalid_argument("poisson_gof: no records");
    PoissonGofReport rep;
    rep.c = c;
    rep.mu = mu(k, c);
    rep.sample_size = records.size();
    std::vector<long long> nk, beta;
    for (const TrialRecord& r : records) {
        const ProbeCounts& pc = detail::probe_at(r, c);
        nk.push_back(pc.n_k);
        if (pc.beta) beta.push_back(*pc.beta);
    }
    int count_max = 0;
    for (long long s : nk) count_max = std::max(count_max, static_cast<int>(s));
    rep.empirical_pmf = empirical_pmf(nk, count_max);
    rep.target_pmf = poisson_pmf(rep.mu, count_max);
    rep.tv = tv_to_poisson(nk, rep.mu);
    if (beta.size() == records.size()) {
        rep.tv_beta = tv_to_poisson(beta, rep.mu);
        int bmax = 0;
        for (long long s : beta) bmax = std::max(bmax, static_cast<int>(s));
        rep.empirical_pmf_beta = empirical_pmf(beta, bmax);
    }
    return rep;
}

inline nlohmann::json poisson_gof_to_json(const PoissonGofReport& rep) {
    nlohmann::json out{{"c", rep.c},
                       {"mu", rep.mu},
                       {"sample_size", rep.sample_size},
                       {"empirical_pmf", rep.empirical_pmf},
                       {"target_pmf", rep.target_pmf},
                       {"tv", rep.tv}};
    if (rep.tv_beta) {
        out["tv_beta"] = *rep.tv_beta;
        out["empirical_pmf_beta"] = rep.empirical_pmf_beta;
    }
    return out;
}

struct GumbelGofReport {
    std::size_t sample_size = 0;
    double ks_T_prime = 0.0;
    std::optional<double> ks_T;
};

// KS distance between the rescaled hitting times and G(c) = exp(-mu(k,c)).
// Both T and T' are tested when the records carry both.
inline GumbelGofReport gumbel_gof(const std::vector<TrialRecord>& records, int k, Vertex n) {
    if (records.empty()) throw std::invalid_argument("gumbel_gof: no records");
    (void)n;
    GumbelGofReport rep;
    rep.sample_size = records.size();
    std::vector<double> cs;
    for (const TrialRecord& r : records) cs.push_back(r.c_T_prime);
    auto cdf = [k](double c) { return gumbel_cdf(k, c); };
    rep.ks_T_prime = ks_statistic(cs, cdf);
    if (records.front().c_T) {
        std::vector<double> ct;
        for (const TrialRecord& r : records) ct.push_back(r.c_T.value());
        rep.ks_T = ks_statistic(ct, cdf);
    }
    return rep;
}

// Fraction of trials with T == T' (exact equality of event weights).
inline double hitting_agreement(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw std::invalid_argument("hitting_agreement: no records");
    std::size_t agree = 0, total = 0;
    for (const TrialRecord& r : records) {
        if (!r.equal) throw std::invalid_argument("hitting_agreement: records were computed without betti");
        ++total;
        if (*r.equal) ++agree;
    }
    return static_cast<double>(agree) / static_cast<double>(total);
}

struct NhatPoint {
    double c = 0.0;
    MeanStderr nhat;
};

inline std::vector<NhatPoint> nhat_curve(const std::vector<TrialRecord>& records, const std::vector<double>& c_grid) {
    std::vector<NhatPoint> out;
    for (double c : c_grid) {
        std::vector<double> xs;
        for (const TrialRecord& r : records) {
            const ProbeCounts& pc = detail::probe_at(r, c);
            xs.push_back(static_cast<double>(pc.n_k_star - pc.n_k));
        }
        out.push_back({c, mean_stderr(xs)});
    }
    return out;
}

struct FactorialMomentRow {
    int r = 0;
    MeanStderr empirical;
    double target = 0.0;  // mu(k,c)^r
};

inline std::vector<FactorialMomentRow> factorial_moments(const std::vector<TrialRecord>& records, double c, int k,
                                                         int r_max) {
    if (r_max < 1 || r_max > 4) throw std::invalid_argument("factorial_moments: need 1 <= r_max <= 4");
    std::vector<long long> nk;
    for (const TrialRecord& r : records) nk.push_back(detail::probe_at(r, c).n_k);
    std::vector<FactorialMomentRow> out;
    const double m = mu(k, c);
    for (int r = 1; r <= r_max; ++r) out.push_back({r, factorial_moment(nk, r), std::pow(m, r)});
    return out;
}

// Empirical probability of seeing no jump in the rescaled window (a, b],
// against the limit exp(-(mu(k,a) - mu(k,b))). Requires the window to lie
// inside the recorded c-grid span.
struct VoidProbability {
    double empirical = 0.0;
    double target = 0.0;
};

inline VoidProbability void_probability(const std::vector<TrialRecord>& records, double a, double b, int k, Vertex n,
                                        const std::vector<double>& c_grid) {
    if (!(a < b)) throw std::invalid_argument("void_probability: need a < b");
    if (a < c_grid.front() || b > c_grid.back())
        throw std::invalid_argument("void_probability: window outside the recorded c-grid span");
    const double ta = critical_time(k, n, a);
    const double tb = critical_time(k, n, b);
    std::size_t empty = 0;
    for (const TrialRecord& r : records) {
        bool any = false;
        for (double t : r.jump_times)
            if (t > ta && t <= tb) {
                any = true;
                break;
            }
        if (!any) ++empty;
    }
    VoidProbability vp;
    vp.empirical = static_cast<double>(empty) / static_cast<double>(records.size());
    vp.target = std::exp(-(mu(k, a) - mu(k, b)));
    return vp;
}

}  // namespace cliquetop
