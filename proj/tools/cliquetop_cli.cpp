// Command-line surface: simulation, process extraction, certification and
// campaign statistics. Emits CSV/JSON for external plotting; every output
// embeds the tool version and the fully resolved configuration.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cliquetop/cliquetop.hpp"

namespace {

using nlohmann::json;

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        os = &file;
    }
};

cliquetop::FieldChoice parse_field(const std::string& s) {
    if (s == "rational") return cliquetop::FieldChoice::rational();
    if (s == "prime") return cliquetop::FieldChoice::prime();
    if (s.rfind("prime:", 0) == 0) return cliquetop::FieldChoice::prime(std::stoull(s.substr(6)));
    throw CLI::ValidationError("--field", "expected rational, prime, or prime:<p>");
}

std::string field_name(const cliquetop::FieldChoice& f) {
    return f.kind == cliquetop::FieldChoice::Kind::Rational ? "rational" : "prime:" + std::to_string(f.p);
}

int line_of_offset(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

// ---------------------------------------------------------------------------

int cmd_betti_curve(std::uint32_t n, int k, std::uint64_t seed, double t_lo, const std::string& field_str,
                    const std::string& out_path) {
    using namespace cliquetop;
    FieldChoice field = parse_field(field_str);
    if (!(t_lo >= 0.0 && t_lo < 1.0)) throw std::invalid_argument("--t-lo must lie in [0,1)");

    EdgeWeights w = generate_weights(n, seed);
    StepFunction bp = betti_process(w, k, t_lo, field);
    FaceCountProcess fc(maximality_intervals(w, k, 0.0));

    OutputTarget out;
    out.open(out_path);
    json config{{"tool_version", kVersion}, {"command", "betti-curve"}, {"n", n},          {"k", k},
                {"seed", seed},             {"t_lo", t_lo},             {"field", field_name(field)}};
    *out.os << "# " << config.dump() << '\n';
    *out.os << "t,c,beta_k,N_k,N_k_star\n";
    auto row = [&](double t) {
        *out.os << format_real(t) << ',' << format_real(rescale_time(t, k, n)) << ',' << bp.value_at(t) << ','
                << fc.count_Nk(t) << ',' << fc.count_Nk_star(t) << '\n';
    };
    row(t_lo);
    for (const EdgeEvent& ev : event_schedule(w, 0.0, 1.0).events)
        if (ev.weight > t_lo) row(ev.weight);
    return 0;
}

int cmd_hitting(std::uint32_t n, int k, int trials, std::uint64_t master_seed, int parallelism,
                const std::string& field_str, double budget_seconds, const std::string& out_path) {
    using namespace cliquetop;
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    cfg.parallelism = parallelism;
    cfg.field = parse_field(field_str);
    cfg.compute_betti = true;
    cfg.time_budget_seconds = budget_seconds;
    cfg.c_grid = {0.0};
    cfg.validate();

    RunResult result = run_trials(cfg);

    OutputTarget out;
    out.open(out_path);
    records_to_jsonl(result.records, *out.os);
    json summary{{"summary", true},
                 {"tool_version", kVersion},
                 {"command", "hitting"},
                 {"config", cfg.to_json()},
                 {"parallelism_independent", true},
                 {"trials_completed", result.records.size()}};
    if (!result.records.empty()) summary["agreement_rate"] = hitting_agreement(result.records);
    if (result.budget_exceeded) summary["budget_exceeded"] = true;
    *out.os << summary.dump() << '\n';
    return result.budget_exceeded ? 1 : 0;
}

int cmd_poisson_test(std::uint32_t n, int k, double c, int trials, std::uint64_t master_seed, int parallelism,
                     int r_max, const std::string& out_path) {
    using namespace cliquetop;
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    cfg.parallelism = parallelism;
    cfg.compute_betti = false;
    cfg.c_grid = {c};
    cfg.validate();

    RunResult result = run_trials(cfg);
    PoissonGofReport rep = poisson_gof(result.records, c, k);

    json out_json = poisson_gof_to_json(rep);
    out_json["tool_version"] = kVersion;
    out_json["command"] = "poisson-test";
    out_json["config"] = cfg.to_json();
    json moments = json::array();
    for (const FactorialMomentRow& row : factorial_moments(result.records, c, k, r_max))
        moments.push_back(json{{"r", row.r},
                               {"empirical", row.empirical.mean},
                               {"stderr", row.empirical.stderr_},
                               {"target", row.target}});
    out_json["factorial_moments"] = moments;
    if (result.budget_exceeded) out_json["budget_exceeded"] = true;

    OutputTarget out;
    out.open(out_path);
    *out.os << out_json.dump(2) << '\n';
    return result.budget_exceeded ? 1 : 0;
}

int cmd_certify(const std::string& input_path, int k, const std::string& mode, const std::string& out_path) {
    using namespace cliquetop;
    std::ifstream in(input_path);
    if (!in) throw std::invalid_argument("cannot open input file: " + input_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    json parsed;
    try {
        parsed = json::parse(text);
    } catch (const json::parse_error& e) {
        std::cerr << "parse error in " << input_path << " near line " << line_of_offset(text, e.byte) << ": "
                  << e.what() << '\n';
        return 2;
    }

    // pad the stored dimension so low-dimensional inputs are judged (and
    // fail purity) rather than rejected
    const int needed_cap = mode == "zuk" ? 2 : k + 1;
    SimplicialComplex probe = complex_from_json(parsed);
    SimplicialComplex x = probe.dim_cap() >= needed_cap ? std::move(probe) : complex_from_json(parsed, needed_cap);
    GarlandCertificate cert;
    if (mode == "garland") {
        cert = garland_certify(x, k);
    } else if (mode == "zuk") {
        cert = zuk_certify(x);
    } else {
        throw CLI::ValidationError("--mode", "expected garland or zuk");
    }

    json out_json = certificate_to_json(cert);
    out_json["tool_version"] = kVersion;
    out_json["config"] = json{{"command", "certify"}, {"input", input_path}, {"mode", mode}, {"k", cert.k}};

    OutputTarget out;
    out.open(out_path);
    *out.os << out_json.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random clique complex process toolkit"};
    app.require_subcommand(1);

    std::uint32_t n = 30;
    int k = 1;
    int trials = 100;
    int parallelism = 1;
    int r_max = 2;
    double t_lo = 0.0;
    double c = 0.0;
    double budget_seconds = 0.0;
    std::string seed_str = "1";
    std::string field_str = "prime";
    std::string out_path;
    std::string input_path;
    std::string mode = "garland";

    CLI::App* curve = app.add_subcommand("betti-curve", "Betti/face-count curves of one trial as CSV");
    curve->add_option("--n", n, "vertex count")->required();
    curve->add_option("--k", k, "dimension");
    curve->add_option("--seed", seed_str, "seed (decimal or 0x-hex)");
    curve->add_option("--t-lo", t_lo, "window start in [0,1)");
    curve->add_option("--field", field_str, "rational | prime | prime:<p>");
    curve->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* hit = app.add_subcommand("hitting", "hitting times over a seeded campaign as JSON-lines");
    hit->add_option("--n", n, "vertex count")->required();
    hit->add_option("--k", k, "dimension");
    hit->add_option("--trials", trials, "number of trials");
    hit->add_option("--master-seed", seed_str, "master seed (decimal or 0x-hex)");
    hit->add_option("--parallelism", parallelism, "worker count");
    hit->add_option("--field", field_str, "rational | prime | prime:<p>");
    hit->add_option("--budget-seconds", budget_seconds, "wall-clock budget, 0 disables");
    hit->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* pois = app.add_subcommand("poisson-test", "Poisson goodness of fit at one rescaled time");
    pois->add_option("--n", n, "vertex count")->required();
    pois->add_option("--k", k, "dimension");
    pois->add_option("--c", c, "rescaled probe time");
    pois->add_option("--trials", trials, "number of trials");
    pois->add_option("--master-seed", seed_str, "master seed (decimal or 0x-hex)");
    pois->add_option("--parallelism", parallelism, "worker count");
    pois->add_option("--r-max", r_max, "highest factorial moment (<= 4)");
    pois->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* cert = app.add_subcommand("certify", "spectral certificate for a complex file");
    cert->add_option("--input", input_path, "complex JSON file")->required();
    cert->add_option("--k", k, "dimension to certify (garland)");
    cert->add_option("--mode", mode, "garland | zuk");
    cert->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::uint64_t seed = cliquetop::parse_seed_token(seed_str);
        if (curve->parsed()) return cmd_betti_curve(n, k, seed, t_lo, field_str, out_path);
        if (hit->parsed()) return cmd_hitting(n, k, trials, seed, parallelism, field_str, budget_seconds, out_path);
        if (pois->parsed()) return cmd_poisson_test(n, k, c, trials, seed, parallelism, r_max, out_path);
        if (cert->parsed()) return cmd_certify(input_path, k, mode, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cliquetop::OutOfRegimeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
