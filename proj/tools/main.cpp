// Command-line interface for the hypergraph alignment library.
//
// Subcommands: stats | align | perturb | eval | experiment.
// Exit codes: 0 success, 2 usage/parse/validation failure, 3 degenerate
// input (the 2-core of an input hypergraph is empty).

#include "hgalign/hypergraph.hpp"
#include "hgalign/metrics.hpp"
#include "hgalign/oracle.hpp"
#include "hgalign/perturb.hpp"
#include "hgalign/rng.hpp"
#include "hgalign/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using namespace hgalign;

constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

struct DegenerateInput : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write file: " + path);
    out << text;
}

std::string basename_of(const std::string& path) {
    const auto pos = path.find_last_of('/');
    return pos == std::string::npos ? path : path.substr(pos + 1);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Expand a config file of `key = value` lines into `--key=value` tokens for
// every key not already present on the command line, so explicit flags win.
std::vector<std::string> config_tokens(const std::string& path,
                                       const std::vector<std::string>& given) {
    std::vector<std::string> extra;
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        const auto eq = t.find('=');
        if (t[0] == '[' || eq == std::string::npos)
            throw FormatError(path + ":" + std::to_string(lineno) +
                              ": expected `key = value`");
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw FormatError(path + ":" + std::to_string(lineno) + ": empty key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        const std::string flag = "--" + key;
        bool on_cli = false;
        for (const auto& g : given)
            if (g == flag || g.rfind(flag + "=", 0) == 0) {
                on_cli = true;
                break;
            }
        if (!on_cli) extra.push_back(flag + "=" + value);
    }
    return extra;
}

// parse + 2-core; empty cores abort with the degenerate-input exit code
Hypergraph load_core(const std::string& path) {
    const Hypergraph raw = parse_hypergraph(read_file(path));
    Hypergraph core = two_core(raw).core;
    if (core.vertex_count == 0 || core.edge_count() == 0)
        throw DegenerateInput("the 2-core of " + path + " is empty");
    return core;
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

std::string fmt_real(Real v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json metric_record(const std::string& name, Real value, const Hypergraph& q,
                   const Hypergraph& d, const json& seed, const json& noise) {
    return json{{"metric", name},   {"value", value},
                {"n_Q", q.vertex_count}, {"m_Q", q.edge_count()},
                {"n_D", d.vertex_count}, {"m_D", d.edge_count()},
                {"seed", seed},     {"noise", noise}};
}

json label_pairs(const std::vector<Index>& map, const Hypergraph& q,
                 const Hypergraph& d) {
    auto label = [](const Hypergraph& h, Index v) -> std::string {
        return h.labels.empty() ? std::to_string(v)
                                : h.labels[static_cast<size_t>(v)];
    };
    json pairs = json::array();
    for (size_t i = 0; i < map.size(); ++i)
        if (map[i] != kUnmapped)
            pairs.push_back({label(q, static_cast<Index>(i)), label(d, map[i])});
    return pairs;
}

Alignment invert_alignment(const Alignment& a, Index nv, Index ne) {
    Alignment inv;
    inv.vertex_map.assign(static_cast<size_t>(nv), kUnmapped);
    inv.edge_map.assign(static_cast<size_t>(ne), kUnmapped);
    for (size_t v = 0; v < a.vertex_map.size(); ++v)
        if (a.vertex_map[v] != kUnmapped)
            inv.vertex_map[static_cast<size_t>(a.vertex_map[v])] =
                static_cast<Index>(v);
    for (size_t e = 0; e < a.edge_map.size(); ++e)
        if (a.edge_map[e] != kUnmapped)
            inv.edge_map[static_cast<size_t>(a.edge_map[e])] = static_cast<Index>(e);
    return inv;
}

// ---- shared solver/noise flags -------------------------------------------

struct CommonFlags {
    std::string mode = "dense";
    Index k = -1;  // -1: not set
    Real beta = 1.0;
    Real temperature = 2.0;
    int iters = 20;
    int rounds = 10;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out;
    int jobs = 1;
    bool oracle = false;

    void add_solver_options(CLI::App* cmd) {
        cmd->add_option("--mode", mode, "similarity support: dense or sparse")
            ->check(CLI::IsMember({"dense", "sparse"}))
            ->capture_default_str();
        cmd->add_option("--k", k,
                        "sparse mode: candidates per row (default: log2 of the "
                        "largest side, rounded up)");
        cmd->add_option("--beta", beta, "coupling weight of the quadratic term")
            ->capture_default_str();
        cmd->add_option("--temperature", temperature,
                        "cooling temperature (> 1); larger keeps more candidates")
            ->capture_default_str();
        cmd->add_option("--iters", iters, "propagation iterations per round")
            ->capture_default_str();
        cmd->add_option("--rounds", rounds, "maximum outer solver rounds")
            ->capture_default_str();
    }

    void add_seed_option(CLI::App* cmd) {
        auto* opt = cmd->add_option("--seed", seed, "random seed (omit for a fresh one)");
        cmd->parse_complete_callback([this, opt]() { seed_given = opt->count() > 0; });
    }

    void resolve_seed() {
        if (!seed_given) {
            std::random_device rd;
            seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
            std::cerr << "seed: " << seed << "\n";
        }
    }

    SolverConfig solver_config() const {
        SolverConfig cfg;
        cfg.mode = mode == "sparse" ? SolverConfig::Mode::sparse
                                    : SolverConfig::Mode::dense;
        if (k >= 0) cfg.top_k = k;
        cfg.beta = beta;
        cfg.cooling.temperature = temperature;
        cfg.cooling.n_iter = iters;
        cfg.max_outer_rounds = rounds;
        cfg.seed = seed;
        cfg.validate();
        return cfg;
    }
};

// wall-clock times are omitted so identical flags give byte-identical output
json trace_json(const std::vector<RoundTrace>& trace) {
    json arr = json::array();
    for (const auto& t : trace)
        arr.push_back({{"round", t.round},
                       {"new_vertex_matches", t.new_vertex_matches},
                       {"new_edge_matches", t.new_edge_matches},
                       {"qp_objective", t.qp_objective},
                       {"objective_decreased", t.objective_decreased}});
    return arr;
}

// ---- subcommand bodies -----------------------------------------------------

int run_stats(const std::string& file, const std::string& out_path) {
    const Hypergraph core = load_core(file);
    const InstanceStats s = stats(core);
    char display[32];
    std::snprintf(display, sizeof(display), "%.1f", s.mean_edge_size);
    emit(json{{"command", "stats"},
              {"file", file},
              {"vertices", s.vertex_count},
              {"hyperedges", s.edge_count},
              {"mean_edge_size", s.mean_edge_size},
              {"mean_edge_size_display", display},
              {"bipartite_size", s.bipartite_size}},
         out_path);
    return 0;
}

int run_align(const std::string& query_file, const std::string& data_file,
              CommonFlags& flags) {
    flags.resolve_seed();
    const SolverConfig cfg = flags.solver_config();
    Hypergraph q = load_core(query_file);
    Hypergraph d = load_core(data_file);

    // the solver requires the query to be the smaller side on both axes;
    // swap here and invert the answer so output pairs follow the argument
    // order regardless
    const bool swapped =
        q.vertex_count > d.vertex_count || q.edge_count() > d.edge_count();
    if (swapped && (d.vertex_count > q.vertex_count || d.edge_count() > q.edge_count()))
        throw DomainError(
            "inputs are incomparable: neither hypergraph is at most as large "
            "as the other on both axes");
    const Hypergraph& hq = swapped ? d : q;
    const Hypergraph& hd = swapped ? q : d;

    AlignResult res = align(hq, hd, cfg);
    Alignment sigma = swapped ? invert_alignment(res.alignment, q.vertex_count,
                                                 q.edge_count())
                              : res.alignment;

    json j{{"command", "align"},
           {"query", {{"file", query_file},
                      {"vertices", q.vertex_count},
                      {"hyperedges", q.edge_count()}}},
           {"data", {{"file", data_file},
                     {"vertices", d.vertex_count},
                     {"hyperedges", d.edge_count()}}},
           {"seed", flags.seed},
           {"mode", flags.mode},
           {"k", res.resolved_k},
           {"k_clamped", res.k_clamped},
           {"swapped", swapped},
           {"vertex_map", sigma.vertex_map},
           {"edge_map", sigma.edge_map},
           {"vertex_pairs", label_pairs(sigma.vertex_map, q, d)},
           {"trace", trace_json(res.trace)}};

    // metrics always score the solved orientation (small side as query)
    const Alignment& solved = res.alignment;
    json metrics = json::array();
    metrics.push_back(metric_record("edge_correctness",
                                    hyperedge_correctness(hq, hd, solved), hq, hd,
                                    flags.seed, nullptr));
    metrics.push_back(metric_record("incidence_objective",
                                    incidence_objective(hq, hd, solved), hq, hd,
                                    flags.seed, nullptr));
    metrics.push_back(metric_record("overlap_objective",
                                    overlap_objective(hq, hd, solved), hq, hd,
                                    flags.seed, nullptr));
    metrics.push_back(metric_record("nonexclusive_overlap",
                                    nonexclusive_overlap(hq, hd, solved.vertex_map),
                                    hq, hd, flags.seed, nullptr));
    j["metrics"] = std::move(metrics);

    if (flags.oracle) {
        const auto best = oracle::brute_force_vertex_align(
            hq, hd, oracle::VertexObjective::edge_correctness);
        j["oracle"] = {{"objective", "edge_correctness"},
                       {"optimum", best.value},
                       {"vertex_map", best.vertex_map}};
    }
    emit(j, flags.out);
    return 0;
}

int run_perturb(const std::string& file, Real noise, Real lambda, CommonFlags& flags) {
    flags.resolve_seed();
    const Hypergraph core = load_core(file);
    NoiseSpec spec;
    spec.noise_level = noise;
    spec.lambda = lambda > 0 ? lambda : stats(core).mean_edge_size;
    spec.seed = flags.seed;
    spec.validate();
    const Perturbed p = perturb(core, spec);

    json j{{"command", "perturb"},
           {"file", file},
           {"seed", flags.seed},
           {"noise", noise},
           {"lambda", spec.lambda},
           {"vertices", p.hypergraph.vertex_count},
           {"hyperedges", p.hypergraph.edge_count()},
           {"truth_vertex_map", p.truth.vertex_map},
           {"truth_edge_map", p.truth.edge_map}};
    if (p.hypergraph.edge_count() == 0) {
        j["degenerate"] = true;
        emit(j, "");
        return kExitDegenerate;
    }
    const std::string text = serialize_hypergraph(p.hypergraph);
    if (flags.out.empty()) {
        j["hypergraph_text"] = text;
        emit(j, "");
    } else {
        write_file(flags.out, text);
        j["hypergraph_file"] = flags.out;
        emit(j, "");
    }
    return 0;
}

int run_eval(const std::string& query_file, const std::string& data_file,
             const std::string& alignment_file, CommonFlags& flags) {
    const Hypergraph q = load_core(query_file);
    const Hypergraph d = load_core(data_file);
    const json a = json::parse(read_file(alignment_file));
    Alignment sigma;
    sigma.vertex_map = a.at("vertex_map").get<std::vector<Index>>();
    sigma.edge_map = a.at("edge_map").get<std::vector<Index>>();
    if (static_cast<Index>(sigma.vertex_map.size()) != q.vertex_count ||
        static_cast<Index>(sigma.edge_map.size()) != q.edge_count())
        throw DimensionError(
            "alignment size does not match the query 2-core (maps must cover "
            "its vertices and hyperedges)");
    sigma.validate(d.vertex_count, d.edge_count());

    json metrics = json::array();
    metrics.push_back(metric_record("edge_correctness",
                                    hyperedge_correctness(q, d, sigma), q, d,
                                    nullptr, nullptr));
    metrics.push_back(metric_record("incidence_objective",
                                    incidence_objective(q, d, sigma), q, d, nullptr,
                                    nullptr));
    metrics.push_back(metric_record("overlap_objective",
                                    overlap_objective(q, d, sigma), q, d, nullptr,
                                    nullptr));
    metrics.push_back(metric_record("nonexclusive_overlap",
                                    nonexclusive_overlap(q, d, sigma.vertex_map), q,
                                    d, nullptr, nullptr));
    json j{{"command", "eval"},
           {"query", query_file},
           {"data", data_file},
           {"alignment", alignment_file},
           {"metrics", metrics}};
    if (flags.oracle) {
        const auto best = oracle::brute_force_vertex_align(
            q, d, oracle::VertexObjective::edge_correctness);
        j["oracle"] = {{"objective", "edge_correctness"}, {"optimum", best.value}};
    }
    emit(j, flags.out);
    return 0;
}

int run_experiment(const std::string& file, std::vector<Real> levels, int nseeds,
                   std::vector<std::uint64_t> seeds, Real lambda,
                   const std::string& prefix, const std::string& name,
                   CommonFlags& flags) {
    flags.resolve_seed();
    const SolverConfig cfg = flags.solver_config();
    const Hypergraph core = load_core(file);
    if (levels.empty()) levels = default_noise_levels();
    if (seeds.empty()) {
        if (nseeds < 1) throw DomainError("experiment: need at least one seed");
        for (int i = 0; i < nseeds; ++i)
            seeds.push_back(flags.seed + static_cast<std::uint64_t>(i));
    }

    const SweepResult r = sweep(core, levels, seeds, cfg, lambda, flags.jobs);

    const std::string instance = name.empty() ? basename_of(file) : name;
    std::ostringstream raw;
    raw << "instance,level,seed,accuracy,edge_correctness,runtime_ms\n";
    for (const auto& c : r.cells) {
        char runtime[32];
        std::snprintf(runtime, sizeof(runtime), "%.3f", c.runtime_ms);
        raw << instance << ',' << fmt_real(c.level) << ',' << c.seed << ','
            << fmt_real(c.accuracy) << ',' << fmt_real(c.edge_correctness) << ','
            << runtime << '\n';
    }
    std::ostringstream agg;
    agg << "level,accuracy_mean,accuracy_std,edge_correctness_mean,"
           "edge_correctness_std\n";
    for (const auto& a : r.aggregates)
        agg << fmt_real(a.level) << ',' << fmt_real(a.accuracy_mean) << ','
            << fmt_real(a.accuracy_std) << ',' << fmt_real(a.ec_mean) << ','
            << fmt_real(a.ec_std) << '\n';

    write_file(prefix + "raw.csv", raw.str());
    write_file(prefix + "aggregate.csv", agg.str());

    std::printf("%-8s %-14s %-14s %-14s %-14s\n", "level", "acc_mean", "acc_std",
                "ec_mean", "ec_std");
    for (const auto& a : r.aggregates)
        std::printf("%-8.3f %-14.6f %-14.6f %-14.6f %-14.6f\n", a.level,
                    a.accuracy_mean, a.accuracy_std, a.ec_mean, a.ec_std);
    std::printf("raw: %sraw.csv\naggregate: %saggregate.csv\n", prefix.c_str(),
                prefix.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypergraph alignment toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string config_path;

    // stats
    auto* cmd_stats = app.add_subcommand("stats", "2-core size statistics as JSON");
    std::string stats_file;
    cmd_stats->add_option("file", stats_file, "hypergraph file")->required();
    std::string stats_out;
    cmd_stats->add_option("--out", stats_out, "write JSON here instead of stdout");
    cmd_stats->add_option("--config", config_path, "INI file of key = value flag defaults (command line wins)");

    // align
    auto* cmd_align =
        app.add_subcommand("align", "align two hypergraphs and report metrics");
    std::string align_query, align_data;
    cmd_align->add_option("query", align_query, "query hypergraph file")->required();
    cmd_align->add_option("data", align_data, "data hypergraph file")->required();
    flags.add_solver_options(cmd_align);
    flags.add_seed_option(cmd_align);
    cmd_align->add_option("--out", flags.out, "write JSON here instead of stdout");
    cmd_align->add_flag("--oracle", flags.oracle,
                        "also exhaustively optimize edge correctness (tiny "
                        "instances only)");
    cmd_align->add_option("--config", config_path, "INI file of key = value flag defaults (command line wins)");

    // perturb
    auto* cmd_perturb = app.add_subcommand(
        "perturb", "emit a noisy relabeled copy with its ground truth");
    std::string perturb_file;
    Real perturb_noise = 0.0, perturb_lambda = 0.0;
    cmd_perturb->add_option("file", perturb_file, "hypergraph file")->required();
    cmd_perturb->add_option("--noise", perturb_noise,
                            "fraction of hyperedges replaced, in [0,1]")
        ->capture_default_str();
    cmd_perturb->add_option("--lambda", perturb_lambda,
                            "replacement size rate (default: mean edge size)");
    flags.add_seed_option(cmd_perturb);
    cmd_perturb->add_option("--out", flags.out, "write the hypergraph text here");
    cmd_perturb->add_option("--config", config_path, "INI file of key = value flag defaults (command line wins)");

    // eval
    auto* cmd_eval = app.add_subcommand(
        "eval", "score a stored alignment (JSON with vertex_map/edge_map)");
    std::string eval_query, eval_data, eval_alignment;
    cmd_eval->add_option("query", eval_query, "query hypergraph file")->required();
    cmd_eval->add_option("data", eval_data, "data hypergraph file")->required();
    cmd_eval->add_option("alignment", eval_alignment, "alignment JSON file")
        ->required();
    cmd_eval->add_option("--out", flags.out, "write JSON here instead of stdout");
    cmd_eval->add_flag("--oracle", flags.oracle,
                       "also exhaustively optimize edge correctness (tiny "
                       "instances only)");
    cmd_eval->add_option("--config", config_path, "INI file of key = value flag defaults (command line wins)");

    // experiment
    auto* cmd_exp = app.add_subcommand(
        "experiment", "noise sweep: perturb, align, score over a seed grid");
    std::string exp_file, exp_prefix = "experiment_", exp_name;
    std::vector<Real> exp_levels;
    std::vector<std::uint64_t> exp_seeds;
    int exp_nseeds = 10;
    Real exp_lambda = 0.0;
    cmd_exp->add_option("file", exp_file, "hypergraph file")->required();
    cmd_exp->add_option("--levels", exp_levels,
                        "noise levels (default: 0,0.05,0.1,0.15,0.2)")
        ->delimiter(',');
    cmd_exp->add_option("--seeds", exp_seeds, "explicit seed list")->delimiter(',');
    cmd_exp->add_option("--nseeds", exp_nseeds,
                        "number of consecutive seeds starting at --seed")
        ->capture_default_str();
    cmd_exp->add_option("--lambda", exp_lambda,
                        "replacement size rate (default: mean edge size)");
    cmd_exp->add_option("--out-prefix", exp_prefix, "prefix for the CSV outputs")
        ->capture_default_str();
    cmd_exp->add_option("--name", exp_name, "instance name for the CSV rows");
    flags.add_solver_options(cmd_exp);
    flags.add_seed_option(cmd_exp);
    cmd_exp->add_option("--jobs", flags.jobs, "parallel sweep workers")
        ->capture_default_str();
    cmd_exp->add_option("--config", config_path, "INI file of key = value flag defaults (command line wins)");

    std::vector<std::string> tokens(argv + 1, argv + argc);
    try {
        std::string pre_config;
        for (size_t i = 0; i < tokens.size(); ++i) {
            if (tokens[i] == "--config" && i + 1 < tokens.size())
                pre_config = tokens[i + 1];
            else if (tokens[i].rfind("--config=", 0) == 0)
                pre_config = tokens[i].substr(9);
        }
        if (!pre_config.empty())
            for (auto& t : config_tokens(pre_config, tokens))
                tokens.push_back(std::move(t));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::reverse(tokens.begin(), tokens.end());

    try {
        app.parse(tokens);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(cmd_stats)) return run_stats(stats_file, stats_out);
        if (app.got_subcommand(cmd_align))
            return run_align(align_query, align_data, flags);
        if (app.got_subcommand(cmd_perturb))
            return run_perturb(perturb_file, perturb_noise, perturb_lambda, flags);
        if (app.got_subcommand(cmd_eval))
            return run_eval(eval_query, eval_data, eval_alignment, flags);
        if (app.got_subcommand(cmd_exp))
            return run_experiment(exp_file, exp_levels, exp_nseeds, exp_seeds,
                                  exp_lambda, exp_prefix, exp_name, flags);
    } catch (const DegenerateInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
