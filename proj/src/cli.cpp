#include "ats/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "ats/edge_list.hpp"
#include "ats/gen.hpp"
#include "ats/oracle.hpp"
#include "ats/pipeline.hpp"
#include "ats/planar.hpp"

namespace ats {

namespace {

std::uint64_t default_seed() {
    const char* env = std::getenv("ATS_SEED");
    if (!env || !*env) return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, std::string("ATS_SEED is not an integer: ") + env);
    }
}

WeightMode parse_weight_mode(const std::string& text) {
    if (text == "unit") return WeightMode::unit();
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    try {
        if (parts.size() == 3 && parts[0] == "uniform")
            return WeightMode::uniform_random(std::stoull(parts[1]), std::stoull(parts[2]));
        if (parts.size() == 2 && parts[0] == "heavy") return WeightMode::single_heavy(parse_ratio(parts[1]));
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorKind::InvalidArgument, "weight mode must be unit, uniform:LO:HI or heavy:F, got '" + text + "'");
}

std::string fraction(double x) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << x;
    return s.str();
}

void print_ids(std::ostream& out, std::span<const VertexId> ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? " " : "") << ids[i] + 1;
    out << '\n';
}

struct Input {
    std::string path;
    std::string beta = "2/3";
    std::optional<std::uint64_t> weight_scale;

    void add_to(CLI::App* cmd) {
        cmd->add_option("graph", path, "Edge-list file")->required();
        cmd->add_option("--beta", beta, "Balance bound, a/b or decimal");
        cmd->add_option("--weight-scale", weight_scale, "Accept decimal weights, scaled by this factor");
    }
    Graph graph() const { return read_edge_list_file(path, ParseOptions{weight_scale}); }
    Ratio ratio() const { return parse_ratio(beta); }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    return f;
}

struct BenchRow {
    std::size_t n;
    std::int64_t r;
    std::uint64_t seed;
    Separator sep;
    std::chrono::nanoseconds wall{0};
    StageTimes stages{};
    bool verified = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Balanced vertex separators for near-tree planar graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a graph in edge-list format");
    std::string gen_kind = "near-tree", gen_weights = "unit", gen_out;
    std::size_t gen_n = 10, gen_a = 3, gen_b = 3;
    std::int64_t gen_r = 0;
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("--kind", gen_kind, "near-tree, tree, grid or triangulation")
        ->check(CLI::IsMember({"near-tree", "tree", "grid", "triangulation"}));
    gen->add_option("-n,--n", gen_n, "Vertex count");
    gen->add_option("-r,--r", gen_r, "Excess, m = n + r");
    gen->add_option("--a", gen_a, "Grid rows");
    gen->add_option("--b", gen_b, "Grid columns");
    gen->add_option("--seed", gen_seed, "Seed (default: $ATS_SEED or 0)");
    gen->add_option("--weights", gen_weights, "unit, uniform:LO:HI or heavy:F");
    gen->add_option("-o,--out", gen_out, "Output file (default: stdout)");

    // separate
    auto* sep = app.add_subcommand("separate", "Compute a balanced separator");
    Input sep_in;
    sep_in.add_to(sep);
    std::string sep_trace;
    bool sep_times = false;
    sep->add_option("--trace", sep_trace, "Write the stage trace to this file");
    sep->add_flag("--stage-times", sep_times, "Print per-stage wall time");

    // verify
    auto* ver = app.add_subcommand("verify", "Check a separator");
    Input ver_in;
    ver_in.add_to(ver);
    std::string ver_sep;
    ver->add_option("separator", ver_sep, "File of 1-based IDs, or the IDs themselves")->required();

    // oracle
    auto* ora = app.add_subcommand("oracle", "Exhaustive minimum balanced separator (n <= 20)");
    Input ora_in;
    ora_in.add_to(ora);
    std::optional<std::size_t> ora_max;
    ora->add_option("--max-size", ora_max, "Largest separator size to try");

    // lt
    auto* lt = app.add_subcommand("lt", "Planar separator on the whole graph");
    Input lt_in;
    lt_in.add_to(lt);
    bool lt_no_prune = false;
    lt->add_flag("--no-prune", lt_no_prune, "Keep redundant separator vertices");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the pipeline over generated graphs, CSV to stdout");
    std::vector<std::size_t> bench_n{1000};
    std::vector<std::int64_t> bench_r{1};
    std::size_t bench_seeds = 1;
    std::optional<std::uint64_t> bench_seed;
    std::string bench_weights = "unit", bench_out;
    bool bench_times = false;
    int bench_jobs = 1;
    bench->add_option("--n", bench_n, "Vertex counts")->delimiter(',');
    bench->add_option("--r", bench_r, "Excess values")->delimiter(',');
    bench->add_option("--seeds", bench_seeds, "Seeds per cell, counting up from --seed");
    bench->add_option("--seed", bench_seed, "First seed (default: $ATS_SEED or 0)");
    bench->add_option("--weights", bench_weights, "unit, uniform:LO:HI or heavy:F");
    bench->add_flag("--stage-times", bench_times, "Append per-stage ns columns");
    bench->add_option("--jobs", bench_jobs, "Cells computed concurrently")->check(CLI::PositiveNumber);
    bench->add_option("-o,--out", bench_out, "Output file (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*gen) {
            const std::uint64_t seed = gen_seed ? *gen_seed : default_seed();
            const WeightMode mode = parse_weight_mode(gen_weights);
            Graph g;
            if (gen_kind == "near-tree") g = near_tree_planar({gen_n, gen_r, seed, mode});
            else if (gen_kind == "tree") g = assign_weights(random_tree(gen_n, seed), mode, seed);
            else if (gen_kind == "grid") g = assign_weights(grid_graph(gen_a, gen_b), mode, seed);
            else g = assign_weights(random_triangulation(gen_n, seed), mode, seed);
            if (gen_out.empty()) {
                write_edge_list(out, g);
            } else {
                auto f = open_out(gen_out);
                write_edge_list(f, g);
            }
            return kExitOk;
        }

        if (*sep) {
            const Graph g = sep_in.graph();
            const Ratio beta = sep_in.ratio();
            std::vector<TraceStage> trace;
            StageTimes times{};
            SeparateOptions opts;
            opts.beta = beta;
            if (!sep_trace.empty()) opts.trace = &trace;
            if (sep_times) opts.stage_times = &times;
            const auto t0 = std::chrono::steady_clock::now();
            const Separator s = separate(g, opts);
            const auto wall = std::chrono::steady_clock::now() - t0;
            const VerifyReport rep = verify_separator(g, s.vertices, beta);
            print_ids(out, s.vertices);
            out << "size=" << s.vertices.size() << " max_frac=" << fraction(rep.max_fraction())
                << " repairs=" << s.stats.repairs << '\n';
            if (sep_times) {
                for (std::size_t i = 0; i < times.size(); ++i)
                    out << "time " << kStageNames[i] << ' ' << times[i].count() << " ns\n";
                out << "time total " << std::chrono::nanoseconds(wall).count() << " ns\n";
            }
            if (!sep_trace.empty()) {
                auto f = open_out(sep_trace);
                write_trace(f, trace);
            }
            if (!rep.pass) {
                err << "error: separator failed verification\n";
                return kExitVerify;
            }
            return kExitOk;
        }

        if (*ver) {
            const Graph g = ver_in.graph();
            std::vector<VertexId> ids;
            if (std::filesystem::is_regular_file(ver_sep)) {
                std::ifstream f(ver_sep);
                ids = parse_vertex_list(f);
            } else {
                ids = parse_vertex_list(ver_sep);
            }
            const VerifyReport rep = verify_separator(g, ids, ver_in.ratio());
            out << (rep.pass ? "PASS" : "FAIL") << " max_frac=" << fraction(rep.max_fraction()) << '\n';
            return rep.pass ? kExitOk : kExitVerify;
        }

        if (*ora) {
            const Graph g = ora_in.graph();
            const OracleResult res = min_balanced_separator(g, ora_in.ratio(), ora_max.value_or(kOracleAutoSize));
            if (!res.feasible) {
                out << "infeasible\n";
                return kExitOk;
            }
            out << res.min_size << ':';
            for (VertexId v : res.witness) out << ' ' << v + 1;
            out << '\n';
            return kExitOk;
        }

        if (*lt) {
            const Graph g = lt_in.graph();
            LtOptions opts;
            opts.beta = lt_in.ratio();
            opts.prune = !lt_no_prune;
            const LTSeparator s = lt_separator(g, opts);
            const VerifyReport rep = verify_separator(g, s.vertices, opts.beta);
            print_ids(out, s.vertices);
            out << "size=" << s.vertices.size() << " max_frac=" << fraction(rep.max_fraction())
                << " levels=" << s.num_levels << " cycle=" << (s.used_cycle ? "yes" : "no") << '\n';
            return rep.pass ? kExitOk : kExitVerify;
        }

        if (*bench) {
            const std::uint64_t base = bench_seed ? *bench_seed : default_seed();
            const WeightMode mode = parse_weight_mode(bench_weights);
            std::vector<BenchRow> rows;
            for (std::size_t n : bench_n)
                for (std::int64_t r : bench_r)
                    for (std::size_t k = 0; k < bench_seeds; ++k) rows.push_back({n, r, base + k, {}});
            std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
                return std::tie(a.n, a.r, a.seed) < std::tie(b.n, b.r, b.seed);
            });
            std::vector<std::string> notes(rows.size());
            std::vector<std::uint8_t> keep(rows.size(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(bench_jobs)
            for (std::size_t i = 0; i < rows.size(); ++i) {
                BenchRow& row = rows[i];
                try {
                    const Graph g = near_tree_planar({row.n, row.r, row.seed, mode});
                    SeparateOptions opts;
                    opts.stage_times = &row.stages;
                    const auto t0 = std::chrono::steady_clock::now();
                    row.sep = separate(g, opts);
                    row.wall = std::chrono::steady_clock::now() - t0;
                    row.verified = verify_separator(g, row.sep.vertices).pass;
                    keep[i] = 1;
                } catch (const Error& e) {
                    notes[i] = "skip n=" + std::to_string(row.n) + " r=" + std::to_string(row.r) +
                               " seed=" + std::to_string(row.seed) + ": " + e.what();
                }
            }
            std::ofstream file;
            if (!bench_out.empty()) file = open_out(bench_out);
            std::ostream& csv = bench_out.empty() ? out : file;
            csv << "n,r,seed,sep_size,max_frac,repairs,wall_ns";
            if (bench_times)
                for (const char* name : kStageNames) csv << ",ns_" << name;
            csv << '\n';
            bool all_verified = true;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (!keep[i]) {
                    err << notes[i] << '\n';
                    continue;
                }
                const BenchRow& row = rows[i];
                all_verified = all_verified && row.verified;
                csv << row.n << ',' << row.r << ',' << row.seed << ',' << row.sep.vertices.size() << ','
                    << std::fixed << std::setprecision(6) << row.sep.stats.max_fraction() << ','
                    << row.sep.stats.repairs << ',' << row.wall.count();
                if (bench_times)
                    for (auto t : row.stages) csv << ',' << t.count();
                csv << '\n';
            }
            if (!all_verified) {
                err << "error: a separator failed verification\n";
                return kExitVerify;
            }
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace ats
