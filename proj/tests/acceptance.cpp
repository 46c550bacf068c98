// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Timings are wall-clock on the calling thread.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ats/gen.hpp"
#include "ats/oracle.hpp"
#include "ats/pipeline.hpp"
#include "ats/planar.hpp"
#include "invariants.hpp"

using namespace ats;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double size_bound(std::int64_t r) { return 4.0 * std::sqrt(static_cast<double>(r + 1)) + 2.0; }

// 1. Size bound on n = 10^5 near-trees.
Outcome size_bound_sweep() {
    Outcome o;
    std::size_t runs = 0, worst_size = 0;
    double worst_frac = 0;
    std::string first_failure;
    for (std::int64_t r : {1, 4, 16, 64, 256, 1024}) {
        std::size_t worst_at_r = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Graph g = near_tree_planar({100000, r, seed, WeightMode::unit()});
            Separator s = separate(g);
            VerifyReport rep = verify_separator(g, s.vertices);
            ++runs;
            worst_at_r = std::max(worst_at_r, s.vertices.size());
            worst_frac = std::max(worst_frac, rep.max_fraction());
            if (!rep.pass || static_cast<double>(s.vertices.size()) > size_bound(r)) {
                o.pass = false;
                if (first_failure.empty())
                    first_failure = " first failure r=" + std::to_string(r) + " seed=" + std::to_string(seed) +
                                    " |S|=" + std::to_string(s.vertices.size());
            }
        }
        worst_size = std::max(worst_size, worst_at_r);
        o.detail += " r=" + std::to_string(r) + ":max|S|=" + std::to_string(worst_at_r);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu runs, max_frac<=%.4f;", runs, worst_frac);
    o.detail = buf + o.detail + first_failure;
    return o;
}

// 2. Validity wherever the oracle certifies feasibility, n <= 12.
Outcome oracle_validity() {
    Outcome o;
    std::size_t feasible = 0, failures = 0;
    std::uint64_t seed = 0;
    for (std::size_t made = 0; made < 200; ++seed) {
        Rng rng(seed, "acceptance-oracle");
        const std::size_t n = rng.between(4, 12);
        const auto r = static_cast<std::int64_t>(rng.between(0, std::min<std::size_t>(4, 2 * n - 6)));
        WeightMode mode;
        switch (made % 3) {
        case 0: mode = WeightMode::unit(); break;
        case 1: mode = WeightMode::uniform_random(1, 20); break;
        default: mode = WeightMode::single_heavy({7, 10}); break;
        }
        Graph g = near_tree_planar({n, r, seed, mode});
        ++made;
        if (!min_balanced_separator(g, kTwoThirds, n).feasible) continue;
        ++feasible;
        if (!verify_separator(g, separate(g).vertices).pass) ++failures;
    }
    o.pass = failures == 0 && feasible == 200;
    o.detail = std::to_string(feasible) + "/200 oracle-feasible, " + std::to_string(failures) + " pipeline failures";
    return o;
}

// 3. Median separate() time per 10x step in n, r = 16.
Outcome linear_time() {
    Outcome o;
    std::vector<double> medians;
    for (std::size_t n : {10000, 100000, 1000000}) {
        std::vector<double> times;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Graph g = near_tree_planar({n, 16, seed, WeightMode::unit()});
            double best = 1e100;
            for (int rep = 0; rep < 3; ++rep) {
                auto t0 = Clock::now();
                Separator s = separate(g);
                best = std::min(best, seconds_since(t0));
                if (!verify_separator(g, s.vertices).pass) o.pass = false;
            }
            times.push_back(best);
        }
        std::sort(times.begin(), times.end());
        medians.push_back(times[2]);
    }
    char buf[160];
    const double r1 = medians[1] / medians[0], r2 = medians[2] / medians[1];
    std::snprintf(buf, sizeof buf, "median ms %.3f / %.3f / %.3f, growth x%.2f then x%.2f (limit 13)",
                  medians[0] * 1e3, medians[1] * 1e3, medians[2] * 1e3, r1, r2);
    o.pass = o.pass && r1 <= 13.0 && r2 <= 13.0;
    o.detail = buf;
    return o;
}

// 4. Star(100) + chord with a single heavy leaf.
Outcome degenerate_branch() {
    Outcome o;
    EdgeSet star;
    for (VertexId i = 1; i < 100; ++i) star.push_back({0, i});
    Graph plain = Graph::build(100, star);
    Graph weighted = assign_weights(plain, WeightMode::single_heavy({7, 10}), 2024);
    const auto heavy = static_cast<VertexId>(
        std::max_element(weighted.weights().begin(), weighted.weights().end()) - weighted.weights().begin());
    // Chord between the two lowest-numbered leaves other than the heavy one.
    std::vector<VertexId> ends;
    for (VertexId v = 1; ends.size() < 2; ++v)
        if (v != heavy) ends.push_back(v);
    star.push_back({ends[0], ends[1]});
    Graph g = Graph::build(100, star, {weighted.weights().begin(), weighted.weights().end()});
    Separator s = separate(g);
    VerifyReport rep = verify_separator(g, s.vertices);
    o.pass = s.stats.repairs >= 1 && rep.pass && s.vertices.size() <= 4;
    char buf[160];
    std::snprintf(buf, sizeof buf, "heavy vertex %u (%.3f of W), repairs=%zu, |S|=%zu, max_frac=%.4f", heavy + 1,
                  static_cast<double>(g.weight(heavy)) / static_cast<double>(g.total_weight()), s.stats.repairs,
                  s.vertices.size(), rep.max_fraction());
    o.detail = buf;
    return o;
}

// 5. Lipton-Tarjan alone on grids and random triangulations.
Outcome lt_standalone() {
    Outcome o;
    std::size_t runs = 0, failures = 0;
    double worst_ratio = 0;
    auto check = [&](const Graph& g) {
        LTSeparator s = lt_separator(g);
        const double limit = 4.0 * std::sqrt(static_cast<double>(g.num_vertices()));
        ++runs;
        worst_ratio = std::max(worst_ratio, static_cast<double>(s.vertices.size()) / limit);
        if (!verify_separator(g, s.vertices).pass || static_cast<double>(s.vertices.size()) > limit) ++failures;
    };
    for (std::size_t a : {5, 10, 20, 30}) check(grid_graph(a, a));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed, "acceptance-triangulation");
        check(random_triangulation(rng.between(3, 200), seed));
    }
    o.pass = failures == 0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu runs, %zu failures, largest |S| / 4 sqrt(n) = %.3f", runs, failures,
                  worst_ratio);
    o.detail = buf;
    return o;
}

// 6. Structural invariants, 1000 random cases each.
Outcome invariant_suite() {
    Outcome o;
    const std::vector<std::pair<const char*, std::string (*)(std::uint64_t)>> checks = {
        {"|R|", invariants::extra_edge_count},         {"|U|", invariants::branch_set_bound},
        {"w'", invariants::weight_conservation},       {"Pi", invariants::path_cover},
        {"centroid", invariants::centroid_balance},    {"steiner", invariants::steiner_matches_oracle},
        {"attach", invariants::attach_matches_oracle},
    };
    std::size_t failures = 0;
    std::string first;
    for (const auto& [name, check] : checks)
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            std::string f;
            try {
                f = check(seed);
            } catch (const std::exception& e) {
                f = "seed " + std::to_string(seed) + ": threw " + e.what();
            }
            if (f.empty()) continue;
            ++failures;
            if (first.empty()) first = std::string(" first: ") + name + " " + f;
        }
    o.pass = failures == 0;
    o.detail = std::to_string(checks.size()) + " properties x 1000 cases, " + std::to_string(failures) + " failures" + first;
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"1 size bound (n=1e5, r in 1..1024, 20 seeds)", size_bound_sweep},
        {"2 validity vs oracle (200 graphs, n<=12)", oracle_validity},
        {"3 linear time (r=16, n=1e4..1e6)", linear_time},
        {"4 degenerate heavy-vertex branch", degenerate_branch},
        {"5 Lipton-Tarjan standalone", lt_standalone},
        {"6 structural invariants", invariant_suite},
    };
    bool all = true;
    for (const auto& [name, run] : criteria) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw ") + e.what()};
        }
        all = all && o.pass;
        std::printf("%s criterion %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
