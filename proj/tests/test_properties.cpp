#include <doctest.h>

#include "ats/planar.hpp"
#include "invariants.hpp"

using namespace ats;

namespace {

void run(std::string (*check)(std::uint64_t), std::uint64_t cases) {
    for (std::uint64_t seed = 0; seed < cases; ++seed) {
        std::string failure = check(seed);
        CHECK_MESSAGE(failure.empty(), failure);
    }
}

}  // namespace

TEST_CASE("|R| = m - n + 1") { run(invariants::extra_edge_count, 200); }
TEST_CASE("|U| <= 4(r + 1)") { run(invariants::branch_set_bound, 200); }
TEST_CASE("collapsed weights sum to W") { run(invariants::weight_conservation, 200); }
TEST_CASE("paths cover the subtree edge-disjointly") { run(invariants::path_cover, 200); }
TEST_CASE("centroid components weigh at most W/2") { run(invariants::centroid_balance, 200); }
TEST_CASE("steiner subtree matches the oracle") { run(invariants::steiner_matches_oracle, 200); }
TEST_CASE("attach matches the oracle") { run(invariants::attach_matches_oracle, 200); }

TEST_CASE("separate returns a verified separator within the size contract") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Graph g = invariants::random_instance(seed);
        Separator s = separate(g);
        VerifyReport rep = verify_separator(g, s.vertices);
        CHECK_MESSAGE(rep.pass, "seed ", seed);
        CHECK(s.stats.max_component == rep.max_component);
        CHECK(static_cast<double>(s.vertices.size()) <= 4.0 * std::sqrt(static_cast<double>(g.excess() + 1)) + 2.0);
        CHECK(s.stats.repairs <= repair_cap(g.excess()));
    }
}

TEST_CASE("compressed graphs stay planar and small") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        invariants::Stages s = invariants::run_stages(invariants::random_instance(seed));
        CHECK(is_planar(s.compressed.graph));
        CHECK(s.compressed.num_nodes() <= 2 * s.branch.members.size());
        CHECK(s.compressed.parallel_edges == 0);
    }
}
