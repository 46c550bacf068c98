#include <doctest.h>

#include <cmath>

#include "ats/gen.hpp"
#include "ats/oracle.hpp"
#include "ats/planar.hpp"
#include "fixtures.hpp"

using namespace ats;
using namespace fixtures;

namespace {

void check_lt(const Graph& g, const LtOptions& opts = {}) {
    LTSeparator s = lt_separator(g, opts);
    CHECK(verify_separator(g, s.vertices, opts.beta).pass);
    CHECK(static_cast<double>(s.vertices.size()) <= 4.0 * std::sqrt(static_cast<double>(g.num_vertices())));
    CHECK(std::is_sorted(s.vertices.begin(), s.vertices.end()));
}

bool contains(const std::vector<VertexId>& v, VertexId x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST_CASE("planar_embed face counts") {
    RotationSystem k4 = planar_embed(complete(4));
    CHECK(k4.num_faces() == 4);
    CHECK(k4.satisfies_euler());
    CHECK(planar_embed(cycle(6)).num_faces() == 2);
    CHECK(planar_embed(path(4)).num_faces() == 1);
    CHECK(planar_embed(grid_graph(3, 3)).num_faces() == 5);
}

TEST_CASE("planar_embed rejects non-planar and disconnected graphs") {
    try {
        planar_embed(complete(5));
        FAIL("K5 embedded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPlanar);
    }
    CHECK_THROWS_AS(planar_embed(k33()), Error);
    CHECK_FALSE(is_planar(k33()));
    CHECK(is_planar(wheel(6)));
    try {
        planar_embed(Graph::build(4, EdgeSet{{0, 1}, {2, 3}}));
        FAIL("disconnected graph embedded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Disconnected);
    }
}

TEST_CASE("faces trace every dart once") {
    RotationSystem emb = planar_embed(theta());
    std::size_t darts = 0;
    for (const auto& f : emb.faces()) darts += f.size();
    CHECK(darts == 2 * emb.num_edges());
    for (std::size_t d = 0; d < 2 * emb.num_edges(); ++d) {
        CHECK(emb.twin(emb.twin(d)) == d);
        CHECK(emb.tail(emb.next_in_face(d)) == emb.head(d));
        CHECK(emb.face_of(emb.next_in_face(d)) == emb.face_of(d));
    }
}

TEST_CASE("triangulate") {
    RotationSystem c4 = triangulate(planar_embed(cycle(4)));
    CHECK(c4.num_edges() == 6);
    CHECK(c4.to_graph() == complete(4));
    CHECK(c4.synthetic_edges().size() == 2);

    RotationSystem k4 = triangulate(planar_embed(complete(4)));
    CHECK(k4.to_graph().edges() == complete(4).edges());
    CHECK(k4.synthetic_edges().empty());

    RotationSystem grid = triangulate(planar_embed(grid_graph(3, 3)));
    CHECK(grid.num_edges() == 21);
    CHECK(grid.max_face_degree() == 3);
    CHECK(grid.satisfies_euler());

    CHECK_THROWS_AS(triangulate(planar_embed(path(2))), Error);
}

TEST_CASE("triangulate keeps graphs simple and planar") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph g = near_tree_planar({3 + seed * 3, static_cast<std::int64_t>(seed % 5), seed, WeightMode::unit()});
        RotationSystem t = triangulate(planar_embed(g));
        CHECK(t.num_edges() == 3 * g.num_vertices() - 6);
        CHECK(t.max_face_degree() == 3);
        CHECK(t.satisfies_euler());
        Graph tg = t.to_graph();  // builds only if simple
        CHECK(is_planar(tg));
        for (const Edge& e : g.edges()) CHECK(tg.has_edge(e.u, e.v));
    }
}

TEST_CASE("bfs_levels") {
    Levels p = bfs_levels(path(3), 0);
    CHECK(p.level == std::vector<std::uint32_t>{0, 1, 2});
    Levels s = bfs_levels(star(5), 0);
    CHECK(s.size == std::vector<std::size_t>{1, 4});
    Levels g = bfs_levels(grid_graph(3, 3), 0);
    CHECK(g.size == std::vector<std::size_t>{1, 2, 3, 2, 1});
    Graph weighted = near_tree_planar({50, 3, 1, WeightMode::uniform_random(1, 9)});
    Levels w = bfs_levels(weighted, 0);
    Weight sum = 0;
    for (Weight x : w.weight) sum += x;
    CHECK(sum == weighted.total_weight());
}

TEST_CASE("fundamental_cycle_separator examples") {
    RotationSystem k4 = triangulate(planar_embed(complete(4)));
    SpanningTree t = bfs_tree(k4.to_graph(), 0);
    std::vector<Weight> w(4, 1);
    FundamentalCycle c = fundamental_cycle_separator(k4, t, w);
    CHECK(c.balanced);
    CHECK(c.vertices.size() == 3);
    CHECK(contains(c.vertices, 0));
    CHECK(c.inside + c.outside == 1);

    RotationSystem w5 = triangulate(planar_embed(wheel(5)));
    SpanningTree hub = bfs_tree(wheel(5), 0);
    std::vector<Weight> ww(6, 1);
    c = fundamental_cycle_separator(w5, hub, ww);
    CHECK(c.balanced);
    CHECK(c.vertices.size() == 3);
    CHECK(contains(c.vertices, 0));

    RotationSystem tri = planar_embed(cycle(3));
    c = fundamental_cycle_separator(tri, bfs_tree(cycle(3), 0), std::vector<Weight>(3, 1));
    CHECK(fixtures::sorted(c.vertices) == std::vector<VertexId>{0, 1, 2});
    CHECK(c.inside == 0);
    CHECK(c.outside == 0);
}

TEST_CASE("lt_separator examples") {
    check_lt(cycle(6));
    check_lt(complete(4));
    check_lt(grid_graph(3, 3));
    for (const Graph& g : {cycle(6), complete(4), grid_graph(3, 3)})
        CHECK(lt_separator(g).vertices.size() >= min_balanced_separator(g).min_size);
}

TEST_CASE("lt_separator on trees uses at most two vertices") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph t = assign_weights(random_tree(1 + seed * 7, seed), WeightMode::uniform_random(1, 20), seed);
        LTSeparator s = lt_separator(t);
        CHECK(s.vertices.size() <= 2);
        CHECK(verify_separator(t, s.vertices).pass);
    }
    CHECK(lt_separator(path(1)).vertices.size() <= 1);
}

TEST_CASE("lt_separator errors") {
    try {
        lt_separator(complete(5));
        FAIL("K5 separated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPlanar);
    }
    try {
        lt_separator(path(3).with_weights({0, 0, 0}));
        FAIL("zero weight separated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroTotalWeight);
    }
}

TEST_CASE("lt_separator on grids and triangulations") {
    for (std::size_t a : {2, 4, 7, 12}) check_lt(grid_graph(a, a));
    check_lt(grid_graph(1, 9));
    check_lt(grid_graph(3, 17));
    for (std::uint64_t seed = 0; seed < 25; ++seed) check_lt(random_triangulation(3 + seed * 5, seed));
}

TEST_CASE("lt_separator with weights and other beta") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Graph g = assign_weights(random_triangulation(20 + seed, seed), WeightMode::uniform_random(1, 100), seed);
        check_lt(g);
        LtOptions loose;
        loose.beta = Ratio{3, 4};
        check_lt(g, loose);
        LtOptions raw;
        raw.prune = false;
        LTSeparator full = lt_separator(g, raw);
        CHECK(verify_separator(g, full.vertices).pass);
        CHECK(lt_separator(g).vertices.size() <= full.vertices.size());
        Graph h = assign_weights(random_triangulation(20 + seed, seed), WeightMode::single_heavy({4, 5}), seed);
        check_lt(h);
    }
}

TEST_CASE("small_exact defers to the oracle") {
    LtOptions exact;
    exact.small_exact = true;
    for (const Graph& g : {cycle(6), complete(4), grid_graph(3, 3), theta()}) {
        LTSeparator s = lt_separator(g, exact);
        CHECK(s.vertices.size() == min_balanced_separator(g).min_size);
        CHECK(verify_separator(g, s.vertices).pass);
    }
    Graph big = grid_graph(5, 5);
    CHECK(verify_separator(big, lt_separator(big, exact).vertices).pass);
}
