// fixtures.hpp - small named graphs shared by the tests.

#pragma once

#include <algorithm>
#include <vector>

#include "ats/graph.hpp"

namespace fixtures {

using ats::Edge;
using ats::EdgeSet;
using ats::Graph;
using ats::VertexId;
using ats::Weight;

inline Graph path(std::size_t n, std::vector<Weight> w = {}) {
    EdgeSet e;
    for (VertexId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    if (w.empty()) w.assign(n, 1);
    return Graph::build(n, e, w);
}

inline Graph cycle(std::size_t n) {
    EdgeSet e;
    for (VertexId i = 0; i < n; ++i) e.push_back(ats::make_edge(i, static_cast<VertexId>((i + 1) % n)));
    return Graph::build(n, e);
}

/// Center 0, leaves 1 .. n-1.
inline Graph star(std::size_t n, EdgeSet extra = {}) {
    EdgeSet e = std::move(extra);
    for (VertexId i = 1; i < n; ++i) e.push_back({0, i});
    return Graph::build(n, e);
}

inline Graph complete(std::size_t n) {
    EdgeSet e;
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j) e.push_back({i, j});
    return Graph::build(n, e);
}

/// C8 plus the chord 0-4.
inline Graph theta() {
    EdgeSet e;
    for (VertexId i = 0; i < 8; ++i) e.push_back(ats::make_edge(i, (i + 1) % 8));
    e.push_back({0, 4});
    return Graph::build(8, e);
}

/// Hub 0 joined to the cycle 1 .. k.
inline Graph wheel(std::size_t k) {
    EdgeSet e;
    for (VertexId i = 1; i <= k; ++i) {
        e.push_back({0, i});
        e.push_back(ats::make_edge(i, static_cast<VertexId>(i % k + 1)));
    }
    return Graph::build(k + 1, e);
}

inline Graph k33() {
    EdgeSet e;
    for (VertexId a = 0; a < 3; ++a)
        for (VertexId b = 3; b < 6; ++b) e.push_back({a, b});
    return Graph::build(6, e);
}

inline std::vector<VertexId> sorted(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace fixtures
