#include "ats/gen.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_set>

#include "ats/planar.hpp"

namespace ats {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Rng::Rng(std::uint64_t seed, std::string_view stream) : engine_(splitmix64(seed ^ fnv1a64(stream))) {}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    for (;;) {
        std::uint64_t x = engine_();
        if (x <= limit) return x % bound;
    }
}

namespace {

// Rooted random recursive tree on internal labels; parent[i] < i.
struct InternalTree {
    std::vector<VertexId> parent;
    std::vector<VertexId> child_offsets, children;
    std::vector<std::uint32_t> depth, tin, tout;

    InternalTree(std::size_t n, std::uint64_t seed) : parent(n, 0), depth(n, 0), tin(n, 0), tout(n, 0) {
        Rng rng(seed, "tree");
        for (VertexId i = 1; i < n; ++i) {
            parent[i] = static_cast<VertexId>(rng.below(i));
            depth[i] = depth[parent[i]] + 1;
        }
        child_offsets.assign(n + 1, 0);
        for (VertexId i = 1; i < n; ++i) ++child_offsets[parent[i] + 1];
        for (std::size_t i = 0; i < n; ++i) child_offsets[i + 1] += child_offsets[i];
        children.resize(n == 0 ? 0 : n - 1);
        std::vector<VertexId> fill(child_offsets.begin(), child_offsets.end() - 1);
        for (VertexId i = 1; i < n; ++i) children[fill[parent[i]]++] = i;

        std::uint32_t clock = 0;
        std::vector<std::pair<VertexId, VertexId>> stack{{0, child_offsets[0]}};
        tin[0] = clock++;
        while (!stack.empty()) {
            auto& [v, it] = stack.back();
            if (it < child_offsets[v + 1]) {
                VertexId c = children[it++];
                tin[c] = clock++;
                stack.push_back({c, child_offsets[c]});
            } else {
                tout[v] = clock;
                stack.pop_back();
            }
        }
    }

    std::size_t size() const { return parent.size(); }
    bool is_ancestor(VertexId a, VertexId v) const { return tin[a] <= tin[v] && tin[v] < tout[a]; }
    VertexId lca(VertexId a, VertexId b) const {
        while (depth[a] > depth[b]) a = parent[a];
        while (depth[b] > depth[a]) b = parent[b];
        while (a != b) {
            a = parent[a];
            b = parent[b];
        }
        return a;
    }
    bool tree_edge(VertexId a, VertexId b) const { return (a != 0 && parent[a] == b) || (b != 0 && parent[b] == a); }

    VertexId random_neighbor(VertexId v, Rng& rng) const {
        const std::size_t kids = child_offsets[v + 1] - child_offsets[v];
        const std::size_t options = kids + (v != 0 ? 1 : 0);
        std::size_t pick = rng.below(options);
        return pick < kids ? children[child_offsets[v] + pick] : parent[v];
    }
};

std::uint64_t pair_key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
}

// Tree plus extras is planar iff the virtual tree of the extra-edge endpoints
// plus the extras is: everything else is hanging trees and subdivisions.
bool kernel_planar(const InternalTree& t, const EdgeSet& extras) {
    std::vector<VertexId> nodes;
    for (const Edge& e : extras) {
        nodes.push_back(e.u);
        nodes.push_back(e.v);
    }
    auto by_tin = [&](VertexId a, VertexId b) { return t.tin[a] < t.tin[b]; };
    std::sort(nodes.begin(), nodes.end(), by_tin);
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    const std::size_t k = nodes.size();
    for (std::size_t i = 0; i + 1 < k; ++i) nodes.push_back(t.lca(nodes[i], nodes[i + 1]));
    std::sort(nodes.begin(), nodes.end(), by_tin);
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    auto local = [&](VertexId v) {
        return static_cast<VertexId>(std::lower_bound(nodes.begin(), nodes.end(), v, by_tin) - nodes.begin());
    };
    EdgeSet edges;
    std::vector<VertexId> stack;
    for (VertexId v : nodes) {
        while (!stack.empty() && !t.is_ancestor(stack.back(), v)) stack.pop_back();
        if (!stack.empty()) edges.push_back(make_edge(local(stack.back()), local(v)));
        stack.push_back(v);
    }
    for (const Edge& e : extras) edges.push_back(make_edge(local(e.u), local(e.v)));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return is_planar(Graph::build(nodes.size(), edges));
}

Graph relabeled(const InternalTree& t, const EdgeSet& extras, std::uint64_t seed) {
    const std::size_t n = t.size();
    std::vector<VertexId> perm(n);
    for (VertexId i = 0; i < n; ++i) perm[i] = i;
    Rng rng(seed, "relabel");
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    EdgeSet edges;
    edges.reserve(n - 1 + extras.size());
    for (VertexId i = 1; i < n; ++i) edges.push_back(make_edge(perm[i], perm[t.parent[i]]));
    for (const Edge& e : extras) edges.push_back(make_edge(perm[e.u], perm[e.v]));
    return Graph::build(n, edges);
}

}  // namespace

Graph random_tree(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "random_tree needs n >= 1");
    return relabeled(InternalTree(n, seed), {}, seed);
}

Graph near_tree_planar(const GenSpec& spec) {
    const std::size_t n = spec.n;
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "near_tree_planar needs n >= 1");
    if (spec.r < -1) throw Error(ErrorKind::InvalidArgument, "excess must be >= -1");
    const std::int64_t m = static_cast<std::int64_t>(n) + spec.r;
    const std::int64_t max_m = n < 3 ? static_cast<std::int64_t>(n) - 1 : 3 * static_cast<std::int64_t>(n) - 6;
    if (m > max_m)
        throw Error(ErrorKind::Infeasible, "n=" + std::to_string(n) + " r=" + std::to_string(spec.r) +
                                               " exceeds the planar edge bound");

    InternalTree t(n, spec.seed);
    Rng rng(spec.seed, "extra_edges");
    const std::size_t want = static_cast<std::size_t>(spec.r + 1);
    const std::size_t max_attempts = 200 * want;
    EdgeSet extras;
    std::unordered_set<std::uint64_t> present;
    std::size_t attempts = 0;
    while (extras.size() < want) {
        if (attempts++ == max_attempts)
            throw Error(ErrorKind::Infeasible, "placed " + std::to_string(extras.size()) + " of " +
                                                   std::to_string(want) + " extra edges before giving up");
        auto u = static_cast<VertexId>(rng.below(n));
        VertexId v = u;
        if (n <= 64 && rng.below(4) == 0) {
            v = static_cast<VertexId>(rng.below(n));
        } else {
            for (auto steps = rng.between(2, 5); steps > 0; --steps) v = t.random_neighbor(v, rng);
        }
        if (u == v || t.tree_edge(u, v) || present.count(pair_key(u, v))) continue;
        extras.push_back(make_edge(u, v));
        if (!kernel_planar(t, extras)) {
            extras.pop_back();
            continue;
        }
        present.insert(pair_key(u, v));
    }
    return assign_weights(relabeled(t, extras, spec.seed), spec.weights, spec.seed);
}

Graph grid_graph(std::size_t a, std::size_t b) {
    if (a == 0 || b == 0) throw Error(ErrorKind::InvalidArgument, "grid sides must be >= 1");
    EdgeSet edges;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) {
            auto id = static_cast<VertexId>(i * b + j);
            if (j + 1 < b) edges.push_back({id, id + 1});
            if (i + 1 < a) edges.push_back({id, static_cast<VertexId>(id + b)});
        }
    return Graph::build(a * b, edges);
}

Graph assign_weights(const Graph& g, const WeightMode& mode, std::uint64_t seed) {
    const std::size_t n = g.num_vertices();
    std::vector<Weight> w(n, 1);
    Rng rng(seed, "weights");
    switch (mode.kind) {
    case WeightMode::Kind::Unit:
        break;
    case WeightMode::Kind::UniformRandom:
        if (mode.lo == 0 || mode.lo > mode.hi)
            throw Error(ErrorKind::InvalidArgument, "uniform weights need 1 <= lo <= hi");
        for (auto& x : w) x = rng.between(mode.lo, mode.hi);
        break;
    case WeightMode::Kind::SingleHeavy: {
        const Ratio f = mode.heavy;
        if (f.den == 0 || 2 * f.num <= f.den || f.num >= f.den)
            throw Error(ErrorKind::InvalidArgument, "heavy fraction must lie strictly between 1/2 and 1");
        const Weight rest = n - 1;
        // Least h with h / (rest + h) > num / den.
        Weight h = (f.num * rest + (f.den - f.num) - 1) / (f.den - f.num);
        if (h * (f.den - f.num) <= f.num * rest) ++h;
        w[rng.below(n)] = h;
        break;
    }
    }
    return g.with_weights(std::move(w));
}

Graph random_triangulation(std::size_t n, std::uint64_t seed) {
    if (n < 3) throw Error(ErrorKind::TooSmall, "a triangulation needs n >= 3");
    Rng rng(seed, "triangulation");
    std::vector<std::array<VertexId, 3>> faces{{0, 1, 2}, {0, 1, 2}};
    std::vector<std::set<VertexId>> adj(n);
    auto link = [&](VertexId a, VertexId b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    link(0, 1);
    link(1, 2);
    link(0, 2);
    for (VertexId v = 3; v < n; ++v) {
        const std::size_t f = rng.below(faces.size());
        auto [a, b, c] = faces[f];
        faces[f] = {a, b, v};
        faces.push_back({b, c, v});
        faces.push_back({a, c, v});
        link(a, v);
        link(b, v);
        link(c, v);
    }
    for (std::size_t flip = 0; flip < n; ++flip) {
        const std::size_t f = rng.below(faces.size());
        const std::size_t side = rng.below(3);
        const VertexId u = faces[f][side], v = faces[f][(side + 1) % 3], a = faces[f][(side + 2) % 3];
        std::size_t g = faces.size();
        for (std::size_t i = 0; i < faces.size(); ++i) {
            if (i == f) continue;
            const auto& t = faces[i];
            if (std::count(t.begin(), t.end(), u) && std::count(t.begin(), t.end(), v)) {
                g = i;
                break;
            }
        }
        const auto& other = faces[g];
        VertexId b = other[0] + other[1] + other[2] - u - v;
        if (a == b || adj[a].count(b)) continue;
        adj[u].erase(v);
        adj[v].erase(u);
        link(a, b);
        faces[f] = {a, b, u};
        faces[g] = {a, b, v};
    }
    EdgeSet edges;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v : adj[u])
            if (u < v) edges.push_back({u, v});
    return Graph::build(n, edges);
}

}  // namespace ats
