#include "ats/graph.hpp"

#include <algorithm>
#include <limits>

namespace ats {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DuplicateEdge: return "DuplicateEdge";
        case ErrorKind::SelfLoop: return "SelfLoop";
        case ErrorKind::BadVertexId: return "BadVertexId";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::EmptyTerminals: return "EmptyTerminals";
        case ErrorKind::EmptyTree: return "EmptyTree";
        case ErrorKind::ZeroTotalWeight: return "ZeroTotalWeight";
        case ErrorKind::RepairCapExceeded: return "RepairCapExceeded";
        case ErrorKind::NotPlanar: return "NotPlanar";
        case ErrorKind::TooSmall: return "TooSmall";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

namespace {

Weight checked_total(std::span<const Weight> weights) {
    Weight total = 0;
    for (Weight w : weights) {
        if (w > std::numeric_limits<Weight>::max() - total)
            throw Error(ErrorKind::Overflow, "total vertex weight exceeds 64 bits");
        total += w;
    }
    return total;
}

}  // namespace

Graph Graph::build(std::size_t n, std::span<const Edge> edges, std::vector<Weight> weights) {
    if (weights.size() != n)
        throw Error(ErrorKind::InvalidArgument, "weight list length differs from vertex count");
    if (n >= kNoVertex) throw Error(ErrorKind::TooLarge, "vertex count exceeds 32-bit IDs");
    if (edges.size() >= kNoVertex / 2) throw Error(ErrorKind::TooLarge, "edge count exceeds 32-bit offsets");

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n)
            throw Error(ErrorKind::BadVertexId,
                        "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} out of range");
        if (e.u == e.v) throw Error(ErrorKind::SelfLoop, "self-loop at " + std::to_string(e.u));
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

    g.adj_.resize(2 * edges.size());
    std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : edges) {
        g.adj_[fill[e.u]++] = e.v;
        g.adj_[fill[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto first = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        auto dup = std::adjacent_find(first, last);
        if (dup != last)
            throw Error(ErrorKind::DuplicateEdge,
                        "edge {" + std::to_string(v) + "," + std::to_string(*dup) + "} repeated");
    }
    g.total_ = checked_total(weights);
    g.weights_ = std::move(weights);
    return g;
}

Graph Graph::build(std::size_t n, std::span<const Edge> edges) {
    return build(n, edges, std::vector<Weight>(n, 1));
}

Graph build_graph(std::size_t n, std::span<const Edge> edges, std::vector<Weight> weights) {
    return Graph::build(n, edges, std::move(weights));
}

bool Graph::has_edge(VertexId a, VertexId b) const {
    if (a >= num_vertices() || b >= num_vertices()) return false;
    auto nb = degree(a) <= degree(b) ? neighbors(a) : neighbors(b);
    VertexId target = degree(a) <= degree(b) ? b : a;
    return std::binary_search(nb.begin(), nb.end(), target);
}

EdgeSet Graph::edges() const {
    EdgeSet out;
    out.reserve(num_edges());
    for (VertexId u = 0; u < num_vertices(); ++u)
        for (VertexId v : neighbors(u))
            if (u < v) out.push_back({u, v});
    return out;
}

Graph Graph::with_weights(std::vector<Weight> weights) const {
    if (weights.size() != num_vertices())
        throw Error(ErrorKind::InvalidArgument, "weight list length differs from vertex count");
    Graph g = *this;
    g.total_ = checked_total(weights);
    g.weights_ = std::move(weights);
    return g;
}

EdgeSet SpanningTree::tree_edges() const {
    EdgeSet out;
    out.reserve(parent.empty() ? 0 : parent.size() - 1);
    for (VertexId v = 0; v < parent.size(); ++v)
        if (v != root) out.push_back(make_edge(v, parent[v]));
    std::sort(out.begin(), out.end());
    return out;
}

SpanningTree bfs_tree(const Graph& g, VertexId root) {
    const std::size_t n = g.num_vertices();
    if (root >= n) throw Error(ErrorKind::BadVertexId, "root out of range");
    SpanningTree t;
    t.root = root;
    t.parent.assign(n, kNoVertex);
    t.order.reserve(n);
    t.parent[root] = root;
    t.order.push_back(root);
    for (std::size_t head = 0; head < t.order.size(); ++head) {
        VertexId v = t.order[head];
        for (VertexId w : g.neighbors(v)) {
            if (t.parent[w] != kNoVertex) continue;
            t.parent[w] = v;
            t.order.push_back(w);
        }
    }
    if (t.order.size() != n) throw Error(ErrorKind::Disconnected, "graph is not connected");
    return t;
}

std::vector<VertexId> component_labels(const Graph& g, std::span<const std::uint8_t> removed) {
    const std::size_t n = g.num_vertices();
    std::vector<VertexId> label(n, kNoVertex);
    std::vector<VertexId> stack;
    VertexId next = 0;
    for (VertexId s = 0; s < n; ++s) {
        if (label[s] != kNoVertex || (!removed.empty() && removed[s])) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : g.neighbors(v)) {
                if (label[w] != kNoVertex || (!removed.empty() && removed[w])) continue;
                label[w] = next;
                stack.push_back(w);
            }
        }
        ++next;
    }
    return label;
}

std::vector<VertexId> connected_components(const Graph& g) { return component_labels(g); }

bool is_connected(const Graph& g) {
    auto label = component_labels(g);
    return std::all_of(label.begin(), label.end(), [](VertexId c) { return c == 0; });
}

VerifyReport verify_separator(const Graph& g, std::span<const VertexId> separator, Ratio beta) {
    if (beta.den == 0 || 2 * beta.num < beta.den || beta.num >= beta.den)
        throw Error(ErrorKind::InvalidArgument, "beta must lie in [1/2, 1)");
    std::vector<std::uint8_t> removed(g.num_vertices(), 0);
    VerifyReport report;
    for (VertexId s : separator) {
        if (s >= g.num_vertices())
            throw Error(ErrorKind::BadVertexId, "separator vertex " + std::to_string(s) + " out of range");
        if (!removed[s]) ++report.separator_size;
        removed[s] = 1;
    }
    auto label = component_labels(g, removed);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (label[v] == kNoVertex) continue;
        if (label[v] >= report.component_weights.size()) report.component_weights.resize(label[v] + 1, 0);
        report.component_weights[label[v]] += g.weight(v);
    }
    for (Weight w : report.component_weights) report.max_component = std::max(report.max_component, w);
    report.total = g.total_weight();
    report.pass = !beta.exceeded_by(report.max_component, report.total);
    return report;
}

}  // namespace ats
