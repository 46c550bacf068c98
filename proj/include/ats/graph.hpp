// graph.hpp - vertex-weighted undirected simple graphs and the primitives
// shared by the separator pipeline, the planar separator and the oracle.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ats {

using VertexId = std::uint32_t;
using Weight = std::uint64_t;

inline constexpr VertexId kNoVertex = ~VertexId{0};

enum class ErrorKind {
    DuplicateEdge,
    SelfLoop,
    BadVertexId,
    Overflow,
    Disconnected,
    EmptyTerminals,
    EmptyTree,
    ZeroTotalWeight,
    RepairCapExceeded,
    NotPlanar,
    TooSmall,
    TooLarge,
    Infeasible,
    Parse,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Unordered vertex pair; normalized so that u < v by `make_edge`.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

using EdgeSet = std::vector<Edge>;

/// Non-negative rational num/den, used for balance factors such as 2/3.
struct Ratio {
    std::uint64_t num = 2;
    std::uint64_t den = 3;

    /// True iff part > num/den * total, computed exactly.
    bool exceeded_by(Weight part, Weight total) const {
        using U = unsigned __int128;
        return U(part) * den > U(num) * total;
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline constexpr Ratio kTwoThirds{2, 3};

/// Immutable CSR graph. Neighbor lists are sorted ascending.
class Graph {
public:
    Graph() = default;

    /// Validates simplicity, vertex range and weight overflow.
    static Graph build(std::size_t n, std::span<const Edge> edges, std::vector<Weight> weights);
    /// Unit weights.
    static Graph build(std::size_t n, std::span<const Edge> edges);

    std::size_t num_vertices() const { return weights_.size(); }
    std::size_t num_edges() const { return adj_.size() / 2; }
    /// m - n; -1 for a tree.
    std::int64_t excess() const {
        return static_cast<std::int64_t>(num_edges()) - static_cast<std::int64_t>(num_vertices());
    }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
    /// Cache hint for a later neighbors(v).
    void prefetch_offsets(VertexId v) const { __builtin_prefetch(offsets_.data() + v); }
    bool has_edge(VertexId a, VertexId b) const;

    Weight weight(VertexId v) const { return weights_[v]; }
    std::span<const Weight> weights() const { return weights_; }
    Weight total_weight() const { return total_; }

    /// Edges with u < v, sorted.
    EdgeSet edges() const;

    /// Same structure, new weights (validated).
    Graph with_weights(std::vector<Weight> weights) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::uint32_t> offsets_{0};  // 32-bit keeps the CSR cache-friendly
    std::vector<VertexId> adj_;
    std::vector<Weight> weights_;
    Weight total_ = 0;
};

Graph build_graph(std::size_t n, std::span<const Edge> edges, std::vector<Weight> weights);

/// Rooted parent representation; parent[root] == root.
struct SpanningTree {
    VertexId root = 0;
    std::vector<VertexId> parent;
    /// Vertices in BFS order, parents before children.
    std::vector<VertexId> order;

    std::size_t size() const { return parent.size(); }
    EdgeSet tree_edges() const;
    bool contains_edge(VertexId a, VertexId b) const {
        return (a != root && parent[a] == b) || (b != root && parent[b] == a);
    }
};

/// BFS tree; neighbors are visited in ascending ID order. Throws Disconnected.
SpanningTree bfs_tree(const Graph& g, VertexId root);

/// Component label per vertex; labels are dense and assigned in order of
/// the lowest vertex of each component. Removed vertices get kNoVertex.
std::vector<VertexId> component_labels(const Graph& g, std::span<const std::uint8_t> removed = {});

std::vector<VertexId> connected_components(const Graph& g);

bool is_connected(const Graph& g);

struct VerifyReport {
    std::size_t separator_size = 0;
    std::vector<Weight> component_weights;
    Weight max_component = 0;
    Weight total = 0;
    bool pass = false;

    double max_fraction() const {
        return total == 0 ? 0.0 : static_cast<double>(max_component) / static_cast<double>(total);
    }
};

/// Checks every component of G - S against beta * W. Duplicate IDs in S are
/// ignored; out-of-range IDs throw BadVertexId.
VerifyReport verify_separator(const Graph& g, std::span<const VertexId> separator,
                              Ratio beta = kTwoThirds);

}  // namespace ats
