// pipeline.hpp - balanced separators for connected planar graphs with few
// more edges than vertices.
//
// A graph with n vertices and n + r edges is a spanning tree T plus r + 1
// extra edges R. Only the part of T spanned by the endpoints of R matters
// structurally: the pipeline keeps that Steiner subtree, moves the weight of
// everything hanging off it onto the nearest subtree vertex, and replaces
// each maximal path between branch vertices by a single weighted node. The
// result has O(r) nodes; a planar separator of it is mapped back onto G and
// repaired where path interiors or hanging trees still leave a component
// heavier than beta * W.

#pragma once

#include <array>
#include <chrono>
#include <span>
#include <vector>

#include "ats/edge_list.hpp"
#include "ats/graph.hpp"

namespace ats {

struct SteinerSubtree {
    std::vector<std::uint8_t> member;  // per vertex of G
    EdgeSet edges;                     // tree edges with both ends in the subtree
    std::size_t size = 0;
};

struct BranchSet {
    std::vector<VertexId> members;     // sorted
    std::vector<std::uint8_t> mask;    // per vertex of G
};

struct PathDecomposition {
    /// Each path runs from one branch vertex to another; interior vertices
    /// are not in the branch set. Ordered by (first vertex, second vertex).
    std::vector<std::vector<VertexId>> paths;
};

struct CollapsedWeights {
    std::vector<Weight> wprime;    // zero outside the subtree
    std::vector<VertexId> attach;  // nearest subtree vertex; identity inside
};

/// Branch vertices followed by one subdivision node per path.
struct CompressedGraph {
    struct PathNode {
        VertexId first = 0;                // original endpoint IDs
        VertexId last = 0;
        std::vector<VertexId> interior;    // in path order
        std::vector<Weight> prefix;        // prefix[i] = sum of wprime(interior[0..i))
        Weight weight() const { return prefix.back(); }
    };

    std::vector<VertexId> branch;          // node i < branch.size() is original branch[i]
    std::vector<PathNode> paths;           // node branch.size() + k is paths[k]
    Graph graph;                           // simple, node-weighted
    std::size_t parallel_edges = 0;        // dropped while building `graph`

    std::size_t num_nodes() const { return branch.size() + paths.size(); }
    bool is_path_node(VertexId node) const { return node >= branch.size(); }
};

struct SeparatorStats {
    std::int64_t excess = 0;              // r
    std::size_t size = 0;
    Weight max_component = 0;
    Weight total = 0;
    std::size_t repairs = 0;
    std::size_t compressed_nodes = 0;
    std::size_t compressed_separator = 0;
    std::size_t lifted_size = 0;

    double max_fraction() const {
        return total == 0 ? 0.0 : static_cast<double>(max_component) / static_cast<double>(total);
    }
};

struct Separator {
    std::vector<VertexId> vertices;  // sorted, original IDs
    SeparatorStats stats;
};

enum class Stage : std::size_t {
    SpanningTree,
    ExtraEdges,
    SteinerSubtree,
    BranchSet,
    Paths,
    Collapse,
    Compress,
    PlanarSeparator,
    Lift,
    Repair,
    Count,
};

inline constexpr std::array<const char*, static_cast<std::size_t>(Stage::Count)> kStageNames = {
    "spanning_tree", "extra_edges", "steiner_subtree", "branch_set", "paths",
    "collapse",      "compress",    "planar_separator", "lift",      "repair",
};

using StageTimes = std::array<std::chrono::nanoseconds, static_cast<std::size_t>(Stage::Count)>;

// ── Stages ──────────────────────────────────────────────────────────

/// BFS tree; throws Disconnected.
SpanningTree compute_spanning_tree(const Graph& g, VertexId root = 0);

/// E(G) minus the tree edges, sorted.
EdgeSet extra_edges(const Graph& g, const SpanningTree& t);

/// Smallest subtree of T containing all terminals, by repeatedly removing
/// non-terminal leaves. Throws EmptyTerminals.
SteinerSubtree steiner_subtree(const SpanningTree& t, std::span<const VertexId> terminals);

/// Subtree vertices of degree >= 3 plus all terminals.
BranchSet branch_vertices(const SteinerSubtree& sub, std::span<const VertexId> terminals);

PathDecomposition decompose_paths(const SteinerSubtree& sub, const BranchSet& branch);

CollapsedWeights collapse_weights(const Graph& g, const SpanningTree& t, const SteinerSubtree& sub);

/// Branch nodes (sorted IDs, with their weights) followed by one node per
/// path; parallel edges are dropped and counted.
CompressedGraph assemble_compressed(std::vector<VertexId> branch, std::vector<Weight> branch_weights,
                                    std::vector<CompressedGraph::PathNode> paths, const EdgeSet& extra);

CompressedGraph build_compressed_graph(const BranchSet& branch, const PathDecomposition& paths,
                                       const EdgeSet& extra, const CollapsedWeights& cw);

/// Index into `interior` that minimizes the heavier of the two sides left
/// after removing it (ties: lower vertex ID).
std::size_t weighted_median_cut(const CompressedGraph::PathNode& path);

/// Maps compressed nodes to original vertices. Branch nodes map to
/// themselves; a path node maps to its weighted-median interior vertex, or,
/// for an empty interior, to an endpoint not already lifted (lower ID first).
std::vector<VertexId> lift_separator(std::span<const VertexId> compressed_sep, const CompressedGraph& c);

/// Vertex whose removal leaves every component of the tree induced on
/// `vertices` with at most half of the tree's weight; lowest qualifying ID.
/// Throws EmptyTree.
VertexId tree_centroid(const Graph& g, std::span<const VertexId> vertices);

/// Adds vertices until every component of G - S weighs at most beta * W:
/// a tree component gets its centroid, any other component the vertex whose
/// removal leaves its lightest heaviest piece. Throws RepairCapExceeded after
/// `cap` additions (default 2 + ceil(4 sqrt(r + 1))).
Separator heavy_vertex_fixup(const Graph& g, std::span<const VertexId> separator, Ratio beta = kTwoThirds,
                             std::size_t cap = 0);

std::size_t repair_cap(std::int64_t excess);

struct SeparateOptions {
    Ratio beta = kTwoThirds;
    StageTimes* stage_times = nullptr;
    std::vector<TraceStage>* trace = nullptr;
    /// Run the stage functions above one by one (always the case when a
    /// trace is requested) instead of the BFS-ordered fast path. Both give
    /// the same separator.
    bool staged = false;
};

/// Full pipeline. Throws Disconnected, ZeroTotalWeight, NotPlanar.
Separator separate(const Graph& g, const SeparateOptions& opts = {});

/// The pipeline's intermediate results as trace stages.
std::vector<TraceStage> dump_stages(const Graph& g, Ratio beta = kTwoThirds);

}  // namespace ats
