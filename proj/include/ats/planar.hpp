// planar.hpp - combinatorial embeddings and a vertex-weighted Lipton-Tarjan
// separator.
//
// The separator follows the classic two-phase construction: BFS levels give a
// median level and two cheap bounding levels; when the band between them is
// still too heavy, the band (with everything above it contracted to a single
// zero-weight root) is triangulated and split by a fundamental cycle of its
// BFS tree. Fundamental cycles are evaluated exactly through the dual
// spanning tree formed by the non-tree edges.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ats/graph.hpp"

namespace ats {

/// Cyclic neighbor order around every vertex, stored as darts. Dart d runs
/// from tail(d) to head(d); the face to the left of d continues with
/// next_in_face(d) = the dart following twin(d) in the rotation of head(d).
class RotationSystem {
public:
    RotationSystem() = default;
    explicit RotationSystem(std::vector<std::vector<VertexId>> rotation, EdgeSet synthetic = {});

    std::size_t num_vertices() const { return offsets_.size() - 1; }
    std::size_t num_edges() const { return heads_.size() / 2; }
    std::size_t num_faces() const { return faces_.size(); }
    /// V - E + F == 2 (connected graphs only).
    bool satisfies_euler() const;

    std::span<const VertexId> rotation(VertexId v) const {
        return {heads_.data() + offsets_[v], heads_.data() + offsets_[v + 1]};
    }
    std::size_t first_dart(VertexId v) const { return offsets_[v]; }
    VertexId tail(std::size_t d) const { return tails_[d]; }
    VertexId head(std::size_t d) const { return heads_[d]; }
    std::size_t twin(std::size_t d) const { return twins_[d]; }
    std::size_t next_in_face(std::size_t d) const;
    std::size_t face_of(std::size_t d) const { return face_of_[d]; }

    /// Faces as cyclic vertex sequences (the tails of their darts).
    const std::vector<std::vector<VertexId>>& faces() const { return faces_; }
    std::size_t max_face_degree() const;

    /// Edges added by triangulation.
    const EdgeSet& synthetic_edges() const { return synthetic_; }

    /// Underlying simple graph (unit weights).
    Graph to_graph() const;

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<VertexId> heads_;
    std::vector<VertexId> tails_;
    std::vector<std::size_t> twins_;
    std::vector<std::size_t> face_of_;
    std::vector<std::vector<VertexId>> faces_;
    EdgeSet synthetic_;
};

bool is_planar(const Graph& g);

/// Throws Disconnected or NotPlanar.
RotationSystem planar_embed(const Graph& g);

/// Adds chords until every face is a triangle while keeping the graph simple.
/// Requires a connected simple embedding with at least 3 vertices (TooSmall).
RotationSystem triangulate(const RotationSystem& emb);

struct Levels {
    std::vector<std::uint32_t> level;       // per vertex
    std::vector<std::size_t> size;          // per level
    std::vector<Weight> weight;             // per level
};

Levels bfs_levels(const Graph& g, VertexId root);

struct FundamentalCycle {
    std::vector<VertexId> vertices;  // u .. lca .. v
    Edge edge;                       // the closing non-tree edge
    Weight inside = 0;
    Weight outside = 0;
    bool balanced = false;
};

/// Chooses, among all fundamental cycles of `tree` in the triangulated
/// embedding, the shortest one leaving at most beta * reference on each side
/// (reference defaults to the sum of `weights`). If none qualifies, returns
/// the cycle with the lightest heavier side and `balanced == false`.
FundamentalCycle fundamental_cycle_separator(const RotationSystem& emb, const SpanningTree& tree,
                                             std::span<const Weight> weights, Ratio beta = kTwoThirds,
                                             Weight reference = 0);

struct LtOptions {
    Ratio beta = kTwoThirds;
    /// Drop separator vertices that are not needed for balance.
    bool prune = true;
    /// For graphs of at most 18 vertices, return an exact minimum separator.
    bool small_exact = false;
};

struct LTSeparator {
    std::vector<VertexId> vertices;  // sorted
    // Level phase; -1 / max+1 denote the empty virtual levels.
    std::int64_t median_level = 0;
    std::int64_t low_level = -1;
    std::int64_t high_level = 0;
    std::size_t num_levels = 0;
    bool used_cycle = false;
    std::vector<VertexId> cycle;
    std::size_t pruned = 0;
};

/// Throws Disconnected, NotPlanar or ZeroTotalWeight.
LTSeparator lt_separator(const Graph& g, const LtOptions& opts = {});

}  // namespace ats
