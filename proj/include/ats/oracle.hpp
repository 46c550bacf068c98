// oracle.hpp - exhaustive ground truth for small instances.

#pragma once

#include <span>
#include <vector>

#include "ats/graph.hpp"

namespace ats {

inline constexpr std::size_t kOracleMaxVertices = 20;
inline constexpr std::size_t kOracleDefaultMaxSize = 8;
/// Default max_size: kOracleDefaultMaxSize, clamped to |V|.
inline constexpr std::size_t kOracleAutoSize = static_cast<std::size_t>(-1);

struct OracleResult {
    bool feasible = false;
    std::size_t min_size = 0;
    /// Among minimum-size balanced separators, one with the lightest
    /// heaviest component; ties go to the lexicographically first (sorted IDs).
    std::vector<VertexId> witness;
};

/// Minimum balanced separator by subset enumeration in increasing size.
/// Throws TooLarge above kOracleMaxVertices vertices, InvalidArgument if
/// max_size exceeds |V|. Runs the OpenMP kernel.
OracleResult min_balanced_separator(const Graph& g, Ratio beta = kTwoThirds,
                                    std::size_t max_size = kOracleAutoSize);

/// Single-threaded reference for the same search.
OracleResult min_balanced_separator_serial(const Graph& g, Ratio beta = kTwoThirds,
                                           std::size_t max_size = kOracleAutoSize);

/// Union of the tree paths between every pair of terminals, sorted.
std::vector<VertexId> steiner_subtree_oracle(const SpanningTree& t, std::span<const VertexId> terminals);

/// For every vertex, the target at minimum tree distance (ties: lower ID),
/// found by a separate BFS from each vertex.
std::vector<VertexId> nearest_in_set_oracle(const SpanningTree& t, std::span<const VertexId> targets);

}  // namespace ats
