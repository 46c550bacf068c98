// edge_list.hpp - text formats.
//
// Graph files:
//     p <n> <m>
//     e <u> <v>          (m lines, 1-based IDs)
//     w <v> <weight>     (optional, default weight 1)
// Lines starting with `c` and blank lines are ignored.
//
// Stage traces are a sequence of blocks, each a `stage <name>` header
// followed by a graph block in the same format, plus `s <v>` lines naming the
// stage's highlighted vertices (e.g. the branch set or a separator).

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ats/graph.hpp"

namespace ats {

struct ParseOptions {
    /// When set, `w` lines may carry decimals; each weight is multiplied by
    /// this factor and must come out integral.
    std::optional<std::uint64_t> weight_scale;
};

Graph parse_edge_list(std::istream& in, const ParseOptions& opts = {});
Graph read_edge_list_file(const std::string& path, const ParseOptions& opts = {});

/// Weight lines are written only for weights other than 1 unless
/// `all_weights` is set.
void write_edge_list(std::ostream& out, const Graph& g, bool all_weights = false);

/// Separator listing: whitespace-separated 1-based IDs. Returns 0-based IDs.
std::vector<VertexId> parse_vertex_list(std::istream& in);
std::vector<VertexId> parse_vertex_list(const std::string& text);

/// Parses a decimal or `a/b` fraction.
Ratio parse_ratio(const std::string& text);

struct TraceStage {
    std::string name;
    std::size_t n = 0;
    EdgeSet edges;               // 0-based
    std::vector<Weight> weights; // size n
    std::vector<VertexId> marked;

    Weight total_weight() const;
};

void write_trace(std::ostream& out, const std::vector<TraceStage>& stages);
std::vector<TraceStage> parse_trace(std::istream& in);

}  // namespace ats
