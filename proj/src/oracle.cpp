#include "ats/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>

#include <omp.h>

namespace ats {

namespace {

using Mask = std::uint32_t;

struct MaskGraph {
    std::size_t n = 0;
    std::array<Mask, kOracleMaxVertices> adj{};
    std::array<Weight, kOracleMaxVertices> w{};
    Weight total = 0;
    Ratio beta;

    MaskGraph(const Graph& g, Ratio b) : n(g.num_vertices()), total(g.total_weight()), beta(b) {
        for (VertexId v = 0; v < n; ++v) {
            w[v] = g.weight(v);
            for (VertexId u : g.neighbors(v)) adj[v] |= Mask{1} << u;
        }
    }

    // Heaviest component of G - removed.
    Weight heaviest(Mask removed) const {
        Mask remaining = (Mask{1} << n) - 1;
        remaining &= ~removed;
        Weight worst = 0;
        while (remaining) {
            Mask comp = remaining & (~remaining + 1);
            Mask frontier = comp;
            while (frontier) {
                int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                Mask nb = adj[v] & remaining & ~comp;
                comp |= nb;
                frontier |= nb;
            }
            Weight cw = 0;
            for (Mask m = comp; m; m &= m - 1) cw += w[std::countr_zero(m)];
            worst = std::max(worst, cw);
            remaining &= ~comp;
        }
        return worst;
    }

    bool balanced(Weight heavy) const { return !beta.exceeded_by(heavy, total); }
};

using Binomials = std::array<std::array<std::uint64_t, kOracleMaxVertices + 1>, kOracleMaxVertices + 1>;

constexpr Binomials make_binomials() {
    Binomials c{};
    for (std::size_t i = 0; i <= kOracleMaxVertices; ++i) {
        c[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
    }
    return c;
}

constexpr Binomials kBinom = make_binomials();

std::uint64_t binom(std::size_t n, std::size_t k) { return k > n ? 0 : kBinom[n][k]; }

// Lexicographic successor of a k-combination of {0..n-1}; false at the end.
bool next_combination(std::vector<VertexId>& c, std::size_t n) {
    const std::size_t k = c.size();
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

std::vector<VertexId> unrank(std::uint64_t rank, std::size_t n, std::size_t k) {
    std::vector<VertexId> c(k);
    VertexId next = 0;
    for (std::size_t pos = 0; pos < k; ++pos) {
        for (;;) {
            std::uint64_t block = binom(n - next - 1, k - pos - 1);
            if (rank < block) break;
            rank -= block;
            ++next;
        }
        c[pos] = next++;
    }
    return c;
}

Mask to_mask(const std::vector<VertexId>& c) {
    Mask m = 0;
    for (VertexId v : c) m |= Mask{1} << v;
    return m;
}

std::size_t check_size(const Graph& g, std::size_t max_size) {
    if (g.num_vertices() > kOracleMaxVertices)
        throw Error(ErrorKind::TooLarge, "oracle is limited to " + std::to_string(kOracleMaxVertices) + " vertices");
    if (max_size == kOracleAutoSize) return std::min(kOracleDefaultMaxSize, g.num_vertices());
    if (max_size > g.num_vertices())
        throw Error(ErrorKind::InvalidArgument, "max_size exceeds vertex count");
    return max_size;
}

}  // namespace

OracleResult min_balanced_separator_serial(const Graph& g, Ratio beta, std::size_t max_size) {
    max_size = check_size(g, max_size);
    MaskGraph mg(g, beta);
    const std::size_t n = g.num_vertices();
    for (std::size_t k = 0; k <= max_size; ++k) {
        std::vector<VertexId> c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<VertexId>(i);
        OracleResult best;
        Weight best_heavy = 0;
        do {
            Weight heavy = mg.heaviest(to_mask(c));
            if (mg.balanced(heavy) && (!best.feasible || heavy < best_heavy)) {
                best = {true, k, c};
                best_heavy = heavy;
            }
        } while (next_combination(c, n));
        if (best.feasible) return best;
    }
    return {};
}

OracleResult min_balanced_separator(const Graph& g, Ratio beta, std::size_t max_size) {
    max_size = check_size(g, max_size);
    MaskGraph mg(g, beta);
    const std::size_t n = g.num_vertices();
    constexpr std::uint64_t kChunk = 512;
    using Key = std::pair<Weight, std::uint64_t>;  // (heaviest component, rank)
    constexpr Key kNone{std::numeric_limits<Weight>::max(), 0};
    for (std::size_t k = 0; k <= max_size; ++k) {
        const std::uint64_t count = binom(n, k);
        const auto chunks = static_cast<std::int64_t>((count + kChunk - 1) / kChunk);
        Key best = kNone;
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t chunk = 0; chunk < chunks; ++chunk) {
            const std::uint64_t start = static_cast<std::uint64_t>(chunk) * kChunk;
            const std::uint64_t stop = std::min(count, start + kChunk);
            std::vector<VertexId> c = unrank(start, n, k);
            Key local = kNone;
            for (std::uint64_t rank = start; rank < stop; ++rank) {
                Weight heavy = mg.heaviest(to_mask(c));
                if (mg.balanced(heavy) && heavy < local.first) local = {heavy, rank};
                next_combination(c, n);
            }
            if (local != kNone) {
#pragma omp critical(ats_oracle_best)
                best = std::min(best, local);
            }
        }
        if (best != kNone) return {true, k, unrank(best.second, n, k)};
    }
    return {};
}

std::vector<VertexId> steiner_subtree_oracle(const SpanningTree& t, std::span<const VertexId> terminals) {
    const std::size_t n = t.size();
    std::vector<std::uint32_t> depth(n, 0);
    for (VertexId v : t.order)
        if (v != t.root) depth[v] = depth[t.parent[v]] + 1;
    std::vector<std::uint8_t> member(n, 0);
    for (VertexId a : terminals) member[a] = 1;
    for (std::size_t i = 0; i < terminals.size(); ++i)
        for (std::size_t j = i + 1; j < terminals.size(); ++j) {
            VertexId a = terminals[i], b = terminals[j];
            while (a != b) {
                if (depth[a] >= depth[b]) {
                    member[a] = 1;
                    a = t.parent[a];
                } else {
                    member[b] = 1;
                    b = t.parent[b];
                }
            }
            member[a] = 1;
        }
    std::vector<VertexId> out;
    for (VertexId v = 0; v < n; ++v)
        if (member[v]) out.push_back(v);
    return out;
}

std::vector<VertexId> nearest_in_set_oracle(const SpanningTree& t, std::span<const VertexId> targets) {
    const std::size_t n = t.size();
    std::vector<std::vector<VertexId>> adj(n);
    for (VertexId v = 0; v < n; ++v)
        if (v != t.root) {
            adj[v].push_back(t.parent[v]);
            adj[t.parent[v]].push_back(v);
        }
    std::vector<std::uint8_t> is_target(n, 0);
    for (VertexId v : targets) is_target[v] = 1;

    std::vector<VertexId> out(n, kNoVertex);
    std::vector<std::uint32_t> seen(n, 0);
    std::uint32_t stamp = 0;
    std::vector<VertexId> layer, next;
    for (VertexId s = 0; s < n; ++s) {
        ++stamp;
        layer.assign(1, s);
        seen[s] = stamp;
        while (!layer.empty() && out[s] == kNoVertex) {
            for (VertexId v : layer)
                if (is_target[v]) out[s] = std::min(out[s], v);
            if (out[s] != kNoVertex) break;
            next.clear();
            for (VertexId v : layer)
                for (VertexId w : adj[v])
                    if (seen[w] != stamp) {
                        seen[w] = stamp;
                        next.push_back(w);
                    }
            layer.swap(next);
        }
    }
    return out;
}

}  // namespace ats
