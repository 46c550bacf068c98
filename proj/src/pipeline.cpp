#include "ats/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ats/planar.hpp"

namespace ats {

namespace {

class StageClock {
public:
    explicit StageClock(StageTimes* sink) : sink_(sink) {
        if (sink_) sink_->fill(std::chrono::nanoseconds{0});
    }
    void start() { t0_ = std::chrono::steady_clock::now(); }
    void stop(Stage s) {
        if (sink_) (*sink_)[static_cast<std::size_t>(s)] += std::chrono::steady_clock::now() - t0_;
    }

private:
    StageTimes* sink_;
    std::chrono::steady_clock::time_point t0_{};
};

std::vector<Weight> component_weights(const Graph& g, const std::vector<VertexId>& label) {
    std::vector<Weight> out;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (label[v] == kNoVertex) continue;
        if (label[v] >= out.size()) out.resize(label[v] + 1, 0);
        out[label[v]] += g.weight(v);
    }
    return out;
}

// Vertex of the component `comp` (a connected vertex set of G - removed)
// minimizing the heaviest piece left after removing it. Lowpoint DFS.
VertexId best_cut_vertex(const Graph& g, const std::vector<std::uint8_t>& removed,
                         const std::vector<VertexId>& comp) {
    const std::size_t n = g.num_vertices();
    constexpr std::uint32_t kUnseen = ~std::uint32_t{0};
    std::vector<std::uint32_t> disc(n, kUnseen), low(n, 0);
    std::vector<Weight> sub(n, 0), cut_pieces(n, 0), max_piece(n, 0);
    std::vector<VertexId> parent(n, kNoVertex);
    Weight total = 0;
    for (VertexId v : comp) total += g.weight(v);

    const VertexId root = comp.front();
    std::vector<std::pair<VertexId, std::size_t>> stack{{root, 0}};
    std::uint32_t clock = 0;
    disc[root] = low[root] = clock++;
    sub[root] = g.weight(root);
    while (!stack.empty()) {
        auto& [v, it] = stack.back();
        auto nb = g.neighbors(v);
        if (it < nb.size()) {
            VertexId w = nb[it++];
            if (removed[w]) continue;
            if (disc[w] == kUnseen) {
                parent[w] = v;
                disc[w] = low[w] = clock++;
                sub[w] = g.weight(w);
                stack.push_back({w, 0});
            } else if (w != parent[v]) {
                low[v] = std::min(low[v], disc[w]);
            }
            continue;
        }
        VertexId done = v;
        stack.pop_back();
        if (stack.empty()) break;
        VertexId p = stack.back().first;
        sub[p] += sub[done];
        low[p] = std::min(low[p], low[done]);
        if (p == root || low[done] >= disc[p]) {
            cut_pieces[p] += sub[done];
            max_piece[p] = std::max(max_piece[p], sub[done]);
        }
    }

    VertexId best = kNoVertex;
    Weight best_piece = 0;
    for (VertexId v : comp) {
        Weight rest = total - g.weight(v) - cut_pieces[v];
        Weight piece = std::max(max_piece[v], rest);
        if (best == kNoVertex || piece < best_piece || (piece == best_piece && v < best)) {
            best = v;
            best_piece = piece;
        }
    }
    return best;
}

}  // namespace

// ── Stages ──────────────────────────────────────────────────────────

SpanningTree compute_spanning_tree(const Graph& g, VertexId root) { return bfs_tree(g, root); }

EdgeSet extra_edges(const Graph& g, const SpanningTree& t) {
    EdgeSet out;
    for (VertexId u = 0; u < g.num_vertices(); ++u)
        for (VertexId v : g.neighbors(u))
            if (u < v && !t.contains_edge(u, v)) out.push_back({u, v});
    return out;
}

SteinerSubtree steiner_subtree(const SpanningTree& t, std::span<const VertexId> terminals) {
    if (terminals.empty()) throw Error(ErrorKind::EmptyTerminals, "no terminals given");
    const std::size_t n = t.size();
    std::vector<std::uint32_t> degree(n, 0);
    std::vector<VertexId> neighbor_xor(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        if (v == t.root) continue;
        ++degree[v];
        ++degree[t.parent[v]];
        neighbor_xor[v] ^= t.parent[v];
        neighbor_xor[t.parent[v]] ^= v;
    }
    SteinerSubtree sub;
    sub.member.assign(n, 1);
    std::vector<std::uint8_t> terminal(n, 0);
    for (VertexId v : terminals) {
        if (v >= n) throw Error(ErrorKind::BadVertexId, "terminal out of range");
        terminal[v] = 1;
    }
    std::vector<VertexId> leaves;
    for (VertexId v = 0; v < n; ++v)
        if (degree[v] <= 1 && !terminal[v]) leaves.push_back(v);
    while (!leaves.empty()) {
        VertexId v = leaves.back();
        leaves.pop_back();
        sub.member[v] = 0;
        if (degree[v] == 0) continue;
        VertexId u = neighbor_xor[v];
        neighbor_xor[u] ^= v;
        if (--degree[u] <= 1 && !terminal[u]) leaves.push_back(u);
    }
    for (VertexId v = 0; v < n; ++v) {
        if (!sub.member[v]) continue;
        ++sub.size;
        if (v != t.root && sub.member[t.parent[v]]) sub.edges.push_back(make_edge(v, t.parent[v]));
    }
    std::sort(sub.edges.begin(), sub.edges.end());
    return sub;
}

BranchSet branch_vertices(const SteinerSubtree& sub, std::span<const VertexId> terminals) {
    const std::size_t n = sub.member.size();
    std::vector<std::uint32_t> degree(n, 0);
    for (const Edge& e : sub.edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    BranchSet b;
    b.mask.assign(n, 0);
    for (VertexId v : terminals) b.mask[v] = 1;
    for (VertexId v = 0; v < n; ++v) {
        if (sub.member[v] && degree[v] >= 3) b.mask[v] = 1;
        if (b.mask[v]) b.members.push_back(v);
    }
    return b;
}

PathDecomposition decompose_paths(const SteinerSubtree& sub, const BranchSet& branch) {
    Graph tree = Graph::build(sub.member.size(), sub.edges);
    PathDecomposition out;
    std::vector<VertexId> path;
    for (VertexId u : branch.members)
        for (VertexId x : tree.neighbors(u)) {
            path.assign({u, x});
            VertexId prev = u, cur = x;
            while (!branch.mask[cur]) {
                auto nb = tree.neighbors(cur);
                VertexId next = nb[0] == prev ? nb[1] : nb[0];
                prev = std::exchange(cur, next);
                path.push_back(cur);
            }
            if (u < cur) out.paths.push_back(path);
        }
    return out;
}

CollapsedWeights collapse_weights(const Graph& g, const SpanningTree& t, const SteinerSubtree& sub) {
    const std::size_t n = g.num_vertices();
    CollapsedWeights cw;
    cw.wprime.assign(n, 0);
    cw.attach.assign(n, kNoVertex);
    VertexId top = kNoVertex;
    for (VertexId v : t.order)
        if (sub.member[v]) {
            cw.attach[v] = v;
            if (top == kNoVertex) top = v;
        }
    // Ancestors of the subtree's shallowest vertex drain into it.
    for (VertexId v = top; v != t.root;) {
        v = t.parent[v];
        cw.attach[v] = top;
    }
    for (VertexId v : t.order) {
        if (cw.attach[v] == kNoVertex) cw.attach[v] = cw.attach[t.parent[v]];
        cw.wprime[cw.attach[v]] += g.weight(v);
    }
    return cw;
}

CompressedGraph assemble_compressed(std::vector<VertexId> branch, std::vector<Weight> branch_weights,
                                    std::vector<CompressedGraph::PathNode> paths, const EdgeSet& extra) {
    CompressedGraph c;
    c.branch = std::move(branch);
    c.paths = std::move(paths);
    auto node = [&](VertexId v) {
        auto it = std::lower_bound(c.branch.begin(), c.branch.end(), v);
        if (it == c.branch.end() || *it != v)
            throw Error(ErrorKind::InvalidArgument, "edge endpoint outside the branch set");
        return static_cast<VertexId>(it - c.branch.begin());
    };
    const auto nb = static_cast<VertexId>(c.branch.size());
    std::vector<Weight> weights = std::move(branch_weights);
    weights.resize(c.branch.size() + c.paths.size(), 0);

    EdgeSet edges;
    for (VertexId k = 0; k < c.paths.size(); ++k) {
        const auto& pn = c.paths[k];
        weights[nb + k] = pn.weight();
        edges.push_back(make_edge(node(pn.first), nb + k));
        edges.push_back(make_edge(nb + k, node(pn.last)));
    }
    for (const Edge& e : extra) edges.push_back(make_edge(node(e.u), node(e.v)));
    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    c.parallel_edges = static_cast<std::size_t>(edges.end() - last);
    edges.erase(last, edges.end());
    const std::size_t nodes = weights.size();
    c.graph = Graph::build(nodes, edges, std::move(weights));
    return c;
}

CompressedGraph build_compressed_graph(const BranchSet& branch, const PathDecomposition& paths,
                                       const EdgeSet& extra, const CollapsedWeights& cw) {
    std::vector<Weight> weights;
    for (VertexId v : branch.members) weights.push_back(cw.wprime[v]);
    std::vector<CompressedGraph::PathNode> nodes;
    nodes.reserve(paths.paths.size());
    for (const auto& p : paths.paths) {
        CompressedGraph::PathNode pn;
        pn.first = p.front();
        pn.last = p.back();
        pn.interior.assign(p.begin() + 1, p.end() - 1);
        pn.prefix.assign(1, 0);
        for (VertexId v : pn.interior) pn.prefix.push_back(pn.prefix.back() + cw.wprime[v]);
        nodes.push_back(std::move(pn));
    }
    return assemble_compressed(branch.members, std::move(weights), std::move(nodes), extra);
}

std::size_t weighted_median_cut(const CompressedGraph::PathNode& path) {
    const Weight total = path.weight();
    std::size_t best = 0;
    Weight best_side = 0;
    for (std::size_t i = 0; i < path.interior.size(); ++i) {
        Weight side = std::max(path.prefix[i], total - path.prefix[i + 1]);
        if (i == 0 || side < best_side || (side == best_side && path.interior[i] < path.interior[best])) {
            best = i;
            best_side = side;
        }
    }
    return best;
}

std::vector<VertexId> lift_separator(std::span<const VertexId> compressed_sep, const CompressedGraph& c) {
    std::vector<VertexId> sorted(compressed_sep.begin(), compressed_sep.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<VertexId> out;
    for (VertexId node : sorted)
        if (!c.is_path_node(node)) out.push_back(c.branch[node]);
    auto lifted = [&](VertexId v) { return std::find(out.begin(), out.end(), v) != out.end(); };
    std::vector<VertexId> extra;
    for (VertexId node : sorted) {
        if (!c.is_path_node(node)) continue;
        const auto& p = c.paths[node - c.branch.size()];
        if (!p.interior.empty()) {
            extra.push_back(p.interior[weighted_median_cut(p)]);
        } else if (!lifted(p.first) || !lifted(p.last)) {
            // Cutting an edge means removing an endpoint: take one not already
            // chosen, lower ID first.
            VertexId lo = std::min(p.first, p.last), hi = std::max(p.first, p.last);
            extra.push_back(lifted(lo) ? hi : lo);
        }
    }
    out.insert(out.end(), extra.begin(), extra.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

VertexId tree_centroid(const Graph& g, std::span<const VertexId> vertices) {
    if (vertices.empty()) throw Error(ErrorKind::EmptyTree, "tree has no vertices");
    const std::size_t n = g.num_vertices();
    std::vector<std::uint8_t> member(n, 0);
    for (VertexId v : vertices) member[v] = 1;
    std::vector<VertexId> parent(n, kNoVertex), order;
    order.reserve(vertices.size());
    const VertexId root = vertices.front();
    parent[root] = root;
    order.push_back(root);
    for (std::size_t head = 0; head < order.size(); ++head)
        for (VertexId w : g.neighbors(order[head]))
            if (member[w] && parent[w] == kNoVertex) {
                parent[w] = order[head];
                order.push_back(w);
            }
    std::vector<Weight> sub(n, 0), heaviest_child(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        sub[v] += g.weight(v);
        if (v != root) {
            sub[parent[v]] += sub[v];
            heaviest_child[parent[v]] = std::max(heaviest_child[parent[v]], sub[v]);
        }
    }
    const Weight total = sub[root];
    VertexId best = kNoVertex;
    for (VertexId v : order) {
        Weight piece = std::max(heaviest_child[v], total - sub[v]);
        if (2 * static_cast<unsigned __int128>(piece) <= total && v < best) best = v;
    }
    return best;
}

std::size_t repair_cap(std::int64_t excess) {
    double r1 = static_cast<double>(std::max<std::int64_t>(excess, -1) + 1);
    return 2 + static_cast<std::size_t>(std::ceil(4.0 * std::sqrt(r1)));
}

Separator heavy_vertex_fixup(const Graph& g, std::span<const VertexId> separator, Ratio beta, std::size_t cap) {
    if (cap == 0) cap = repair_cap(g.excess());
    const std::size_t n = g.num_vertices();
    std::vector<std::uint8_t> removed(n, 0);
    for (VertexId v : separator) removed[v] = 1;

    Separator out;
    for (;;) {
        auto label = component_labels(g, removed);
        auto weights = component_weights(g, label);
        auto heaviest = std::max_element(weights.begin(), weights.end());
        Weight heavy = heaviest == weights.end() ? 0 : *heaviest;
        if (!beta.exceeded_by(heavy, g.total_weight())) {
            out.stats.max_component = heavy;
            break;
        }
        if (out.stats.repairs == cap)
            throw Error(ErrorKind::RepairCapExceeded,
                        "component still heavier than beta*W after " + std::to_string(cap) + " repairs");
        const auto target = static_cast<VertexId>(heaviest - weights.begin());
        std::vector<VertexId> comp;
        std::size_t twice_edges = 0;
        for (VertexId v = 0; v < n; ++v) {
            if (label[v] != target) continue;
            comp.push_back(v);
            for (VertexId w : g.neighbors(v)) twice_edges += removed[w] ? 0 : 1;
        }
        VertexId pick = twice_edges / 2 + 1 == comp.size() ? tree_centroid(g, comp) : best_cut_vertex(g, removed, comp);
        removed[pick] = 1;
        ++out.stats.repairs;
    }
    for (VertexId v = 0; v < n; ++v)
        if (removed[v]) out.vertices.push_back(v);
    out.stats.excess = g.excess();
    out.stats.size = out.vertices.size();
    out.stats.total = g.total_weight();
    return out;
}

// ── Full pipeline ───────────────────────────────────────────────────

namespace {

TraceStage make_stage(const std::string& name, std::size_t n, EdgeSet edges, std::vector<Weight> weights,
                      std::vector<VertexId> marked = {}) {
    TraceStage st;
    st.name = name;
    st.n = n;
    st.edges = std::move(edges);
    st.weights = std::move(weights);
    st.marked = std::move(marked);
    return st;
}

std::vector<Weight> weight_vector(const Graph& g) { return {g.weights().begin(), g.weights().end()}; }

// The same stages over vertices renumbered by BFS position. Parents then
// sit at smaller positions, so every pass after the BFS itself is a forward
// or backward sweep instead of a walk over randomly numbered vertices; on
// large graphs that is the difference between cache and DRAM latency.
struct BfsLayout {
    std::vector<VertexId> order;  // position -> vertex
    std::vector<VertexId> up;     // position -> parent position; up[0] == 0
    std::vector<Weight> weight;   // position -> vertex weight
    EdgeSet extra;                // non-tree edges, vertex IDs, sorted
};

// Identical traversal to bfs_tree. Visited vertices live in a bitmap small
// enough to stay cached. A neighbor already seen is a non-tree edge unless
// it is the parent; each is reported from its lower end.
BfsLayout bfs_layout(const Graph& g) {
    const std::size_t n = g.num_vertices();
    BfsLayout l;
    std::vector<std::uint64_t> seen((n + 63) / 64, 0);
    l.order.reserve(n);
    l.up.reserve(n);
    l.weight.reserve(n);
    l.order.push_back(0);
    l.up.push_back(0);
    seen[0] = 1;
    // Two-stage prefetch: the offset entry well ahead, the list it points
    // to closer in.
    constexpr std::size_t kOffsetAhead = 24, kListAhead = 8;
    for (std::size_t head = 0; head < l.order.size(); ++head) {
        const std::size_t queued = l.order.size();
        if (head + kOffsetAhead < queued) g.prefetch_offsets(l.order[head + kOffsetAhead]);
        if (head + kListAhead < queued) {
            const VertexId ahead = l.order[head + kListAhead];
            __builtin_prefetch(g.neighbors(ahead).data());
            __builtin_prefetch(&g.weights()[ahead]);
        }
        const VertexId v = l.order[head], parent = l.order[l.up[head]];
        l.weight.push_back(g.weight(v));
        for (VertexId w : g.neighbors(v)) {
            const std::uint64_t bit = std::uint64_t{1} << (w & 63);
            if (!(seen[w >> 6] & bit)) {
                seen[w >> 6] |= bit;
                l.order.push_back(w);
                l.up.push_back(static_cast<VertexId>(head));
            } else if (v < w && w != parent) {
                l.extra.push_back({v, w});
            }
        }
    }
    if (l.order.size() != n) throw Error(ErrorKind::Disconnected, "graph is not connected");
    std::sort(l.extra.begin(), l.extra.end());
    return l;
}

// Positions of a few vertices (sorted IDs) by one scan of the order.
std::vector<VertexId> locate(const BfsLayout& l, std::span<const VertexId> ids) {
    std::vector<std::uint64_t> wanted((l.order.size() + 63) / 64, 0);
    for (VertexId v : ids) wanted[v >> 6] |= std::uint64_t{1} << (v & 63);
    std::vector<VertexId> out(ids.size(), kNoVertex);
    for (std::size_t i = 0; i < l.order.size(); ++i) {
        const VertexId v = l.order[i];
        if (wanted[v >> 6] >> (v & 63) & 1)
            out[static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin())] =
                static_cast<VertexId>(i);
    }
    return out;
}

Separator separate_ordered(const Graph& g, const SeparateOptions& opts) {
    const std::size_t n = g.num_vertices();
    StageClock clock(opts.stage_times);

    clock.start();
    BfsLayout l = bfs_layout(g);
    std::vector<Weight>& acc = l.weight;
    clock.stop(Stage::SpanningTree);

    // Per-position flags; the low bits of the subtree child count share
    // the byte.
    enum : std::uint8_t { kTerminal = 1, kBranch = 2, kRemoved = 4, kKid = 8, kKids = 24 };
    clock.start();
    std::vector<VertexId> terminals;
    for (const Edge& e : l.extra) {
        terminals.push_back(e.u);
        terminals.push_back(e.v);
    }
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    const std::vector<VertexId> terminal_pos = locate(l, terminals);
    auto pos_of = [&](VertexId v) {
        return terminal_pos[static_cast<std::size_t>(std::lower_bound(terminals.begin(), terminals.end(), v) -
                                                     terminals.begin())];
    };
    std::vector<std::uint8_t> mark(n, 0);
    for (VertexId p : terminal_pos) mark[p] = kTerminal;
    clock.stop(Stage::ExtraEdges);

    // Terminals below each position; the subtree is every position with at
    // least one, minus the strict ancestors of the deepest position holding
    // all of them.
    clock.start();
    std::vector<std::uint32_t> below(mark.begin(), mark.end());
    for (std::size_t i = n - 1; i > 0; --i) below[l.up[i]] += below[i];
    const std::uint32_t all = below[0];
    std::size_t top = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (below[i] == all) top = i;
    auto member = [&](std::size_t i) { return below[i] > 0 && (below[i] < all || i == top); };
    clock.stop(Stage::SteinerSubtree);

    clock.start();
    for (std::size_t i = top + 1; i < n; ++i)
        if (member(i) && (mark[l.up[i]] & kKids) != kKids) mark[l.up[i]] += kKid;
    std::vector<VertexId> branch_pos;
    for (std::size_t i = top; i < n; ++i) {
        const std::size_t degree = (mark[i] & kKids) / kKid + (i != top ? 1 : 0);
        if (member(i) && ((mark[i] & kTerminal) || degree >= 3)) {
            mark[i] |= kBranch;
            branch_pos.push_back(static_cast<VertexId>(i));
        }
    }
    clock.stop(Stage::BranchSet);

    // In place: weight hanging off the subtree drains into its nearest
    // subtree ancestor, everything above `top` into `top`. A position off
    // the subtree is left holding its own subtree's weight.
    clock.start();
    Weight drain = 0;
    for (std::size_t i = n; i-- > 0;) {
        if (member(i)) continue;
        if (below[i] == all)
            drain += acc[i];
        else
            acc[l.up[i]] += acc[i];
    }
    acc[top] += drain;
    clock.stop(Stage::Collapse);

    // Every path climbs from a branch vertex to the next branch ancestor,
    // except the two halves meeting at a non-branch top.
    clock.start();
    std::vector<CompressedGraph::PathNode> paths;
    std::vector<VertexId> halves[2];
    std::size_t num_halves = 0;
    auto emit = [&](const std::vector<VertexId>& seq) {
        CompressedGraph::PathNode pn;
        const bool flip = l.order[seq.back()] < l.order[seq.front()];
        pn.first = l.order[flip ? seq.back() : seq.front()];
        pn.last = l.order[flip ? seq.front() : seq.back()];
        pn.prefix.assign(1, 0);
        for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
            const VertexId p = seq[flip ? seq.size() - 1 - k : k];
            pn.interior.push_back(l.order[p]);
            pn.prefix.push_back(pn.prefix.back() + acc[p]);
        }
        paths.push_back(std::move(pn));
    };
    std::vector<VertexId> seq;
    for (VertexId b : branch_pos) {
        if (b == top) continue;
        seq.assign(1, b);
        VertexId cur = l.up[b];
        while (!(mark[cur] & kBranch) && cur != top) {
            seq.push_back(cur);
            cur = l.up[cur];
        }
        seq.push_back(cur);
        if (mark[cur] & kBranch)
            emit(seq);
        else
            halves[num_halves++] = seq;
    }
    if (num_halves == 2) {
        halves[0].insert(halves[0].end(), halves[1].rbegin() + 1, halves[1].rend());
        emit(halves[0]);
    }
    auto second = [](const CompressedGraph::PathNode& p) { return p.interior.empty() ? p.last : p.interior.front(); };
    std::sort(paths.begin(), paths.end(), [&](const auto& a, const auto& b) {
        return std::pair(a.first, second(a)) < std::pair(b.first, second(b));
    });
    clock.stop(Stage::Paths);

    clock.start();
    std::vector<std::pair<VertexId, Weight>> bw;
    for (VertexId b : branch_pos) bw.push_back({l.order[b], acc[b]});
    std::sort(bw.begin(), bw.end());
    std::vector<VertexId> branch_ids;
    std::vector<Weight> branch_weights;
    for (const auto& [v, w] : bw) {
        branch_ids.push_back(v);
        branch_weights.push_back(w);
    }
    CompressedGraph compressed =
        assemble_compressed(std::move(branch_ids), std::move(branch_weights), std::move(paths), l.extra);
    clock.stop(Stage::Compress);

    clock.start();
    LtOptions lt_opts;
    lt_opts.beta = opts.beta;
    LTSeparator lt = lt_separator(compressed.graph, lt_opts);
    clock.stop(Stage::PlanarSeparator);

    clock.start();
    std::vector<VertexId> lifted = lift_separator(lt.vertices, compressed);
    clock.stop(Stage::Lift);

    // Components of G - S are tree fragments glued by non-tree edges. Every
    // lifted vertex lies on the subtree, so a fragment weighs the collapsed
    // weight of its subtree vertices plus, where it hangs below a removed
    // vertex, the whole hanging subtree. Only when a component is too heavy
    // does the general repair loop run.
    clock.start();
    bool top_removed = false;
    for (VertexId p : locate(l, lifted)) {
        mark[p] |= kRemoved;
        top_removed = top_removed || p == top;
    }
    auto removed = [&](std::size_t i) { return (mark[i] & kRemoved) != 0; };
    std::vector<std::uint32_t>& fragment = below;  // overwritten as membership is consumed
    std::vector<Weight> fragment_weight;
    for (std::size_t i = 0; i < n; ++i) {
        const bool on_subtree = member(i);
        if (removed(i)) {
            fragment[i] = kNoVertex;
            continue;
        }
        Weight share = 0;
        if (on_subtree)
            share = acc[i];
        else if (i == 0)
            share = top_removed ? drain : 0;
        else if (removed(l.up[i]))
            share = acc[i];
        if (i == 0 || removed(l.up[i])) {
            fragment[i] = static_cast<VertexId>(fragment_weight.size());
            fragment_weight.push_back(0);
        } else {
            fragment[i] = fragment[l.up[i]];
        }
        fragment_weight[fragment[i]] += share;
    }
    std::vector<VertexId> link(fragment_weight.size());
    std::iota(link.begin(), link.end(), VertexId{0});
    auto find = [&](VertexId x) {
        while (link[x] != x) x = link[x] = link[link[x]];
        return x;
    };
    for (const Edge& e : l.extra) {
        const VertexId a = fragment[pos_of(e.u)], b = fragment[pos_of(e.v)];
        if (a == kNoVertex || b == kNoVertex) continue;
        const VertexId ra = find(a), rb = find(b);
        if (ra == rb) continue;
        link[rb] = ra;
        fragment_weight[ra] += fragment_weight[rb];
    }
    Weight heavy = 0;
    for (VertexId f = 0; f < link.size(); ++f)
        if (link[f] == f) heavy = std::max(heavy, fragment_weight[f]);
    Separator out;
    if (!opts.beta.exceeded_by(heavy, g.total_weight())) {
        out.vertices = lifted;
        out.stats.max_component = heavy;
        out.stats.excess = g.excess();
        out.stats.size = out.vertices.size();
        out.stats.total = g.total_weight();
    } else {
        out = heavy_vertex_fixup(g, lifted, opts.beta);
    }
    clock.stop(Stage::Repair);
    out.stats.compressed_nodes = compressed.num_nodes();
    out.stats.compressed_separator = lt.vertices.size();
    out.stats.lifted_size = lifted.size();
    return out;
}

}  // namespace

Separator separate(const Graph& g, const SeparateOptions& opts) {
    const std::size_t n = g.num_vertices();
    if (n == 0 || g.total_weight() == 0) throw Error(ErrorKind::ZeroTotalWeight, "graph has no weight to separate");
    if (g.excess() >= 0 && !opts.trace && !opts.staged) return separate_ordered(g, opts);
    auto* trace = opts.trace;
    if (trace) trace->clear();
    StageClock clock(opts.stage_times);

    clock.start();
    SpanningTree t = compute_spanning_tree(g, 0);
    clock.stop(Stage::SpanningTree);

    if (g.excess() < 0) {
        std::vector<VertexId> all(n);
        std::iota(all.begin(), all.end(), VertexId{0});
        clock.start();
        VertexId c = tree_centroid(g, all);
        std::vector<VertexId> sep{c};
        Separator out = heavy_vertex_fixup(g, sep, opts.beta);
        clock.stop(Stage::Repair);
        if (trace) {
            trace->push_back(make_stage("input", n, g.edges(), weight_vector(g)));
            trace->push_back(make_stage("centroid", n, g.edges(), weight_vector(g), out.vertices));
        }
        return out;
    }

    clock.start();
    EdgeSet extra = extra_edges(g, t);
    std::vector<VertexId> terminals;
    terminals.reserve(2 * extra.size());
    for (const Edge& e : extra) {
        terminals.push_back(e.u);
        terminals.push_back(e.v);
    }
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    clock.stop(Stage::ExtraEdges);

    clock.start();
    SteinerSubtree sub = steiner_subtree(t, terminals);
    clock.stop(Stage::SteinerSubtree);

    clock.start();
    BranchSet branch = branch_vertices(sub, terminals);
    clock.stop(Stage::BranchSet);

    clock.start();
    PathDecomposition paths = decompose_paths(sub, branch);
    clock.stop(Stage::Paths);

    clock.start();
    CollapsedWeights cw = collapse_weights(g, t, sub);
    clock.stop(Stage::Collapse);

    clock.start();
    CompressedGraph compressed = build_compressed_graph(branch, paths, extra, cw);
    clock.stop(Stage::Compress);

    clock.start();
    LtOptions lt_opts;
    lt_opts.beta = opts.beta;
    LTSeparator lt = lt_separator(compressed.graph, lt_opts);
    clock.stop(Stage::PlanarSeparator);

    clock.start();
    std::vector<VertexId> lifted = lift_separator(lt.vertices, compressed);
    clock.stop(Stage::Lift);

    clock.start();
    Separator out = heavy_vertex_fixup(g, lifted, opts.beta);
    clock.stop(Stage::Repair);
    out.stats.compressed_nodes = compressed.num_nodes();
    out.stats.compressed_separator = lt.vertices.size();
    out.stats.lifted_size = lifted.size();

    if (trace) {
        trace->push_back(make_stage("spanning_tree", n, t.tree_edges(), weight_vector(g)));
        trace->push_back(make_stage("extra_edges", n, extra, weight_vector(g), terminals));
        trace->push_back(make_stage("steiner_subtree", n, sub.edges, cw.wprime));
        trace->push_back(make_stage("branch_set", n, sub.edges, cw.wprime, branch.members));
        EdgeSet path_edges;
        for (const auto& p : paths.paths)
            for (std::size_t i = 0; i + 1 < p.size(); ++i) path_edges.push_back(make_edge(p[i], p[i + 1]));
        trace->push_back(make_stage("paths", n, path_edges, cw.wprime, branch.members));

        // Compressed nodes keep original IDs for branch vertices; path node k
        // becomes vertex n + k.
        auto original = [&](VertexId node) {
            return compressed.is_path_node(node) ? static_cast<VertexId>(n + node - compressed.branch.size())
                                                 : compressed.branch[node];
        };
        const std::size_t cn = n + compressed.paths.size();
        std::vector<Weight> cweights(cn, 0);
        for (VertexId node = 0; node < compressed.num_nodes(); ++node)
            cweights[original(node)] = compressed.graph.weight(node);
        EdgeSet cedges;
        for (const Edge& e : compressed.graph.edges()) cedges.push_back(make_edge(original(e.u), original(e.v)));
        std::sort(cedges.begin(), cedges.end());
        std::vector<VertexId> csep;
        for (VertexId node : lt.vertices) csep.push_back(original(node));
        std::sort(csep.begin(), csep.end());
        trace->push_back(make_stage("compressed", cn, cedges, cweights));
        trace->push_back(make_stage("compressed_separator", cn, cedges, cweights, csep));

        std::vector<VertexId> repairs;
        std::set_difference(out.vertices.begin(), out.vertices.end(), lifted.begin(), lifted.end(),
                            std::back_inserter(repairs));
        trace->push_back(make_stage("repairs", n, g.edges(), weight_vector(g), repairs));
        trace->push_back(make_stage("final", n, g.edges(), weight_vector(g), out.vertices));
    }
    return out;
}

std::vector<TraceStage> dump_stages(const Graph& g, Ratio beta) {
    std::vector<TraceStage> trace;
    SeparateOptions opts;
    opts.beta = beta;
    opts.trace = &trace;
    separate(g, opts);
    return trace;
}

}  // namespace ats
