#include "ats/planar.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "ats/oracle.hpp"
#include "ats/pipeline.hpp"

namespace ats {

// ── RotationSystem ──────────────────────────────────────────────────

RotationSystem::RotationSystem(std::vector<std::vector<VertexId>> rotation, EdgeSet synthetic)
    : synthetic_(std::move(synthetic)) {
    const std::size_t n = rotation.size();
    offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + rotation[v].size();
    heads_.reserve(offsets_[n]);
    tails_.reserve(offsets_[n]);
    for (VertexId v = 0; v < n; ++v)
        for (VertexId w : rotation[v]) {
            if (w >= n || w == v) throw Error(ErrorKind::InvalidArgument, "rotation names a bad neighbor");
            heads_.push_back(w);
            tails_.push_back(v);
        }

    // Darts of each vertex sorted by head, for twin lookup.
    std::vector<std::size_t> by_head(heads_.size());
    std::iota(by_head.begin(), by_head.end(), std::size_t{0});
    for (std::size_t v = 0; v < n; ++v) {
        auto first = by_head.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
        auto last = by_head.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
        std::sort(first, last, [&](std::size_t a, std::size_t b) { return heads_[a] < heads_[b]; });
        if (std::adjacent_find(first, last, [&](std::size_t a, std::size_t b) {
                return heads_[a] == heads_[b];
            }) != last)
            throw Error(ErrorKind::DuplicateEdge, "rotation repeats a neighbor");
    }
    twins_.assign(heads_.size(), 0);
    for (std::size_t d = 0; d < heads_.size(); ++d) {
        VertexId u = tails_[d], v = heads_[d];
        auto first = by_head.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
        auto last = by_head.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
        auto it = std::lower_bound(first, last, u, [&](std::size_t a, VertexId key) { return heads_[a] < key; });
        if (it == last || heads_[*it] != u) throw Error(ErrorKind::InvalidArgument, "rotation is not symmetric");
        twins_[d] = *it;
    }

    constexpr std::size_t kUnset = ~std::size_t{0};
    face_of_.assign(heads_.size(), kUnset);
    for (std::size_t start = 0; start < heads_.size(); ++start) {
        if (face_of_[start] != kUnset) continue;
        std::vector<VertexId> face;
        std::size_t d = start;
        do {
            face_of_[d] = faces_.size();
            face.push_back(tails_[d]);
            d = next_in_face(d);
        } while (d != start);
        faces_.push_back(std::move(face));
    }
}

std::size_t RotationSystem::next_in_face(std::size_t d) const {
    std::size_t t = twins_[d];
    VertexId v = tails_[t];
    std::size_t deg = offsets_[v + 1] - offsets_[v];
    return offsets_[v] + (t - offsets_[v] + 1) % deg;
}

bool RotationSystem::satisfies_euler() const {
    if (num_edges() == 0) return num_vertices() == 1;
    auto chi = static_cast<std::int64_t>(num_vertices()) - static_cast<std::int64_t>(num_edges()) +
               static_cast<std::int64_t>(num_faces());
    return chi == 2;
}

std::size_t RotationSystem::max_face_degree() const {
    std::size_t best = 0;
    for (const auto& f : faces_) best = std::max(best, f.size());
    return best;
}

Graph RotationSystem::to_graph() const {
    EdgeSet edges;
    edges.reserve(num_edges());
    for (std::size_t d = 0; d < heads_.size(); ++d)
        if (tails_[d] < heads_[d]) edges.push_back({tails_[d], heads_[d]});
    return Graph::build(num_vertices(), edges);
}

// ── Embedding ───────────────────────────────────────────────────────

namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

BoostGraph to_boost(const Graph& g) {
    BoostGraph bg(g.num_vertices());
    int k = 0;
    for (const Edge& e : g.edges()) {
        auto [edge, added] = boost::add_edge(e.u, e.v, bg);
        (void)added;
        boost::put(boost::edge_index, bg, edge, k++);
    }
    return bg;
}

}  // namespace

bool is_planar(const Graph& g) {
    BoostGraph bg = to_boost(g);
    return boost::boyer_myrvold_planarity_test(bg);
}

RotationSystem planar_embed(const Graph& g) {
    if (g.num_vertices() == 0 || !is_connected(g)) throw Error(ErrorKind::Disconnected, "graph is not connected");
    BoostGraph bg = to_boost(g);
    std::vector<std::vector<BoostEdge>> embedding(g.num_vertices());
    bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg,
        boost::boyer_myrvold_params::embedding =
            boost::make_iterator_property_map(embedding.begin(), boost::get(boost::vertex_index, bg)));
    if (!planar) throw Error(ErrorKind::NotPlanar, "no planar embedding exists");

    std::vector<std::vector<VertexId>> rotation(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        rotation[v].reserve(embedding[v].size());
        for (const BoostEdge& e : embedding[v]) {
            auto s = static_cast<VertexId>(boost::source(e, bg));
            auto t = static_cast<VertexId>(boost::target(e, bg));
            rotation[v].push_back(s == v ? t : s);
        }
    }
    RotationSystem emb(std::move(rotation));
    if (!emb.satisfies_euler()) throw std::logic_error("planar embedding violates Euler's formula");
    return emb;
}

// ── Triangulation ───────────────────────────────────────────────────

namespace {

// Mutable dart structure: rotation order kept as a circular linked list.
class DartMesh {
public:
    explicit DartMesh(const RotationSystem& emb) : first_(emb.num_vertices()) {
        const std::size_t darts = 2 * emb.num_edges();
        head_.resize(darts);
        succ_.resize(darts);
        for (VertexId v = 0; v < emb.num_vertices(); ++v) {
            std::size_t base = emb.first_dart(v);
            std::size_t deg = emb.rotation(v).size();
            first_[v] = static_cast<std::uint32_t>(base);
            for (std::size_t i = 0; i < deg; ++i) {
                head_[base + i] = emb.head(base + i);
                succ_[base + i] = static_cast<std::uint32_t>(base + (i + 1) % deg);
                index_.emplace(key(v, emb.head(base + i)), static_cast<std::uint32_t>(base + i));
            }
        }
    }

    bool has_edge(VertexId a, VertexId b) const { return index_.count(key(a, b)) != 0; }

    // Adds chord a-c inside the face whose corner at `a` is entered from
    // `a_from` and whose corner at `c` is entered from `c_from`.
    void add_chord(VertexId a, VertexId a_from, VertexId c, VertexId c_from) {
        insert_after(a, a_from, c);
        insert_after(c, c_from, a);
        synthetic_.push_back(make_edge(a, c));
    }

    RotationSystem finish() {
        std::vector<std::vector<VertexId>> rotation(first_.size());
        for (VertexId v = 0; v < first_.size(); ++v) {
            std::uint32_t d = first_[v];
            do {
                rotation[v].push_back(head_[d]);
                d = succ_[d];
            } while (d != first_[v]);
        }
        std::sort(synthetic_.begin(), synthetic_.end());
        return RotationSystem(std::move(rotation), std::move(synthetic_));
    }

private:
    static std::uint64_t key(VertexId a, VertexId b) { return (std::uint64_t{a} << 32) | b; }

    void insert_after(VertexId v, VertexId after, VertexId target) {
        std::uint32_t prev = index_.at(key(v, after));
        auto d = static_cast<std::uint32_t>(head_.size());
        head_.push_back(target);
        succ_.push_back(succ_[prev]);
        succ_[prev] = d;
        index_.emplace(key(v, target), d);
    }

    std::vector<std::uint32_t> first_;
    std::vector<VertexId> head_;
    std::vector<std::uint32_t> succ_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
    EdgeSet synthetic_;
};

// Splits `face` by one chord between non-consecutive corners. Returns false
// when no chord keeps the graph simple.
bool split_face(DartMesh& mesh, const std::vector<VertexId>& face, std::vector<std::vector<VertexId>>& work) {
    const std::size_t k = face.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 2; j < k; ++j) {
            if (i == 0 && j == k - 1) continue;
            VertexId a = face[i], c = face[j];
            if (a == c || mesh.has_edge(a, c)) continue;
            mesh.add_chord(a, face[(i + k - 1) % k], c, face[j - 1]);
            std::vector<VertexId> one{a};
            for (std::size_t t = j; t != i; t = (t + 1) % k) one.push_back(face[t]);
            std::vector<VertexId> other{c};
            for (std::size_t t = i; t != j; t = (t + 1) % k) other.push_back(face[t]);
            work.push_back(std::move(one));
            work.push_back(std::move(other));
            return true;
        }
    return false;
}

void clip_face(DartMesh& mesh, const std::vector<VertexId>& face, std::vector<std::vector<VertexId>>& work) {
    const std::size_t k = face.size();
    std::vector<std::size_t> nxt(k), prv(k);
    for (std::size_t i = 0; i < k; ++i) {
        nxt[i] = (i + 1) % k;
        prv[i] = (i + k - 1) % k;
    }
    std::size_t size = k, cur = 0, fails = 0;
    while (size > 3) {
        std::size_t b = nxt[cur], c = nxt[b];
        VertexId va = face[cur], vc = face[c];
        if (va != vc && !mesh.has_edge(va, vc)) {
            mesh.add_chord(va, face[prv[cur]], vc, face[b]);
            nxt[cur] = c;
            prv[c] = cur;
            --size;
            fails = 0;
            cur = c;
            continue;
        }
        cur = nxt[cur];
        if (++fails > size) {
            std::vector<VertexId> rest;
            std::size_t t = cur;
            for (std::size_t i = 0; i < size; ++i, t = nxt[t]) rest.push_back(face[t]);
            if (!split_face(mesh, rest, work)) throw std::logic_error("face cannot be triangulated simply");
            return;
        }
    }
}

}  // namespace

RotationSystem triangulate(const RotationSystem& emb) {
    if (emb.num_vertices() < 3) throw Error(ErrorKind::TooSmall, "triangulation needs at least 3 vertices");
    if (!is_connected(emb.to_graph())) throw Error(ErrorKind::Disconnected, "embedding is not connected");
    DartMesh mesh(emb);
    std::vector<std::vector<VertexId>> work;
    for (const auto& f : emb.faces())
        if (f.size() > 3) work.push_back(f);
    while (!work.empty()) {
        std::vector<VertexId> face = std::move(work.back());
        work.pop_back();
        if (face.size() > 3) clip_face(mesh, face, work);
    }
    RotationSystem out = mesh.finish();
    if (out.max_face_degree() != 3 || !out.satisfies_euler())
        throw std::logic_error("triangulation produced a non-triangular face");
    return out;
}

// ── BFS levels ──────────────────────────────────────────────────────

Levels bfs_levels(const Graph& g, VertexId root) {
    SpanningTree t = bfs_tree(g, root);
    Levels lv;
    lv.level.assign(g.num_vertices(), 0);
    for (VertexId v : t.order) {
        if (v != root) lv.level[v] = lv.level[t.parent[v]] + 1;
        std::uint32_t l = lv.level[v];
        if (l >= lv.size.size()) {
            lv.size.resize(l + 1, 0);
            lv.weight.resize(l + 1, 0);
        }
        ++lv.size[l];
        lv.weight[l] += g.weight(v);
    }
    return lv;
}

// ── Fundamental cycle ───────────────────────────────────────────────

FundamentalCycle fundamental_cycle_separator(const RotationSystem& emb, const SpanningTree& tree,
                                             std::span<const Weight> weights, Ratio beta, Weight reference) {
    const std::size_t n = emb.num_vertices();
    if (tree.size() != n || weights.size() != n)
        throw Error(ErrorKind::InvalidArgument, "tree and weights must cover the embedding");
    const Weight total = std::accumulate(weights.begin(), weights.end(), Weight{0});
    if (reference == 0) reference = total;
    if (n < 3 || emb.max_face_degree() != 3) throw Error(ErrorKind::InvalidArgument, "embedding is not triangulated");

    std::vector<std::uint32_t> depth(n, 0);
    for (VertexId v : tree.order)
        if (v != tree.root) depth[v] = depth[tree.parent[v]] + 1;

    // Non-tree edges, in ascending ID order, with the dart on each side.
    struct Cross {
        Edge edge;
        std::size_t dart;
    };
    std::vector<Cross> cross;
    for (std::size_t d = 0; d < 2 * emb.num_edges(); ++d) {
        VertexId u = emb.tail(d), v = emb.head(d);
        if (u < v && !tree.contains_edge(u, v)) cross.push_back({{u, v}, d});
    }
    std::sort(cross.begin(), cross.end(), [](const Cross& a, const Cross& b) { return a.edge < b.edge; });

    // The duals of the non-tree edges span the faces.
    const std::size_t faces = emb.num_faces();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> dual(faces);
    for (std::size_t i = 0; i < cross.size(); ++i) {
        std::size_t f1 = emb.face_of(cross[i].dart), f2 = emb.face_of(emb.twin(cross[i].dart));
        dual[f1].push_back({f2, i});
        dual[f2].push_back({f1, i});
    }
    constexpr std::size_t kUnset = ~std::size_t{0};
    std::vector<std::size_t> parent_edge(faces, kUnset), tin(faces, kUnset), tout(faces, 0), pre;
    pre.reserve(faces);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    tin[0] = 0;
    pre.push_back(0);
    while (!stack.empty()) {
        auto& [f, it] = stack.back();
        if (it == dual[f].size()) {
            tout[f] = pre.size();
            stack.pop_back();
            continue;
        }
        auto [g, e] = dual[f][it++];
        if (tin[g] != kUnset) continue;
        tin[g] = pre.size();
        pre.push_back(g);
        parent_edge[g] = e;
        stack.push_back({g, 0});
    }
    if (pre.size() != faces) throw std::logic_error("non-tree edges do not span the dual");

    // Each vertex charges its weight to the face left of its first dart.
    std::vector<Weight> sub(faces, 0);
    std::vector<std::size_t> home(n);
    for (VertexId v = 0; v < n; ++v) {
        home[v] = emb.face_of(emb.first_dart(v));
        sub[home[v]] += weights[v];
    }
    for (std::size_t i = faces; i-- > 1;) {
        std::size_t f = pre[i];
        const Cross& c = cross[parent_edge[f]];
        std::size_t f1 = emb.face_of(c.dart), f2 = emb.face_of(emb.twin(c.dart));
        sub[f1 == f ? f2 : f1] += sub[f];
    }

    FundamentalCycle best;
    bool have = false;
    Weight best_heavier = 0;
    std::vector<VertexId> path_u, path_v;
    for (std::size_t i = 0; i < cross.size(); ++i) {
        const Cross& c = cross[i];
        std::size_t f1 = emb.face_of(c.dart), f2 = emb.face_of(emb.twin(c.dart));
        std::size_t child = parent_edge[f1] == i ? f1 : f2;

        path_u.clear();
        path_v.clear();
        VertexId a = c.edge.u, b = c.edge.v;
        while (depth[a] > depth[b]) path_u.push_back(std::exchange(a, tree.parent[a]));
        while (depth[b] > depth[a]) path_v.push_back(std::exchange(b, tree.parent[b]));
        while (a != b) {
            path_u.push_back(std::exchange(a, tree.parent[a]));
            path_v.push_back(std::exchange(b, tree.parent[b]));
        }
        path_u.push_back(a);
        const std::size_t len = path_u.size() + path_v.size();
        if (have && best.balanced && len >= best.vertices.size()) continue;

        Weight on_cycle = 0, charged_inside = 0;
        auto account = [&](VertexId x) {
            on_cycle += weights[x];
            if (tin[home[x]] >= tin[child] && tin[home[x]] < tout[child]) charged_inside += weights[x];
        };
        for (VertexId x : path_u) account(x);
        for (VertexId x : path_v) account(x);
        Weight inside = sub[child] - charged_inside;
        Weight outside = total - inside - on_cycle;
        bool balanced = !beta.exceeded_by(inside, reference) && !beta.exceeded_by(outside, reference);
        Weight heavier = std::max(inside, outside);

        bool take = !have || (balanced && (!best.balanced || len < best.vertices.size())) ||
                    (!balanced && !best.balanced && heavier < best_heavier);
        if (!take) continue;
        have = true;
        best_heavier = heavier;
        best.vertices = path_u;
        best.vertices.insert(best.vertices.end(), path_v.rbegin(), path_v.rend());
        best.edge = c.edge;
        best.inside = inside;
        best.outside = outside;
        best.balanced = balanced;
    }
    return best;
}

// ── Lipton-Tarjan ───────────────────────────────────────────────────

namespace {

bool is_balanced(const Graph& g, const std::vector<std::uint8_t>& removed, Ratio beta) {
    auto label = component_labels(g, removed);
    std::vector<Weight> comp;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (label[v] == kNoVertex) continue;
        if (label[v] >= comp.size()) comp.resize(label[v] + 1, 0);
        comp[label[v]] += g.weight(v);
    }
    return std::none_of(comp.begin(), comp.end(),
                        [&](Weight w) { return beta.exceeded_by(w, g.total_weight()); });
}

}  // namespace

LTSeparator lt_separator(const Graph& g, const LtOptions& opts) {
    const std::size_t n = g.num_vertices();
    const Weight total = g.total_weight();
    if (n == 0 || total == 0) throw Error(ErrorKind::ZeroTotalWeight, "graph has no weight to separate");
    if (!is_connected(g)) throw Error(ErrorKind::Disconnected, "graph is not connected");
    if (!is_planar(g)) throw Error(ErrorKind::NotPlanar, "graph is not planar");
    const Ratio beta = opts.beta;

    LTSeparator out;
    if (opts.small_exact && n <= 18) {
        OracleResult exact = min_balanced_separator(g, beta, n);
        out.vertices = exact.witness;
        return out;
    }

    if (g.num_edges() + 1 == n) {
        // Trees need no level structure: the weighted centroid suffices.
        std::vector<VertexId> all(n);
        std::iota(all.begin(), all.end(), VertexId{0});
        out.vertices = {tree_centroid(g, all)};
        return out;
    }

    const VertexId root = 0;
    Levels lv = bfs_levels(g, root);
    const auto levels = static_cast<std::int64_t>(lv.size.size());
    out.num_levels = lv.size.size();
    auto level_size = [&](std::int64_t l) -> std::int64_t {
        return l < 0 || l >= levels ? 0 : static_cast<std::int64_t>(lv.size[static_cast<std::size_t>(l)]);
    };

    // Median level: everything strictly above weighs at most W/2.
    std::int64_t l1 = 0;
    for (Weight cum = 0; l1 < levels; ++l1) {
        cum += lv.weight[static_cast<std::size_t>(l1)];
        if (2 * static_cast<unsigned __int128>(cum) > total) break;
    }
    std::int64_t l0 = -1, best0 = level_size(-1) + 2 * (l1 + 1);
    for (std::int64_t l = 0; l <= l1; ++l) {
        std::int64_t cost = level_size(l) + 2 * (l1 - l);
        if (cost < best0) best0 = cost, l0 = l;
    }
    std::int64_t l2 = l1 + 1, best2 = level_size(l1 + 1);
    for (std::int64_t l = l1 + 2; l <= levels; ++l) {
        std::int64_t cost = level_size(l) + 2 * (l - l1 - 1);
        if (cost < best2) best2 = cost, l2 = l;
    }
    out.median_level = l1;
    out.low_level = l0;
    out.high_level = l2;

    std::vector<std::uint8_t> in_sep(n, 0);
    Weight middle = 0;
    for (VertexId v = 0; v < n; ++v) {
        auto l = static_cast<std::int64_t>(lv.level[v]);
        if (l == l0 || l == l2) in_sep[v] = 1;
        if (l > l0 && l < l2) middle += g.weight(v);
    }

    if (beta.exceeded_by(middle, total)) {
        // Band graph: levels strictly between l0 and l2, with levels <= l0
        // contracted into one zero-weight vertex placed last.
        std::vector<VertexId> local(n, kNoVertex), band;
        for (VertexId v = 0; v < n; ++v) {
            auto l = static_cast<std::int64_t>(lv.level[v]);
            if (l > l0 && l < l2) {
                local[v] = static_cast<VertexId>(band.size());
                band.push_back(v);
            }
        }
        const bool contracted = l0 >= 0;
        const auto hub = static_cast<VertexId>(band.size());
        const std::size_t band_n = band.size() + (contracted ? 1 : 0);
        EdgeSet edges;
        std::vector<Weight> weights(band_n, 0);
        for (VertexId i = 0; i < band.size(); ++i) {
            VertexId v = band[i];
            weights[i] = g.weight(v);
            for (VertexId w : g.neighbors(v))
                if (local[w] != kNoVertex && v < w) edges.push_back({i, local[w]});
            if (contracted && static_cast<std::int64_t>(lv.level[v]) == l0 + 1) edges.push_back({i, hub});
        }
        Graph band_graph = Graph::build(band_n, edges, std::move(weights));
        out.used_cycle = true;
        if (band_n < 3) {
            for (VertexId v : band) in_sep[v] = 1;
            out.cycle = band;
        } else {
            RotationSystem tri = triangulate(planar_embed(band_graph));
            SpanningTree tree = bfs_tree(band_graph, contracted ? hub : local[root]);
            FundamentalCycle fc =
                fundamental_cycle_separator(tri, tree, band_graph.weights(), beta, total);
            for (VertexId x : fc.vertices)
                if (!contracted || x != hub) {
                    in_sep[band[x]] = 1;
                    out.cycle.push_back(band[x]);
                }
        }
    }

    if (opts.prune) {
        for (VertexId v = 0; v < n; ++v) {
            if (!in_sep[v]) continue;
            in_sep[v] = 0;
            if (is_balanced(g, in_sep, beta))
                ++out.pruned;
            else
                in_sep[v] = 1;
        }
    }
    for (VertexId v = 0; v < n; ++v)
        if (in_sep[v]) out.vertices.push_back(v);
    if (!is_balanced(g, in_sep, beta)) throw std::logic_error("lt_separator produced an unbalanced separator");
    return out;
}

}  // namespace ats
