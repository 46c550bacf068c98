#include "ats/edge_list.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ats {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
}

std::uint64_t to_u64(const std::string& tok, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) parse_fail(line, "expected integer, got '" + tok + "'");
    return value;
}

Weight scaled_weight(const std::string& tok, std::uint64_t scale, std::size_t line) {
    auto dot = tok.find('.');
    if (dot == std::string::npos) {
        using U = unsigned __int128;
        U v = U(to_u64(tok, line)) * scale;
        if (v > std::numeric_limits<Weight>::max()) parse_fail(line, "scaled weight overflows");
        return static_cast<Weight>(v);
    }
    std::string whole = tok.substr(0, dot);
    std::string frac = tok.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || frac.size() > 18) parse_fail(line, "bad decimal weight '" + tok + "'");
    std::uint64_t denom = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) denom *= 10;
    using U = unsigned __int128;
    U numer = U(to_u64(whole, line)) * denom + to_u64(frac, line);
    U scaled = numer * scale;
    if (scaled % denom != 0) parse_fail(line, "weight '" + tok + "' is not integral after scaling");
    scaled /= denom;
    if (scaled > std::numeric_limits<Weight>::max()) parse_fail(line, "scaled weight overflows");
    return static_cast<Weight>(scaled);
}

struct BlockParser {
    BlockParser(const ParseOptions& o, bool marks) : opts(o), allow_marks(marks) {}

    const ParseOptions& opts;
    bool allow_marks = false;

    bool have_header = false;
    std::size_t n = 0, m = 0;
    EdgeSet edges;
    std::vector<Weight> weights;
    std::vector<VertexId> marked;

    VertexId vertex(const std::string& tok, std::size_t line) const {
        std::uint64_t id = to_u64(tok, line);
        if (id < 1 || id > n) parse_fail(line, "vertex " + tok + " outside [1, " + std::to_string(n) + "]");
        return static_cast<VertexId>(id - 1);
    }

    // Returns false for lines it does not own.
    bool feed(const std::string& text, std::size_t line) {
        std::istringstream ls(text);
        std::string tag;
        if (!(ls >> tag) || tag[0] == 'c') return true;
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tag == "p") {
            if (have_header) parse_fail(line, "duplicate 'p' line");
            // Accept DIMACS-style "p edge n m" as well.
            if (tok.size() == 3) tok.erase(tok.begin());
            if (tok.size() != 2) parse_fail(line, "expected 'p <n> <m>'");
            n = to_u64(tok[0], line);
            m = to_u64(tok[1], line);
            weights.assign(n, 1);
            edges.reserve(m);
            have_header = true;
            return true;
        }
        if (!have_header) parse_fail(line, "expected 'p <n> <m>' before '" + tag + "'");
        if (tag == "e") {
            if (tok.size() != 2) parse_fail(line, "expected 'e <u> <v>'");
            edges.push_back({vertex(tok[0], line), vertex(tok[1], line)});
        } else if (tag == "w") {
            if (tok.size() != 2) parse_fail(line, "expected 'w <v> <weight>'");
            VertexId v = vertex(tok[0], line);
            weights[v] = opts.weight_scale ? scaled_weight(tok[1], *opts.weight_scale, line) : to_u64(tok[1], line);
        } else if (tag == "s" && allow_marks) {
            for (const auto& t : tok) marked.push_back(vertex(t, line));
        } else {
            return false;
        }
        return true;
    }

    void finish(std::size_t line) const {
        if (!have_header) parse_fail(line, "missing 'p <n> <m>' line");
        if (edges.size() != m)
            parse_fail(line, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    }
};

}  // namespace

Graph parse_edge_list(std::istream& in, const ParseOptions& opts) {
    BlockParser block(opts, false);
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!block.feed(text, line)) parse_fail(line, "unknown line '" + text + "'");
    }
    block.finish(line);
    try {
        return Graph::build(block.n, block.edges, std::move(block.weights));
    } catch (const Error& e) {
        throw Error(e.kind(), std::string("invalid graph: ") + e.what());
    }
}

Graph read_edge_list_file(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in || std::filesystem::is_directory(path)) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
    return parse_edge_list(in, opts);
}

void write_edge_list(std::ostream& out, const Graph& g, bool all_weights) {
    out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (all_weights || g.weight(v) != 1) out << "w " << v + 1 << ' ' << g.weight(v) << '\n';
}

std::vector<VertexId> parse_vertex_list(std::istream& in) {
    std::vector<VertexId> out;
    std::string tok;
    while (in >> tok) {
        std::uint64_t id = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || id == 0 || id > kNoVertex)
            throw Error(ErrorKind::Parse, "bad vertex id '" + tok + "'");
        out.push_back(static_cast<VertexId>(id - 1));
    }
    return out;
}

std::vector<VertexId> parse_vertex_list(const std::string& text) {
    std::istringstream in(text);
    return parse_vertex_list(in);
}

Ratio parse_ratio(const std::string& text) {
    auto slash = text.find('/');
    Ratio r{};
    try {
        if (slash != std::string::npos) {
            r.num = to_u64(text.substr(0, slash), 0);
            r.den = to_u64(text.substr(slash + 1), 0);
        } else {
            constexpr std::uint64_t kScale = 1'000'000'000;
            r.num = scaled_weight(text, kScale, 0);
            r.den = kScale;
        }
    } catch (const Error&) {
        throw Error(ErrorKind::InvalidArgument, "bad ratio '" + text + "'");
    }
    if (r.den == 0) throw Error(ErrorKind::InvalidArgument, "bad ratio '" + text + "'");
    std::uint64_t g = std::gcd(r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return r;
}

Weight TraceStage::total_weight() const { return std::accumulate(weights.begin(), weights.end(), Weight{0}); }

void write_trace(std::ostream& out, const std::vector<TraceStage>& stages) {
    for (const TraceStage& st : stages) {
        out << "stage " << st.name << '\n';
        out << "p " << st.n << ' ' << st.edges.size() << '\n';
        for (const Edge& e : st.edges) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
        for (VertexId v = 0; v < st.weights.size(); ++v) out << "w " << v + 1 << ' ' << st.weights[v] << '\n';
        for (VertexId v : st.marked) out << "s " << v + 1 << '\n';
    }
}

std::vector<TraceStage> parse_trace(std::istream& in) {
    std::vector<TraceStage> stages;
    ParseOptions opts;
    std::optional<BlockParser> block;
    std::string text;
    std::size_t line = 0;
    auto close = [&] {
        if (!block) return;
        block->finish(line);
        TraceStage& st = stages.back();
        st.n = block->n;
        st.edges = std::move(block->edges);
        st.weights = std::move(block->weights);
        st.marked = std::move(block->marked);
        block.reset();
    };
    while (std::getline(in, text)) {
        ++line;
        if (text.rfind("stage ", 0) == 0) {
            close();
            stages.push_back({});
            stages.back().name = text.substr(6);
            block.emplace(opts, true);
            continue;
        }
        if (!block) {
            if (text.empty() || text[0] == 'c') continue;
            parse_fail(line, "expected 'stage <name>'");
        }
        if (!block->feed(text, line)) parse_fail(line, "unknown line '" + text + "'");
    }
    close();
    return stages;
}

}  // namespace ats
