#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ats/cli.hpp"
#include "ats/edge_list.hpp"
#include "ats/gen.hpp"
#include "fixtures.hpp"

using namespace ats;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("ats_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_graph(const std::string& name, const Graph& g) {
    fs::path p = scratch() / name;
    std::ofstream f(p);
    write_edge_list(f, g);
    return p.string();
}

std::string write_text(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream f(p);
    f << text;
    return p.string();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::vector<std::string> csv_column(const std::string& csv, std::size_t col) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string cell;
        for (std::size_t i = 0; i <= col; ++i) std::getline(ls, cell, ',');
        out.push_back(cell);
    }
    return out;
}

}  // namespace

TEST_CASE("separate on a tree prints its centroid") {
    Run r = cli({"separate", write_graph("path5.txt", fixtures::path(5))});
    CHECK(r.code == kExitOk);
    CHECK(first_line(r.out) == "3");
    CHECK(r.out.find("size=1") != std::string::npos);
}

TEST_CASE("separate on C6") {
    Run r = cli({"separate", write_graph("c6.txt", fixtures::cycle(6))});
    CHECK(r.code == kExitOk);
    std::vector<VertexId> ids = parse_vertex_list(first_line(r.out));
    CHECK(ids.size() >= 2);
    CHECK(r.out.find("max_frac=") != std::string::npos);
}

TEST_CASE("separate reports input errors with exit 1") {
    Run r = cli({"separate", write_text("disc.txt", "p 4 2\ne 1 2\ne 3 4\n")});
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("Disconnected") != std::string::npos);

    r = cli({"separate", write_text("bad.txt", "p 3 2\ne 1 2\ne 2 z\n")});
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("line 3") != std::string::npos);

    r = cli({"separate", (scratch() / "missing.txt").string()});
    CHECK(r.code == kExitInput);

    r = cli({"separate", write_graph("k5.txt", fixtures::complete(5))});
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("NotPlanar") != std::string::npos);

    CHECK(cli({}).code == kExitInput);
    CHECK(cli({"frobnicate"}).code == kExitInput);
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("separate writes a trace and stage times") {
    std::string trace = (scratch() / "theta.trace").string();
    Run r = cli({"separate", write_graph("theta.txt", fixtures::theta()), "--trace", trace, "--stage-times"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("time planar_separator ") != std::string::npos);
    std::ifstream f(trace);
    auto stages = parse_trace(f);
    CHECK(stages.size() == 9);
}

TEST_CASE("separate honors decimal weights with a scale") {
    std::string path = write_text("dec.txt", "p 3 2\ne 1 2\ne 2 3\nw 1 0.5\nw 2 0.25\nw 3 0.25\n");
    CHECK(cli({"separate", path}).code == kExitInput);
    Run r = cli({"separate", path, "--weight-scale", "100"});
    CHECK(r.code == kExitOk);
    CHECK(first_line(r.out) == "1");
}

TEST_CASE("verify") {
    std::string c6 = write_graph("c6v.txt", fixtures::cycle(6));
    Run r = cli({"verify", c6, "1 4"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "PASS max_frac=0.3333\n");

    r = cli({"verify", c6, write_text("sep.txt", "1\n")});
    CHECK(r.code == kExitVerify);
    CHECK(r.out == "FAIL max_frac=0.8333\n");

    CHECK(cli({"verify", c6, "1 9"}).code == kExitInput);
}

TEST_CASE("oracle") {
    Run r = cli({"oracle", write_graph("c6o.txt", fixtures::cycle(6))});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "2: 1 4\n");
    r = cli({"oracle", write_graph("grid33.txt", grid_graph(3, 3))});
    CHECK(r.out == "2: 2 4\n");
    CHECK(cli({"oracle", write_graph("p21.txt", fixtures::path(21))}).code == kExitInput);
}

TEST_CASE("lt") {
    Run r = cli({"lt", write_graph("k4.txt", fixtures::complete(4))});
    CHECK(r.code == kExitOk);
    CHECK(parse_vertex_list(first_line(r.out)).size() >= 2);
}

TEST_CASE("gen round-trips through the parser") {
    std::string out = (scratch() / "gen.txt").string();
    Run r = cli({"gen", "--n", "8", "--r", "1", "--seed", "7", "-o", out});
    CHECK(r.code == kExitOk);
    std::ifstream f(out);
    Graph g = parse_edge_list(f);
    CHECK(g.num_vertices() == 8);
    CHECK(g.num_edges() == 9);

    Run again = cli({"gen", "--n", "8", "--r", "1", "--seed", "7"});
    std::ifstream f2(out);
    std::stringstream file_text;
    file_text << f2.rdbuf();
    CHECK(again.out == file_text.str());

    CHECK(cli({"gen", "--kind", "grid", "--a", "3", "--b", "4"}).out.substr(0, 8) == "p 12 17\n");
    CHECK(cli({"gen", "--kind", "triangulation", "--n", "10"}).out.substr(0, 8) == "p 10 24\n");
    CHECK(cli({"gen", "--n", "20", "--r", "35"}).code == kExitInput);
    CHECK(cli({"gen", "--weights", "bogus"}).code == kExitInput);
    Run heavy = cli({"gen", "--n", "10", "--weights", "heavy:0.7"});
    CHECK(heavy.out.find("w ") != std::string::npos);
}

TEST_CASE("gen takes its default seed from ATS_SEED") {
    ::setenv("ATS_SEED", "7", 1);
    Run env = cli({"gen", "--n", "30", "--r", "2"});
    ::unsetenv("ATS_SEED");
    Run flag = cli({"gen", "--n", "30", "--r", "2", "--seed", "7"});
    Run zero = cli({"gen", "--n", "30", "--r", "2"});
    CHECK(env.out == flag.out);
    CHECK(env.out != zero.out);
}

TEST_CASE("bench") {
    Run one = cli({"bench", "--n", "500", "--r", "3", "--seeds", "1"});
    CHECK(one.code == kExitOk);
    CHECK(first_line(one.out) == "n,r,seed,sep_size,max_frac,repairs,wall_ns");
    CHECK(csv_column(one.out, 0).size() == 1);

    std::vector<std::string> args{"bench", "--n", "300,200", "--r", "4,1", "--seeds", "3", "--jobs", "2"};
    Run a = cli(args), b = cli(args);
    CHECK(a.code == kExitOk);
    CHECK(csv_column(a.out, 0).size() == 12);
    CHECK(csv_column(a.out, 3) == csv_column(b.out, 3));
    CHECK(csv_column(a.out, 0).front() == "200");
    CHECK(csv_column(a.out, 1).front() == "1");
    for (const std::string& f : csv_column(a.out, 4)) CHECK(std::stod(f) <= 2.0 / 3.0);

    Run skip = cli({"bench", "--n", "5,50", "--r", "20", "--seeds", "1"});
    CHECK(skip.code == kExitOk);
    CHECK(csv_column(skip.out, 0) == std::vector<std::string>{"50"});
    CHECK(skip.err.find("skip n=5") != std::string::npos);

    Run timed = cli({"bench", "--n", "200", "--r", "2", "--stage-times"});
    CHECK(first_line(timed.out).find(",ns_spanning_tree") != std::string::npos);
}

TEST_CASE("the installed binary runs") {
    std::string cmd = std::string(ATS_CLI_PATH) + " oracle " + write_graph("c6bin.txt", fixtures::cycle(6));
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[64] = {};
    std::string got = std::fgets(buf, sizeof buf, pipe) ? buf : "";
    CHECK(::pclose(pipe) == 0);
    CHECK(got == "2: 1 4\n");
}
