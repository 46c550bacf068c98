// gen.hpp - seeded generators for near-tree planar graphs and weights.
//
// Randomness comes from std::mt19937_64. Every generator stage draws from
// its own stream, seeded with splitmix64(seed ^ fnv1a64(stage name)), and
// bounded integers use rejection sampling rather than std distributions, so
// output is identical across standard libraries.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ats/graph.hpp"

namespace ats {

class Rng {
public:
    Rng(std::uint64_t seed, std::string_view stream);

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

struct WeightMode {
    enum class Kind { Unit, UniformRandom, SingleHeavy };
    Kind kind = Kind::Unit;
    Weight lo = 1, hi = 1;       // UniformRandom
    Ratio heavy{7, 10};          // SingleHeavy, strictly between 1/2 and 1

    static WeightMode unit() { return {}; }
    static WeightMode uniform_random(Weight lo, Weight hi) { return {Kind::UniformRandom, lo, hi, {}}; }
    static WeightMode single_heavy(Ratio f) { return {Kind::SingleHeavy, 1, 1, f}; }
};

struct GenSpec {
    std::size_t n = 1;
    std::int64_t r = 0;   // m = n + r
    std::uint64_t seed = 0;
    WeightMode weights;
};

/// Random recursive tree (vertex i attaches to a uniform earlier vertex),
/// then relabeled by a uniform permutation. Unit weights.
Graph random_tree(std::size_t n, std::uint64_t seed);

/// Random tree plus r + 1 extra edges, each accepted only if the graph stays
/// simple and planar. Throws Infeasible when n + r exceeds the planar edge
/// bound or 200 (r + 1) candidates were rejected.
Graph near_tree_planar(const GenSpec& spec);

/// a x b grid, vertex (i, j) has ID i * b + j.
Graph grid_graph(std::size_t a, std::size_t b);

/// Unit: all 1. UniformRandom: integers in [lo, hi]. SingleHeavy(f): all 1
/// except one random vertex, which gets the least weight exceeding f * W.
Graph assign_weights(const Graph& g, const WeightMode& mode, std::uint64_t seed);

/// Maximal planar graph: repeated insertion into a random face followed by
/// n random edge flips. Unit weights; n >= 3.
Graph random_triangulation(std::size_t n, std::uint64_t seed);

}  // namespace ats
