// ============================================================================
// clres/bench.hpp — reproducible random coalition-CNF benchmarks
// ============================================================================
//
// gen_formula() draws a conjunction of L clauses, each a disjunction of
// three coalition literals of modal degree D.  A degree-0 atom is a
// proposition chosen uniformly from p1..pN.  A degree-d atom (d > 0) is,
// with probability P, <A> applied to a random clause of degree d-1 with A
// drawn uniformly from all 2^A subsets of {1..A}; otherwise a degree-0
// atom.  Every literal is independently negated with probability 1/2.
//
// Reproducibility contract: the generator is a std::mt19937 (its output
// sequence is fully pinned by the standard) consumed in a fixed draw order
// — per literal: sign, then atom kind, then coalition bitmask (agent i+1 is
// in A iff bit i is set), then the subclause literals left to right, or the
// proposition index.  Integer draws use rejection sampling on raw 32-bit
// words, probability draws compare one word against round(p * 2^32), so
// suites are byte-identical across platforms for a given seed.
//
// gen_suite() writes problem_<i>.cl files plus a manifest into a directory
// named N-A-LLL-D (L zero-padded to three digits); each file's content
// depends only on (params, seed, index).
//
// ============================================================================

#ifndef CLRES_BENCH_HPP
#define CLRES_BENCH_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "clres/formula.hpp"

namespace clres {

struct BenchParams {
    unsigned n_props = 5;      // N >= 1
    unsigned n_agents = 2;     // A >= 1
    unsigned n_conjuncts = 5;  // L >= 1
    unsigned modal_degree = 1; // D >= 0
    double probability = 1.0;  // P in [0, 1]
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument

    // "5-2-009-1"
    std::string set_name() const;
};

// Portable uniform draw in [0, n) by rejection sampling.
std::uint32_t uniform_below(std::mt19937& rng, std::uint32_t n);

// True with probability p, consuming exactly one word.
bool bernoulli(std::mt19937& rng, double p);

Formula gen_formula(const BenchParams& params, std::mt19937& rng);

/// Convenience: formula number `index` of the suite (params, params.seed).
Formula gen_formula_indexed(const BenchParams& params, unsigned index);

/// Writes `count` formula files and a manifest under out_dir/set_name().
/// Returns the manifest path.
std::filesystem::path gen_suite(const BenchParams& params, unsigned count,
                                const std::filesystem::path& out_dir);

}  // namespace clres

#endif  // CLRES_BENCH_HPP
