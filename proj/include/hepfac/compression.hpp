#ifndef HEPFAC_COMPRESSION_HPP
#define HEPFAC_COMPRESSION_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "hepfac/trie.hpp"

namespace hepfac {

struct CompressionStats {
    uint64_t nodes_before = 0;
    uint64_t nodes_after_stage1 = 0;
    uint64_t nodes_after_stage2 = 0;
    uint64_t pattern_count = 0;
    // Size improvement relative to the reduced trie:
    //   100 * (nodes_before - nodes_after) / nodes_after
    double reduction_percent = 0;

    std::string to_json() const;
};

double reduction_percent(uint64_t before, uint64_t after);

// Stage 1: every childless terminal collapses into one shared terminal node.
// For prefix-free sets this satisfies Q_final = Q - (|P| - 1) exactly, with
// one carve-out the popcount addressing forces: two sibling slots can never
// alias the same array cell, so a parent with several childless-terminal
// children keeps private terminal cells for them. Terminal-with-children
// nodes (patterns that prefix other patterns) are left untouched.
// Rejects tries that are already compressed or truncated.
std::pair<Trie, CompressionStats> merge_final_nodes(const Trie& trie);

// Stage 2: merges identical pattern tails across the last three node levels
// before the shared terminal. For each pattern of length >= 4 the chain
// nodes spelling its last 1-, 2- and 3-symbol suffixes merge with any other
// pattern's chain nodes spelling the same suffix, provided every chain node
// is unary and non-terminal (deeper levels merge only if all shallower ones
// did). The result is a DAG spelling exactly the original pattern set.
// Requires stage-1 output.
std::pair<Trie, CompressionStats> merge_tail_chains(const Trie& trie);

// Stage 1 + stage 2 with combined stats.
std::pair<Trie, CompressionStats> compress(const Trie& trie);

// --- Average-reduction estimators -----------------------------------------

// Number of possible 2-symbol tail chains: r = sigma^2.
uint64_t expected_suffix_space(unsigned sigma);

enum class EstimateMethod { Formula, MonteCarlo };

struct ReductionEstimate {
    uint64_t r = 0;          // sigma^2
    uint64_t n = 0;          // pattern count
    double expected_length = 0.0;
    EstimateMethod method = EstimateMethod::Formula;
    uint64_t trials = 0;     // Monte-Carlo only
    double std_error = 0.0;  // Monte-Carlo only
};

// The printed average-reduction formula, evaluated verbatim with the
// double-bracketed binomials read as multiset coefficients ((a b)) =
// C(a+b-1, b):
//
//   L = sum_{i=1..min(r,n)} C(r,i) * ((n-i, i)) / ((n, r)) * 2i
//
// Binomials are computed in log-space; terms with invalid arguments
// contribute zero. This reading is reported alongside the Monte-Carlo
// oracle and is not itself an acceptance anchor (the estimator the paper
// prints does not match the empirical tail-chain count; see the oracle).
double expected_reduced_length_formula(unsigned sigma, uint64_t n);

// Independent estimator: per trial, draws n uniform 2-symbol suffixes over
// sigma, counts distinct suffixes g, and averages 2g. Mean matches the
// closed-form occupancy expectation 2r(1 - (1 - 1/r)^n).
ReductionEstimate expected_reduced_length_oracle(unsigned sigma, uint64_t n, uint64_t trials,
                                                 uint32_t seed);

} // namespace hepfac

#endif
