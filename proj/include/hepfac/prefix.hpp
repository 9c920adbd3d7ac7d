#ifndef HEPFAC_PREFIX_HPP
#define HEPFAC_PREFIX_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hepfac/corpus.hpp"
#include "hepfac/trie.hpp"

namespace hepfac {

struct MatchResult; // scan.hpp

struct PrefixConfig {
    uint32_t depth = 5;
    bool verify = true;
};

struct TruncateResult {
    Trie trie;
    bool was_noop = false; // depth >= max pattern length leaves the trie unchanged
};

// Removes every node deeper than `depth`; surviving depth-`depth` nodes that
// had descendants become verification candidates (their pending pattern ids
// live in per-node buckets). The dictionary is retained for stage-2
// verification. Accepts uncompressed or stage-1 tries; depth must be >= 1.
TruncateResult truncate(const Trie& trie, uint32_t depth);

// Pattern ids longer than `depth`, bucketed by the node their depth-prefix
// walk ends at. Used by truncate and by the deserializer.
std::unordered_map<uint32_t, std::vector<uint32_t>>
build_verification_buckets(const Trie& trie, uint32_t depth);

// Smallest d such that all length-d prefixes (whole patterns when shorter)
// are pairwise distinct. At least 1; a single pattern yields 1.
uint32_t minimal_unique_prefix(const std::vector<std::string>& patterns);

// Smallest d at which the expected false-candidate rate on uniform random
// data, sum over patterns of sigma^-min(d, len), drops to `threshold` per
// scanned byte (capped at the longest pattern length).
uint32_t fpr_safe_depth(const std::vector<std::string>& patterns, unsigned sigma,
                        double threshold = 1e-6);

// Truncation depth actually required for a set: prefixes must be pairwise
// unique AND candidate hits on uniform data must stay below `threshold` per
// byte (the false-positive budget prefix matching is built around).
uint32_t required_prefix_depth(const std::vector<std::string>& patterns, unsigned sigma,
                               double threshold = 1e-6);

// Default truncation policy: fixed depth 5 for alphabets over 52 symbols,
// otherwise the set's minimal unique prefix; always capped at the shortest
// pattern length.
uint32_t choose_depth(const PatternSet& set);

struct PrefixAnalysis {
    uint32_t sigma = 0;
    uint32_t pattern_count = 0;
    uint32_t min_unique_depth = 0;     // mean pairwise-unique depth, rounded
    double mean_depth_over_trials = 0; // mean required_prefix_depth
    double stderr_depth = 0;
    uint32_t trials = 0;
};

// Sweeps alphabet sizes: per sigma, generates `trials` random pattern sets
// and averages the required truncation depth. Sub-seeds derive from
// (seed, sigma, trial).
std::vector<PrefixAnalysis> analyze_prefix_vs_alphabet(const std::vector<unsigned>& sigmas,
                                                       uint32_t pattern_count,
                                                       uint32_t pattern_length, uint32_t trials,
                                                       uint32_t seed);

// CSV rendering of the analysis (sigma, mean_depth, trials + extras).
std::string prefix_analysis_csv(const std::vector<PrefixAnalysis>& rows,
                                uint32_t pattern_count, uint32_t pattern_length, uint32_t seed);

// Fraction of scanned bytes whose depth-`depth` candidate hit fails full
// verification. Patterns no longer than `depth` cannot produce false hits.
double false_positive_rate(const PatternSet& patterns, uint32_t depth,
                           std::span<const uint8_t> corpus);

// Second-stage verification for one candidate start: walks the truncated
// trie from `start` and byte-compares every bucketed pattern sharing the
// candidate prefix. Returns exact matches only.
std::vector<MatchResult> verify_candidate(std::span<const uint8_t> text, uint64_t start,
                                          const Trie& trie);

} // namespace hepfac

#endif
