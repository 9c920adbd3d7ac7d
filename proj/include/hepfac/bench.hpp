#ifndef HEPFAC_BENCH_HPP
#define HEPFAC_BENCH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hepfac/scan.hpp"
#include "hepfac/trie.hpp"

namespace hepfac {

struct ThroughputReport {
    uint64_t bytes = 0;
    double seconds = 0; // mean scan wall time (workers running, merge excluded)
    double merge_seconds = 0;
    double gbps = 0; // bytes * 8 / seconds / 1e9
    uint32_t workers = 0;
    uint32_t runs = 0;
    uint64_t matches = 0;
    std::vector<double> per_run_seconds;

    std::string to_json() const;
};

// Scans the corpus `runs` times (plus one untimed warm-up) and reports the
// mean. Build time is excluded; scan and merge phases are timed separately.
ThroughputReport run_throughput(const Trie& trie, std::span<const uint8_t> corpus,
                                const ScanConfig& config, uint32_t runs);

// Published per-node memory models of the rival schemes next to ours.
// GrAVity is modeled at 1024 B/node (256 children x 4 B state entries, which
// reproduces the reported 345 MB over 352,921 nodes). AC-CW's own automaton
// is smaller than the plain trie; its node count is modeled via the ratio
// implied by the reported totals (15.02 MiB at 10 B/node over a
// 1,703,023-node ruleset).
struct ComparisonReport {
    uint64_t node_count = 0;
    uint32_t sigma = 0;
    uint64_t ours_bytes = 0;
    uint64_t pfac_bytes = 0;    // 15 B per node
    uint64_t accw_bytes = 0;    // 10 B per AC-CW node, accw_node_count below
    uint64_t gravity_bytes = 0; // 1024 B per node
    uint64_t accw_node_count = 0;
    double ratio_pfac = 0;
    double ratio_accw = 0;
    double ratio_gravity = 0;

    std::string to_json() const;
};

inline constexpr uint32_t kPfacBytesPerNode = 15;
inline constexpr uint32_t kAccwBytesPerNode = 10;
inline constexpr uint32_t kGravityBytesPerNode = 1024;
inline constexpr double kAccwNodeRatio = 0.924812; // 15.02 MiB / 10 B over 1,703,023 nodes

ComparisonReport compare_footprint(uint64_t node_count, unsigned sigma);

// Figure-6/7 style grid: per (sigma, n) generates patterns + corpus, builds,
// compresses, truncates at the default depth policy, scans, and records
// throughput. Sub-seeds derive deterministically from (seed, sigma, n).
std::string run_scaling(const std::vector<unsigned>& sigmas,
                        const std::vector<uint64_t>& pattern_counts, uint32_t pattern_length,
                        uint64_t corpus_bytes, uint32_t seed, const ScanConfig& config,
                        uint32_t runs);

// Figure-4/5 style size table: per n, the byte totals of an array trie, a
// binary trie, the bitmapped trie and the bitmapped reduced trie. Formulas
// are documented in the CSV comment header.
std::string run_trie_size_curve(unsigned sigma, const std::vector<uint64_t>& pattern_counts,
                                uint32_t pattern_length, uint32_t seed);

// Figure-8 style comparison: single-worker vs multi-worker throughput over
// two corpus sizes.
std::string run_filesize_comparison(unsigned sigma, uint64_t pattern_count,
                                    uint32_t pattern_length,
                                    const std::vector<uint64_t>& corpus_sizes, uint32_t seed,
                                    uint32_t multi_workers, uint32_t runs);

// Deterministic sub-seed derivation used by the table runners.
uint32_t derive_seed(uint32_t seed, uint64_t a, uint64_t b);

} // namespace hepfac

#endif
