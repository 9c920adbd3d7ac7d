#ifndef HEPFAC_SCAN_HPP
#define HEPFAC_SCAN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hepfac/trie.hpp"

namespace hepfac {

struct MatchResult {
    uint64_t start = 0;     // byte offset into the scanned text
    uint32_t length = 0;    // matched byte count
    uint32_t pattern_id = 0;

    friend bool operator==(const MatchResult&, const MatchResult&) = default;
    friend auto operator<=>(const MatchResult& a, const MatchResult& b)
    {
        if (a.start != b.start) return a.start <=> b.start;
        if (a.length != b.length) return a.length <=> b.length;
        return a.pattern_id <=> b.pattern_id;
    }
};

struct ScanConfig {
    uint32_t workers = 1;
    uint32_t chunk = 4096; // starting positions per work unit
};

struct ScanTiming {
    double scan_seconds = 0;  // workers walking the trie
    double merge_seconds = 0; // concatenating + sorting result buffers
};

// Failure-less walk from one starting position: follows transitions until a
// mismatch or text end, reporting a match at every terminal crossed. On a
// truncated trie, candidate hits at the depth limit are verified against the
// full patterns before being reported.
void scan_from(const Trie& trie, std::span<const uint8_t> text, uint64_t start,
               std::vector<MatchResult>& out);
std::vector<MatchResult> scan_from(const Trie& trie, std::span<const uint8_t> text,
                                   uint64_t start);

// Logical walk from every starting position, work units of `chunk`
// consecutive starts distributed over `workers`. Output is sorted by
// (start, length, pattern_id) and identical for any workers/chunk values;
// workers == 1 runs inline with no threads.
std::vector<MatchResult> scan(const Trie& trie, std::span<const uint8_t> text,
                              const ScanConfig& config, ScanTiming* timing = nullptr);

// Two-stage scan over a prefix-truncated trie; rejects tries without a depth
// limit or dictionary. Contract identical to scan on the full trie.
std::vector<MatchResult> scan_two_stage(const Trie& prefix_trie, std::span<const uint8_t> text,
                                        const ScanConfig& config, ScanTiming* timing = nullptr);

} // namespace hepfac

#endif
