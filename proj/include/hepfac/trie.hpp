#ifndef HEPFAC_TRIE_HPP
#define HEPFAC_TRIE_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hepfac/alphabet.hpp"

namespace hepfac {

// Per-node footprint of the bitmap storage model: ceil(sigma/32) 32-bit bitmap
// words plus one 32-bit offset word whose MSB carries the terminal flag.
struct MemoryReport {
    uint64_t node_count = 0;
    uint32_t bytes_per_node = 0;
    uint64_t total_bytes = 0;
    uint32_t sigma = 0;
};

// Binary megabytes, truncated (not rounded) to one decimal: 12.993 -> "12.9".
std::string format_mib(uint64_t bytes);

enum class CompressionStage : uint8_t {
    None = 0,       // plain breadth-first tree
    FinalMerged = 1, // childless terminals share one node
    TailMerged = 2,  // identical unary tail chains merged (DAG)
};

// Number of set bits at positions strictly below `symbol`.
// Throws std::out_of_range when symbol >= 32 * bitmap.size().
uint32_t bitmap_rank(std::span<const uint32_t> bitmap, unsigned symbol);

struct PatternSet; // corpus.hpp

namespace detail {
struct TrieAccess;
}

// Contiguous array of bitmap+offset nodes over a fixed alphabet, plus the
// pattern dictionary. Node 0 is the root. Immutable once built; all queries
// are read-only and safe to share across threads.
//
// Cell layout: node i occupies stride() consecutive uint32 cells, the first
// words_per_bitmap() of which are bitmap words (bit b set <=> child for
// symbol b exists), followed by the offset word. Children of a node sit in
// consecutive slots starting at the offset, ordered by ascending symbol, so
// the transition target is offset + popcount(bitmap below symbol).
class Trie {
public:
    static constexpr uint32_t npos = 0xFFFFFFFFu;
    static constexpr uint32_t offset_mask = 0x7FFFFFFFu;
    static constexpr uint32_t terminal_bit = 0x80000000u;
    static constexpr uint32_t max_nodes = 0x7FFFFFFFu; // terminal flag steals one bit

    uint32_t node_count() const { return node_count_; }
    const Alphabet& alphabet() const { return alphabet_; }
    unsigned words_per_bitmap() const { return words_; }
    unsigned stride() const { return words_ + 1; }

    // Transition per the popcount storage model; npos when the byte has no
    // edge (including bytes outside the alphabet).
    uint32_t transition(uint32_t node, uint8_t byte) const
    {
        int sym = alphabet_.symbol_of(byte);
        if (sym < 0) return npos;
        const uint32_t* c = cell(node);
        unsigned w = static_cast<unsigned>(sym) >> 5;
        unsigned b = static_cast<unsigned>(sym) & 31u;
        if (!((c[w] >> b) & 1u)) return npos;
        uint32_t rank = std::popcount(c[w] & ((1u << b) - 1u));
        for (unsigned i = 0; i < w; ++i) rank += std::popcount(c[i]);
        return (c[words_] & offset_mask) + rank;
    }

    bool terminal(uint32_t node) const { return (cell(node)[words_] & terminal_bit) != 0; }
    uint32_t offset(uint32_t node) const { return cell(node)[words_] & offset_mask; }
    std::span<const uint32_t> bitmap(uint32_t node) const { return {cell(node), words_}; }

    bool has_children(uint32_t node) const
    {
        const uint32_t* c = cell(node);
        for (unsigned i = 0; i < words_; ++i)
            if (c[i]) return true;
        return false;
    }

    uint32_t child_count(uint32_t node) const
    {
        const uint32_t* c = cell(node);
        uint32_t n = 0;
        for (unsigned i = 0; i < words_; ++i) n += std::popcount(c[i]);
        return n;
    }

    // Dictionary. Pattern ids follow build input order.
    const std::vector<std::string>& patterns() const { return patterns_; }
    int pattern_id(std::string_view s) const
    {
        auto it = ids_.find(s);
        return it == ids_.end() ? -1 : static_cast<int>(it->second);
    }
    uint32_t min_pattern_length() const { return min_len_; }
    uint32_t max_pattern_length() const { return max_len_; }

    CompressionStage stage() const { return stage_; }
    std::optional<uint32_t> depth_limit() const { return depth_limit_; }

    // Pattern ids requiring full verification at a depth-limit node; nullptr
    // when the node has none. Only truncated tries carry buckets.
    const std::vector<uint32_t>* bucket(uint32_t node) const
    {
        auto it = buckets_.find(node);
        return it == buckets_.end() ? nullptr : &it->second;
    }

    MemoryReport memory_report() const;

    const std::vector<uint32_t>& cells() const { return cells_; }

private:
    const uint32_t* cell(uint32_t node) const { return cells_.data() + size_t(node) * stride(); }

    friend class TrieAssembler;
    friend struct detail::TrieAccess;

    struct StringHash {
        using is_transparent = void;
        size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };

    Alphabet alphabet_ = Alphabet::standard(2);
    unsigned words_ = 1;
    uint32_t node_count_ = 0;
    std::vector<uint32_t> cells_;
    std::vector<std::string> patterns_;
    std::unordered_map<std::string, uint32_t, StringHash, std::equal_to<>> ids_;
    uint32_t min_len_ = 0, max_len_ = 0;
    CompressionStage stage_ = CompressionStage::None;
    std::optional<uint32_t> depth_limit_;
    std::unordered_map<uint32_t, std::vector<uint32_t>> buckets_;
};

// Builds the breadth-first bitmap trie. Patterns keep their input order as
// dictionary ids; insertion order is sorted by symbol index so layout is
// alphabet-stable. Throws std::invalid_argument on an empty set, an empty or
// over-long (>65535) pattern, a duplicate, or a byte outside the alphabet
// (the diagnostic names the byte).
Trie build_trie(const PatternSet& patterns);
Trie build_trie(const std::vector<std::string>& patterns, const Alphabet& alphabet);

// Per-node breadth-first depth (root = 0). For DAGs this is first-reach depth.
std::vector<uint32_t> node_depths(const Trie& trie);

} // namespace hepfac

#endif
