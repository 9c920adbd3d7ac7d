#ifndef HEPFAC_TRIE_ACCESS_HPP
#define HEPFAC_TRIE_ACCESS_HPP

#include "hepfac/trie.hpp"

namespace hepfac::detail {

// Library-internal backdoor for deserialization and truncation, which
// construct tries from raw parts rather than through the assembler.
struct TrieAccess {
    static Trie make(Alphabet alphabet, uint32_t node_count, std::vector<uint32_t> cells,
                     std::vector<std::string> patterns, CompressionStage stage,
                     std::optional<uint32_t> depth_limit)
    {
        Trie t;
        t.alphabet_ = std::move(alphabet);
        t.words_ = (t.alphabet_.size() + 31) / 32;
        t.node_count_ = node_count;
        t.cells_ = std::move(cells);
        t.patterns_ = std::move(patterns);
        for (uint32_t i = 0; i < t.patterns_.size(); ++i) t.ids_.emplace(t.patterns_[i], i);
        for (const auto& p : t.patterns_) {
            auto len = static_cast<uint32_t>(p.size());
            if (t.min_len_ == 0 || len < t.min_len_) t.min_len_ = len;
            if (len > t.max_len_) t.max_len_ = len;
        }
        t.stage_ = stage;
        t.depth_limit_ = depth_limit;
        return t;
    }

    static void set_buckets(Trie& t, std::unordered_map<uint32_t, std::vector<uint32_t>> buckets)
    {
        t.buckets_ = std::move(buckets);
    }
};

} // namespace hepfac::detail

#endif
