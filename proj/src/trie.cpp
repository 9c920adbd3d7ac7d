#include "hepfac/trie.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "hepfac/corpus.hpp"
#include "trie_assembler.hpp"

namespace hepfac {

std::string format_mib(uint64_t bytes)
{
    // Truncate to one decimal: 13,624,184 B = 12.993 MiB renders as "12.9".
    uint64_t tenths = (bytes * 10) >> 20;
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

uint32_t bitmap_rank(std::span<const uint32_t> bitmap, unsigned symbol)
{
    if (symbol >= bitmap.size() * 32)
        throw std::out_of_range("symbol " + std::to_string(symbol) + " outside bitmap of " +
                                std::to_string(bitmap.size() * 32) + " bits");
    unsigned w = symbol >> 5, b = symbol & 31u;
    uint32_t rank = std::popcount(bitmap[w] & ((1u << b) - 1u));
    for (unsigned i = 0; i < w; ++i) rank += std::popcount(bitmap[i]);
    return rank;
}

MemoryReport Trie::memory_report() const
{
    MemoryReport r;
    r.node_count = node_count_;
    r.bytes_per_node = 4 * words_ + 4;
    r.total_bytes = r.node_count * r.bytes_per_node;
    r.sigma = alphabet_.size();
    return r;
}

Trie build_trie(const std::vector<std::string>& patterns, const Alphabet& alphabet)
{
    return build_trie(PatternSet::create(patterns, alphabet));
}

Trie build_trie(const PatternSet& set)
{
    if (set.patterns.empty()) throw std::invalid_argument("empty pattern set");
    for (const auto& p : set.patterns)
        if (p.size() > 65535) throw std::invalid_argument("pattern longer than 65535 bytes");

    std::vector<GraphNode> graph(1);
    for (const auto& p : set.patterns) {
        uint32_t node = 0;
        for (char ch : p) {
            int sym = set.alphabet.symbol_of(static_cast<uint8_t>(ch));
            // PatternSet::create already validated membership
            auto& ch_list = graph[node].children;
            auto it = std::lower_bound(ch_list.begin(), ch_list.end(),
                                       std::make_pair(unsigned(sym), uint32_t{0}),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
            if (it != ch_list.end() && it->first == unsigned(sym)) {
                node = it->second;
            } else {
                if (graph.size() > Trie::max_nodes) throw std::invalid_argument("trie too large");
                uint32_t fresh = static_cast<uint32_t>(graph.size());
                ch_list.insert(it, {unsigned(sym), fresh});
                graph.emplace_back();
                node = fresh;
            }
        }
        graph[node].terminal = true;
    }
    return TrieAssembler::emit_new(graph, 0, set.alphabet, set.patterns);
}

std::vector<uint32_t> node_depths(const Trie& trie)
{
    std::vector<uint32_t> depth(trie.node_count(), Trie::npos);
    std::deque<uint32_t> queue{0};
    depth[0] = 0;
    while (!queue.empty()) {
        uint32_t u = queue.front();
        queue.pop_front();
        uint32_t k = trie.child_count(u);
        uint32_t off = trie.offset(u);
        for (uint32_t i = 0; i < k; ++i) {
            uint32_t c = off + i;
            if (depth[c] == Trie::npos) {
                depth[c] = depth[u] + 1;
                queue.push_back(c);
            }
        }
    }
    return depth;
}

// ---------------------------------------------------------------------------
// TrieAssembler

std::vector<GraphNode> TrieAssembler::to_graph(const Trie& trie)
{
    std::vector<GraphNode> graph(trie.node_count());
    const unsigned sigma = trie.alphabet().size();
    for (uint32_t u = 0; u < trie.node_count(); ++u) {
        graph[u].terminal = trie.terminal(u);
        auto bm = trie.bitmap(u);
        uint32_t off = trie.offset(u);
        uint32_t rank = 0;
        for (unsigned s = 0; s < sigma; ++s) {
            if ((bm[s >> 5] >> (s & 31u)) & 1u)
                graph[u].children.emplace_back(s, off + rank++);
        }
    }
    return graph;
}

Trie TrieAssembler::emit(const std::vector<GraphNode>& graph, uint32_t root, const Trie& base,
                         CompressionStage stage, std::optional<uint32_t> depth_limit,
                         std::unordered_map<uint32_t, std::vector<uint32_t>>* graph_buckets)
{
    Trie t = assemble(graph, root, base.alphabet(), base.patterns(), stage, depth_limit,
                      graph_buckets);
    return t;
}

Trie TrieAssembler::emit_new(const std::vector<GraphNode>& graph, uint32_t root,
                             const Alphabet& alphabet, std::vector<std::string> patterns)
{
    return assemble(graph, root, alphabet, std::move(patterns), CompressionStage::None,
                    std::nullopt, nullptr);
}

Trie TrieAssembler::assemble(const std::vector<GraphNode>& graph, uint32_t root,
                             const Alphabet& alphabet, std::vector<std::string> patterns,
                             CompressionStage stage, std::optional<uint32_t> depth_limit,
                             std::unordered_map<uint32_t, std::vector<uint32_t>>* graph_buckets)
{
    constexpr uint32_t unplaced = Trie::npos;
    std::vector<uint32_t> index(graph.size(), unplaced); // graph id -> primary array index
    std::vector<uint32_t> slot_of;                       // array index -> graph id
    std::vector<uint8_t> is_copy;                        // array index -> copy flag
    std::vector<uint32_t> offsets;                       // array index -> child offset

    auto place = [&](uint32_t gid, bool copy) -> uint32_t {
        uint32_t idx = static_cast<uint32_t>(slot_of.size());
        if (idx >= Trie::max_nodes) throw std::length_error("trie exceeds 2^31-1 nodes");
        slot_of.push_back(gid);
        is_copy.push_back(copy ? 1 : 0);
        offsets.push_back(0);
        if (!copy) index[gid] = idx;
        return idx;
    };

    std::deque<uint32_t> queue; // array indices of primary slots pending child layout
    queue.push_back(place(root, false));
    while (!queue.empty()) {
        uint32_t slot = queue.front();
        queue.pop_front();
        const GraphNode& node = graph[slot_of[slot]];
        if (node.children.empty()) continue;
        if (node.children.size() == 1) {
            uint32_t c = node.children[0].second;
            if (index[c] == unplaced) queue.push_back(place(c, false));
            offsets[slot] = index[c];
        } else {
            // Multi-child runs must be consecutive; an already-placed shared
            // child gets a private shallow copy in its slot.
            uint32_t first = static_cast<uint32_t>(slot_of.size());
            for (const auto& [sym, c] : node.children) {
                (void)sym;
                if (index[c] == unplaced)
                    queue.push_back(place(c, false));
                else
                    place(c, true);
            }
            offsets[slot] = first;
        }
    }

    Trie t;
    t.alphabet_ = alphabet;
    t.words_ = (alphabet.size() + 31) / 32;
    t.node_count_ = static_cast<uint32_t>(slot_of.size());
    t.cells_.assign(size_t(t.node_count_) * t.stride(), 0);
    for (uint32_t idx = 0; idx < t.node_count_; ++idx) {
        uint32_t gid = slot_of[idx];
        uint32_t src = is_copy[idx] ? index[gid] : idx;
        const GraphNode& node = graph[gid];
        uint32_t* cell = t.cells_.data() + size_t(idx) * t.stride();
        for (const auto& [sym, c] : node.children) {
            (void)c;
            cell[sym >> 5] |= 1u << (sym & 31u);
        }
        cell[t.words_] = offsets[src] & Trie::offset_mask;
        if (node.terminal) cell[t.words_] |= Trie::terminal_bit;
    }

    t.patterns_ = std::move(patterns);
    for (uint32_t i = 0; i < t.patterns_.size(); ++i) t.ids_.emplace(t.patterns_[i], i);
    t.min_len_ = t.max_len_ = 0;
    for (const auto& p : t.patterns_) {
        auto len = static_cast<uint32_t>(p.size());
        if (t.min_len_ == 0 || len < t.min_len_) t.min_len_ = len;
        if (len > t.max_len_) t.max_len_ = len;
    }
    t.stage_ = stage;
    t.depth_limit_ = depth_limit;
    if (graph_buckets) {
        for (auto& [gid, ids] : *graph_buckets) {
            if (index[gid] == unplaced) continue;
            auto sorted = ids;
            std::sort(sorted.begin(), sorted.end());
            t.buckets_.emplace(index[gid], std::move(sorted));
        }
    }
    return t;
}

} // namespace hepfac
