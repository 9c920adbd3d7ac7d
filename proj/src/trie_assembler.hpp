#ifndef HEPFAC_TRIE_ASSEMBLER_HPP
#define HEPFAC_TRIE_ASSEMBLER_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hepfac/trie.hpp"

namespace hepfac {

// Mutable adjacency form used while building or rewriting a trie. Children
// are kept sorted by symbol. Node ids here are graph-local; the assembler
// assigns final array indices at emission time.
struct GraphNode {
    std::vector<std::pair<unsigned, uint32_t>> children; // (symbol, node) ascending
    bool terminal = false;
};

class TrieAssembler {
public:
    // Expands a trie's cell array back into adjacency form. Shared nodes in a
    // DAG appear once (ids equal array indices).
    static std::vector<GraphNode> to_graph(const Trie& trie);

    // Emits a graph as a contiguous cell array in breadth-first first-reference
    // order and returns the finished trie. Children of a multi-child node must
    // occupy consecutive slots; a shared node that would land mid-run is
    // shallow-copied (one private cell, subtree still shared) so the popcount
    // addressing stays valid. Dictionary and metadata are copied from `base`.
    static Trie emit(const std::vector<GraphNode>& graph, uint32_t root, const Trie& base,
                     CompressionStage stage,
                     std::optional<uint32_t> depth_limit = std::nullopt,
                     std::unordered_map<uint32_t, std::vector<uint32_t>>* graph_buckets = nullptr);

    // Fresh trie straight from patterns (used by build_trie).
    static Trie emit_new(const std::vector<GraphNode>& graph, uint32_t root,
                         const Alphabet& alphabet, std::vector<std::string> patterns);

private:
    static Trie assemble(const std::vector<GraphNode>& graph, uint32_t root,
                         const Alphabet& alphabet, std::vector<std::string> patterns,
                         CompressionStage stage, std::optional<uint32_t> depth_limit,
                         std::unordered_map<uint32_t, std::vector<uint32_t>>* graph_buckets);
};

} // namespace hepfac

#endif
