#ifndef HEPFAC_TESTS_NAIVE_SEARCH_HPP
#define HEPFAC_TESTS_NAIVE_SEARCH_HPP

#include <algorithm>
#include <cstring>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hepfac/scan.hpp"

// Brute-force oracle: tests every pattern at every offset. Independent of the
// trie path entirely.
inline std::vector<hepfac::MatchResult> naive_find_all(std::span<const uint8_t> text,
                                                       const std::vector<std::string>& patterns)
{
    std::vector<hepfac::MatchResult> out;
    for (uint64_t start = 0; start < text.size(); ++start) {
        for (uint32_t id = 0; id < patterns.size(); ++id) {
            const std::string& p = patterns[id];
            if (start + p.size() > text.size()) continue;
            if (std::memcmp(text.data() + start, p.data(), p.size()) == 0)
                out.push_back({start, uint32_t(p.size()), id});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Pointer-style trie oracle with explicit child maps, for exhaustive
// transition checks against the bitmap representation.
struct NaiveTrie {
    struct Node {
        std::map<uint8_t, int> children;
        bool terminal = false;
    };
    std::vector<Node> nodes;

    explicit NaiveTrie(const std::vector<std::string>& patterns) : nodes(1)
    {
        for (const auto& p : patterns) {
            int cur = 0;
            for (char ch : p) {
                auto b = static_cast<uint8_t>(ch);
                auto it = nodes[cur].children.find(b);
                if (it == nodes[cur].children.end()) {
                    nodes.emplace_back();
                    it = nodes[cur].children.emplace(b, int(nodes.size()) - 1).first;
                }
                cur = it->second;
            }
            nodes[cur].terminal = true;
        }
    }
};

// Count of distinct nonempty prefixes + 1, the node-count oracle.
inline size_t prefix_count_oracle(const std::vector<std::string>& patterns, size_t max_depth = 0)
{
    std::set<std::string> prefixes;
    for (const auto& p : patterns) {
        size_t hi = max_depth ? std::min(max_depth, p.size()) : p.size();
        for (size_t d = 1; d <= hi; ++d) prefixes.insert(p.substr(0, d));
    }
    return prefixes.size() + 1;
}

// Test-local random pattern sets / texts (std::mt19937_64; unrelated to the
// library's corpus generator).
struct InstanceRng {
    std::mt19937_64 rng;
    explicit InstanceRng(uint64_t seed) : rng(seed) {}

    std::string pattern(const hepfac::Alphabet& a, size_t len)
    {
        std::string p(len, '\0');
        for (auto& ch : p) ch = char(a.byte_of(uint32_t(rng() % a.size())));
        return p;
    }

    std::vector<std::string> pattern_set(const hepfac::Alphabet& a, size_t count, size_t min_len,
                                         size_t max_len)
    {
        std::set<std::string> seen;
        while (seen.size() < count) {
            size_t len = min_len + rng() % (max_len - min_len + 1);
            seen.insert(pattern(a, len));
        }
        return {seen.begin(), seen.end()};
    }

    std::vector<uint8_t> text(const hepfac::Alphabet& a, size_t len)
    {
        std::vector<uint8_t> t(len);
        for (auto& b : t) b = a.byte_of(uint32_t(rng() % a.size()));
        return t;
    }

    void plant(std::vector<uint8_t>& text, const std::string& p, size_t at)
    {
        if (at + p.size() <= text.size()) std::memcpy(text.data() + at, p.data(), p.size());
    }
};

#endif
