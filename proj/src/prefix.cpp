#include "hepfac/prefix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_set>

#include "hepfac/scan.hpp"
#include "trie_assembler.hpp"

namespace hepfac {

std::unordered_map<uint32_t, std::vector<uint32_t>>
build_verification_buckets(const Trie& trie, uint32_t depth)
{
    std::unordered_map<uint32_t, std::vector<uint32_t>> buckets;
    const auto& pats = trie.patterns();
    for (uint32_t id = 0; id < pats.size(); ++id) {
        const std::string& p = pats[id];
        if (p.size() <= depth) continue;
        uint32_t node = 0;
        for (uint32_t i = 0; i < depth; ++i) {
            node = trie.transition(node, uint8_t(p[i]));
            if (node == Trie::npos)
                throw std::logic_error("dictionary pattern not present in trie");
        }
        buckets[node].push_back(id);
    }
    return buckets;
}

TruncateResult truncate(const Trie& trie, uint32_t depth)
{
    if (depth == 0) throw std::invalid_argument("truncation depth must be >= 1");
    if (trie.stage() == CompressionStage::TailMerged)
        throw std::invalid_argument("cannot truncate a tail-merged trie");
    if (trie.depth_limit())
        throw std::invalid_argument("trie is already truncated");
    if (depth >= trie.max_pattern_length()) return {trie, true};

    auto graph = TrieAssembler::to_graph(trie);
    auto depths = node_depths(trie);
    for (uint32_t u = 0; u < graph.size(); ++u)
        if (depths[u] >= depth) graph[u].children.clear();

    auto buckets = build_verification_buckets(trie, depth);
    // Bucket keys refer to the old trie's indices, which equal graph ids.
    Trie out = TrieAssembler::emit(graph, 0, trie, trie.stage(), depth, &buckets);
    return {std::move(out), false};
}

uint32_t minimal_unique_prefix(const std::vector<std::string>& patterns)
{
    if (patterns.empty()) throw std::invalid_argument("empty pattern set");
    uint32_t max_len = 0;
    for (const auto& p : patterns) max_len = std::max<uint32_t>(max_len, uint32_t(p.size()));
    for (uint32_t d = 1; d <= max_len; ++d) {
        std::unordered_set<std::string_view> seen;
        bool distinct = true;
        for (const auto& p : patterns) {
            std::string_view pre(p.data(), std::min<size_t>(d, p.size()));
            if (!seen.insert(pre).second) {
                distinct = false;
                break;
            }
        }
        if (distinct) return d;
    }
    // Duplicate-free sets always separate at full length.
    throw std::invalid_argument("pattern set contains duplicates");
}

uint32_t fpr_safe_depth(const std::vector<std::string>& patterns, unsigned sigma,
                        double threshold)
{
    uint32_t max_len = 0;
    for (const auto& p : patterns) max_len = std::max<uint32_t>(max_len, uint32_t(p.size()));
    for (uint32_t d = 1; d < max_len; ++d) {
        double rate = 0;
        for (const auto& p : patterns)
            rate += std::pow(double(sigma), -double(std::min<size_t>(d, p.size())));
        if (rate <= threshold) return d;
    }
    return max_len;
}

uint32_t required_prefix_depth(const std::vector<std::string>& patterns, unsigned sigma,
                               double threshold)
{
    return std::max(minimal_unique_prefix(patterns), fpr_safe_depth(patterns, sigma, threshold));
}

uint32_t choose_depth(const PatternSet& set)
{
    uint32_t shortest = UINT32_MAX;
    for (const auto& p : set.patterns) shortest = std::min<uint32_t>(shortest, uint32_t(p.size()));
    uint32_t d = set.alphabet.size() > 52 ? 5 : minimal_unique_prefix(set.patterns);
    return std::max<uint32_t>(1, std::min(d, shortest));
}

std::vector<PrefixAnalysis> analyze_prefix_vs_alphabet(const std::vector<unsigned>& sigmas,
                                                       uint32_t pattern_count,
                                                       uint32_t pattern_length, uint32_t trials,
                                                       uint32_t seed)
{
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    std::vector<PrefixAnalysis> out;
    out.reserve(sigmas.size());
    for (size_t si = 0; si < sigmas.size(); ++si) {
        Alphabet a = Alphabet::standard(sigmas[si]);
        double sum = 0, sumsq = 0, unique_sum = 0;
        for (uint32_t t = 0; t < trials; ++t) {
            uint32_t sub_seed = seed + uint32_t(si) * 1000003u + t;
            PatternSet set = gen_patterns(sub_seed, a, pattern_count, pattern_length);
            double d = required_prefix_depth(set.patterns, a.size());
            sum += d;
            sumsq += d * d;
            unique_sum += minimal_unique_prefix(set.patterns);
        }
        PrefixAnalysis row;
        row.sigma = sigmas[si];
        row.pattern_count = pattern_count;
        row.trials = trials;
        row.mean_depth_over_trials = sum / trials;
        row.min_unique_depth = uint32_t(std::lround(unique_sum / trials));
        double var = trials > 1 ? (sumsq - sum * sum / trials) / (trials - 1) : 0.0;
        row.stderr_depth = std::sqrt(std::max(0.0, var) / trials);
        out.push_back(row);
    }
    return out;
}

std::string prefix_analysis_csv(const std::vector<PrefixAnalysis>& rows, uint32_t pattern_count,
                                uint32_t pattern_length, uint32_t seed)
{
    std::string csv;
    csv += "# prefix depth vs alphabet size\n";
    csv += "# patterns=" + std::to_string(pattern_count) +
           " length=" + std::to_string(pattern_length) + " seed=" + std::to_string(seed) + "\n";
    csv += "# mean_depth = required truncation depth averaged over random pattern sets:\n";
    csv += "#   max(minimal pairwise-unique prefix, depth with expected candidate rate <= 1e-6/byte)\n";
    csv += "sigma,mean_depth,trials,stderr,mean_unique_depth\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%u,%.4f,%u,%.5f,%u\n", r.sigma,
                      r.mean_depth_over_trials, r.trials, r.stderr_depth, r.min_unique_depth);
        csv += buf;
    }
    return csv;
}

double false_positive_rate(const PatternSet& set, uint32_t depth, std::span<const uint8_t> corpus)
{
    if (corpus.empty()) throw std::invalid_argument("empty corpus");
    Trie full = build_trie(set);
    auto [trunc, noop] = truncate(full, depth);
    if (noop) return 0.0; // every candidate is a full match
    uint64_t false_hits = 0;
    std::vector<MatchResult> verified;
    for (uint64_t start = 0; start < corpus.size(); ++start) {
        uint32_t node = 0;
        uint64_t pos = start;
        bool candidate = false;
        while (pos < corpus.size()) {
            node = trunc.transition(node, corpus[pos]);
            if (node == Trie::npos) break;
            ++pos;
            if (const auto* b = trunc.bucket(node)) {
                (void)b;
                candidate = true;
                break;
            }
        }
        if (!candidate) continue;
        verified.clear();
        for (uint32_t id : *trunc.bucket(node)) {
            const std::string& p = trunc.patterns()[id];
            if (start + p.size() <= corpus.size() &&
                std::memcmp(corpus.data() + start, p.data(), p.size()) == 0)
                verified.push_back({start, uint32_t(p.size()), id});
        }
        if (verified.empty()) ++false_hits;
    }
    return double(false_hits) / double(corpus.size());
}

std::vector<MatchResult> verify_candidate(std::span<const uint8_t> text, uint64_t start,
                                          const Trie& trie)
{
    if (!trie.depth_limit()) throw std::invalid_argument("trie is not truncated");
    std::vector<MatchResult> out;
    uint32_t node = 0;
    uint64_t pos = start;
    const uint32_t limit = *trie.depth_limit();
    while (pos < text.size() && pos - start < limit) {
        node = trie.transition(node, text[pos]);
        if (node == Trie::npos) return out;
        ++pos;
    }
    const auto* bucket = trie.bucket(node);
    if (!bucket) return out;
    for (uint32_t id : *bucket) {
        const std::string& p = trie.patterns()[id];
        if (start + p.size() > text.size()) continue;
        if (std::memcmp(text.data() + start, p.data(), p.size()) == 0)
            out.push_back({start, uint32_t(p.size()), id});
    }
    return out;
}

} // namespace hepfac
