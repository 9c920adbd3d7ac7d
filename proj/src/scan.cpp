#include "hepfac/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <stdexcept>
#include <thread>

#include "hepfac/prefix.hpp"

namespace hepfac {

namespace {

// Hot loop shared by all scan entry points. Every terminal crossed reports a
// match (the matched slice names the pattern, which stays correct after the
// compression stages share nodes). Buckets exist only at depth-limit nodes of
// truncated tries; hitting one triggers full verification.
inline void walk(const Trie& trie, std::span<const uint8_t> text, uint64_t start,
                 std::vector<MatchResult>& out)
{
    uint32_t node = 0;
    uint64_t pos = start;
    const uint64_t limit = trie.depth_limit() ? *trie.depth_limit() : 0;
    while (pos < text.size()) {
        node = trie.transition(node, text[pos]);
        if (node == Trie::npos) return;
        ++pos;
        if (trie.terminal(node)) {
            auto len = uint32_t(pos - start);
            int id = trie.pattern_id(
                std::string_view(reinterpret_cast<const char*>(text.data() + start), len));
            if (id < 0) throw std::logic_error("terminal node spells no dictionary pattern");
            out.push_back({start, len, uint32_t(id)});
        }
        // Depth-limit nodes are childless; candidates verify against the
        // full patterns bucketed at the node.
        if (pos - start == limit) {
            if (const auto* bucket = trie.bucket(node)) {
                for (uint32_t id : *bucket) {
                    const std::string& p = trie.patterns()[id];
                    if (start + p.size() > text.size()) continue;
                    if (std::memcmp(text.data() + start, p.data(), p.size()) == 0)
                        out.push_back({start, uint32_t(p.size()), id});
                }
            }
            return;
        }
    }
}

} // namespace

void scan_from(const Trie& trie, std::span<const uint8_t> text, uint64_t start,
               std::vector<MatchResult>& out)
{
    if (start >= text.size()) throw std::invalid_argument("start beyond text end");
    walk(trie, text, start, out);
}

std::vector<MatchResult> scan_from(const Trie& trie, std::span<const uint8_t> text, uint64_t start)
{
    std::vector<MatchResult> out;
    scan_from(trie, text, start, out);
    return out;
}

std::vector<MatchResult> scan(const Trie& trie, std::span<const uint8_t> text,
                              const ScanConfig& config, ScanTiming* timing)
{
    if (config.workers < 1 || config.chunk < 1)
        throw std::invalid_argument("workers and chunk must be >= 1");
    using clock = std::chrono::steady_clock;

    const uint64_t n = text.size();
    const uint64_t chunk = config.chunk;
    const uint64_t units = n == 0 ? 0 : (n + chunk - 1) / chunk;
    std::vector<std::vector<MatchResult>> unit_results(units);

    auto t0 = clock::now();
    auto run_unit = [&](uint64_t u) {
        uint64_t lo = u * chunk;
        uint64_t hi = std::min(n, lo + chunk);
        auto& out = unit_results[u];
        for (uint64_t start = lo; start < hi; ++start) walk(trie, text, start, out);
    };

    unsigned workers = unsigned(std::min<uint64_t>(config.workers, std::max<uint64_t>(units, 1)));
    if (workers <= 1) {
        for (uint64_t u = 0; u < units; ++u) run_unit(u);
    } else {
        std::atomic<uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (uint64_t u = next.fetch_add(1); u < units; u = next.fetch_add(1)) run_unit(u);
            });
        for (auto& th : pool) th.join();
    }
    auto t1 = clock::now();

    // Merge in unit order, then canonical sort: output is independent of the
    // worker/chunk configuration.
    size_t total = 0;
    for (const auto& v : unit_results) total += v.size();
    std::vector<MatchResult> merged;
    merged.reserve(total);
    for (auto& v : unit_results) merged.insert(merged.end(), v.begin(), v.end());
    std::sort(merged.begin(), merged.end());
    auto t2 = clock::now();

    if (timing) {
        timing->scan_seconds = std::chrono::duration<double>(t1 - t0).count();
        timing->merge_seconds = std::chrono::duration<double>(t2 - t1).count();
    }
    return merged;
}

std::vector<MatchResult> scan_two_stage(const Trie& prefix_trie, std::span<const uint8_t> text,
                                        const ScanConfig& config, ScanTiming* timing)
{
    if (!prefix_trie.depth_limit())
        throw std::invalid_argument("two-stage scan requires a depth-truncated trie");
    if (prefix_trie.patterns().empty())
        throw std::invalid_argument("two-stage scan requires the pattern dictionary");
    return scan(prefix_trie, text, config, timing);
}

} // namespace hepfac
