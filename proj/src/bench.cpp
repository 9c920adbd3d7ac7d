#include "hepfac/bench.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "hepfac/compression.hpp"
#include "hepfac/corpus.hpp"
#include "hepfac/prefix.hpp"

namespace hepfac {

uint32_t derive_seed(uint32_t seed, uint64_t a, uint64_t b)
{
    // splitmix64 finalizer over (seed, a, b)
    uint64_t x = (uint64_t(seed) << 32) ^ (a * 0x9E3779B97F4A7C15ull) ^ (b + 0xBF58476D1CE4E5B9ull);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return uint32_t(x);
}

std::string ThroughputReport::to_json() const
{
    std::string runs_json = "[";
    char buf[64];
    for (size_t i = 0; i < per_run_seconds.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.6f", i ? "," : "", per_run_seconds[i]);
        runs_json += buf;
    }
    runs_json += "]";
    std::string out = "{";
    std::snprintf(buf, sizeof buf, "\"bytes\":%llu,", (unsigned long long)bytes);
    out += buf;
    std::snprintf(buf, sizeof buf, "\"seconds\":%.6f,", seconds);
    out += buf;
    std::snprintf(buf, sizeof buf, "\"merge_seconds\":%.6f,", merge_seconds);
    out += buf;
    std::snprintf(buf, sizeof buf, "\"gbps\":%.4f,", gbps);
    out += buf;
    std::snprintf(buf, sizeof buf, "\"workers\":%u,\"runs\":%u,", workers, runs);
    out += buf;
    std::snprintf(buf, sizeof buf, "\"matches\":%llu,", (unsigned long long)matches);
    out += buf;
    out += "\"per_run_seconds\":" + runs_json + "}";
    return out;
}

ThroughputReport run_throughput(const Trie& trie, std::span<const uint8_t> corpus,
                                const ScanConfig& config, uint32_t runs)
{
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (corpus.empty()) throw std::invalid_argument("empty corpus");

    ThroughputReport rep;
    rep.bytes = corpus.size();
    rep.workers = config.workers;
    rep.runs = runs;

    ScanTiming timing;
    (void)scan(trie, corpus, config, &timing); // warm-up, untimed

    double sum_scan = 0, sum_merge = 0;
    for (uint32_t i = 0; i < runs; ++i) {
        auto matches = scan(trie, corpus, config, &timing);
        rep.matches = matches.size();
        rep.per_run_seconds.push_back(timing.scan_seconds);
        sum_scan += timing.scan_seconds;
        sum_merge += timing.merge_seconds;
    }
    rep.seconds = sum_scan / runs;
    rep.merge_seconds = sum_merge / runs;
    rep.gbps = double(rep.bytes) * 8.0 / rep.seconds / 1e9;
    return rep;
}

std::string ComparisonReport::to_json() const
{
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\"node_count\":%llu,\"sigma\":%u,"
                  "\"ours_bytes\":%llu,\"ours_mib\":\"%s\","
                  "\"pfac_bytes\":%llu,\"accw_bytes\":%llu,\"gravity_bytes\":%llu,"
                  "\"accw_node_count\":%llu,"
                  "\"ratio_pfac\":%.4f,\"ratio_accw\":%.4f,\"ratio_gravity\":%.4f}",
                  (unsigned long long)node_count, sigma, (unsigned long long)ours_bytes,
                  format_mib(ours_bytes).c_str(), (unsigned long long)pfac_bytes,
                  (unsigned long long)accw_bytes, (unsigned long long)gravity_bytes,
                  (unsigned long long)accw_node_count, ratio_pfac, ratio_accw, ratio_gravity);
    return buf;
}

ComparisonReport compare_footprint(uint64_t node_count, unsigned sigma)
{
    if (node_count < 1) throw std::invalid_argument("node_count must be >= 1");
    if (sigma < 2 || sigma > 256) throw std::invalid_argument("sigma must be in 2..256");
    ComparisonReport r;
    r.node_count = node_count;
    r.sigma = sigma;
    uint32_t bpn = 4 * ((sigma + 31) / 32) + 4;
    r.ours_bytes = node_count * bpn;
    r.pfac_bytes = node_count * kPfacBytesPerNode;
    r.accw_node_count = uint64_t(std::llround(double(node_count) * kAccwNodeRatio));
    r.accw_bytes = r.accw_node_count * kAccwBytesPerNode;
    r.gravity_bytes = node_count * kGravityBytesPerNode;
    r.ratio_pfac = double(r.pfac_bytes) / double(r.ours_bytes);
    r.ratio_accw = double(r.accw_bytes) / double(r.ours_bytes);
    r.ratio_gravity = double(r.gravity_bytes) / double(r.ours_bytes);
    return r;
}

namespace {

// Size models for the figure-4/5 table. The array trie spends a full
// sigma-wide child table per node over the same node set; the binary trie
// re-encodes each symbol in ceil(log2 sigma) bits and pays two 4-byte links
// per node of the binarized pattern trie.
uint64_t array_trie_bytes(uint64_t nodes, unsigned sigma)
{
    return nodes * uint64_t(4) * sigma;
}

uint64_t binary_trie_nodes(const PatternSet& set)
{
    unsigned bits = 1;
    while ((1u << bits) < set.alphabet.size()) ++bits;
    std::unordered_set<std::string> prefixes;
    std::string bitstr;
    for (const auto& p : set.patterns) {
        bitstr.clear();
        for (char ch : p) {
            unsigned sym = unsigned(set.alphabet.symbol_of(uint8_t(ch)));
            for (unsigned b = bits; b-- > 0;) bitstr.push_back(char('0' + ((sym >> b) & 1u)));
        }
        for (size_t d = 1; d <= bitstr.size(); ++d) prefixes.insert(bitstr.substr(0, d));
    }
    return 1 + prefixes.size();
}

} // namespace

std::string run_trie_size_curve(unsigned sigma, const std::vector<uint64_t>& pattern_counts,
                                uint32_t pattern_length, uint32_t seed)
{
    Alphabet alphabet = Alphabet::standard(sigma);
    std::string csv;
    csv += "# trie size vs pattern count, sigma=" + std::to_string(sigma) +
           " length=" + std::to_string(pattern_length) + " seed=" + std::to_string(seed) + "\n";
    csv += "# array_bytes   = node_count * 4*sigma  (full child table per node)\n";
    csv += "# binary_bytes  = binarized-trie node_count * 8  (two 4-byte links per node,\n";
    csv += "#                 patterns re-encoded in ceil(log2 sigma) bits per symbol)\n";
    csv += "# bitmap_bytes  = node_count * (4*ceil(sigma/32) + 4)\n";
    csv += "# reduced_bytes = same per-node cost over the two-stage-merged node count\n";
    csv += "# reduction_percent = 100 * (bitmap_nodes - reduced_nodes) / reduced_nodes\n";
    csv += "patterns,array_bytes,binary_bytes,bitmap_bytes,reduced_bytes,bitmap_nodes,"
           "reduced_nodes,reduction_percent\n";
    char buf[256];
    for (uint64_t n : pattern_counts) {
        PatternSet set = gen_patterns(derive_seed(seed, sigma, n), alphabet, n, pattern_length);
        Trie full = build_trie(set);
        auto [reduced, stats] = compress(full);
        MemoryReport full_mem = full.memory_report();
        MemoryReport red_mem = reduced.memory_report();
        std::snprintf(buf, sizeof buf, "%llu,%llu,%llu,%llu,%llu,%llu,%llu,%.4f\n",
                      (unsigned long long)n,
                      (unsigned long long)array_trie_bytes(full.node_count(), sigma),
                      (unsigned long long)(binary_trie_nodes(set) * 8),
                      (unsigned long long)full_mem.total_bytes,
                      (unsigned long long)red_mem.total_bytes,
                      (unsigned long long)full.node_count(),
                      (unsigned long long)reduced.node_count(), stats.reduction_percent);
        csv += buf;
    }
    return csv;
}

std::string run_scaling(const std::vector<unsigned>& sigmas,
                        const std::vector<uint64_t>& pattern_counts, uint32_t pattern_length,
                        uint64_t corpus_bytes, uint32_t seed, const ScanConfig& config,
                        uint32_t runs)
{
    std::string csv;
    csv += "# throughput scaling grid, length=" + std::to_string(pattern_length) +
           " corpus_bytes=" + std::to_string(corpus_bytes) + " seed=" + std::to_string(seed) +
           " workers=" + std::to_string(config.workers) + " runs=" + std::to_string(runs) + "\n";
    csv += "# per cell: patterns+corpus generated from a (seed,sigma,n)-derived sub-seed,\n";
    csv += "# trie built + two-stage compressed + truncated at the default depth policy\n";
    csv += "sigma,patterns,depth,trie_nodes,trie_bytes,matches,seconds,gbps\n";
    char buf[256];
    for (unsigned sigma : sigmas) {
        Alphabet alphabet = Alphabet::standard(sigma);
        for (uint64_t n : pattern_counts) {
            uint32_t sub = derive_seed(seed, sigma, n);
            PatternSet set = gen_patterns(sub, alphabet, n, pattern_length);
            auto corpus = gen_corpus(derive_seed(sub, 1, 0), alphabet, corpus_bytes);
            Trie full = build_trie(set);
            auto [stage1, s1] = merge_final_nodes(full);
            uint32_t depth = choose_depth(set);
            TruncateResult res = truncate(stage1, depth);
            const Trie& scan_trie = res.trie;
            MemoryReport mem = scan_trie.memory_report();
            ThroughputReport rep = run_throughput(scan_trie, corpus, config, runs);
            std::snprintf(buf, sizeof buf, "%u,%llu,%u,%llu,%llu,%llu,%.6f,%.4f\n", sigma,
                          (unsigned long long)n, depth, (unsigned long long)mem.node_count,
                          (unsigned long long)mem.total_bytes, (unsigned long long)rep.matches,
                          rep.seconds, rep.gbps);
            csv += buf;
        }
    }
    return csv;
}

std::string run_filesize_comparison(unsigned sigma, uint64_t pattern_count,
                                    uint32_t pattern_length,
                                    const std::vector<uint64_t>& corpus_sizes, uint32_t seed,
                                    uint32_t multi_workers, uint32_t runs)
{
    Alphabet alphabet = Alphabet::standard(sigma);
    PatternSet set = gen_patterns(seed, alphabet, pattern_count, pattern_length);
    Trie full = build_trie(set);
    auto [stage1, s1] = merge_final_nodes(full);
    uint32_t depth = choose_depth(set);
    auto [trie, noop] = truncate(stage1, depth);
    const Trie& scan_trie = noop ? stage1 : trie;

    std::string csv;
    csv += "# single vs multi worker throughput, sigma=" + std::to_string(sigma) +
           " patterns=" + std::to_string(pattern_count) + " depth=" + std::to_string(depth) +
           " seed=" + std::to_string(seed) + " runs=" + std::to_string(runs) + "\n";
    csv += "corpus_bytes,workers,seconds,gbps\n";
    char buf[128];
    for (uint64_t size : corpus_sizes) {
        auto corpus = gen_corpus(derive_seed(seed, size, 0), alphabet, size);
        for (uint32_t workers : {uint32_t{1}, multi_workers}) {
            ScanConfig cfg{workers, 4096};
            ThroughputReport rep = run_throughput(scan_trie, corpus, cfg, runs);
            std::snprintf(buf, sizeof buf, "%llu,%u,%.6f,%.4f\n", (unsigned long long)size,
                          workers, rep.seconds, rep.gbps);
            csv += buf;
        }
    }
    return csv;
}

} // namespace hepfac
