#include "hepfac.h"

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <thread>

#include "hepfac/bench.hpp"
#include "hepfac/compression.hpp"
#include "hepfac/corpus.hpp"
#include "hepfac/prefix.hpp"
#include "hepfac/scan.hpp"
#include "hepfac/trie.hpp"
#include "hepfac/trie_io.hpp"

using namespace hepfac;

struct hepfac_alphabet {
    Alphabet impl;
};
struct hepfac_patterns {
    PatternSet impl;
};
struct hepfac_trie {
    Trie impl;
};
struct hepfac_match_list {
    std::vector<MatchResult> impl;
};

namespace {

thread_local std::string g_last_error;

hepfac_status_t classify(const std::exception& e)
{
    g_last_error = e.what();
    if (dynamic_cast<const std::bad_alloc*>(&e)) return HEPFAC_ERR_NOMEM;
    if (g_last_error.find("duplicate") != std::string::npos) return HEPFAC_ERR_DUPLICATE;
    if (g_last_error.find("not in alphabet") != std::string::npos) return HEPFAC_ERR_BAD_BYTE;
    if (g_last_error.find("already compressed") != std::string::npos ||
        g_last_error.find("already truncated") != std::string::npos ||
        g_last_error.find("requires stage-1") != std::string::npos ||
        g_last_error.find("tail-merged") != std::string::npos ||
        g_last_error.find("not truncated") != std::string::npos)
        return HEPFAC_ERR_STATE;
    if (g_last_error.find("cannot open") != std::string::npos ||
        g_last_error.find("read failed") != std::string::npos ||
        g_last_error.find("write failed") != std::string::npos)
        return HEPFAC_ERR_IO;
    if (g_last_error.find("trie file") != std::string::npos ||
        g_last_error.find("magic") != std::string::npos ||
        g_last_error.find("format version") != std::string::npos ||
        g_last_error.find("mismatch") != std::string::npos)
        return HEPFAC_ERR_FORMAT;
    if (dynamic_cast<const std::invalid_argument*>(&e) ||
        dynamic_cast<const std::out_of_range*>(&e))
        return HEPFAC_ERR_INVALID_ARG;
    return HEPFAC_ERR_INTERNAL;
}

template <typename Fn>
hepfac_status_t guarded(Fn&& fn)
{
    try {
        fn();
        return HEPFAC_OK;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        g_last_error = "unknown error";
        return HEPFAC_ERR_INTERNAL;
    }
}

hepfac_status_t require(bool cond, const char* msg)
{
    if (cond) return HEPFAC_OK;
    g_last_error = msg;
    return HEPFAC_ERR_INVALID_ARG;
}

uint32_t default_workers()
{
    if (const char* env = std::getenv("HEPFAC_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return uint32_t(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

ScanConfig to_config(const hepfac_scan_config_t* config)
{
    ScanConfig out;
    out.workers = (config && config->workers) ? config->workers : default_workers();
    out.chunk = (config && config->chunk) ? config->chunk : 4096;
    return out;
}

char* dup_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* hepfac_status_string(hepfac_status_t status)
{
    switch (status) {
        case HEPFAC_OK: return "ok";
        case HEPFAC_ERR_INVALID_ARG: return "invalid argument";
        case HEPFAC_ERR_DUPLICATE: return "duplicate entry";
        case HEPFAC_ERR_BAD_BYTE: return "byte outside alphabet";
        case HEPFAC_ERR_STATE: return "operation invalid for trie state";
        case HEPFAC_ERR_IO: return "i/o error";
        case HEPFAC_ERR_FORMAT: return "bad file format";
        case HEPFAC_ERR_NOMEM: return "out of memory";
        case HEPFAC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* hepfac_version(void)
{
    return "1.0.0";
}

const char* hepfac_last_error(void)
{
    return g_last_error.c_str();
}

/* --- alphabets ----------------------------------------------------------- */

hepfac_status_t hepfac_alphabet_create(const uint8_t* symbols, size_t count,
                                       hepfac_alphabet_t** out)
{
    if (auto s = require(symbols && out, "null argument")) return s;
    return guarded([&] {
        *out = new hepfac_alphabet{Alphabet::from_symbols(std::span(symbols, count))};
    });
}

hepfac_status_t hepfac_alphabet_standard(uint16_t sigma, hepfac_alphabet_t** out)
{
    if (auto s = require(out != nullptr, "null argument")) return s;
    return guarded([&] { *out = new hepfac_alphabet{Alphabet::standard(sigma)}; });
}

uint16_t hepfac_alphabet_size(const hepfac_alphabet_t* alphabet)
{
    return alphabet ? uint16_t(alphabet->impl.size()) : 0;
}

int32_t hepfac_alphabet_symbol(const hepfac_alphabet_t* alphabet, uint8_t byte)
{
    return alphabet ? alphabet->impl.symbol_of(byte) : -1;
}

void hepfac_alphabet_destroy(hepfac_alphabet_t* alphabet)
{
    delete alphabet;
}

/* --- pattern sets -------------------------------------------------------- */

hepfac_status_t hepfac_patterns_create(const uint8_t* const* patterns, const size_t* lengths,
                                       size_t count, const hepfac_alphabet_t* alphabet,
                                       hepfac_patterns_t** out)
{
    if (auto s = require(patterns && lengths && alphabet && out, "null argument")) return s;
    return guarded([&] {
        std::vector<std::string> pats;
        pats.reserve(count);
        for (size_t i = 0; i < count; ++i)
            pats.emplace_back(reinterpret_cast<const char*>(patterns[i]), lengths[i]);
        *out = new hepfac_patterns{PatternSet::create(std::move(pats), alphabet->impl)};
    });
}

hepfac_status_t hepfac_patterns_generate(uint32_t seed, const hepfac_alphabet_t* alphabet,
                                         uint64_t count, uint32_t length, hepfac_patterns_t** out)
{
    if (auto s = require(alphabet && out, "null argument")) return s;
    return guarded([&] {
        *out = new hepfac_patterns{gen_patterns(seed, alphabet->impl, count, length)};
    });
}

hepfac_status_t hepfac_patterns_load(const char* path, const hepfac_alphabet_t* alphabet, int hex,
                                     hepfac_patterns_t** out)
{
    if (auto s = require(path && alphabet && out, "null argument")) return s;
    return guarded([&] {
        *out = new hepfac_patterns{load_patterns(
            path, alphabet->impl, hex ? PatternEncoding::Hex : PatternEncoding::Raw)};
    });
}

hepfac_status_t hepfac_patterns_save(const hepfac_patterns_t* patterns, const char* path)
{
    if (auto s = require(patterns && path, "null argument")) return s;
    return guarded([&] { save_patterns(patterns->impl, path); });
}

size_t hepfac_patterns_count(const hepfac_patterns_t* patterns)
{
    return patterns ? patterns->impl.patterns.size() : 0;
}

const uint8_t* hepfac_patterns_get(const hepfac_patterns_t* patterns, size_t index,
                                   size_t* length)
{
    if (!patterns || index >= patterns->impl.patterns.size()) return nullptr;
    const std::string& p = patterns->impl.patterns[index];
    if (length) *length = p.size();
    return reinterpret_cast<const uint8_t*>(p.data());
}

hepfac_status_t hepfac_patterns_unique_prefix(const hepfac_patterns_t* patterns, uint32_t* out)
{
    if (auto s = require(patterns && out, "null argument")) return s;
    return guarded([&] { *out = minimal_unique_prefix(patterns->impl.patterns); });
}

hepfac_status_t hepfac_patterns_choose_depth(const hepfac_patterns_t* patterns, uint32_t* out)
{
    if (auto s = require(patterns && out, "null argument")) return s;
    return guarded([&] { *out = choose_depth(patterns->impl); });
}

void hepfac_patterns_destroy(hepfac_patterns_t* patterns)
{
    delete patterns;
}

/* --- corpora ------------------------------------------------------------- */

hepfac_status_t hepfac_corpus_generate(uint32_t seed, const hepfac_alphabet_t* alphabet,
                                       uint64_t bytes, uint8_t* out)
{
    if (auto s = require(alphabet && out, "null argument")) return s;
    return guarded([&] {
        auto corpus = gen_corpus(seed, alphabet->impl, bytes);
        std::memcpy(out, corpus.data(), corpus.size());
    });
}

hepfac_status_t hepfac_corpus_plant(uint8_t* corpus, uint64_t bytes,
                                    const hepfac_patterns_t* patterns, uint64_t occurrences,
                                    uint32_t seed)
{
    if (auto s = require(corpus && patterns, "null argument")) return s;
    return guarded([&] {
        std::vector<uint8_t> buf(corpus, corpus + bytes);
        plant_patterns(buf, patterns->impl, occurrences, seed);
        std::memcpy(corpus, buf.data(), buf.size());
    });
}

hepfac_status_t hepfac_sha256(const uint8_t* data, uint64_t bytes, char hex65[65])
{
    if (auto s = require((data || bytes == 0) && hex65, "null argument")) return s;
    return guarded([&] {
        std::string hex = sha256_hex(std::span<const uint8_t>(data, bytes));
        std::memcpy(hex65, hex.c_str(), hex.size() + 1);
    });
}

/* --- tries --------------------------------------------------------------- */

hepfac_status_t hepfac_trie_build(const hepfac_patterns_t* patterns, hepfac_trie_t** out)
{
    if (auto s = require(patterns && out, "null argument")) return s;
    return guarded([&] { *out = new hepfac_trie{build_trie(patterns->impl)}; });
}

hepfac_status_t hepfac_trie_compress(const hepfac_trie_t* trie, int stages, hepfac_trie_t** out)
{
    return hepfac_trie_compress_stats(trie, stages, out, nullptr);
}

hepfac_status_t hepfac_trie_compress_stats(const hepfac_trie_t* trie, int stages,
                                           hepfac_trie_t** out,
                                           hepfac_compression_stats_t* stats)
{
    if (auto s = require(trie && out, "null argument")) return s;
    if (auto s = require(stages == 1 || stages == 2, "stages must be 1 or 2")) return s;
    return guarded([&] {
        std::pair<Trie, CompressionStats> r =
            stages == 1 ? merge_final_nodes(trie->impl) : compress(trie->impl);
        if (stats) {
            stats->nodes_before = r.second.nodes_before;
            stats->nodes_after_stage1 = r.second.nodes_after_stage1;
            stats->nodes_after_stage2 = r.second.nodes_after_stage2;
            stats->pattern_count = r.second.pattern_count;
            stats->reduction_percent = r.second.reduction_percent;
        }
        *out = new hepfac_trie{std::move(r.first)};
    });
}

hepfac_status_t hepfac_trie_truncate(const hepfac_trie_t* trie, uint32_t depth,
                                     hepfac_trie_t** out, int* was_noop)
{
    if (auto s = require(trie && out, "null argument")) return s;
    return guarded([&] {
        TruncateResult r = truncate(trie->impl, depth);
        if (was_noop) *was_noop = r.was_noop ? 1 : 0;
        *out = new hepfac_trie{std::move(r.trie)};
    });
}

hepfac_status_t hepfac_trie_save(const hepfac_trie_t* trie, const char* path)
{
    if (auto s = require(trie && path, "null argument")) return s;
    return guarded([&] { save_trie(trie->impl, path); });
}

hepfac_status_t hepfac_trie_load(const char* path, hepfac_trie_t** out)
{
    if (auto s = require(path && out, "null argument")) return s;
    return guarded([&] { *out = new hepfac_trie{load_trie(path)}; });
}

void hepfac_trie_destroy(hepfac_trie_t* trie)
{
    delete trie;
}

uint32_t hepfac_trie_node_count(const hepfac_trie_t* trie)
{
    return trie ? trie->impl.node_count() : 0;
}

uint16_t hepfac_trie_sigma(const hepfac_trie_t* trie)
{
    return trie ? uint16_t(trie->impl.alphabet().size()) : 0;
}

int hepfac_trie_stage(const hepfac_trie_t* trie)
{
    return trie ? int(trie->impl.stage()) : -1;
}

int hepfac_trie_depth_limit(const hepfac_trie_t* trie, uint32_t* depth)
{
    if (!trie || !trie->impl.depth_limit()) return 0;
    if (depth) *depth = *trie->impl.depth_limit();
    return 1;
}

hepfac_status_t hepfac_trie_transition(const hepfac_trie_t* trie, uint32_t node, uint8_t byte,
                                       uint32_t* next)
{
    if (auto s = require(trie && next, "null argument")) return s;
    if (auto s = require(node < trie->impl.node_count(), "node index out of range")) return s;
    *next = trie->impl.transition(node, byte);
    return HEPFAC_OK;
}

int hepfac_trie_terminal(const hepfac_trie_t* trie, uint32_t node)
{
    if (!trie || node >= trie->impl.node_count()) return 0;
    return trie->impl.terminal(node) ? 1 : 0;
}

hepfac_status_t hepfac_trie_memory_report(const hepfac_trie_t* trie, hepfac_memory_report_t* out)
{
    if (auto s = require(trie && out, "null argument")) return s;
    MemoryReport r = trie->impl.memory_report();
    out->node_count = r.node_count;
    out->bytes_per_node = r.bytes_per_node;
    out->total_bytes = r.total_bytes;
    out->sigma = uint16_t(r.sigma);
    std::string mib = format_mib(r.total_bytes);
    std::snprintf(out->total_mib, sizeof out->total_mib, "%s", mib.c_str());
    return HEPFAC_OK;
}

/* --- scanning ------------------------------------------------------------ */

hepfac_status_t hepfac_scan(const hepfac_trie_t* trie, const uint8_t* text, uint64_t bytes,
                            const hepfac_scan_config_t* config, hepfac_match_list_t** out)
{
    if (auto s = require(trie && (text || bytes == 0) && out, "null argument")) return s;
    return guarded([&] {
        auto matches = scan(trie->impl, std::span<const uint8_t>(text, bytes), to_config(config));
        *out = new hepfac_match_list{std::move(matches)};
    });
}

size_t hepfac_match_list_size(const hepfac_match_list_t* list)
{
    return list ? list->impl.size() : 0;
}

const hepfac_match_t* hepfac_match_list_data(const hepfac_match_list_t* list)
{
    static_assert(sizeof(hepfac_match_t) == sizeof(MatchResult));
    static_assert(offsetof(hepfac_match_t, pattern_id) == offsetof(MatchResult, pattern_id));
    if (!list || list->impl.empty()) return nullptr;
    return reinterpret_cast<const hepfac_match_t*>(list->impl.data());
}

void hepfac_match_list_destroy(hepfac_match_list_t* list)
{
    delete list;
}

hepfac_status_t hepfac_run_throughput(const hepfac_trie_t* trie, const uint8_t* text,
                                      uint64_t bytes, const hepfac_scan_config_t* config,
                                      uint32_t runs, hepfac_throughput_report_t* out)
{
    if (auto s = require(trie && text && out, "null argument")) return s;
    return guarded([&] {
        ThroughputReport r = run_throughput(trie->impl, std::span<const uint8_t>(text, bytes),
                                            to_config(config), runs);
        out->bytes = r.bytes;
        out->seconds = r.seconds;
        out->merge_seconds = r.merge_seconds;
        out->gbps = r.gbps;
        out->workers = r.workers;
        out->runs = r.runs;
        out->matches = r.matches;
    });
}

/* --- reports & tables ----------------------------------------------------- */

void hepfac_string_free(char* s)
{
    std::free(s);
}

hepfac_status_t hepfac_compare_footprint(uint64_t node_count, uint16_t sigma,
                                         hepfac_comparison_report_t* out)
{
    if (auto s = require(out != nullptr, "null argument")) return s;
    return guarded([&] {
        ComparisonReport r = compare_footprint(node_count, sigma);
        out->node_count = r.node_count;
        out->sigma = uint16_t(r.sigma);
        out->ours_bytes = r.ours_bytes;
        out->pfac_bytes = r.pfac_bytes;
        out->accw_bytes = r.accw_bytes;
        out->gravity_bytes = r.gravity_bytes;
        out->ratio_pfac = r.ratio_pfac;
        out->ratio_accw = r.ratio_accw;
        out->ratio_gravity = r.ratio_gravity;
    });
}

hepfac_status_t hepfac_prefix_analysis_csv(const uint16_t* sigmas, size_t sigma_count,
                                           uint32_t pattern_count, uint32_t pattern_length,
                                           uint32_t trials, uint32_t seed, char** csv)
{
    if (auto s = require(sigmas && csv && sigma_count > 0, "null argument")) return s;
    return guarded([&] {
        std::vector<unsigned> sv(sigmas, sigmas + sigma_count);
        auto rows = analyze_prefix_vs_alphabet(sv, pattern_count, pattern_length, trials, seed);
        *csv = dup_string(prefix_analysis_csv(rows, pattern_count, pattern_length, seed));
    });
}

hepfac_status_t hepfac_trie_size_curve_csv(uint16_t sigma, const uint64_t* pattern_counts,
                                           size_t count_count, uint32_t pattern_length,
                                           uint32_t seed, char** csv)
{
    if (auto s = require(pattern_counts && csv && count_count > 0, "null argument")) return s;
    return guarded([&] {
        std::vector<uint64_t> counts(pattern_counts, pattern_counts + count_count);
        *csv = dup_string(run_trie_size_curve(sigma, counts, pattern_length, seed));
    });
}

hepfac_status_t hepfac_scaling_csv(const uint16_t* sigmas, size_t sigma_count,
                                   const uint64_t* pattern_counts, size_t count_count,
                                   uint32_t pattern_length, uint64_t corpus_bytes, uint32_t seed,
                                   uint32_t workers, uint32_t runs, char** csv)
{
    if (auto s = require(sigmas && pattern_counts && csv && sigma_count > 0 && count_count > 0,
                         "null argument"))
        return s;
    return guarded([&] {
        std::vector<unsigned> sv(sigmas, sigmas + sigma_count);
        std::vector<uint64_t> counts(pattern_counts, pattern_counts + count_count);
        ScanConfig cfg{workers ? workers : default_workers(), 4096};
        *csv = dup_string(
            run_scaling(sv, counts, pattern_length, corpus_bytes, seed, cfg, runs ? runs : 3));
    });
}

hepfac_status_t hepfac_filesize_csv(uint16_t sigma, uint64_t pattern_count,
                                    uint32_t pattern_length, const uint64_t* corpus_sizes,
                                    size_t size_count, uint32_t seed, uint32_t multi_workers,
                                    uint32_t runs, char** csv)
{
    if (auto s = require(corpus_sizes && csv && size_count > 0, "null argument")) return s;
    return guarded([&] {
        std::vector<uint64_t> sizes(corpus_sizes, corpus_sizes + size_count);
        *csv = dup_string(run_filesize_comparison(sigma, pattern_count, pattern_length, sizes,
                                                  seed, multi_workers ? multi_workers
                                                                      : default_workers(),
                                                  runs ? runs : 5));
    });
}

hepfac_status_t hepfac_reduction_estimate(uint16_t sigma, uint64_t n, uint64_t trials,
                                          uint32_t seed, hepfac_reduction_estimate_t* out)
{
    if (auto s = require(out != nullptr, "null argument")) return s;
    return guarded([&] {
        double formula = expected_reduced_length_formula(sigma, n);
        ReductionEstimate oracle = expected_reduced_length_oracle(sigma, n, trials, seed);
        out->r = oracle.r;
        out->n = n;
        out->formula_value = formula;
        out->oracle_value = oracle.expected_length;
        out->oracle_std_error = oracle.std_error;
        out->trials = trials;
        out->conforms =
            std::abs(formula - oracle.expected_length) <= 3.0 * oracle.std_error ? 1 : 0;
    });
}

} // extern "C"
