/*
 * hepfac - memory-compressed failure-less Aho-Corasick multi-pattern matching
 *
 * C API for the shared library. All objects are opaque handles created and
 * destroyed through these functions; every call returns a status code and
 * writes results through out-parameters. Handles are immutable after
 * creation and safe to share across threads for read-only operations.
 */

#ifndef HEPFAC_H
#define HEPFAC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hepfac_status {
    HEPFAC_OK = 0,
    HEPFAC_ERR_INVALID_ARG = 1,   /* bad parameter / contract violation */
    HEPFAC_ERR_DUPLICATE = 2,     /* duplicate pattern or alphabet byte */
    HEPFAC_ERR_BAD_BYTE = 3,      /* pattern byte outside the alphabet */
    HEPFAC_ERR_STATE = 4,         /* operation invalid for this trie state */
    HEPFAC_ERR_IO = 5,            /* file open/read/write failure */
    HEPFAC_ERR_FORMAT = 6,        /* malformed trie file */
    HEPFAC_ERR_NOMEM = 7,
    HEPFAC_ERR_INTERNAL = 8
} hepfac_status_t;

const char* hepfac_status_string(hepfac_status_t status);
const char* hepfac_version(void);

/* Thread-local message for the most recent failing call in this thread. */
const char* hepfac_last_error(void);

typedef struct hepfac_alphabet hepfac_alphabet_t;
typedef struct hepfac_patterns hepfac_patterns_t;
typedef struct hepfac_trie hepfac_trie_t;

/* --- alphabets ----------------------------------------------------------- */

hepfac_status_t hepfac_alphabet_create(const uint8_t* symbols, size_t count,
                                       hepfac_alphabet_t** out);
/* Canonical alphabet of a given size: "ACGT" at 4, a-zA-Z prefix up to 52,
 * identity at 256. */
hepfac_status_t hepfac_alphabet_standard(uint16_t sigma, hepfac_alphabet_t** out);
uint16_t hepfac_alphabet_size(const hepfac_alphabet_t* alphabet);
/* Symbol index for a byte, or -1 when absent. */
int32_t hepfac_alphabet_symbol(const hepfac_alphabet_t* alphabet, uint8_t byte);
void hepfac_alphabet_destroy(hepfac_alphabet_t* alphabet);

/* --- pattern sets -------------------------------------------------------- */

hepfac_status_t hepfac_patterns_create(const uint8_t* const* patterns, const size_t* lengths,
                                       size_t count, const hepfac_alphabet_t* alphabet,
                                       hepfac_patterns_t** out);
/* `count` distinct uniform random patterns of `length` symbols (MT19937). */
hepfac_status_t hepfac_patterns_generate(uint32_t seed, const hepfac_alphabet_t* alphabet,
                                         uint64_t count, uint32_t length,
                                         hepfac_patterns_t** out);
/* One pattern per line; hex == 1 reads hex-escaped lines. */
hepfac_status_t hepfac_patterns_load(const char* path, const hepfac_alphabet_t* alphabet,
                                     int hex, hepfac_patterns_t** out);
hepfac_status_t hepfac_patterns_save(const hepfac_patterns_t* patterns, const char* path);
size_t hepfac_patterns_count(const hepfac_patterns_t* patterns);
const uint8_t* hepfac_patterns_get(const hepfac_patterns_t* patterns, size_t index,
                                   size_t* length);
/* Smallest depth at which all pattern prefixes are pairwise distinct. */
hepfac_status_t hepfac_patterns_unique_prefix(const hepfac_patterns_t* patterns, uint32_t* out);
/* Default truncation depth policy for the set. */
hepfac_status_t hepfac_patterns_choose_depth(const hepfac_patterns_t* patterns, uint32_t* out);
void hepfac_patterns_destroy(hepfac_patterns_t* patterns);

/* --- corpora ------------------------------------------------------------- */

/* Uniform MT19937 corpus over the alphabet; caller owns `out` of `bytes`. */
hepfac_status_t hepfac_corpus_generate(uint32_t seed, const hepfac_alphabet_t* alphabet,
                                       uint64_t bytes, uint8_t* out);
/* Splices pattern occurrences into a buffer at seeded random offsets. */
hepfac_status_t hepfac_corpus_plant(uint8_t* corpus, uint64_t bytes,
                                    const hepfac_patterns_t* patterns, uint64_t occurrences,
                                    uint32_t seed);
/* SHA-256 of a buffer; `hex65` receives 64 hex chars + NUL. */
hepfac_status_t hepfac_sha256(const uint8_t* data, uint64_t bytes, char hex65[65]);

/* --- tries --------------------------------------------------------------- */

hepfac_status_t hepfac_trie_build(const hepfac_patterns_t* patterns, hepfac_trie_t** out);
/* stages: 1 = merge final nodes, 2 = stages 1+2. */
hepfac_status_t hepfac_trie_compress(const hepfac_trie_t* trie, int stages, hepfac_trie_t** out);
hepfac_status_t hepfac_trie_truncate(const hepfac_trie_t* trie, uint32_t depth,
                                     hepfac_trie_t** out, int* was_noop);
hepfac_status_t hepfac_trie_save(const hepfac_trie_t* trie, const char* path);
hepfac_status_t hepfac_trie_load(const char* path, hepfac_trie_t** out);
void hepfac_trie_destroy(hepfac_trie_t* trie);

uint32_t hepfac_trie_node_count(const hepfac_trie_t* trie);
uint16_t hepfac_trie_sigma(const hepfac_trie_t* trie);
/* 0 = uncompressed, 1 = final-merged, 2 = tail-merged. */
int hepfac_trie_stage(const hepfac_trie_t* trie);
/* Returns 1 and writes *depth when the trie is prefix-truncated. */
int hepfac_trie_depth_limit(const hepfac_trie_t* trie, uint32_t* depth);
/* Transition per the bitmap popcount rule; writes HEPFAC_NO_NODE on miss. */
#define HEPFAC_NO_NODE UINT32_MAX
hepfac_status_t hepfac_trie_transition(const hepfac_trie_t* trie, uint32_t node, uint8_t byte,
                                       uint32_t* next);
int hepfac_trie_terminal(const hepfac_trie_t* trie, uint32_t node);

typedef struct hepfac_memory_report {
    uint64_t node_count;
    uint32_t bytes_per_node;
    uint64_t total_bytes;
    uint16_t sigma;
    char total_mib[32]; /* binary megabytes, truncated to one decimal */
} hepfac_memory_report_t;

hepfac_status_t hepfac_trie_memory_report(const hepfac_trie_t* trie,
                                          hepfac_memory_report_t* out);

typedef struct hepfac_compression_stats {
    uint64_t nodes_before;
    uint64_t nodes_after_stage1;
    uint64_t nodes_after_stage2;
    uint64_t pattern_count;
    /* 100 * (nodes_before - nodes_after) / nodes_after */
    double reduction_percent;
} hepfac_compression_stats_t;

hepfac_status_t hepfac_trie_compress_stats(const hepfac_trie_t* trie, int stages,
                                           hepfac_trie_t** out,
                                           hepfac_compression_stats_t* stats);

/* --- scanning ------------------------------------------------------------ */

typedef struct hepfac_match {
    uint64_t start;
    uint32_t length;
    uint32_t pattern_id;
} hepfac_match_t;

typedef struct hepfac_scan_config {
    uint32_t workers; /* 0 = HEPFAC_WORKERS env or hardware concurrency */
    uint32_t chunk;   /* 0 = default 4096 starting positions per work unit */
} hepfac_scan_config_t;

typedef struct hepfac_match_list hepfac_match_list_t;

/* Full scan from every starting position. Results are sorted by
 * (start, length, pattern_id) and identical for every worker/chunk setting.
 * Truncated tries verify candidates against the dictionary automatically. */
hepfac_status_t hepfac_scan(const hepfac_trie_t* trie, const uint8_t* text, uint64_t bytes,
                            const hepfac_scan_config_t* config, hepfac_match_list_t** out);
size_t hepfac_match_list_size(const hepfac_match_list_t* list);
const hepfac_match_t* hepfac_match_list_data(const hepfac_match_list_t* list);
void hepfac_match_list_destroy(hepfac_match_list_t* list);

typedef struct hepfac_throughput_report {
    uint64_t bytes;
    double seconds; /* mean scan wall time over runs; merge reported apart */
    double merge_seconds;
    double gbps; /* bytes * 8 / seconds / 1e9 */
    uint32_t workers;
    uint32_t runs;
    uint64_t matches;
} hepfac_throughput_report_t;

/* Scans `runs` times after one untimed warm-up and reports mean timings. */
hepfac_status_t hepfac_run_throughput(const hepfac_trie_t* trie, const uint8_t* text,
                                      uint64_t bytes, const hepfac_scan_config_t* config,
                                      uint32_t runs, hepfac_throughput_report_t* out);

/* --- reports & benchmark tables (caller frees strings) ------------------- */

void hepfac_string_free(char* s);

typedef struct hepfac_comparison_report {
    uint64_t node_count;
    uint16_t sigma;
    uint64_t ours_bytes;
    uint64_t pfac_bytes;
    uint64_t accw_bytes;
    uint64_t gravity_bytes;
    double ratio_pfac;
    double ratio_accw;
    double ratio_gravity;
} hepfac_comparison_report_t;

/* Rival-scheme memory models (PFAC 15 B/node, AC-CW 10 B over its own node
 * count, GrAVity 1024 B/node). */
hepfac_status_t hepfac_compare_footprint(uint64_t node_count, uint16_t sigma,
                                         hepfac_comparison_report_t* out);

/* Prefix-depth-vs-alphabet study (CSV). */
hepfac_status_t hepfac_prefix_analysis_csv(const uint16_t* sigmas, size_t sigma_count,
                                           uint32_t pattern_count, uint32_t pattern_length,
                                           uint32_t trials, uint32_t seed, char** csv);

/* Trie size curves (CSV): array / binary / bitmapped / bitmapped-reduced. */
hepfac_status_t hepfac_trie_size_curve_csv(uint16_t sigma, const uint64_t* pattern_counts,
                                           size_t count_count, uint32_t pattern_length,
                                           uint32_t seed, char** csv);

/* Throughput scaling grid over (sigma, pattern count) cells (CSV). */
hepfac_status_t hepfac_scaling_csv(const uint16_t* sigmas, size_t sigma_count,
                                   const uint64_t* pattern_counts, size_t count_count,
                                   uint32_t pattern_length, uint64_t corpus_bytes, uint32_t seed,
                                   uint32_t workers, uint32_t runs, char** csv);

/* Single- vs multi-worker throughput over several corpus sizes (CSV). */
hepfac_status_t hepfac_filesize_csv(uint16_t sigma, uint64_t pattern_count,
                                    uint32_t pattern_length, const uint64_t* corpus_sizes,
                                    size_t size_count, uint32_t seed, uint32_t multi_workers,
                                    uint32_t runs, char** csv);

/* Tail-chain reduction estimators: the printed formula (multiset reading)
 * and the Monte-Carlo oracle it is reported against. */
typedef struct hepfac_reduction_estimate {
    uint64_t r; /* sigma^2 */
    uint64_t n;
    double formula_value;
    double oracle_value;
    double oracle_std_error;
    uint64_t trials;
    int conforms; /* 1 when |formula - oracle| <= 3 std errors */
} hepfac_reduction_estimate_t;

hepfac_status_t hepfac_reduction_estimate(uint16_t sigma, uint64_t n, uint64_t trials,
                                          uint32_t seed, hepfac_reduction_estimate_t* out);

#ifdef __cplusplus
}
#endif

#endif /* HEPFAC_H */
