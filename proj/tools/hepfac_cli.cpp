// hepfac command-line driver: corpus/pattern generation, trie building and
// compression, matching, and the benchmark table reproductions. Talks to the
// engine exclusively through the C API in hepfac.h.

#include "hepfac.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

int exit_code_for(hepfac_status_t s)
{
    if (s == HEPFAC_OK) return kExitOk;
    if (s == HEPFAC_ERR_IO || s == HEPFAC_ERR_FORMAT) return kExitIo;
    return kExitValidation;
}

[[noreturn]] void fail(hepfac_status_t s, const std::string& context)
{
    std::cerr << "hepfac: " << context << ": " << hepfac_status_string(s);
    const char* detail = hepfac_last_error();
    if (detail && *detail) std::cerr << " (" << detail << ")";
    std::cerr << "\n";
    std::exit(exit_code_for(s));
}

void check(hepfac_status_t s, const std::string& context)
{
    if (s != HEPFAC_OK) fail(s, context);
}

struct AlphabetHandle {
    hepfac_alphabet_t* ptr = nullptr;
    ~AlphabetHandle() { hepfac_alphabet_destroy(ptr); }
};
struct PatternsHandle {
    hepfac_patterns_t* ptr = nullptr;
    ~PatternsHandle() { hepfac_patterns_destroy(ptr); }
};
struct TrieHandle {
    hepfac_trie_t* ptr = nullptr;
    ~TrieHandle() { hepfac_trie_destroy(ptr); }
};

std::vector<uint8_t> read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary | std::ios::ate);
    if (!f) {
        std::cerr << "hepfac: cannot open " << path << "\n";
        std::exit(kExitIo);
    }
    std::vector<uint8_t> data(size_t(f.tellg()));
    f.seekg(0);
    f.read(reinterpret_cast<char*>(data.data()), std::streamsize(data.size()));
    if (!f) {
        std::cerr << "hepfac: read failed: " << path << "\n";
        std::exit(kExitIo);
    }
    return data;
}

void write_file(const std::string& path, const void* data, size_t size)
{
    std::ofstream f(path, std::ios::binary);
    if (!f || !f.write(static_cast<const char*>(data), std::streamsize(size))) {
        std::cerr << "hepfac: write failed: " << path << "\n";
        std::exit(kExitIo);
    }
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text.data(), text.size());
}

uint32_t env_workers()
{
    if (const char* env = std::getenv("HEPFAC_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return uint32_t(v);
    }
    return 0; // library default (hardware concurrency)
}

struct CsvString {
    char* ptr = nullptr;
    ~CsvString() { hepfac_string_free(ptr); }
};

// ---------------------------------------------------------------------------

int cmd_gen(uint32_t seed, uint16_t sigma, uint64_t pattern_count, uint32_t length,
            uint64_t bytes, uint32_t files, uint64_t plant, const std::string& out_dir)
{
    AlphabetHandle alphabet;
    check(hepfac_alphabet_standard(sigma, &alphabet.ptr), "alphabet");
    PatternsHandle patterns;
    check(hepfac_patterns_generate(seed, alphabet.ptr, pattern_count, length, &patterns.ptr),
          "pattern generation");

    std::string dir = out_dir.empty() ? "." : out_dir;
    std::string pattern_path = dir + "/patterns.txt";
    check(hepfac_patterns_save(patterns.ptr, pattern_path.c_str()), "pattern file");

    json manifest;
    manifest["seed"] = seed;
    manifest["sigma"] = sigma;
    manifest["bytes"] = bytes;
    manifest["files"] = files;
    manifest["patterns"] = {{"file", "patterns.txt"},
                            {"count", pattern_count},
                            {"length", length},
                            {"encoding", "raw"}};
    manifest["corpora"] = json::array();

    std::vector<uint8_t> corpus(bytes);
    for (uint32_t i = 0; i < files; ++i) {
        uint32_t file_seed = seed + 1 + i;
        check(hepfac_corpus_generate(file_seed, alphabet.ptr, bytes, corpus.data()), "corpus");
        if (plant)
            check(hepfac_corpus_plant(corpus.data(), bytes, patterns.ptr, plant, file_seed ^ 0x9E37u),
                  "plant");
        char digest[65];
        check(hepfac_sha256(corpus.data(), bytes, digest), "sha256");
        std::string name = "corpus_" + std::to_string(i) + ".bin";
        write_file(dir + "/" + name, corpus.data(), corpus.size());
        manifest["corpora"].push_back(
            {{"file", name}, {"seed", file_seed}, {"bytes", bytes}, {"sha256", digest}});
    }

    std::string manifest_text = manifest.dump(2) + "\n";
    write_file(dir + "/manifest.json", manifest_text.data(), manifest_text.size());
    std::cout << manifest_text;
    return kExitOk;
}

int cmd_build(const std::string& pattern_path, uint16_t sigma, bool hex, int compress_stages,
              const std::string& out_path)
{
    AlphabetHandle alphabet;
    check(hepfac_alphabet_standard(sigma, &alphabet.ptr), "alphabet");
    PatternsHandle patterns;
    check(hepfac_patterns_load(pattern_path.c_str(), alphabet.ptr, hex ? 1 : 0, &patterns.ptr),
          "pattern file");
    TrieHandle trie;
    check(hepfac_trie_build(patterns.ptr, &trie.ptr), "trie build");

    json report;
    hepfac_compression_stats_t stats{};
    TrieHandle compressed;
    const hepfac_trie_t* final_trie = trie.ptr;
    if (compress_stages > 0) {
        check(hepfac_trie_compress_stats(trie.ptr, compress_stages, &compressed.ptr, &stats),
              "compression");
        final_trie = compressed.ptr;
        report["compression"] = {{"nodes_before", stats.nodes_before},
                                 {"nodes_after_stage1", stats.nodes_after_stage1},
                                 {"nodes_after_stage2", stats.nodes_after_stage2},
                                 {"pattern_count", stats.pattern_count},
                                 {"reduction_percent", stats.reduction_percent}};
    }
    check(hepfac_trie_save(final_trie, out_path.c_str()), "trie save");

    hepfac_memory_report_t mem{};
    check(hepfac_trie_memory_report(final_trie, &mem), "memory report");
    report["memory"] = {{"node_count", mem.node_count},
                        {"bytes_per_node", mem.bytes_per_node},
                        {"total_bytes", mem.total_bytes},
                        {"total_mib", mem.total_mib},
                        {"sigma", mem.sigma}};
    report["trie"] = out_path;
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

int cmd_compress(const std::string& in_path, int stages, const std::string& out_path)
{
    TrieHandle trie;
    check(hepfac_trie_load(in_path.c_str(), &trie.ptr), "trie load");
    TrieHandle compressed;
    hepfac_compression_stats_t stats{};
    check(hepfac_trie_compress_stats(trie.ptr, stages, &compressed.ptr, &stats), "compression");
    check(hepfac_trie_save(compressed.ptr, out_path.c_str()), "trie save");
    json report = {{"nodes_before", stats.nodes_before},
                   {"nodes_after_stage1", stats.nodes_after_stage1},
                   {"nodes_after_stage2", stats.nodes_after_stage2},
                   {"pattern_count", stats.pattern_count},
                   {"reduction_percent", stats.reduction_percent}};
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

int cmd_stats(uint64_t nodes, uint16_t sigma, const std::string& trie_path)
{
    if (!trie_path.empty()) {
        TrieHandle trie;
        check(hepfac_trie_load(trie_path.c_str(), &trie.ptr), "trie load");
        nodes = hepfac_trie_node_count(trie.ptr);
        sigma = hepfac_trie_sigma(trie.ptr);
    }
    hepfac_comparison_report_t r{};
    check(hepfac_compare_footprint(nodes, sigma, &r), "footprint comparison");
    json report = {{"node_count", r.node_count},
                   {"sigma", r.sigma},
                   {"ours_bytes", r.ours_bytes},
                   {"pfac_bytes", r.pfac_bytes},
                   {"accw_bytes", r.accw_bytes},
                   {"gravity_bytes", r.gravity_bytes},
                   {"ratio_pfac", r.ratio_pfac},
                   {"ratio_accw", r.ratio_accw},
                   {"ratio_gravity", r.ratio_gravity}};
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

int cmd_match(const std::string& trie_path, const std::string& input_path, uint32_t workers,
              uint32_t chunk, uint32_t depth, const std::string& out_path)
{
    TrieHandle loaded;
    check(hepfac_trie_load(trie_path.c_str(), &loaded.ptr), "trie load");
    TrieHandle truncated;
    const hepfac_trie_t* trie = loaded.ptr;
    if (depth > 0) {
        int noop = 0;
        check(hepfac_trie_truncate(loaded.ptr, depth, &truncated.ptr, &noop), "truncate");
        trie = truncated.ptr;
    }

    std::vector<uint8_t> text = read_file(input_path);
    hepfac_scan_config_t config{workers, chunk};

    hepfac_throughput_report_t rep{};
    check(hepfac_run_throughput(trie, text.data(), text.size(), &config, 1, &rep),
          "throughput");

    hepfac_match_list_t* list = nullptr;
    check(hepfac_scan(trie, text.data(), text.size(), &config, &list), "scan");
    std::unique_ptr<hepfac_match_list_t, decltype(&hepfac_match_list_destroy)> guard(
        list, &hepfac_match_list_destroy);

    std::string lines;
    const hepfac_match_t* data = hepfac_match_list_data(list);
    size_t n = hepfac_match_list_size(list);
    char buf[96];
    for (size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%llu\t%u\t%u\n", (unsigned long long)data[i].start,
                      data[i].length, data[i].pattern_id);
        lines += buf;
    }
    emit(lines, out_path);

    // Summary carries timing, so it goes to stderr; the match list on
    // stdout/--out stays byte-identical across runs and worker counts.
    json summary = {{"matches", n},
                    {"bytes", rep.bytes},
                    {"seconds", rep.seconds},
                    {"gbps", rep.gbps},
                    {"workers", rep.workers}};
    std::cerr << summary.dump() << "\n";
    return kExitOk;
}

std::vector<uint16_t> parse_sigmas(const std::string& csv)
{
    std::vector<uint16_t> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(uint16_t(std::stoul(csv.substr(pos, comma - pos))));
        pos = comma + 1;
    }
    if (out.empty()) {
        std::cerr << "hepfac: --sigmas needs at least one value\n";
        std::exit(kExitValidation);
    }
    return out;
}

int cmd_prefix(const std::string& sigmas_csv, uint32_t patterns, uint32_t length,
               uint32_t trials, uint32_t seed, const std::string& out_path)
{
    auto sigmas = parse_sigmas(sigmas_csv);
    CsvString csv;
    check(hepfac_prefix_analysis_csv(sigmas.data(), sigmas.size(), patterns, length, trials,
                                     seed, &csv.ptr),
          "prefix analysis");
    emit(csv.ptr, out_path);
    return kExitOk;
}

// Benchmark reproductions. Desk-scale defaults; --paper-scale restores the
// original corpus sizes and run counts.
int cmd_bench(const std::string& figure, uint32_t seed, bool paper_scale, uint32_t workers,
              uint32_t runs, const std::string& out_path)
{
    const uint64_t MiB = 1ull << 20;
    CsvString csv;
    if (figure == "figure3") {
        std::vector<uint16_t> sigmas{4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 52};
        check(hepfac_prefix_analysis_csv(sigmas.data(), sigmas.size(), 100, 20, 1000, seed,
                                         &csv.ptr),
              "figure3");
    } else if (figure == "figure4" || figure == "figure5") {
        uint16_t sigma = figure == "figure4" ? 4 : 52;
        std::vector<uint64_t> counts{1000, 2000, 4000, 7000, 10000};
        check(hepfac_trie_size_curve_csv(sigma, counts.data(), counts.size(), 20, seed, &csv.ptr),
              figure);
    } else if (figure == "figure6" || figure == "figure7") {
        std::vector<uint16_t> sigmas =
            figure == "figure6"
                ? std::vector<uint16_t>{4, 8, 16, 24, 32, 40, 52}
                : std::vector<uint16_t>{52, 64, 96, 128, 192, 256};
        std::vector<uint64_t> counts{1, 10, 100, 1000};
        uint64_t corpus = paper_scale ? 100 * MiB : 4 * MiB;
        uint32_t r = runs ? runs : (paper_scale ? 100 : 3);
        check(hepfac_scaling_csv(sigmas.data(), sigmas.size(), counts.data(), counts.size(), 20,
                                 corpus, seed, workers, r, &csv.ptr),
              figure);
    } else if (figure == "figure8") {
        std::vector<uint64_t> sizes = paper_scale
                                          ? std::vector<uint64_t>{100 * MiB, 200 * MiB}
                                          : std::vector<uint64_t>{16 * MiB, 32 * MiB};
        uint32_t r = runs ? runs : (paper_scale ? 100 : 5);
        check(hepfac_filesize_csv(52, 100, 20, sizes.data(), sizes.size(), seed, workers, r,
                                  &csv.ptr),
              figure);
    } else {
        std::cerr << "hepfac: unknown bench figure '" << figure
                  << "' (expected figure3..figure8)\n";
        return kExitValidation;
    }
    emit(csv.ptr, out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hepfac - bitmapped failure-less multi-pattern matching engine"};
    app.require_subcommand(1);

    // gen -------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate synthetic corpora and patterns");
    uint32_t seed = 42;
    uint16_t sigma = 52;
    uint64_t gen_patterns = 100;
    uint32_t gen_len = 20;
    uint64_t gen_bytes = 1ull << 20;
    uint32_t gen_files = 5;
    uint64_t gen_plant = 0;
    bool paper_scale = false;
    std::string out_dir;
    gen->add_option("--seed", seed, "master seed");
    gen->add_option("--sigma", sigma, "alphabet size (2..256)");
    gen->add_option("--patterns", gen_patterns, "number of patterns");
    gen->add_option("--len", gen_len, "pattern length in symbols");
    gen->add_option("--bytes", gen_bytes, "corpus bytes per file");
    gen->add_option("--files", gen_files, "number of corpus files");
    gen->add_option("--plant", gen_plant, "pattern occurrences spliced into each corpus");
    gen->add_flag("--paper-scale", paper_scale, "100 MiB corpus files");
    gen->add_option("--out", out_dir, "output directory (default .)");

    // build -----------------------------------------------------------------
    auto* build = app.add_subcommand("build", "build (and optionally compress) a trie file");
    std::string pattern_path, trie_out = "trie.htri";
    bool hex = false;
    int compress_stages = 0;
    build->add_option("--patterns", pattern_path, "pattern file, one per line")->required();
    build->add_option("--sigma", sigma, "alphabet size (2..256)");
    build->add_flag("--hex", hex, "patterns are hex-escaped");
    build->add_option("--compress", compress_stages, "compression stages (0, 1 or 2)")
        ->check(CLI::Range(0, 2));
    build->add_option("--out", trie_out, "output trie path");

    // compress ---------------------------------------------------------------
    auto* comp = app.add_subcommand("compress", "compress an existing trie file");
    std::string comp_in, comp_out = "trie.reduced.htri";
    int comp_stages = 2;
    comp->add_option("--trie", comp_in, "input trie")->required();
    comp->add_option("--stages", comp_stages, "1 = final merge, 2 = both stages")
        ->check(CLI::Range(1, 2));
    comp->add_option("--out", comp_out, "output trie path");

    // stats -------------------------------------------------------------------
    auto* stats = app.add_subcommand("stats", "rival-scheme memory comparison");
    uint64_t stats_nodes = 0;
    std::string stats_trie;
    stats->add_option("--nodes", stats_nodes, "node count");
    stats->add_option("--sigma", sigma, "alphabet size");
    stats->add_option("--trie", stats_trie, "take node count and sigma from a trie file");

    // match -------------------------------------------------------------------
    auto* match = app.add_subcommand("match", "scan a file and print matches");
    std::string match_trie, match_input, match_out;
    uint32_t workers = env_workers();
    uint32_t chunk = 0;
    uint32_t match_depth = 0;
    match->add_option("--trie", match_trie, "trie file")->required();
    match->add_option("--input", match_input, "input file to scan")->required();
    match->add_option("--workers", workers, "worker threads (default HEPFAC_WORKERS or cores)");
    match->add_option("--chunk", chunk, "starting positions per work unit");
    match->add_option("--depth", match_depth, "truncate to this depth and verify (two-stage)");
    match->add_option("--out", match_out, "write match lines here instead of stdout");

    // prefix ------------------------------------------------------------------
    auto* prefix = app.add_subcommand("prefix", "prefix-depth-vs-alphabet analysis");
    std::string sigmas_csv = "4,8,12,16,20,24,28,32,36,40,44,48,52";
    uint32_t prefix_patterns = 100, prefix_len = 20, prefix_trials = 1000;
    std::string prefix_out;
    prefix->add_option("--sigmas", sigmas_csv, "comma-separated alphabet sizes");
    prefix->add_option("--patterns", prefix_patterns, "patterns per trial set");
    prefix->add_option("--len", prefix_len, "pattern length");
    prefix->add_option("--trials", prefix_trials, "random sets per alphabet size");
    prefix->add_option("--seed", seed, "master seed");
    prefix->add_option("--out", prefix_out, "output CSV path (default stdout)");

    // bench -------------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "reproduce the benchmark tables");
    std::string figure;
    uint32_t bench_runs = 0;
    std::string bench_out;
    bench->add_option("figure", figure, "figure3 | figure4 | figure5 | figure6 | figure7 | figure8")
        ->required();
    bench->add_option("--seed", seed, "master seed");
    bench->add_flag("--paper-scale", paper_scale, "paper-scale corpus sizes and run counts");
    bench->add_option("--workers", workers, "worker threads");
    bench->add_option("--runs", bench_runs, "timed runs per cell");
    bench->add_option("--out", bench_out, "output CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen(seed, sigma, gen_patterns, gen_len,
                           paper_scale ? 100ull << 20 : gen_bytes, gen_files, gen_plant, out_dir);
        if (build->parsed()) return cmd_build(pattern_path, sigma, hex, compress_stages, trie_out);
        if (comp->parsed()) return cmd_compress(comp_in, comp_stages, comp_out);
        if (stats->parsed()) return cmd_stats(stats_nodes, sigma, stats_trie);
        if (match->parsed())
            return cmd_match(match_trie, match_input, workers, chunk, match_depth, match_out);
        if (prefix->parsed())
            return cmd_prefix(sigmas_csv, prefix_patterns, prefix_len, prefix_trials, seed,
                              prefix_out);
        if (bench->parsed())
            return cmd_bench(figure, seed, paper_scale, workers, bench_runs, bench_out);
    } catch (const std::exception& e) {
        std::cerr << "hepfac: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
