#include "hepfac/compression.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "hepfac/corpus.hpp"
#include "trie_assembler.hpp"

namespace hepfac {

double reduction_percent(uint64_t before, uint64_t after)
{
    if (after == 0) return 0.0;
    return 100.0 * double(before - after) / double(after);
}

std::string CompressionStats::to_json() const
{
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\"nodes_before\":%llu,\"nodes_after_stage1\":%llu,"
                  "\"nodes_after_stage2\":%llu,\"pattern_count\":%llu,"
                  "\"reduction_percent\":%.4f}",
                  (unsigned long long)nodes_before, (unsigned long long)nodes_after_stage1,
                  (unsigned long long)nodes_after_stage2, (unsigned long long)pattern_count,
                  reduction_percent);
    return buf;
}

namespace {

// Walks a pattern through the graph; returns the node path (root first).
std::vector<uint32_t> pattern_path(const std::vector<GraphNode>& graph, const Alphabet& a,
                                   const std::string& p)
{
    std::vector<uint32_t> path{0};
    uint32_t node = 0;
    for (char ch : p) {
        unsigned sym = unsigned(a.symbol_of(uint8_t(ch)));
        const auto& kids = graph[node].children;
        uint32_t next = Trie::npos;
        for (const auto& [s, c] : kids)
            if (s == sym) {
                next = c;
                break;
            }
        if (next == Trie::npos) throw std::logic_error("pattern missing from trie");
        node = next;
        path.push_back(node);
    }
    return path;
}

} // namespace

std::pair<Trie, CompressionStats> merge_final_nodes(const Trie& trie)
{
    if (trie.stage() != CompressionStage::None)
        throw std::invalid_argument("trie is already compressed");
    if (trie.depth_limit())
        throw std::invalid_argument("cannot compress a truncated trie");

    auto graph = TrieAssembler::to_graph(trie);

    // Shared terminal = first childless terminal encountered; every other
    // childless terminal hanging off a unary parent redirects to it. Parents
    // with several children keep private slots (the offset+popcount layout
    // cannot point two sibling slots at one cell).
    uint32_t shared = Trie::npos;
    for (uint32_t u = 0; u < graph.size(); ++u) {
        if (graph[u].terminal && graph[u].children.empty()) {
            shared = u;
            break;
        }
    }
    if (shared != Trie::npos) {
        for (auto& node : graph) {
            if (node.children.size() != 1) continue;
            uint32_t c = node.children[0].second;
            if (graph[c].terminal && graph[c].children.empty()) node.children[0].second = shared;
        }
    }

    Trie out = TrieAssembler::emit(graph, 0, trie, CompressionStage::FinalMerged);
    CompressionStats stats;
    stats.nodes_before = trie.node_count();
    stats.nodes_after_stage1 = out.node_count();
    stats.nodes_after_stage2 = out.node_count();
    stats.pattern_count = trie.patterns().size();
    stats.reduction_percent = reduction_percent(stats.nodes_before, stats.nodes_after_stage1);
    return {std::move(out), stats};
}

std::pair<Trie, CompressionStats> merge_tail_chains(const Trie& trie)
{
    if (trie.stage() != CompressionStage::FinalMerged)
        throw std::invalid_argument("tail merge requires stage-1 output");

    auto graph = TrieAssembler::to_graph(trie);
    const Alphabet& a = trie.alphabet();

    auto unary = [&](uint32_t u) { return graph[u].children.size() == 1; };
    auto is_shared_terminal = [&](uint32_t u) {
        return graph[u].terminal && graph[u].children.empty();
    };

    // Class representatives keyed by tail suffix (1..3 trailing symbols).
    std::map<std::string, uint32_t> reps;
    std::unordered_map<uint32_t, std::string> rep_suffix; // node -> owning key
    std::vector<std::pair<uint32_t, uint32_t>> rewires;   // (parent, new child) for replaced tails

    for (const auto& p : trie.patterns()) {
        const uint32_t L = uint32_t(p.size());
        if (L < 4) continue;
        auto path = pattern_path(graph, a, p);

        // Eligible chain nodes: v_k at depth L-k must be unary and
        // non-terminal; v_1's child must be the shared terminal.
        uint32_t e = 0;
        for (uint32_t k = 1; k <= 3; ++k) {
            uint32_t v = path[L - k];
            if (graph[v].terminal || !unary(v)) break;
            if (k == 1 && !is_shared_terminal(graph[v].children[0].second)) break;
            e = k;
        }
        // A replaced chain head is re-pointed from its parent, which must own
        // the edge outright (be unary); otherwise shorten the merged chain.
        uint32_t m = e;
        while (m >= 1 && graph[path[L - m - 1]].children.size() > 1) --m;
        if (m == 0) continue;

        // Deepest level whose suffix class already exists decides how much of
        // this tail is replaced; shallower levels join classes as reps.
        uint32_t replace_from = 0; // no replacement yet
        for (uint32_t k = m; k >= 1; --k) {
            std::string key = p.substr(L - k);
            auto it = reps.find(key);
            if (it != reps.end() && it->second != path[L - k]) {
                replace_from = k;
                break;
            }
        }
        for (uint32_t k = replace_from + 1; k <= m; ++k) {
            std::string key = p.substr(L - k);
            if (!reps.count(key)) {
                reps.emplace(key, path[L - k]);
                rep_suffix.emplace(path[L - k], key);
            }
        }
        if (replace_from >= 1) {
            std::string key = p.substr(L - replace_from);
            rewires.emplace_back(path[L - replace_from - 1], reps.at(key));
        }
    }

    // Rewire representative chains downward so classes link class-to-class,
    // then apply the replacement edges.
    for (const auto& [node, key] : rep_suffix) {
        if (key.size() < 2) continue;
        std::string sub = key.substr(1);
        auto it = reps.find(sub);
        if (it != reps.end()) graph[node].children[0].second = it->second;
    }
    for (const auto& [parent, child] : rewires) graph[parent].children[0].second = child;

    Trie out = TrieAssembler::emit(graph, 0, trie, CompressionStage::TailMerged);
    CompressionStats stats;
    stats.nodes_before = trie.node_count();
    stats.nodes_after_stage1 = trie.node_count();
    stats.nodes_after_stage2 = out.node_count();
    stats.pattern_count = trie.patterns().size();
    stats.reduction_percent = reduction_percent(stats.nodes_before, stats.nodes_after_stage2);
    return {std::move(out), stats};
}

std::pair<Trie, CompressionStats> compress(const Trie& trie)
{
    auto [stage1, s1] = merge_final_nodes(trie);
    auto [stage2, s2] = merge_tail_chains(stage1);
    CompressionStats stats;
    stats.nodes_before = s1.nodes_before;
    stats.nodes_after_stage1 = s1.nodes_after_stage1;
    stats.nodes_after_stage2 = s2.nodes_after_stage2;
    stats.pattern_count = s1.pattern_count;
    stats.reduction_percent = reduction_percent(stats.nodes_before, stats.nodes_after_stage2);
    return {std::move(stage2), stats};
}

// ---------------------------------------------------------------------------
// Estimators

uint64_t expected_suffix_space(unsigned sigma)
{
    if (sigma < 2) throw std::invalid_argument("sigma must be >= 2");
    return uint64_t(sigma) * sigma;
}

namespace {

// log C(a, b); -inf for invalid arguments (their terms contribute zero).
double log_binom(double a, double b)
{
    if (b < 0 || a < b) return -std::numeric_limits<double>::infinity();
    return std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1);
}

// log of the multiset coefficient ((a b)) = C(a+b-1, b).
double log_multiset(double a, double b)
{
    return log_binom(a + b - 1, b);
}

} // namespace

double expected_reduced_length_formula(unsigned sigma, uint64_t n)
{
    if (sigma < 2) throw std::invalid_argument("sigma must be >= 2");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const double r = double(expected_suffix_space(sigma));
    const double dn = double(n);
    const double log_den = log_multiset(dn, r);
    const uint64_t hi = std::min<uint64_t>(uint64_t(r), n);
    double sum = 0;
    for (uint64_t i = 1; i <= hi; ++i) {
        double di = double(i);
        double lt = log_binom(r, di) + log_multiset(dn - di, di) - log_den;
        if (std::isinf(lt)) continue;
        sum += std::exp(lt) * 2.0 * di;
    }
    return sum;
}

ReductionEstimate expected_reduced_length_oracle(unsigned sigma, uint64_t n, uint64_t trials,
                                                 uint32_t seed)
{
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const uint64_t r = expected_suffix_space(sigma);
    Mt19937 mt(seed);
    std::vector<uint8_t> hit(r);
    std::vector<uint64_t> touched;
    touched.reserve(std::min<uint64_t>(n, r));
    double sum = 0, sumsq = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        touched.clear();
        uint64_t g = 0;
        for (uint64_t i = 0; i < n; ++i) {
            uint64_t chain = (uint64_t(mt.next() % sigma)) * sigma + (mt.next() % sigma);
            if (!hit[chain]) {
                hit[chain] = 1;
                touched.push_back(chain);
                ++g;
            }
        }
        for (uint64_t c : touched) hit[c] = 0;
        double v = 2.0 * double(g);
        sum += v;
        sumsq += v * v;
    }
    ReductionEstimate est;
    est.r = r;
    est.n = n;
    est.method = EstimateMethod::MonteCarlo;
    est.trials = trials;
    est.expected_length = sum / double(trials);
    if (trials > 1) {
        double var = (sumsq - sum * sum / double(trials)) / double(trials - 1);
        est.std_error = std::sqrt(std::max(0.0, var) / double(trials));
    }
    return est;
}

} // namespace hepfac
