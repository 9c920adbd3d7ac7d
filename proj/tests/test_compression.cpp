#include "doctest.h"

#include <cmath>
#include <deque>
#include <set>

#include "hepfac/compression.hpp"
#include "hepfac/corpus.hpp"
#include "hepfac/scan.hpp"
#include "naive_search.hpp"

using namespace hepfac;

namespace {

// Independent DAG walker: counts nodes reachable from the root.
uint32_t reachable_nodes(const Trie& t)
{
    std::vector<bool> seen(t.node_count(), false);
    std::deque<uint32_t> queue{0};
    seen[0] = true;
    uint32_t count = 0;
    while (!queue.empty()) {
        uint32_t u = queue.front();
        queue.pop_front();
        ++count;
        uint32_t k = t.child_count(u), off = t.offset(u);
        for (uint32_t i = 0; i < k; ++i)
            if (!seen[off + i]) {
                seen[off + i] = true;
                queue.push_back(off + i);
            }
    }
    return count;
}

// Structural validity: every child run stays inside the array.
void check_offsets_valid(const Trie& t)
{
    for (uint32_t u = 0; u < t.node_count(); ++u) {
        uint32_t k = t.child_count(u);
        if (k == 0) {
            CHECK(t.offset(u) == 0);
        } else {
            CHECK(uint64_t(t.offset(u)) + k <= t.node_count());
        }
    }
}

std::vector<MatchResult> scan1(const Trie& t, const std::vector<uint8_t>& text)
{
    return scan(t, text, ScanConfig{1, 4096});
}

} // namespace

TEST_CASE("stage 1 on {AB, CD}: five nodes become four")
{
    Trie t = build_trie({"AB", "CD"}, Alphabet::standard(256));
    REQUIRE(t.node_count() == 5);
    auto [merged, stats] = merge_final_nodes(t);
    CHECK(stats.nodes_before == 5);
    CHECK(stats.nodes_after_stage1 == 4);
    CHECK(merged.node_count() == 4);
    CHECK(reachable_nodes(merged) == 4);
    CHECK(merged.stage() == CompressionStage::FinalMerged);
}

TEST_CASE("stage 1 on a single pattern changes nothing")
{
    Trie t = build_trie({"ACGT"}, Alphabet::standard(4));
    auto [merged, stats] = merge_final_nodes(t);
    CHECK(stats.nodes_after_stage1 == stats.nodes_before);
    CHECK(merged.node_count() == t.node_count());
}

TEST_CASE("stage 1 equation across 1000 random patterns, verified by a DAG walker")
{
    PatternSet set = gen_patterns(11, Alphabet::standard(52), 1000, 20);
    Trie t = build_trie(set);
    auto [merged, stats] = merge_final_nodes(t);
    CHECK(stats.nodes_after_stage1 == stats.nodes_before - 999);
    CHECK(reachable_nodes(merged) == merged.node_count());
    check_offsets_valid(merged);
}

TEST_CASE("stage-1 equation holds exactly for random prefix-free sets")
{
    InstanceRng rng(303);
    for (unsigned sigma : {4u, 52u, 256u}) {
        Alphabet a = Alphabet::standard(sigma);
        for (int rep = 0; rep < 10; ++rep) {
            size_t n = 1 + rng.rng() % 200;
            auto pats = rng.pattern_set(a, n, 20, 20); // equal length => prefix-free
            Trie t = build_trie(pats, a);
            auto [merged, stats] = merge_final_nodes(t);
            CHECK(stats.nodes_after_stage1 == stats.nodes_before - (n - 1));
        }
    }
}

TEST_CASE("a parent with two childless-terminal children keeps private cells")
{
    // {AB, AC} is prefix-free but the popcount layout cannot alias two
    // sibling slots onto one shared terminal; both runs stay private.
    Trie t = build_trie({"AB", "AC"}, Alphabet::standard(256));
    REQUIRE(t.node_count() == 4);
    auto [merged, stats] = merge_final_nodes(t);
    CHECK(merged.node_count() == 4);
    auto text = std::vector<uint8_t>{'A', 'B', 'A', 'C'};
    CHECK(scan1(merged, text) == scan1(t, text));
}

TEST_CASE("stage 1 rejects its own output")
{
    Trie t = build_trie({"AB", "CD"}, Alphabet::standard(256));
    auto [merged, stats] = merge_final_nodes(t);
    CHECK_THROWS(merge_final_nodes(merged));
    CHECK_THROWS(merge_tail_chains(t)); // stage 2 needs stage-1 input
}

TEST_CASE("stage 2 merges identical three-symbol tails: saves 3 nodes")
{
    Trie t = build_trie({"ABCXYZ", "DEFXYZ"}, Alphabet::standard(256));
    REQUIRE(t.node_count() == 13);
    auto [s1, st1] = merge_final_nodes(t);
    REQUIRE(s1.node_count() == 12);
    auto [s2, st2] = merge_tail_chains(s1);
    CHECK(st2.nodes_after_stage2 == 9);
    CHECK(s2.node_count() == 9);
    CHECK(s2.stage() == CompressionStage::TailMerged);
    check_offsets_valid(s2);

    // language unchanged
    std::string text_s = "xxABCXYZooDEFXYZyyABCXYyDEFXYZ";
    std::vector<uint8_t> text(text_s.begin(), text_s.end());
    CHECK(scan1(s2, text) == naive_find_all(text, t.patterns()));
}

TEST_CASE("partially matching tails share only the identical portion")
{
    // GOOGLE/PEOPLE: 3-suffixes differ (GLE vs PLE), so only the LE chain and
    // the terminal merge; two nodes saved.
    Trie t = build_trie({"GOOGLE", "PEOPLE"}, Alphabet::standard(256));
    REQUIRE(t.node_count() == 13);
    auto [s1, st1] = merge_final_nodes(t);
    REQUIRE(s1.node_count() == 12);
    auto [s2, st2] = merge_tail_chains(s1);
    CHECK(s2.node_count() == 10);

    InstanceRng rng(7);
    Alphabet a = Alphabet::standard(256);
    auto text = rng.text(a, 8192);
    rng.plant(text, "GOOGLE", 100);
    rng.plant(text, "PEOPLE", 500);
    rng.plant(text, "PEOPLE", 505);
    CHECK(scan1(s2, text) == naive_find_all(text, t.patterns()));
}

TEST_CASE("stage 2 is a no-op when all three-symbol suffixes are distinct")
{
    Trie t = build_trie({"AAAAAA", "CCCCCC", "GGGGGG"}, Alphabet::standard(4));
    auto [s1, st1] = merge_final_nodes(t);
    auto [s2, st2] = merge_tail_chains(s1);
    CHECK(s2.node_count() == s1.node_count());
}

TEST_CASE("patterns shorter than four symbols are exempt from stage 2")
{
    Trie t = build_trie({"ABZ", "CDZ", "EFZ"}, Alphabet::standard(256));
    auto [s1, st1] = merge_final_nodes(t);
    auto [s2, st2] = merge_tail_chains(s1);
    CHECK(s2.node_count() == s1.node_count());
    std::string text_s = "ABZCDZEFZ";
    std::vector<uint8_t> text(text_s.begin(), text_s.end());
    CHECK(scan1(s2, text) == naive_find_all(text, t.patterns()));
}

TEST_CASE("language preservation under both stages, including prefix patterns")
{
    InstanceRng rng(404);
    for (unsigned sigma : {4u, 52u}) {
        Alphabet a = Alphabet::standard(sigma);
        for (int rep = 0; rep < 8; ++rep) {
            auto pats = rng.pattern_set(a, 20 + rng.rng() % 60, 2, 12);
            // sprinkle in some proper prefixes of existing patterns
            std::vector<std::string> with_prefixes = pats;
            for (size_t i = 0; i < pats.size(); i += 7) {
                if (pats[i].size() >= 4) {
                    std::string pre = pats[i].substr(0, pats[i].size() - 2);
                    if (std::find(with_prefixes.begin(), with_prefixes.end(), pre) ==
                        with_prefixes.end())
                        with_prefixes.push_back(pre);
                }
            }
            Trie t = build_trie(with_prefixes, a);
            auto text = rng.text(a, 2000);
            for (size_t i = 0; i < with_prefixes.size(); i += 3)
                rng.plant(text, with_prefixes[i], rng.rng() % 1900);

            auto expected = naive_find_all(text, with_prefixes);
            auto [s1, st1] = merge_final_nodes(t);
            auto [s2, st2] = merge_tail_chains(s1);
            CHECK(scan1(t, text) == expected);
            CHECK(scan1(s1, text) == expected);
            CHECK(scan1(s2, text) == expected);
            CHECK(s2.node_count() <= s1.node_count());
            check_offsets_valid(s2);
        }
    }
}

TEST_CASE("reduction is stronger on smaller alphabets")
{
    const uint64_t n = 500;
    double red4 = 0, red52 = 0;
    {
        PatternSet set = gen_patterns(21, Alphabet::standard(4), n, 20);
        auto [out, stats] = compress(build_trie(set));
        red4 = stats.reduction_percent;
    }
    {
        PatternSet set = gen_patterns(21, Alphabet::standard(52), n, 20);
        auto [out, stats] = compress(build_trie(set));
        red52 = stats.reduction_percent;
    }
    CHECK(red4 >= red52);
}

TEST_CASE("expected suffix space is sigma squared")
{
    CHECK(expected_suffix_space(4) == 16);
    CHECK(expected_suffix_space(52) == 2704);
    CHECK(expected_suffix_space(256) == 65536);
}

TEST_CASE("printed-formula reading evaluated against exact integer arithmetic")
{
    // Independent evaluation at sigma=4, n=8 with exact 64-bit binomials:
    //   sum_i C(16,i) * C(7,i) / C(23,16) * 2i
    auto binom = [](uint64_t a, uint64_t b) -> uint64_t {
        if (b > a) return 0;
        uint64_t r = 1;
        for (uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    double expect = 0;
    for (uint64_t i = 1; i <= 8; ++i)
        expect += double(binom(16, i) * binom(7, i)) * 2.0 * double(i);
    expect /= double(binom(23, 16));
    CHECK(expected_reduced_length_formula(4, 8) == doctest::Approx(expect).epsilon(1e-9));

    // sigma=52, n=100: collisions negligible, so the estimate approaches 2n.
    CHECK(expected_reduced_length_formula(52, 100) == doctest::Approx(200).epsilon(0.06));

    // verbatim reading yields 0 at n=1 (the multiset bracket C(0,1) vanishes)
    CHECK(expected_reduced_length_formula(4, 1) == 0.0);
}

TEST_CASE("Monte-Carlo tail estimator")
{
    SUBCASE("n=1 gives exactly 2 in every trial")
    {
        auto est = expected_reduced_length_oracle(4, 1, 1000, 3);
        CHECK(est.expected_length == 2.0);
        CHECK(est.std_error == 0.0);
    }
    SUBCASE("matches the closed-form occupancy expectation at sigma=4, n=8")
    {
        auto est = expected_reduced_length_oracle(4, 8, 100000, 17);
        double closed = 2.0 * 16.0 * (1.0 - std::pow(15.0 / 16.0, 8));
        CHECK(std::abs(est.expected_length - closed) <= 3.0 * est.std_error);
        CHECK(est.r == 16);
    }
    SUBCASE("binary alphabet saturates at 2r = 8")
    {
        auto est = expected_reduced_length_oracle(2, 200, 2000, 9);
        CHECK(est.expected_length == doctest::Approx(8.0).epsilon(1e-6));
    }
}

TEST_CASE("compression stats JSON carries all five fields")
{
    Trie t = build_trie({"ABCXYZ", "DEFXYZ"}, Alphabet::standard(256));
    auto [out, stats] = compress(t);
    std::string js = stats.to_json();
    CHECK(js.find("\"nodes_before\":13") != std::string::npos);
    CHECK(js.find("\"nodes_after_stage1\":12") != std::string::npos);
    CHECK(js.find("\"nodes_after_stage2\":9") != std::string::npos);
    CHECK(js.find("\"pattern_count\":2") != std::string::npos);
    CHECK(js.find("reduction_percent") != std::string::npos);
}
