#include "doctest.h"

#include <cstdio>

#include "hepfac/compression.hpp"
#include "hepfac/prefix.hpp"
#include "hepfac/scan.hpp"
#include "hepfac/trie_io.hpp"
#include "naive_search.hpp"

using namespace hepfac;

namespace {

// Hand-assembled expected bytes for the smallest interesting trie: pattern
// "A" over the alphabet {A, B}.
std::vector<uint8_t> golden_single_pattern()
{
    std::vector<uint8_t> b;
    auto u16 = [&](uint16_t x) {
        b.push_back(uint8_t(x & 0xFF));
        b.push_back(uint8_t(x >> 8));
    };
    auto u32 = [&](uint32_t x) {
        for (int i = 0; i < 4; ++i) b.push_back(uint8_t((x >> (8 * i)) & 0xFF));
    };
    b.insert(b.end(), {'H', 'T', 'R', 'I'});
    u16(1); // version
    u16(2); // sigma
    u32(2); // node count
    u16(1); // words per bitmap
    // root: bit 0 set (symbol 'A'), offset 1
    u32(0x00000001);
    u32(0x00000001);
    // leaf: empty bitmap, offset 0, terminal flag in the MSB
    u32(0x00000000);
    u32(0x80000000);
    // dictionary: one entry, "A", id 0
    u32(1);
    u16(1);
    b.push_back('A');
    u32(0);
    // trailer: stage 0, no depth limit, alphabet "AB"
    b.insert(b.end(), {'H', 'T', 'R', 'X'});
    u16(1);
    b.push_back(0);
    b.push_back(0);
    u16(0);
    u16(2);
    b.push_back('A');
    b.push_back('B');
    return b;
}

} // namespace

TEST_CASE("serialized bytes match the documented layout exactly")
{
    Trie t = build_trie({"A"}, Alphabet::from_symbols(std::string("AB")));
    CHECK(save_trie_bytes(t) == golden_single_pattern());
}

TEST_CASE("round trip preserves cells, dictionary and metadata")
{
    InstanceRng rng(2024);
    Alphabet a = Alphabet::standard(52);
    auto pats = rng.pattern_set(a, 40, 4, 16);
    Trie t = build_trie(pats, a);

    SUBCASE("uncompressed")
    {
        Trie back = load_trie_bytes(save_trie_bytes(t));
        CHECK(back.cells() == t.cells());
        CHECK(back.patterns() == t.patterns());
        CHECK(back.stage() == t.stage());
        CHECK(back.alphabet() == t.alphabet());
        CHECK_FALSE(back.depth_limit());
    }
    SUBCASE("compressed DAG")
    {
        auto [reduced, stats] = compress(t);
        Trie back = load_trie_bytes(save_trie_bytes(reduced));
        CHECK(back.cells() == reduced.cells());
        CHECK(back.stage() == CompressionStage::TailMerged);
    }
    SUBCASE("truncated trie rebuilds its verification buckets")
    {
        auto [trunc, noop] = truncate(t, 5);
        REQUIRE_FALSE(noop);
        Trie back = load_trie_bytes(save_trie_bytes(trunc));
        REQUIRE(back.depth_limit());
        CHECK(*back.depth_limit() == 5);
        for (uint32_t u = 0; u < trunc.node_count(); ++u) {
            const auto* orig = trunc.bucket(u);
            const auto* loaded = back.bucket(u);
            CHECK((orig == nullptr) == (loaded == nullptr));
            if (orig && loaded) CHECK(*orig == *loaded);
        }
        // loaded trie scans identically
        auto text = rng.text(a, 4096);
        rng.plant(text, pats[3], 100);
        ScanConfig cfg{1, 512};
        CHECK(scan(trunc, text, cfg) == scan(back, text, cfg));
    }
}

TEST_CASE("file round trip")
{
    Trie t = build_trie({"ACGT", "ACCA"}, Alphabet::standard(4));
    std::string path = "test_roundtrip.htri";
    save_trie(t, path);
    Trie back = load_trie(path);
    CHECK(back.cells() == t.cells());
    std::remove(path.c_str());
}

TEST_CASE("malformed inputs are rejected")
{
    Trie t = build_trie({"A"}, Alphabet::from_symbols(std::string("AB")));
    auto good = save_trie_bytes(t);

    SUBCASE("bad magic")
    {
        auto bad = good;
        bad[0] = 'X';
        CHECK_THROWS(load_trie_bytes(bad));
    }
    SUBCASE("truncated file")
    {
        auto bad = good;
        bad.resize(10);
        CHECK_THROWS(load_trie_bytes(bad));
    }
    SUBCASE("bitmap width mismatch")
    {
        auto bad = good;
        bad[12] = 3; // words_per_bitmap
        CHECK_THROWS(load_trie_bytes(bad));
    }
    SUBCASE("missing file") { CHECK_THROWS(load_trie("no_such_file.htri")); }
}

TEST_CASE("spec-prefix readers: trailer strictly follows the dictionary")
{
    Trie t = build_trie({"A"}, Alphabet::from_symbols(std::string("AB")));
    auto bytes = save_trie_bytes(t);
    // header(14) + cells(2*2*4) + dict(4 + 2+1+4) = 41 bytes before trailer
    size_t spec_end = 14 + 16 + 11;
    REQUIRE(bytes.size() > spec_end + 4);
    CHECK(bytes[spec_end + 0] == 'H');
    CHECK(bytes[spec_end + 1] == 'T');
    CHECK(bytes[spec_end + 2] == 'R');
    CHECK(bytes[spec_end + 3] == 'X');
}
