#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <set>

#include "hepfac/corpus.hpp"
#include "reference_mt19937.hpp"

using namespace hepfac;

TEST_CASE("MT19937 conforms to the reference algorithm")
{
    Mt19937 mt(5489);
    CHECK(mt.next() == 3499211612u); // first output for the canonical seed

    ReferenceMt19937 ref(5489);
    Mt19937 impl(5489);
    for (int i = 0; i < 1000; ++i) CHECK(impl.next() == ref.next());

    SUBCASE("other seeds")
    {
        for (uint32_t seed : {0u, 1u, 42u, 0xFFFFFFFFu}) {
            ReferenceMt19937 r(seed);
            Mt19937 m(seed);
            for (int i = 0; i < 700; ++i) REQUIRE(m.next() == r.next());
        }
    }
    SUBCASE("same seed twice gives identical streams")
    {
        Mt19937 a(123), b(123);
        for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    }
}

TEST_CASE("SHA-256 standard vectors")
{
    CHECK(sha256_hex(std::string{}) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex(std::string{"abc"}) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("gen_patterns produces distinct in-alphabet strings")
{
    Alphabet a = Alphabet::standard(4);
    PatternSet set = gen_patterns(42, a, 1000, 20);
    CHECK(set.patterns.size() == 1000);
    std::set<std::string> uniq(set.patterns.begin(), set.patterns.end());
    CHECK(uniq.size() == 1000);
    for (const auto& p : set.patterns) {
        CHECK(p.size() == 20);
        for (char ch : p) CHECK(a.contains(uint8_t(ch)));
    }
}

TEST_CASE("exhaustive pattern space is generated completely")
{
    Alphabet a = Alphabet::standard(2);
    PatternSet set = gen_patterns(3, a, 8, 3);
    std::set<std::string> got(set.patterns.begin(), set.patterns.end());
    CHECK(got.size() == 8); // all 2^3 strings
    for (const auto& p : got)
        for (char ch : p) CHECK((uint8_t(ch) == a.byte_of(0) || uint8_t(ch) == a.byte_of(1)));
}

TEST_CASE("gen_patterns rejections")
{
    Alphabet a = Alphabet::standard(2);
    CHECK_THROWS(gen_patterns(1, a, 9, 3)); // 2^3 < 9
    CHECK_THROWS(gen_patterns(1, a, 0, 3));
    CHECK_THROWS(gen_patterns(1, a, 1, 0));
    CHECK_NOTHROW(gen_patterns(1, a, 1, 0x7FFF)); // huge space is fine
}

TEST_CASE("gen_corpus determinism and distinctness")
{
    Alphabet a = Alphabet::standard(52);
    auto c1 = gen_corpus(7, a, 65536);
    auto c2 = gen_corpus(7, a, 65536);
    auto c3 = gen_corpus(8, a, 65536);
    CHECK(c1.size() == 65536);
    CHECK(sha256_hex(c1) == sha256_hex(c2));
    CHECK(sha256_hex(c1) != sha256_hex(c3));

    SUBCASE("five derived seeds give five distinct digests")
    {
        std::set<std::string> digests;
        for (uint32_t i = 0; i < 5; ++i) digests.insert(sha256_hex(gen_corpus(100 + i, a, 4096)));
        CHECK(digests.size() == 5);
    }
}

TEST_CASE("corpus symbols are uniform within 4 sigma per symbol")
{
    Alphabet a = Alphabet::standard(52);
    const uint64_t n = 10u << 20;
    auto corpus = gen_corpus(424242, a, n);
    std::vector<uint64_t> counts(256, 0);
    for (uint8_t b : corpus) ++counts[b];
    double p = 1.0 / 52;
    double mean = double(n) * p;
    double sd = std::sqrt(double(n) * p * (1 - p));
    for (unsigned s = 0; s < 52; ++s) {
        double dev = std::abs(double(counts[a.byte_of(s)]) - mean);
        CHECK(dev <= 4 * sd);
    }
    for (unsigned b = 0; b < 256; ++b)
        if (!a.contains(uint8_t(b))) CHECK(counts[b] == 0);
}

TEST_CASE("planted patterns appear in the corpus")
{
    Alphabet a = Alphabet::standard(4);
    PatternSet set = gen_patterns(5, a, 3, 10);
    auto corpus = gen_corpus(6, a, 8192);
    plant_patterns(corpus, set, 30, 777);
    size_t found = 0;
    for (const auto& p : set.patterns) {
        std::string hay(corpus.begin(), corpus.end());
        if (hay.find(p) != std::string::npos) ++found;
    }
    CHECK(found == 3);
}

TEST_CASE("pattern file round trip, raw and hex")
{
    SUBCASE("raw lines")
    {
        Alphabet a = Alphabet::standard(52);
        PatternSet set = gen_patterns(9, a, 50, 12);
        save_patterns(set, "pats_raw.txt");
        PatternSet back = load_patterns("pats_raw.txt", a, PatternEncoding::Raw);
        CHECK(back.patterns == set.patterns);
        std::remove("pats_raw.txt");
    }
    SUBCASE("hex lines when the alphabet contains newline")
    {
        Alphabet a = Alphabet::standard(256);
        CHECK(a.has_newline());
        PatternSet set = gen_patterns(9, a, 20, 8);
        save_patterns(set, "pats_hex.txt");
        PatternSet back = load_patterns("pats_hex.txt", a, PatternEncoding::Hex);
        CHECK(back.patterns == set.patterns);
        std::remove("pats_hex.txt");
    }
}

TEST_CASE("pattern set validation")
{
    Alphabet a = Alphabet::standard(4);
    CHECK_THROWS(PatternSet::create({"AC", "AC"}, a));
    CHECK_THROWS(PatternSet::create({""}, a));
    CHECK_THROWS(PatternSet::create({"AB"}, a)); // B outside ACGT
}
