#include "doctest.h"

#include "hepfac/alphabet.hpp"

using namespace hepfac;

TEST_CASE("alphabet positional mapping")
{
    Alphabet a = Alphabet::from_symbols(std::string("ACGT"));
    CHECK(a.size() == 4);
    CHECK(a.symbol_of('A') == 0);
    CHECK(a.symbol_of('G') == 2);
    CHECK(a.byte_of(2) == 'G');
    CHECK(a.symbol_of('X') == -1);
}

TEST_CASE("alphabet of all 256 bytes is identity-shaped")
{
    Alphabet a = Alphabet::standard(256);
    CHECK(a.size() == 256);
    for (unsigned b = 0; b < 256; b += 17) {
        CHECK(a.symbol_of(uint8_t(b)) == int(b));
        CHECK(a.byte_of(b) == uint8_t(b));
    }
}

TEST_CASE("sigma-52 alphabet is a-z then A-Z")
{
    Alphabet a = Alphabet::standard(52);
    CHECK(a.size() == 52);
    CHECK(a.symbol_of('a') == 0);
    CHECK(a.symbol_of('z') == 25);
    CHECK(a.symbol_of('A') == 26);
    CHECK(a.symbol_of('Z') == 51);
    CHECK_FALSE(a.contains('0'));
}

TEST_CASE("round trip: from_symbol of to_symbol is identity")
{
    for (unsigned sigma : {2u, 4u, 52u, 94u, 200u, 256u}) {
        Alphabet a = Alphabet::standard(sigma);
        REQUIRE(a.size() == sigma);
        for (unsigned s = 0; s < sigma; ++s) CHECK(a.symbol_of(a.byte_of(s)) == int(s));
    }
}

TEST_CASE("alphabet rejections")
{
    CHECK_THROWS(Alphabet::from_symbols(std::string("AA")));
    CHECK_THROWS(Alphabet::from_symbols(std::string("A")));
    CHECK_THROWS(Alphabet::standard(1));
    CHECK_THROWS(Alphabet::standard(257));
    std::vector<uint8_t> many(300, 0);
    CHECK_THROWS(Alphabet::from_symbols(std::span<const uint8_t>(many.data(), many.size())));
}
