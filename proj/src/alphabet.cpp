#include "hepfac/alphabet.hpp"

#include <stdexcept>

namespace hepfac {

Alphabet Alphabet::from_symbols(std::span<const uint8_t> symbols)
{
    if (symbols.size() < 2 || symbols.size() > 256)
        throw std::invalid_argument("alphabet size must be in 2..256, got " +
                                    std::to_string(symbols.size()));
    Alphabet a;
    a.from_symbol_.reserve(symbols.size());
    for (size_t i = 0; i < symbols.size(); ++i) {
        uint8_t b = symbols[i];
        if (a.to_symbol_[b] >= 0)
            throw std::invalid_argument("duplicate alphabet byte 0x" + [b] {
                static const char* hex = "0123456789abcdef";
                return std::string{hex[b >> 4], hex[b & 15]};
            }());
        a.to_symbol_[b] = static_cast<int16_t>(i);
        a.from_symbol_.push_back(b);
    }
    return a;
}

Alphabet Alphabet::from_symbols(const std::string& symbols)
{
    return from_symbols(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(symbols.data()), symbols.size()));
}

Alphabet Alphabet::standard(unsigned sigma)
{
    if (sigma == 4)
        return from_symbols(std::string("ACGT"));

    std::vector<uint8_t> universe;
    universe.reserve(256);
    if (sigma == 256) {
        for (unsigned b = 0; b < 256; ++b) universe.push_back(static_cast<uint8_t>(b));
    } else {
        for (char c = 'a'; c <= 'z'; ++c) universe.push_back(static_cast<uint8_t>(c));
        for (char c = 'A'; c <= 'Z'; ++c) universe.push_back(static_cast<uint8_t>(c));
        for (char c = '0'; c <= '9'; ++c) universe.push_back(static_cast<uint8_t>(c));
        for (unsigned b = 33; b < 127; ++b) {
            auto ub = static_cast<uint8_t>(b);
            bool seen = (ub >= 'a' && ub <= 'z') || (ub >= 'A' && ub <= 'Z') ||
                        (ub >= '0' && ub <= '9');
            if (!seen) universe.push_back(ub);
        }
        for (unsigned b = 0; b < 256; ++b) {
            auto ub = static_cast<uint8_t>(b);
            if (ub >= 33 && ub < 127) continue;
            universe.push_back(ub);
        }
    }
    if (sigma < 2 || sigma > universe.size())
        throw std::invalid_argument("alphabet size must be in 2..256, got " +
                                    std::to_string(sigma));
    universe.resize(sigma);
    return from_symbols(std::span<const uint8_t>(universe.data(), universe.size()));
}

} // namespace hepfac
