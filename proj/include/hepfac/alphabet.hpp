#ifndef HEPFAC_ALPHABET_HPP
#define HEPFAC_ALPHABET_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hepfac {

// Symbol set of size sigma (2..256) with a byte <-> symbol-index mapping.
// Symbol indices are dense: the i-th symbol byte maps to index i.
class Alphabet {
public:
    // Builds an alphabet from an ordered list of distinct bytes.
    // Throws std::invalid_argument on duplicates or size outside 2..256.
    static Alphabet from_symbols(std::span<const uint8_t> symbols);
    static Alphabet from_symbols(const std::string& symbols);

    // Canonical alphabets used throughout the benchmarks:
    //   sigma == 4   -> "ACGT"
    //   sigma <= 94  -> prefix of a-z A-Z 0-9 then the remaining printable ASCII
    //   sigma == 256 -> identity mapping over all byte values
    //   otherwise    -> printable-first ordering, then remaining bytes ascending
    static Alphabet standard(unsigned sigma);

    unsigned size() const { return static_cast<unsigned>(from_symbol_.size()); }

    // -1 when the byte is not part of the alphabet.
    int symbol_of(uint8_t byte) const { return to_symbol_[byte]; }
    bool contains(uint8_t byte) const { return to_symbol_[byte] >= 0; }
    uint8_t byte_of(unsigned symbol) const { return from_symbol_[symbol]; }

    bool has_newline() const { return contains(uint8_t{'\n'}); }

    const std::vector<uint8_t>& symbols() const { return from_symbol_; }

    bool operator==(const Alphabet& other) const { return from_symbol_ == other.from_symbol_; }

private:
    Alphabet() { to_symbol_.fill(-1); }

    std::array<int16_t, 256> to_symbol_;
    std::vector<uint8_t> from_symbol_;
};

} // namespace hepfac

#endif
