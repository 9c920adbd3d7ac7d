#ifndef HEPFAC_CORPUS_HPP
#define HEPFAC_CORPUS_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hepfac/alphabet.hpp"

namespace hepfac {

// MT19937 source for all synthetic data. std::mt19937 implements exactly the
// reference algorithm (624-word state, standard seeding), which keeps every
// generated artifact bit-reproducible across platforms.
class Mt19937 {
public:
    explicit Mt19937(uint32_t seed = 5489u) : eng_(seed) {}
    uint32_t next() { return eng_(); }

private:
    std::mt19937 eng_;
};

// Duplicate-free ordered pattern list over one alphabet.
struct PatternSet {
    std::vector<std::string> patterns;
    Alphabet alphabet = Alphabet::standard(2);

    // Validates: non-empty patterns, no duplicates, all bytes in the alphabet.
    static PatternSet create(std::vector<std::string> patterns, Alphabet alphabet);
};

// `count` distinct uniform strings of `length` symbols. Duplicates are
// rejection-sampled. Throws when count > sigma^length (uniqueness infeasible)
// or count == 0 / length == 0.
PatternSet gen_patterns(uint32_t seed, const Alphabet& alphabet, uint64_t count, uint32_t length);

// Uniform symbols drawn as mt_next() mod sigma, mapped through the alphabet.
// The modulo bias at sigma not dividing 2^32 is at most sigma/2^32.
std::vector<uint8_t> gen_corpus(uint32_t seed, const Alphabet& alphabet, uint64_t bytes);

// Splices `occurrences` pattern copies into the corpus at uniform offsets
// (patterns chosen round-robin; copies may overlap earlier ones).
void plant_patterns(std::vector<uint8_t>& corpus, const PatternSet& patterns,
                    uint64_t occurrences, uint32_t seed);

// SHA-256 hex digest; used to assert dataset uniqueness.
std::string sha256_hex(std::span<const uint8_t> data);
std::string sha256_hex(const std::string& data);

// Pattern file I/O: one pattern per line; hex-escaped when the alphabet
// contains the newline byte.
enum class PatternEncoding { Raw, Hex };
void save_patterns(const PatternSet& set, const std::string& path);
PatternSet load_patterns(const std::string& path, const Alphabet& alphabet, PatternEncoding enc);

} // namespace hepfac

#endif
