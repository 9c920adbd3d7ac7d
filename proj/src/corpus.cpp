#include "hepfac/corpus.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace hepfac {

PatternSet PatternSet::create(std::vector<std::string> patterns, Alphabet alphabet)
{
    std::unordered_set<std::string> seen;
    for (const auto& p : patterns) {
        if (p.empty()) throw std::invalid_argument("empty pattern");
        if (!seen.insert(p).second) throw std::invalid_argument("duplicate pattern");
        for (char ch : p) {
            auto b = static_cast<uint8_t>(ch);
            if (!alphabet.contains(b))
                throw std::invalid_argument("pattern byte 0x" + [b] {
                    static const char* hex = "0123456789abcdef";
                    return std::string{hex[b >> 4], hex[b & 15]};
                }() + " not in alphabet");
        }
    }
    PatternSet set;
    set.patterns = std::move(patterns);
    set.alphabet = std::move(alphabet);
    return set;
}

PatternSet gen_patterns(uint32_t seed, const Alphabet& alphabet, uint64_t count, uint32_t length)
{
    if (count == 0) throw std::invalid_argument("pattern count must be >= 1");
    if (length == 0) throw std::invalid_argument("pattern length must be >= 1");
    const unsigned sigma = alphabet.size();

    // Uniqueness feasible only when sigma^length >= count.
    double log_space = static_cast<double>(length) * std::log2(static_cast<double>(sigma));
    if (log_space < 64.0 &&
        static_cast<long double>(count) > std::pow(static_cast<long double>(sigma), length))
        throw std::invalid_argument("cannot generate " + std::to_string(count) +
                                    " distinct patterns of length " + std::to_string(length) +
                                    " over sigma=" + std::to_string(sigma));

    Mt19937 mt(seed);
    std::unordered_set<std::string> seen;
    std::vector<std::string> out;
    out.reserve(count);
    std::string buf(length, '\0');
    while (out.size() < count) {
        for (uint32_t i = 0; i < length; ++i)
            buf[i] = static_cast<char>(alphabet.byte_of(mt.next() % sigma));
        if (seen.insert(buf).second) out.push_back(buf);
    }
    PatternSet set;
    set.patterns = std::move(out);
    set.alphabet = alphabet;
    return set;
}

std::vector<uint8_t> gen_corpus(uint32_t seed, const Alphabet& alphabet, uint64_t bytes)
{
    if (bytes == 0) throw std::invalid_argument("corpus size must be >= 1");
    const unsigned sigma = alphabet.size();
    Mt19937 mt(seed);
    std::vector<uint8_t> out(bytes);
    for (uint64_t i = 0; i < bytes; ++i) out[i] = alphabet.byte_of(mt.next() % sigma);
    return out;
}

void plant_patterns(std::vector<uint8_t>& corpus, const PatternSet& patterns,
                    uint64_t occurrences, uint32_t seed)
{
    if (patterns.patterns.empty() || corpus.empty()) return;
    Mt19937 mt(seed);
    for (uint64_t i = 0; i < occurrences; ++i) {
        const std::string& p = patterns.patterns[i % patterns.patterns.size()];
        if (p.size() > corpus.size()) continue;
        uint64_t span = corpus.size() - p.size() + 1;
        uint64_t off = ((uint64_t(mt.next()) << 32) | mt.next()) % span;
        std::copy(p.begin(), p.end(), corpus.begin() + static_cast<ptrdiff_t>(off));
    }
}

std::string sha256_hex(std::span<const uint8_t> data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

std::string sha256_hex(const std::string& data)
{
    return sha256_hex(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

void save_patterns(const PatternSet& set, const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    const bool hex = set.alphabet.has_newline();
    static const char* digits = "0123456789abcdef";
    for (const auto& p : set.patterns) {
        if (hex) {
            for (char ch : p) {
                auto b = static_cast<uint8_t>(ch);
                f.put(digits[b >> 4]);
                f.put(digits[b & 15]);
            }
        } else {
            f.write(p.data(), static_cast<std::streamsize>(p.size()));
        }
        f.put('\n');
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

PatternSet load_patterns(const std::string& path, const Alphabet& alphabet, PatternEncoding enc)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> pats;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (enc == PatternEncoding::Hex) {
            if (line.size() % 2 != 0)
                throw std::runtime_error("odd-length hex pattern line in " + path);
            std::string raw;
            raw.reserve(line.size() / 2);
            auto nib = [&](char c) -> int {
                if (c >= '0' && c <= '9') return c - '0';
                if (c >= 'a' && c <= 'f') return c - 'a' + 10;
                if (c >= 'A' && c <= 'F') return c - 'A' + 10;
                throw std::runtime_error("invalid hex digit in " + path);
            };
            for (size_t i = 0; i < line.size(); i += 2)
                raw.push_back(static_cast<char>((nib(line[i]) << 4) | nib(line[i + 1])));
            pats.push_back(std::move(raw));
        } else {
            pats.push_back(line);
        }
    }
    return PatternSet::create(std::move(pats), alphabet);
}

} // namespace hepfac
