#include "hepfac/trie_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "hepfac/prefix.hpp"
#include "trie_access.hpp"

namespace hepfac {

namespace {

void put_u16(std::vector<uint8_t>& v, uint16_t x)
{
    v.push_back(uint8_t(x & 0xFF));
    v.push_back(uint8_t(x >> 8));
}

void put_u32(std::vector<uint8_t>& v, uint32_t x)
{
    for (int i = 0; i < 4; ++i) v.push_back(uint8_t((x >> (8 * i)) & 0xFF));
}

struct Reader {
    std::span<const uint8_t> data;
    size_t pos = 0;

    void need(size_t n) const
    {
        if (pos + n > data.size()) throw std::runtime_error("trie file truncated");
    }
    uint16_t u16()
    {
        need(2);
        uint16_t x = uint16_t(data[pos]) | uint16_t(data[pos + 1]) << 8;
        pos += 2;
        return x;
    }
    uint32_t u32()
    {
        need(4);
        uint32_t x = 0;
        for (int i = 0; i < 4; ++i) x |= uint32_t(data[pos + i]) << (8 * i);
        pos += 4;
        return x;
    }
    void bytes(void* out, size_t n)
    {
        need(n);
        std::memcpy(out, data.data() + pos, n);
        pos += n;
    }
    bool magic(const char* m)
    {
        if (pos + 4 > data.size() || std::memcmp(data.data() + pos, m, 4) != 0) return false;
        pos += 4;
        return true;
    }
};

} // namespace

std::vector<uint8_t> save_trie_bytes(const Trie& t)
{
    std::vector<uint8_t> out;
    out.reserve(16 + t.cells().size() * 4);
    out.insert(out.end(), {'H', 'T', 'R', 'I'});
    put_u16(out, 1);
    put_u16(out, uint16_t(t.alphabet().size() & 0xFFFF)); // sigma 256 stored as 256 <= u16
    put_u32(out, t.node_count());
    put_u16(out, uint16_t(t.words_per_bitmap()));
    for (uint32_t cell : t.cells()) put_u32(out, cell);

    put_u32(out, uint32_t(t.patterns().size()));
    for (uint32_t id = 0; id < t.patterns().size(); ++id) {
        const std::string& p = t.patterns()[id];
        put_u16(out, uint16_t(p.size()));
        out.insert(out.end(), p.begin(), p.end());
        put_u32(out, id);
    }

    out.insert(out.end(), {'H', 'T', 'R', 'X'});
    put_u16(out, 1);
    out.push_back(uint8_t(t.stage()));
    out.push_back(t.depth_limit() ? 1 : 0);
    put_u16(out, uint16_t(t.depth_limit().value_or(0)));
    const auto& syms = t.alphabet().symbols();
    put_u16(out, uint16_t(syms.size()));
    out.insert(out.end(), syms.begin(), syms.end());
    return out;
}

void save_trie(const Trie& t, const std::string& path)
{
    auto bytes = save_trie_bytes(t);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

Trie load_trie_bytes(std::span<const uint8_t> bytes)
{
    Reader r{bytes};
    if (!r.magic("HTRI")) throw std::runtime_error("not a trie file (bad magic)");
    uint16_t version = r.u16();
    if (version != 1) throw std::runtime_error("unsupported trie format version");
    uint32_t sigma = r.u16();
    if (sigma == 0) sigma = 256; // u16 wrap guard for writers storing 256 as 0
    if (sigma < 2 || sigma > 256) throw std::runtime_error("invalid sigma in trie file");
    uint32_t node_count = r.u32();
    uint16_t words = r.u16();
    if (words != (sigma + 31) / 32) throw std::runtime_error("bitmap width mismatch");
    if (node_count == 0 || node_count > Trie::max_nodes)
        throw std::runtime_error("invalid node count");

    std::vector<uint32_t> cells(size_t(node_count) * (words + 1));
    for (auto& c : cells) c = r.u32();

    uint32_t pattern_count = r.u32();
    std::vector<std::string> patterns(pattern_count);
    std::vector<bool> seen(pattern_count, false);
    for (uint32_t i = 0; i < pattern_count; ++i) {
        uint16_t len = r.u16();
        std::string p(len, '\0');
        r.bytes(p.data(), len);
        uint32_t id = r.u32();
        if (id >= pattern_count || seen[id]) throw std::runtime_error("invalid pattern id");
        seen[id] = true;
        patterns[id] = std::move(p);
    }

    CompressionStage stage = CompressionStage::None;
    std::optional<uint32_t> depth_limit;
    Alphabet alphabet = Alphabet::standard(sigma);
    if (r.pos < bytes.size() && r.magic("HTRX")) {
        uint16_t xver = r.u16();
        if (xver != 1) throw std::runtime_error("unsupported trie trailer version");
        uint8_t st;
        r.bytes(&st, 1);
        if (st > 2) throw std::runtime_error("invalid compression stage");
        stage = CompressionStage(st);
        uint8_t has_depth;
        r.bytes(&has_depth, 1);
        uint16_t depth = r.u16();
        if (has_depth) depth_limit = depth;
        uint16_t alen = r.u16();
        std::vector<uint8_t> syms(alen);
        r.bytes(syms.data(), alen);
        alphabet = Alphabet::from_symbols(std::span<const uint8_t>(syms.data(), syms.size()));
        if (alphabet.size() != sigma) throw std::runtime_error("alphabet/sigma mismatch");
    }

    // Structural sanity: offsets must stay inside the array.
    for (uint32_t n = 0; n < node_count; ++n) {
        uint32_t off = cells[size_t(n) * (words + 1) + words] & Trie::offset_mask;
        if (off >= node_count && off != 0) throw std::runtime_error("offset out of range");
    }

    Trie t = detail::TrieAccess::make(std::move(alphabet), node_count, std::move(cells),
                                      std::move(patterns), stage, depth_limit);
    if (depth_limit)
        detail::TrieAccess::set_buckets(t, build_verification_buckets(t, *depth_limit));
    return t;
}

Trie load_trie(const std::string& path)
{
    std::ifstream f(path, std::ios::binary | std::ios::ate);
    if (!f) throw std::runtime_error("cannot open " + path);
    auto size = size_t(f.tellg());
    f.seekg(0);
    std::vector<uint8_t> bytes(size);
    f.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(size));
    if (!f) throw std::runtime_error("read failed: " + path);
    return load_trie_bytes(bytes);
}

} // namespace hepfac
