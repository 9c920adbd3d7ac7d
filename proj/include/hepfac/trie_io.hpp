#ifndef HEPFAC_TRIE_IO_HPP
#define HEPFAC_TRIE_IO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hepfac/trie.hpp"

namespace hepfac {

// Binary trie format (all integers little-endian):
//
//   header      magic "HTRI", version u16, sigma u16, node_count u32,
//               words_per_bitmap u16
//   node array  per node: bitmap words, then the offset word (terminal flag
//               in the MSB)
//   dictionary  count u32; per entry: length u16, raw pattern bytes, id u32
//   trailer     magic "HTRX", version u16, compression stage u8,
//               has_depth_limit u8, depth_limit u16,
//               alphabet_len u16, alphabet bytes
//
// The trailer is an extension; everything before it is self-contained and a
// reader unaware of the trailer can stop at the end of the dictionary (a
// missing trailer is interpreted as an uncompressed trie over the standard
// alphabet of the stored sigma).
std::vector<uint8_t> save_trie_bytes(const Trie& trie);
void save_trie(const Trie& trie, const std::string& path);

Trie load_trie_bytes(std::span<const uint8_t> bytes);
Trie load_trie(const std::string& path);

} // namespace hepfac

#endif
