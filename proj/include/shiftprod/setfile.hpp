#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "shiftprod/digest.hpp"
#include "shiftprod/errors.hpp"
#include "shiftprod/intset.hpp"

// Binary set-file format, bit-exact:
//   bytes 0..3   magic "ISET"
//   bytes 4..7   version, u32 little-endian
//   bytes 8..15  hi, u64 little-endian
//   then ceil(hi/8) bytes of little-endian bit data; bit (n-1) of the
//   stream (byte n/8, bit n%8 counting from the LSB) encodes membership
//   of n. Bits at positions >= hi are zero.

namespace shiftprod {

inline constexpr std::uint32_t kSetFileVersion = 1;
inline constexpr char kSetFileMagic[4] = {'I', 'S', 'E', 'T'};

inline std::vector<unsigned char> serialize_set(const IntSet& s) {
    const std::uint64_t hi = s.hi();
    const std::size_t data_bytes = static_cast<std::size_t>((hi + 7) / 8);
    std::vector<unsigned char> out;
    out.reserve(16 + data_bytes);
    out.insert(out.end(), kSetFileMagic, kSetFileMagic + 4);
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<unsigned char>((kSetFileVersion >> (8 * i)) & 0xFF));
    }
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<unsigned char>((hi >> (8 * i)) & 0xFF));
    }
    for (std::size_t k = 0; k < data_bytes; ++k) {
        const std::uint64_t word = s.words()[k / 8];
        out.push_back(static_cast<unsigned char>((word >> (8 * (k % 8))) & 0xFF));
    }
    return out;
}

inline IntSet deserialize_set(const std::vector<unsigned char>& bytes) {
    if (bytes.size() < 16) {
        throw MalformedInput("set file shorter than its 16-byte header");
    }
    if (!std::equal(kSetFileMagic, kSetFileMagic + 4, bytes.begin())) {
        throw MalformedInput("set file magic is not \"ISET\"");
    }
    std::uint32_t version = 0;
    for (int i = 0; i < 4; ++i) {
        version |= static_cast<std::uint32_t>(bytes[4 + i]) << (8 * i);
    }
    if (version != kSetFileVersion) {
        throw MalformedInput("unsupported set file version " + std::to_string(version));
    }
    std::uint64_t hi = 0;
    for (int i = 0; i < 8; ++i) {
        hi |= static_cast<std::uint64_t>(bytes[8 + i]) << (8 * i);
    }
    if (hi == 0) {
        throw MalformedInput("set file declares an empty window");
    }
    const std::size_t data_bytes = static_cast<std::size_t>((hi + 7) / 8);
    if (bytes.size() != 16 + data_bytes) {
        throw MalformedInput("set file length does not match its declared window");
    }
    std::vector<std::uint64_t> words(detail::words_for(hi), 0);
    for (std::size_t k = 0; k < data_bytes; ++k) {
        words[k / 8] |= static_cast<std::uint64_t>(bytes[16 + k]) << (8 * (k % 8));
    }
    if ((words.back() & ~detail::tail_mask(hi)) != 0) {
        throw MalformedInput("set file has bits beyond its declared window");
    }
    return IntSet::from_raw_words(Window(hi), std::move(words));
}

inline void write_set_file(const IntSet& s, const std::filesystem::path& path) {
    const std::vector<unsigned char> bytes = serialize_set(s);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error("write failed: " + path.string());
    }
}

inline std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return bytes;
}

inline IntSet read_set_file(const std::filesystem::path& path) {
    return deserialize_set(read_file_bytes(path));
}

/// Digest of the full serialized byte stream (header included); the value
/// certificates use to pin a set.
inline std::string set_digest(const IntSet& s) {
    const std::vector<unsigned char> bytes = serialize_set(s);
    return sha256_hex(std::span<const unsigned char>(bytes.data(), bytes.size()));
}

}  // namespace shiftprod
