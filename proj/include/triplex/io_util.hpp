#ifndef TRIPLEX_IO_UTIL_HPP
#define TRIPLEX_IO_UTIL_HPP

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace triplex::io {

// All on-disk integers are little-endian.

inline void write_u8(std::ostream& os, uint8_t v) {
    os.put(static_cast<char>(v));
}

inline void write_u32(std::ostream& os, uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(b, 4);
}

inline void write_u64(std::ostream& os, uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(b, 8);
}

inline uint8_t read_u8(std::istream& is) {
    int c = is.get();
    if (c == EOF) throw std::runtime_error("unexpected end of stream");
    return static_cast<uint8_t>(c);
}

inline uint32_t read_u32(std::istream& is) {
    char b[4];
    if (!is.read(b, 4)) throw std::runtime_error("unexpected end of stream");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<uint8_t>(b[i])) << (8 * i);
    return v;
}

inline uint64_t read_u64(std::istream& is) {
    char b[8];
    if (!is.read(b, 8)) throw std::runtime_error("unexpected end of stream");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<uint8_t>(b[i])) << (8 * i);
    return v;
}

inline void write_u64_vec(std::ostream& os, const std::vector<uint64_t>& v) {
    write_u64(os, v.size());
    for (uint64_t x : v) write_u64(os, x);
}

inline std::vector<uint64_t> read_u64_vec(std::istream& is) {
    uint64_t k = read_u64(is);
    std::vector<uint64_t> v(k);
    for (uint64_t i = 0; i < k; ++i) v[i] = read_u64(is);
    return v;
}

inline void write_string(std::ostream& os, const std::string& s) {
    write_u64(os, s.size());
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string read_string(std::istream& is) {
    uint64_t k = read_u64(is);
    std::string s(k, '\0');
    if (k && !is.read(s.data(), static_cast<std::streamsize>(k)))
        throw std::runtime_error("unexpected end of stream");
    return s;
}

// CRC-32 (IEEE 802.3), used to checksum container sections.
inline uint32_t crc32(const void* data, size_t len, uint32_t seed = 0) {
    static const auto table = [] {
        std::vector<uint32_t> t(256);
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    uint32_t c = seed ^ 0xFFFFFFFFu;
    const auto* p = static_cast<const uint8_t*>(data);
    for (size_t i = 0; i < len; ++i) c = table[(c ^ p[i]) & 0xFF] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

}  // namespace triplex::io

#endif
