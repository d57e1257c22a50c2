#ifndef TRIPLEX_INDEX_IO_HPP
#define TRIPLEX_INDEX_IO_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "triplex/io_util.hpp"

namespace triplex {

enum class Variant : uint8_t {
    ring_large = 0,
    ring_small = 1,
    vring_large = 2,
    vring_small = 3,
    uring_large = 4,
    uring_small = 5,
    rdfcsa_large = 6,
    rdfcsa_small = 7,
};

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::ring_large: return "ring-large";
        case Variant::ring_small: return "ring-small";
        case Variant::vring_large: return "vring-large";
        case Variant::vring_small: return "vring-small";
        case Variant::uring_large: return "uring-large";
        case Variant::uring_small: return "uring-small";
        case Variant::rdfcsa_large: return "rdfcsa-large";
        case Variant::rdfcsa_small: return "rdfcsa-small";
    }
    return "?";
}

inline std::optional<Variant> parse_variant(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(Variant::rdfcsa_small); ++i) {
        auto v = static_cast<Variant>(i);
        if (s == to_string(v)) return v;
    }
    return std::nullopt;
}

// Little-endian container: magic, version, variant tag, triple count, universe,
// then a table of (name, offset, length, crc32) entries followed by the payloads.
namespace container {

constexpr char kMagic[4] = {'T', 'P', 'L', 'X'};
constexpr uint32_t kVersion = 1;

struct Section {
    std::string name;
    std::string bytes;
};

inline void write(std::ostream& os, Variant variant, uint64_t n, uint64_t universe,
                  const std::vector<Section>& sections) {
    os.write(kMagic, 4);
    io::write_u32(os, kVersion);
    io::write_u8(os, static_cast<uint8_t>(variant));
    io::write_u64(os, n);
    io::write_u64(os, universe);
    io::write_u32(os, static_cast<uint32_t>(sections.size()));
    // Table first, with offsets relative to the payload area.
    uint64_t offset = 0;
    for (const auto& s : sections) {
        io::write_string(os, s.name);
        io::write_u64(os, offset);
        io::write_u64(os, s.bytes.size());
        io::write_u32(os, io::crc32(s.bytes.data(), s.bytes.size()));
        offset += s.bytes.size();
    }
    for (const auto& s : sections) os.write(s.bytes.data(), static_cast<std::streamsize>(s.bytes.size()));
}

struct Contents {
    Variant variant;
    uint64_t n = 0;
    uint64_t universe = 0;
    std::map<std::string, std::string> sections;

    const std::string& section(const std::string& name) const {
        auto it = sections.find(name);
        if (it == sections.end())
            throw std::runtime_error("index container: missing section '" + name + "'");
        return it->second;
    }
};

inline Contents read(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("index container: bad magic");
    uint32_t version = io::read_u32(is);
    if (version != kVersion)
        throw std::runtime_error("index container: unsupported version " + std::to_string(version));
    Contents c;
    c.variant = static_cast<Variant>(io::read_u8(is));
    if (static_cast<uint8_t>(c.variant) > static_cast<uint8_t>(Variant::rdfcsa_small))
        throw std::runtime_error("index container: unknown variant tag");
    c.n = io::read_u64(is);
    c.universe = io::read_u64(is);
    uint32_t count = io::read_u32(is);
    struct Entry {
        std::string name;
        uint64_t offset, length;
        uint32_t crc;
    };
    std::vector<Entry> entries;
    entries.reserve(count);
    for (uint32_t i = 0; i < count; ++i) {
        Entry e;
        e.name = io::read_string(is);
        e.offset = io::read_u64(is);
        e.length = io::read_u64(is);
        e.crc = io::read_u32(is);
        entries.push_back(std::move(e));
    }
    std::streampos payload_start = is.tellg();
    for (const auto& e : entries) {
        is.seekg(payload_start + static_cast<std::streamoff>(e.offset));
        std::string bytes(e.length, '\0');
        if (e.length && !is.read(bytes.data(), static_cast<std::streamsize>(e.length)))
            throw std::runtime_error("index container: truncated section '" + e.name + "'");
        if (io::crc32(bytes.data(), bytes.size()) != e.crc)
            throw std::runtime_error("index container: checksum mismatch in section '" + e.name +
                                     "'");
        c.sections.emplace(e.name, std::move(bytes));
    }
    return c;
}

template <class T>
Section section_of(const std::string& name, const T& value) {
    std::ostringstream os(std::ios::binary);
    value.save(os);
    return {name, std::move(os).str()};
}

template <class T>
T load_section(const Contents& c, const std::string& name) {
    std::istringstream is(c.section(name), std::ios::binary);
    return T::load(is);
}

}  // namespace container

}  // namespace triplex

#endif
