#ifndef TRIPLEX_VARIANTS_HPP
#define TRIPLEX_VARIANTS_HPP

#include <filesystem>
#include <fstream>
#include <variant>

#include "triplex/index_io.hpp"
#include "triplex/ingest.hpp"
#include "triplex/ltj.hpp"

namespace triplex {

using AnyIndex =
    std::variant<RingIndex<BitVector>, RingIndex<CompressedBitVector>, URingIndex<BitVector>,
                 URingIndex<CompressedBitVector>, RdfcsaIndex<PlainPsi>, RdfcsaIndex<SampledPsi>>;

struct LoadedIndex {
    Variant variant = Variant::ring_large;
    uint64_t n = 0;
    uint64_t universe = 0;
    Dictionary dict = Dictionary::identity(0);
    AnyIndex index;
};

inline LoadedIndex build_index(Variant variant, std::vector<Triple> triples, uint64_t universe,
                               Dictionary dict) {
    LoadedIndex out;
    out.variant = variant;
    out.universe = universe;
    out.dict = std::move(dict);
    switch (variant) {
        case Variant::ring_large:
            out.index = RingIndex<BitVector>::build(std::move(triples), universe, false);
            break;
        case Variant::ring_small:
            out.index = RingIndex<CompressedBitVector>::build(std::move(triples), universe, false);
            break;
        case Variant::vring_large:
            out.index = RingIndex<BitVector>::build(std::move(triples), universe, true);
            break;
        case Variant::vring_small:
            out.index = RingIndex<CompressedBitVector>::build(std::move(triples), universe, true);
            break;
        case Variant::uring_large:
            out.index = URingIndex<BitVector>::build(std::move(triples), universe);
            break;
        case Variant::uring_small:
            out.index = URingIndex<CompressedBitVector>::build(std::move(triples), universe);
            break;
        case Variant::rdfcsa_large:
            out.index = RdfcsaIndex<PlainPsi>::build(std::move(triples), universe);
            break;
        case Variant::rdfcsa_small:
            out.index = RdfcsaIndex<SampledPsi>::build(std::move(triples), universe);
            break;
    }
    out.n = std::visit([](const auto& ix) { return ix.size(); }, out.index);
    return out;
}

namespace detail {

template <class BV>
std::vector<container::Section> ring_sections(const Ring<BV>& ring, const std::string& prefix) {
    std::vector<container::Section> out;
    out.push_back(container::section_of(prefix + "c_o", ring.column(TableId::spo)));
    out.push_back(container::section_of(prefix + "c_p", ring.column(TableId::osp)));
    out.push_back(container::section_of(prefix + "c_s", ring.column(TableId::pos)));
    out.push_back(container::section_of(prefix + "a_s", ring.acc_bits(Role::subject)));
    out.push_back(container::section_of(prefix + "a_p", ring.acc_bits(Role::predicate)));
    out.push_back(container::section_of(prefix + "a_o", ring.acc_bits(Role::object)));
    if (ring.has_counts()) {
        out.push_back(container::section_of(prefix + "m_spo", ring.prev_occurrence(TableId::spo)));
        out.push_back(container::section_of(prefix + "m_osp", ring.prev_occurrence(TableId::osp)));
        out.push_back(container::section_of(prefix + "m_pos", ring.prev_occurrence(TableId::pos)));
    }
    return out;
}

template <class BV>
Ring<BV> ring_from_sections(const container::Contents& c, const std::string& prefix,
                            bool with_counts) {
    std::array<WaveletMatrix<BV>, 3> cols = {
        container::load_section<WaveletMatrix<BV>>(c, prefix + "c_o"),
        container::load_section<WaveletMatrix<BV>>(c, prefix + "c_p"),
        container::load_section<WaveletMatrix<BV>>(c, prefix + "c_s")};
    std::array<BitVector, 3> accs = {container::load_section<BitVector>(c, prefix + "a_s"),
                                     container::load_section<BitVector>(c, prefix + "a_p"),
                                     container::load_section<BitVector>(c, prefix + "a_o")};
    std::vector<WaveletMatrix<BV>> prev;
    if (with_counts) {
        prev.push_back(container::load_section<WaveletMatrix<BV>>(c, prefix + "m_spo"));
        prev.push_back(container::load_section<WaveletMatrix<BV>>(c, prefix + "m_osp"));
        prev.push_back(container::load_section<WaveletMatrix<BV>>(c, prefix + "m_pos"));
    }
    return Ring<BV>::assemble(c.n, c.universe, std::move(cols), std::move(accs), std::move(prev));
}

template <class PsiT>
std::vector<container::Section> csa_sections(const RdfcsaPair<PsiT>& pair) {
    std::vector<container::Section> out;
    out.push_back(container::section_of("roles", pair.roles()));
    out.push_back(container::section_of("spo", pair.spo()));
    out.push_back(container::section_of("ops", pair.ops()));
    return out;
}

}  // namespace detail

inline void save_index(const LoadedIndex& li, const std::string& path) {
    std::vector<container::Section> sections;
    sections.push_back(container::section_of("dict", li.dict));
    std::visit(
        [&](const auto& ix) {
            using T = std::decay_t<decltype(ix)>;
            if constexpr (std::is_same_v<T, RingIndex<BitVector>> ||
                          std::is_same_v<T, RingIndex<CompressedBitVector>>) {
                auto more = detail::ring_sections(ix.ring(), "");
                sections.insert(sections.end(), more.begin(), more.end());
            } else if constexpr (std::is_same_v<T, URingIndex<BitVector>> ||
                                 std::is_same_v<T, URingIndex<CompressedBitVector>>) {
                auto fwd = detail::ring_sections(ix.forward(), "fwd.");
                auto rev = detail::ring_sections(ix.reverse(), "rev.");
                sections.insert(sections.end(), fwd.begin(), fwd.end());
                sections.insert(sections.end(), rev.begin(), rev.end());
            } else {
                auto more = detail::csa_sections(ix.pair());
                sections.insert(sections.end(), more.begin(), more.end());
            }
        },
        li.index);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write index file: " + path);
    container::write(os, li.variant, li.n, li.universe, sections);
    if (!os) throw std::runtime_error("failed while writing index file: " + path);
}

inline LoadedIndex load_index(const std::string& path,
                              std::optional<Variant> expected = std::nullopt) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open index file: " + path);
    auto c = container::read(is);
    if (expected && *expected != c.variant)
        throw std::runtime_error(std::string("index variant mismatch: expected ") +
                                 to_string(*expected) + ", found " + to_string(c.variant));
    LoadedIndex li;
    li.variant = c.variant;
    li.n = c.n;
    li.universe = c.universe;
    li.dict = container::load_section<Dictionary>(c, "dict");
    switch (c.variant) {
        case Variant::ring_large:
            li.index = RingIndex<BitVector>(detail::ring_from_sections<BitVector>(c, "", false));
            break;
        case Variant::ring_small:
            li.index = RingIndex<CompressedBitVector>(
                detail::ring_from_sections<CompressedBitVector>(c, "", false));
            break;
        case Variant::vring_large:
            li.index = RingIndex<BitVector>(detail::ring_from_sections<BitVector>(c, "", true));
            break;
        case Variant::vring_small:
            li.index = RingIndex<CompressedBitVector>(
                detail::ring_from_sections<CompressedBitVector>(c, "", true));
            break;
        case Variant::uring_large:
            li.index =
                URingIndex<BitVector>(detail::ring_from_sections<BitVector>(c, "fwd.", false),
                                      detail::ring_from_sections<BitVector>(c, "rev.", false));
            break;
        case Variant::uring_small:
            li.index = URingIndex<CompressedBitVector>(
                detail::ring_from_sections<CompressedBitVector>(c, "fwd.", false),
                detail::ring_from_sections<CompressedBitVector>(c, "rev.", false));
            break;
        case Variant::rdfcsa_large:
            li.index = RdfcsaIndex<PlainPsi>(RdfcsaPair<PlainPsi>::assemble(
                c.n, c.universe, container::load_section<RoleMaps>(c, "roles"),
                container::load_section<Csa<PlainPsi>>(c, "spo"),
                container::load_section<Csa<PlainPsi>>(c, "ops")));
            break;
        case Variant::rdfcsa_small:
            li.index = RdfcsaIndex<SampledPsi>(RdfcsaPair<SampledPsi>::assemble(
                c.n, c.universe, container::load_section<RoleMaps>(c, "roles"),
                container::load_section<Csa<SampledPsi>>(c, "spo"),
                container::load_section<Csa<SampledPsi>>(c, "ops")));
            break;
    }
    return li;
}

inline uint64_t file_size_bytes(const std::string& path) {
    return static_cast<uint64_t>(std::filesystem::file_size(path));
}

}  // namespace triplex

#endif
