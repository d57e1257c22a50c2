#ifndef TRIPLEX_COMPRESSED_BIT_VECTOR_HPP
#define TRIPLEX_COMPRESSED_BIT_VECTOR_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "triplex/bit_vector.hpp"
#include "triplex/io_util.hpp"

namespace triplex {

namespace detail {

// Zero-order block coding: 15-bit blocks stored as (class = popcount, offset = rank
// of the block among all 15-bit words of that class, in increasing word order).
struct RrrTables {
    static constexpr unsigned kBlockBits = 15;
    std::array<uint16_t, 1u << kBlockBits> offset_of;   // word -> offset within class
    std::array<std::vector<uint16_t>, kBlockBits + 1> word_of;  // class -> offset -> word
    std::array<uint8_t, kBlockBits + 1> width;          // offset bits per class

    RrrTables() {
        std::array<uint32_t, kBlockBits + 1> counts{};
        for (uint32_t w = 0; w < (1u << kBlockBits); ++w) {
            unsigned k = static_cast<unsigned>(std::popcount(w));
            offset_of[w] = static_cast<uint16_t>(counts[k]++);
            word_of[k].push_back(static_cast<uint16_t>(w));
        }
        for (unsigned k = 0; k <= kBlockBits; ++k) {
            unsigned bits = 0;
            while ((1u << bits) < counts[k]) ++bits;
            width[k] = static_cast<uint8_t>(bits);
        }
    }

    static const RrrTables& instance() {
        static const RrrTables t;
        return t;
    }
};

// Fixed-position bit stream with variable-width reads.
class BitBuffer {
public:
    void append(uint64_t value, unsigned bits) {
        for (unsigned i = 0; i < bits; ++i) {
            uint64_t w = n_ / 64;
            if (w == words_.size()) words_.push_back(0);
            if ((value >> i) & 1) words_[w] |= uint64_t{1} << (n_ % 64);
            ++n_;
        }
    }

    uint64_t read(uint64_t pos, unsigned bits) const {
        uint64_t v = 0;
        for (unsigned i = 0; i < bits; ++i) {
            uint64_t p = pos + i;
            if ((words_[p / 64] >> (p % 64)) & 1) v |= uint64_t{1} << i;
        }
        return v;
    }

    uint64_t bits() const { return n_; }
    const std::vector<uint64_t>& words() const { return words_; }
    void set_words(std::vector<uint64_t> w, uint64_t n) { words_ = std::move(w); n_ = n; }

private:
    std::vector<uint64_t> words_;
    uint64_t n_ = 0;
};

}  // namespace detail

// Same query contract as BitVector over the same bits; entropy-compressed block storage.
class CompressedBitVector {
public:
    static constexpr uint64_t kBlockBits = detail::RrrTables::kBlockBits;
    static constexpr uint64_t kBlocksPerSuper = 32;

    CompressedBitVector() = default;

    explicit CompressedBitVector(const BitVector& bv) {
        n_ = bv.size();
        uint64_t n_blocks = (n_ + kBlockBits - 1) / kBlockBits;
        const auto& tables = detail::RrrTables::instance();
        classes_.reserve(n_blocks);
        uint64_t acc = 0;
        for (uint64_t b = 0; b < n_blocks; ++b) {
            if (b % kBlocksPerSuper == 0) {
                super_rank_.push_back(acc);
                super_bitpos_.push_back(offsets_.bits());
            }
            uint64_t first = b * kBlockBits;
            uint64_t len = std::min<uint64_t>(kBlockBits, n_ - first);
            uint16_t word = 0;
            for (uint64_t i = 0; i < len; ++i)
                if (bv.access(first + i + 1)) word |= uint16_t(1) << i;
            unsigned k = static_cast<unsigned>(std::popcount(word));
            classes_.push_back(static_cast<uint8_t>(k));
            offsets_.append(tables.offset_of[word], tables.width[k]);
            acc += k;
        }
        ones_ = acc;
        super_rank_.push_back(acc);
        super_bitpos_.push_back(offsets_.bits());
    }

    uint64_t size() const { return n_; }
    uint64_t ones() const { return ones_; }
    uint64_t zeros() const { return n_ - ones_; }

    bool access(uint64_t i) const {
        if (i < 1 || i > n_) throw std::out_of_range("CompressedBitVector: position out of range");
        uint64_t b = (i - 1) / kBlockBits;
        uint16_t word = decode_block(b);
        return (word >> ((i - 1) % kBlockBits)) & 1;
    }

    uint64_t rank1(uint64_t i) const {
        if (i > n_) throw std::out_of_range("CompressedBitVector::rank: position out of range");
        if (i == 0) return 0;
        uint64_t b = (i - 1) / kBlockBits;  // block containing position i
        auto [cnt, bitpos] = scan_to_block(b);
        uint64_t rem = i - b * kBlockBits;  // 1..kBlockBits bits of block b
        if (rem == block_len(b) && rem == kBlockBits) {
            cnt += classes_[b];
        } else {
            const auto& tables = detail::RrrTables::instance();
            uint16_t word = tables.word_of[classes_[b]][offsets_.read(bitpos, tables.width[classes_[b]])];
            cnt += static_cast<uint64_t>(std::popcount(word & ((1u << rem) - 1)));
        }
        return cnt;
    }

    uint64_t rank0(uint64_t i) const { return i - rank1(i); }
    uint64_t rank(bool b, uint64_t i) const { return b ? rank1(i) : rank0(i); }

    std::optional<uint64_t> select1(uint64_t j) const {
        if (j == 0 || j > ones_) return std::nullopt;
        uint64_t s = super_search([&](uint64_t idx) { return super_rank_[idx]; }, j);
        uint64_t rel = j - super_rank_[s];
        uint64_t b = s * kBlocksPerSuper;
        uint64_t bitpos = super_bitpos_[s];
        const auto& tables = detail::RrrTables::instance();
        for (;; ++b) {
            if (rel <= classes_[b]) break;
            rel -= classes_[b];
            bitpos += tables.width[classes_[b]];
        }
        uint16_t word = tables.word_of[classes_[b]][offsets_.read(bitpos, tables.width[classes_[b]])];
        return b * kBlockBits + detail::word_select(word, static_cast<unsigned>(rel)) + 1;
    }

    std::optional<uint64_t> select0(uint64_t j) const {
        if (j == 0 || j > zeros()) return std::nullopt;
        auto zeros_before_super = [&](uint64_t s) {
            return std::min(s * kBlocksPerSuper * kBlockBits, n_) - super_rank_[s];
        };
        uint64_t s = super_search(zeros_before_super, j);
        uint64_t rel = j - zeros_before_super(s);
        uint64_t b = s * kBlocksPerSuper;
        uint64_t bitpos = super_bitpos_[s];
        const auto& tables = detail::RrrTables::instance();
        for (;; ++b) {
            uint64_t z = block_len(b) - classes_[b];
            if (rel <= z) break;
            rel -= z;
            bitpos += tables.width[classes_[b]];
        }
        uint16_t word = tables.word_of[classes_[b]][offsets_.read(bitpos, tables.width[classes_[b]])];
        uint64_t inv = ~static_cast<uint64_t>(word) & ((uint64_t{1} << block_len(b)) - 1);
        return b * kBlockBits + detail::word_select(inv, static_cast<unsigned>(rel)) + 1;
    }

    std::optional<uint64_t> select(bool b, uint64_t j) const { return b ? select1(j) : select0(j); }

    std::optional<uint64_t> select_next(bool b, uint64_t j) const {
        if (j < 1 || j > n_) throw std::out_of_range("CompressedBitVector: position out of range");
        uint64_t before = rank(b, j - 1);
        uint64_t total = b ? ones_ : zeros();
        if (before >= total) return std::nullopt;
        return select(b, before + 1);
    }

    void save(std::ostream& os) const {
        io::write_u64(os, n_);
        io::write_u64(os, ones_);
        io::write_u64(os, classes_.size());
        os.write(reinterpret_cast<const char*>(classes_.data()),
                 static_cast<std::streamsize>(classes_.size()));
        io::write_u64(os, offsets_.bits());
        io::write_u64_vec(os, offsets_.words());
        io::write_u64_vec(os, super_rank_);
        io::write_u64_vec(os, super_bitpos_);
    }

    static CompressedBitVector load(std::istream& is) {
        CompressedBitVector v;
        v.n_ = io::read_u64(is);
        v.ones_ = io::read_u64(is);
        uint64_t nc = io::read_u64(is);
        v.classes_.resize(nc);
        if (nc && !is.read(reinterpret_cast<char*>(v.classes_.data()), static_cast<std::streamsize>(nc)))
            throw std::runtime_error("unexpected end of stream");
        uint64_t bits = io::read_u64(is);
        auto words = io::read_u64_vec(is);
        v.offsets_.set_words(std::move(words), bits);
        v.super_rank_ = io::read_u64_vec(is);
        v.super_bitpos_ = io::read_u64_vec(is);
        return v;
    }

    uint64_t size_bytes() const {
        return classes_.size() + offsets_.words().size() * 8 +
               (super_rank_.size() + super_bitpos_.size()) * 8 + 24;
    }

private:
    uint64_t n_ = 0;
    uint64_t ones_ = 0;
    std::vector<uint8_t> classes_;
    detail::BitBuffer offsets_;
    std::vector<uint64_t> super_rank_;    // cumulative ones before each superblock
    std::vector<uint64_t> super_bitpos_;  // offset-stream bit position per superblock

    uint64_t block_len(uint64_t b) const {
        uint64_t first = b * kBlockBits;
        return std::min<uint64_t>(kBlockBits, n_ - first);
    }

    // (ones before block b, offset-stream bit position of block b)
    std::pair<uint64_t, uint64_t> scan_to_block(uint64_t b) const {
        const auto& tables = detail::RrrTables::instance();
        uint64_t s = b / kBlocksPerSuper;
        uint64_t cnt = super_rank_[s];
        uint64_t bitpos = super_bitpos_[s];
        for (uint64_t k = s * kBlocksPerSuper; k < b; ++k) {
            cnt += classes_[k];
            bitpos += tables.width[classes_[k]];
        }
        return {cnt, bitpos};
    }

    uint16_t decode_block(uint64_t b) const {
        const auto& tables = detail::RrrTables::instance();
        auto [cnt, bitpos] = scan_to_block(b);
        (void)cnt;
        return tables.word_of[classes_[b]][offsets_.read(bitpos, tables.width[classes_[b]])];
    }

    // Largest s with measure(s) < j, searching the superblock summaries.
    template <class F>
    uint64_t super_search(F measure, uint64_t j) const {
        uint64_t lo = 0, hi = super_rank_.size() - 1;
        while (lo < hi) {
            uint64_t mid = (lo + hi + 1) / 2;
            if (measure(mid) < j) lo = mid;
            else hi = mid - 1;
        }
        return lo;
    }
};

}  // namespace triplex

#endif
