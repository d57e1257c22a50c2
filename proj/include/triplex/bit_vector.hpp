#ifndef TRIPLEX_BIT_VECTOR_HPP
#define TRIPLEX_BIT_VECTOR_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "triplex/io_util.hpp"

namespace triplex {

// Positions in the public API are 1-based; rank takes 0..n with rank(0) = 0.

namespace detail {

// Position (0-based) of the k-th (1-based) set bit of w. Requires popcount(w) >= k.
inline unsigned word_select(uint64_t w, unsigned k) {
    for (;;) {
        unsigned t = static_cast<unsigned>(std::countr_zero(w));
        if (--k == 0) return t;
        w &= w - 1;
    }
}

}  // namespace detail

class BitVectorBuilder;

class BitVector {
public:
    // Directory layout: relative rank per 128-bit block, absolute per 32768-bit superblock.
    static constexpr uint64_t kBlockBits = 128;
    static constexpr uint64_t kSuperBits = 32768;
    static constexpr uint64_t kBlocksPerSuper = kSuperBits / kBlockBits;

    BitVector() = default;

    BitVector(std::vector<uint64_t> words, uint64_t n_bits)
        : words_(std::move(words)), n_(n_bits) {
        words_.resize((n_ + 63) / 64, 0);
        if (n_ % 64) words_[n_ / 64] &= (uint64_t{1} << (n_ % 64)) - 1;
        build_directories();
    }

    static BitVector from_bools(const std::vector<bool>& bits) {
        std::vector<uint64_t> words((bits.size() + 63) / 64, 0);
        for (size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) words[i / 64] |= uint64_t{1} << (i % 64);
        return BitVector(std::move(words), bits.size());
    }

    uint64_t size() const { return n_; }
    uint64_t ones() const { return ones_; }
    uint64_t zeros() const { return n_ - ones_; }

    bool access(uint64_t i) const {
        check_pos(i);
        return bit_at(i - 1);
    }

    uint64_t rank1(uint64_t i) const {
        if (i > n_) throw std::out_of_range("BitVector::rank: position out of range");
        return rank1_unchecked(i);
    }

    uint64_t rank0(uint64_t i) const { return i - rank1(i); }

    uint64_t rank(bool b, uint64_t i) const { return b ? rank1(i) : rank0(i); }

    std::optional<uint64_t> select1(uint64_t j) const {
        if (j == 0 || j > ones_) return std::nullopt;
        return select1_unchecked(j);
    }

    std::optional<uint64_t> select0(uint64_t j) const {
        if (j == 0 || j > zeros()) return std::nullopt;
        return select0_unchecked(j);
    }

    std::optional<uint64_t> select(bool b, uint64_t j) const {
        return b ? select1(j) : select0(j);
    }

    // Leftmost position p >= j holding bit b, or nullopt.
    std::optional<uint64_t> select_next(bool b, uint64_t j) const {
        check_pos(j);
        uint64_t before = rank(b, j - 1);
        uint64_t total = b ? ones_ : zeros();
        if (before >= total) return std::nullopt;
        return select(b, before + 1);
    }

    void save(std::ostream& os) const {
        io::write_u64(os, n_);
        io::write_u64(os, ones_);
        io::write_u64_vec(os, words_);
        io::write_u64_vec(os, super_);
        io::write_u64(os, block_.size());
        for (uint16_t b : block_) {
            os.put(static_cast<char>(b & 0xFF));
            os.put(static_cast<char>(b >> 8));
        }
    }

    static BitVector load(std::istream& is) {
        BitVector bv;
        bv.n_ = io::read_u64(is);
        bv.ones_ = io::read_u64(is);
        bv.words_ = io::read_u64_vec(is);
        bv.super_ = io::read_u64_vec(is);
        uint64_t nb = io::read_u64(is);
        bv.block_.resize(nb);
        for (uint64_t i = 0; i < nb; ++i) {
            uint16_t lo = io::read_u8(is), hi = io::read_u8(is);
            bv.block_[i] = static_cast<uint16_t>(lo | (hi << 8));
        }
        return bv;
    }

    uint64_t size_bytes() const {
        return words_.size() * 8 + super_.size() * 8 + block_.size() * 2 + 16;
    }

    bool operator==(const BitVector& o) const { return n_ == o.n_ && words_ == o.words_; }

private:
    friend class BitVectorBuilder;

    std::vector<uint64_t> words_;
    uint64_t n_ = 0;
    uint64_t ones_ = 0;
    std::vector<uint64_t> super_;
    std::vector<uint16_t> block_;

    void check_pos(uint64_t i) const {
        if (i < 1 || i > n_) throw std::out_of_range("BitVector: position out of range");
    }

    bool bit_at(uint64_t i0) const { return (words_[i0 / 64] >> (i0 % 64)) & 1; }

    void build_directories() {
        uint64_t n_blocks = (n_ + kBlockBits - 1) / kBlockBits;
        uint64_t n_supers = (n_ + kSuperBits - 1) / kSuperBits;
        super_.assign(n_supers + 1, 0);
        block_.assign(n_blocks + 1, 0);
        uint64_t acc = 0, super_acc = 0;
        for (uint64_t b = 0; b < n_blocks; ++b) {
            if (b % kBlocksPerSuper == 0) {
                super_[b / kBlocksPerSuper] = acc;
                super_acc = acc;
            }
            block_[b] = static_cast<uint16_t>(acc - super_acc);
            uint64_t w0 = b * (kBlockBits / 64);
            for (uint64_t w = w0; w < w0 + kBlockBits / 64 && w < words_.size(); ++w)
                acc += static_cast<uint64_t>(std::popcount(words_[w]));
        }
        ones_ = acc;
        super_[n_supers] = acc;
        if (n_blocks % kBlocksPerSuper == 0 && n_supers > 0) {
            // super_ entry for a trailing partial group is covered above
        }
        block_[n_blocks] = static_cast<uint16_t>(acc - super_acc);
    }

    uint64_t rank1_unchecked(uint64_t i) const {
        if (i == 0) return 0;
        uint64_t b = i / kBlockBits;
        uint64_t cnt = super_[i / kSuperBits] + block_[b];
        uint64_t w = b * (kBlockBits / 64);
        uint64_t last = i / 64;
        for (; w < last; ++w) cnt += static_cast<uint64_t>(std::popcount(words_[w]));
        uint64_t rem = i % 64;
        if (rem) cnt += static_cast<uint64_t>(std::popcount(words_[last] & ((uint64_t{1} << rem) - 1)));
        return cnt;
    }

    uint64_t select1_unchecked(uint64_t j) const {
        // Superblock: largest s with super_[s] < j.
        uint64_t lo = 0, hi = super_.size() - 1;
        while (lo < hi) {
            uint64_t mid = (lo + hi + 1) / 2;
            if (super_[mid] < j) lo = mid;
            else hi = mid - 1;
        }
        uint64_t rel = j - super_[lo];
        uint64_t b_first = lo * kBlocksPerSuper;
        uint64_t b_last = std::min<uint64_t>(b_first + kBlocksPerSuper - 1, (n_ - 1) / kBlockBits);
        uint64_t blo = b_first, bhi = b_last;
        while (blo < bhi) {
            uint64_t mid = (blo + bhi + 1) / 2;
            if (block_[mid] < rel) blo = mid;
            else bhi = mid - 1;
        }
        rel -= block_[blo];
        uint64_t w = blo * (kBlockBits / 64);
        for (;; ++w) {
            uint64_t pc = static_cast<uint64_t>(std::popcount(words_[w]));
            if (rel <= pc) break;
            rel -= pc;
        }
        return w * 64 + detail::word_select(words_[w], static_cast<unsigned>(rel)) + 1;
    }

    uint64_t select0_unchecked(uint64_t j) const {
        uint64_t n_supers = super_.size() - 1;
        uint64_t lo = 0, hi = n_supers;
        auto zeros_before_super = [&](uint64_t s) {
            uint64_t bits = std::min(s * kSuperBits, n_);
            return bits - super_[s];
        };
        while (lo < hi) {
            uint64_t mid = (lo + hi + 1) / 2;
            if (zeros_before_super(mid) < j) lo = mid;
            else hi = mid - 1;
        }
        uint64_t rel = j - zeros_before_super(lo);
        uint64_t b_first = lo * kBlocksPerSuper;
        uint64_t b_last = std::min<uint64_t>(b_first + kBlocksPerSuper - 1, (n_ - 1) / kBlockBits);
        auto zeros_before_block = [&](uint64_t b) {
            uint64_t bits = std::min(b * kBlockBits, n_) - lo * kSuperBits;
            return bits - block_[b];
        };
        uint64_t blo = b_first, bhi = b_last;
        while (blo < bhi) {
            uint64_t mid = (blo + bhi + 1) / 2;
            if (zeros_before_block(mid) < rel) blo = mid;
            else bhi = mid - 1;
        }
        rel -= zeros_before_block(blo);
        uint64_t w = blo * (kBlockBits / 64);
        for (;; ++w) {
            uint64_t pc = 64 - static_cast<uint64_t>(std::popcount(words_[w]));
            if (rel <= pc) break;
            rel -= pc;
        }
        return w * 64 + detail::word_select(~words_[w], static_cast<unsigned>(rel)) + 1;
    }
};

// Append-only builder used when the number of bits is known only while pushing.
class BitVectorBuilder {
public:
    BitVectorBuilder() = default;
    explicit BitVectorBuilder(uint64_t reserve_bits) { words_.reserve((reserve_bits + 63) / 64); }

    void push_back(bool b) {
        uint64_t w = n_ / 64;
        if (w == words_.size()) words_.push_back(0);
        if (b) words_[w] |= uint64_t{1} << (n_ % 64);
        ++n_;
    }

    void append_run(bool b, uint64_t count) {
        for (uint64_t i = 0; i < count; ++i) push_back(b);
    }

    uint64_t size() const { return n_; }

    BitVector build() { return BitVector(std::move(words_), n_); }

private:
    std::vector<uint64_t> words_;
    uint64_t n_ = 0;
};

}  // namespace triplex

#endif
