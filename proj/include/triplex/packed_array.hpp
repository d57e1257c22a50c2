#ifndef TRIPLEX_PACKED_ARRAY_HPP
#define TRIPLEX_PACKED_ARRAY_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "triplex/io_util.hpp"

namespace triplex {

// Fixed-width bit-packed integer array.
class PackedArray {
public:
    PackedArray() = default;

    PackedArray(uint64_t count, unsigned width) : n_(count), width_(width) {
        if (width == 0 || width > 64) throw std::invalid_argument("PackedArray: bad width");
        words_.assign((count * width + 63) / 64, 0);
    }

    uint64_t size() const { return n_; }
    unsigned width() const { return width_; }

    void set(uint64_t idx, uint64_t value) {
        uint64_t bit = idx * width_;
        uint64_t w = bit / 64, off = bit % 64;
        uint64_t mask = width_ == 64 ? ~uint64_t{0} : (uint64_t{1} << width_) - 1;
        words_[w] = (words_[w] & ~(mask << off)) | ((value & mask) << off);
        if (off + width_ > 64) {
            unsigned spill = static_cast<unsigned>(off + width_ - 64);
            uint64_t hi_mask = (uint64_t{1} << spill) - 1;
            words_[w + 1] = (words_[w + 1] & ~hi_mask) | ((value & mask) >> (width_ - spill));
        }
    }

    uint64_t get(uint64_t idx) const {
        uint64_t bit = idx * width_;
        uint64_t w = bit / 64, off = bit % 64;
        uint64_t mask = width_ == 64 ? ~uint64_t{0} : (uint64_t{1} << width_) - 1;
        uint64_t v = words_[w] >> off;
        if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
        return v & mask;
    }

    void save(std::ostream& os) const {
        io::write_u64(os, n_);
        io::write_u32(os, width_);
        io::write_u64_vec(os, words_);
    }

    static PackedArray load(std::istream& is) {
        PackedArray a;
        a.n_ = io::read_u64(is);
        a.width_ = io::read_u32(is);
        a.words_ = io::read_u64_vec(is);
        return a;
    }

    uint64_t size_bytes() const { return words_.size() * 8 + 12; }

    // Width needed to store values in [0..max_value].
    static unsigned width_for(uint64_t max_value) {
        return max_value == 0 ? 1 : static_cast<unsigned>(std::bit_width(max_value));
    }

private:
    uint64_t n_ = 0;
    unsigned width_ = 1;
    std::vector<uint64_t> words_;
};

}  // namespace triplex

#endif
