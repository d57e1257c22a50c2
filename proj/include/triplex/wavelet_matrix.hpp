#ifndef TRIPLEX_WAVELET_MATRIX_HPP
#define TRIPLEX_WAVELET_MATRIX_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "triplex/bit_vector.hpp"
#include "triplex/compressed_bit_vector.hpp"
#include "triplex/io_util.hpp"

namespace triplex {

// Pointerless wavelet tree over symbols [1..sigma], 1-based positions.
//
// Alphabet intervals split at m = floor((a+b)/2); symbols whose interval becomes a
// singleton before the bottom level keep emitting 0-bits, so every level holds
// exactly n bits and nodes of the conceptual tree stay contiguous per level.
template <class BV>
class WaveletMatrix {
public:
    using bv_type = BV;

    WaveletMatrix() = default;

    WaveletMatrix(const std::vector<uint64_t>& seq, uint64_t sigma)
        : n_(seq.size()), sigma_(sigma), levels_(levels_for(sigma)) {
        if (sigma_ == 0) throw std::invalid_argument("WaveletMatrix: sigma must be >= 1");
        for (uint64_t s : seq)
            if (s < 1 || s > sigma_) throw std::out_of_range("WaveletMatrix: symbol out of alphabet");

        std::vector<uint64_t> cur = seq, next(seq.size());
        // Interval bounds per element, refined level by level.
        std::vector<uint64_t> a(seq.size(), 1), b(seq.size(), sigma_);
        std::vector<uint64_t> na(seq.size()), nb(seq.size());
        bits_.reserve(levels_);
        zeros_.reserve(levels_);
        for (uint32_t l = 0; l < levels_; ++l) {
            BitVectorBuilder bld(n_);
            uint64_t nz = 0;
            for (uint64_t i = 0; i < n_; ++i) {
                bool bit = false;
                if (a[i] != b[i]) {
                    uint64_t m = (a[i] + b[i]) / 2;
                    bit = cur[i] > m;
                }
                bld.push_back(bit);
                nz += !bit;
            }
            auto level_bits = bld.build();
            // Stable partition into the next level: zeros first, then ones.
            uint64_t zi = 0, oi = nz;
            for (uint64_t i = 0; i < n_; ++i) {
                uint64_t m = (a[i] != b[i]) ? (a[i] + b[i]) / 2 : a[i];
                bool bit = a[i] != b[i] && cur[i] > m;
                uint64_t dst = bit ? oi++ : zi++;
                next[dst] = cur[i];
                if (a[i] == b[i]) {
                    na[dst] = a[i];
                    nb[dst] = b[i];
                } else if (bit) {
                    na[dst] = m + 1;
                    nb[dst] = b[i];
                } else {
                    na[dst] = a[i];
                    nb[dst] = m;
                }
            }
            std::swap(cur, next);
            std::swap(a, na);
            std::swap(b, nb);
            zeros_.push_back(nz);
            store_level(std::move(level_bits));
        }
    }

    uint64_t size() const { return n_; }
    uint64_t sigma() const { return sigma_; }
    uint32_t levels() const { return levels_; }

    uint64_t access(uint64_t i) const {
        check_pos(i);
        uint64_t a = 1, b = sigma_, p = i;
        for (uint32_t l = 0; l < levels_ && a != b; ++l) {
            uint64_t m = (a + b) / 2;
            if (bits_[l].access(p)) {
                p = zeros_[l] + bits_[l].rank1(p);
                a = m + 1;
            } else {
                p = bits_[l].rank0(p);
                b = m;
            }
        }
        return a;
    }

    uint64_t rank(uint64_t c, uint64_t i) const {
        check_symbol(c);
        if (i > n_) throw std::out_of_range("WaveletMatrix::rank: position out of range");
        uint64_t a = 1, b = sigma_;
        uint64_t lo = 0, hi = i;  // counts of positions before the node range start / before i
        for (uint32_t l = 0; l < levels_ && a != b; ++l) {
            uint64_t m = (a + b) / 2;
            if (c > m) {
                lo = zeros_[l] + bits_[l].rank1(lo);
                hi = zeros_[l] + bits_[l].rank1(hi);
                a = m + 1;
            } else {
                lo = bits_[l].rank0(lo);
                hi = bits_[l].rank0(hi);
                b = m;
            }
        }
        return hi - lo;
    }

    std::optional<uint64_t> select(uint64_t c, uint64_t j) const {
        check_symbol(c);
        if (j == 0) throw std::out_of_range("WaveletMatrix::select: occurrence index must be >= 1");
        uint64_t a = 1, b = sigma_, lo = 0, hi = n_;
        uint32_t depth = 0;
        bool path[64];
        for (uint32_t l = 0; l < levels_ && a != b; ++l, ++depth) {
            uint64_t m = (a + b) / 2;
            if (c > m) {
                lo = zeros_[l] + bits_[l].rank1(lo);
                hi = zeros_[l] + bits_[l].rank1(hi);
                a = m + 1;
                path[l] = true;
            } else {
                lo = bits_[l].rank0(lo);
                hi = bits_[l].rank0(hi);
                b = m;
                path[l] = false;
            }
        }
        if (j > hi - lo) return std::nullopt;
        uint64_t p = lo + j;
        for (uint32_t l = depth; l-- > 0;) {
            if (path[l]) p = bits_[l].select1(p - zeros_[l]).value();
            else p = bits_[l].select0(p).value();
        }
        return p;
    }

    // Smallest symbol c' >= c occurring in positions [lo..hi]; empty range gives nullopt.
    std::optional<uint64_t> range_next_value(uint64_t lo, uint64_t hi, uint64_t c) const {
        if (lo < 1) throw std::out_of_range("WaveletMatrix::range_next_value: bad range");
        if (hi > n_) throw std::out_of_range("WaveletMatrix::range_next_value: bad range");
        if (lo > hi || c > sigma_) return std::nullopt;
        return next_value_rec(0, 1, sigma_, lo - 1, hi, std::max<uint64_t>(c, 1));
    }

    // Number of positions in [lo..hi] holding a symbol within [x_lo..x_hi].
    uint64_t range_count(uint64_t lo, uint64_t hi, uint64_t x_lo, uint64_t x_hi) const {
        if (lo < 1 || hi > n_) throw std::out_of_range("WaveletMatrix::range_count: bad range");
        if (lo > hi || x_lo > x_hi || x_lo > sigma_ || x_hi < 1) return 0;
        return count_rec(0, 1, sigma_, lo - 1, hi, std::max<uint64_t>(x_lo, 1),
                         std::min(x_hi, sigma_));
    }

    void save(std::ostream& os) const {
        io::write_u64(os, n_);
        io::write_u64(os, sigma_);
        io::write_u64_vec(os, zeros_);
        for (const auto& bv : bits_) bv.save(os);
    }

    static WaveletMatrix load(std::istream& is) {
        WaveletMatrix wm;
        wm.n_ = io::read_u64(is);
        wm.sigma_ = io::read_u64(is);
        wm.levels_ = levels_for(wm.sigma_);
        wm.zeros_ = io::read_u64_vec(is);
        if (wm.zeros_.size() != wm.levels_)
            throw std::runtime_error("WaveletMatrix: corrupt level table");
        wm.bits_.reserve(wm.levels_);
        for (uint32_t l = 0; l < wm.levels_; ++l) wm.bits_.push_back(BV::load(is));
        return wm;
    }

    uint64_t size_bytes() const {
        uint64_t total = 24 + zeros_.size() * 8;
        for (const auto& bv : bits_) total += bv.size_bytes();
        return total;
    }

    static uint32_t levels_for(uint64_t sigma) {
        uint32_t l = 0;
        while ((uint64_t{1} << l) < sigma) ++l;
        return l;
    }

    // Maps a half-open prefix count through one level; used by the multi-range algorithms.
    uint64_t child_count(uint32_t level, bool bit, uint64_t prefix) const {
        return bit ? zeros_[level] + bits_[level].rank1(prefix) : bits_[level].rank0(prefix);
    }

private:
    uint64_t n_ = 0;
    uint64_t sigma_ = 0;
    uint32_t levels_ = 0;
    std::vector<BV> bits_;
    std::vector<uint64_t> zeros_;

    void store_level(BitVector bv) {
        if constexpr (std::is_same_v<BV, BitVector>) bits_.push_back(std::move(bv));
        else bits_.emplace_back(bv);
    }

    void check_pos(uint64_t i) const {
        if (i < 1 || i > n_) throw std::out_of_range("WaveletMatrix: position out of range");
    }

    void check_symbol(uint64_t c) const {
        if (c < 1 || c > sigma_) throw std::out_of_range("WaveletMatrix: symbol out of alphabet");
    }

    // lo is an exclusive prefix count, hi inclusive; nonempty iff lo < hi.
    std::optional<uint64_t> next_value_rec(uint32_t level, uint64_t a, uint64_t b, uint64_t lo,
                                           uint64_t hi, uint64_t c) const {
        if (lo >= hi) return std::nullopt;
        if (b < c) return std::nullopt;
        if (a >= c) return min_value(level, a, b, lo, hi);
        uint64_t m = (a + b) / 2;
        uint64_t lo0 = bits_[level].rank0(lo), hi0 = bits_[level].rank0(hi);
        if (c <= m) {
            auto r = next_value_rec(level + 1, a, m, lo0, hi0, c);
            if (r) return r;
        }
        uint64_t lo1 = zeros_[level] + bits_[level].rank1(lo);
        uint64_t hi1 = zeros_[level] + bits_[level].rank1(hi);
        return next_value_rec(level + 1, m + 1, b, lo1, hi1, c);
    }

    uint64_t min_value(uint32_t level, uint64_t a, uint64_t b, uint64_t lo, uint64_t hi) const {
        while (a != b) {
            uint64_t m = (a + b) / 2;
            uint64_t lo0 = bits_[level].rank0(lo), hi0 = bits_[level].rank0(hi);
            if (lo0 < hi0) {
                lo = lo0;
                hi = hi0;
                b = m;
            } else {
                lo = zeros_[level] + bits_[level].rank1(lo);
                hi = zeros_[level] + bits_[level].rank1(hi);
                a = m + 1;
            }
            ++level;
        }
        return a;
    }

    uint64_t count_rec(uint32_t level, uint64_t a, uint64_t b, uint64_t lo, uint64_t hi,
                       uint64_t x_lo, uint64_t x_hi) const {
        if (lo >= hi || b < x_lo || a > x_hi) return 0;
        if (x_lo <= a && b <= x_hi) return hi - lo;
        uint64_t m = (a + b) / 2;
        uint64_t lo0 = bits_[level].rank0(lo), hi0 = bits_[level].rank0(hi);
        uint64_t lo1 = zeros_[level] + bits_[level].rank1(lo);
        uint64_t hi1 = zeros_[level] + bits_[level].rank1(hi);
        return count_rec(level + 1, a, m, lo0, hi0, x_lo, x_hi) +
               count_rec(level + 1, m + 1, b, lo1, hi1, x_lo, x_hi);
    }
};

// A contiguous slice [lo..hi] of one wavelet-indexed sequence.
template <class BV>
struct WmRange {
    const WaveletMatrix<BV>* wm;
    uint64_t lo;  // 1-based inclusive
    uint64_t hi;  // inclusive; hi < lo means empty
};

namespace detail {

template <class BV>
void check_same_alphabet(std::span<const WmRange<BV>> ranges) {
    if (ranges.empty()) throw std::invalid_argument("need at least one range");
    uint64_t sigma = ranges.front().wm->sigma();
    for (const auto& r : ranges) {
        if (r.wm->sigma() != sigma)
            throw std::invalid_argument("wavelet ranges over mismatched alphabets");
        if (r.lo < 1 || (r.hi > r.wm->size() && r.hi >= r.lo))
            throw std::out_of_range("wavelet range out of bounds");
    }
}

// (exclusive prefix, inclusive end) per range, mapped level by level.
struct PrefixRange {
    uint64_t lo, hi;
};

template <class BV, class Visit>
void synced_descent(std::span<const WmRange<BV>> ranges, std::vector<detail::PrefixRange>& cur,
                    uint32_t level, uint64_t a, uint64_t b, uint32_t max_level, Visit&& visit) {
    bool any = false;
    for (const auto& pr : cur)
        if (pr.lo < pr.hi) {
            any = true;
            break;
        }
    if (!any) return;
    if (level == max_level || a == b) {
        visit(a, b, cur);
        return;
    }
    uint64_t m = (a + b) / 2;
    std::vector<detail::PrefixRange> child(cur.size());
    for (size_t i = 0; i < cur.size(); ++i)
        child[i] = {ranges[i].wm->child_count(level, false, cur[i].lo),
                    ranges[i].wm->child_count(level, false, cur[i].hi)};
    synced_descent(ranges, child, level + 1, a, m, max_level, visit);
    for (size_t i = 0; i < cur.size(); ++i)
        child[i] = {ranges[i].wm->child_count(level, true, cur[i].lo),
                    ranges[i].wm->child_count(level, true, cur[i].hi)};
    synced_descent(ranges, child, level + 1, m + 1, b, max_level, visit);
}

}  // namespace detail

// Symbols occurring in every given range, ascending. Ranges may live in different
// sequences as long as the alphabets match. Any empty range empties the result.
template <class BV>
std::vector<uint64_t> range_intersect(std::span<const WmRange<BV>> ranges) {
    detail::check_same_alphabet(ranges);
    std::vector<uint64_t> out;
    uint64_t sigma = ranges.front().wm->sigma();
    uint32_t max_level = WaveletMatrix<BV>::levels_for(sigma);

    struct Frame {
        uint64_t a, b;
        uint32_t level;
        std::vector<detail::PrefixRange> pr;
    };
    std::vector<detail::PrefixRange> init(ranges.size());
    for (size_t i = 0; i < ranges.size(); ++i) {
        if (ranges[i].hi < ranges[i].lo) return {};
        init[i] = {ranges[i].lo - 1, ranges[i].hi};
    }
    std::vector<Frame> stack;
    stack.push_back({1, sigma, 0, std::move(init)});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        bool all = true;
        for (const auto& pr : f.pr)
            if (pr.lo >= pr.hi) {
                all = false;
                break;
            }
        if (!all) continue;
        if (f.a == f.b || f.level == max_level) {
            out.push_back(f.a);
            continue;
        }
        uint64_t m = (f.a + f.b) / 2;
        std::vector<detail::PrefixRange> left(f.pr.size()), right(f.pr.size());
        for (size_t i = 0; i < f.pr.size(); ++i) {
            left[i] = {ranges[i].wm->child_count(f.level, false, f.pr[i].lo),
                       ranges[i].wm->child_count(f.level, false, f.pr[i].hi)};
            right[i] = {ranges[i].wm->child_count(f.level, true, f.pr[i].lo),
                        ranges[i].wm->child_count(f.level, true, f.pr[i].hi)};
        }
        // Right pushed first so the left child pops first (ascending output).
        stack.push_back({m + 1, f.b, f.level + 1, std::move(right)});
        stack.push_back({f.a, m, f.level + 1, std::move(left)});
    }
    return out;
}

template <class BV>
std::vector<uint64_t> range_intersect(const std::vector<WmRange<BV>>& ranges) {
    return range_intersect(std::span<const WmRange<BV>>(ranges));
}

// One alphabet partition reached after k split levels, with each range's count in it.
struct Partition {
    uint64_t sym_lo, sym_hi;
    std::vector<uint64_t> counts;
};

// Synchronized descent of all ranges, k levels deep. Partitions where every range
// counts zero are pruned; singleton intervals stop splitting early.
template <class BV>
std::vector<Partition> partition_weights(std::span<const WmRange<BV>> ranges, uint32_t k) {
    detail::check_same_alphabet(ranges);
    uint64_t sigma = ranges.front().wm->sigma();
    uint32_t max_level = std::min(k, WaveletMatrix<BV>::levels_for(sigma));
    std::vector<detail::PrefixRange> init(ranges.size());
    for (size_t i = 0; i < ranges.size(); ++i)
        init[i] = {ranges[i].lo - 1, ranges[i].hi < ranges[i].lo ? ranges[i].lo - 1 : ranges[i].hi};

    std::vector<Partition> out;
    detail::synced_descent(ranges, init, 0, 1, sigma, max_level,
                           [&](uint64_t a, uint64_t b, const std::vector<detail::PrefixRange>& pr) {
                               Partition p{a, b, {}};
                               p.counts.reserve(pr.size());
                               for (const auto& r : pr) p.counts.push_back(r.hi - r.lo);
                               out.push_back(std::move(p));
                           });
    return out;
}

template <class BV>
std::vector<Partition> partition_weights(const std::vector<WmRange<BV>>& ranges, uint32_t k) {
    return partition_weights(std::span<const WmRange<BV>>(ranges), k);
}

}  // namespace triplex

#endif
