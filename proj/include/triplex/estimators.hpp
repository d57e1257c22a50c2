#ifndef TRIPLEX_ESTIMATORS_HPP
#define TRIPLEX_ESTIMATORS_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "triplex/bit_vector.hpp"
#include "triplex/wavelet_matrix.hpp"

namespace triplex {

// One contributor to an intersection-size estimate: either a wavelet range whose
// symbols are the candidate values, or a bucket-filtered count used when the
// candidate values are not directly exposed by the stored column (single bound
// attribute with the variable on its far side).
template <class BV>
struct PartitionSource {
    struct Range {
        const WaveletMatrix<BV>* wm;
        uint64_t lo, hi;
    };
    struct Bucket {
        const BitVector* buckets;        // unary cumulative-count bitvector over the
                                         // candidate attribute (U ones, n zeros)
        const WaveletMatrix<BV>* column; // stored column of the candidate's table
        uint64_t bound_value;            // fixed value filtering the rows
    };
    std::variant<Range, Bucket> src;

    static PartitionSource range(const WaveletMatrix<BV>* wm, uint64_t lo, uint64_t hi) {
        return {Range{wm, lo, hi}};
    }
    static PartitionSource bucket(const BitVector* b, const WaveletMatrix<BV>* col, uint64_t x) {
        return {Bucket{b, col, x}};
    }
};

namespace detail {

// Rows of the bucket table whose first attribute is < k (cumulative count).
inline uint64_t bucket_acc(const BitVector& bv, uint64_t k, uint64_t universe, uint64_t n) {
    if (k > universe) return n;
    return bv.select1(k).value() - k;
}

template <class BV>
struct SourceState {
    const PartitionSource<BV>* source;
    uint64_t lo, hi;  // exclusive prefix / inclusive end, only for Range sources

    uint64_t count(uint64_t a, uint64_t b) const {
        if (std::holds_alternative<typename PartitionSource<BV>::Range>(source->src)) {
            return hi - lo;
        }
        const auto& bk = std::get<typename PartitionSource<BV>::Bucket>(source->src);
        uint64_t n = bk.column->size();
        uint64_t universe = bk.buckets->ones();
        uint64_t row_lo = bucket_acc(*bk.buckets, a, universe, n);
        uint64_t row_hi = bucket_acc(*bk.buckets, b + 1, universe, n);
        return bk.column->rank(bk.bound_value, row_hi) -
               bk.column->rank(bk.bound_value, row_lo);
    }
};

template <class BV>
uint64_t refined_rec(std::vector<SourceState<BV>>& states, uint32_t level, uint32_t k, uint64_t a,
                     uint64_t b) {
    uint64_t m = ~uint64_t{0};
    for (const auto& st : states) m = std::min(m, st.count(a, b));
    if (m == 0) return 0;
    if (level == k || a == b) return m;
    uint64_t mid = (a + b) / 2;
    std::vector<SourceState<BV>> child = states;
    for (size_t i = 0; i < states.size(); ++i) {
        if (auto* rg = std::get_if<typename PartitionSource<BV>::Range>(&states[i].source->src)) {
            child[i].lo = rg->wm->child_count(level, false, states[i].lo);
            child[i].hi = rg->wm->child_count(level, false, states[i].hi);
        }
    }
    uint64_t total = refined_rec(child, level + 1, k, a, mid);
    for (size_t i = 0; i < states.size(); ++i) {
        if (auto* rg = std::get_if<typename PartitionSource<BV>::Range>(&states[i].source->src)) {
            child[i].lo = rg->wm->child_count(level, true, states[i].lo);
            child[i].hi = rg->wm->child_count(level, true, states[i].hi);
        }
    }
    total += refined_rec(child, level + 1, k, mid + 1, b);
    return total;
}

}  // namespace detail

// Partition-sum intersection estimate: the alphabet is split k levels deep at the
// same midpoints as the wavelet layout and per-partition minima are summed. Always
// an upper bound on the true intersection size; nonincreasing in k; k = 0 gives the
// plain minimum of the source counts.
template <class BV>
uint64_t refined_weight(std::span<const PartitionSource<BV>> sources, uint32_t k) {
    if (sources.empty()) return 0;
    uint64_t sigma = 0;
    for (const auto& s : sources) {
        if (auto* rg = std::get_if<typename PartitionSource<BV>::Range>(&s.src))
            sigma = std::max(sigma, rg->wm->sigma());
        else
            sigma = std::max(sigma,
                             std::get<typename PartitionSource<BV>::Bucket>(s.src).buckets->ones());
    }
    if (sigma == 0) return 0;
    k = std::min(k, WaveletMatrix<BV>::levels_for(sigma));

    std::vector<detail::SourceState<BV>> states;
    states.reserve(sources.size());
    for (const auto& s : sources) {
        detail::SourceState<BV> st{&s, 0, 0};
        if (auto* rg = std::get_if<typename PartitionSource<BV>::Range>(&s.src)) {
            st.lo = rg->lo - 1;
            st.hi = rg->hi < rg->lo ? rg->lo - 1 : rg->hi;
        }
        states.push_back(st);
    }
    return detail::refined_rec(states, 0, k, 1, sigma);
}

template <class BV>
uint64_t refined_weight(const std::vector<PartitionSource<BV>>& sources, uint32_t k) {
    return refined_weight(std::span<const PartitionSource<BV>>(sources), k);
}

}  // namespace triplex

#endif
