#ifndef TRIPLEX_RING_HPP
#define TRIPLEX_RING_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "triplex/bit_vector.hpp"
#include "triplex/compressed_bit_vector.hpp"
#include "triplex/io_util.hpp"
#include "triplex/triples.hpp"
#include "triplex/wavelet_matrix.hpp"

namespace triplex {

// The three cyclic sort orders materialized by the ring. Each table stores only
// its last column as a wavelet-indexed sequence:
//   Spo = rows sorted (s,p,o), column C_o
//   Osp = rows sorted (o,s,p), column C_p
//   Pos = rows sorted (p,o,s), column C_s
enum class TableId : uint8_t { spo = 0, osp = 1, pos = 2 };

inline TableId next_table(TableId t) {
    return static_cast<TableId>((static_cast<uint8_t>(t) + 1) % 3);
}

// Attribute held in a table's stored column (= the attribute a backward step prepends).
inline Role column_attr(TableId t) {
    switch (t) {
        case TableId::spo: return Role::object;
        case TableId::osp: return Role::predicate;
        default: return Role::subject;
    }
}

// Attribute the table's rows are sorted by first.
inline Role first_attr(TableId t) {
    switch (t) {
        case TableId::spo: return Role::subject;
        case TableId::osp: return Role::object;
        default: return Role::predicate;
    }
}

// Table whose stored column holds attribute a.
inline TableId table_storing(Role a) {
    switch (a) {
        case Role::object: return TableId::spo;
        case Role::predicate: return TableId::osp;
        default: return TableId::pos;
    }
}

// Table whose rows are bucketed by attribute a (sorted by a first).
inline TableId table_starting(Role a) {
    switch (a) {
        case Role::subject: return TableId::spo;
        case Role::object: return TableId::osp;
        default: return TableId::pos;
    }
}

struct RowRange {
    uint64_t lo = 1, hi = 0;  // 1-based inclusive; hi < lo means empty
    uint64_t size() const { return hi < lo ? 0 : hi - lo + 1; }
    bool empty() const { return hi < lo; }
};

using BoundSlots = std::array<std::optional<uint64_t>, 3>;

inline size_t bound_count(const BoundSlots& b) {
    size_t k = 0;
    for (const auto& v : b) k += v.has_value();
    return k;
}

template <class BV>
class Ring {
public:
    Ring() = default;

    // Triples must be deduplicated; every id must lie in [1..universe].
    static Ring build(std::vector<Triple> triples, uint64_t universe, bool with_counts) {
        for (const auto& t : triples)
            for (Role r : kRoles)
                if (t.at(r) < 1 || t.at(r) > universe)
                    throw std::runtime_error("triple id out of universe range");
        std::sort(triples.begin(), triples.end());
        triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

        Ring ring;
        ring.n_ = triples.size();
        ring.universe_ = universe;

        // Sort once per cyclic order and keep the last column of each.
        std::vector<uint64_t> col(triples.size());

        for (size_t i = 0; i < triples.size(); ++i) col[i] = triples[i].o;  // (s,p,o) order
        ring.columns_[0] = WaveletMatrix<BV>(col, universe);

        std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
            return std::tie(a.o, a.s, a.p) < std::tie(b.o, b.s, b.p);
        });
        for (size_t i = 0; i < triples.size(); ++i) col[i] = triples[i].p;
        ring.columns_[1] = WaveletMatrix<BV>(col, universe);

        std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
            return std::tie(a.p, a.o, a.s) < std::tie(b.p, b.o, b.s);
        });
        for (size_t i = 0; i < triples.size(); ++i) col[i] = triples[i].s;
        ring.columns_[2] = WaveletMatrix<BV>(col, universe);

        for (int t = 0; t < 3; ++t) ring.build_acc(static_cast<TableId>(t));
        if (with_counts)
            for (int t = 0; t < 3; ++t) ring.build_prev_occurrence(static_cast<TableId>(t));
        return ring;
    }

    uint64_t size() const { return n_; }
    uint64_t universe() const { return universe_; }
    bool has_counts() const { return !prev_occ_.empty(); }

    const WaveletMatrix<BV>& column(TableId t) const {
        return columns_[static_cast<size_t>(t)];
    }

    const BitVector& acc_bits(Role a) const { return acc_[role_index(a)]; }

    // A_a[k]: number of rows before the bucket of value k in the table bucketed by a.
    uint64_t acc(Role a, uint64_t k) const {
        if (k < 1 || k > universe_ + 1) throw std::out_of_range("Ring::acc: value out of range");
        if (k == universe_ + 1) return n_;
        const BitVector& bv = acc_[role_index(a)];
        return bv.select1(k).value() - k;
    }

    // Bucket (first-attribute value) of row i in the table bucketed by a.
    uint64_t bucket_of(Role a, uint64_t i) const {
        const BitVector& bv = acc_[role_index(a)];
        return bv.rank1(bv.select0(i).value());
    }

    // Row of the same triple in the next table of the cycle.
    uint64_t lf_step(TableId t, uint64_t i) const {
        const auto& col = column(t);
        uint64_t c = col.access(i);
        return acc(column_attr(t), c) + col.rank(c, i);
    }

    // Inverse of lf_step: row in table t whose image in the next table is i.
    uint64_t lf_step_inv(TableId t, uint64_t i) const {
        if (i < 1 || i > n_) throw std::out_of_range("Ring::lf_step_inv: row out of range");
        Role a = column_attr(t);
        uint64_t c = bucket_of(a, i);
        return column(t).select(c, i - acc(a, c)).value();
    }

    // Rows of table next(t) whose triples extend the rows [s..e] of t with value c
    // prepended on t's column attribute.
    RowRange backward_step(TableId t, RowRange r, uint64_t c) const {
        if (c < 1 || c > universe_) return {1, 0};
        const auto& col = column(t);
        uint64_t base = acc(column_attr(t), c);
        uint64_t lo = base + (r.lo >= 2 ? col.rank(c, r.lo - 1) : 0) + 1;
        uint64_t hi = r.empty() ? lo - 1 : base + col.rank(c, r.hi);
        return {lo, hi};
    }

    // Table and row range matching a set of fixed attribute values. The bound set
    // always forms a prefix of exactly one cyclic order; zero bound values resolve
    // to the full range of `preferred`.
    std::pair<TableId, RowRange> resolve(const BoundSlots& bound,
                                         TableId preferred = TableId::spo) const {
        size_t k = bound_count(bound);
        if (k == 0) return {preferred, {1, n_}};
        TableId target = target_table(bound);
        // Start so that k backward steps land on `target`.
        TableId cur = target;
        for (size_t i = 0; i < (3 - k) % 3; ++i) cur = next_table(cur);
        RowRange range{1, n_};
        for (size_t i = 0; i < k; ++i) {
            Role a = column_attr(cur);
            range = backward_step(cur, range, bound[role_index(a)].value());
            cur = next_table(cur);
            if (range.empty()) return {target, {1, 0}};
        }
        return {cur, range};
    }

    // Smallest value >= c for attribute `var` among rows extending `bound`, or nullopt.
    std::optional<uint64_t> leap(const BoundSlots& bound, Role var, uint64_t c) const {
        if (c > universe_) return std::nullopt;
        c = std::max<uint64_t>(c, 1);
        size_t k = bound_count(bound);
        if (k == 0) {
            const auto& col = column(table_storing(var));
            if (n_ == 0) return std::nullopt;
            return col.range_next_value(1, n_, c);
        }
        auto [table, range] = resolve(bound);
        if (range.empty()) return std::nullopt;
        if (var == column_attr(table)) return column(table).range_next_value(range.lo, range.hi, c);
        // One bound attribute with the variable not adjacent on the left: walk the
        // bucket table of `var` restricted to the bound value and map the first row back.
        Role b = first_attr(table);
        uint64_t x = bound[role_index(b)].value();
        uint64_t start = acc(var, c);
        const auto& col_b = column(table_storing(b));
        uint64_t lo = acc(b, x) + (start >= 1 ? col_b.rank(x, start) : 0) + 1;
        uint64_t hi = acc(b, x + 1);
        if (lo > hi) return std::nullopt;
        uint64_t row = col_b.select(x, lo - acc(b, x)).value();
        return bucket_of(var, row);
    }

    // Number of distinct values of the column of `table` inside [lo..hi].
    uint64_t distinct_in_range(TableId table, RowRange r) const {
        if (prev_occ_.empty())
            throw std::runtime_error("Ring: distinct counting requires a counting build");
        if (r.empty()) return 0;
        // prev_occ holds, shifted by +1, the previous position of the same symbol.
        return prev_occ_[static_cast<size_t>(table)].range_count(r.lo, r.hi, 1, r.lo);
    }

    const WaveletMatrix<BV>& prev_occurrence(TableId t) const {
        return prev_occ_[static_cast<size_t>(t)];
    }

    // Every triple recovered by walking each row through the full cycle.
    std::vector<Triple> decode_all() const {
        std::vector<Triple> out;
        out.reserve(n_);
        for (uint64_t i = 1; i <= n_; ++i) {
            Triple t{};
            // Row i of the spo table: o from the column, then follow the cycle.
            uint64_t o = column(TableId::spo).access(i);
            uint64_t j = lf_step(TableId::spo, i);
            uint64_t p = column(TableId::osp).access(j);
            uint64_t k = lf_step(TableId::osp, j);
            uint64_t s = column(TableId::pos).access(k);
            t = {s, p, o};
            out.push_back(t);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void save(std::ostream& os) const {
        io::write_u64(os, n_);
        io::write_u64(os, universe_);
        io::write_u8(os, prev_occ_.empty() ? 0 : 1);
        for (const auto& c : columns_) c.save(os);
        for (const auto& a : acc_) a.save(os);
        for (const auto& m : prev_occ_) m.save(os);
    }

    static Ring load(std::istream& is) {
        Ring r;
        r.n_ = io::read_u64(is);
        r.universe_ = io::read_u64(is);
        bool with_counts = io::read_u8(is) != 0;
        for (auto& c : r.columns_) c = WaveletMatrix<BV>::load(is);
        for (auto& a : r.acc_) a = BitVector::load(is);
        if (with_counts) {
            r.prev_occ_.reserve(3);
            for (int i = 0; i < 3; ++i) r.prev_occ_.push_back(WaveletMatrix<BV>::load(is));
        }
        return r;
    }

    static Ring assemble(uint64_t n, uint64_t universe, std::array<WaveletMatrix<BV>, 3> columns,
                         std::array<BitVector, 3> accs, std::vector<WaveletMatrix<BV>> prev) {
        Ring r;
        r.n_ = n;
        r.universe_ = universe;
        r.columns_ = std::move(columns);
        r.acc_ = std::move(accs);
        r.prev_occ_ = std::move(prev);
        return r;
    }

    uint64_t size_bytes() const {
        uint64_t total = 17;
        for (const auto& c : columns_) total += c.size_bytes();
        for (const auto& a : acc_) total += a.size_bytes();
        for (const auto& m : prev_occ_) total += m.size_bytes();
        return total;
    }

private:
    uint64_t n_ = 0;
    uint64_t universe_ = 0;
    std::array<WaveletMatrix<BV>, 3> columns_;  // indexed by TableId
    std::array<BitVector, 3> acc_;              // indexed by Role (A_s, A_p, A_o)
    std::vector<WaveletMatrix<BV>> prev_occ_;   // indexed by TableId when present

    // Unary encoding of cumulative symbol counts: '1' then one '0' per occurrence,
    // for each value 1..U of the column holding attribute a.
    void build_acc(TableId t) {
        Role a = column_attr(t);
        const auto& col = column(t);
        std::vector<uint64_t> freq(universe_ + 1, 0);
        for (uint64_t i = 1; i <= n_; ++i) ++freq[col.access(i)];
        BitVectorBuilder bld(n_ + universe_);
        for (uint64_t v = 1; v <= universe_; ++v) {
            bld.push_back(true);
            bld.append_run(false, freq[v]);
        }
        acc_[role_index(a)] = bld.build();
    }

    void build_prev_occurrence(TableId t) {
        const auto& col = column(t);
        std::vector<uint64_t> prev(n_);
        std::vector<uint64_t> last(universe_ + 1, 0);
        for (uint64_t i = 1; i <= n_; ++i) {
            uint64_t c = col.access(i);
            prev[i - 1] = last[c] + 1;  // shifted so the alphabet starts at 1
            last[c] = i;
        }
        if (static_cast<size_t>(t) >= prev_occ_.size()) prev_occ_.resize(static_cast<size_t>(t) + 1);
        prev_occ_[static_cast<size_t>(t)] =
            WaveletMatrix<BV>(prev, std::max<uint64_t>(n_, 1));
    }

    static TableId target_table(const BoundSlots& bound) {
        bool s = bound[0].has_value(), p = bound[1].has_value(), o = bound[2].has_value();
        size_t k = s + p + o;
        if (k == 3) return TableId::spo;
        if (k == 1) return s ? TableId::spo : (o ? TableId::osp : TableId::pos);
        if (s && p) return TableId::spo;
        if (o && s) return TableId::osp;
        return TableId::pos;  // p && o
    }
};

}  // namespace triplex

#endif
