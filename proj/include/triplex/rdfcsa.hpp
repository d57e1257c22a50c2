#ifndef TRIPLEX_RDFCSA_HPP
#define TRIPLEX_RDFCSA_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "triplex/bit_vector.hpp"
#include "triplex/io_util.hpp"
#include "triplex/packed_array.hpp"
#include "triplex/triples.hpp"

namespace triplex {

// Role-specific alphabets: subjects [1..n_s], predicates [1..n_p], objects [1..n_o],
// where terms occurring as both subject and object take ids [1..n_so] in both.
struct RoleMaps {
    std::vector<uint64_t> to_univ[3];   // per Role: role id (1-based) -> universal id
    std::vector<uint64_t> sorted_univ[3];  // per Role: universal ids ascending
    uint64_t n_shared = 0;

    static RoleMaps build(const std::vector<Triple>& triples) {
        std::set<uint64_t> subjects, predicates, objects;
        for (const auto& t : triples) {
            subjects.insert(t.s);
            predicates.insert(t.p);
            objects.insert(t.o);
        }
        std::vector<uint64_t> shared;
        std::set_intersection(subjects.begin(), subjects.end(), objects.begin(), objects.end(),
                              std::back_inserter(shared));
        RoleMaps rm;
        rm.n_shared = shared.size();
        auto& subj = rm.to_univ[role_index(Role::subject)];
        auto& pred = rm.to_univ[role_index(Role::predicate)];
        auto& obj = rm.to_univ[role_index(Role::object)];
        subj = shared;
        for (uint64_t u : subjects)
            if (!std::binary_search(shared.begin(), shared.end(), u)) subj.push_back(u);
        obj = shared;
        for (uint64_t u : objects)
            if (!std::binary_search(shared.begin(), shared.end(), u)) obj.push_back(u);
        pred.assign(predicates.begin(), predicates.end());
        rm.finish();
        return rm;
    }

    void finish() {
        for (int r = 0; r < 3; ++r) {
            index_[r].clear();
            for (size_t i = 0; i < to_univ[r].size(); ++i) index_[r].emplace(to_univ[r][i], i + 1);
            sorted_univ[r] = to_univ[r];
            std::sort(sorted_univ[r].begin(), sorted_univ[r].end());
        }
    }

    uint64_t size(Role r) const { return to_univ[role_index(r)].size(); }

    std::optional<uint64_t> role_id(Role r, uint64_t universal) const {
        const auto& idx = index_[role_index(r)];
        auto it = idx.find(universal);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    uint64_t universal(Role r, uint64_t rid) const {
        const auto& v = to_univ[role_index(r)];
        if (rid < 1 || rid > v.size()) throw std::out_of_range("RoleMaps: role id out of range");
        return v[rid - 1];
    }

    void save(std::ostream& os) const {
        io::write_u64(os, n_shared);
        for (int r = 0; r < 3; ++r) io::write_u64_vec(os, to_univ[r]);
    }

    static RoleMaps load(std::istream& is) {
        RoleMaps rm;
        rm.n_shared = io::read_u64(is);
        for (int r = 0; r < 3; ++r) rm.to_univ[r] = io::read_u64_vec(is);
        rm.finish();
        return rm;
    }

    uint64_t size_bytes() const {
        uint64_t b = 8;
        for (int r = 0; r < 3; ++r) b += 8 + to_univ[r].size() * 8;
        return b;
    }

private:
    std::unordered_map<uint64_t, uint64_t> index_[3];
};

// Psi stored as a plain fixed-width array. Values are kept relative to the region
// they map into, so each entry needs only ceil(log2 n) bits.
class PlainPsi {
public:
    PlainPsi() = default;

    PlainPsi(const std::vector<uint64_t>& psi, uint64_t n) : n_(n) {
        vals_ = PackedArray(psi.size(), PackedArray::width_for(n > 0 ? n - 1 : 0));
        for (uint64_t i = 0; i < psi.size(); ++i) {
            uint64_t base = region_base(i + 1);
            vals_.set(i, psi[i] - base - 1);
        }
    }

    uint64_t access(uint64_t i) const { return vals_.get(i - 1) + region_base(i) + 1; }

    void save(std::ostream& os) const {
        io::write_u64(os, n_);
        vals_.save(os);
    }

    static PlainPsi load(std::istream& is) {
        PlainPsi p;
        p.n_ = io::read_u64(is);
        p.vals_ = PackedArray::load(is);
        return p;
    }

    uint64_t size_bytes() const { return vals_.size_bytes() + 8; }

    static constexpr const char* variant_name() { return "plain"; }

private:
    uint64_t n_ = 0;
    PackedArray vals_;

    // Positions [1..n] map into (n,2n], (n,2n] into (2n,3n], (2n,3n] into [1..n].
    uint64_t region_base(uint64_t pos) const {
        uint64_t region = (pos - 1) / n_;
        return region == 0 ? n_ : region == 1 ? 2 * n_ : 0;
    }
};

// Psi sampled every 16 entries; the gaps in between are byte-aligned codes with
// run-length compression of +1 runs.
class SampledPsi {
public:
    static constexpr uint64_t kSample = 16;

    SampledPsi() = default;

    SampledPsi(const std::vector<uint64_t>& psi, uint64_t n) {
        (void)n;
        size_ = psi.size();
        for (uint64_t b = 0; b * kSample < psi.size(); ++b) {
            uint64_t first = b * kSample;
            samples_.push_back(psi[first]);
            offsets_.push_back(stream_.size());
            uint64_t last = std::min<uint64_t>(first + kSample, psi.size());
            uint64_t i = first + 1;
            while (i < last) {
                if (psi[i] == psi[i - 1] + 1) {
                    uint64_t run = 0;
                    while (i < last && psi[i] == psi[i - 1] + 1) {
                        ++run;
                        ++i;
                    }
                    stream_.push_back(0x00);
                    put_varint(run);
                } else {
                    stream_.push_back(0x01);
                    put_varint(zigzag(static_cast<int64_t>(psi[i]) -
                                      static_cast<int64_t>(psi[i - 1])));
                    ++i;
                }
            }
        }
    }

    uint64_t access(uint64_t i) const {
        uint64_t idx = i - 1;
        uint64_t b = idx / kSample;
        uint64_t val = samples_[b];
        uint64_t need = idx % kSample;
        uint64_t pos = offsets_[b];
        while (need > 0) {
            uint8_t tag = stream_[pos++];
            if (tag == 0x00) {
                uint64_t run = get_varint(pos);
                uint64_t take = std::min(run, need);
                val += take;
                need -= take;
            } else {
                int64_t d = unzigzag(get_varint(pos));
                val = static_cast<uint64_t>(static_cast<int64_t>(val) + d);
                --need;
            }
        }
        return val;
    }

    void save(std::ostream& os) const {
        io::write_u64(os, size_);
        io::write_u64_vec(os, samples_);
        io::write_u64_vec(os, offsets_);
        io::write_u64(os, stream_.size());
        os.write(reinterpret_cast<const char*>(stream_.data()),
                 static_cast<std::streamsize>(stream_.size()));
    }

    static SampledPsi load(std::istream& is) {
        SampledPsi p;
        p.size_ = io::read_u64(is);
        p.samples_ = io::read_u64_vec(is);
        p.offsets_ = io::read_u64_vec(is);
        uint64_t k = io::read_u64(is);
        p.stream_.resize(k);
        if (k && !is.read(reinterpret_cast<char*>(p.stream_.data()), static_cast<std::streamsize>(k)))
            throw std::runtime_error("unexpected end of stream");
        return p;
    }

    uint64_t size_bytes() const {
        return 8 + samples_.size() * 8 + offsets_.size() * 8 + stream_.size();
    }

    static constexpr const char* variant_name() { return "sampled"; }

private:
    uint64_t size_ = 0;
    std::vector<uint64_t> samples_;
    std::vector<uint64_t> offsets_;
    std::vector<uint8_t> stream_;

    static uint64_t zigzag(int64_t v) {
        return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
    }
    static int64_t unzigzag(uint64_t v) {
        return static_cast<int64_t>(v >> 1) ^ -static_cast<int64_t>(v & 1);
    }

    void put_varint(uint64_t v) {
        while (v >= 0x80) {
            stream_.push_back(static_cast<uint8_t>(v) | 0x80);
            v >>= 7;
        }
        stream_.push_back(static_cast<uint8_t>(v));
    }

    uint64_t get_varint(uint64_t& pos) const {
        uint64_t v = 0;
        unsigned shift = 0;
        for (;;) {
            uint8_t b = stream_[pos++];
            v |= static_cast<uint64_t>(b & 0x7F) << shift;
            if (!(b & 0x80)) break;
            shift += 7;
        }
        return v;
    }
};

// One cyclic compressed suffix array over triples whose attributes are given in
// this structure's own slot order (slot 0 first, then 1, then 2, cyclically).
template <class PsiT>
class Csa {
public:
    Csa() = default;

    // rows: role-id triples in slot order; alpha: alphabet size per slot.
    static Csa build(std::vector<std::array<uint64_t, 3>> rows, std::array<uint64_t, 3> alpha) {
        Csa csa;
        csa.n_ = rows.size();
        csa.alpha_ = alpha;
        std::sort(rows.begin(), rows.end());
        uint64_t n = rows.size();

        // Suffix ranks per slot: slot-0 suffixes sort like the rows themselves;
        // the others sort by the cyclic reads starting at slots 1 and 2.
        std::vector<uint64_t> order1(n), order2(n);
        std::iota(order1.begin(), order1.end(), 0);
        order2 = order1;
        std::sort(order1.begin(), order1.end(), [&](uint64_t a, uint64_t b) {
            return std::tie(rows[a][1], rows[a][2], rows[a][0]) <
                   std::tie(rows[b][1], rows[b][2], rows[b][0]);
        });
        std::sort(order2.begin(), order2.end(), [&](uint64_t a, uint64_t b) {
            return std::tie(rows[a][2], rows[a][0], rows[a][1]) <
                   std::tie(rows[b][2], rows[b][0], rows[b][1]);
        });
        std::vector<uint64_t> rank1v(n), rank2v(n);
        for (uint64_t i = 0; i < n; ++i) rank1v[order1[i]] = i + 1;
        for (uint64_t i = 0; i < n; ++i) rank2v[order2[i]] = i + 1;

        std::vector<uint64_t> psi(3 * n);
        for (uint64_t i = 0; i < n; ++i) {
            psi[i] = n + rank1v[i];
            psi[n + rank1v[i] - 1] = 2 * n + rank2v[i];
            psi[2 * n + rank2v[i] - 1] = i + 1;
        }

        BitVectorBuilder d(3 * n);
        uint64_t prev = 0;
        auto push_sym = [&](uint64_t mapped) {
            d.push_back(mapped != prev);
            prev = mapped;
        };
        for (uint64_t i = 0; i < n; ++i) push_sym(rows[i][0]);
        for (uint64_t i = 0; i < n; ++i) push_sym(rows[order1[i]][1] + alpha[0]);
        for (uint64_t i = 0; i < n; ++i) push_sym(rows[order2[i]][2] + alpha[0] + alpha[1]);
        csa.d_ = d.build();
        csa.psi_ = PsiT(psi, n);
        return csa;
    }

    uint64_t size() const { return n_; }
    uint64_t text_size() const { return 3 * n_; }
    uint64_t alphabet(int slot) const { return alpha_[slot]; }
    uint64_t max_symbol() const { return alpha_[0] + alpha_[1] + alpha_[2]; }
    const BitVector& marks() const { return d_; }

    uint64_t gap(int slot) const {
        return slot == 0 ? 0 : slot == 1 ? alpha_[0] : alpha_[0] + alpha_[1];
    }

    uint64_t psi(uint64_t i) const { return psi_.access(i); }

    // Mapped first symbol of the suffix ranked i.
    uint64_t symbol_at(uint64_t i) const { return d_.rank1(i); }

    // Highest suffix rank a value of `slot` can start at.
    uint64_t limit(int slot) const { return (static_cast<uint64_t>(slot) + 1) * n_; }

    // Suffix range of cyclic triples starting with mapped symbol c; empty if unused.
    std::pair<uint64_t, uint64_t> range(uint64_t c) const {
        if (c < 1 || c > max_symbol() || n_ == 0) return {1, 0};
        auto lo = d_.select1(c);
        if (!lo) return {1, 0};
        uint64_t hi = c == max_symbol() ? 3 * n_ : d_.select1(c + 1).value() - 1;
        return {*lo, hi};
    }

    // Subrange of [l..r] (within one symbol run, Psi increasing) whose Psi values
    // land inside the run of mapped symbol d.
    std::pair<uint64_t, uint64_t> down(uint64_t l, uint64_t r, uint64_t d) const {
        auto [dl, dr] = range(d);
        if (dl > dr || l > r) return {1, 0};
        uint64_t lo = first_psi_at_least(l, r, dl);
        if (lo == 0 || psi(lo) > dr) return {1, 0};
        uint64_t hi = last_psi_at_most(lo, r, dr);
        return {lo, hi};
    }

    // Smallest l' in [l..r] with Psi(l') in [tl..tr]; 0 when none. Requires Psi
    // increasing on [l..r].
    uint64_t find_target_psi(uint64_t l, uint64_t r, uint64_t tl, uint64_t tr) const {
        if (l > r) return 0;
        uint64_t lo = first_psi_at_least(l, r, tl);
        if (lo == 0 || psi(lo) > tr) return 0;
        return lo;
    }

    // Smallest l' in [l..r] with Psi(Psi(l')) in [tl..tr]; 0 when none. Psi o Psi is
    // only piecewise increasing, so the range is cut at middle-symbol run borders.
    uint64_t find_target_psi2(uint64_t l, uint64_t r, uint64_t tl, uint64_t tr) const {
        if (l > r) return 0;
        if (r - l + 1 <= 64) {
            for (uint64_t i = l; i <= r; ++i) {
                uint64_t v = psi(psi(i));
                if (v >= tl && v <= tr) return i;
            }
            return 0;
        }
        uint64_t cur = l;
        while (cur <= r) {
            uint64_t mid_sym = symbol_at(psi(cur));
            uint64_t run_hi = mid_sym == max_symbol() ? 3 * n_ : d_.select1(mid_sym + 1).value() - 1;
            uint64_t seg_end = last_psi_at_most(cur, r, run_hi);
            // Within [cur..seg_end] Psi lands in one run, so Psi o Psi is increasing.
            uint64_t lo = cur, hi = seg_end, found = 0;
            while (lo <= hi) {
                uint64_t mid = lo + (hi - lo) / 2;
                if (psi(psi(mid)) >= tl) {
                    found = mid;
                    hi = mid - 1;
                } else {
                    lo = mid + 1;
                }
            }
            if (found != 0 && psi(psi(found)) <= tr) return found;
            cur = seg_end + 1;
        }
        return 0;
    }

    // Role-id triple of the cyclic string whose slot-0 suffix has rank i (tests).
    std::array<uint64_t, 3> decode_row(uint64_t i) const {
        std::array<uint64_t, 3> out{};
        out[0] = symbol_at(i) - gap(0);
        uint64_t j = psi(i);
        out[1] = symbol_at(j) - gap(1);
        out[2] = symbol_at(psi(j)) - gap(2);
        return out;
    }

    void save(std::ostream& os) const {
        io::write_u64(os, n_);
        for (auto a : alpha_) io::write_u64(os, a);
        d_.save(os);
        psi_.save(os);
    }

    static Csa load(std::istream& is) {
        Csa c;
        c.n_ = io::read_u64(is);
        for (auto& a : c.alpha_) a = io::read_u64(is);
        c.d_ = BitVector::load(is);
        c.psi_ = PsiT::load(is);
        return c;
    }

    uint64_t size_bytes() const { return 32 + d_.size_bytes() + psi_.size_bytes(); }

private:
    uint64_t n_ = 0;
    std::array<uint64_t, 3> alpha_{};
    BitVector d_;
    PsiT psi_;

    // Smallest i in [l..r] with Psi(i) >= t, else 0; Psi increasing on [l..r].
    uint64_t first_psi_at_least(uint64_t l, uint64_t r, uint64_t t) const {
        uint64_t lo = l, hi = r, ans = 0;
        while (lo <= hi) {
            uint64_t mid = lo + (hi - lo) / 2;
            if (psi(mid) >= t) {
                ans = mid;
                hi = mid - 1;
            } else {
                lo = mid + 1;
            }
        }
        return ans;
    }

    // Largest i in [l..r] with Psi(i) <= t; requires Psi(l) <= t.
    uint64_t last_psi_at_most(uint64_t l, uint64_t r, uint64_t t) const {
        uint64_t lo = l, hi = r, ans = l;
        while (lo <= hi) {
            uint64_t mid = lo + (hi - lo) / 2;
            if (psi(mid) <= t) {
                ans = mid;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        return ans;
    }
};

// Role-id values fixed so far for one triple pattern.
using CsaBound = std::array<std::optional<uint64_t>, 3>;  // indexed by Role

// Two cyclic CSAs (spo and ops attribute orders) over the same triple set.
template <class PsiT>
class RdfcsaPair {
public:
    RdfcsaPair() = default;

    static RdfcsaPair build(const std::vector<Triple>& triples, uint64_t universe) {
        RdfcsaPair pair;
        pair.universe_ = universe;
        pair.n_ = triples.size();
        pair.roles_ = RoleMaps::build(triples);
        const auto& rm = pair.roles_;

        std::vector<std::array<uint64_t, 3>> spo_rows, ops_rows;
        spo_rows.reserve(triples.size());
        ops_rows.reserve(triples.size());
        for (const auto& t : triples) {
            uint64_t s = rm.role_id(Role::subject, t.s).value();
            uint64_t p = rm.role_id(Role::predicate, t.p).value();
            uint64_t o = rm.role_id(Role::object, t.o).value();
            spo_rows.push_back({s, p, o});
            ops_rows.push_back({o, p, s});
        }
        uint64_t ns = rm.size(Role::subject), np = rm.size(Role::predicate),
                 no = rm.size(Role::object);
        pair.spo_ = Csa<PsiT>::build(std::move(spo_rows), {ns, np, no});
        pair.ops_ = Csa<PsiT>::build(std::move(ops_rows), {no, np, ns});
        return pair;
    }

    uint64_t size() const { return n_; }
    uint64_t universe() const { return universe_; }
    const RoleMaps& roles() const { return roles_; }
    const Csa<PsiT>& spo() const { return spo_; }
    const Csa<PsiT>& ops() const { return ops_; }

    // Slot of a role inside each CSA's attribute order.
    static int slot_spo(Role r) { return static_cast<int>(role_index(r)); }
    static int slot_ops(Role r) {
        return r == Role::object ? 0 : r == Role::predicate ? 1 : 2;
    }

    // Number of triples matching the bound role values.
    uint64_t match_count(const CsaBound& bound) const {
        size_t k = bound_count_of(bound);
        if (k == 0) return 3 * n_;
        if (k == 1) {
            Role b = first_bound(bound);
            auto [l, r] = spo_.range(map_spo(b, *bound[role_index(b)]));
            return r < l ? 0 : r - l + 1;
        }
        if (k == 2) {
            auto [l, r] = two_bound_range(bound);
            return r < l ? 0 : r - l + 1;
        }
        return exists(bound) ? 1 : 0;
    }

    // Whether the fully bound triple is present.
    bool exists(const CsaBound& bound) const {
        uint64_t s = map_spo(Role::subject, *bound[0]);
        uint64_t p = map_spo(Role::predicate, *bound[1]);
        uint64_t o = map_spo(Role::object, *bound[2]);
        auto [l1, r1] = spo_.range(s);
        auto [l, r] = spo_.down(l1, r1, p);
        if (l > r) return false;
        auto [ol, orr] = spo_.range(o);
        if (ol > orr) return false;
        return spo_.find_target_psi2(l, r, ol, orr) != 0;
    }

    // Smallest role id >= c (in var's role alphabet) extending the bound values,
    // or nullopt. c and the result are role ids, not universal ids.
    std::optional<uint64_t> leap(const CsaBound& bound, Role var, uint64_t c) const {
        if (c < 1) c = 1;
        if (c > roles_.size(var) || n_ == 0) return std::nullopt;
        size_t k = bound_count_of(bound);
        if (k == 0) return c;

        if (k == 1) {
            Role b = first_bound(bound);
            // Work in the CSA where var is the cyclic successor of the bound role.
            bool use_spo = cyclic_succ_spo(b) == var;
            const Csa<PsiT>& csa = use_spo ? spo_ : ops_;
            uint64_t bm = use_spo ? map_spo(b, *bound[role_index(b)])
                                  : map_ops(b, *bound[role_index(b)]);
            int vslot = use_spo ? slot_spo(var) : slot_ops(var);
            uint64_t cm = (use_spo ? map_spo(var, c) : map_ops(var, c));
            auto [l, r] = csa.range(bm);
            if (l > r) return std::nullopt;
            uint64_t tl = csa.marks().select1(cm).value();
            uint64_t lp = csa.find_target_psi(l, r, tl, csa.limit(vslot));
            if (lp == 0) return std::nullopt;
            return csa.symbol_at(csa.psi(lp)) - csa.gap(vslot);
        }

        if (k == 2) {
            auto [l, r] = two_bound_range(bound);
            if (l > r) return std::nullopt;
            int vslot = two_bound_var_slot(bound);
            uint64_t cm = c + spo_.gap(vslot);
            uint64_t tl = spo_.marks().select1(cm).value();
            uint64_t lp = spo_.find_target_psi2(l, r, tl, spo_.limit(vslot));
            if (lp == 0) return std::nullopt;
            return spo_.symbol_at(spo_.psi(spo_.psi(lp))) - spo_.gap(vslot);
        }
        return std::nullopt;
    }

    void save(std::ostream& os) const {
        io::write_u64(os, n_);
        io::write_u64(os, universe_);
        roles_.save(os);
        spo_.save(os);
        ops_.save(os);
    }

    static RdfcsaPair load(std::istream& is) {
        RdfcsaPair p;
        p.n_ = io::read_u64(is);
        p.universe_ = io::read_u64(is);
        p.roles_ = RoleMaps::load(is);
        p.spo_ = Csa<PsiT>::load(is);
        p.ops_ = Csa<PsiT>::load(is);
        return p;
    }

    static RdfcsaPair assemble(uint64_t n, uint64_t universe, RoleMaps roles, Csa<PsiT> spo,
                               Csa<PsiT> ops) {
        RdfcsaPair p;
        p.n_ = n;
        p.universe_ = universe;
        p.roles_ = std::move(roles);
        p.spo_ = std::move(spo);
        p.ops_ = std::move(ops);
        return p;
    }

    uint64_t size_bytes() const {
        return 16 + roles_.size_bytes() + spo_.size_bytes() + ops_.size_bytes();
    }

    // Every triple decoded back to universal ids (tests).
    std::vector<Triple> decode_all() const {
        std::vector<Triple> out;
        for (uint64_t i = 1; i <= n_; ++i) {
            auto row = spo_.decode_row(i);
            out.push_back({roles_.universal(Role::subject, row[0]),
                           roles_.universal(Role::predicate, row[1]),
                           roles_.universal(Role::object, row[2])});
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    uint64_t map_spo(Role r, uint64_t rid) const { return rid + spo_.gap(slot_spo(r)); }
    uint64_t map_ops(Role r, uint64_t rid) const { return rid + ops_.gap(slot_ops(r)); }

    static Role cyclic_succ_spo(Role r) {
        return r == Role::subject ? Role::predicate
               : r == Role::predicate ? Role::object
                                      : Role::subject;
    }

    // Suffix range for two bound roles, resolved in the spo CSA via the cyclically
    // adjacent orientation of the pair.
    std::pair<uint64_t, uint64_t> two_bound_range(const CsaBound& bound) const {
        auto [first, second] = two_bound_orientation(bound);
        uint64_t fm = map_spo(first, *bound[role_index(first)]);
        uint64_t sm = map_spo(second, *bound[role_index(second)]);
        auto [l, r] = spo_.range(fm);
        if (l > r) return {1, 0};
        return spo_.down(l, r, sm);
    }

private:
    uint64_t n_ = 0;
    uint64_t universe_ = 0;
    RoleMaps roles_;
    Csa<PsiT> spo_, ops_;

    static size_t bound_count_of(const CsaBound& b) {
        size_t k = 0;
        for (const auto& v : b) k += v.has_value();
        return k;
    }

    static Role first_bound(const CsaBound& b) {
        for (Role r : kRoles)
            if (b[role_index(r)]) return r;
        throw std::logic_error("no bound role");
    }

    // Orientation (first, second) with second the cyclic successor of first in spo.
    static std::pair<Role, Role> two_bound_orientation(const CsaBound& b) {
        bool s = b[0].has_value(), p = b[1].has_value(), o = b[2].has_value();
        if (s && p) return {Role::subject, Role::predicate};
        if (p && o) return {Role::predicate, Role::object};
        if (o && s) return {Role::object, Role::subject};
        throw std::logic_error("need exactly two bound roles");
    }

    // Slot (in spo order) of the unbound role given two bound ones.
    int two_bound_var_slot(const CsaBound& b) const {
        auto [first, second] = two_bound_orientation(b);
        (void)second;
        Role var = cyclic_succ_spo(cyclic_succ_spo(first));
        return slot_spo(var);
    }
};

}  // namespace triplex

#endif
