#ifndef TRIPLEX_LTJ_HPP
#define TRIPLEX_LTJ_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "triplex/estimators.hpp"
#include "triplex/oracle.hpp"
#include "triplex/rdfcsa.hpp"
#include "triplex/ring.hpp"
#include "triplex/triples.hpp"
#include "triplex/wavelet_matrix.hpp"

namespace triplex {

// ---------------------------------------------------------------------------
// Engine configuration
// ---------------------------------------------------------------------------

enum class VeoMode { global, adaptive };

enum class EstimatorKind {
    range_size,         // length of the matching row range
    distinct_children,  // number of distinct candidate values (counting builds only)
    refined,            // partition-sum intersection bound
    random_order,       // fully random variable order
    random_lonely_last, // random order, lonely variables at the end
    random_weights      // standard ordering restrictions with random weights
};

struct Strategy {
    VeoMode mode = VeoMode::adaptive;
    EstimatorKind estimator = EstimatorKind::range_size;
    uint32_t refine_levels = 3;
    uint64_t seed = 0;
    std::optional<std::vector<uint32_t>> forced_order;  // overrides global ordering
};

struct EngineConfig {
    std::optional<uint64_t> limit = 1000;
    std::optional<double> timeout_seconds = 600.0;
    Strategy strategy;
};

struct EvalStats {
    uint64_t elapsed_us = 0;
    uint64_t results = 0;
    uint64_t leap_calls = 0;
    bool timed_out = false;
};

struct EvalResult {
    std::vector<Mapping> mappings;
    EvalStats stats;
};

// ---------------------------------------------------------------------------
// Index adapters. Each exposes the cursor interface the engine drives:
// resolved pattern state, weights, leap, down/up, and optional capabilities
// (distinct counting, refined sources, wavelet-range intersection).
// ---------------------------------------------------------------------------

struct UniversalDomain {};  // values already are universal ids

// Bidirectional ring index; optionally carries the per-column distinct-count
// structures (the counting build).
template <class BV>
class RingIndex {
public:
    using bv_type = BV;
    static constexpr bool kSupportsIntersect = false;
    static constexpr bool kSupportsRefined = true;
    using VarDomain = UniversalDomain;

    RingIndex() = default;
    explicit RingIndex(Ring<BV> ring) : ring_(std::move(ring)) {}

    static RingIndex build(std::vector<Triple> triples, uint64_t universe, bool with_counts) {
        return RingIndex(Ring<BV>::build(std::move(triples), universe, with_counts));
    }

    uint64_t size() const { return ring_.size(); }
    uint64_t universe() const { return ring_.universe(); }
    bool supports_distinct() const { return ring_.has_counts(); }
    const Ring<BV>& ring() const { return ring_; }

    struct Cursor {
        TriplePattern pattern;
        BoundSlots bound;
        std::vector<BoundSlots> trail;
    };

    Cursor make_cursor(const TriplePattern& pat) const {
        Cursor cur;
        cur.pattern = pat;
        for (Role r : kRoles)
            if (pat.is_const(r)) cur.bound[role_index(r)] = pat.at(r).value;
        return cur;
    }

    bool cursor_empty(const Cursor& cur) const { return weight(cur) == 0; }

    uint64_t weight(const Cursor& cur) const {
        if (ring_.size() == 0) return 0;
        if (bound_count(cur.bound) == 0) return ring_.size();
        return ring_.resolve(cur.bound).second.size();
    }

    VarDomain var_domain(const Bgp&, uint32_t) const { return {}; }
    uint64_t to_universal(const VarDomain&, uint64_t v) const { return v; }

    std::optional<uint64_t> leap(const Cursor& cur, Role slot, uint64_t c,
                                 const VarDomain&) const {
        return ring_.leap(cur.bound, slot, c);
    }

    bool down(Cursor& cur, Role slot, uint64_t value, const VarDomain&) const {
        cur.trail.push_back(cur.bound);
        cur.bound[role_index(slot)] = value;
        return !ring_.resolve(cur.bound).second.empty();
    }

    void up(Cursor& cur) const {
        cur.bound = cur.trail.back();
        cur.trail.pop_back();
    }

    uint64_t distinct_weight(const Cursor& cur, Role slot) const {
        if (!ring_.has_counts() || ring_.size() == 0) return weight(cur);
        if (bound_count(cur.bound) == 0) {
            TableId t = table_storing(slot);
            return ring_.distinct_in_range(t, {1, ring_.size()});
        }
        auto [table, range] = ring_.resolve(cur.bound);
        if (slot != column_attr(table)) return range.size();  // variable not exposed here
        return ring_.distinct_in_range(table, range);
    }

    PartitionSource<BV> refined_source(const Cursor& cur, Role slot) const {
        uint64_t n = ring_.size();
        if (bound_count(cur.bound) == 0)
            return PartitionSource<BV>::range(&ring_.column(table_storing(slot)), 1, n);
        auto [table, range] = ring_.resolve(cur.bound);
        if (slot == column_attr(table))
            return PartitionSource<BV>::range(&ring_.column(table), range.lo, range.hi);
        Role b = first_attr(table);
        return PartitionSource<BV>::bucket(&ring_.acc_bits(slot),
                                           &ring_.column(table_storing(b)),
                                           *cur.bound[role_index(b)]);
    }

    void save(std::ostream& os) const { ring_.save(os); }
    static RingIndex load(std::istream& is) { return RingIndex(Ring<BV>::load(is)); }
    uint64_t size_bytes() const { return ring_.size_bytes(); }

private:
    Ring<BV> ring_;
};

// One-directional ring pair: the forward ring plus a subject/object-swapped one,
// so every elimination can extend a range on the left. Candidate values come from
// wavelet-range intersection instead of per-pattern leaps.
template <class BV>
class URingIndex {
public:
    using bv_type = BV;
    static constexpr bool kSupportsIntersect = true;
    static constexpr bool kSupportsRefined = true;
    using VarDomain = UniversalDomain;

    URingIndex() = default;
    URingIndex(Ring<BV> fwd, Ring<BV> rev) : fwd_(std::move(fwd)), rev_(std::move(rev)) {}

    static URingIndex build(std::vector<Triple> triples, uint64_t universe) {
        std::vector<Triple> swapped;
        swapped.reserve(triples.size());
        for (const auto& t : triples) swapped.push_back({t.o, t.p, t.s});
        return URingIndex(Ring<BV>::build(triples, universe, false),
                          Ring<BV>::build(std::move(swapped), universe, false));
    }

    uint64_t size() const { return fwd_.size(); }
    uint64_t universe() const { return fwd_.universe(); }
    bool supports_distinct() const { return false; }
    const Ring<BV>& forward() const { return fwd_; }
    const Ring<BV>& reverse() const { return rev_; }

    struct Cursor {
        TriplePattern pattern;
        BoundSlots bound;
        std::vector<BoundSlots> trail;
    };

    Cursor make_cursor(const TriplePattern& pat) const {
        Cursor cur;
        cur.pattern = pat;
        for (Role r : kRoles)
            if (pat.is_const(r)) cur.bound[role_index(r)] = pat.at(r).value;
        return cur;
    }

    bool cursor_empty(const Cursor& cur) const { return weight(cur) == 0; }

    uint64_t weight(const Cursor& cur) const {
        if (fwd_.size() == 0) return 0;
        if (bound_count(cur.bound) == 0) return fwd_.size();
        return fwd_.resolve(cur.bound).second.size();
    }

    VarDomain var_domain(const Bgp&, uint32_t) const { return {}; }
    uint64_t to_universal(const VarDomain&, uint64_t v) const { return v; }

    bool down(Cursor& cur, Role slot, uint64_t value, const VarDomain&) const {
        cur.trail.push_back(cur.bound);
        cur.bound[role_index(slot)] = value;
        return !fwd_.resolve(cur.bound).second.empty();
    }

    void up(Cursor& cur) const {
        cur.bound = cur.trail.back();
        cur.trail.pop_back();
    }

    // Range whose wavelet symbols are exactly the candidate values of `slot`,
    // taken from whichever ring keeps the variable on the left of the bound set.
    WmRange<BV> var_range(const Cursor& cur, Role slot) const {
        if (fwd_.size() == 0) return {&fwd_.column(TableId::spo), 1, 0};
        if (bound_count(cur.bound) == 0)
            return {&fwd_.column(table_storing(slot)), 1, fwd_.size()};
        auto [ft, fr] = fwd_.resolve(cur.bound);
        if (slot == column_attr(ft)) return {&fwd_.column(ft), fr.lo, fr.hi};
        BoundSlots rb = swapped_bound(cur.bound);
        auto [rt, rr] = rev_.resolve(rb);
        Role rslot = swap_so(slot);
        if (rslot != column_attr(rt))
            throw std::logic_error("URingIndex: variable adjacent in neither ring");
        return {&rev_.column(rt), rr.lo, rr.hi};
    }

    PartitionSource<BV> refined_source(const Cursor& cur, Role slot) const {
        auto r = var_range(cur, slot);
        return PartitionSource<BV>::range(r.wm, r.lo, r.hi);
    }

    void save(std::ostream& os) const {
        fwd_.save(os);
        rev_.save(os);
    }
    static URingIndex load(std::istream& is) {
        auto fwd = Ring<BV>::load(is);
        auto rev = Ring<BV>::load(is);
        return URingIndex(std::move(fwd), std::move(rev));
    }
    uint64_t size_bytes() const { return fwd_.size_bytes() + rev_.size_bytes(); }

    static Role swap_so(Role r) {
        return r == Role::subject ? Role::object : r == Role::object ? Role::subject : r;
    }

private:
    Ring<BV> fwd_, rev_;

    static BoundSlots swapped_bound(const BoundSlots& b) {
        BoundSlots out;
        out[role_index(Role::subject)] = b[role_index(Role::object)];
        out[role_index(Role::object)] = b[role_index(Role::subject)];
        out[role_index(Role::predicate)] = b[role_index(Role::predicate)];
        return out;
    }
};

// Pair of cyclic CSAs. Leaps run natively over role alphabets; the engine picks a
// value domain per variable so that cross-role joins stay consistent (shared
// subject/object ids, or a universal-id scan when predicates join with nodes).
template <class PsiT>
class RdfcsaIndex {
public:
    using psi_type = PsiT;
    static constexpr bool kSupportsIntersect = false;
    static constexpr bool kSupportsRefined = false;

    RdfcsaIndex() = default;
    explicit RdfcsaIndex(RdfcsaPair<PsiT> pair) : pair_(std::move(pair)) {}

    static RdfcsaIndex build(std::vector<Triple> triples, uint64_t universe) {
        return RdfcsaIndex(RdfcsaPair<PsiT>::build(std::move(triples), universe));
    }

    uint64_t size() const { return pair_.size(); }
    uint64_t universe() const { return pair_.universe(); }
    bool supports_distinct() const { return false; }
    const RdfcsaPair<PsiT>& pair() const { return pair_; }

    struct VarDomain {
        enum class Kind { role, shared, universal } kind = Kind::universal;
        Role role = Role::subject;
    };

    struct Cursor {
        TriplePattern pattern;
        CsaBound bound;  // role ids per slot's own alphabet
        bool dead = false;
        std::vector<CsaBound> trail;
    };

    Cursor make_cursor(const TriplePattern& pat) const {
        Cursor cur;
        cur.pattern = pat;
        for (Role r : kRoles) {
            if (!pat.is_const(r)) continue;
            auto rid = pair_.roles().role_id(r, pat.at(r).value);
            if (!rid) {
                cur.dead = true;
                return cur;
            }
            cur.bound[role_index(r)] = *rid;
        }
        return cur;
    }

    bool cursor_empty(const Cursor& cur) const {
        if (cur.dead || pair_.size() == 0) return true;
        return pair_.match_count(cur.bound) == 0;
    }

    uint64_t weight(const Cursor& cur) const {
        if (cur.dead || pair_.size() == 0) return 0;
        return pair_.match_count(cur.bound);
    }

    // A variable confined to one role leaps natively in that role's alphabet; a
    // subject/object join runs over the shared id prefix; anything joining a
    // predicate with a node falls back to scanning universal ids.
    VarDomain var_domain(const Bgp& q, uint32_t var) const {
        bool roles_seen[3] = {false, false, false};
        for (const auto& occ : q.occurrences(var)) roles_seen[role_index(occ.role)] = true;
        int count = roles_seen[0] + roles_seen[1] + roles_seen[2];
        if (count == 1) {
            Role r = roles_seen[0] ? Role::subject : roles_seen[1] ? Role::predicate : Role::object;
            return {VarDomain::Kind::role, r};
        }
        if (!roles_seen[role_index(Role::predicate)])
            return {VarDomain::Kind::shared, Role::subject};
        return {VarDomain::Kind::universal, Role::subject};
    }

    uint64_t to_universal(const VarDomain& d, uint64_t v) const {
        switch (d.kind) {
            case VarDomain::Kind::role: return pair_.roles().universal(d.role, v);
            case VarDomain::Kind::shared: return pair_.roles().universal(Role::subject, v);
            default: return v;
        }
    }

    std::optional<uint64_t> leap(const Cursor& cur, Role slot, uint64_t c,
                                 const VarDomain& d) const {
        if (cur.dead || pair_.size() == 0) return std::nullopt;
        switch (d.kind) {
            case VarDomain::Kind::role:
                return pair_.leap(cur.bound, slot, c);
            case VarDomain::Kind::shared: {
                auto v = pair_.leap(cur.bound, slot, c);
                if (!v || *v > pair_.roles().n_shared) return std::nullopt;
                return v;
            }
            default: {
                // Scan the slot's universal domain upward, checking support.
                const auto& dom = pair_.roles().sorted_univ[role_index(slot)];
                auto it = std::lower_bound(dom.begin(), dom.end(), c);
                for (; it != dom.end(); ++it) {
                    uint64_t rid = pair_.roles().role_id(slot, *it).value();
                    CsaBound probe = cur.bound;
                    probe[role_index(slot)] = rid;
                    if (pair_.match_count(probe) > 0) return *it;
                }
                return std::nullopt;
            }
        }
    }

    bool down(Cursor& cur, Role slot, uint64_t value, const VarDomain& d) const {
        cur.trail.push_back(cur.bound);
        uint64_t rid;
        if (d.kind == VarDomain::Kind::universal) {
            auto r = pair_.roles().role_id(slot, value);
            if (!r) return false;
            rid = *r;
        } else {
            rid = value;
        }
        cur.bound[role_index(slot)] = rid;
        return pair_.match_count(cur.bound) > 0;
    }

    void up(Cursor& cur) const {
        cur.bound = cur.trail.back();
        cur.trail.pop_back();
    }

    void save(std::ostream& os) const { pair_.save(os); }
    static RdfcsaIndex load(std::istream& is) { return RdfcsaIndex(RdfcsaPair<PsiT>::load(is)); }
    uint64_t size_bytes() const { return pair_.size_bytes(); }

private:
    RdfcsaPair<PsiT> pair_;
};

// ---------------------------------------------------------------------------
// The join engine
// ---------------------------------------------------------------------------

namespace detail {

template <class T, class = void>
struct has_var_range : std::false_type {};
template <class T>
struct has_var_range<T, std::void_t<decltype(&T::var_range)>> : std::true_type {};

}  // namespace detail

template <class Index>
class LtjEngine {
public:
    LtjEngine(const Index& index, const Bgp& q, const EngineConfig& cfg)
        : index_(index), q_(q), cfg_(cfg), rng_(cfg.strategy.seed) {}

    EvalResult run() {
        start_ = std::chrono::steady_clock::now();
        setup_once();
        if (!dead_) {
            if (nvars() == 0) {
                emit();
            } else {
                std::vector<uint32_t> order;
                if (cfg_.strategy.mode == VeoMode::global) order = global_order();
                std::vector<uint32_t> remaining(nvars());
                for (uint32_t v = 0; v < nvars(); ++v) remaining[v] = v;
                eliminate(0, order, remaining);
            }
        }
        auto end = std::chrono::steady_clock::now();
        out_.stats.elapsed_us = static_cast<uint64_t>(
            std::chrono::duration_cast<std::chrono::microseconds>(end - start_).count());
        out_.stats.results = out_.mappings.size();
        return std::move(out_);
    }

    // Global elimination order under the standard restrictions, exposed for tests
    // and the exhaustive-order search.
    std::vector<uint32_t> plan() {
        setup_once();
        return global_order();
    }

    std::vector<uint32_t> global_order() {
        if (cfg_.strategy.forced_order) return *cfg_.strategy.forced_order;
        std::vector<uint32_t> all(nvars());
        for (uint32_t v = 0; v < nvars(); ++v) all[v] = v;

        EstimatorKind est = cfg_.strategy.estimator;
        if (est == EstimatorKind::random_order) {
            std::shuffle(all.begin(), all.end(), rng_);
            return all;
        }
        std::vector<uint32_t> nonlonely, lonely;
        for (uint32_t v : all) (vars_[v].lonely ? lonely : nonlonely).push_back(v);
        if (est == EstimatorKind::random_lonely_last) {
            std::shuffle(nonlonely.begin(), nonlonely.end(), rng_);
            std::shuffle(lonely.begin(), lonely.end(), rng_);
            nonlonely.insert(nonlonely.end(), lonely.begin(), lonely.end());
            return nonlonely;
        }

        std::vector<uint64_t> w(nvars());
        for (uint32_t v = 0; v < nvars(); ++v)
            w[v] = est == EstimatorKind::random_weights ? rng_() : weight_of(v);

        std::vector<uint32_t> order;
        std::vector<uint32_t> pool = nonlonely;
        while (!pool.empty()) {
            std::vector<uint32_t> cands;
            if (!order.empty()) {
                for (uint32_t v : pool)
                    for (uint32_t u : order)
                        if (q_.share_pattern(v, u)) {
                            cands.push_back(v);
                            break;
                        }
            }
            if (cands.empty()) cands = pool;
            uint32_t best = cands.front();
            for (uint32_t v : cands)
                if (w[v] < w[best] || (w[v] == w[best] && v < best)) best = v;
            order.push_back(best);
            pool.erase(std::find(pool.begin(), pool.end(), best));
        }
        std::sort(lonely.begin(), lonely.end(), [&](uint32_t a, uint32_t b) {
            return std::tie(w[a], a) < std::tie(w[b], b);
        });
        order.insert(order.end(), lonely.begin(), lonely.end());
        return order;
    }

private:
    struct VarInfo {
        std::vector<Bgp::Occurrence> occ;
        bool lonely = false;
        typename Index::VarDomain domain{};
    };

    const Index& index_;
    const Bgp& q_;
    EngineConfig cfg_;
    std::vector<typename Index::Cursor> cursors_;
    std::vector<VarInfo> vars_;
    std::vector<uint64_t> mu_;
    bool dead_ = false;
    bool stop_ = false;
    EvalResult out_;
    std::mt19937_64 rng_;
    std::chrono::steady_clock::time_point start_;
    uint64_t tick_ = 0;
    bool setup_done_ = false;

    uint32_t nvars() const { return static_cast<uint32_t>(q_.var_count()); }

    void setup_once() {
        if (setup_done_) return;
        setup_done_ = true;
        cursors_.reserve(q_.patterns.size());
        for (const auto& pat : q_.patterns) {
            cursors_.push_back(index_.make_cursor(pat));
            if (index_.cursor_empty(cursors_.back())) dead_ = true;
        }
        vars_.resize(nvars());
        mu_.assign(nvars(), 0);
        for (uint32_t v = 0; v < nvars(); ++v) {
            vars_[v].occ = q_.occurrences(v);
            vars_[v].lonely = q_.lonely(v);
            vars_[v].domain = index_.var_domain(q_, v);
        }
    }

    bool time_exceeded() {
        if (!cfg_.timeout_seconds) return false;
        if ((++tick_ & 0xFF) != 0) return false;
        auto now = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(now - start_).count();
        if (secs > *cfg_.timeout_seconds) {
            out_.stats.timed_out = true;
            stop_ = true;
            return true;
        }
        return false;
    }

    uint64_t weight_of(uint32_t var) {
        const auto& info = vars_[var];
        EstimatorKind est = cfg_.strategy.estimator;
        if (est == EstimatorKind::refined) {
            if constexpr (Index::kSupportsRefined) {
                std::vector<PartitionSource<typename Index::bv_type>> sources;
                sources.reserve(info.occ.size());
                for (const auto& occ : info.occ)
                    sources.push_back(index_.refined_source(cursors_[occ.pattern], occ.role));
                return refined_weight(sources, cfg_.strategy.refine_levels);
            }
        }
        uint64_t best = ~uint64_t{0};
        for (const auto& occ : info.occ) {
            uint64_t w = est == EstimatorKind::distinct_children && index_.supports_distinct()
                             ? distinct_or_range(cursors_[occ.pattern], occ.role)
                             : index_.weight(cursors_[occ.pattern]);
            best = std::min(best, w);
        }
        return best;
    }

    uint64_t distinct_or_range(const typename Index::Cursor& cur, Role slot) {
        if constexpr (requires { index_.distinct_weight(cur, slot); }) {
            return index_.distinct_weight(cur, slot);
        } else {
            return index_.weight(cur);
        }
    }

    uint32_t adaptive_next(const std::vector<uint32_t>& remaining) {
        std::vector<uint32_t> pool;
        for (uint32_t v : remaining)
            if (!vars_[v].lonely) pool.push_back(v);
        if (pool.empty()) pool = remaining;
        EstimatorKind est = cfg_.strategy.estimator;
        if (est == EstimatorKind::random_order || est == EstimatorKind::random_lonely_last ||
            est == EstimatorKind::random_weights)
            return pool[rng_() % pool.size()];
        uint32_t best = pool.front();
        uint64_t best_w = ~uint64_t{0};
        for (uint32_t v : pool) {
            uint64_t w = weight_of(v);
            if (w < best_w || (w == best_w && v < best)) {
                best = v;
                best_w = w;
            }
        }
        return best;
    }

    void emit() {
        out_.mappings.push_back(mu_);
        if (cfg_.limit && out_.mappings.size() >= *cfg_.limit) stop_ = true;
    }

    // Returns false when the candidate fails on some occurrence (possible only for
    // repeated in-pattern variables); cursors are restored either way on failure.
    bool bind_all(const std::vector<Bgp::Occurrence>& occ, uint64_t value,
                  const typename Index::VarDomain& domain) {
        for (size_t i = 0; i < occ.size(); ++i) {
            if (!index_.down(cursors_[occ[i].pattern], occ[i].role, value, domain)) {
                for (size_t j = 0; j <= i; ++j) index_.up(cursors_[occ[j].pattern]);
                return false;
            }
        }
        return true;
    }

    void unbind_all(const std::vector<Bgp::Occurrence>& occ) {
        for (const auto& o : occ) index_.up(cursors_[o.pattern]);
    }

    std::optional<uint64_t> leapfrog(const std::vector<Bgp::Occurrence>& occ, uint64_t c,
                                     const typename Index::VarDomain& domain) {
        for (;;) {
            bool moved = false;
            for (const auto& o : occ) {
                auto v = index_.leap(cursors_[o.pattern], o.role, c, domain);
                ++out_.stats.leap_calls;
                if (!v) return std::nullopt;
                if (*v > c) {
                    c = *v;
                    moved = true;
                }
            }
            if (!moved) return c;
        }
    }

    void eliminate(size_t depth, std::vector<uint32_t>& order, std::vector<uint32_t>& remaining) {
        if (stop_) return;
        if (remaining.empty()) {
            emit();
            return;
        }
        uint32_t var = cfg_.strategy.mode == VeoMode::global && !order.empty()
                           ? order[depth]
                           : adaptive_next(remaining);
        auto it = std::find(remaining.begin(), remaining.end(), var);
        remaining.erase(it);
        const auto& info = vars_[var];

        if constexpr (Index::kSupportsIntersect) {
            std::vector<WmRange<typename Index::bv_type>> ranges;
            ranges.reserve(info.occ.size());
            for (const auto& occ : info.occ)
                ranges.push_back(index_.var_range(cursors_[occ.pattern], occ.role));
            auto values = range_intersect(ranges);
            for (uint64_t v : values) {
                if (stop_ || time_exceeded()) break;
                if (!bind_all(info.occ, v, info.domain)) continue;
                mu_[var] = index_.to_universal(info.domain, v);
                eliminate(depth + 1, order, remaining);
                unbind_all(info.occ);
            }
        } else {
            uint64_t c = 1;
            for (;;) {
                if (stop_ || time_exceeded()) break;
                auto agreed = leapfrog(info.occ, c, info.domain);
                if (!agreed) break;
                if (bind_all(info.occ, *agreed, info.domain)) {
                    mu_[var] = index_.to_universal(info.domain, *agreed);
                    eliminate(depth + 1, order, remaining);
                    unbind_all(info.occ);
                }
                c = *agreed + 1;
            }
        }
        remaining.push_back(var);  // membership is all that matters
    }
};

template <class Index>
EvalResult ltj_eval(const Index& index, const Bgp& q, const EngineConfig& cfg = {}) {
    LtjEngine<Index> engine(index, q, cfg);
    return engine.run();
}

template <class Index>
std::vector<uint32_t> global_veo(const Index& index, const Bgp& q, const Strategy& strategy) {
    EngineConfig cfg;
    cfg.strategy = strategy;
    cfg.strategy.mode = VeoMode::global;
    LtjEngine<Index> engine(index, q, cfg);
    return engine.plan();
}

struct BestVeoResult {
    std::vector<uint32_t> order;
    uint64_t elapsed_us = 0;
    bool fell_back = false;
};

// Tries every global order over the non-lonely variables (connected-first when
// possible, lonely appended by weight) and reports the fastest measured run.
// Falls back to the standard global order when more than `max_vars` non-lonely
// variables would make the search space explode.
template <class Index>
BestVeoResult exhaustive_best_veo(const Index& index, const Bgp& q, EngineConfig cfg,
                                  size_t max_vars = 6) {
    cfg.strategy.mode = VeoMode::global;
    cfg.strategy.forced_order.reset();

    std::vector<uint32_t> nonlonely, lonely;
    for (uint32_t v = 0; v < q.var_count(); ++v)
        (q.lonely(v) ? lonely : nonlonely).push_back(v);

    // Baseline: the standard global order.
    EngineConfig base_cfg = cfg;
    LtjEngine<Index> base_engine(index, q, base_cfg);
    std::vector<uint32_t> base_order = base_engine.plan();
    auto base = ltj_eval(index, q, base_cfg);

    BestVeoResult best{base_order, base.stats.elapsed_us, false};
    if (nonlonely.size() > max_vars) {
        best.fell_back = true;
        return best;
    }

    // Lonely tail ordered by weight once, shared by every candidate order.
    std::vector<uint32_t> tail = base_order;
    tail.erase(tail.begin(), tail.end() - static_cast<ptrdiff_t>(lonely.size()));

    std::vector<std::vector<uint32_t>> orders;
    std::vector<uint32_t> prefix;
    std::vector<bool> used(q.var_count(), false);
    auto connected = [&](uint32_t v) {
        for (uint32_t u : prefix)
            if (q.share_pattern(v, u)) return true;
        return false;
    };
    std::function<void()> rec = [&] {
        if (prefix.size() == nonlonely.size()) {
            orders.push_back(prefix);
            return;
        }
        std::vector<uint32_t> cands;
        if (!prefix.empty()) {
            for (uint32_t v : nonlonely)
                if (!used[v] && connected(v)) cands.push_back(v);
        }
        if (cands.empty()) {
            for (uint32_t v : nonlonely)
                if (!used[v]) cands.push_back(v);
        }
        for (uint32_t v : cands) {
            used[v] = true;
            prefix.push_back(v);
            rec();
            prefix.pop_back();
            used[v] = false;
        }
    };
    rec();

    for (const auto& head : orders) {
        std::vector<uint32_t> order = head;
        order.insert(order.end(), tail.begin(), tail.end());
        EngineConfig run_cfg = cfg;
        run_cfg.strategy.forced_order = order;
        auto res = ltj_eval(index, q, run_cfg);
        if (res.stats.elapsed_us < best.elapsed_us) {
            best.order = order;
            best.elapsed_us = res.stats.elapsed_us;
        }
    }
    return best;
}

}  // namespace triplex

#endif
