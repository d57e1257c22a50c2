#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "triplex/oracle.hpp"
#include "triplex/ltj.hpp"
#include "triplex/ring.hpp"

using namespace triplex;
using triplex::testing::kSample13Universe;
using triplex::testing::kTinyUniverse;
using triplex::testing::random_graph;
using triplex::testing::sample13_graph;
using triplex::testing::tiny_graph;

namespace {

// Sorted distinct values of `var` among triples matching the bound slots.
std::vector<uint64_t> oracle_values(const std::vector<Triple>& g, const BoundSlots& bound,
                                    Role var) {
    std::set<uint64_t> vals;
    for (const auto& t : g) {
        bool ok = true;
        for (Role r : kRoles) {
            const auto& b = bound[role_index(r)];
            if (b && t.at(r) != *b) ok = false;
        }
        if (ok) vals.insert(t.at(var));
    }
    return {vals.begin(), vals.end()};
}

size_t oracle_match_count(const std::vector<Triple>& g, const BoundSlots& bound) {
    size_t k = 0;
    for (const auto& t : g) {
        bool ok = true;
        for (Role r : kRoles) {
            const auto& b = bound[role_index(r)];
            if (b && t.at(r) != *b) ok = false;
        }
        k += ok;
    }
    return k;
}

template <class BV>
std::vector<uint64_t> leap_enumerate(const Ring<BV>& ring, const BoundSlots& bound, Role var) {
    std::vector<uint64_t> out;
    uint64_t c = 1;
    while (true) {
        auto v = ring.leap(bound, var, c);
        if (!v) break;
        out.push_back(*v);
        if (*v == ring.universe()) break;
        c = *v + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("ring columns on the tiny graph") {
    auto ring = Ring<BitVector>::build(tiny_graph(), kTinyUniverse, false);
    REQUIRE(ring.size() == 3);

    const auto& c_o = ring.column(TableId::spo);
    const auto& c_p = ring.column(TableId::osp);
    const auto& c_s = ring.column(TableId::pos);
    CHECK(std::vector<uint64_t>{c_o.access(1), c_o.access(2), c_o.access(3)} ==
          std::vector<uint64_t>{2, 3, 2});
    CHECK(std::vector<uint64_t>{c_p.access(1), c_p.access(2), c_p.access(3)} ==
          std::vector<uint64_t>{1, 1, 2});
    CHECK(std::vector<uint64_t>{c_s.access(1), c_s.access(2), c_s.access(3)} ==
          std::vector<uint64_t>{1, 2, 1});
}

TEST_CASE("ring build on empty graph") {
    auto ring = Ring<BitVector>::build({}, 3, false);
    CHECK(ring.size() == 0);
    CHECK(ring.column(TableId::spo).size() == 0);
    BoundSlots none{};
    CHECK_FALSE(ring.leap(none, Role::subject, 1).has_value());
}

TEST_CASE("ring build validates ids") {
    CHECK_THROWS(Ring<BitVector>::build({{1, 5, 2}}, 3, false));
}

TEST_CASE("ring columns equal a sort oracle on random graphs") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 10; ++round) {
        uint64_t universe = 2 + rng() % 40;
        auto g = random_graph(1 + rng() % 1000, universe, rng());
        auto ring = Ring<BitVector>::build(g, universe, false);

        auto check_col = [&](TableId t, auto key, Role col_role) {
            auto sorted = g;
            std::sort(sorted.begin(), sorted.end(),
                      [&](const Triple& a, const Triple& b) { return key(a) < key(b); });
            for (size_t i = 0; i < sorted.size(); ++i)
                CHECK(ring.column(t).access(i + 1) == sorted[i].at(col_role));
        };
        check_col(TableId::spo, [](const Triple& t) { return std::tuple(t.s, t.p, t.o); },
                  Role::object);
        check_col(TableId::osp, [](const Triple& t) { return std::tuple(t.o, t.s, t.p); },
                  Role::predicate);
        check_col(TableId::pos, [](const Triple& t) { return std::tuple(t.p, t.o, t.s); },
                  Role::subject);
    }
}

TEST_CASE("lf steps on the tiny graph") {
    auto ring = Ring<BitVector>::build(tiny_graph(), kTinyUniverse, false);
    CHECK(ring.lf_step(TableId::spo, 1) == 1);
    CHECK(ring.lf_step(TableId::spo, 2) == 3);
    CHECK(ring.lf_step(TableId::spo, 3) == 2);
    CHECK(ring.lf_step_inv(TableId::spo, 1) == 1);
    CHECK(ring.lf_step_inv(TableId::spo, 3) == 2);
}

TEST_CASE("lf step golden value on the 13-triple sample") {
    auto ring = Ring<BitVector>::build(sample13_graph(), kSample13Universe, false);
    // Row 7 of the (s,p,o) table holds object 3; its row in the (o,s,p) table is 8.
    CHECK(ring.column(TableId::spo).access(7) == 3);
    CHECK(ring.acc(Role::object, 3) == 6);
    CHECK(ring.lf_step(TableId::spo, 7) == 8);
}

TEST_CASE("lf cycle is the identity and inverse round-trips") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 8; ++round) {
        uint64_t universe = 2 + rng() % 30;
        auto g = random_graph(1 + rng() % 600, universe, rng());
        auto ring = Ring<BitVector>::build(g, universe, false);
        for (uint64_t i = 1; i <= ring.size(); ++i) {
            uint64_t j = ring.lf_step(TableId::spo, i);
            uint64_t k = ring.lf_step(TableId::osp, j);
            CHECK(ring.lf_step(TableId::pos, k) == i);
            for (TableId t : {TableId::spo, TableId::osp, TableId::pos})
                CHECK(ring.lf_step_inv(t, ring.lf_step(t, i)) == i);
        }
        CHECK(ring.decode_all() == g);
    }
}

TEST_CASE("backward step on the tiny graph") {
    auto ring = Ring<BitVector>::build(tiny_graph(), kTinyUniverse, false);
    auto r1 = ring.backward_step(TableId::spo, {1, 3}, 2);
    CHECK(r1.lo == 1);
    CHECK(r1.hi == 2);
    auto r2 = ring.backward_step(TableId::spo, {1, 3}, 1);
    CHECK(r2.empty());
}

TEST_CASE("trie walk golden values on the 13-triple sample") {
    auto ring = Ring<BitVector>::build(sample13_graph(), kSample13Universe, false);
    // Predicate bucket 8 covers rows 5..9 of the (p,o,s) table.
    BoundSlots p8{};
    p8[role_index(Role::predicate)] = 8;
    auto [t1, r1] = ring.resolve(p8);
    CHECK(t1 == TableId::pos);
    CHECK(r1.lo == 5);
    CHECK(r1.hi == 9);
    // Descending by subject 6 keeps rows 5..9, now in the (s,p,o) table.
    auto r2 = ring.backward_step(TableId::pos, r1, 6);
    CHECK(r2.lo == 5);
    CHECK(r2.hi == 9);
    // Descending by object 3 narrows to row 8 of the (o,s,p) table.
    auto r3 = ring.backward_step(TableId::spo, r2, 3);
    CHECK(r3.lo == 8);
    CHECK(r3.hi == 8);
}

TEST_CASE("resolve on the tiny graph") {
    auto ring = Ring<BitVector>::build(tiny_graph(), kTinyUniverse, false);

    BoundSlots p1{};
    p1[role_index(Role::predicate)] = 1;
    auto [t, r] = ring.resolve(p1);
    CHECK(t == TableId::pos);
    CHECK(r.size() == 2);

    BoundSlots full{};
    full[0] = 1;
    full[1] = 2;
    full[2] = 3;
    auto [t2, r2] = ring.resolve(full);
    CHECK(t2 == TableId::spo);
    CHECK(r2.size() == 1);

    BoundSlots s3{};
    s3[0] = 3;
    auto [t3, r3] = ring.resolve(s3);
    CHECK(r3.empty());
}

TEST_CASE("resolve range size equals oracle match count everywhere") {
    std::mt19937_64 rng(47);
    for (int round = 0; round < 6; ++round) {
        uint64_t universe = 2 + rng() % 12;
        auto g = random_graph(1 + rng() % 500, universe, rng());
        auto ring = Ring<BitVector>::build(g, universe, false);
        for (int q = 0; q < 200; ++q) {
            BoundSlots bound{};
            size_t k = rng() % 4;
            std::vector<Role> roles = {Role::subject, Role::predicate, Role::object};
            std::shuffle(roles.begin(), roles.end(), rng);
            for (size_t i = 0; i < k; ++i) bound[role_index(roles[i])] = 1 + rng() % universe;
            auto [table, range] = ring.resolve(bound);
            (void)table;
            CHECK(range.size() == oracle_match_count(g, bound));
        }
    }
}

TEST_CASE("leap on the tiny graph") {
    auto ring = Ring<BitVector>::build(tiny_graph(), kTinyUniverse, false);
    BoundSlots p1{};
    p1[role_index(Role::predicate)] = 1;
    CHECK(ring.leap(p1, Role::subject, 1) == 1);
    CHECK(ring.leap(p1, Role::subject, 2) == 2);
    CHECK_FALSE(ring.leap(p1, Role::subject, 3).has_value());

    BoundSlots absent{};
    absent[role_index(Role::subject)] = 3;
    CHECK_FALSE(ring.leap(absent, Role::predicate, 1).has_value());
}

TEST_CASE("leap enumeration equals sorted oracle values for all bound shapes") {
    std::mt19937_64 rng(59);
    for (int round = 0; round < 6; ++round) {
        uint64_t universe = 2 + rng() % 10;
        auto g = random_graph(1 + rng() % 500, universe, rng());
        auto ring = Ring<BitVector>::build(g, universe, false);
        for (Role var : kRoles) {
            for (int q = 0; q < 60; ++q) {
                BoundSlots bound{};
                size_t k = rng() % 3;
                std::vector<Role> others;
                for (Role r : kRoles)
                    if (r != var) others.push_back(r);
                std::shuffle(others.begin(), others.end(), rng);
                for (size_t i = 0; i < k; ++i)
                    bound[role_index(others[i])] = 1 + rng() % universe;
                CHECK(leap_enumerate(ring, bound, var) == oracle_values(g, bound, var));
            }
        }
    }
}

TEST_CASE("leap enumeration exhaustive on small graphs, compressed variant included") {
    std::mt19937_64 rng(61);
    auto g = random_graph(400, 8, 991);
    auto plain = Ring<BitVector>::build(g, 8, false);
    auto small = Ring<CompressedBitVector>::build(g, 8, false);
    for (Role var : kRoles) {
        std::vector<Role> others;
        for (Role r : kRoles)
            if (r != var) others.push_back(r);
        for (uint64_t a = 0; a <= 8; ++a) {
            for (uint64_t b = 0; b <= 8; ++b) {
                BoundSlots bound{};
                if (a) bound[role_index(others[0])] = a;
                if (b) bound[role_index(others[1])] = b;
                auto expect = oracle_values(g, bound, var);
                CHECK(leap_enumerate(plain, bound, var) == expect);
                CHECK(leap_enumerate(small, bound, var) == expect);
            }
        }
    }
}

TEST_CASE("distinct counting matches a scan oracle") {
    std::mt19937_64 rng(71);
    auto g = random_graph(800, 15, 123);
    auto ring = Ring<BitVector>::build(g, 15, true);
    REQUIRE(ring.has_counts());

    for (TableId t : {TableId::spo, TableId::osp, TableId::pos}) {
        const auto& col = ring.column(t);
        for (int q = 0; q < 300; ++q) {
            uint64_t lo = 1 + rng() % ring.size(), hi = 1 + rng() % ring.size();
            if (lo > hi) std::swap(lo, hi);
            std::set<uint64_t> distinct;
            for (uint64_t i = lo; i <= hi; ++i) distinct.insert(col.access(i));
            CHECK(ring.distinct_in_range(t, {lo, hi}) == distinct.size());
        }
        CHECK(ring.distinct_in_range(t, {1, 0}) == 0);
        CHECK(ring.distinct_in_range(t, {3, 3}) == 1);
    }

    auto no_counts = Ring<BitVector>::build(g, 15, false);
    CHECK_THROWS(no_counts.distinct_in_range(TableId::spo, {1, 5}));
}

TEST_CASE("cursor down and up restore ranges exactly") {
    auto ring = Ring<BitVector>::build(tiny_graph(), kTinyUniverse, false);

    // Resolve an all-variable pattern, descend by object 2, range has two rows.
    BoundSlots bound{};
    auto [t0, r0] = ring.resolve(bound);
    CHECK(r0.size() == 3);
    bound[role_index(Role::object)] = 2;
    auto [t1, r1] = ring.resolve(bound);
    CHECK(r1.size() == 2);
    // Undoing the binding restores the original state.
    bound[role_index(Role::object)].reset();
    auto [t2, r2] = ring.resolve(bound);
    CHECK(t2 == t0);
    CHECK(r2.lo == r0.lo);
    CHECK(r2.hi == r0.hi);
}

TEST_CASE("random walks of down and up match oracle counts") {
    std::mt19937_64 rng(83);
    for (int round = 0; round < 5; ++round) {
        uint64_t universe = 2 + rng() % 10;
        auto g = random_graph(1 + rng() % 300, universe, rng());
        auto ring = Ring<BitVector>::build(g, universe, false);
        BoundSlots bound{};
        std::vector<Role> stack;
        for (int step = 0; step < 200; ++step) {
            bool can_down = bound_count(bound) < 3;
            if (can_down && (stack.empty() || rng() % 2)) {
                std::vector<Role> free;
                for (Role r : kRoles)
                    if (!bound[role_index(r)]) free.push_back(r);
                Role r = free[rng() % free.size()];
                bound[role_index(r)] = 1 + rng() % universe;
                stack.push_back(r);
            } else if (!stack.empty()) {
                bound[role_index(stack.back())].reset();
                stack.pop_back();
            }
            CHECK(ring.resolve(bound).second.size() == oracle_match_count(g, bound));
        }
    }
}

TEST_CASE("unidirectional intersection equals leap enumeration per variable") {
    std::mt19937_64 rng(97);
    for (int round = 0; round < 5; ++round) {
        uint64_t universe = 2 + rng() % 12;
        auto g = random_graph(1 + rng() % 400, universe, rng());
        if (g.empty()) continue;
        auto ring = Ring<BitVector>::build(g, universe, false);
        URingIndex<BitVector> uring = URingIndex<BitVector>::build(g, universe);

        for (Role var : kRoles) {
            std::vector<Role> others;
            for (Role r : kRoles)
                if (r != var) others.push_back(r);
            for (int q = 0; q < 50; ++q) {
                TriplePattern pat;
                pat.at(var) = Term::variable(0);
                BoundSlots bound{};
                for (Role r : others) {
                    if (rng() % 2) {
                        uint64_t v = 1 + rng() % universe;
                        pat.at(r) = Term::constant(v);
                        bound[role_index(r)] = v;
                    } else {
                        pat.at(r) = Term::variable(role_index(r) + 1);
                    }
                }
                auto cur = uring.make_cursor(pat);
                auto range = uring.var_range(cur, var);
                auto values = range_intersect<BitVector>({range});
                CHECK(values == leap_enumerate(ring, bound, var));
            }
        }
    }
}

TEST_CASE("uring intersection joins two cursors") {
    // Patterns (?x,1,2) and (?x,2,3): subjects {1,2} and {1} intersect to {1}.
    auto uring = URingIndex<BitVector>::build(tiny_graph(), kTinyUniverse);
    auto c1 = uring.make_cursor(
        {Term::variable(0), Term::constant(1), Term::constant(2)});
    auto c2 = uring.make_cursor(
        {Term::variable(0), Term::constant(2), Term::constant(3)});
    auto values = range_intersect<BitVector>(
        {uring.var_range(c1, Role::subject), uring.var_range(c2, Role::subject)});
    CHECK(values == std::vector<uint64_t>{1});

    // Disjoint ranges intersect to nothing.
    auto c3 = uring.make_cursor(
        {Term::variable(0), Term::constant(1), Term::constant(3)});
    auto empty = range_intersect<BitVector>(
        {uring.var_range(c1, Role::subject), uring.var_range(c3, Role::subject)});
    CHECK(empty.empty());
}

TEST_CASE("uring rings cross-decode to the same triples") {
    auto g = random_graph(200, 10, 55);
    auto uring = URingIndex<BitVector>::build(g, 10);
    auto fwd = uring.forward().decode_all();
    auto rev = uring.reverse().decode_all();
    for (auto& t : rev) std::swap(t.s, t.o);
    std::sort(rev.begin(), rev.end());
    CHECK(fwd == rev);
    CHECK(fwd == g);
}

TEST_CASE("ring round-trips through serialization") {
    auto g = random_graph(300, 12, 5);
    auto ring = Ring<BitVector>::build(g, 12, true);
    std::stringstream ss;
    ring.save(ss);
    auto loaded = Ring<BitVector>::load(ss);
    CHECK(loaded.size() == ring.size());
    CHECK(loaded.decode_all() == ring.decode_all());
    CHECK(loaded.has_counts());
}
