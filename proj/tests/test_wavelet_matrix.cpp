#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "triplex/wavelet_matrix.hpp"

using namespace triplex;

namespace {

// The 13-symbol sequence used across the golden tests (sigma = 6).
const std::vector<uint64_t> kSeq = {5, 3, 1, 4, 6, 6, 6, 6, 6, 6, 6, 6, 6};

std::vector<uint64_t> random_seq(size_t n, uint64_t sigma, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> d(1, sigma);
    std::vector<uint64_t> s(n);
    for (auto& x : s) x = d(rng);
    return s;
}

uint64_t scan_rank(const std::vector<uint64_t>& s, uint64_t c, uint64_t i) {
    uint64_t cnt = 0;
    for (uint64_t p = 0; p < i; ++p) cnt += s[p] == c;
    return cnt;
}

std::optional<uint64_t> scan_select(const std::vector<uint64_t>& s, uint64_t c, uint64_t j) {
    uint64_t cnt = 0;
    for (uint64_t p = 0; p < s.size(); ++p)
        if (s[p] == c && ++cnt == j) return p + 1;
    return std::nullopt;
}

std::optional<uint64_t> scan_next_value(const std::vector<uint64_t>& s, uint64_t lo, uint64_t hi,
                                        uint64_t c) {
    std::optional<uint64_t> best;
    for (uint64_t p = lo; p <= hi && p <= s.size(); ++p)
        if (s[p - 1] >= c && (!best || s[p - 1] < *best)) best = s[p - 1];
    return best;
}

uint64_t scan_count(const std::vector<uint64_t>& s, uint64_t lo, uint64_t hi, uint64_t xlo,
                    uint64_t xhi) {
    uint64_t cnt = 0;
    for (uint64_t p = lo; p <= hi; ++p) cnt += s[p - 1] >= xlo && s[p - 1] <= xhi;
    return cnt;
}

std::set<uint64_t> scan_distinct(const std::vector<uint64_t>& s, uint64_t lo, uint64_t hi) {
    std::set<uint64_t> out;
    for (uint64_t p = lo; p <= hi; ++p) out.insert(s[p - 1]);
    return out;
}

}  // namespace

TEMPLATE_TEST_CASE("wavelet matrix golden values on the 13-symbol sequence", "", BitVector,
                   CompressedBitVector) {
    WaveletMatrix<TestType> wm(kSeq, 6);
    REQUIRE(wm.size() == 13);
    REQUIRE(wm.levels() == 3);

    CHECK(wm.access(4) == 4);
    for (uint64_t i = 1; i <= 13; ++i) CHECK(wm.access(i) == kSeq[i - 1]);
    CHECK(wm.rank(6, 13) == 9);
    CHECK(wm.select(6, 1) == 5);

    CHECK(wm.range_next_value(1, 4, 2) == 3);
    CHECK_FALSE(wm.range_next_value(1, 4, 7).has_value());
    CHECK(wm.range_next_value(5, 13, 1) == 6);

    CHECK(wm.range_count(1, 4, 1, 3) == 2);
    CHECK(wm.range_count(5, 8, 1, 3) == 0);
    CHECK(wm.range_count(1, 13, 9, 20) == 0);
    CHECK(wm.range_count(1, 13, 1, 6) == 13);
}

TEMPLATE_TEST_CASE("range_intersect golden values", "", BitVector, CompressedBitVector) {
    WaveletMatrix<TestType> wm(kSeq, 6);
    using R = WmRange<TestType>;

    CHECK(range_intersect<TestType>({R{&wm, 1, 4}, R{&wm, 5, 8}}).empty());
    CHECK(range_intersect<TestType>({R{&wm, 1, 4}}) == std::vector<uint64_t>{1, 3, 4, 5});
    CHECK(range_intersect<TestType>({R{&wm, 5, 8}, R{&wm, 9, 13}}) == std::vector<uint64_t>{6});
    CHECK(range_intersect<TestType>({R{&wm, 1, 4}, R{&wm, 3, 1}}).empty());
}

TEST_CASE("partition_weights reproduces the two-range partition table") {
    WaveletMatrix<BitVector> wm(kSeq, 6);
    using R = WmRange<BitVector>;
    std::vector<R> ranges = {R{&wm, 1, 4}, R{&wm, 5, 8}};

    auto k0 = partition_weights(ranges, 0);
    REQUIRE(k0.size() == 1);
    CHECK(k0[0].sym_lo == 1);
    CHECK(k0[0].sym_hi == 6);
    CHECK(k0[0].counts == std::vector<uint64_t>{4, 4});

    auto k1 = partition_weights(ranges, 1);
    REQUIRE(k1.size() == 2);
    CHECK(k1[0].sym_lo == 1);
    CHECK(k1[0].sym_hi == 3);
    CHECK(k1[0].counts == std::vector<uint64_t>{2, 0});
    CHECK(k1[1].sym_lo == 4);
    CHECK(k1[1].sym_hi == 6);
    CHECK(k1[1].counts == std::vector<uint64_t>{2, 4});

    auto k2 = partition_weights(ranges, 2);
    REQUIRE(k2.size() == 4);
    uint64_t expected_lo[] = {1, 3, 4, 6};
    uint64_t expected_hi[] = {2, 3, 5, 6};
    uint64_t expected_a[] = {1, 1, 2, 0};
    uint64_t expected_b[] = {0, 0, 0, 4};
    for (size_t i = 0; i < 4; ++i) {
        CHECK(k2[i].sym_lo == expected_lo[i]);
        CHECK(k2[i].sym_hi == expected_hi[i]);
        CHECK(k2[i].counts == std::vector<uint64_t>{expected_a[i], expected_b[i]});
        CHECK(std::min(k2[i].counts[0], k2[i].counts[1]) == 0);
    }
}

TEMPLATE_TEST_CASE("wavelet matrix matches scans on random sequences", "", BitVector,
                   CompressedBitVector) {
    for (auto [n, sigma] : std::vector<std::pair<size_t, uint64_t>>{
             {10000, 256}, {997, 7}, {64, 1}, {5000, 100}}) {
        auto seq = random_seq(n, sigma, 1000 + n);
        WaveletMatrix<TestType> wm(seq, sigma);
        std::mt19937_64 rng(n * 31 + sigma);
        std::uniform_int_distribution<uint64_t> pos(1, n), sym(1, sigma);
        int rounds = n >= 10000 ? 2500 : 500;
        for (int q = 0; q < rounds; ++q) {
            uint64_t i = pos(rng), c = sym(rng);
            CHECK(wm.access(i) == seq[i - 1]);
            CHECK(wm.rank(c, i) == scan_rank(seq, c, i));
            uint64_t occ = scan_rank(seq, c, n);
            uint64_t j = 1 + rng() % (occ + 1);
            CHECK(wm.select(c, j) == scan_select(seq, c, j));
            uint64_t l = pos(rng), r = pos(rng);
            if (l > r) std::swap(l, r);
            CHECK(wm.range_next_value(l, r, c) == scan_next_value(seq, l, r, c));
            uint64_t xlo = sym(rng), xhi = sym(rng);
            if (xlo > xhi) std::swap(xlo, xhi);
            CHECK(wm.range_count(l, r, xlo, xhi) == scan_count(seq, l, r, xlo, xhi));
            CHECK(wm.range_count(l, r, 1, sigma) == r - l + 1);
        }
    }
}

TEST_CASE("range_intersect equals naive distinct-set intersection") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 60; ++round) {
        uint64_t sigma = 1 + rng() % 64;
        size_t n = 50 + rng() % 400;
        auto s1 = random_seq(n, sigma, rng());
        auto s2 = random_seq(n / 2 + 1, sigma, rng());
        WaveletMatrix<BitVector> w1(s1, sigma), w2(s2, sigma);
        uint64_t l1 = 1 + rng() % s1.size(), r1 = 1 + rng() % s1.size();
        if (l1 > r1) std::swap(l1, r1);
        uint64_t l2 = 1 + rng() % s2.size(), r2 = 1 + rng() % s2.size();
        if (l2 > r2) std::swap(l2, r2);

        auto got = range_intersect<BitVector>({{&w1, l1, r1}, {&w2, l2, r2}});
        auto a = scan_distinct(s1, l1, r1);
        auto b = scan_distinct(s2, l2, r2);
        std::vector<uint64_t> expect;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(expect));
        CHECK(got == expect);
    }
}

TEST_CASE("partition counts per range always sum to the range length") {
    std::mt19937_64 rng(123);
    for (int round = 0; round < 40; ++round) {
        uint64_t sigma = 2 + rng() % 100;
        auto seq = random_seq(200 + rng() % 800, sigma, rng());
        WaveletMatrix<BitVector> wm(seq, sigma);
        uint64_t l = 1 + rng() % seq.size(), r = 1 + rng() % seq.size();
        if (l > r) std::swap(l, r);
        for (uint32_t k = 0; k <= 4; ++k) {
            auto parts = partition_weights<BitVector>({{&wm, l, r}}, k);
            uint64_t sum = 0;
            for (const auto& p : parts) sum += p.counts[0];
            CHECK(sum == r - l + 1);
        }
    }
}

TEST_CASE("mismatched alphabets are rejected") {
    auto s = random_seq(32, 8, 5);
    WaveletMatrix<BitVector> w8(s, 8), w9(s, 9);
    CHECK_THROWS_AS(range_intersect<BitVector>({{&w8, 1, 4}, {&w9, 1, 4}}),
                    std::invalid_argument);
}

TEST_CASE("wavelet matrix round-trips through serialization") {
    auto seq = random_seq(3000, 50, 9);
    WaveletMatrix<BitVector> wm(seq, 50);
    std::stringstream ss;
    wm.save(ss);
    auto loaded = WaveletMatrix<BitVector>::load(ss);
    REQUIRE(loaded.size() == wm.size());
    for (uint64_t i = 1; i <= 3000; i += 17) CHECK(loaded.access(i) == seq[i - 1]);
}
