#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>
#include <vector>

#include "triplex/bit_vector.hpp"
#include "triplex/compressed_bit_vector.hpp"

using namespace triplex;

namespace {

std::vector<bool> random_bits(size_t n, double density, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(density);
    std::vector<bool> bits(n);
    for (size_t i = 0; i < n; ++i) bits[i] = coin(rng);
    return bits;
}

// Naive reference answers computed by scanning the bool array.
struct NaiveBits {
    std::vector<bool> bits;

    uint64_t rank(bool b, uint64_t i) const {
        uint64_t c = 0;
        for (uint64_t p = 0; p < i; ++p) c += bits[p] == b;
        return c;
    }
    std::optional<uint64_t> select(bool b, uint64_t j) const {
        uint64_t c = 0;
        for (uint64_t p = 0; p < bits.size(); ++p) {
            if (bits[p] == b && ++c == j) return p + 1;
        }
        return std::nullopt;
    }
    std::optional<uint64_t> select_next(bool b, uint64_t j) const {
        for (uint64_t p = j - 1; p < bits.size(); ++p)
            if (bits[p] == b) return p + 1;
        return std::nullopt;
    }
};

}  // namespace

TEST_CASE("bitvector basics on small fixed input") {
    // B = <1,0,1,1,0>
    auto bv = BitVector::from_bools({true, false, true, true, false});
    CHECK(bv.access(2) == false);
    CHECK(bv.rank(true, 3) == 2);
    CHECK(bv.rank(true, 0) == 0);
    CHECK(bv.rank(false, 0) == 0);
    CHECK(bv.select(false, 2) == 5);
    CHECK(bv.select(true, 3) == 4);
    CHECK(bv.select_next(false, 3) == 5);
    CHECK_FALSE(BitVector::from_bools({true, true}).select_next(false, 1).has_value());

    auto one = BitVector::from_bools({true});
    CHECK(one.access(1) == true);

    CHECK_THROWS_AS(bv.access(0), std::out_of_range);
    CHECK_THROWS_AS(bv.access(6), std::out_of_range);
    CHECK_THROWS_AS(bv.rank(true, 6), std::out_of_range);
    CHECK_FALSE(bv.select(true, 4).has_value());
}

TEST_CASE("bitvector matches naive scans on random inputs") {
    for (double density : {0.02, 0.5, 0.93}) {
        auto bits = random_bits(10000, density, 42 + static_cast<uint64_t>(density * 100));
        NaiveBits ref{bits};
        auto bv = BitVector::from_bools(bits);
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<uint64_t> pos(1, bits.size());

        for (int q = 0; q < 10000; ++q) {
            uint64_t i = pos(rng);
            bool b = rng() & 1;
            CHECK(bv.access(i) == bits[i - 1]);
            CHECK(bv.rank(b, i) == ref.rank(b, i));
            CHECK(bv.select_next(b, i) == ref.select_next(b, i));
            uint64_t total = b ? bv.ones() : bv.zeros();
            if (total > 0) {
                uint64_t j = 1 + rng() % total;
                CHECK(bv.select(b, j) == ref.select(b, j));
            }
        }
        CHECK(bv.rank1(bits.size()) + bv.rank0(bits.size()) == bits.size());
    }
}

TEST_CASE("select is a right inverse of rank on every 1-position") {
    auto bits = random_bits(4096, 0.3, 99);
    auto bv = BitVector::from_bools(bits);
    for (uint64_t i = 1; i <= bits.size(); ++i) {
        for (bool b : {false, true}) {
            uint64_t r = bv.rank(b, i);
            if (r >= 1) {
                auto s = bv.select(b, r);
                REQUIRE(s.has_value());
                CHECK(*s <= i);
                CHECK(bv.select(b, bv.rank(b, *s)) == *s);
            }
        }
    }
}

TEST_CASE("compressed bitvector answers equal plain on random queries") {
    for (double density : {0.01, 0.4, 0.97}) {
        auto bits = random_bits(9973, density, 1234 + static_cast<uint64_t>(density * 10));
        auto plain = BitVector::from_bools(bits);
        CompressedBitVector comp(plain);
        REQUIRE(comp.size() == plain.size());
        REQUIRE(comp.ones() == plain.ones());

        std::mt19937_64 rng(5);
        std::uniform_int_distribution<uint64_t> pos(1, bits.size());
        for (int q = 0; q < 10000; ++q) {
            uint64_t i = pos(rng);
            bool b = rng() & 1;
            CHECK(comp.access(i) == plain.access(i));
            CHECK(comp.rank(b, i) == plain.rank(b, i));
            CHECK(comp.select_next(b, i) == plain.select_next(b, i));
            uint64_t total = b ? plain.ones() : plain.zeros();
            if (total > 0) {
                uint64_t j = 1 + rng() % total;
                CHECK(comp.select(b, j) == plain.select(b, j));
            }
        }
    }
}

TEST_CASE("bitvector round-trips through serialization") {
    auto bits = random_bits(5000, 0.35, 314);
    auto bv = BitVector::from_bools(bits);
    std::stringstream ss;
    bv.save(ss);
    auto loaded = BitVector::load(ss);
    CHECK(loaded == bv);
    CHECK(loaded.rank1(5000) == bv.rank1(5000));

    CompressedBitVector cbv(bv);
    std::stringstream cs;
    cbv.save(cs);
    auto cloaded = CompressedBitVector::load(cs);
    for (uint64_t i = 1; i <= 5000; i += 37) {
        CHECK(cloaded.access(i) == bv.access(i));
        CHECK(cloaded.rank1(i) == bv.rank1(i));
    }
}

TEST_CASE("empty and tiny bitvectors behave") {
    auto bv = BitVector::from_bools({});
    CHECK(bv.size() == 0);
    CHECK(bv.rank1(0) == 0);
    CHECK_FALSE(bv.select1(1).has_value());

    CompressedBitVector cbv(bv);
    CHECK(cbv.size() == 0);
    CHECK(cbv.rank1(0) == 0);
}
