#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "triplex/ingest.hpp"
#include "triplex/oracle.hpp"

using namespace triplex;

TEST_CASE("ints parsing, dedup and universe") {
    std::stringstream in("1 1 2\n1 2 3\n");
    auto g = parse_triples(in, InputFormat::ints);
    CHECK(g.triples.size() == 2);
    CHECK(g.universe == 3);
    CHECK(g.dict.is_identity());

    std::stringstream dup("5 5 5\n5 5 5\n\n5 5 5\n");
    auto g2 = parse_triples(dup, InputFormat::ints);
    CHECK(g2.triples.size() == 1);
}

TEST_CASE("parse errors carry line numbers") {
    std::stringstream bad("1 1 2\n1 2\n");
    CHECK_THROWS_WITH(parse_triples(bad, InputFormat::ints),
                      Catch::Matchers::ContainsSubstring("line 2"));

    std::stringstream zero("0 1 2\n");
    CHECK_THROWS_WITH(parse_triples(zero, InputFormat::ints),
                      Catch::Matchers::ContainsSubstring("positive"));

    std::stringstream neg("1 -4 2\n");
    CHECK_THROWS(parse_triples(neg, InputFormat::ints));

    std::stringstream junk("1 x 2\n");
    CHECK_THROWS_WITH(parse_triples(junk, InputFormat::ints),
                      Catch::Matchers::ContainsSubstring("bad id"));
}

TEST_CASE("terms mode assigns ids by first appearance and round-trips") {
    std::stringstream in("alice knows bob\nbob knows alice\nalice likes bob\n");
    auto g = parse_triples(in, InputFormat::terms);
    CHECK(g.triples.size() == 3);
    CHECK(g.universe == 4);  // alice, knows, bob, likes
    CHECK(g.dict.lookup("alice") == 1);
    CHECK(g.dict.lookup("knows") == 2);
    CHECK(g.dict.lookup("bob") == 3);
    CHECK(g.dict.lookup("likes") == 4);
    CHECK(g.dict.term(1) == "alice");
    CHECK_FALSE(g.dict.lookup("carol").has_value());

    std::stringstream ss;
    g.dict.save(ss);
    auto loaded = Dictionary::load(ss);
    CHECK(loaded.term(4) == "likes");
    CHECK(loaded.lookup("bob") == 3);
}

TEST_CASE("bgp text parsing") {
    auto q = Bgp::parse("?x 1 ?y ; ?y 2 3");
    REQUIRE(q.patterns.size() == 2);
    CHECK(q.var_count() == 2);
    CHECK(q.var_names[0] == "?x");
    CHECK(q.var_names[1] == "?y");
    CHECK(q.patterns[0].at(Role::predicate) == Term::constant(1));
    CHECK(q.patterns[1].at(Role::subject) == Term::variable(1));
    CHECK(q.lonely(0));
    CHECK_FALSE(q.lonely(1));

    CHECK_THROWS(Bgp::parse("?x 1"));
    CHECK_THROWS(Bgp::parse("  ;  "));
    CHECK_THROWS(Bgp::parse("?x 0 ?y"));

    // A variable used twice in one single pattern stays lonely.
    auto q2 = Bgp::parse("?x 1 ?x");
    CHECK(q2.lonely(0));
    auto q3 = Bgp::parse("?x 1 ?x ; ?x 2 ?z");
    CHECK_FALSE(q3.lonely(0));
}

TEST_CASE("query classification") {
    CHECK(classify_query(Bgp::parse("?x 1 ?y")) == QueryType::I);
    CHECK(classify_query(Bgp::parse("?x 1 ?y ; ?x 2 3")) == QueryType::II);
    CHECK(classify_query(Bgp::parse("?x 1 ?y ; ?y 2 ?z ; ?z 3 ?x")) == QueryType::III);
    // Multiple patterns with no repeated variable also fall into III.
    CHECK(classify_query(Bgp::parse("?x 1 2 ; ?y 2 3")) == QueryType::III);
}

TEST_CASE("oracle evaluates simple patterns") {
    OracleGraph g({{1, 1, 2}, {1, 2, 3}, {2, 1, 2}});

    auto r1 = oracle_eval(g, Bgp::parse("?x 1 ?y"));
    CHECK(r1 == MappingSet{{1, 2}, {2, 2}});

    auto r2 = oracle_eval(g, Bgp::parse("?x 1 2 ; ?x 2 3"));
    CHECK(r2 == MappingSet{{1}});

    auto r3 = oracle_eval(g, Bgp::parse("?x 9 ?y"));
    CHECK(r3.empty());

    // Repeated in-pattern variable requires equal subject and object.
    OracleGraph g2({{1, 1, 1}, {2, 1, 3}, {4, 1, 4}});
    auto r4 = oracle_eval(g2, Bgp::parse("?x 1 ?x"));
    CHECK(r4 == MappingSet{{1}, {4}});

    // The empty BGP has exactly the empty mapping as its solution.
    Bgp empty;
    CHECK(oracle_eval(g, empty) == MappingSet{{}});
}

TEST_CASE("oracle is independent of pattern listing order") {
    OracleGraph g({{1, 1, 2}, {2, 2, 3}, {3, 1, 1}, {2, 1, 3}, {3, 2, 2}});
    auto a = oracle_eval(g, Bgp::parse("?x 1 ?y ; ?y 2 ?z"));
    auto b = oracle_eval(g, Bgp::parse("?y 2 ?z ; ?x 1 ?y"));
    // Same bindings, variable ids swapped by appearance order.
    MappingSet a_swapped;
    for (const auto& m : a) a_swapped.insert({m[1], m[2], m[0]});
    CHECK(a_swapped == b);
}
