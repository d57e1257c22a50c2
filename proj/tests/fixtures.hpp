#ifndef TRIPLEX_TEST_FIXTURES_HPP
#define TRIPLEX_TEST_FIXTURES_HPP

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "triplex/triples.hpp"

namespace triplex::testing {

// Three-triple graph used by most hand-checked cases.
inline std::vector<Triple> tiny_graph() { return {{1, 1, 2}, {1, 2, 3}, {2, 1, 2}}; }
inline constexpr uint64_t kTinyUniverse = 3;

// A 13-triple sample graph over ids 1..9 (subjects 1,3,4,5,6; predicates 7,8,9;
// objects 1..5) with a skewed degree distribution; several golden values in the
// ring and CSA tests are frozen against it.
inline std::vector<Triple> sample13_graph() {
    return {{1, 7, 3}, {3, 7, 2}, {4, 7, 5}, {5, 7, 1}, {6, 8, 1}, {6, 8, 2}, {6, 8, 3},
            {6, 8, 4}, {6, 8, 5}, {6, 9, 1}, {6, 9, 2}, {6, 9, 3}, {6, 9, 4}};
}
inline constexpr uint64_t kSample13Universe = 9;

inline std::vector<Triple> random_graph(size_t n, uint64_t universe, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> d(1, universe);
    std::set<Triple> s;
    size_t attempts = 0;
    while (s.size() < n && attempts < n * 20) {
        s.insert({d(rng), d(rng), d(rng)});
        ++attempts;
    }
    return {s.begin(), s.end()};
}

// Random BGP text over <= max_vars variables; constants are drawn from the graph
// (so most patterns match something) with occasional out-of-domain ids.
inline std::string random_query_text(const std::vector<Triple>& g, uint64_t universe,
                                     std::mt19937_64& rng, size_t max_patterns = 5,
                                     size_t max_vars = 5) {
    static const char* names[] = {"?a", "?b", "?c", "?d", "?e"};
    size_t n_pat = 1 + rng() % max_patterns;
    size_t n_vars = 1 + rng() % max_vars;
    std::string text;
    for (size_t i = 0; i < n_pat; ++i) {
        if (i) text += " ; ";
        const Triple& anchor = g[rng() % g.size()];
        for (Role r : kRoles) {
            uint64_t kind = rng() % 10;
            if (kind < 6) {
                text += names[rng() % n_vars];
            } else if (kind < 9) {
                text += std::to_string(anchor.at(r));  // in-domain constant
            } else {
                text += std::to_string(1 + rng() % universe);  // arbitrary constant
            }
            text += r == Role::object ? "" : " ";
        }
    }
    return text;
}

}  // namespace triplex::testing

#endif
