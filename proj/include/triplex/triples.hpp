#ifndef TRIPLEX_TRIPLES_HPP
#define TRIPLEX_TRIPLES_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace triplex {

enum class Role : uint8_t { subject = 0, predicate = 1, object = 2 };

constexpr std::array<Role, 3> kRoles = {Role::subject, Role::predicate, Role::object};

inline size_t role_index(Role r) { return static_cast<size_t>(r); }

struct Triple {
    uint64_t s = 0, p = 0, o = 0;

    uint64_t at(Role r) const {
        switch (r) {
            case Role::subject: return s;
            case Role::predicate: return p;
            default: return o;
        }
    }

    auto operator<=>(const Triple&) const = default;
};

// One slot of a triple pattern: a constant id or a query variable.
struct Term {
    bool is_var = false;
    uint64_t value = 0;  // constant id or variable index

    static Term constant(uint64_t id) { return {false, id}; }
    static Term variable(uint64_t var) { return {true, var}; }
    bool operator==(const Term&) const = default;
};

struct TriplePattern {
    std::array<Term, 3> slots;

    const Term& at(Role r) const { return slots[role_index(r)]; }
    Term& at(Role r) { return slots[role_index(r)]; }

    bool is_const(Role r) const { return !at(r).is_var; }
    size_t const_count() const {
        size_t k = 0;
        for (const auto& t : slots) k += !t.is_var;
        return k;
    }
    bool operator==(const TriplePattern&) const = default;
};

enum class QueryType { I, II, III };

inline std::string to_string(QueryType t) {
    switch (t) {
        case QueryType::I: return "I";
        case QueryType::II: return "II";
        default: return "III";
    }
}

// A basic graph pattern: a set of triple patterns over shared variables.
// Variable ids are assigned by first appearance in the pattern text.
struct Bgp {
    std::vector<TriplePattern> patterns;
    std::vector<std::string> var_names;  // index = variable id

    size_t var_count() const { return var_names.size(); }

    struct Occurrence {
        size_t pattern;
        Role role;
    };

    std::vector<Occurrence> occurrences(uint64_t var) const {
        std::vector<Occurrence> occ;
        for (size_t i = 0; i < patterns.size(); ++i)
            for (Role r : kRoles)
                if (patterns[i].at(r).is_var && patterns[i].at(r).value == var)
                    occ.push_back({i, r});
        return occ;
    }

    // A variable is lonely when it occurs in exactly one pattern, however many
    // slots of that pattern it fills.
    bool lonely(uint64_t var) const {
        size_t patterns_with = 0;
        for (const auto& pat : patterns) {
            for (Role r : kRoles) {
                if (pat.at(r).is_var && pat.at(r).value == var) {
                    ++patterns_with;
                    break;
                }
            }
        }
        return patterns_with == 1;
    }

    bool share_pattern(uint64_t va, uint64_t vb) const {
        for (const auto& pat : patterns) {
            bool has_a = false, has_b = false;
            for (Role r : kRoles) {
                if (!pat.at(r).is_var) continue;
                has_a |= pat.at(r).value == va;
                has_b |= pat.at(r).value == vb;
            }
            if (has_a && has_b) return true;
        }
        return false;
    }

    // Pattern text: triple patterns separated by ';', each three whitespace-separated
    // tokens; a token is a positive integer constant or a '?'-prefixed variable name.
    static Bgp parse(std::string_view text) {
        Bgp q;
        std::unordered_map<std::string, uint64_t> var_ids;
        std::string buf(text);
        std::stringstream ss(buf);
        std::string part;
        while (std::getline(ss, part, ';')) {
            std::stringstream ps(part);
            std::vector<std::string> tokens;
            std::string tok;
            while (ps >> tok) tokens.push_back(tok);
            if (tokens.empty()) continue;
            if (tokens.size() != 3)
                throw std::runtime_error("triple pattern needs exactly 3 terms: '" + part + "'");
            TriplePattern pat;
            for (size_t i = 0; i < 3; ++i) {
                const std::string& t = tokens[i];
                if (t[0] == '?') {
                    if (t.size() < 2) throw std::runtime_error("empty variable name");
                    auto [it, fresh] = var_ids.try_emplace(t, q.var_names.size());
                    if (fresh) q.var_names.push_back(t);
                    pat.slots[i] = Term::variable(it->second);
                } else {
                    uint64_t id;
                    try {
                        size_t pos = 0;
                        long long v = std::stoll(t, &pos);
                        if (pos != t.size() || v <= 0) throw std::invalid_argument(t);
                        id = static_cast<uint64_t>(v);
                    } catch (const std::exception&) {
                        throw std::runtime_error("bad constant '" + t + "' in pattern");
                    }
                    pat.slots[i] = Term::constant(id);
                }
            }
            q.patterns.push_back(pat);
        }
        if (q.patterns.empty()) throw std::runtime_error("empty graph pattern");
        return q;
    }
};

// I: single pattern. II: several patterns but only one variable joins them.
// III: everything else.
inline QueryType classify_query(const Bgp& q) {
    if (q.patterns.size() == 1) return QueryType::I;
    size_t multi = 0;
    for (uint64_t v = 0; v < q.var_count(); ++v) {
        size_t patterns_with = 0;
        for (const auto& pat : q.patterns) {
            for (Role r : kRoles) {
                if (pat.at(r).is_var && pat.at(r).value == v) {
                    ++patterns_with;
                    break;
                }
            }
        }
        multi += patterns_with > 1;
    }
    return multi == 1 ? QueryType::II : QueryType::III;
}

}  // namespace triplex

#endif
