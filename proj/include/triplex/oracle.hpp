#ifndef TRIPLEX_ORACLE_HPP
#define TRIPLEX_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "triplex/triples.hpp"

namespace triplex {

// A total assignment of every query variable, indexed by variable id.
using Mapping = std::vector<uint64_t>;
using MappingSet = std::set<Mapping>;

// Brute-force evaluator used as ground truth by the test suites. Exponential
// time is fine at test scale; correctness is the whole point.
class OracleGraph {
public:
    explicit OracleGraph(std::vector<Triple> triples) : triples_(std::move(triples)) {
        std::sort(triples_.begin(), triples_.end());
        triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
        for (size_t i = 0; i < triples_.size(); ++i) {
            by_s_[triples_[i].s].push_back(i);
            by_p_[triples_[i].p].push_back(i);
            by_o_[triples_[i].o].push_back(i);
        }
    }

    const std::vector<Triple>& triples() const { return triples_; }

    bool contains(const Triple& t) const {
        return std::binary_search(triples_.begin(), triples_.end(), t);
    }

    MappingSet eval(const Bgp& q) const {
        MappingSet out;
        std::vector<std::optional<uint64_t>> mu(q.var_count());
        std::vector<bool> done(q.patterns.size(), false);
        backtrack(q, done, mu, out);
        return out;
    }

private:
    std::vector<Triple> triples_;
    std::map<uint64_t, std::vector<size_t>> by_s_, by_p_, by_o_;

    // The candidate list for a pattern: postings of one bound slot if any, else all rows.
    const std::vector<size_t>* postings(const TriplePattern& pat,
                                        const std::vector<std::optional<uint64_t>>& mu,
                                        std::vector<size_t>& scratch) const {
        auto slot_value = [&](Role r) -> std::optional<uint64_t> {
            const Term& t = pat.at(r);
            if (!t.is_var) return t.value;
            return mu[t.value];
        };
        static const std::vector<size_t> kEmpty;
        const std::vector<size_t>* best = nullptr;
        for (Role r : kRoles) {
            auto v = slot_value(r);
            if (!v) continue;
            const auto& idx = r == Role::subject ? by_s_ : r == Role::predicate ? by_p_ : by_o_;
            auto it = idx.find(*v);
            const std::vector<size_t>* list = it == idx.end() ? &kEmpty : &it->second;
            if (!best || list->size() < best->size()) best = list;
        }
        if (best) return best;
        scratch.resize(triples_.size());
        for (size_t i = 0; i < scratch.size(); ++i) scratch[i] = i;
        return &scratch;
    }

    void backtrack(const Bgp& q, std::vector<bool>& done,
                   std::vector<std::optional<uint64_t>>& mu, MappingSet& out) const {
        // Pick the unprocessed pattern with the most bound slots.
        size_t pick = q.patterns.size();
        int best_bound = -1;
        for (size_t i = 0; i < q.patterns.size(); ++i) {
            if (done[i]) continue;
            int bound = 0;
            for (Role r : kRoles) {
                const Term& t = q.patterns[i].at(r);
                if (!t.is_var || mu[t.value].has_value()) ++bound;
            }
            if (bound > best_bound) {
                best_bound = bound;
                pick = i;
            }
        }
        if (pick == q.patterns.size()) {
            // All patterns matched; any still-free variable would be a bug.
            Mapping m(mu.size());
            for (size_t v = 0; v < mu.size(); ++v) m[v] = mu[v].value();
            out.insert(std::move(m));
            return;
        }

        const TriplePattern& pat = q.patterns[pick];
        std::vector<size_t> scratch;
        const auto* cands = postings(pat, mu, scratch);
        done[pick] = true;
        for (size_t idx : *cands) {
            const Triple& t = triples_[idx];
            std::vector<uint64_t> bound_here;
            bool ok = true;
            for (Role r : kRoles) {
                const Term& term = pat.at(r);
                uint64_t val = t.at(r);
                if (!term.is_var) {
                    if (term.value != val) {
                        ok = false;
                        break;
                    }
                } else if (mu[term.value]) {
                    if (*mu[term.value] != val) {
                        ok = false;
                        break;
                    }
                } else {
                    mu[term.value] = val;
                    bound_here.push_back(term.value);
                }
            }
            if (ok) backtrack(q, done, mu, out);
            for (uint64_t v : bound_here) mu[v].reset();
        }
        done[pick] = false;
    }
};

inline MappingSet oracle_eval(const OracleGraph& g, const Bgp& q) { return g.eval(q); }

}  // namespace triplex

#endif
