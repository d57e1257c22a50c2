#ifndef TRIPLEX_INGEST_HPP
#define TRIPLEX_INGEST_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "triplex/io_util.hpp"
#include "triplex/triples.hpp"

namespace triplex {

enum class InputFormat { ints, terms };

// Maps between external terms and dense ids [1..U]. In ints mode the mapping is
// the identity over the ids seen in the input.
class Dictionary {
public:
    static Dictionary identity(uint64_t universe) {
        Dictionary d;
        d.identity_ = true;
        d.universe_ = universe;
        return d;
    }

    static Dictionary empty_terms() {
        Dictionary d;
        d.identity_ = false;
        return d;
    }

    bool is_identity() const { return identity_; }
    uint64_t universe() const { return universe_; }

    uint64_t intern(const std::string& term) {
        auto [it, fresh] = index_.try_emplace(term, terms_.size() + 1);
        if (fresh) {
            terms_.push_back(term);
            universe_ = terms_.size();
        }
        return it->second;
    }

    std::optional<uint64_t> lookup(const std::string& term) const {
        auto it = index_.find(term);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::string term(uint64_t id) const {
        if (identity_) return std::to_string(id);
        if (id < 1 || id > terms_.size()) throw std::out_of_range("Dictionary: id out of range");
        return terms_[id - 1];
    }

    void save(std::ostream& os) const {
        io::write_u8(os, identity_ ? 1 : 0);
        io::write_u64(os, universe_);
        if (!identity_) {
            io::write_u64(os, terms_.size());
            for (const auto& t : terms_) io::write_string(os, t);
        }
    }

    static Dictionary load(std::istream& is) {
        Dictionary d;
        d.identity_ = io::read_u8(is) != 0;
        d.universe_ = io::read_u64(is);
        if (!d.identity_) {
            uint64_t k = io::read_u64(is);
            d.terms_.reserve(k);
            for (uint64_t i = 0; i < k; ++i) {
                d.terms_.push_back(io::read_string(is));
                d.index_.emplace(d.terms_.back(), i + 1);
            }
        }
        return d;
    }

private:
    bool identity_ = true;
    uint64_t universe_ = 0;
    std::vector<std::string> terms_;
    std::unordered_map<std::string, uint64_t> index_;
};

struct ParsedGraph {
    std::vector<Triple> triples;  // deduplicated, sorted
    Dictionary dict;
    uint64_t universe = 0;
};

// Reads one triple per line. ints: three positive integers; terms: three tokens
// interned by first appearance. Duplicate triples are dropped.
inline ParsedGraph parse_triples(std::istream& in, InputFormat format) {
    ParsedGraph g;
    g.dict = format == InputFormat::ints ? Dictionary::identity(0) : Dictionary::empty_terms();
    std::set<Triple> seen;
    std::string line;
    uint64_t line_no = 0;
    uint64_t max_id = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::stringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() != 3)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 3 fields, got " + std::to_string(tokens.size()));
        Triple t;
        uint64_t vals[3];
        for (int i = 0; i < 3; ++i) {
            if (format == InputFormat::ints) {
                long long v = 0;
                try {
                    size_t pos = 0;
                    v = std::stoll(tokens[i], &pos);
                    if (pos != tokens[i].size()) throw std::invalid_argument(tokens[i]);
                } catch (const std::exception&) {
                    throw std::runtime_error("line " + std::to_string(line_no) + ": bad id '" +
                                             tokens[i] + "'");
                }
                if (v <= 0)
                    throw std::runtime_error("line " + std::to_string(line_no) +
                                             ": ids must be positive, got " + tokens[i]);
                vals[i] = static_cast<uint64_t>(v);
            } else {
                vals[i] = g.dict.intern(tokens[i]);
            }
            max_id = std::max(max_id, vals[i]);
        }
        t = {vals[0], vals[1], vals[2]};
        seen.insert(t);
    }
    g.triples.assign(seen.begin(), seen.end());
    g.universe = format == InputFormat::ints ? max_id : g.dict.universe();
    if (format == InputFormat::ints) g.dict = Dictionary::identity(g.universe);
    return g;
}

}  // namespace triplex

#endif
