// triplex command-line tool: build compact triple indexes, run basic graph
// pattern queries over them, and benchmark query batches.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "triplex/variants.hpp"

using namespace triplex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct QueryEntry {
    std::string id;
    Bgp query;
};

std::vector<QueryEntry> read_query_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open query file: " + path);
    std::vector<QueryEntry> out;
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::stringstream ls(line);
        QueryEntry e;
        ls >> e.id;
        std::string rest;
        std::getline(ls, rest);
        try {
            e.query = Bgp::parse(rest);
        } catch (const std::exception& ex) {
            throw std::runtime_error("query file line " + std::to_string(line_no) + ": " +
                                     ex.what());
        }
        out.push_back(std::move(e));
    }
    return out;
}

struct StrategyOpts {
    std::string veo = "adaptive";
    std::string estimator = "range";
    uint64_t seed = 0;

    Strategy parse() const {
        Strategy st;
        st.seed = seed;
        if (veo == "global") st.mode = VeoMode::global;
        else if (veo == "adaptive") st.mode = VeoMode::adaptive;
        else throw CLI::ValidationError("--veo", "must be 'global' or 'adaptive'");

        std::string est = estimator;
        if (est.rfind("refined", 0) == 0) {
            st.estimator = EstimatorKind::refined;
            st.refine_levels = 3;
            if (auto colon = est.find(':'); colon != std::string::npos) {
                try {
                    st.refine_levels = static_cast<uint32_t>(std::stoul(est.substr(colon + 1)));
                } catch (const std::exception&) {
                    throw CLI::ValidationError("--estimator",
                                               "bad refinement depth in '" + est + "'");
                }
            }
        } else if (est == "range") {
            st.estimator = EstimatorKind::range_size;
        } else if (est == "children") {
            st.estimator = EstimatorKind::distinct_children;
        } else if (est == "random") {
            st.estimator = EstimatorKind::random_order;
        } else if (est == "random-nl") {
            st.estimator = EstimatorKind::random_lonely_last;
        } else if (est == "random-e") {
            st.estimator = EstimatorKind::random_weights;
        } else {
            throw CLI::ValidationError("--estimator", "unknown estimator '" + est + "'");
        }
        return st;
    }
};

EngineConfig make_config(uint64_t limit, double timeout, const StrategyOpts& opts) {
    EngineConfig cfg;
    if (limit == 0) cfg.limit.reset();
    else cfg.limit = limit;
    if (timeout <= 0) cfg.timeout_seconds.reset();
    else cfg.timeout_seconds = timeout;
    cfg.strategy = opts.parse();
    return cfg;
}

void require_children_support(const LoadedIndex& li, const Strategy& st) {
    if (st.estimator != EstimatorKind::distinct_children) return;
    if (li.variant == Variant::vring_large || li.variant == Variant::vring_small) return;
    throw CLI::ValidationError("--estimator",
                               "estimator 'children' needs a vring-built index, found " +
                                   std::string(to_string(li.variant)));
}

std::string value_text(const Dictionary& dict, uint64_t id) {
    return dict.is_identity() ? std::to_string(id) : dict.term(id);
}

int cmd_build(const std::string& input, const std::string& format, const std::string& variant,
              const std::string& out) {
    auto v = parse_variant(variant);
    if (!v) {
        std::cerr << "error: unknown variant '" << variant << "'\n";
        return kExitUsage;
    }
    std::ifstream in(input);
    if (!in) {
        std::cerr << "error: cannot open input file: " << input << "\n";
        return kExitData;
    }
    auto parsed = parse_triples(in, format == "terms" ? InputFormat::terms : InputFormat::ints);
    if (parsed.triples.empty()) {
        std::cerr << "error: empty graph\n";
        return kExitData;
    }
    auto li = build_index(*v, parsed.triples, parsed.universe, std::move(parsed.dict));
    save_index(li, out);
    uint64_t bytes = file_size_bytes(out);
    std::cout << "variant=" << to_string(*v) << " n=" << li.n << " U=" << li.universe
              << " bytes=" << bytes << " bpt=" << std::fixed << std::setprecision(2)
              << (static_cast<double>(bytes) / static_cast<double>(li.n)) << "\n";
    return kExitOk;
}

int cmd_query(const std::string& index_path, const std::string& queries_path, uint64_t limit,
              double timeout, const StrategyOpts& opts) {
    auto li = load_index(index_path);
    auto cfg = make_config(limit, timeout, opts);
    require_children_support(li, cfg.strategy);
    auto entries = read_query_file(queries_path);
    for (const auto& e : entries) {
        auto res = std::visit([&](const auto& ix) { return ltj_eval(ix, e.query, cfg); }, li.index);
        for (const auto& m : res.mappings) {
            std::string line;
            for (size_t v = 0; v < m.size(); ++v) {
                if (v) line += '\t';
                line += e.query.var_names[v] + "=" + value_text(li.dict, m[v]);
            }
            std::cout << line << "\n";
        }
        std::cout << "# id=" << e.id << " type=" << to_string(classify_query(e.query))
                  << " variant=" << to_string(li.variant) << " veo=" << opts.veo
                  << " estimator=" << opts.estimator << " elapsed_us=" << res.stats.elapsed_us
                  << " results=" << res.stats.results
                  << " timeout=" << (res.stats.timed_out ? 1 : 0) << "\n";
    }
    return kExitOk;
}

int cmd_bench(const std::string& index_path, const std::string& queries_path,
              const std::string& csv_path, bool exhaustive, uint64_t limit, double timeout,
              const StrategyOpts& opts) {
    auto li = load_index(index_path);
    auto cfg = make_config(limit, timeout, opts);
    require_children_support(li, cfg.strategy);
    auto entries = read_query_file(queries_path);

    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write csv file: " + csv_path);
    csv << "query_id,type,variant,veo,estimator,elapsed_us,results,timeout";
    if (exhaustive) csv << ",best_veo,best_elapsed_us";
    csv << "\n";

    for (const auto& e : entries) {
        auto res = std::visit([&](const auto& ix) { return ltj_eval(ix, e.query, cfg); }, li.index);
        csv << e.id << ',' << to_string(classify_query(e.query)) << ',' << to_string(li.variant)
            << ',' << opts.veo << ',' << opts.estimator << ',' << res.stats.elapsed_us << ','
            << res.stats.results << ',' << (res.stats.timed_out ? 1 : 0);
        if (exhaustive) {
            auto best = std::visit(
                [&](const auto& ix) { return exhaustive_best_veo(ix, e.query, cfg); }, li.index);
            uint64_t best_us = std::min(best.elapsed_us, res.stats.elapsed_us);
            std::string order_text;
            for (size_t i = 0; i < best.order.size(); ++i) {
                if (i) order_text += '>';
                order_text += e.query.var_names[best.order[i]];
            }
            csv << ',' << order_text << ',' << best_us;
        }
        csv << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compact worst-case-optimal join indexes for graph patterns"};
    app.require_subcommand(1);

    std::string input, format = "ints", variant = "ring-large", out;
    auto* build = app.add_subcommand("build", "build an index container from a triple file");
    build->add_option("--input", input, "triple file, one triple per line")->required();
    build->add_option("--format", format, "input format")->check(CLI::IsMember({"ints", "terms"}));
    build->add_option("--variant", variant, "index variant");
    build->add_option("--out", out, "output container path")->required();

    std::string index_path, queries_path, csv_path;
    uint64_t limit = 1000;
    double timeout = 600.0;
    StrategyOpts opts;
    bool exhaustive = false;

    auto* query = app.add_subcommand("query", "evaluate graph pattern queries");
    query->add_option("--index", index_path, "index container")->required();
    query->add_option("--queries", queries_path, "query file")->required();
    query->add_option("--limit", limit, "result limit per query, 0 = unlimited");
    query->add_option("--timeout", timeout, "per-query timeout in seconds, 0 = none");
    query->add_option("--veo", opts.veo, "variable elimination: global or adaptive");
    query->add_option("--estimator", opts.estimator,
                      "range | children | refined[:K] | random | random-nl | random-e");
    query->add_option("--seed", opts.seed, "seed for random orders");

    auto* bench = app.add_subcommand("bench", "run a query batch and write a CSV report");
    bench->add_option("--index", index_path, "index container")->required();
    bench->add_option("--queries", queries_path, "query file")->required();
    bench->add_option("--csv", csv_path, "output CSV path")->required();
    bench->add_flag("--exhaustive-veo", exhaustive,
                    "also search all global orders (<= 6 non-lonely variables)");
    bench->add_option("--limit", limit, "result limit per query, 0 = unlimited");
    bench->add_option("--timeout", timeout, "per-query timeout in seconds, 0 = none");
    bench->add_option("--veo", opts.veo, "variable elimination: global or adaptive");
    bench->add_option("--estimator", opts.estimator,
                      "range | children | refined[:K] | random | random-nl | random-e");
    bench->add_option("--seed", opts.seed, "seed for random orders");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (build->parsed()) return cmd_build(input, format, variant, out);
        if (query->parsed()) return cmd_query(index_path, queries_path, limit, timeout, opts);
        if (bench->parsed())
            return cmd_bench(index_path, queries_path, csv_path, exhaustive, limit, timeout, opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
