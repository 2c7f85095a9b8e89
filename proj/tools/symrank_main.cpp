// Command-line front end: reads graph / partial-matrix files, dispatches to
// the library, prints one JSON report per invocation.
//
// Exit codes: 0 success, 1 input error, 2 numeric or non-generic error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "symrank/classifier.hpp"
#include "symrank/completion.hpp"
#include "symrank/graph.hpp"
#include "symrank/json_io.hpp"
#include "symrank/oracle.hpp"

namespace {

using namespace symrank;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ojson parse_json_file(const std::string& path) {
    try {
        return ojson::parse(slurp(path));
    } catch (const nlohmann::json::parse_error& err) {
        throw InputError("malformed JSON in " + path + ": " + err.what());
    }
}

SemisimpleGraph load_graph(const std::string& path) { return parse_graph(slurp(path)); }

PartialSymmetricMatrix load_partial(const std::string& path) {
    return partial_from_json(parse_json_file(path));
}

std::vector<Edge> load_ordering(const std::string& path) {
    std::istringstream in(slurp(path));
    std::vector<Edge> ordering;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int i = 0, j = 0;
        if (!(ls >> i)) continue;
        if (!(ls >> j)) throw InputError("ordering file: expected 'i j' per line");
        ordering.push_back(make_edge(i, j));
    }
    return ordering;
}

struct CommonOptions {
    double rank_tol = 1e-8;
    double opt_tol = 1e-7;
    std::uint64_t seed = 42;
    int samples = 300;
    int restarts = 20;
    int max_iter = 2000;
    int threads = 1;
    double threshold = 0.02;
    std::string ordering = "lex";
    std::string ordering_file;

    Tolerance tolerance() const { return Tolerance(rank_tol, opt_tol); }
    OracleConfig oracle() const {
        OracleConfig cfg;
        cfg.restarts = restarts;
        cfg.max_iter = max_iter;
        cfg.opt_tol = opt_tol;
        cfg.rank_tol = rank_tol;
        cfg.seed = seed;
        return cfg;
    }
    std::optional<std::vector<Edge>> ordering_override() const {
        if (ordering == "lex") return std::nullopt;
        if (ordering == "file") {
            if (ordering_file.empty())
                throw InputError("--ordering file needs --ordering-file <path>");
            return load_ordering(ordering_file);
        }
        throw InputError("--ordering must be 'lex' or 'file'");
    }
};

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

ojson graph_summary(const SemisimpleGraph& g) {
    ojson edges = ojson::array();
    for (const auto& e : g.edges()) edges.push_back(edge_to_json(e));
    return ojson{{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

int run_classify(const std::string& path, const CommonOptions& opts) {
    (void)opts;
    const auto g = load_graph(path);
    const auto frt = is_full_rank_typical(g);
    const auto fam = classify_family(g);
    ojson tags = ojson::array();
    for (const auto t : fam.tags) tags.push_back(to_string(t));
    ojson witness;
    if (frt.full_rank_typical) {
        witness = ojson{{"complement_class_a", frt.complement_check.class_a},
                        {"complement_class_b", frt.complement_check.class_b}};
    } else {
        witness = ojson{{"complement_odd_closed_walk", frt.complement_check.odd_closed_walk}};
    }
    ojson out{{"schema_version", kSchemaVersion},
              {"type", "classification"},
              {"graph", graph_summary(g)},
              {"full_rank_typical", frt.full_rank_typical},
              {"witness", std::move(witness)},
              {"family_tags", std::move(tags)},
              {"clique_sizes", fam.clique_sizes},
              {"report", typical_rank_report_to_json(typical_ranks(g))}};
    emit(out);
    return 0;
}

int run_certify(const std::string& path, const CommonOptions& opts) {
    const auto m = load_partial(path);
    Rng rng(derive_seed(opts.seed, {0xCE7Fu}));
    const auto cert =
        certify_full_rank(m, opts.tolerance(), rng, std::nullopt, opts.ordering_override());
    emit(certificate_to_json(cert));
    return 0;
}

int run_complete(const std::string& path, const CommonOptions& opts) {
    const auto m = load_partial(path);
    const auto fam = classify_family(m.pattern());

    if (fam.has(FamilyTag::disjoint_union_of_looped_cliques)) {
        const auto comps = detail::component_lists(m.pattern());
        if (comps.size() == 1) {
            const auto full = m.zero_fill();
            emit(ojson{{"schema_version", kSchemaVersion},
                       {"type", "completion"},
                       {"method", "fully-specified"},
                       {"rank", numeric_rank(full, opts.tolerance())},
                       {"residual", 0.0},
                       {"matrix", matrix_to_json(full)}});
            return 0;
        }
        if (comps.size() == 2) {
            auto block = [&](const std::vector<int>& verts) {
                SymmetricMatrix b(static_cast<int>(verts.size()));
                for (std::size_t x = 0; x < verts.size(); ++x)
                    for (std::size_t y = x; y < verts.size(); ++y)
                        b.set(static_cast<int>(x) + 1, static_cast<int>(y) + 1,
                              m.value(verts[x], verts[y]));
                return b;
            };
            const auto done = clique_pair_complete(block(comps[0]), block(comps[1]),
                                                   opts.tolerance());
            // Back to the original vertex order.
            std::vector<int> order = comps[0];
            order.insert(order.end(), comps[1].begin(), comps[1].end());
            SymmetricMatrix global(m.size());
            for (int a = 1; a <= m.size(); ++a)
                for (int b2 = a; b2 <= m.size(); ++b2)
                    global.set(order[a - 1], order[b2 - 1], done.assembled(a, b2));
            emit(ojson{{"schema_version", kSchemaVersion},
                       {"type", "completion"},
                       {"method", "two-block-construction"},
                       {"rank", done.achieved_rank},
                       {"residual", 0.0},
                       {"matrix", matrix_to_json(global)}});
            return 0;
        }
    }

    const auto res = min_rank_complete(m, opts.oracle());
    emit(ojson{{"schema_version", kSchemaVersion},
               {"type", "completion"},
               {"method", "oracle"},
               {"rank", res.rank},
               {"residual", res.residual},
               {"lower_bound", res.lower_bound},
               {"matrix", matrix_to_json(res.witness)}});
    return 0;
}

int run_solve_entry(const std::string& path, const CommonOptions& opts) {
    emit(one_missing_to_json(one_missing_entry_solve(load_partial(path), opts.tolerance())));
    return 0;
}

int run_esd(const std::string& path1, const std::string& path2, const CommonOptions& opts) {
    Rng rng(derive_seed(opts.seed, {0xE5Du}));
    emit(esd_partial_to_json(
        esd_partial(load_partial(path1), load_partial(path2), opts.tolerance(), rng)));
    return 0;
}

int run_sample(const std::string& path, const CommonOptions& opts) {
    const auto est = typical_rank_sample(load_graph(path), opts.samples, opts.oracle(),
                                         opts.threshold, opts.threads);
    emit(estimate_to_json(est));
    return 0;
}

int run_census(const std::string& path, const CommonOptions& opts) {
    emit(census_to_json(inertia_census(load_graph(path), opts.samples, opts.oracle())));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-rank real completion of partially specified symmetric matrices"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string input, input2;

    auto add_common = [&](CLI::App* cmd, bool oracle_flags) {
        cmd->add_option("--tol", opts.rank_tol, "relative eigenvalue tolerance");
        cmd->add_option("--seed", opts.seed, "master random seed");
        if (oracle_flags) {
            cmd->add_option("--opt-tol", opts.opt_tol, "oracle residual tolerance");
            cmd->add_option("--restarts", opts.restarts, "oracle restarts per signature");
            cmd->add_option("--max-iter", opts.max_iter, "solver iterations per start");
        }
    };

    auto* classify = app.add_subcommand("classify", "typical-rank report for a graph pattern");
    classify->add_option("graph", input, "graph file")->required();
    add_common(classify, false);

    auto* certify = app.add_subcommand(
        "certify", "decide whether every completion of a partial matrix has full rank");
    certify->add_option("partial", input, "partial matrix JSON file")->required();
    certify->add_option("--ordering", opts.ordering, "non-edge ordering: lex | file");
    certify->add_option("--ordering-file", opts.ordering_file, "ordering file for --ordering file");
    add_common(certify, false);

    auto* complete = app.add_subcommand("complete", "produce a minimum-rank completion");
    complete->add_option("partial", input, "partial matrix JSON file")->required();
    add_common(complete, true);

    auto* solve = app.add_subcommand("solve-entry", "solve a one-missing-entry pattern");
    solve->add_option("partial", input, "partial matrix JSON file")->required();
    add_common(solve, false);

    auto* esd_cmd = app.add_subcommand("esd", "eigenvalue sign disagreement of two certified blocks");
    esd_cmd->add_option("partial1", input, "first partial matrix")->required();
    esd_cmd->add_option("partial2", input2, "second partial matrix")->required();
    add_common(esd_cmd, false);

    auto* sample = app.add_subcommand("sample", "Monte Carlo typical-rank estimate");
    sample->add_option("graph", input, "graph file")->required();
    sample->add_option("--samples", opts.samples, "number of Gaussian samples");
    sample->add_option("--threads", opts.threads, "worker threads");
    sample->add_option("--threshold", opts.threshold, "typicality frequency threshold");
    add_common(sample, true);

    auto* census = app.add_subcommand("census", "inertia census of certified-full-rank samples");
    census->add_option("graph", input, "graph file")->required();
    census->add_option("--samples", opts.samples, "number of Gaussian samples");
    add_common(census, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cout << symrank::error_to_json("input", e.what()).dump(2) << "\n";
        return 1;
    }

    try {
        if (classify->parsed()) return run_classify(input, opts);
        if (certify->parsed()) return run_certify(input, opts);
        if (complete->parsed()) return run_complete(input, opts);
        if (solve->parsed()) return run_solve_entry(input, opts);
        if (esd_cmd->parsed()) return run_esd(input, input2, opts);
        if (sample->parsed()) return run_sample(input, opts);
        if (census->parsed()) return run_census(input, opts);
    } catch (const symrank::InputError& e) {
        std::cout << symrank::error_to_json("input", e.what()).dump(2) << "\n";
        return 1;
    } catch (const symrank::NumericError& e) {
        std::cout << symrank::error_to_json("numeric", e.what()).dump(2) << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cout << symrank::error_to_json("input", e.what()).dump(2) << "\n";
        return 1;
    }
    return 1;
}
