#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "symrank/classifier.hpp"
#include "symrank/completion.hpp"
#include "symrank/errors.hpp"
#include "symrank/graph.hpp"
#include "symrank/linalg.hpp"
#include "symrank/oracle.hpp"

namespace symrank {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// --------------------------- matrices ------------------------------------

inline ojson matrix_to_json(const SymmetricMatrix& m) {
    ojson rows = ojson::array();
    for (int i = 1; i <= m.size(); ++i) {
        ojson row = ojson::array();
        for (int j = 1; j <= m.size(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return ojson{{"n", m.size()}, {"rows", std::move(rows)}};
}

inline SymmetricMatrix matrix_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
        throw InputError("matrix JSON needs fields 'n' and 'rows'");
    const int n = j.at("n").get<int>();
    const auto& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw InputError("matrix JSON: 'rows' must hold n rows");
    Eigen::MatrixXd dense(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InputError("matrix JSON: each row must hold n numbers");
        for (int c = 0; c < n; ++c) dense(i, c) = row.at(c).get<double>();
    }
    return SymmetricMatrix::from_dense(dense, 1e-12);
}

// ------------------------ partial matrices --------------------------------

inline ojson partial_to_json(const PartialSymmetricMatrix& m) {
    ojson entries = ojson::array();
    for (const auto& [e, v] : m.values())
        entries.push_back(ojson{{"i", e.first}, {"j", e.second}, {"v", v}});
    return ojson{{"n", m.size()}, {"entries", std::move(entries)}};
}

inline PartialSymmetricMatrix partial_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw InputError("partial matrix JSON needs fields 'n' and 'entries'");
    const int n = j.at("n").get<int>();
    std::vector<std::tuple<int, int, double>> entries;
    for (const auto& e : j.at("entries")) {
        const int i = e.at("i").get<int>();
        const int jj = e.at("j").get<int>();
        if (i > jj) throw InputError("partial matrix JSON: entries need i <= j");
        entries.emplace_back(i, jj, e.at("v").get<double>());
    }
    return PartialSymmetricMatrix::from_entries(n, entries);
}

// ----------------------------- pieces -------------------------------------

inline ojson inertia_to_json(const Inertia& in) {
    return ojson{{"positives", in.positives}, {"negatives", in.negatives}, {"kernel", in.kernel}};
}

inline ojson edge_to_json(const Edge& e) { return ojson::array({e.first, e.second}); }

inline ojson vertex_set_json(VertexSet s) {
    ojson out = ojson::array();
    for (int v : vertex_set_to_list(s)) out.push_back(v);
    return out;
}

// ----------------------------- reports ------------------------------------

inline ojson certificate_to_json(const CompletionCertificate& cert) {
    ojson table = ojson::array();
    for (const auto& row : cert.sign_table) {
        table.push_back(ojson{{"element", vertex_set_json(row.element)},
                              {"split_edge", edge_to_json(row.split)},
                              {"children", ojson::array({
                                   ojson{{"element", vertex_set_json(row.child_i)},
                                         {"sign", row.sign_i}},
                                   ojson{{"element", vertex_set_json(row.child_j)},
                                         {"sign", row.sign_j}},
                               })}});
    }
    ojson ordering = ojson::array();
    for (const auto& e : cert.ordering) ordering.push_back(edge_to_json(e));
    ojson j{{"schema_version", kSchemaVersion},
            {"type", "completion-certificate"},
            {"n", cert.n},
            {"verdict", to_string(cert.verdict)},
            {"ordering", std::move(ordering)},
            {"fixed_inertia", cert.fixed_inertia ? inertia_to_json(*cert.fixed_inertia) : ojson(nullptr)},
            {"violating_element", cert.violating_element
                                      ? vertex_set_json(*cert.violating_element)
                                      : ojson(nullptr)},
            {"sign_table", std::move(table)},
            {"completion_values", cert.completion_values},
            {"resamples", cert.resamples}};
    return j;
}

inline ojson typical_rank_report_to_json(const TypicalRankReport& report) {
    ojson provenance = ojson::array();
    for (const auto& p : report.provenance)
        provenance.push_back(ojson{{"rule", p.rule}, {"note", p.note}});
    ojson j{{"schema_version", kSchemaVersion},
            {"type", "typical-rank-report"},
            {"n", report.n},
            {"gcr", report.gcr ? ojson(*report.gcr) : ojson(nullptr)},
            {"typical_set", report.typical_set
                                ? ojson{{"min", report.typical_set->first},
                                        {"max", report.typical_set->second}}
                                : ojson(nullptr)},
            {"max_typical_lower", report.max_lower ? ojson(*report.max_lower) : ojson(nullptr)},
            {"max_typical_upper", report.max_upper ? ojson(*report.max_upper) : ojson(nullptr)},
            {"provenance", std::move(provenance)},
            {"notes", report.notes}};
    return j;
}

inline ojson estimate_to_json(const TypicalRankEstimate& est) {
    ojson hist = ojson::object();
    for (const auto& [rank, freq] : est.histogram) hist[std::to_string(rank)] = freq;
    ojson counts = ojson::object();
    for (const auto& [rank, c] : est.counts) counts[std::to_string(rank)] = c;
    return ojson{{"schema_version", kSchemaVersion},
                 {"type", "typical-rank-estimate"},
                 {"samples", est.samples},
                 {"histogram", std::move(hist)},
                 {"declared", est.declared},
                 {"threshold", est.threshold},
                 {"seed", est.seed},
                 {"counts", std::move(counts)},
                 {"degenerate_resamples", est.degenerate_resamples}};
}

inline ojson census_to_json(const InertiaCensus& census) {
    ojson rows = ojson::array();
    for (const auto& [in, count] : census.counts) {
        rows.push_back(ojson{{"inertia", ojson::array({in.positives, in.negatives, in.kernel})},
                             {"count", count},
                             {"frequency", census.certified_full_rank > 0
                                               ? ojson(static_cast<double>(count) /
                                                       census.certified_full_rank)
                                               : ojson(nullptr)}});
    }
    ojson colorings = ojson::array();
    for (const auto& [reds, blues] : census.complement_bicolorings)
        colorings.push_back(ojson::array({reds, blues}));
    return ojson{{"schema_version", kSchemaVersion},
                 {"type", "inertia-census"},
                 {"samples", census.samples},
                 {"certified_full_rank", census.certified_full_rank},
                 {"non_generic_skipped", census.non_generic_skipped},
                 {"census", std::move(rows)},
                 {"complement_bicolorings", std::move(colorings)},
                 {"seed", census.seed}};
}

inline ojson one_missing_to_json(const OneMissingEntryResult& r) {
    return ojson{{"schema_version", kSchemaVersion},
                 {"type", "one-missing-entry"},
                 {"deficient_completable", r.deficient_completable},
                 {"roots", r.roots},
                 {"identically_singular", r.identically_singular},
                 {"discriminant", r.discriminant},
                 {"determinant_check",
                  ojson{{"det_m11", r.det_m11},
                        {"det_mnn", r.det_mnn},
                        {"product", r.det_m11 * r.det_mnn},
                        {"det_m1n1n", r.det_m1n1n},
                        {"det_zero_fill", r.det_m0},
                        {"det_mixed_minor", r.det_mixed}}},
                 {"quadratic",
                  ojson{{"t2", -r.det_m1n1n}, {"t1", r.quad_linear}, {"t0", r.det_m0}}},
                 {"permutation", r.permutation}};
}

inline ojson esd_partial_to_json(const EsdPartialResult& r) {
    return ojson{{"schema_version", kSchemaVersion},
                 {"type", "esd-report"},
                 {"esd", r.esd_value},
                 {"inertia_1", inertia_to_json(r.inertia_1)},
                 {"inertia_2", inertia_to_json(r.inertia_2)},
                 {"union_min_rank", r.union_min_rank}};
}

inline ojson error_to_json(const std::string& kind, const std::string& message) {
    return ojson{{"schema_version", kSchemaVersion},
                 {"type", "error"},
                 {"error", ojson{{"kind", kind}, {"message", message}}}};
}

} // namespace symrank
