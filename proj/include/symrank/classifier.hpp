#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symrank/errors.hpp"
#include "symrank/graph.hpp"

namespace symrank {

struct FullRankTypicality {
    bool full_rank_typical = false;
    BipartiteCheck complement_check; // bipartition of G^c, or an odd closed walk in it
};

/// An n-vertex pattern admits n as a typical rank exactly when its
/// complement is bipartite; the witness is the complement's 2-coloring or
/// its odd closed walk.
inline FullRankTypicality is_full_rank_typical(const SemisimpleGraph& g) {
    FullRankTypicality out;
    out.complement_check = is_bipartite(complement(g));
    out.full_rank_typical = out.complement_check.bipartite;
    return out;
}

struct ProvenanceEntry {
    std::string rule;
    std::string note;
};

struct TypicalRankReport {
    int n = 0;
    std::optional<int> gcr;
    std::optional<std::pair<int, int>> typical_set; // contiguous [min, max]
    std::optional<int> max_lower;                   // bounds on the maximum typical rank
    std::optional<int> max_upper;
    std::vector<ProvenanceEntry> provenance;
    std::vector<std::string> notes;
};

struct ClassifierLimits {
    int independent_set_limit = 24;
    int bipartite_induced_limit = 16;
};

/// Exact typical-rank set for the characterized families, rigorous bounds on
/// the maximum typical rank otherwise.
inline TypicalRankReport typical_ranks(const SemisimpleGraph& g,
                                       const ClassifierLimits& limits = {}) {
    TypicalRankReport report;
    const int n = g.vertex_count();
    report.n = n;

    struct ExactClaim {
        std::pair<int, int> set;
        int gcr;
        std::string rule;
        std::string note;
    };
    std::vector<ExactClaim> claims;

    if (n > 0 && g.edge_count() == 0) {
        claims.push_back({{0, 0}, 0, "empty-pattern", "no specified entries; the zero completion works"});
    } else if (n > 0) {
        const FamilyClassification fam = classify_family(g);
        if (fam.has(FamilyTag::disjoint_union_of_looped_cliques)) {
            const auto& s = fam.clique_sizes;
            if (s.size() == 1) {
                claims.push_back({{s[0], s[0]}, s[0], "fully-specified-block",
                                  "pattern is one looped clique; the matrix is already complete"});
            } else {
                const int lo = s[0], hi = s[0] + s[1];
                claims.push_back({{lo, hi}, lo,
                                  s.size() == 2 ? "two-clique-esd-rule" : "multi-clique-union-rule",
                                  "looped cliques of sizes n1 >= n2 >= ...: minimum n1, maximum n1+n2, "
                                  "interval filled by contiguity"});
            }
        }
        if (fam.has(FamilyTag::gcr_one_graph)) {
            const int odd = cycle_profile(g).odd_cycle_count();
            claims.push_back({{1, odd >= 2 ? 2 : 1}, 1, "gcr-one-cycle-rule",
                              odd >= 2 ? "no even cycles, two or more odd cycles: ranks {1, 2}"
                                       : "no even cycles, at most one odd cycle: rank {1}"});
        }
        if (fam.has(FamilyTag::looped_forest) && g.edge_count() > g.loop_count()) {
            if (n == 2) {
                claims.push_back({{2, 2}, 2, "looped-forest-rule", "looped edge on two vertices"});
            } else if (fam.has(FamilyTag::looped_star_tree_plus_isolated)) {
                claims.push_back({{2, 3}, 2, "looped-star-tree-rule",
                                  "looped star tree plus looped isolated vertices: maximum 3"});
            } else {
                claims.push_back({{2, 4}, 2, "looped-forest-rule",
                                  "looped forest not of star-tree form: maximum 4"});
            }
        }
    }

    if (!claims.empty()) {
        for (std::size_t i = 1; i < claims.size(); ++i)
            if (claims[i].set != claims[0].set || claims[i].gcr != claims[0].gcr)
                throw NumericError("internal: family rules disagree on the typical set");
        report.gcr = claims[0].gcr;
        report.typical_set = claims[0].set;
        report.max_lower = claims[0].set.second;
        report.max_upper = claims[0].set.second;
        for (auto& c : claims) report.provenance.push_back({c.rule, c.note});
        return report;
    }

    // Bounds only.
    int lower = n > 0 ? 1 : 0;
    report.provenance.push_back({"rank-positivity", "some entry is specified, so every completion has rank >= 1"});
    try {
        const int bip = max_bipartite_induced_size(complement(g), limits.bipartite_induced_limit);
        if (bip > lower) {
            lower = bip;
            report.provenance.push_back(
                {"bipartite-complement-lower-bound",
                 "maximum typical rank >= largest bipartite induced subgraph of the complement"});
        }
    } catch (const SizeLimitError&) {
        report.notes.push_back("bipartite-induced search limit exceeded; lower bound degraded");
    }
    int upper = n;
    report.provenance.push_back({"matrix-size-cap", "rank cannot exceed the matrix size"});
    if (g.is_looped()) {
        try {
            const int mis = max_independent_set_size(g, limits.independent_set_limit);
            if (2 + n - mis < upper) {
                upper = 2 + n - mis;
                report.provenance.push_back(
                    {"independent-set-upper-bound",
                     "looped pattern: maximum typical rank <= 2 + n - (max independent set)"});
            }
        } catch (const SizeLimitError&) {
            report.notes.push_back("independent-set search limit exceeded; upper bound degraded");
        }
    }
    report.max_lower = lower;
    report.max_upper = upper;
    if (lower == upper)
        report.notes.push_back("maximum typical rank determined exactly by the bounds");
    return report;
}

/// Typical set of the same pattern with one looped suspension vertex added:
/// every typical rank goes up by one.
inline TypicalRankReport suspension_shift(const TypicalRankReport& base) {
    if (!base.typical_set || !base.gcr)
        throw InputError("suspension shift needs an exact typical set");
    TypicalRankReport out = base;
    out.n = base.n + 1;
    out.gcr = *base.gcr + 1;
    out.typical_set = {base.typical_set->first + 1, base.typical_set->second + 1};
    if (out.max_lower) ++*out.max_lower;
    if (out.max_upper) ++*out.max_upper;
    out.provenance.push_back({"suspension-shift", "looped suspension vertex raises every typical rank by 1"});
    return out;
}

} // namespace symrank
