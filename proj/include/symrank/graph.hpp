#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symrank/errors.hpp"

namespace symrank {

using Edge = std::pair<int, int>; // normalized i <= j; i == j is a loop

inline Edge make_edge(int i, int j) {
    if (i > j) std::swap(i, j);
    return {i, j};
}

/// Undirected graph on vertices 1..n, loops allowed, no multi-edges.
/// Encodes which entries of an n x n symmetric matrix are specified
/// (a loop marks a diagonal entry).
class SemisimpleGraph {
public:
    SemisimpleGraph() = default;

    explicit SemisimpleGraph(int n) : n_(n) {
        if (n < 0) throw InputError("vertex count must be nonnegative");
    }

    SemisimpleGraph(int n, const std::vector<Edge>& edges) : SemisimpleGraph(n) {
        for (const auto& [i, j] : edges) add_edge(i, j);
    }

    /// K_n with a loop at every vertex: the fully specified pattern.
    static SemisimpleGraph complete_looped(int n) {
        SemisimpleGraph g(n);
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) g.add_edge(i, j);
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::set<Edge>& edges() const { return edges_; }

    void add_edge(int i, int j) {
        check_vertex(i);
        check_vertex(j);
        const Edge e = make_edge(i, j);
        if (!edges_.insert(e).second)
            throw InputError("duplicate edge " + std::to_string(e.first) + " " +
                             std::to_string(e.second));
    }

    bool has_edge(int i, int j) const { return edges_.count(make_edge(i, j)) > 0; }
    bool has_loop(int v) const { return has_edge(v, v); }

    bool is_looped() const {
        for (int v = 1; v <= n_; ++v)
            if (!has_loop(v)) return false;
        return true;
    }

    int loop_count() const {
        int c = 0;
        for (int v = 1; v <= n_; ++v) c += has_loop(v) ? 1 : 0;
        return c;
    }

    /// Neighbors through non-loop edges.
    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (const auto& [i, j] : edges_) {
            if (i == j) continue;
            if (i == v) out.push_back(j);
            else if (j == v) out.push_back(i);
        }
        return out;
    }

    bool operator==(const SemisimpleGraph& other) const = default;

private:
    void check_vertex(int v) const {
        if (v < 1 || v > n_)
            throw InputError("vertex " + std::to_string(v) + " out of range 1.." +
                             std::to_string(n_));
    }

    int n_ = 0;
    std::set<Edge> edges_;
};

/// Edges of K_n-with-all-loops minus the edges of g.
inline SemisimpleGraph complement(const SemisimpleGraph& g) {
    const int n = g.vertex_count();
    SemisimpleGraph c(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            if (!g.has_edge(i, j)) c.add_edge(i, j);
    return c;
}

/// Relabel h's vertices by +g.n and take the union.
inline SemisimpleGraph disjoint_union(const SemisimpleGraph& g, const SemisimpleGraph& h) {
    const int n = g.vertex_count();
    SemisimpleGraph u(n + h.vertex_count());
    for (const auto& [i, j] : g.edges()) u.add_edge(i, j);
    for (const auto& [i, j] : h.edges()) u.add_edge(i + n, j + n);
    return u;
}

/// New looped vertex n+1 adjacent to every existing vertex.
inline SemisimpleGraph add_looped_suspension_vertex(const SemisimpleGraph& g) {
    const int n = g.vertex_count();
    SemisimpleGraph s(n + 1);
    for (const auto& [i, j] : g.edges()) s.add_edge(i, j);
    for (int v = 1; v <= n; ++v) s.add_edge(v, n + 1);
    s.add_edge(n + 1, n + 1);
    return s;
}

struct BipartiteCheck {
    bool bipartite = false;
    // On success: the two color classes (sorted). Isolated vertices land in the first.
    std::vector<int> class_a;
    std::vector<int> class_b;
    // On failure: a closed walk of odd length; consecutive vertices adjacent,
    // last adjacent to first. A single vertex means a loop.
    std::vector<int> odd_closed_walk;
};

/// Proper 2-colorability. Any loop makes the graph non-bipartite.
inline BipartiteCheck is_bipartite(const SemisimpleGraph& g) {
    const int n = g.vertex_count();
    BipartiteCheck result;
    for (int v = 1; v <= n; ++v) {
        if (g.has_loop(v)) {
            result.odd_closed_walk = {v};
            return result;
        }
    }

    std::vector<std::vector<int>> adj(n + 1);
    for (const auto& [i, j] : g.edges()) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<int> color(n + 1, -1), parent(n + 1, 0), depth(n + 1, 0);
    for (int root = 1; root <= n; ++root) {
        if (color[root] != -1) continue;
        color[root] = 0;
        std::vector<int> queue = {root};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const int u = queue[q];
            for (int w : adj[u]) {
                if (color[w] == -1) {
                    color[w] = 1 - color[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if (color[w] == color[u]) {
                    // Same-color edge closes an odd walk through the BFS tree.
                    std::vector<int> pu, pw;
                    int a = u, b = w;
                    while (depth[a] > depth[b]) { pu.push_back(a); a = parent[a]; }
                    while (depth[b] > depth[a]) { pw.push_back(b); b = parent[b]; }
                    while (a != b) {
                        pu.push_back(a);
                        pw.push_back(b);
                        a = parent[a];
                        b = parent[b];
                    }
                    pu.push_back(a);
                    std::reverse(pw.begin(), pw.end());
                    pu.insert(pu.end(), pw.begin(), pw.end());
                    result.odd_closed_walk = std::move(pu);
                    return result;
                }
            }
        }
    }
    result.bipartite = true;
    for (int v = 1; v <= n; ++v)
        (color[v] == 0 ? result.class_a : result.class_b).push_back(v);
    return result;
}

enum class CycleKind { acyclic, unique_odd_cycle, unique_even_cycle, multiple_cycles };

inline const char* to_string(CycleKind k) {
    switch (k) {
        case CycleKind::acyclic: return "acyclic";
        case CycleKind::unique_odd_cycle: return "unique-odd-cycle";
        case CycleKind::unique_even_cycle: return "unique-even-cycle";
        case CycleKind::multiple_cycles: return "multiple-cycles";
    }
    return "?";
}

struct ComponentProfile {
    std::vector<int> vertices;    // sorted
    int edge_count = 0;           // loops included
    CycleKind kind = CycleKind::acyclic;
    std::vector<int> cycle;       // the unique cycle when present ([v] for a loop)
};

struct CycleProfile {
    std::vector<ComponentProfile> components;

    bool gcr_one_shape() const {
        for (const auto& c : components)
            if (c.kind != CycleKind::acyclic && c.kind != CycleKind::unique_odd_cycle)
                return false;
        return true;
    }
    int odd_cycle_count() const {
        int k = 0;
        for (const auto& c : components) k += c.kind == CycleKind::unique_odd_cycle ? 1 : 0;
        return k;
    }
};

namespace detail {

inline std::vector<std::vector<int>> component_lists(const SemisimpleGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(n + 1, -1);
    std::vector<std::vector<int>> adj(n + 1);
    for (const auto& [i, j] : g.edges()) {
        if (i == j) continue;
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<std::vector<int>> out;
    for (int root = 1; root <= n; ++root) {
        if (comp[root] != -1) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        comp[root] = id;
        std::vector<int> stack = {root};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            out[id].push_back(u);
            for (int w : adj[u])
                if (comp[w] == -1) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

// Locates the single cycle of a component known to have exactly one
// (edge count == vertex count). Leaf pruning exposes the 2-core, which is
// the cycle itself; a loop counts as the cycle when present.
inline std::vector<int> locate_unique_cycle(const SemisimpleGraph& g,
                                            const std::vector<int>& vertices) {
    for (int v : vertices)
        if (g.has_loop(v)) return {v};

    std::set<int> alive(vertices.begin(), vertices.end());
    std::map<int, std::vector<int>> adj;
    for (int v : vertices)
        for (int w : g.neighbors(v))
            if (alive.count(w)) adj[v].push_back(w);

    auto degree = [&](int v) {
        int d = 0;
        for (int w : adj[v])
            if (alive.count(w)) ++d;
        return d;
    };
    bool pruned = true;
    while (pruned) {
        pruned = false;
        for (int v : vertices) {
            if (alive.count(v) && degree(v) <= 1) {
                alive.erase(v);
                pruned = true;
            }
        }
    }
    // Walk around the remaining cycle.
    std::vector<int> cycle;
    const int start = *alive.begin();
    int prev = 0, cur = start;
    do {
        cycle.push_back(cur);
        int next = -1;
        for (int w : adj[cur])
            if (alive.count(w) && w != prev) {
                next = w;
                break;
            }
        if (next == -1) next = prev; // 2-cycle cannot happen (no multi-edges)
        prev = cur;
        cur = next;
    } while (cur != start);
    return cycle;
}

} // namespace detail

/// Per-component cycle structure; a loop is an odd cycle of length 1.
inline CycleProfile cycle_profile(const SemisimpleGraph& g) {
    CycleProfile profile;
    for (const auto& verts : detail::component_lists(g)) {
        ComponentProfile cp;
        cp.vertices = verts;
        const std::set<int> in_comp(verts.begin(), verts.end());
        for (const auto& [i, j] : g.edges())
            if (in_comp.count(i) && in_comp.count(j)) ++cp.edge_count;
        const int v = static_cast<int>(verts.size());
        if (cp.edge_count <= v - 1) {
            cp.kind = CycleKind::acyclic;
        } else if (cp.edge_count == v) {
            cp.cycle = detail::locate_unique_cycle(g, verts);
            cp.kind = (cp.cycle.size() % 2 == 1) ? CycleKind::unique_odd_cycle
                                                 : CycleKind::unique_even_cycle;
        } else {
            cp.kind = CycleKind::multiple_cycles;
        }
        profile.components.push_back(std::move(cp));
    }
    return profile;
}

enum class FamilyTag {
    disjoint_union_of_looped_cliques,
    looped_forest,
    looped_star_tree_plus_isolated,
    gcr_one_graph,
    unrecognized,
};

inline const char* to_string(FamilyTag t) {
    switch (t) {
        case FamilyTag::disjoint_union_of_looped_cliques: return "disjoint-union-of-looped-cliques";
        case FamilyTag::looped_forest: return "looped-forest";
        case FamilyTag::looped_star_tree_plus_isolated:
            return "looped-star-tree-plus-looped-isolated-vertices";
        case FamilyTag::gcr_one_graph: return "gcr-one-graph";
        case FamilyTag::unrecognized: return "unrecognized";
    }
    return "?";
}

struct FamilyClassification {
    std::vector<FamilyTag> tags;
    std::vector<int> clique_sizes; // filled for the looped-clique-union tag, descending

    bool has(FamilyTag t) const {
        return std::find(tags.begin(), tags.end(), t) != tags.end();
    }
};

/// All applicable family tags (they may co-apply).
inline FamilyClassification classify_family(const SemisimpleGraph& g) {
    FamilyClassification fc;
    const auto comps = detail::component_lists(g);

    if (g.vertex_count() > 0) {
        bool all_cliques = true;
        std::vector<int> sizes;
        for (const auto& verts : comps) {
            bool clique = true;
            for (std::size_t a = 0; a < verts.size() && clique; ++a)
                for (std::size_t b = a; b < verts.size() && clique; ++b)
                    if (!g.has_edge(verts[a], verts[b])) clique = false;
            if (!clique) {
                all_cliques = false;
                break;
            }
            sizes.push_back(static_cast<int>(verts.size()));
        }
        if (all_cliques) {
            std::sort(sizes.rbegin(), sizes.rend());
            fc.tags.push_back(FamilyTag::disjoint_union_of_looped_cliques);
            fc.clique_sizes = std::move(sizes);
        }
    }

    if (g.is_looped() && g.vertex_count() > 0) {
        bool forest = true;
        for (const auto& verts : comps) {
            int non_loop_edges = 0;
            const std::set<int> in_comp(verts.begin(), verts.end());
            for (const auto& [i, j] : g.edges())
                if (i != j && in_comp.count(i)) ++non_loop_edges;
            if (non_loop_edges > static_cast<int>(verts.size()) - 1) {
                forest = false;
                break;
            }
        }
        if (forest) {
            fc.tags.push_back(FamilyTag::looped_forest);
            // Star tree + isolated vertices: at most one component carries
            // edges, and that component has at most one non-leaf vertex.
            int edged = 0;
            bool star = true;
            for (const auto& verts : comps) {
                if (verts.size() == 1) continue;
                ++edged;
                int non_leaves = 0;
                for (int v : verts)
                    if (g.neighbors(v).size() >= 2) ++non_leaves;
                if (non_leaves > 1) star = false;
            }
            if (edged <= 1 && star)
                fc.tags.push_back(FamilyTag::looped_star_tree_plus_isolated);
        }
    }

    if (g.vertex_count() > 0 && g.edge_count() > 0 && cycle_profile(g).gcr_one_shape())
        fc.tags.push_back(FamilyTag::gcr_one_graph);

    if (fc.tags.empty()) fc.tags.push_back(FamilyTag::unrecognized);
    return fc;
}

/// Exact maximum independent set size. Loops do not block independence;
/// only edges between distinct chosen vertices are forbidden.
inline int max_independent_set_size(const SemisimpleGraph& g, int exact_limit = 24) {
    const int n = g.vertex_count();
    if (n > exact_limit)
        throw SizeLimitError("independent-set search limited to " +
                             std::to_string(exact_limit) + " vertices, got " +
                             std::to_string(n));
    if (n == 0) return 0;

    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& [i, j] : g.edges()) {
        if (i == j) continue;
        adj[i - 1] |= 1u << (j - 1);
        adj[j - 1] |= 1u << (i - 1);
    }
    int best = 0;
    auto recurse = [&](auto&& self, std::uint32_t cand, int size) -> void {
        if (size + std::popcount(cand) <= best) return;
        if (cand == 0) {
            best = std::max(best, size);
            return;
        }
        // Branch on the candidate with the most candidate neighbors.
        int pick = -1, pick_deg = -1;
        for (std::uint32_t m = cand; m;) {
            const int v = std::countr_zero(m);
            m &= m - 1;
            const int d = std::popcount(adj[v] & cand);
            if (d > pick_deg) {
                pick = v;
                pick_deg = d;
            }
        }
        self(self, cand & ~(1u << pick) & ~adj[pick], size + 1);
        self(self, cand & ~(1u << pick), size);
    };
    recurse(recurse, n == 32 ? ~0u : ((1u << n) - 1), 0);
    return best;
}

namespace detail {

inline bool mask_bipartite(const std::vector<std::uint32_t>& adj, std::uint32_t subset) {
    // BFS levels alternate colors; an edge inside one level is an odd cycle
    // (BFS edges never skip a level).
    std::uint32_t colored = 0;
    for (std::uint32_t rest = subset; rest;) {
        const int root = std::countr_zero(rest);
        std::uint32_t frontier = 1u << root;
        colored |= frontier;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t m = frontier; m;) {
                const int v = std::countr_zero(m);
                m &= m - 1;
                next |= adj[v] & subset & ~colored;
                if (adj[v] & frontier) return false;
            }
            colored |= next;
            frontier = next;
        }
        rest = subset & ~colored;
    }
    return true;
}

} // namespace detail

/// Exact maximum size of a vertex subset inducing a bipartite subgraph.
/// A loop on a vertex excludes it outright.
inline int max_bipartite_induced_size(const SemisimpleGraph& g, int exact_limit = 16) {
    const int n = g.vertex_count();
    if (n > exact_limit)
        throw SizeLimitError("bipartite-induced search limited to " +
                             std::to_string(exact_limit) + " vertices, got " +
                             std::to_string(n));
    std::vector<int> eligible;
    for (int v = 1; v <= n; ++v)
        if (!g.has_loop(v)) eligible.push_back(v);
    const int m = static_cast<int>(eligible.size());
    if (m == 0) return 0;

    std::vector<std::uint32_t> adj(m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (g.has_edge(eligible[a], eligible[b])) {
                adj[a] |= 1u << b;
                adj[b] |= 1u << a;
            }
    int best = 0;
    const std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1);
    for (std::uint32_t s = full; s > 0; --s) {
        if (std::popcount(s) <= best) continue;
        if (detail::mask_bipartite(adj, s)) best = std::popcount(s);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Text format: first nonblank line "n <count>", then one "i j" edge per line
// ("i i" is a loop). '#' starts a comment. The writer is canonical, so
// write(read(text)) == canonical form and read(write(g)) == g.
// ---------------------------------------------------------------------------

inline SemisimpleGraph read_graph(std::istream& in) {
    std::string line;
    std::optional<SemisimpleGraph> g;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!g) {
            std::string tag;
            int n = 0;
            if (!(ls >> tag)) continue; // blank
            if (tag != "n" || !(ls >> n))
                throw InputError("graph file line " + std::to_string(lineno) +
                                 ": expected 'n <count>'");
            g.emplace(n);
            continue;
        }
        int i = 0, j = 0;
        if (!(ls >> i)) continue; // blank
        if (!(ls >> j))
            throw InputError("graph file line " + std::to_string(lineno) +
                             ": expected 'i j'");
        std::string extra;
        if (ls >> extra)
            throw InputError("graph file line " + std::to_string(lineno) +
                             ": trailing token '" + extra + "'");
        g->add_edge(i, j);
    }
    if (!g) throw InputError("graph file has no 'n <count>' line");
    return *g;
}

inline SemisimpleGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

inline std::string write_graph(const SemisimpleGraph& g) {
    std::ostringstream out;
    out << "n " << g.vertex_count() << "\n";
    for (const auto& [i, j] : g.edges()) out << i << " " << j << "\n";
    return out.str();
}

} // namespace symrank
