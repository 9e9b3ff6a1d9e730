#ifndef SPANLAB_GRAPH_HPP
#define SPANLAB_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace spanlab {

struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Edge = std::pair<int, int>; // normalized u < v

inline Edge mk_edge(int u, int v) {
    if (u == v) throw ParameterError("self-loop");
    return u < v ? Edge{u, v} : Edge{v, u};
}

// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges, int regular_tag = -1)
        : n_(n), edges_(std::move(edges)), d_(regular_tag) {
        if (n_ < 0) throw ParameterError("negative vertex count");
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        words_ = (n_ + 63) / 64;
        adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
        deg_.assign(n_, 0);
        for (auto [u, v] : edges_) {
            if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v)
                throw ParameterError("edge endpoint out of range");
            set_bit(u, v);
            set_bit(v, u);
            ++deg_[u];
            ++deg_[v];
        }
        if (d_ >= 0) {
            for (int v = 0; v < n_; ++v)
                if (deg_[v] != d_)
                    throw ParameterError("graph tagged " + std::to_string(d_) +
                                         "-regular but vertex " + std::to_string(v) +
                                         " has degree " + std::to_string(deg_[v]));
        }
    }

    int n() const { return n_; }
    int regular_degree() const { return d_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    int degree(int v) const { return deg_[v]; }

    bool adjacent(int u, int v) const {
        return (adj_[static_cast<std::size_t>(u) * words_ + v / 64] >>
                (v % 64)) & 1ULL;
    }
    bool has_edge(const Edge& e) const { return adjacent(e.first, e.second); }

    // single-word adjacency row, valid when n <= 64
    std::uint64_t adj64(int v) const { return adj_[static_cast<std::size_t>(v) * words_]; }

    const std::uint64_t* adj_row(int v) const {
        return adj_.data() + static_cast<std::size_t>(v) * words_;
    }
    int words() const { return words_; }

    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        out.reserve(deg_[v]);
        const std::uint64_t* row = adj_row(v);
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                out.push_back(w * 64 + b);
                bits &= bits - 1;
            }
        }
        return out;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    void set_bit(int u, int v) {
        adj_[static_cast<std::size_t>(u) * words_ + v / 64] |= 1ULL << (v % 64);
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    int d_ = -1;
    int words_ = 0;
    std::vector<std::uint64_t> adj_;
    std::vector<int> deg_;
};

inline Graph graph_union(const Graph& a, const Graph& b) {
    if (a.n() != b.n()) throw ParameterError("union of graphs with different n");
    std::vector<Edge> es = a.edges();
    es.insert(es.end(), b.edges().begin(), b.edges().end());
    return Graph(a.n(), std::move(es));
}

inline Graph graph_intersection(const Graph& a, const Graph& b) {
    if (a.n() != b.n()) throw ParameterError("intersection of graphs with different n");
    std::vector<Edge> es;
    for (const auto& e : a.edges())
        if (b.has_edge(e)) es.push_back(e);
    return Graph(a.n(), std::move(es));
}

// ---------------------------------------------------------------- families

enum class FamilyKind {
    power_of_cycle,
    toroidal_grid,
    square_lattice_completed,
    triangular_lattice_completed,
    overlapping_four_cycles,
    random_regular,
};

struct FamilySpec {
    FamilyKind kind = FamilyKind::power_of_cycle;
    int power_k = 2;           // power_of_cycle
    int m_rows = 3;            // toroidal_grid
    int degree = 4;            // random_regular
    std::uint64_t seed = 0;    // random_regular

    static FamilySpec power_of_cycle(int k) {
        FamilySpec s;
        s.kind = FamilyKind::power_of_cycle;
        s.power_k = k;
        return s;
    }
    static FamilySpec square_of_cycle() { return power_of_cycle(2); }
    static FamilySpec toroidal_grid(int m) {
        FamilySpec s;
        s.kind = FamilyKind::toroidal_grid;
        s.m_rows = m;
        return s;
    }
    static FamilySpec square_lattice() {
        FamilySpec s;
        s.kind = FamilyKind::square_lattice_completed;
        return s;
    }
    static FamilySpec triangular_lattice() {
        FamilySpec s;
        s.kind = FamilyKind::triangular_lattice_completed;
        return s;
    }
    static FamilySpec overlapping_four_cycles() {
        FamilySpec s;
        s.kind = FamilyKind::overlapping_four_cycles;
        return s;
    }
    static FamilySpec random_regular(int d, std::uint64_t seed) {
        FamilySpec s;
        s.kind = FamilyKind::random_regular;
        s.degree = d;
        s.seed = seed;
        return s;
    }

    int implied_degree() const {
        switch (kind) {
            case FamilyKind::power_of_cycle: return 2 * power_k;
            case FamilyKind::toroidal_grid: return 4;
            case FamilyKind::square_lattice_completed: return 4;
            case FamilyKind::triangular_lattice_completed: return 6;
            case FamilyKind::overlapping_four_cycles: return 3;
            case FamilyKind::random_regular: return degree;
        }
        return -1;
    }

    std::string name() const {
        switch (kind) {
            case FamilyKind::power_of_cycle:
                return "power_of_cycle(" + std::to_string(power_k) + ")";
            case FamilyKind::toroidal_grid:
                return "toroidal_grid(" + std::to_string(m_rows) + ")";
            case FamilyKind::square_lattice_completed: return "square_lattice_completed";
            case FamilyKind::triangular_lattice_completed:
                return "triangular_lattice_completed";
            case FamilyKind::overlapping_four_cycles: return "overlapping_four_cycles";
            case FamilyKind::random_regular:
                return "random_regular(" + std::to_string(degree) + "," +
                       std::to_string(seed) + ")";
        }
        return "?";
    }
};

Graph random_regular_graph(int n, int d, std::uint64_t seed);

// Largest divisor of n that is <= sqrt(n).
inline int near_square_rows(int n) {
    int best = 1;
    for (int r = 1; static_cast<long long>(r) * r <= n; ++r)
        if (n % r == 0) best = r;
    return best;
}

inline Graph build_family(const FamilySpec& spec, int n) {
    std::vector<Edge> es;
    switch (spec.kind) {
        case FamilyKind::power_of_cycle: {
            int k = spec.power_k;
            if (k < 1) throw ParameterError("power_of_cycle requires k >= 1");
            if (n < 2 * k + 1)
                throw ParameterError("power_of_cycle(" + std::to_string(k) +
                                     ") requires n >= 2k+1 = " + std::to_string(2 * k + 1));
            for (int i = 0; i < n; ++i)
                for (int j = 1; j <= k; ++j) es.push_back(mk_edge(i, (i + j) % n));
            return Graph(n, std::move(es), 2 * k);
        }
        case FamilyKind::toroidal_grid: {
            int m = spec.m_rows;
            if (m < 3) throw ParameterError("toroidal_grid requires m_rows >= 3");
            if (n % m != 0) throw ParameterError("toroidal_grid requires m_rows | n");
            int c = n / m;
            if (c < 3) throw ParameterError("toroidal_grid requires n/m_rows >= 3");
            auto id = [c](int i, int j) { return i * c + j; };
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < c; ++j) {
                    es.push_back(mk_edge(id(i, j), id((i + 1) % m, j)));
                    es.push_back(mk_edge(id(i, j), id(i, (j + 1) % c)));
                }
            return Graph(n, std::move(es), 4);
        }
        case FamilyKind::square_lattice_completed: {
            int r = near_square_rows(n);
            if (r < 3 || n / r < 3)
                throw ParameterError(
                    "square_lattice_completed requires a divisor pair r,c >= 3 (n=" +
                    std::to_string(n) + " has none)");
            // grid edges plus deterministic wrap completion on both axes
            return build_family(FamilySpec::toroidal_grid(r), n);
        }
        case FamilyKind::triangular_lattice_completed: {
            int r = near_square_rows(n);
            if (r < 3 || n / r < 3)
                throw ParameterError(
                    "triangular_lattice_completed requires a divisor pair r,c >= 3 (n=" +
                    std::to_string(n) + " has none)");
            int c = n / r;
            auto id = [c](int i, int j) { return i * c + j; };
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) {
                    es.push_back(mk_edge(id(i, j), id((i + 1) % r, j)));
                    es.push_back(mk_edge(id(i, j), id(i, (j + 1) % c)));
                    es.push_back(mk_edge(id(i, j), id((i + 1) % r, (j + 1) % c)));
                }
            return Graph(n, std::move(es), 6);
        }
        case FamilyKind::overlapping_four_cycles: {
            if (n % 2 != 0) throw ParameterError("overlapping_four_cycles requires even n");
            if (n < 6) throw ParameterError("overlapping_four_cycles requires n >= 6");
            for (int i = 0; i < n / 2; ++i) {
                int a = 2 * i, b = 2 * i + 1;
                es.push_back(mk_edge(a, b));                    // shared edge of two C4s
                es.push_back(mk_edge(a, (a + 2) % n));
                es.push_back(mk_edge(b, (b + 2) % n));
            }
            return Graph(n, std::move(es), 3);
        }
        case FamilyKind::random_regular:
            return random_regular_graph(n, spec.degree, spec.seed);
    }
    throw ParameterError("unknown family kind");
}

// Configuration model with rejection of loops and multi-edges.
inline Graph random_regular_graph(int n, int d, std::uint64_t seed) {
    if (d < 0 || d >= n) throw ParameterError("random_regular requires 0 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw ParameterError("random_regular requires dn even");
    Rng rng(derive_seed(seed, "config-model"));
    const int attempts_cap = 1000;
    std::vector<int> stubs(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
        for (int j = 0; j < d; ++j) stubs[static_cast<std::size_t>(v) * d + j] = v;
    for (int attempt = 0; attempt < attempts_cap; ++attempt) {
        rng.shuffle(stubs);
        std::vector<Edge> es;
        es.reserve(stubs.size() / 2);
        bool ok = true;
        for (std::size_t i = 0; ok && i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) ok = false;
            else es.push_back(mk_edge(u, v));
        }
        if (!ok) continue;
        std::sort(es.begin(), es.end());
        if (std::adjacent_find(es.begin(), es.end()) != es.end()) continue;
        return Graph(n, std::move(es), d);
    }
    throw BudgetError("configuration model: rejection budget exhausted");
}

inline Graph relabel(const Graph& g, const std::vector<int>& pi) {
    if (static_cast<int>(pi.size()) != g.n())
        throw ParameterError("relabel: permutation length != n");
    std::vector<char> seen(g.n(), 0);
    for (int v : pi) {
        if (v < 0 || v >= g.n() || seen[v])
            throw ParameterError("relabel: not a bijection on [n]");
        seen[v] = 1;
    }
    std::vector<Edge> es;
    es.reserve(g.edge_count());
    for (auto [u, v] : g.edges()) es.push_back(mk_edge(pi[u], pi[v]));
    return Graph(g.n(), std::move(es), g.regular_degree());
}

// ------------------------------------------------------- automorphisms

// Exact |Aut(F)| by backtracking over images with adjacency consistency.
inline std::int64_t automorphism_count_brute(const Graph& g) {
    int n = g.n();
    std::vector<int> image(n, -1);
    std::vector<char> used(n, 0);
    std::int64_t count = 0;
    // order vertices by decreasing degree for earlier pruning
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    auto rec = [&](auto&& self, int idx) -> void {
        if (idx == n) {
            ++count;
            return;
        }
        int v = order[idx];
        for (int w = 0; w < n; ++w) {
            if (used[w] || g.degree(w) != g.degree(v)) continue;
            bool ok = true;
            for (int j = 0; j < idx && ok; ++j) {
                int u = order[j];
                if (g.adjacent(v, u) != g.adjacent(w, image[u])) ok = false;
            }
            if (!ok) continue;
            image[v] = w;
            used[w] = 1;
            self(self, idx + 1);
            used[w] = 0;
            image[v] = -1;
        }
    };
    rec(rec, 0);
    return count;
}

// Brute force up to `limit` vertices; above that a known-family shortcut
// answers when a hint is supplied. Shortcuts are validated against brute
// force in the test suite at the largest brute-forcible sizes.
inline std::int64_t automorphism_count(const Graph& g, int limit = 12,
                                       const std::optional<FamilySpec>& hint = {}) {
    if (g.n() <= limit) return automorphism_count_brute(g);
    if (hint) {
        const FamilySpec& s = *hint;
        int n = g.n();
        switch (s.kind) {
            case FamilyKind::power_of_cycle:
                if (n >= 2 * s.power_k + 3) return 2LL * n; // dihedral
                break;
            case FamilyKind::toroidal_grid: {
                // dihedral x dihedral, doubled by the axis swap when square;
                // C4 x C4 has extra symmetries and is left to brute force
                int m = s.m_rows, c = n / m;
                if (m == 4 && c == 4) break;
                std::int64_t aut = static_cast<std::int64_t>(2 * m) * (2 * c);
                if (m == c) aut *= 2;
                return aut;
            }
            default: break;
        }
    }
    throw BudgetError("automorphism_count: n exceeds brute-force limit and no shortcut");
}

// ------------------------------------------------------- edge-list I/O

inline void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.n() << ' ' << g.regular_degree() << '\n';
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& is) {
    std::string line;
    int n = -1, d = -1;
    std::vector<Edge> es;
    bool header = false;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        if (!header) {
            if (ls >> n >> d) header = true;
            else {
                std::istringstream probe(line);
                std::string tok;
                if (probe >> tok) throw ParameterError("edge list: bad header line");
            }
            continue;
        }
        int u, v;
        if (ls >> u >> v) {
            if (!(u < v)) throw ParameterError("edge list: edges must satisfy u < v");
            es.push_back({u, v});
        } else {
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok) throw ParameterError("edge list: bad edge line");
        }
    }
    if (!header) throw ParameterError("edge list: missing header");
    if (!std::is_sorted(es.begin(), es.end()))
        throw ParameterError("edge list: edges must be sorted lexicographically");
    return Graph(n, std::move(es), d);
}

// ------------------------------------------------------- misc utilities

inline std::vector<int> component_ids(const Graph& g) {
    std::vector<int> comp(g.n(), -1);
    int c = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] != -1 || g.degree(s) == 0) continue;
        comp[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v))
                if (comp[w] == -1) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    return comp;
}

// (#edges, #non-isolated vertices, #components excluding isolated vertices)
struct LXC {
    std::int64_t l = 0, x = 0, c = 0;
    bool operator==(const LXC&) const = default;
};

inline LXC lxc_of(const Graph& g) {
    LXC r;
    r.l = static_cast<std::int64_t>(g.edge_count());
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) > 0) ++r.x;
    auto comp = component_ids(g);
    int mx = -1;
    for (int v = 0; v < g.n(); ++v) mx = std::max(mx, comp[v]);
    r.c = mx + 1;
    return r;
}

} // namespace spanlab

#endif
