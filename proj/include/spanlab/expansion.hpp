#ifndef SPANLAB_EXPANSION_HPP
#define SPANLAB_EXPANSION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace spanlab {

// Minimal feasible boundary level: d+1 for odd d, d+2 for even d.
inline int delta_of(int d) { return (d % 2 == 0) ? d + 2 : d + 1; }

// Edge boundary of the induced subgraph F[S]: host edges leaving S.
inline std::int64_t edge_boundary(const Graph& f, const std::vector<int>& s) {
    std::vector<char> in(f.n(), 0);
    for (int v : s) in[v] = 1;
    std::int64_t b = 0;
    for (int v : s)
        for (int w : f.neighbors(v))
            if (!in[w]) ++b;
    return b;
}

inline std::int64_t edge_boundary_mask(const Graph& f, std::uint64_t mask) {
    std::int64_t b = 0;
    std::uint64_t rest = mask;
    while (rest) {
        int v = __builtin_ctzll(rest);
        rest &= rest - 1;
        b += __builtin_popcountll(f.adj64(v) & ~mask);
    }
    return b;
}

inline std::vector<int> mask_to_vec(std::uint64_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(__builtin_ctzll(mask));
        mask &= mask - 1;
    }
    return out;
}

struct BoundaryReport {
    std::vector<int> subject;
    std::int64_t edge_boundary_size = 0;
    std::vector<int> vertex_boundary;
    bool is_closed = false;
};

inline BoundaryReport boundary_report(const Graph& f, const std::vector<int>& s) {
    BoundaryReport r;
    r.subject = s;
    std::sort(r.subject.begin(), r.subject.end());
    std::vector<char> in(f.n(), 0);
    for (int v : s) in[v] = 1;
    for (int v : r.subject) {
        int inside = 0;
        for (int w : f.neighbors(v))
            if (in[w]) ++inside;
        r.edge_boundary_size += f.degree(v) - inside;
        if (inside < f.degree(v)) r.vertex_boundary.push_back(v);
    }
    int d = f.regular_degree();
    r.is_closed = d > 0 && r.edge_boundary_size == delta_of(d);
    return r;
}

// --------------------------------------------------- connected enumeration

// Visit every connected induced subgraph on <= v_max vertices exactly once
// (ESU-style growth, n <= 64). The visitor returns false to stop.
// Returns false when the node budget ran out.
inline bool for_each_connected_induced(
    const Graph& f, int v_max, std::int64_t budget,
    const std::function<bool(std::uint64_t mask, int size)>& visit,
    const std::function<bool(std::uint64_t mask, int size)>& prune = {}) {
    if (f.n() > 64) throw BudgetError("connected enumeration needs n <= 64");
    int n = f.n();
    std::int64_t visited = 0;
    bool ok = true;
    // extension discipline: candidates must exceed the root
    std::function<bool(std::uint64_t, std::uint64_t, int, int)> rec =
        [&](std::uint64_t mask, std::uint64_t ext, int size, int root) -> bool {
        while (ext) {
            int u = __builtin_ctzll(ext);
            ext &= ext - 1;
            std::uint64_t nmask = mask | (1ULL << u);
            if (++visited > budget) {
                ok = false;
                return false;
            }
            if (!visit(nmask, size + 1)) return false;
            if (size + 1 < v_max && (!prune || !prune(nmask, size + 1))) {
                std::uint64_t next_ext =
                    ext | (f.adj64(u) & ~nmask & ~((1ULL << (root + 1)) - 1));
                // drop vertices already adjacent to previous mask handled via ext
                std::uint64_t fresh = f.adj64(u) & ~nmask;
                // remove those adjacent to old mask (they were candidates before u)
                std::uint64_t old_nbhd = 0;
                std::uint64_t mrest = mask;
                while (mrest) {
                    int v = __builtin_ctzll(mrest);
                    mrest &= mrest - 1;
                    old_nbhd |= f.adj64(v);
                }
                fresh &= ~old_nbhd;
                fresh &= ~((1ULL << (root + 1)) - 1);
                next_ext = ext | fresh;
                if (!rec(nmask, next_ext, size + 1, root)) return false;
            }
        }
        return true;
    };
    for (int v = 0; v < n && ok; ++v) {
        std::uint64_t mask = 1ULL << v;
        if (++visited > budget) return false;
        if (!visit(mask, 1)) return true;
        if (v_max >= 2 && (!prune || !prune(mask, 1))) {
            std::uint64_t ext = f.adj64(v) & ~((1ULL << (v + 1)) - 1);
            if (!rec(mask, ext, 1, v)) return true;
        }
    }
    return ok;
}

// All closed subgraphs (connected induced, edge boundary exactly Delta)
// on 3..v_max vertices, as sorted vertex masks.
inline std::vector<std::uint64_t> enumerate_closed_subgraphs(
    const Graph& f, int v_max, std::int64_t budget = 10'000'000) {
    int d = f.regular_degree();
    if (d <= 0) throw ParameterError("closed subgraphs need a d-regular host");
    if (v_max < 3 || v_max > f.n() - 3)
        throw ParameterError("v_max must lie in [3, n-3]");
    int Delta = delta_of(d);
    std::vector<std::uint64_t> out;
    bool complete = for_each_connected_induced(
        f, v_max, budget,
        [&](std::uint64_t mask, int size) {
            if (size >= 3 && edge_boundary_mask(f, mask) == Delta) out.push_back(mask);
            return true;
        },
        [&](std::uint64_t mask, int size) {
            // best case: each further vertex lowers the boundary by at most d
            return edge_boundary_mask(f, mask) -
                       static_cast<std::int64_t>(v_max - size) * d > Delta;
        });
    if (!complete) throw BudgetError("closed-subgraph enumeration budget exhausted");
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------------- verdicts

enum class SparsityRule { min_d_plus_1, riordan_2d, thm51_growth };

struct ConditionVerdict {
    std::string condition;
    bool holds = true;
    bool vacuous = false;
    bool inconclusive = false;
    int reached_v = 0;
    std::vector<int> witness;        // minimal violating set when !holds
    std::int64_t witness_boundary = -1;
    std::int64_t min_boundary_seen = -1;
    std::int64_t sets_visited = 0;
};

inline std::int64_t sparsity_bound(SparsityRule rule, int d, int v, int n, double w,
                                   double delta) {
    switch (rule) {
        case SparsityRule::min_d_plus_1: return d + 1;
        case SparsityRule::riordan_2d: return 2 * d;
        case SparsityRule::thm51_growth: {
            double ln_n = std::log(static_cast<double>(n));
            bool gate = v >= ln_n / w && v <= std::pow(n, 1.0 - delta);
            return d + 1 + (gate ? static_cast<std::int64_t>(std::floor(v * w / ln_n)) : 0);
        }
    }
    return d + 1;
}

// Violations are sought over connected induced subgraphs only; a
// disconnected violator always contains a connected component violating
// the same bound. Witness is minimal by size, then lexicographic.
inline ConditionVerdict check_local_sparsity(const Graph& f, SparsityRule rule,
                                             int v_lo, int v_hi,
                                             std::int64_t budget = 10'000'000,
                                             double w = 1.0, double delta = 0.25) {
    int d = f.regular_degree();
    if (d <= 0) throw ParameterError("local sparsity needs a d-regular host");
    ConditionVerdict verdict;
    switch (rule) {
        case SparsityRule::min_d_plus_1: verdict.condition = "local_sparsity_d_plus_1"; break;
        case SparsityRule::riordan_2d: verdict.condition = "riordan_2d"; break;
        case SparsityRule::thm51_growth: verdict.condition = "thm51_growth"; break;
    }
    v_lo = std::max(v_lo, 3);
    v_hi = std::min(v_hi, f.n() - 3);
    if (v_lo > v_hi) {
        verdict.vacuous = true;
        verdict.reached_v = v_hi;
        return verdict;
    }
    std::int64_t remaining = budget;
    for (int v = v_lo; v <= v_hi; ++v) {
        std::int64_t bound = sparsity_bound(rule, d, v, f.n(), w, delta);
        std::uint64_t best_witness = ~0ULL;
        std::int64_t best_boundary = -1;
        std::int64_t used = 0;
        bool complete = for_each_connected_induced(
            f, v, remaining,
            [&](std::uint64_t mask, int size) {
                ++used;
                if (size != v) return true;
                std::int64_t b = edge_boundary_mask(f, mask);
                if (verdict.min_boundary_seen < 0 || b < verdict.min_boundary_seen)
                    verdict.min_boundary_seen = b;
                if (b < bound && mask < best_witness) {
                    best_witness = mask;
                    best_boundary = b;
                }
                return true;
            });
        verdict.sets_visited += used;
        remaining -= used;
        if (!complete) {
            verdict.inconclusive = true;
            verdict.reached_v = v - 1;
            return verdict;
        }
        verdict.reached_v = v;
        if (best_witness != ~0ULL) {
            verdict.holds = false;
            verdict.witness = mask_to_vec(best_witness);
            verdict.witness_boundary = best_boundary;
            return verdict;
        }
    }
    return verdict;
}

// ------------------------------------------------- closed-subgraph claims

struct ClosedClaimsReport {
    bool min_degree_ok = true;       // min degree >= d/2 in every closed subgraph
    bool pair_count_ok = true;       // <= 2 closed v-sets containing x, not y
    bool prefix_count_ok = true;     // prefix counts <= 2dk/3
    int max_pair_count = 0;
    std::int64_t closed_count = 0;
    std::vector<int> violation;      // first offending vertex set, if any
    std::string violation_kind;
};

inline ClosedClaimsReport verify_closed_claims(const Graph& f, int v_max,
                                               std::int64_t budget = 10'000'000) {
    int d = f.regular_degree();
    ClosedClaimsReport rep;
    auto closed = enumerate_closed_subgraphs(f, v_max, budget);
    rep.closed_count = static_cast<std::int64_t>(closed.size());

    for (std::uint64_t mask : closed) {
        auto vs = mask_to_vec(mask);
        for (int v : vs) {
            int deg_in = __builtin_popcountll(f.adj64(v) & mask);
            if (2 * deg_in < d) {
                rep.min_degree_ok = false;
                rep.violation = vs;
                rep.violation_kind = "min_degree";
                return rep;
            }
        }
    }

    // pair counts, bucketed by (x, y, v)
    std::vector<std::vector<std::vector<int>>> cnt(
        f.n(), std::vector<std::vector<int>>(f.n(), std::vector<int>(v_max + 1, 0)));
    for (std::uint64_t mask : closed) {
        int v = __builtin_popcountll(mask);
        std::uint64_t rest = mask;
        while (rest) {
            int x = __builtin_ctzll(rest);
            rest &= rest - 1;
            std::uint64_t outs = f.adj64(x) & ~mask;
            while (outs) {
                int y = __builtin_ctzll(outs);
                outs &= outs - 1;
                int c = ++cnt[x][y][v];
                rep.max_pair_count = std::max(rep.max_pair_count, c);
                if (c > 2) {
                    rep.pair_count_ok = false;
                    rep.violation = mask_to_vec(mask);
                    rep.violation_kind = "pair_count";
                    return rep;
                }
            }
        }
    }

    // prefix counts: closed subgraphs with all vertices < k, per size v
    for (int k = 3; k <= f.n(); ++k) {
        std::uint64_t prefix = (k == 64) ? ~0ULL : ((1ULL << k) - 1);
        std::vector<std::int64_t> by_v(v_max + 1, 0);
        for (std::uint64_t mask : closed)
            if ((mask & ~prefix) == 0) ++by_v[__builtin_popcountll(mask)];
        for (int v = 3; v <= v_max; ++v)
            if (3 * by_v[v] > 2LL * d * k) {
                rep.prefix_count_ok = false;
                rep.violation_kind = "prefix_count_k" + std::to_string(k) + "_v" +
                                     std::to_string(v);
                return rep;
            }
    }
    return rep;
}

// ----------------------------------------------- named condition verdicts

struct ConditionParams {
    double eps = 1.0;   // size range scale for the log-window condition
    double delta = 0.25;
    double w = 1.0;
    double gamma = 0.5;
    double bigC = 1.0;
    std::int64_t bigD = 4;
};

// automorphisms of g restricted to maps fixing `pinned` pointwise
inline std::int64_t automorphisms_fixing(const Graph& g, const std::vector<int>& pinned) {
    std::vector<char> pin(g.n(), 0);
    for (int v : pinned) pin[v] = 1;
    int n = g.n();
    std::vector<int> image(n, -1);
    std::vector<char> used(n, 0);
    for (int v = 0; v < n; ++v)
        if (pin[v]) {
            image[v] = v;
            used[v] = 1;
        }
    std::vector<int> free_vs;
    for (int v = 0; v < n; ++v)
        if (!pin[v]) free_vs.push_back(v);
    std::int64_t count = 0;
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == free_vs.size()) {
            ++count;
            return;
        }
        int v = free_vs[idx];
        for (int w = 0; w < n; ++w) {
            if (used[w] || g.degree(w) != g.degree(v)) continue;
            bool ok = true;
            for (int u = 0; u < n && ok; ++u)
                if (image[u] != -1 && g.adjacent(v, u) != g.adjacent(w, image[u]))
                    ok = false;
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

// One verdict per named boundary-growth condition.
inline std::vector<ConditionVerdict> classify_conditions(const Graph& f,
                                                         const ConditionParams& p,
                                                         std::int64_t budget = 10'000'000) {
    int d = f.regular_degree();
    if (d <= 0) throw ParameterError("classify_conditions needs a d-regular host");
    int n = f.n();
    std::vector<ConditionVerdict> out;

    {
        int hi = static_cast<int>(std::floor(p.eps * std::log(static_cast<double>(n))));
        ConditionVerdict v = check_local_sparsity(f, SparsityRule::min_d_plus_1, 3,
                                                  std::min(hi, n - 3), budget);
        v.condition = "thm12_local";
        out.push_back(std::move(v));
    }
    {
        ConditionVerdict v = check_local_sparsity(f, SparsityRule::thm51_growth, 3, n - 3,
                                                  budget, p.w, p.delta);
        v.condition = "thm13_cond1";
        out.push_back(std::move(v));
    }
    {
        // boundary-fixing automorphism cap over small connected induced subgraphs
        ConditionVerdict v;
        v.condition = "thm13_cond2a";
        int cap = std::min(n - 1, 10);
        double lmax = p.bigC * std::pow(n, 2.0 / d);
        bool complete = for_each_connected_induced(
            f, cap, budget, [&](std::uint64_t mask, int size) {
                if (size < 3) return true;
                auto vs = mask_to_vec(mask);
                // induced subgraph on vs
                std::vector<Edge> es;
                std::vector<int> local(f.n(), -1);
                for (std::size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<int>(i);
                for (std::size_t i = 0; i < vs.size(); ++i)
                    for (std::size_t j = i + 1; j < vs.size(); ++j)
                        if (f.adjacent(vs[i], vs[j]))
                            es.push_back({static_cast<int>(i), static_cast<int>(j)});
                if (static_cast<double>(es.size()) > lmax) return true;
                Graph sub(static_cast<int>(vs.size()), es);
                std::vector<int> bnd;
                for (std::size_t i = 0; i < vs.size(); ++i)
                    if (sub.degree(static_cast<int>(i)) < d) bnd.push_back(static_cast<int>(i));
                if (static_cast<double>(bnd.size()) > p.gamma * static_cast<double>(vs.size()))
                    return true;
                if (automorphisms_fixing(sub, bnd) > p.bigD) {
                    v.holds = false;
                    v.witness = vs;
                    return false;
                }
                return true;
            });
        v.reached_v = cap;
        v.inconclusive = !complete || cap < n - 3;
        out.push_back(std::move(v));
    }
    {
        ConditionVerdict v = check_local_sparsity(f, SparsityRule::riordan_2d, 3, n - 3, budget);
        v.condition = "riordan_2d";
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace spanlab

#endif
