#ifndef SPANLAB_CENSUS_HPP
#define SPANLAB_CENSUS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "combinat.hpp"
#include "expansion.hpp"
#include "graph.hpp"

namespace spanlab {

struct CensusKey {
    int l = 0; // edges
    int x = 0; // non-isolated vertices
    int c = 0; // components (isolated vertices excluded)
    auto operator<=>(const CensusKey&) const = default;
};

// Twice the excess, exact in integers for every parity of d.
inline std::int64_t sigma2_of(int d, const CensusKey& k) {
    return static_cast<std::int64_t>(d) * k.x - 2LL * k.l -
           static_cast<std::int64_t>(delta_of(d)) * k.c;
}

inline void validate_key(int d, const CensusKey& k) {
    if (k.l < 1 || k.c < 1) throw ParameterError("census key needs l >= 1, c >= 1");
    if (k.c > k.l) throw ParameterError("census key violates c <= l");
    if (k.x > k.l + k.c) throw ParameterError("census key violates x <= l + c");
    if (k.x < 2 * k.c) throw ParameterError("census key violates x >= 2c");
    if (2LL * k.l > static_cast<std::int64_t>(d) * k.x)
        throw ParameterError("census key violates 2l <= d*x");
}

inline double excess(int d, const CensusKey& k) {
    validate_key(d, k);
    return 0.5 * static_cast<double>(sigma2_of(d, k));
}

struct CensusEntry {
    std::uint64_t count = 0;
    unsigned __int128 ext_sum = 0;  // sum of extension counts over the bucket
    std::uint64_t ext_max = 0;      // max extension count over the bucket
    bool in_window = true;          // every member has all components on <= n-3 vertices
};

struct CensusTable {
    std::string host;
    int n = 0;
    int d = 0;
    int lmax_requested = 0;
    int lmax_reached = 0;
    bool partial = false;
    bool has_extensions = false;
    std::map<CensusKey, CensusEntry> buckets;

    std::uint64_t total_count() const {
        std::uint64_t t = 0;
        for (const auto& [k, e] : buckets) t += e.count;
        return t;
    }
};

// --------------------------------------------------------- monomorphisms

// Number of edge-preserving injections of the non-isolated part of H into F.
inline std::uint64_t count_monomorphisms(const Graph& h, const Graph& f) {
    std::vector<int> verts;
    for (int v = 0; v < h.n(); ++v)
        if (h.degree(v) > 0) verts.push_back(v);
    if (verts.empty()) return 1;
    // order: components one after another, BFS inside each, so every vertex
    // after the first of its component has a placed neighbour
    std::vector<int> order;
    std::vector<char> seen(h.n(), 0);
    for (int s : verts) {
        if (seen[s]) continue;
        std::vector<int> queue{s};
        seen[s] = 1;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int v = queue[q];
            order.push_back(v);
            for (int w : h.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        }
    }
    int m = static_cast<int>(order.size());
    std::vector<int> image(h.n(), -1);
    std::vector<char> used(f.n(), 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int idx) -> void {
        if (idx == m) {
            ++count;
            return;
        }
        int v = order[idx];
        // candidates: if some neighbour is placed, restrict to its image's nbhd
        int anchor = -1;
        for (int w : h.neighbors(v))
            if (image[w] != -1) {
                anchor = image[w];
                break;
            }
        auto try_vertex = [&](int cand) {
            if (used[cand] || f.degree(cand) < h.degree(v)) return;
            for (int w : h.neighbors(v))
                if (image[w] != -1 && !f.adjacent(cand, image[w])) return;
            image[v] = cand;
            used[cand] = 1;
            self(self, idx + 1);
            used[cand] = 0;
            image[v] = -1;
        };
        if (anchor >= 0)
            for (int cand : f.neighbors(anchor)) try_vertex(cand);
        else
            for (int cand = 0; cand < f.n(); ++cand) try_vertex(cand);
    };
    rec(rec, 0);
    return count;
}

// Exact number of copies F' in the family with H as a subgraph:
// mon(H -> F) * (n - x)! / |Aut(F)|, checked to divide exactly.
inline std::uint64_t count_extensions(const Graph& h, const Graph& f,
                                      std::int64_t aut_f) {
    std::uint64_t mon = count_monomorphisms(h, f);
    int x = 0;
    for (int v = 0; v < h.n(); ++v)
        if (h.degree(v) > 0) ++x;
    unsigned __int128 full = mon;
    for (int i = 2; i <= f.n() - x; ++i) full *= static_cast<unsigned>(i);
    if (full % static_cast<unsigned __int128>(aut_f) != 0)
        throw std::runtime_error("count_extensions: mon * (n-x)! not divisible by |Aut|");
    unsigned __int128 ext = full / static_cast<unsigned __int128>(aut_f);
    if (ext > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::overflow_error("count_extensions overflow");
    return static_cast<std::uint64_t>(ext);
}

// ----------------------------------------------------------- copy tables

// All distinct isomorphic copies of the canonical instance on [n], as masks
// over the C(n,2) vertex pairs; permutation scan with deduplication.
inline std::vector<std::uint64_t> enumerate_family_copies_pairmask(const Graph& canon) {
    int n = canon.n();
    if (n > 10) throw BudgetError("family copy enumeration needs n <= 10");
    auto pair_index = [n](int u, int v) {
        if (u > v) std::swap(u, v);
        return u * n - u * (u + 1) / 2 + (v - u - 1);
    };
    std::vector<int> pi(n);
    for (int i = 0; i < n; ++i) pi[i] = i;
    std::vector<std::uint64_t> masks;
    do {
        std::uint64_t m = 0;
        for (auto [u, v] : canon.edges()) m |= 1ULL << pair_index(pi[u], pi[v]);
        masks.push_back(m);
    } while (std::next_permutation(pi.begin(), pi.end()));
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    return masks;
}

// ext[J] = number of family copies containing the edge subset J of F,
// for every J at once, via a superset-sum transform over F's edge lattice.
struct ExtensionTable {
    int edge_count = 0;
    std::uint64_t family_size = 0;
    std::vector<std::uint32_t> ext; // indexed by F-edge-subset mask

    std::uint32_t operator[](std::uint32_t mask) const { return ext[mask]; }
};

inline ExtensionTable extension_superset_table(const Graph& f) {
    int E = static_cast<int>(f.edge_count());
    if (E > 24) throw BudgetError("extension table needs |E| <= 24");
    int n = f.n();
    auto pair_index = [n](int u, int v) {
        return u * n - u * (u + 1) / 2 + (v - u - 1);
    };
    std::vector<int> pair_to_edge(n * (n - 1) / 2, -1);
    for (int i = 0; i < E; ++i)
        pair_to_edge[pair_index(f.edges()[i].first, f.edges()[i].second)] = i;
    auto copies = enumerate_family_copies_pairmask(f);
    ExtensionTable t;
    t.edge_count = E;
    t.family_size = copies.size();
    t.ext.assign(1u << E, 0);
    std::uint64_t fmask = 0;
    for (auto [u, v] : f.edges()) fmask |= 1ULL << pair_index(u, v);
    for (std::uint64_t cm : copies) {
        std::uint64_t shared = cm & fmask;
        std::uint32_t emask = 0;
        while (shared) {
            int p = __builtin_ctzll(shared);
            shared &= shared - 1;
            emask |= 1u << pair_to_edge[p];
        }
        ++t.ext[emask];
    }
    for (int b = 0; b < E; ++b)
        for (std::uint32_t mask = 0; mask < (1u << E); ++mask)
            if (!(mask >> b & 1)) t.ext[mask] += t.ext[mask | (1u << b)];
    return t;
}

// ----------------------------------------------------------- census engines

namespace detail {

struct SubsetStats {
    int l, x, c;
    int max_comp_x;
};

inline SubsetStats subset_stats(const Graph& f, std::uint32_t mask) {
    // tiny DSU over touched vertices
    static thread_local std::vector<int> parent, size_;
    parent.assign(f.n(), -1);
    size_.assign(f.n(), 1);
    auto find = [&](int v) {
        while (parent[v] >= 0 && parent[parent[v]] >= 0) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return parent[v] >= 0 ? parent[v] : v;
    };
    int l = 0, x = 0, c = 0;
    std::uint32_t bits = mask;
    const auto& edges = f.edges();
    std::vector<char> touched(f.n(), 0);
    while (bits) {
        int i = __builtin_ctz(bits);
        bits &= bits - 1;
        ++l;
        auto [u, v] = edges[i];
        for (int z : {u, v})
            if (!touched[z]) {
                touched[z] = 1;
                ++x;
                ++c;
            }
        int ru = find(u), rv = find(v);
        if (ru != rv) {
            if (size_[ru] < size_[rv]) std::swap(ru, rv);
            parent[rv] = ru;
            size_[ru] += size_[rv];
            --c;
        }
    }
    int mx = 0;
    for (int v = 0; v < f.n(); ++v)
        if (touched[v] && parent[v] < 0) mx = std::max(mx, size_[v]);
    return {l, x, c, mx};
}

} // namespace detail

// Full powerset sweep; needs |E(F)| <= 24. Extension bookkeeping rides on
// the superset-sum table rather than per-subset embedding counts.
inline CensusTable census_powerset(const Graph& f, bool with_extensions = false,
                                   std::int64_t aut_f = 0) {
    if (f.edge_count() > 24) throw BudgetError("powerset census needs |E| <= 24");
    CensusTable t;
    t.n = f.n();
    t.d = f.regular_degree();
    t.lmax_requested = t.lmax_reached = static_cast<int>(f.edge_count());
    t.has_extensions = with_extensions;
    ExtensionTable ext;
    if (with_extensions) {
        ext = extension_superset_table(f);
        if (aut_f > 0) {
            // consistency: |F_n| = n!/|Aut|
            double ln_fam = ln_factorial(f.n()) - std::log(static_cast<double>(aut_f));
            if (std::llround(std::exp(ln_fam)) !=
                static_cast<long long>(ext.family_size))
                throw std::runtime_error("copy count disagrees with n!/|Aut|");
        }
    }
    std::uint64_t full = (1ULL << f.edge_count()) - 1;
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
        auto st = detail::subset_stats(f, static_cast<std::uint32_t>(mask));
        CensusKey key{st.l, st.x, st.c};
        auto& e = t.buckets[key];
        e.count += 1;
        if (st.max_comp_x > f.n() - 3) e.in_window = false;
        if (with_extensions) {
            std::uint32_t cnt = ext[static_cast<std::uint32_t>(mask)];
            e.ext_sum += cnt;
            e.ext_max = std::max<std::uint64_t>(e.ext_max, cnt);
        }
    }
    return t;
}

// Connected-growth engine: enumerate connected subgraphs once, bucket them
// by vertex support, then convolve vertex-disjoint components over subsets.
// Exact counterpart of the powerset sweep along an entirely different path.
inline CensusTable census_connected_growth(const Graph& f, int lmax,
                                           std::int64_t budget = 2'000'000'000) {
    const int E = static_cast<int>(f.edge_count());
    const int n = f.n();
    if (E > 63) throw BudgetError("connected-growth census needs |E| <= 63");
    if (n > 14) throw BudgetError("connected-growth census needs n <= 14");
    const auto& edges = f.edges();
    // line-graph adjacency
    std::vector<std::uint64_t> ladj(E, 0);
    for (int i = 0; i < E; ++i)
        for (int j = i + 1; j < E; ++j) {
            auto [a, b] = edges[i];
            auto [c, d] = edges[j];
            if (a == c || a == d || b == c || b == d) {
                ladj[i] |= 1ULL << j;
                ladj[j] |= 1ULL << i;
            }
        }
    auto vmask_of = [&](std::uint64_t emask) {
        std::uint32_t vm = 0;
        while (emask) {
            int i = __builtin_ctzll(emask);
            emask &= emask - 1;
            vm |= (1u << edges[i].first) | (1u << edges[i].second);
        }
        return vm;
    };
    // connected[support mask] -> edge-count histogram
    std::vector<std::vector<std::uint64_t>> connected(1u << n);
    std::int64_t visits = 0;
    bool exhausted = false;
    auto record = [&](std::uint64_t emask, int l) {
        std::uint32_t vm = vmask_of(emask);
        auto& hist = connected[vm];
        if (hist.empty()) hist.assign(lmax + 1, 0);
        ++hist[l];
    };
    std::function<void(std::uint64_t, std::uint64_t, int, int)> grow =
        [&](std::uint64_t emask, std::uint64_t ext, int size, int root) {
            while (ext && !exhausted) {
                int u = __builtin_ctzll(ext);
                ext &= ext - 1;
                if (++visits > budget) {
                    exhausted = true;
                    return;
                }
                std::uint64_t nmask = emask | (1ULL << u);
                record(nmask, size + 1);
                if (size + 1 < lmax) {
                    std::uint64_t old_nbhd = 0;
                    std::uint64_t mrest = emask;
                    while (mrest) {
                        int v = __builtin_ctzll(mrest);
                        mrest &= mrest - 1;
                        old_nbhd |= ladj[v];
                    }
                    std::uint64_t lower = (root >= 63) ? ~0ULL : ((1ULL << (root + 1)) - 1);
                    std::uint64_t fresh = ladj[u] & ~nmask & ~old_nbhd & ~lower;
                    grow(nmask, ext | fresh, size + 1, root);
                }
            }
        };
    for (int e = 0; e < E && !exhausted; ++e) {
        record(1ULL << e, 1);
        if (lmax >= 2) {
            std::uint64_t lower = (e >= 63) ? ~0ULL : ((1ULL << (e + 1)) - 1);
            grow(1ULL << e, ladj[e] & ~lower, 1, e);
        }
    }
    if (exhausted)
        throw BudgetError("connected-growth census: enumeration budget exhausted");

    // subset convolution: h[U] counts subgraphs with support exactly U,
    // indexed by (l, c), kept twice to tell all-components-in-window apart
    struct Cell {
        std::vector<std::uint64_t> total;     // (l, c) flattened
        std::vector<std::uint64_t> windowed;  // components all on <= n-3 vertices
    };
    int lw = lmax + 1, cw = std::min(lmax, n / 2) + 1;
    auto at = [&](int l, int c) { return l * cw + c; };
    std::vector<Cell> h(1u << n);
    h[0].total.assign(lw * cw, 0);
    h[0].windowed.assign(lw * cw, 0);
    h[0].total[at(0, 0)] = 1;
    h[0].windowed[at(0, 0)] = 1;
    for (std::uint32_t U = 1; U < (1u << n); ++U) {
        int v0 = __builtin_ctz(U);
        Cell cell;
        cell.total.assign(lw * cw, 0);
        cell.windowed.assign(lw * cw, 0);
        // U1 runs over subsets of U containing v0
        std::uint32_t rest_bits = U & ~(1u << v0);
        for (std::uint32_t sub = rest_bits;; sub = (sub - 1) & rest_bits) {
            std::uint32_t U1 = sub | (1u << v0);
            const auto& hist = connected[U1];
            if (!hist.empty()) {
                const Cell& prev = h[U & ~U1];
                if (!prev.total.empty()) {
                    bool u1_window = __builtin_popcount(U1) <= n - 3;
                    for (int l1 = 1; l1 <= lmax; ++l1) {
                        if (!hist[l1]) continue;
                        for (int l = 0; l + l1 <= lmax; ++l)
                            for (int c = 0; c + 1 < cw; ++c) {
                                std::uint64_t tot = prev.total[at(l, c)];
                                if (tot)
                                    cell.total[at(l + l1, c + 1)] += tot * hist[l1];
                                std::uint64_t win = prev.windowed[at(l, c)];
                                if (win && u1_window)
                                    cell.windowed[at(l + l1, c + 1)] += win * hist[l1];
                            }
                    }
                }
            }
            if (sub == 0) break;
        }
        h[U] = std::move(cell);
    }

    CensusTable t;
    t.n = n;
    t.d = f.regular_degree();
    t.lmax_requested = lmax;
    t.lmax_reached = lmax;
    t.partial = lmax < E; // levels above lmax are absent by construction
    for (std::uint32_t U = 1; U < (1u << n); ++U) {
        if (h[U].total.empty()) continue;
        int x = __builtin_popcount(U);
        for (int l = 1; l <= lmax; ++l)
            for (int c = 1; c < cw; ++c) {
                std::uint64_t cnt = h[U].total[at(l, c)];
                if (!cnt) continue;
                auto& e = t.buckets[CensusKey{l, x, c}];
                e.count += cnt;
                if (h[U].windowed[at(l, c)] != cnt) e.in_window = false;
            }
    }
    return t;
}

// ------------------------------------------------------------- the bounds

struct BoundConsts {
    std::int64_t a1 = 1, a2 = 1; // subgraph-count bound
    std::int64_t b1 = 1, b2 = 1; // extension bound
};

inline std::int64_t max_binom_cap(int d, std::int64_t sigma2, int x) {
    std::int64_t cap = (static_cast<std::int64_t>(delta_of(d)) + 2) * sigma2 / 2;
    return std::min<std::int64_t>(cap, x);
}

inline double ln_max_binom(int x, std::int64_t cap) {
    if (cap < 0) return -std::numeric_limits<double>::infinity();
    std::int64_t o = std::min<std::int64_t>(cap, x / 2);
    return ln_choose(x, o);
}

// ln of the subgraph-count bound; requires sigma >= 0.
inline double alpha_bound_ln(int d, int n, const CensusKey& k, std::int64_t a1,
                             std::int64_t a2) {
    validate_key(d, k);
    std::int64_t s2 = sigma2_of(d, k);
    if (s2 < 0) throw ParameterError("alpha_bound needs sigma >= 0");
    return ln_choose(n, k.c) + ln_choose(k.x, k.c) +
           static_cast<double>(a1) * k.c + static_cast<double>(a2) * (0.5 * s2) +
           ln_max_binom(k.x, max_binom_cap(d, s2, k.x));
}

// ln of the extension bound; requires sigma >= 0.
inline double beta_bound_ln(int d, int n, const CensusKey& k, std::int64_t b1,
                            std::int64_t b2, std::int64_t aut) {
    validate_key(d, k);
    std::int64_t s2 = sigma2_of(d, k);
    if (s2 < 0) throw ParameterError("beta_bound needs sigma >= 0");
    double branchy = k.c * std::log(static_cast<double>(k.x) / k.c) +
                     k.x * std::log(static_cast<double>(d - 1)) -
                     std::log(static_cast<double>(aut));
    return ln_factorial(n - k.x + k.c) + static_cast<double>(b1) * k.c +
           static_cast<double>(b2) * (0.5 * s2) + std::min(branchy, 0.0) +
           ln_max_binom(k.x, max_binom_cap(d, s2, k.x));
}

// ln of the coarse subgraph-count bound; holds for every bucket.
inline double jhc_bound_ln(std::int64_t host_edges, std::int64_t host_vertices,
                           const CensusKey& k, int d) {
    if (k.c < 1) throw ParameterError("jhc_bound needs c >= 1");
    return ln_choose(std::min(host_edges, host_vertices), k.c) +
           k.l * std::log(16.0 * d);
}

// log-space comparisons get a small slack in favour of the bound
constexpr double kBoundSlack = 1e-9;

inline bool count_le_bound(std::uint64_t count, double ln_bound) {
    if (count == 0) return true;
    return std::log(static_cast<double>(count)) <= ln_bound * (1 + kBoundSlack) + kBoundSlack;
}

struct CalibrationResult {
    BoundConsts consts;
    bool alpha_ok = false;
    bool beta_ok = false;
};

// Smallest integer constants making both bounds hold over the reference
// census: feasible pairs minimizing a1+a2 (then a1), likewise for b1,b2.
inline CalibrationResult calibrate_constants(const CensusTable& t, std::int64_t aut,
                                             std::int64_t max_const = 32) {
    CalibrationResult r;
    auto window_ok = [&](const CensusKey& k, const CensusEntry& e) {
        return e.in_window && sigma2_of(t.d, k) >= 0;
    };
    auto alpha_feasible = [&](std::int64_t a1, std::int64_t a2) {
        for (const auto& [k, e] : t.buckets) {
            if (!window_ok(k, e)) continue;
            if (!count_le_bound(e.count, alpha_bound_ln(t.d, t.n, k, a1, a2)))
                return false;
        }
        return true;
    };
    auto beta_feasible = [&](std::int64_t b1, std::int64_t b2) {
        for (const auto& [k, e] : t.buckets) {
            if (!window_ok(k, e)) continue;
            if (!count_le_bound(e.ext_max, beta_bound_ln(t.d, t.n, k, b1, b2, aut)))
                return false;
        }
        return true;
    };
    auto scan = [&](auto&& feasible, std::int64_t& c1, std::int64_t& c2) {
        for (std::int64_t sum = 0; sum <= 2 * max_const; ++sum)
            for (std::int64_t i = std::max<std::int64_t>(0, sum - max_const);
                 i <= std::min(sum, max_const); ++i)
                if (feasible(i, sum - i)) {
                    c1 = i;
                    c2 = sum - i;
                    return true;
                }
        return false;
    };
    r.alpha_ok = scan(alpha_feasible, r.consts.a1, r.consts.a2);
    if (t.has_extensions) r.beta_ok = scan(beta_feasible, r.consts.b1, r.consts.b2);
    return r;
}

// ------------------------------------------------------ spread + threshold

struct SpreadReport {
    double max_per_edge_spread = 0.0; // max over H of r(H)^{1/l(H)} * n^{2/d}
    std::uint64_t family_size = 0;
    std::uint64_t examined = 0;
};

inline SpreadReport spread_profile_exhaustive(const Graph& f, std::int64_t aut) {
    if (f.n() > 10) throw BudgetError("exhaustive spread needs n <= 10");
    (void)aut;
    SpreadReport rep;
    ExtensionTable ext = extension_superset_table(f);
    rep.family_size = ext.family_size;
    int d = f.regular_degree();
    std::uint32_t full = (1u << f.edge_count()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint32_t cnt = ext[mask];
        if (cnt == 0) continue;
        int l = __builtin_popcount(mask);
        double r = static_cast<double>(cnt) / static_cast<double>(rep.family_size);
        double per_edge = std::exp(std::log(r) / l) * std::pow(f.n(), 2.0 / d);
        rep.max_per_edge_spread = std::max(rep.max_per_edge_spread, per_edge);
        ++rep.examined;
    }
    return rep;
}

inline SpreadReport spread_profile_sampled(const Graph& f, std::int64_t aut,
                                           int trials, std::uint64_t seed) {
    SpreadReport rep;
    double ln_fam = ln_factorial(f.n()) - std::log(static_cast<double>(aut));
    rep.family_size = ln_fam < 63 ? static_cast<std::uint64_t>(std::llround(std::exp(ln_fam))) : 0;
    int d = f.regular_degree();
    Rng rng(derive_seed(seed, "spread"));
    const auto& edges = f.edges();
    for (int tr = 0; tr < trials; ++tr) {
        std::vector<Edge> es;
        for (const auto& e : edges)
            if (rng.bernoulli(0.5)) es.push_back(e);
        if (es.empty()) continue;
        int l = static_cast<int>(es.size());
        Graph h(f.n(), std::move(es));
        std::uint64_t mon = count_monomorphisms(h, f);
        int x = 0;
        for (int v = 0; v < f.n(); ++v)
            if (h.degree(v) > 0) ++x;
        double ln_r = std::log(static_cast<double>(mon)) + ln_factorial(f.n() - x) -
                      ln_factorial(f.n()); // ext / |F_n| with Aut cancelled
        double per_edge = std::exp(ln_r / l) * std::pow(f.n(), 2.0 / d);
        rep.max_per_edge_spread = std::max(rep.max_per_edge_spread, per_edge);
        ++rep.examined;
    }
    return rep;
}

// Edge density where the expected number of family copies hits 1/2,
// evaluated in log space with an exact factorial sum.
inline double expectation_threshold(std::int64_t aut, int n, int d) {
    double ln_aut = std::log(static_cast<double>(aut));
    double ln_fact = ln_factorial_exact(n);
    return std::exp((ln_aut - std::log(2.0) - ln_fact) / (0.5 * d * n));
}

inline double reference_threshold(int n, int d) {
    return std::pow(std::exp(1.0) / static_cast<double>(n), 2.0 / d);
}

} // namespace spanlab

#endif
