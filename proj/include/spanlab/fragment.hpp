#ifndef SPANLAB_FRAGMENT_HPP
#define SPANLAB_FRAGMENT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "census.hpp"
#include "combinat.hpp"
#include "embed.hpp"
#include "expansion.hpp"
#include "graph.hpp"
#include "matching.hpp"
#include "rng.hpp"

namespace spanlab {

// ------------------------------------------------------------- parameters

inline int chi_formula(int n, double w) {
    return static_cast<int>(std::floor(w * std::sqrt(static_cast<double>(n)) /
                                       std::log(static_cast<double>(n))));
}

inline int mu_formula(int n, double w, double c) {
    return static_cast<int>(std::floor(10.0 * c * std::log(static_cast<double>(n)) / w));
}

inline double beta_formula(int n, double w) {
    return std::pow(static_cast<double>(n), -1.0 / 3.0) / w;
}

// ------------------------------------------------------------- diamonds

struct DiamondLayout {
    int n = 0;
    int chi = 0;
    std::vector<std::array<int, 4>> diamonds; // (u1,u2,u3,u4) vertex quadruples
    std::vector<int> gaps;                    // free vertices between D_i and D_{i+1}
    std::vector<int> start_slots;             // slot of u1 in the planted order

    // slot -> pinned vertex (-1 when free)
    std::vector<int> pins() const {
        std::vector<int> p(n, -1);
        for (int i = 0; i < chi; ++i)
            for (int j = 0; j < 4; ++j) p[(start_slots[i] + j) % n] = diamonds[i][j];
        return p;
    }

    Graph diamond_graph() const {
        std::vector<Edge> es;
        for (const auto& d : diamonds) {
            es.push_back(mk_edge(d[0], d[1]));
            es.push_back(mk_edge(d[0], d[2]));
            es.push_back(mk_edge(d[1], d[2]));
            es.push_back(mk_edge(d[1], d[3]));
            es.push_back(mk_edge(d[2], d[3]));
        }
        return Graph(n, std::move(es));
    }
};

// Near-equal gaps, diamonds in slot order, planted copy = identity order.
// Every member of the planted family is a relabeling of this one, so the
// canonical representative loses no generality.
inline std::pair<DiamondLayout, Embedding> plant_diamonds(int n, int chi,
                                                          std::uint64_t seed = 0) {
    if (chi < 1) throw ParameterError("plant_diamonds requires chi >= 1");
    if (n < 6 * chi) throw ParameterError("plant_diamonds requires n >= 6*chi");
    DiamondLayout lay;
    lay.n = n;
    lay.chi = chi;
    int free_total = n - 4 * chi;
    int base = free_total / chi, extra = free_total % chi;
    int slot = 0;
    for (int i = 0; i < chi; ++i) {
        lay.start_slots.push_back(slot);
        lay.diamonds.push_back({slot, slot + 1, slot + 2, slot + 3});
        int gap = base + (i < extra ? 1 : 0);
        lay.gaps.push_back(gap);
        slot += 4 + gap;
    }
    (void)seed; // reserved for sub-stream derivation in traces
    return {lay, identity_embedding(n, 2)};
}

// ----------------------------------------------------------- M(t) values

// ln of the expected number of family copies inside a uniform random
// (m+f-t)-subset of the N host pairs.
inline double compute_M_ln(double ln_copies, std::int64_t N, std::int64_t f,
                           std::int64_t m, std::int64_t t) {
    if (t < 0 || t > f || f > m || m > N)
        throw ParameterError("compute_M needs 0 <= t <= f <= m <= N");
    return ln_copies + ln_choose(N - f, m - t) - ln_choose(N, m + f - t);
}

// Planted-family variant: copies live inside pairs avoiding the diamond
// edges; f = 2n - 5*chi edges per stripped copy.
inline double compute_M_planted_ln(int n, int chi, std::int64_t m, std::int64_t t) {
    std::int64_t N = static_cast<std::int64_t>(n) * (n - 1) / 2;
    std::int64_t f = 2LL * n - 5LL * chi;
    double ln_copies = ln_factorial(n - 4 * chi);
    if (t < 0 || t > f) throw ParameterError("compute_M_planted: bad t");
    return ln_copies + ln_choose(N - 2LL * n, m - t) -
           ln_choose(N - 5LL * chi, m + f - t);
}

// ------------------------------------------------ fragmentation lhs (4.2)

struct FragLhsResult {
    double value = 0.0;
    bool pass = false;
    double delta_cubed = 0.0;
    std::vector<double> pi;   // Pi_l for l = 0..f
    bool exact_mode = true;
};

inline double frag_weight_ln(std::int64_t N, std::int64_t f, std::int64_t m,
                             std::int64_t l) {
    double fd = static_cast<double>(f), md = static_cast<double>(m);
    double base = std::log((1.0 + 3.0 * fd / md) * static_cast<double>(N) / md);
    return l * base - fd * fd / md + fd * fd * fd / (3.0 * md * md);
}

// Exact per-size intersection law from a census with extension sums:
// S_l = sum over l-edge subsets J of #copies containing J, inverted by the
// binomial sieve into N_L = #copies with intersection exactly L.
inline std::vector<double> intersection_law_from_census(const CensusTable& t,
                                                        double family_size) {
    if (!t.has_extensions) throw ParameterError("census lacks extension sums");
    int f = t.lmax_reached;
    std::vector<__int128> S(f + 1, 0);
    for (const auto& [k, e] : t.buckets)
        if (k.l <= f) S[k.l] += static_cast<__int128>(e.ext_sum);
    std::vector<__int128> N(f + 1, 0);
    for (int L = 1; L <= f; ++L) {
        __int128 acc = 0;
        for (int l = L; l <= f; ++l) {
            __int128 term = static_cast<__int128>(choose_u64(l, L)) * S[l];
            acc += (((l - L) % 2) == 0) ? term : -term;
        }
        if (acc < 0) throw std::runtime_error("intersection sieve went negative");
        N[L] = acc;
    }
    std::vector<double> pi(f + 1, 0.0);
    double rest = 1.0;
    for (int L = 1; L <= f; ++L) {
        pi[L] = static_cast<double>(N[L]) / family_size;
        rest -= pi[L];
    }
    pi[0] = std::max(0.0, rest);
    return pi;
}

inline FragLhsResult fragmentation_lhs(const std::vector<double>& pi, std::int64_t N,
                                       std::int64_t f, std::int64_t m,
                                       std::int64_t l_cut, double delta) {
    FragLhsResult r;
    r.pi = pi;
    r.delta_cubed = delta * delta * delta;
    double acc = 0.0;
    for (std::int64_t l = l_cut + 1; l < static_cast<std::int64_t>(pi.size()); ++l) {
        if (pi[l] <= 0.0) continue;
        acc += pi[l] * std::exp(frag_weight_ln(N, f, m, l));
    }
    r.value = acc;
    r.pass = acc <= r.delta_cubed;
    return r;
}

// Independent oracle: loop over every copy of the square of C_n (7<=n<=11)
// and histogram the intersection with the canonical copy directly.
inline std::vector<double> intersection_law_oracle(int n) {
    auto copies = all_square_copies_pairmask(n);
    Graph f = build_family(FamilySpec::square_of_cycle(), n);
    std::uint64_t fmask = graph_pairmask(f);
    std::vector<std::int64_t> hist(f.edge_count() + 1, 0);
    for (std::uint64_t cm : copies)
        ++hist[__builtin_popcountll(cm & fmask)];
    std::vector<double> pi(hist.size());
    for (std::size_t l = 0; l < hist.size(); ++l)
        pi[l] = static_cast<double>(hist[l]) / static_cast<double>(copies.size());
    return pi;
}

// --------------------------------------------------------------- badness

struct BadnessReport {
    double bad_pair_fraction = 0.0; // trials where |M_l| > delta_n |M|
    WilsonInterval ci;
    double mean_bad_fraction = 0.0; // average |M_l| / |M|
    int trials = 0;
};

inline BadnessReport badness_estimate(int n, std::int64_t m, std::int64_t l_cut,
                                      double delta_n, int trials, std::uint64_t seed) {
    if (n < 7 || n > 12) throw BudgetError("exact badness estimate needs 7 <= n <= 12");
    std::vector<std::uint64_t> copies; // pairmask fast path for n <= 11
    if (n <= 11) copies = all_square_copies_pairmask(n);
    Graph f = build_family(FamilySpec::square_of_cycle(), n);
    std::uint64_t fmask = n <= 11 ? graph_pairmask(f) : 0;
    std::int64_t npairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (m < 0 || m > npairs) throw ParameterError("badness: bad m");
    std::vector<Edge> all_pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all_pairs.push_back({u, v});
    BadnessReport rep;
    rep.trials = trials;
    std::int64_t bad = 0;
    double frac_sum = 0.0;
    std::vector<int> pair_ids(npairs);
    for (int i = 0; i < npairs; ++i) pair_ids[i] = i;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, "badness", static_cast<std::uint64_t>(t)));
        for (std::int64_t i = 0; i < m; ++i) {
            std::int64_t j = i + static_cast<std::int64_t>(rng.below(npairs - i));
            std::swap(pair_ids[i], pair_ids[j]);
        }
        std::int64_t total = 0, over = 0;
        if (n <= 11) {
            std::uint64_t wmask = 0;
            for (std::int64_t i = 0; i < m; ++i) wmask |= 1ULL << pair_ids[i];
            std::uint64_t host = wmask | fmask;
            for (std::uint64_t cm : copies) {
                if ((cm & ~host) != 0) continue;
                ++total;
                if (__builtin_popcountll(cm & fmask) > l_cut) ++over;
            }
        } else {
            // exhaustive copy enumeration inside F union W; each edge-set
            // copy shows up as two rooted sequences
            std::vector<Edge> es = f.edges();
            for (std::int64_t i = 0; i < m; ++i) es.push_back(all_pairs[pair_ids[i]]);
            Graph host(n, std::move(es));
            SquareSearcher searcher(host, 2);
            SearchOptions opt;
            opt.pins.assign(n, -1);
            opt.pins[0] = 0;
            opt.exact = true;
            opt.budget = INT64_MAX / 8;
            opt.planted = &f;
            std::int64_t seq_total = 0, seq_over = 0;
            opt.on_solution = [&](const std::vector<int>& ord) {
                ++seq_total;
                if (searcher.intersection_of(ord) > l_cut) ++seq_over;
                return true;
            };
            searcher.run(opt);
            total = seq_total / 2;
            over = seq_over / 2;
        }
        double frac = total ? static_cast<double>(over) / total : 1.0;
        frac_sum += frac;
        if (total == 0 || over > delta_n * total) ++bad;
    }
    rep.bad_pair_fraction = trials ? static_cast<double>(bad) / trials : 0.0;
    rep.mean_bad_fraction = trials ? frac_sum / trials : 0.0;
    rep.ci = wilson_ci(bad, trials);
    return rep;
}

// ------------------------------------------------------------ piece cuts

struct PieceCut {
    int piece_len = 0;
    int threshold = 0;
    std::vector<std::vector<int>> pieces;   // vertex lists, planted order
    std::vector<int> piece_start_slots;     // slot of each piece's first vertex
    struct Seam {
        int run_start_slot = 0;
        int run_len = 0;
        int removed = 0;       // vertices cut out (= pieces * piece_len)
        int head_end_slot = 0; // slot of v2
        int tail_start_slot = 0;
    };
    std::vector<Seam> seams;
    Graph core; // fragment with pieces removed and runs glued
    bool whole_cycle = false; // fragment was the full copy; nothing cut
};

// Cut every closed run of >= threshold vertices into interior pieces of
// exactly piece_len vertices, keeping the two head vertices and a tail of
// 2..piece_len+1, and glue head to tail as the square of a path.
inline PieceCut cut_pieces(const Graph& h, const Embedding& f, int piece_len,
                           int threshold) {
    if (piece_len < 2) throw ParameterError("cut_pieces requires piece length >= 2");
    if (threshold < piece_len + 4)
        throw ParameterError("cut_pieces requires threshold >= piece length + 4");
    PieceCut cut;
    cut.piece_len = piece_len;
    cut.threshold = threshold;
    int n = f.n;
    auto runs = closed_runs(h, f);
    if (runs.size() == 1 && runs[0].second >= n) {
        cut.whole_cycle = true;
        cut.core = h;
        return cut;
    }
    std::set<Edge> edges(h.edges().begin(), h.edges().end());
    for (auto [start, len] : runs) {
        if (len < threshold) continue;
        int j = (len - 4) / piece_len; // number of removed interior pieces
        if (j < 1) continue;
        PieceCut::Seam seam;
        seam.run_start_slot = start;
        seam.run_len = len;
        seam.removed = j * piece_len;
        seam.head_end_slot = (start + 1) % n;
        seam.tail_start_slot = (start + 2 + j * piece_len) % n;
        auto vertex_at = [&](int off) { return f.order[(start + off) % n]; };
        for (int p = 0; p < j; ++p) {
            std::vector<int> piece;
            for (int q = 0; q < piece_len; ++q)
                piece.push_back(vertex_at(2 + p * piece_len + q));
            cut.piece_start_slots.push_back((start + 2 + p * piece_len) % n);
            cut.pieces.push_back(std::move(piece));
        }
        // drop all edges incident to removed vertices
        std::vector<char> removed(f.n, 0);
        for (int off = 2; off < 2 + j * piece_len; ++off) removed[vertex_at(off)] = 1;
        for (auto it = edges.begin(); it != edges.end();)
            if (removed[it->first] || removed[it->second]) it = edges.erase(it);
            else ++it;
        // glue head (v1 v2) to tail: square-of-path seam edges
        int v1 = vertex_at(0), v2 = vertex_at(1);
        int t1 = vertex_at(2 + j * piece_len);
        int t2 = vertex_at(3 + j * piece_len);
        edges.insert(mk_edge(v2, t1));
        edges.insert(mk_edge(v1, t1));
        edges.insert(mk_edge(v2, t2));
        cut.seams.push_back(seam);
    }
    // piece count sanity: s < 2 l(H) / piece_len
    if (!cut.pieces.empty() &&
        static_cast<std::int64_t>(cut.pieces.size()) * piece_len >=
            2 * static_cast<std::int64_t>(h.edge_count()))
        throw std::runtime_error("cut_pieces: piece count exceeds 2 l(H) / mu");
    cut.core = Graph(f.n, std::vector<Edge>(edges.begin(), edges.end()));
    return cut;
}

// --------------------------------------------------------- matching rule

struct MatchingRule {
    int chi = 0;
    int n = 0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::vector<int>> nbrs; // diamond index -> sorted positions

    bool has_edge(int diamond, int position) const {
        const auto& v = nbrs[diamond];
        return std::binary_search(v.begin(), v.end(), position);
    }
    int neighbor_index(int diamond, int position) const {
        const auto& v = nbrs[diamond];
        auto it = std::lower_bound(v.begin(), v.end(), position);
        if (it == v.end() || *it != position) return -1;
        return static_cast<int>(it - v.begin());
    }
};

inline MatchingRule make_matching_rule(int chi, int n, double beta,
                                       std::uint64_t seed) {
    MatchingRule r;
    r.chi = chi;
    r.n = n;
    r.beta = beta;
    r.seed = seed;
    r.nbrs.resize(chi);
    for (int d = 0; d < chi; ++d) {
        Rng rng(derive_seed(seed, "matching-rule", static_cast<std::uint64_t>(d)));
        for (int u = 0; u < n; ++u)
            if (rng.bernoulli(beta)) r.nbrs[d].push_back(u);
    }
    return r;
}

// ------------------------------------------------------------- smoothing

struct SmoothResult {
    bool refused = false;       // no covering matching among eligible diamonds
    Graph smoothed;             // H'
    Embedding witness;          // F'' with H' as a subgraph
    std::vector<int> piece_to_diamond; // per piece, matched diamond index
    int eligible_diamonds = 0;
    LXC before, after;
    bool conserved = false;
};

// Insert every removed piece into a matched eligible diamond. Eligibility:
// the diamond's component holds no removed piece, its closed run has little
// slack around the diamond, and one diamond per component. The witness copy
// applies the same relocation to F'.
inline SmoothResult smooth(const PieceCut& cut, const DiamondLayout& lay,
                           const MatchingRule& rule, const Embedding& f,
                           const Embedding& fprime, const Graph& h, int scan_threshold) {
    SmoothResult res;
    res.before = lxc_of(h);
    if (cut.pieces.empty()) {
        res.smoothed = cut.core;
        res.witness = fprime;
        res.after = lxc_of(res.smoothed);
        res.conserved = (res.before == res.after);
        return res;
    }
    int n = lay.n;
    // component ids of the original fragment
    auto comp = component_ids(h);
    std::vector<char> comp_has_piece(h.n() + 1, 0);
    for (const auto& piece : cut.pieces)
        for (int v : piece)
            if (comp[v] >= 0) comp_has_piece[comp[v]] = 1;
    // closed-run slack around each diamond
    auto runs = closed_runs(h, f);
    std::vector<int> run_slack(lay.chi, 0);
    for (int i = 0; i < lay.chi; ++i) {
        int s = lay.start_slots[i];
        for (auto [start, len] : runs) {
            // does [start, start+len) contain [s, s+4)?
            int rel = ((s - start) % n + n) % n;
            if (rel + 4 <= len) run_slack[i] = std::max(run_slack[i], len - 4);
        }
    }
    std::vector<int> eligible;
    std::set<int> used_components;
    for (int i = 0; i < lay.chi; ++i) {
        int c0 = comp[lay.diamonds[i][0]];
        if (c0 < 0) continue;
        if (comp_has_piece[c0]) continue;
        if (run_slack[i] + cut.piece_len + 4 >= scan_threshold) continue;
        if (used_components.count(c0)) continue;
        used_components.insert(c0);
        eligible.push_back(i);
    }
    res.eligible_diamonds = static_cast<int>(eligible.size());
    // bipartite matching: pieces x eligible diamonds via the fixed rule B
    int s = static_cast<int>(cut.pieces.size());
    BipartiteMatcher matcher(s, static_cast<int>(eligible.size()));
    for (int p = 0; p < s; ++p)
        for (int e = 0; e < static_cast<int>(eligible.size()); ++e)
            if (rule.has_edge(eligible[e], cut.piece_start_slots[p]))
                matcher.add_edge(p, e);
    if (matcher.solve() < s) {
        res.refused = true;
        res.smoothed = h;
        res.witness = fprime;
        return res;
    }
    res.piece_to_diamond.assign(s, -1);
    for (int p = 0; p < s; ++p) res.piece_to_diamond[p] = eligible[matcher.left_match()[p]];

    // H' = core with pieces spliced into their diamonds
    std::set<Edge> edges(cut.core.edges().begin(), cut.core.edges().end());
    for (int p = 0; p < s; ++p) {
        const auto& dia = lay.diamonds[res.piece_to_diamond[p]];
        const auto& piece = cut.pieces[p];
        int u1 = dia[0], u2 = dia[1], u3 = dia[2], u4 = dia[3];
        edges.erase(mk_edge(u1, u3));
        edges.erase(mk_edge(u2, u3));
        edges.erase(mk_edge(u2, u4));
        int L = static_cast<int>(piece.size());
        edges.insert(mk_edge(u2, piece[0]));
        edges.insert(mk_edge(u1, piece[0]));
        if (L >= 2) edges.insert(mk_edge(u2, piece[1]));
        for (int q = 0; q + 1 < L; ++q) edges.insert(mk_edge(piece[q], piece[q + 1]));
        for (int q = 0; q + 2 < L; ++q) edges.insert(mk_edge(piece[q], piece[q + 2]));
        edges.insert(mk_edge(piece[L - 1], u3));
        if (L >= 2) edges.insert(mk_edge(piece[L - 2], u3));
        edges.insert(mk_edge(piece[L - 1], u4));
    }
    res.smoothed = Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
    res.after = lxc_of(res.smoothed);
    res.conserved = (res.before == res.after);

    // witness: relocate the same pieces inside F'
    std::vector<char> moved(n, 0);
    for (const auto& piece : cut.pieces)
        for (int v : piece) moved[v] = 1;
    std::vector<int> pos_fp = fprime.positions();
    std::vector<std::vector<int>> insert_after(n); // host vertex u2 -> piece
    for (int p = 0; p < s; ++p) {
        int u2 = lay.diamonds[res.piece_to_diamond[p]][1];
        insert_after[u2] = cut.pieces[p];
    }
    std::vector<int> new_order;
    new_order.reserve(n);
    for (int slot = 0; slot < n; ++slot) {
        int v = fprime.order[slot];
        if (moved[v]) continue;
        new_order.push_back(v);
        if (!insert_after[v].empty())
            for (int pv : insert_after[v]) new_order.push_back(pv);
    }
    if (static_cast<int>(new_order.size()) != n)
        throw std::runtime_error("smooth: witness relocation lost vertices");
    res.witness.n = n;
    res.witness.k = 2;
    res.witness.order = std::move(new_order);
    return res;
}

// --------------------------------------------------------- reconstruction

struct ReconstructionTuple {
    // alpha: per component, slot offsets of BFS-discovered vertices
    std::vector<std::vector<int>> alpha;   // component -> per-edge offset code
    std::vector<std::pair<int, int>> A;    // piece first/last vertex per component (-1,-1 none)
    std::vector<std::vector<int>> Aprime;  // glue-marker vertices per component
    std::vector<int> rho;                  // piece-host component -> diamond index
    std::vector<int> tau1;                 // index into the diamond's B-neighbour list
    std::vector<int> tau2;                 // offset of the piece head inside the full piece
    std::vector<std::vector<int>> fparts;  // per glued component, seam gap sizes
    std::vector<int> pi;                   // placement rank -> item id
    // components whose slot footprint straddles the cyclic origin root at
    // their minimal-slot vertex rather than the offset-minimal one
    std::vector<std::pair<int, int>> wrap_roots; // (item id, root offset)
};

namespace detail {

struct ComponentGeometry {
    std::vector<int> verts;          // BFS order from the root (min label)
    std::vector<int> offsets;        // slot offset relative to the root
    std::vector<int> edge_codes;     // offset code per BFS tree edge
    int min_offset = 0, max_offset = 0;
};

// BFS the component of `root` inside S; offsets come from slot positions in
// the reference embedding (encode) or from the codes themselves (decode).
inline ComponentGeometry component_geometry_encode(const Graph& s, int root,
                                                   const std::vector<int>& slot_of,
                                                   int n) {
    ComponentGeometry g;
    std::vector<int> offset(s.n(), INT32_MIN);
    offset[root] = 0;
    g.verts.push_back(root);
    std::vector<int> queue{root};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        int v = queue[q];
        for (int w : s.neighbors(v)) {
            if (offset[w] != INT32_MIN) continue;
            int diff = slot_of[w] - slot_of[v];
            // cyclic wrap: normalize to the short side
            if (diff > n / 2) diff -= n;
            if (diff < -n / 2) diff += n;
            if (diff < -2 || diff > 2 || diff == 0)
                throw std::runtime_error("component geometry: non-local edge");
            offset[w] = offset[v] + diff;
            g.edge_codes.push_back(diff);
            g.verts.push_back(w);
            queue.push_back(w);
        }
    }
    for (int v : g.verts) {
        g.offsets.push_back(offset[v]);
        g.min_offset = std::min(g.min_offset, offset[v]);
        g.max_offset = std::max(g.max_offset, offset[v]);
    }
    return g;
}

inline ComponentGeometry component_geometry_decode(const Graph& s, int root,
                                                   const std::vector<int>& codes) {
    ComponentGeometry g;
    std::vector<int> offset(s.n(), INT32_MIN);
    offset[root] = 0;
    g.verts.push_back(root);
    std::vector<int> queue{root};
    std::size_t code_idx = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        int v = queue[q];
        for (int w : s.neighbors(v)) {
            if (offset[w] != INT32_MIN) continue;
            if (code_idx >= codes.size())
                throw std::runtime_error("decode: alpha code exhausted");
            offset[w] = offset[v] + codes[code_idx++];
            g.verts.push_back(w);
            queue.push_back(w);
        }
    }
    for (int v : g.verts) {
        g.offsets.push_back(offset[v]);
        g.min_offset = std::min(g.min_offset, offset[v]);
        g.max_offset = std::max(g.max_offset, offset[v]);
    }
    return g;
}

} // namespace detail

// Context shared by encode and decode: the smoothed fragment, the rule, the
// layout, and the cut/smooth record that produced it.
struct ReconstructionContext {
    const Graph& smoothed;         // S = H'(F)
    const DiamondLayout& layout;
    const MatchingRule& rule;
    const PieceCut& cut;
    const SmoothResult& sm;
};

ReconstructionTuple encode_preimage(const Embedding& f, const ReconstructionContext& ctx);
Embedding decode_preimage(const ReconstructionTuple& x, const Graph& s,
                          const DiamondLayout& lay, const MatchingRule& rule);

inline ReconstructionTuple encode_preimage(const Embedding& f,
                                           const ReconstructionContext& ctx) {
    const Graph& s = ctx.smoothed;
    const DiamondLayout& lay = ctx.layout;
    int n = lay.n;
    ReconstructionTuple x;
    std::vector<int> slot_of = f.positions(); // vertex -> original slot

    // smoothed-slot positions: original slots with pieces relocated
    std::vector<int> sm_slot(n, -1);
    {
        // rebuild the smoothed order from the identity planted copy: remove
        // pieces, close gaps, insert after each matched diamond's u2 -- the
        // same relocation the witness applies to F', here applied to F
        std::vector<char> moved(n, 0);
        for (const auto& piece : ctx.cut.pieces)
            for (int v : piece) moved[v] = 1;
        std::vector<std::vector<int>> insert_after(n);
        for (std::size_t p = 0; p < ctx.cut.pieces.size(); ++p) {
            int u2 = lay.diamonds[ctx.sm.piece_to_diamond[p]][1];
            insert_after[u2] = ctx.cut.pieces[p];
        }
        std::vector<int> order;
        for (int slot = 0; slot < n; ++slot) {
            int v = f.order[slot];
            if (moved[v]) continue;
            order.push_back(v);
            if (!insert_after[v].empty())
                for (int pv : insert_after[v]) order.push_back(pv);
        }
        for (int i = 0; i < n; ++i) sm_slot[order[i]] = i;
    }

    auto comp = component_ids(s);
    int num_comp = 0;
    for (int v = 0; v < s.n(); ++v) num_comp = std::max(num_comp, comp[v] + 1);
    std::vector<int> root(num_comp, -1);
    for (int v = 0; v < s.n(); ++v)
        if (comp[v] >= 0 && (root[comp[v]] == -1 || v < root[comp[v]]))
            root[comp[v]] = v;

    std::vector<char> vertex_in_piece(n, 0);
    for (const auto& piece : ctx.cut.pieces)
        for (int v : piece) vertex_in_piece[v] = 1;

    x.alpha.resize(num_comp);
    x.A.assign(num_comp, {-1, -1});
    x.Aprime.resize(num_comp);
    x.fparts.resize(num_comp);

    // a component anchors when it holds a diamond that is intact (none of
    // its vertices moved away inside a piece)
    std::vector<char> anchored(num_comp, 0);
    for (int i = 0; i < lay.chi; ++i) {
        bool intact = true;
        for (int j = 0; j < 4; ++j)
            if (vertex_in_piece[lay.diamonds[i][j]]) intact = false;
        int c = comp[lay.diamonds[i][0]];
        if (intact && c >= 0) anchored[c] = 1;
    }

    for (int c = 0; c < num_comp; ++c) {
        auto g = detail::component_geometry_encode(s, root[c], sm_slot, n);
        x.alpha[c] = g.edge_codes;
    }

    // A marks per hosting component; rho/tau in receiving-component order
    std::vector<int> piece_of_comp(num_comp, -1);
    for (std::size_t p = 0; p < ctx.cut.pieces.size(); ++p) {
        int dia = ctx.sm.piece_to_diamond[p];
        int c = comp[lay.diamonds[dia][0]];
        if (piece_of_comp[c] != -1)
            throw std::runtime_error("encode: two pieces in one component");
        piece_of_comp[c] = static_cast<int>(p);
        x.A[c] = {ctx.cut.pieces[p].front(), ctx.cut.pieces[p].back()};
    }
    for (int c = 0; c < num_comp; ++c) {
        int p = piece_of_comp[c];
        if (p < 0) continue;
        int dia = ctx.sm.piece_to_diamond[p];
        x.rho.push_back(dia);
        int origin = ctx.cut.piece_start_slots[p];
        int idx = ctx.rule.neighbor_index(dia, origin);
        if (idx < 0) throw std::runtime_error("encode: matched pair not in rule");
        x.tau1.push_back(idx);
        x.tau2.push_back(0); // the whole piece is present in a full fragment
    }

    // A', f: glue markers and seam gaps per component, in slot order
    for (const auto& seam : ctx.cut.seams) {
        int v2 = f.order[seam.head_end_slot];
        int c = comp[v2];
        if (c < 0) throw std::runtime_error("encode: seam head not in fragment");
        x.Aprime[c].push_back(v2);
        x.fparts[c].push_back(seam.removed);
    }

    // pi: non-anchored items ranked by their original minimal slot
    struct Item {
        int id;
        int min_slot;
    };
    std::vector<Item> items;
    int item_id = 0;
    for (int c = 0; c < num_comp; ++c) {
        if (anchored[c]) continue;
        std::vector<int> slots;
        for (int v = 0; v < s.n(); ++v)
            if (comp[v] == c) slots.push_back(slot_of[v]);
        std::sort(slots.begin(), slots.end());
        int ms = slots.front();
        // a component straddling the cyclic origin has its minimal slot in
        // the middle of its linear geometry; record where the placement
        // must root (offset of the min-slot vertex from the arc start)
        int gap_end = 0, best_gap = slots.front() + n - slots.back();
        for (std::size_t i = 1; i < slots.size(); ++i)
            if (slots[i] - slots[i - 1] > best_gap) {
                best_gap = slots[i] - slots[i - 1];
                gap_end = static_cast<int>(i);
            }
        int arc_start = slots[gap_end % slots.size()];
        int root_off = ((ms - arc_start) % n + n) % n;
        if (root_off != 0) x.wrap_roots.push_back({item_id, root_off});
        items.push_back({item_id++, ms});
    }
    for (int v = 0; v < n; ++v) {
        if (comp[v] >= 0) continue;
        items.push_back({item_id++, slot_of[v]});
    }
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.min_slot < b.min_slot; });
    for (const auto& it : items) x.pi.push_back(it.id);
    return x;
}

inline Embedding decode_preimage(const ReconstructionTuple& x, const Graph& s,
                                 const DiamondLayout& lay, const MatchingRule& rule) {
    int n = lay.n;
    auto comp = component_ids(s);
    int num_comp = 0;
    for (int v = 0; v < s.n(); ++v) num_comp = std::max(num_comp, comp[v] + 1);
    std::vector<int> root(num_comp, -1);
    for (int v = 0; v < s.n(); ++v)
        if (comp[v] >= 0 && (root[comp[v]] == -1 || v < root[comp[v]]))
            root[comp[v]] = v;
    if (static_cast<int>(x.alpha.size()) != num_comp)
        throw std::runtime_error("decode: component count mismatch");

    std::vector<int> slot_of(n, -1);   // reconstructed original slots
    std::vector<char> slot_used(n, 0);
    auto place = [&](int v, int slot) {
        slot = ((slot % n) + n) % n;
        if (slot_used[slot] || slot_of[v] != -1)
            throw std::runtime_error("decode: slot collision");
        slot_of[v] = slot;
        slot_used[slot] = 1;
    };

    // geometry of every component in smoothed-slot space
    std::vector<detail::ComponentGeometry> geo(num_comp);
    for (int c = 0; c < num_comp; ++c)
        geo[c] = detail::component_geometry_decode(s, root[c], x.alpha[c]);

    // pieces per hosting component via the A marks; their vertices place at
    // their origins straight away
    std::vector<std::vector<int>> piece_of_comp(num_comp);
    std::vector<char> in_piece(n, 0);
    int piece_idx = 0;
    for (int c = 0; c < num_comp; ++c) {
        auto [pa, pb] = x.A[c];
        if (pa < 0) continue;
        if (piece_idx >= static_cast<int>(x.rho.size()) ||
            piece_idx >= static_cast<int>(x.tau1.size()))
            throw std::runtime_error("decode: rho/tau too short");
        int dia = x.rho[piece_idx];
        if (dia < 0 || dia >= lay.chi) throw std::runtime_error("decode: rho range");
        const auto& g = geo[c];
        int off_a = INT32_MIN, off_b = INT32_MIN;
        for (std::size_t i = 0; i < g.verts.size(); ++i) {
            if (g.verts[i] == pa) off_a = g.offsets[i];
            if (g.verts[i] == pb) off_b = g.offsets[i];
        }
        if (off_a == INT32_MIN || off_b == INT32_MIN || off_b < off_a)
            throw std::runtime_error("decode: A marks not in component");
        int len = off_b - off_a + 1;
        std::vector<int> piece(len, -1);
        for (std::size_t i = 0; i < g.verts.size(); ++i)
            if (g.offsets[i] >= off_a && g.offsets[i] <= off_b)
                piece[g.offsets[i] - off_a] = g.verts[i];
        for (int v : piece) {
            if (v < 0) throw std::runtime_error("decode: piece window has holes");
            in_piece[v] = 1;
        }
        const auto& nb = rule.nbrs[dia];
        int t1 = x.tau1[piece_idx], t2 = x.tau2[piece_idx];
        if (t1 < 0 || t1 >= static_cast<int>(nb.size()))
            throw std::runtime_error("decode: tau1 out of range");
        int origin = nb[t1] - t2;
        for (int q = 0; q < len; ++q) place(piece[q], origin + q);
        piece_of_comp[c] = std::move(piece);
        ++piece_idx;
    }
    if (piece_idx != static_cast<int>(x.rho.size()))
        throw std::runtime_error("decode: rho entries unused");

    // anchoring diamonds must sit intact at their layout slots
    std::vector<char> anchored(num_comp, 0);
    std::vector<int> comp_diamond(num_comp, -1);
    for (int i = 0; i < lay.chi; ++i) {
        bool intact = true;
        for (int j = 0; j < 4; ++j)
            if (in_piece[lay.diamonds[i][j]]) intact = false;
        int c = comp[lay.diamonds[i][0]];
        if (intact && c >= 0) {
            anchored[c] = 1;
            if (comp_diamond[c] == -1) comp_diamond[c] = i;
        }
    }

    // original-slot offsets per component: re-open glue seams, pull vertices
    // past an inserted piece window back by its length
    std::vector<std::vector<int>> expanded(num_comp);
    std::vector<std::vector<int>> expanded_vert(num_comp);
    for (int c = 0; c < num_comp; ++c) {
        const auto& g = geo[c];
        std::vector<std::pair<int, int>> shifts; // (marker offset, gap)
        for (std::size_t j = 0; j < x.Aprime[c].size(); ++j) {
            int marker = x.Aprime[c][j];
            int moff = INT32_MIN;
            for (std::size_t i = 0; i < g.verts.size(); ++i)
                if (g.verts[i] == marker) moff = g.offsets[i];
            if (moff == INT32_MIN)
                throw std::runtime_error("decode: glue marker not in component");
            if (j >= x.fparts[c].size())
                throw std::runtime_error("decode: f parts missing");
            shifts.push_back({moff, x.fparts[c][j]});
        }
        std::sort(shifts.begin(), shifts.end());
        int piece_lo = INT32_MAX, piece_hi = INT32_MIN, piece_len = 0;
        if (!piece_of_comp[c].empty()) {
            piece_len = static_cast<int>(piece_of_comp[c].size());
            for (std::size_t i = 0; i < g.verts.size(); ++i)
                if (in_piece[g.verts[i]]) {
                    piece_lo = std::min(piece_lo, g.offsets[i]);
                    piece_hi = std::max(piece_hi, g.offsets[i]);
                }
        }
        for (std::size_t i = 0; i < g.verts.size(); ++i) {
            int v = g.verts[i];
            if (in_piece[v]) continue;
            int off = g.offsets[i];
            int adj = off;
            for (auto [thr, gap] : shifts)
                if (off > thr) adj += gap;
            if (piece_len > 0) {
                if (off > piece_hi) adj -= piece_len;
                else if (off >= piece_lo)
                    throw std::runtime_error("decode: non-piece vertex inside window");
            }
            expanded[c].push_back(adj);
            expanded_vert[c].push_back(v);
        }
    }

    // anchored components pin to their diamond's layout slot
    for (int c = 0; c < num_comp; ++c) {
        if (!anchored[c]) continue;
        int dia = comp_diamond[c];
        int u1 = lay.diamonds[dia][0];
        int off_u1 = INT32_MIN;
        for (std::size_t i = 0; i < expanded_vert[c].size(); ++i)
            if (expanded_vert[c][i] == u1) off_u1 = expanded[c][i];
        if (off_u1 == INT32_MIN)
            throw std::runtime_error("decode: anchor vertex missing");
        int base = lay.start_slots[dia];
        for (std::size_t i = 0; i < expanded_vert[c].size(); ++i)
            place(expanded_vert[c][i], base + expanded[c][i] - off_u1);
    }

    // remaining items in pi order onto minimal free slots
    std::vector<int> item_comp;
    for (int c = 0; c < num_comp; ++c)
        if (!anchored[c]) item_comp.push_back(c);
    int free_items = static_cast<int>(item_comp.size());
    std::vector<int> singles;
    for (int v = 0; v < n; ++v)
        if (comp[v] < 0) singles.push_back(v);
    int total_items = free_items + static_cast<int>(singles.size());
    if (static_cast<int>(x.pi.size()) != total_items)
        throw std::runtime_error("decode: pi length mismatch");

    int cursor = 0;
    auto next_free_slot = [&]() {
        while (cursor < n && slot_used[cursor]) ++cursor;
        if (cursor >= n) throw std::runtime_error("decode: no free slot left");
        return cursor;
    };
    for (int rank = 0; rank < total_items; ++rank) {
        int id = x.pi[rank];
        if (id < 0 || id >= total_items) throw std::runtime_error("decode: pi range");
        int kappa = next_free_slot();
        if (id < free_items) {
            int c = item_comp[id];
            int min_exp = INT32_MAX;
            for (int e : expanded[c]) min_exp = std::min(min_exp, e);
            int root_off = 0;
            for (auto [wid, off] : x.wrap_roots)
                if (wid == id) root_off = off;
            for (std::size_t i = 0; i < expanded_vert[c].size(); ++i)
                place(expanded_vert[c][i], kappa + expanded[c][i] - min_exp - root_off);
        } else {
            place(singles[id - free_items], kappa);
        }
    }

    for (int v = 0; v < n; ++v)
        if (slot_of[v] == -1) throw std::runtime_error("decode: vertex unplaced");
    Embedding f;
    f.n = n;
    f.k = 2;
    f.order.assign(n, -1);
    for (int v = 0; v < n; ++v) f.order[slot_of[v]] = v;
    return f;
}

// Tuple-count audit bound, Eq-(6.5) shape, in log space.
inline double preimage_bound_ln(int n, const LXC& s_shape, std::int64_t sigma,
                                std::int64_t ell_chi) {
    double base = s_shape.l * std::log(64.0) +
                  ln_factorial(n - s_shape.x + s_shape.c);
    std::int64_t cap = ell_chi / 2;
    double t1 = (s_shape.c / 6.0) * std::log(static_cast<double>(n)) +
                ln_choose(ell_chi, std::min(std::max<std::int64_t>(sigma, 0), cap));
    double t2 = ln_choose(ell_chi, std::min(std::max<std::int64_t>(s_shape.c + sigma, 0), cap));
    return base + std::max(t1, t2);
}

} // namespace spanlab

#endif
