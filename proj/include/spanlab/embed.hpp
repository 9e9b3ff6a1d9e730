#ifndef SPANLAB_EMBED_HPP
#define SPANLAB_EMBED_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace spanlab {

// A cycle-power copy realized as a cyclic vertex ordering (slot -> vertex).
// The root sits at slot 0; orientation is the slot direction.
struct Embedding {
    int n = 0;
    int k = 2; // k-th power of the cycle
    std::vector<int> order;

    std::vector<int> positions() const { // vertex -> slot
        std::vector<int> pos(n, -1);
        for (int i = 0; i < n; ++i) pos[order[i]] = i;
        return pos;
    }
};

inline Graph embedding_graph(const Embedding& e) {
    std::vector<Edge> es;
    es.reserve(static_cast<std::size_t>(e.n) * e.k);
    for (int i = 0; i < e.n; ++i)
        for (int j = 1; j <= e.k; ++j)
            es.push_back(mk_edge(e.order[i], e.order[(i + j) % e.n]));
    return Graph(e.n, std::move(es), 2 * e.k);
}

inline Embedding identity_embedding(int n, int k = 2) {
    Embedding e;
    e.n = n;
    e.k = k;
    e.order.resize(n);
    for (int i = 0; i < n; ++i) e.order[i] = i;
    return e;
}

inline bool embedding_valid_in(const Embedding& e, const Graph& host) {
    for (int i = 0; i < e.n; ++i)
        for (int j = 1; j <= e.k; ++j)
            if (!host.adjacent(e.order[i], e.order[(i + j) % e.n])) return false;
    return true;
}

// ------------------------------------------------------------- core search

enum class SearchStatus { found, none, inconclusive };

struct SearchResult {
    SearchStatus status = SearchStatus::none;
    Embedding embedding;
    std::int64_t nodes = 0;
    int intersection = -1; // pattern edges shared with the planted copy
};

struct SearchOptions {
    std::vector<int> pins;          // slot -> vertex, -1 when free
    const Graph* planted = nullptr; // edges reused from here are tracked
    int max_intersection = -1;      // reject orders above this (-1 = off)
    bool minimize = false;          // keep the best over all restarts
    bool exact = false;             // deterministic DFS, certifies "none"
    std::int64_t budget = 2'000'000;
    int restarts = 16;
    double stick_bias = 0.0;        // prefer riding the planted identity order
    // slots where riding the planted order comes first unconditionally
    std::vector<std::pair<int, int>> ride_windows; // (start slot, length)
    std::uint64_t seed = 0;
    // collection hook (exact mode): called per solution, return false to stop
    std::function<bool(const std::vector<int>&)> on_solution;
};

// Slot-by-slot backtracking construction of the k-th power of a Hamilton
// cycle inside `host`. Pinned slots carry fixed vertices (roots, diamond
// layouts, grounded diamonds). Exact mode exhausts the space within budget;
// heuristic mode runs randomized restarts with cost-ordered candidates.
class SquareSearcher {
public:
    SquareSearcher(const Graph& host, int k = 2) : host_(host), k_(k), n_(host.n()) {
        words_ = (n_ + 63) / 64;
    }

    SearchResult run(SearchOptions opt) {
        opt_ = std::move(opt);
        if (static_cast<int>(opt_.pins.size()) != n_) opt_.pins.assign(n_, -1);
        SearchResult best;
        best.status = SearchStatus::none;
        for (int v = 0; v < n_; ++v)
            if (host_.degree(v) < 2 * k_) return best; // spanning copy impossible
        if (static_cast<std::int64_t>(host_.edge_count()) <
            static_cast<std::int64_t>(n_) * k_)
            return best;

        // vertices whose slots sit inside a ride window stay out of the
        // wander pool so the ride finds them unused
        reserved_.clear();
        if (!opt_.ride_windows.empty()) {
            reserved_.assign(words_, 0);
            for (auto [ws, wl] : opt_.ride_windows)
                for (int j = 0; j < wl && j < n_; ++j) {
                    int v = (ws + j) % n_; // identity planted copy
                    reserved_[v / 64] |= 1ULL << (v % 64);
                }
        }

        int rounds = opt_.exact ? 1 : std::max(1, opt_.restarts);
        std::int64_t total_nodes = 0;
        bool any_budget_hit = false;
        for (int r = 0; r < rounds; ++r) {
            rng_ = Rng(derive_seed(opt_.seed, "square-search",
                                   static_cast<std::uint64_t>(r)));
            nodes_ = 0;
            budget_hit_ = false;
            stop_ = false;
            if (!init_state()) break; // pins conflict: no admissible copy
            found_order_.clear();
            dfs(0);
            total_nodes += nodes_;
            any_budget_hit = any_budget_hit || budget_hit_;
            if (!found_order_.empty()) {
                int inter = intersection_of(found_order_);
                if (best.status != SearchStatus::found || inter < best.intersection) {
                    best.status = SearchStatus::found;
                    best.embedding.n = n_;
                    best.embedding.k = k_;
                    best.embedding.order = found_order_;
                    best.intersection = inter;
                }
                if (!opt_.minimize) break;
            }
        }
        best.nodes = total_nodes;
        if (best.status != SearchStatus::found)
            best.status = any_budget_hit ? SearchStatus::inconclusive
                                         : SearchStatus::none;
        return best;
    }

    int intersection_of(const std::vector<int>& ord) const {
        if (!opt_.planted) return -1;
        int cnt = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = 1; j <= k_; ++j)
                if (opt_.planted->adjacent(ord[i], ord[(i + j) % n_])) ++cnt;
        return cnt;
    }

private:
    bool init_state() {
        order_.assign(n_, -1);
        used_.assign(words_, 0);
        inter_ = 0;
        for (int s = 0; s < n_; ++s) {
            int v = opt_.pins[s];
            if (v < 0) continue;
            if (is_used(v)) return false;
            order_[s] = v;
            used_[v / 64] |= 1ULL << (v % 64);
        }
        if (opt_.planted) {
            // planted links among pinned slots, counted once up front
            for (int s = 0; s < n_; ++s) {
                int v = order_[s];
                if (v < 0) continue;
                for (int j = 1; j <= k_; ++j) {
                    int u = order_[(s + j) % n_];
                    if (u >= 0 && opt_.planted->adjacent(v, u)) ++inter_;
                }
            }
        }
        return true;
    }

    bool is_used(int v) const { return (used_[v / 64] >> (v % 64)) & 1ULL; }

    // planted links from v at `slot` to already-placed neighbour slots; each
    // pattern edge is charged to its later-placed endpoint
    int placed_planted_links(int slot, int v) const {
        int cnt = 0;
        for (int j = 1; j <= k_; ++j) {
            for (int sgn : {-1, 1}) {
                int s = slot + sgn * j;
                s = (s % n_ + n_) % n_;
                int u = order_[s];
                if (u >= 0 && opt_.planted->adjacent(u, v)) ++cnt;
            }
        }
        return cnt;
    }

    void place(int slot, int v) {
        if (opt_.planted) inter_ += placed_planted_links(slot, v);
        order_[slot] = v;
        used_[v / 64] |= 1ULL << (v % 64);
    }
    void unplace(int slot, int v) {
        order_[slot] = -1;
        used_[v / 64] &= ~(1ULL << (v % 64));
        if (opt_.planted) inter_ -= placed_planted_links(slot, v);
    }

    // host adjacency of candidate v at `slot` against every already-known
    // neighbour slot (covers pins, the placed prefix, and the cyclic wrap)
    bool adjacency_ok(int slot, int v) const {
        for (int j = 1; j <= k_; ++j) {
            for (int sgn : {-1, 1}) {
                int s = slot + sgn * j;
                s = (s % n_ + n_) % n_;
                int u = order_[s];
                if (u >= 0 && !host_.adjacent(u, v)) return false;
            }
        }
        return true;
    }

    void dfs(int slot) {
        if (stop_) return;
        if (++nodes_ > opt_.budget) {
            budget_hit_ = true;
            stop_ = true;
            return;
        }
        while (slot < n_ && order_[slot] >= 0) {
            if (!pinned_ok(slot)) return;
            ++slot;
        }
        if (slot == n_) {
            if (opt_.planted && opt_.max_intersection >= 0 &&
                inter_ > opt_.max_intersection)
                return;
            if (opt_.on_solution) {
                if (!opt_.on_solution(order_)) stop_ = true;
                return;
            }
            found_order_ = order_;
            stop_ = true;
            return;
        }
        std::vector<int> cands = candidates(slot);
        if (!opt_.exact) order_candidates(slot, cands);
        for (int v : cands) {
            place(slot, v);
            if (!opt_.planted || opt_.max_intersection < 0 ||
                inter_ <= opt_.max_intersection)
                dfs(slot + 1);
            unplace(slot, v);
            if (stop_) return;
        }
    }

    // a pinned slot reached by the walk: backward links must hold
    bool pinned_ok(int slot) const {
        int v = order_[slot];
        for (int j = 1; j <= k_; ++j) {
            int s = slot - j;
            if (s < 0) break;
            int u = order_[s];
            if (u >= 0 && !host_.adjacent(u, v)) return false;
        }
        if (slot >= n_ - k_) {
            for (int j = 1; j <= k_; ++j) {
                int s = slot + j - n_;
                if (s < 0) continue;
                int u = order_[s];
                if (u >= 0 && !host_.adjacent(u, v)) return false;
            }
        }
        return true;
    }

    bool slot_in_window(int slot) const {
        for (auto [ws, wl] : opt_.ride_windows) {
            int rel = ((slot - ws) % n_ + n_) % n_;
            if (rel < wl) return true;
        }
        return false;
    }

    std::vector<int> candidates(int slot) const {
        std::vector<int> out;
        std::vector<std::uint64_t> mask(words_, ~0ULL);
        bool restricted = false;
        for (int j = 1; j <= k_; ++j) {
            int s = slot - j;
            if (s < 0) break;
            int u = order_[s];
            if (u < 0) continue;
            const std::uint64_t* row = host_.adj_row(u);
            for (int w = 0; w < words_; ++w) mask[w] &= row[w];
            restricted = true;
        }
        if (!restricted)
            for (int w = 0; w < words_; ++w) mask[w] = ~0ULL;
        bool windowed = !reserved_.empty() && !slot_in_window(slot);
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = mask[w] & ~used_[w];
            if (windowed) bits &= ~reserved_[w];
            if (w == words_ - 1 && n_ % 64) bits &= (1ULL << (n_ % 64)) - 1;
            while (bits) {
                int v = w * 64 + __builtin_ctzll(bits);
                bits &= bits - 1;
                if (adjacency_ok(slot, v)) out.push_back(v);
            }
        }
        return out;
    }

    void order_candidates(int slot, std::vector<int>& cands) {
        if (cands.size() <= 1) return;
        struct Scored {
            int v;
            int cost;
            std::uint64_t jitter;
        };
        std::vector<Scored> scored;
        scored.reserve(cands.size());
        for (int v : cands) {
            int cost = opt_.planted ? placed_planted_links(slot, v) : 0;
            scored.push_back({v, cost, rng_.next()});
        }
        std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
            if (a.cost != b.cost) return a.cost < b.cost;
            return a.jitter < b.jitter;
        });
        // stickiness: with the planted copy in identity order, the natural
        // ride continuation is (previous vertex + 1)
        int ride_next = -1;
        bool in_window = false;
        for (auto [ws, wl] : opt_.ride_windows) {
            int rel = ((slot - ws) % n_ + n_) % n_;
            if (rel < wl) in_window = true;
        }
        if (in_window) {
            // designated rides stay aligned with the planted slots so they
            // pass through pinned diamonds
            ride_next = slot % n_;
        } else if (opt_.stick_bias > 0.0 && slot > 0 && order_[slot - 1] >= 0 &&
                   rng_.uniform01() < opt_.stick_bias) {
            ride_next = (order_[slot - 1] + 1) % n_;
        }
        cands.clear();
        if (ride_next >= 0)
            for (auto& s : scored)
                if (s.v == ride_next) cands.push_back(s.v);
        for (auto& s : scored)
            if (cands.empty() || s.v != cands.front()) cands.push_back(s.v);
    }

    const Graph& host_;
    int k_, n_, words_;
    SearchOptions opt_;
    Rng rng_{0};
    std::vector<int> order_;
    std::vector<std::uint64_t> used_;
    std::vector<int> found_order_;
    std::vector<std::uint64_t> reserved_;
    int inter_ = 0;
    std::int64_t nodes_ = 0;
    bool budget_hit_ = false;
    bool stop_ = false;
};

// ------------------------------------------------- spanning-copy frontend

struct ContainResult {
    SearchStatus status = SearchStatus::none;
    std::optional<Embedding> embedding; // cycle powers only
    std::vector<int> mapping;           // canonical vertex -> host vertex
    std::int64_t nodes = 0;
};

inline ContainResult find_spanning_copy(const Graph& host, const FamilySpec& spec,
                                        std::int64_t budget = 100'000'000,
                                        std::uint64_t seed = 0, bool exact = true) {
    ContainResult res;
    if (spec.kind == FamilyKind::power_of_cycle) {
        int k = spec.power_k;
        if (host.n() < 2 * k + 1)
            throw ParameterError("host too small for power_of_cycle(" +
                                 std::to_string(k) + ")");
        SquareSearcher searcher(host, k);
        SearchOptions opt;
        opt.pins.assign(host.n(), -1);
        opt.pins[0] = 0; // rotation symmetry: vertex 0 sits at some slot
        opt.exact = exact;
        opt.budget = budget;
        opt.seed = seed;
        opt.restarts = exact ? 1 : 32;
        SearchResult r = searcher.run(opt);
        res.status = r.status;
        res.nodes = r.nodes;
        if (r.status == SearchStatus::found) {
            res.embedding = r.embedding;
            res.mapping = r.embedding.order;
        }
        return res;
    }
    // generic families: embed the canonical instance by backtracking in BFS order
    Graph canon = build_family(spec, host.n());
    std::vector<int> order;
    std::vector<char> seen(canon.n(), 0);
    for (int s = 0; s < canon.n(); ++s) {
        if (seen[s]) continue;
        std::vector<int> queue{s};
        seen[s] = 1;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int v = queue[q];
            order.push_back(v);
            for (int w : canon.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        }
    }
    std::vector<int> image(canon.n(), -1);
    std::vector<char> used(host.n(), 0);
    std::int64_t nodes = 0;
    bool hit_budget = false;
    std::vector<int> found;
    auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (++nodes > budget) {
            hit_budget = true;
            return false;
        }
        if (idx == order.size()) {
            found = image;
            return true;
        }
        int v = order[idx];
        for (int cand = 0; cand < host.n(); ++cand) {
            if (used[cand] || host.degree(cand) < canon.degree(v)) continue;
            bool ok = true;
            for (int w : canon.neighbors(v))
                if (image[w] != -1 && !host.adjacent(cand, image[w])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            image[v] = cand;
            used[cand] = 1;
            if (self(self, idx + 1)) return true;
            used[cand] = 0;
            image[v] = -1;
            if (hit_budget) return false;
        }
        return false;
    };
    bool ok = rec(rec, 0);
    res.nodes = nodes;
    if (ok) {
        res.status = SearchStatus::found;
        res.mapping = found;
    } else {
        res.status = hit_budget ? SearchStatus::inconclusive : SearchStatus::none;
    }
    return res;
}

// ----------------------------------------------------- copy enumeration

// All distinct square-of-cycle copies on K_n as bitmasks over the C(n,2)
// vertex pairs; needs 7 <= n <= 11 so the dihedral canonical form is valid.
inline std::vector<std::uint64_t> all_square_copies_pairmask(int n) {
    if (n < 7 || n > 11) throw ParameterError("copy enumeration needs 7 <= n <= 11");
    auto pair_index = [n](int u, int v) {
        if (u > v) std::swap(u, v);
        return u * n - u * (u + 1) / 2 + (v - u - 1);
    };
    std::vector<std::uint64_t> out;
    std::vector<int> order(n, -1);
    std::vector<char> used(n, 0);
    order[0] = 0;
    used[0] = 1;
    auto rec = [&](auto&& self, int slot) -> void {
        if (slot == n) {
            if (order[1] > order[n - 1]) return; // one orientation per copy
            std::uint64_t mask = 0;
            for (int i = 0; i < n; ++i) {
                mask |= 1ULL << pair_index(order[i], order[(i + 1) % n]);
                mask |= 1ULL << pair_index(order[i], order[(i + 2) % n]);
            }
            out.push_back(mask);
            return;
        }
        for (int v = 1; v < n; ++v) {
            if (used[v]) continue;
            order[slot] = v;
            used[v] = 1;
            self(self, slot + 1);
            used[v] = 0;
        }
        order[slot] = -1;
    };
    rec(rec, 1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::uint64_t graph_pairmask(const Graph& g) {
    int n = g.n();
    if (n * (n - 1) / 2 > 64) throw ParameterError("pairmask needs C(n,2) <= 64");
    auto pair_index = [n](int u, int v) {
        return u * n - u * (u + 1) / 2 + (v - u - 1);
    };
    std::uint64_t mask = 0;
    for (auto [u, v] : g.edges()) mask |= 1ULL << pair_index(u, v);
    return mask;
}

// Cyclic square orderings with vertex 0 at slot 0 inside host, counted by
// exhaustive backtracking; copies = sequences / 2 for n >= 7.
inline std::uint64_t count_square_sequences(const Graph& host,
                                            std::int64_t budget = INT64_MAX / 4) {
    SquareSearcher searcher(host, 2);
    SearchOptions opt;
    opt.pins.assign(host.n(), -1);
    opt.pins[0] = 0;
    opt.exact = true;
    opt.budget = budget;
    std::uint64_t count = 0;
    opt.on_solution = [&](const std::vector<int>&) {
        ++count;
        return true;
    };
    searcher.run(opt);
    return count;
}

// ------------------------------------------------------------ fragments

struct Fragment {
    Embedding planted;
    Embedding found;
    Graph intersection;
    int l = 0;
    bool trivial = false;      // found == planted (no alternative copy)
    bool inconclusive = false; // budget exhausted before an admissible draw
    std::int64_t nodes = 0;
};

inline Fragment make_fragment(const Embedding& f, const Embedding& fp) {
    Fragment fr;
    fr.planted = f;
    fr.found = fp;
    fr.intersection = graph_intersection(embedding_graph(f), embedding_graph(fp));
    fr.l = static_cast<int>(fr.intersection.edge_count());
    fr.trivial = (f.order == fp.order);
    return fr;
}

// Search F union W for another family copy and return the fragment it cuts
// out of the planted one. Exact mode exhausts the space (n <= 12) and, when
// minimizing, reports the true minimum intersection; the heuristic keeps
// the best over seeded restarts. A budget hit with nothing better than F
// itself comes back as the trivial fragment.
inline Fragment anchored_copy_search(const Embedding& f, const Graph& w,
                                     bool minimize, std::int64_t budget,
                                     std::uint64_t seed, int restarts = 16,
                                     bool exact = false) {
    Graph fg = embedding_graph(f);
    Graph host = graph_union(fg, w);
    SquareSearcher searcher(host, f.k);
    SearchOptions opt;
    opt.pins.assign(f.n, -1);
    opt.pins[0] = f.order[0];
    opt.planted = &fg;
    opt.minimize = minimize;
    opt.budget = budget;
    opt.restarts = restarts;
    opt.seed = seed;
    Fragment fr;
    if (exact && minimize) {
        opt.exact = true;
        int best = INT32_MAX;
        std::vector<int> best_order;
        opt.on_solution = [&](const std::vector<int>& ord) {
            int inter = searcher.intersection_of(ord);
            if (inter < best) {
                best = inter;
                best_order = ord;
            }
            return true;
        };
        SearchResult r = searcher.run(opt);
        if (!best_order.empty()) {
            fr = make_fragment(f, Embedding{f.n, f.k, best_order});
            fr.nodes = r.nodes;
            return fr;
        }
        fr = make_fragment(f, f);
        fr.inconclusive = (r.status == SearchStatus::inconclusive);
        fr.nodes = r.nodes;
        return fr;
    }
    opt.exact = exact;
    SearchResult r = searcher.run(opt);
    if (r.status == SearchStatus::found) {
        fr = make_fragment(f, r.embedding);
    } else {
        fr = make_fragment(f, f);
        fr.inconclusive = (r.status == SearchStatus::inconclusive);
    }
    fr.nodes = r.nodes;
    return fr;
}

// Maximal runs of consecutive planted-order vertices whose square-path
// edges all lie in H (the closed subgraphs of a fragment), as
// (start slot, vertex length >= 2) in planted-slot space.
inline std::vector<std::pair<int, int>> closed_runs(const Graph& h,
                                                    const Embedding& f) {
    int n = f.n;
    const auto& ord = f.order;
    auto ok1 = [&](int i) { return h.adjacent(ord[i % n], ord[(i + 1) % n]); };
    auto ok2 = [&](int i) { return h.adjacent(ord[i % n], ord[(i + 2) % n]); };
    std::vector<int> max_len(n, 1);
    for (int i = 0; i < n; ++i) {
        int len = 1;
        while (len < n) {
            bool grow = ok1(i + len - 1) && (len < 2 || ok2(i + len - 2));
            if (!grow) break;
            ++len;
        }
        max_len[i] = len;
    }
    std::vector<std::pair<int, int>> runs;
    for (int i = 0; i < n; ++i) {
        if (max_len[i] < 2) continue;
        if (max_len[i] >= n) {
            runs.clear();
            runs.push_back({0, n});
            return runs;
        }
        int prev = (i + n - 1) % n;
        if (max_len[prev] >= max_len[i] + 1) continue; // dominated
        runs.push_back({i, max_len[i]});
    }
    return runs;
}

} // namespace spanlab

#endif
