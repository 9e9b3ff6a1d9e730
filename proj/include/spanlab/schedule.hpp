#ifndef SPANLAB_SCHEDULE_HPP
#define SPANLAB_SCHEDULE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fragment.hpp"

namespace spanlab {

// ------------------------------------------------------------ W sampling

// Uniform m-subset of the vertex pairs, avoiding `forbidden` edges by
// rejection with a cap, then by direct conditional sampling (the same
// distribution); rejections are reported.
struct SprinkleResult {
    std::vector<Edge> edges;
    int rejections = 0;
    bool direct_mode = false;
};

inline SprinkleResult sprinkle_edges(int n, std::int64_t m, const Graph* forbidden,
                                     std::uint64_t seed, int rejection_cap = 64) {
    std::vector<Edge> all;
    all.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            all.push_back({u, v});
    SprinkleResult out;
    Rng rng(derive_seed(seed, "sprinkle"));
    if (m < 0 || m > static_cast<std::int64_t>(all.size()))
        throw ParameterError("sprinkle: m outside [0, N]");
    auto draw = [&](const std::vector<Edge>& pool) {
        std::vector<Edge> w;
        std::vector<int> idx(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i) idx[i] = static_cast<int>(i);
        for (std::int64_t i = 0; i < m; ++i) {
            std::int64_t j = i + static_cast<std::int64_t>(rng.below(pool.size() - i));
            std::swap(idx[i], idx[j]);
            w.push_back(pool[idx[i]]);
        }
        return w;
    };
    if (!forbidden) {
        out.edges = draw(all);
        return out;
    }
    for (int attempt = 0; attempt < rejection_cap; ++attempt) {
        auto w = draw(all);
        bool clean = true;
        for (const auto& e : w)
            if (forbidden->has_edge(e)) {
                clean = false;
                break;
            }
        if (clean) {
            out.edges = std::move(w);
            out.rejections = attempt;
            return out;
        }
    }
    std::vector<Edge> allowed;
    for (const auto& e : all)
        if (!forbidden->has_edge(e)) allowed.push_back(e);
    if (m > static_cast<std::int64_t>(allowed.size()))
        throw ParameterError("sprinkle: m exceeds allowed pairs");
    out.edges = draw(allowed);
    out.rejections = rejection_cap;
    out.direct_mode = true;
    return out;
}

// --------------------------------------------------------- the Q sampler

struct SampleParams {
    int l0 = 0;              // admissibility: l(H) <= l0 + 5 chi
    int round_cap = 3;       // resampling rounds before the uniform pick
    int length_threshold = 4; // closed runs at least this long ground diamonds
    std::int64_t budget = 2'000'000;
    int restarts = 8;
    double stick_bias = 0.0;
    std::vector<std::pair<int, int>> ride_windows;
    std::uint64_t seed = 0;
    bool exact = false; // exhaustive-uniform draws, n <= 12
};

struct SampleOutcome {
    Fragment fragment;
    int rounds_used = 0;
    int grounded_diamonds = 0;
    bool run_sets_disjoint = true; // construction invariant across rounds
    bool halted_by_cap = false;
};

// One admissible draw from the (possibly grounded) pinned family.
inline SearchResult draw_copy(const Graph& host, const Graph& planted_graph,
                              const std::vector<int>& pins, int max_intersection,
                              const SampleParams& p, std::uint64_t round_salt,
                              std::optional<Rng>& pick_rng) {
    SquareSearcher searcher(host, 2);
    SearchOptions opt;
    opt.pins = pins;
    opt.planted = &planted_graph;
    opt.max_intersection = max_intersection;
    opt.budget = p.budget;
    opt.restarts = p.restarts;
    opt.stick_bias = p.stick_bias;
    opt.ride_windows = p.ride_windows;
    opt.seed = derive_seed(p.seed, "draw", round_salt);
    if (p.exact) {
        // enumerate all admissible members and pick uniformly
        opt.exact = true;
        std::vector<std::vector<int>> all;
        opt.on_solution = [&](const std::vector<int>& ord) {
            all.push_back(ord);
            return all.size() < 2'000'000;
        };
        SearchResult r = searcher.run(opt);
        if (!all.empty()) {
            if (!pick_rng) pick_rng.emplace(derive_seed(p.seed, "pick", round_salt));
            r.status = SearchStatus::found;
            r.embedding.n = host.n();
            r.embedding.k = 2;
            r.embedding.order = all[pick_rng->below(all.size())];
            r.intersection = searcher.intersection_of(r.embedding.order);
        }
        return r;
    }
    return searcher.run(opt);
}

// The resampling loop: draw an admissible copy; if its fragment has no long
// closed run, return it; otherwise ground a diamond at the two slots left of
// each inclusion-maximal long run and redraw. After round_cap rounds return
// a uniform pick among the drawn candidates.
inline SampleOutcome sample_fragment(const Embedding& f, const DiamondLayout& lay,
                                     const Graph& host, const SampleParams& p) {
    Graph planted_graph = embedding_graph(f);
    SampleOutcome out;
    std::vector<int> pins = lay.pins();
    int cap = p.l0 + 5 * lay.chi;
    std::optional<Rng> pick_rng;
    std::vector<Embedding> candidates;
    std::vector<std::set<std::pair<int, int>>> run_sets;
    int n = f.n;
    for (int round = 0; round < std::max(1, p.round_cap); ++round) {
        out.rounds_used = round + 1;
        SearchResult r = draw_copy(host, planted_graph, pins, cap, p,
                                   static_cast<std::uint64_t>(round), pick_rng);
        if (r.status != SearchStatus::found) {
            if (!candidates.empty()) break; // fall through to the uniform pick
            out.fragment = make_fragment(f, f);
            out.fragment.trivial = true;
            out.fragment.inconclusive = (r.status == SearchStatus::inconclusive);
            out.fragment.nodes = r.nodes;
            return out;
        }
        Fragment fr = make_fragment(f, r.embedding);
        fr.nodes = r.nodes;
        auto runs = closed_runs(fr.intersection, f);
        std::set<std::pair<int, int>> long_runs;
        for (auto rn : runs)
            if (rn.second >= p.length_threshold) long_runs.insert(rn);
        if (long_runs.empty()) {
            out.fragment = std::move(fr);
            return out;
        }
        for (const auto& prev : run_sets)
            for (const auto& rn : long_runs)
                if (prev.count(rn)) out.run_sets_disjoint = false;
        run_sets.push_back(long_runs);
        candidates.push_back(r.embedding);
        // ground a diamond crossing each long run at its leftmost vertices
        for (auto [start, len] : long_runs) {
            for (int off = -2; off < 2; ++off) {
                int slot = ((start + off) % n + n) % n;
                pins[slot] = f.order[slot]; // identity planted copy
            }
            ++out.grounded_diamonds;
        }
    }
    if (candidates.empty()) {
        out.fragment = make_fragment(f, f);
        out.fragment.trivial = true;
        return out;
    }
    if (!pick_rng) pick_rng.emplace(derive_seed(p.seed, "final-pick"));
    out.halted_by_cap = true;
    const Embedding& pick = candidates[pick_rng->below(candidates.size())];
    out.fragment = make_fragment(f, pick);
    return out;
}

// ------------------------------------------------------------- schedules

enum class PresetKind { square_days, coarse, sharp1, sharp2 };

inline std::string preset_name(PresetKind k) {
    switch (k) {
        case PresetKind::square_days: return "square_days";
        case PresetKind::coarse: return "coarse";
        case PresetKind::sharp1: return "sharp1";
        case PresetKind::sharp2: return "sharp2";
    }
    return "?";
}

struct ScheduleConfig {
    PresetKind preset = PresetKind::square_days;
    int n = 100;
    double eps = 0.1;
    double w = 0.0;     // 0 -> ln ln n
    double bigC = 4.0;  // the C of l0 and mu
    double coarse_B = 1.0;
    double sharp_delta = 0.25; // 1/delta rounds for sharp1
    int k = 2;                 // cycle power (d = 2k); square_days needs k = 2
    int population = 10;
    std::uint64_t seed = 1;
    std::int64_t search_budget = 2'000'000;
    int restarts = 8;
    double stick_bias = 0.0;
    int ride_run = 0;           // per-instance planted ride of this length (0 off)
    int round_cap = 3;          // Q-sampler resampling cap
    int rounds_override = -1;   // replace the preset's round count
    bool exact = false;         // exact-uniform draws (n <= 12)

    double w_effective() const {
        if (w > 0) return w;
        return std::max(1.0, std::log(std::log(static_cast<double>(n))));
    }
};

struct RoundRecord {
    std::int64_t m = 0;
    std::vector<int> fragment_sizes;       // per conclusive instance
    int inconclusive = 0;
    int trivial = 0;
    std::map<int, int> closed_run_histogram;
    // smoothing bookkeeping (square_days)
    int smoothing_events = 0;  // instances where pieces moved
    int pieces_moved = 0;
    int smoothing_refused = 0;
    int conservation_failures = 0;
    int witness_failures = 0;
    int long_run_after_smooth = 0;
    int roundtrips = 0;
    int roundtrip_failures = 0;
    double median_size = 0.0;
};

struct FragmentTrace {
    ScheduleConfig config;
    int chi = 0;
    int mu = 0;
    int l0 = 0;
    double beta = 0.0;
    std::vector<RoundRecord> rounds;
    int covered = 0;       // fragments covered by the final sprinkle
    int cover_total = 0;
    int w_rejections = 0;
    bool sampler_is_heuristic = true;
};

inline double median_of(std::vector<int> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t h = v.size() / 2;
    if (v.size() % 2) return v[h];
    return 0.5 * (v[h - 1] + v[h]);
}

namespace detail {

struct InstanceState {
    Embedding planted;
    DiamondLayout layout;
    Graph host;     // planted union all sprinkles so far
    Graph fragment; // nested: H_i subset of H_{i-1} subset of F
    bool alive = true;
};

} // namespace detail

// The multi-round driver. Fragments are nested subgraphs of the planted
// copy: each round searches the accumulated host for a fresh family member
// minimizing reuse of the previous fragment, and replaces the fragment by
// the intersection. square_days additionally cuts and smooths each round's
// fragment and checks the reconstruction round trip.
inline FragmentTrace run_schedule(const ScheduleConfig& cfg) {
    FragmentTrace trace;
    trace.config = cfg;
    int n = cfg.n;
    std::int64_t N = static_cast<std::int64_t>(n) * (n - 1) / 2;
    double w = cfg.w_effective();
    bool days = cfg.preset == PresetKind::square_days;
    if (days && cfg.k != 2)
        throw ParameterError("square_days preset needs the square family");
    int d = 2 * cfg.k;

    trace.chi = days ? std::max(1, chi_formula(n, w)) : 0;
    trace.mu = days ? mu_formula(n, w, cfg.bigC) : 0;
    trace.l0 = static_cast<int>(std::floor(cfg.bigC * std::sqrt(static_cast<double>(n))));
    trace.beta = days ? beta_formula(n, w) : 0.0;
    trace.sampler_is_heuristic = !cfg.exact;

    // round plan: first sprinkle, middle rounds, final cover sprinkle
    std::vector<std::int64_t> plan;
    std::int64_t cover_m = 0;
    double ref = std::pow(std::exp(1.0) / n, 2.0 / d);
    switch (cfg.preset) {
        case PresetKind::square_days: {
            plan.push_back(static_cast<std::int64_t>(
                std::floor((1.0 + cfg.eps) * std::sqrt(std::exp(1.0) / n) * N)));
            plan.push_back(static_cast<std::int64_t>(std::floor(cfg.eps * N / std::sqrt(n))));
            int R = static_cast<int>(std::ceil(
                        std::log(std::log(n) / std::log(std::log(n))) / std::log(1.5))) + 1;
            std::int64_t m2 = static_cast<std::int64_t>(
                std::ceil(cfg.eps * N / (std::log(std::log(n)) * std::sqrt(n))));
            for (int i = 0; i < R - 1; ++i) plan.push_back(m2);
            cover_m = static_cast<std::int64_t>(std::ceil(cfg.eps / std::sqrt(n) * N));
            break;
        }
        case PresetKind::coarse: {
            std::int64_t mprime =
                static_cast<std::int64_t>(std::floor(cfg.coarse_B * std::pow(n, -2.0 / d) * N));
            for (int i = 0; i < d; ++i) plan.push_back(mprime);
            cover_m = mprime;
            break;
        }
        case PresetKind::sharp1: {
            plan.push_back(static_cast<std::int64_t>(std::floor((1.0 + cfg.eps) * ref * N)));
            std::int64_t m0 =
                static_cast<std::int64_t>(std::floor(cfg.eps * std::pow(n, -2.0 / d) * N));
            int rounds = static_cast<int>(std::ceil(1.0 / cfg.sharp_delta)) - 1;
            for (int i = 0; i < rounds; ++i) plan.push_back(m0);
            cover_m = m0;
            break;
        }
        case PresetKind::sharp2: {
            plan.push_back(static_cast<std::int64_t>(std::floor((1.0 + cfg.eps) * ref * N)));
            plan.push_back(static_cast<std::int64_t>(
                std::floor(cfg.eps * std::pow(n, -2.0 / d) * N)));
            cover_m = plan.back();
            break;
        }
    }
    if (cfg.rounds_override > 0 && static_cast<int>(plan.size()) > cfg.rounds_override)
        plan.resize(cfg.rounds_override);
    // desk-scale densities can push the formulas past the number of pairs
    std::int64_t diamond_pairs = days ? 5LL * std::max(1, chi_formula(n, w)) : 0;
    for (std::size_t i = 0; i < plan.size(); ++i)
        plan[i] = std::min(plan[i], N - (i == 0 ? diamond_pairs : 0));
    cover_m = std::min(cover_m, N);

    // one fixed matching rule per experiment
    MatchingRule rule;
    if (days)
        rule = make_matching_rule(trace.chi, n, trace.beta,
                                  derive_seed(cfg.seed, "rule"));

    std::vector<detail::InstanceState> pop(cfg.population);
    for (int i = 0; i < cfg.population; ++i) {
        auto& st = pop[i];
        if (days) {
            auto [lay, f] = plant_diamonds(n, trace.chi, cfg.seed);
            st.layout = lay;
            st.planted = f;
        } else {
            st.planted = identity_embedding(n, cfg.k);
        }
        st.fragment = embedding_graph(st.planted);
        st.host = st.fragment;
    }

    // sqrt(n)/ln n degenerates below the diamond size at desk scale; the
    // grounding threshold must sit strictly above 4 or the planted diamonds
    // themselves would count as long runs
    int threshold_ground = std::max(
        5, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)) / std::log(n))));
    int cut_threshold = trace.mu + 4;
    int piece_len = trace.mu - 4;
    bool cutting_enabled = days && piece_len >= 2;

    for (std::size_t round = 0; round < plan.size(); ++round) {
        RoundRecord rec;
        rec.m = plan[round];
        for (int i = 0; i < cfg.population; ++i) {
            auto& st = pop[i];
            if (!st.alive) continue;
            std::uint64_t inst_seed = derive_seed(cfg.seed, "instance",
                                                  (round << 20) | static_cast<std::uint64_t>(i));
            const Graph* forbid = nullptr;
            Graph dg;
            if (days && round == 0) {
                dg = st.layout.diamond_graph();
                forbid = &dg;
            }
            SprinkleResult w_edges = sprinkle_edges(n, rec.m, forbid, inst_seed);
            trace.w_rejections += w_edges.rejections;
            st.host = graph_union(st.host, Graph(n, w_edges.edges));

            Fragment fr;
            SampleOutcome so;
            if (days) {
                SampleParams sp;
                sp.l0 = trace.l0;
                sp.round_cap = cfg.round_cap;
                sp.length_threshold = threshold_ground;
                sp.budget = cfg.search_budget;
                sp.restarts = cfg.restarts;
                sp.stick_bias = cfg.stick_bias;
                sp.seed = derive_seed(inst_seed, "sampler");
                sp.exact = cfg.exact;
                // later rounds hunt for copies reusing little of the current
                // fragment rather than little of F itself
                if (cfg.ride_run > 0) {
                    // one designated planted ride per instance keeps the
                    // cutting and smoothing machinery exercised; anchoring at
                    // a diamond keeps the ride aligned with the pinned slots
                    int dia = static_cast<int>(
                        Rng(derive_seed(inst_seed, "window")).below(st.layout.chi));
                    sp.ride_windows.push_back(
                        {st.layout.start_slots[dia], 4 + cfg.ride_run});
                }
                if (round == 0) {
                    so = sample_fragment(st.planted, st.layout, st.host, sp);
                    fr = so.fragment;
                } else {
                    SquareSearcher searcher(st.host, 2);
                    SearchOptions opt;
                    opt.pins = st.layout.pins();
                    opt.planted = &st.fragment;
                    opt.minimize = true;
                    opt.budget = cfg.search_budget;
                    opt.restarts = cfg.restarts;
                    opt.stick_bias = cfg.stick_bias;
                    opt.ride_windows = sp.ride_windows;
                    opt.seed = derive_seed(inst_seed, "round-search");
                    SearchResult r = searcher.run(opt);
                    if (r.status == SearchStatus::found) {
                        fr.planted = st.planted;
                        fr.found = r.embedding;
                        fr.intersection =
                            graph_intersection(st.fragment, embedding_graph(r.embedding));
                        fr.l = static_cast<int>(fr.intersection.edge_count());
                        fr.trivial = false;
                        fr.nodes = r.nodes;
                    } else {
                        fr.inconclusive = (r.status == SearchStatus::inconclusive);
                        fr.trivial = true;
                        fr.planted = st.planted;
                        fr.found = st.planted;
                        fr.intersection = st.fragment;
                        fr.l = static_cast<int>(st.fragment.edge_count());
                    }
                }
            } else {
                SquareSearcher searcher(st.host, cfg.k);
                SearchOptions opt;
                opt.pins.assign(n, -1);
                opt.pins[0] = st.planted.order[0];
                opt.planted = &st.fragment;
                opt.minimize = true;
                opt.budget = cfg.search_budget;
                opt.restarts = cfg.restarts;
                opt.seed = derive_seed(inst_seed, "round-search");
                SearchResult r = searcher.run(opt);
                if (r.status == SearchStatus::found) {
                    fr.planted = st.planted;
                    fr.found = r.embedding;
                    fr.intersection =
                        graph_intersection(st.fragment, embedding_graph(r.embedding));
                    fr.l = static_cast<int>(fr.intersection.edge_count());
                    fr.nodes = r.nodes;
                } else {
                    fr.inconclusive = (r.status == SearchStatus::inconclusive);
                    fr.trivial = true;
                    fr.planted = st.planted;
                    fr.found = st.planted;
                    fr.intersection = st.fragment;
                    fr.l = static_cast<int>(st.fragment.edge_count());
                }
            }

            if (fr.inconclusive) {
                ++rec.inconclusive;
                continue;
            }
            if (fr.trivial && days && round == 0) {
                ++rec.trivial;
                continue;
            }
            st.fragment = fr.intersection;
            rec.fragment_sizes.push_back(fr.l);
            for (auto [s0, len] : closed_runs(st.fragment, st.planted))
                ++rec.closed_run_histogram[len];

            if (days) {
                PieceCut cut;
                cut.core = st.fragment;
                if (cutting_enabled)
                    cut = cut_pieces(st.fragment, st.planted, piece_len, cut_threshold);
                SmoothResult sm = smooth(cut, st.layout, rule, st.planted, fr.found,
                                         st.fragment, cut_threshold);
                if (sm.refused) {
                    ++rec.smoothing_refused;
                    // round-trip the unsmoothed fragment: nothing moved
                    sm.refused = false;
                    sm.smoothed = st.fragment;
                    sm.witness = fr.found;
                    sm.piece_to_diamond.clear();
                    cut = PieceCut{};
                    cut.core = st.fragment;
                } else if (!cut.pieces.empty()) {
                    ++rec.smoothing_events;
                    rec.pieces_moved += static_cast<int>(cut.pieces.size());
                    if (!sm.conserved) ++rec.conservation_failures;
                    Graph wg = embedding_graph(sm.witness);
                    bool wit_ok = true;
                    for (const auto& e : sm.smoothed.edges())
                        if (!wg.has_edge(e)) wit_ok = false;
                    std::vector<int> sorted_w = sm.witness.order;
                    std::sort(sorted_w.begin(), sorted_w.end());
                    for (int v = 0; v < n; ++v)
                        if (sorted_w[v] != v) wit_ok = false;
                    if (!wit_ok) ++rec.witness_failures;
                    for (auto [s1, len] : closed_runs(sm.smoothed, sm.witness))
                        if (len >= cut_threshold) {
                            ++rec.long_run_after_smooth;
                            break;
                        }
                }
                // reconstruction round trip on every instance, with or
                // without moved pieces
                try {
                    ++rec.roundtrips;
                    ReconstructionContext ctx{sm.smoothed, st.layout, rule, cut, sm};
                    ReconstructionTuple x = encode_preimage(st.planted, ctx);
                    Embedding back = decode_preimage(x, sm.smoothed, st.layout, rule);
                    if (back.order != st.planted.order) ++rec.roundtrip_failures;
                } catch (const std::exception&) {
                    ++rec.roundtrip_failures;
                }
            }
        }
        rec.median_size = median_of(rec.fragment_sizes);
        trace.rounds.push_back(std::move(rec));
    }

    // final round: try to cover each surviving fragment with a fresh sprinkle
    for (int i = 0; i < cfg.population; ++i) {
        auto& st = pop[i];
        ++trace.cover_total;
        SprinkleResult w_edges =
            sprinkle_edges(n, cover_m, nullptr, derive_seed(cfg.seed, "cover", i));
        Graph wg(n, w_edges.edges);
        bool covered = true;
        for (const auto& e : st.fragment.edges())
            if (!wg.has_edge(e)) {
                covered = false;
                break;
            }
        if (covered) ++trace.covered;
    }
    return trace;
}

} // namespace spanlab

#endif
