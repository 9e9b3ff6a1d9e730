#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "spanlab/schedule.hpp"

using namespace spanlab;

TEST_CASE("sprinkling avoids forbidden edges and reports the mode") {
    auto [lay, f] = plant_diamonds(40, 3);
    Graph dg = lay.diamond_graph();
    SprinkleResult r = sprinkle_edges(40, 300, &dg, 5);
    CHECK(r.edges.size() == 300);
    for (const auto& e : r.edges) CHECK_FALSE(dg.has_edge(e));
    // dense draws force the direct conditional mode
    SprinkleResult dense = sprinkle_edges(40, 700, &dg, 6);
    CHECK(dense.edges.size() == 700);
    for (const auto& e : dense.edges) CHECK_FALSE(dg.has_edge(e));
    // reproducibility
    SprinkleResult again = sprinkle_edges(40, 300, &dg, 5);
    CHECK(again.edges == r.edges);
}

TEST_CASE("sample_fragment degenerate cases") {
    int n = 12;
    auto [lay, f] = plant_diamonds(n, 1);
    Graph host = embedding_graph(f); // W = empty
    SampleParams p;
    p.l0 = 4;
    p.round_cap = 2;
    p.length_threshold = 4;
    p.exact = true;
    p.seed = 3;
    SECTION("W empty leaves only the trivial fragment") {
        SampleOutcome out = sample_fragment(f, lay, host, p);
        CHECK(out.fragment.trivial);
        CHECK(out.fragment.l == 24);
    }
    SECTION("threshold above n returns the first admissible draw") {
        std::vector<Edge> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) es.push_back({u, v});
        Graph full(n, es);
        p.length_threshold = n + 1;
        p.l0 = 24;
        SampleOutcome out = sample_fragment(f, lay, full, p);
        CHECK_FALSE(out.fragment.trivial);
        CHECK(out.rounds_used == 1);
        CHECK(out.fragment.l <= p.l0 + 5 * lay.chi);
        // the draw honours the diamond pins
        for (int i = 0; i < 4; ++i)
            CHECK(out.fragment.found.order[i] == f.order[i]);
    }
    SECTION("admissibility cap is enforced by rejection") {
        std::vector<Edge> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) es.push_back({u, v});
        Graph full(n, es);
        p.length_threshold = n + 1;
        p.l0 = 3; // cap = 8: copies always share the 5 diamond edges
        SampleOutcome out = sample_fragment(f, lay, full, p);
        if (!out.fragment.trivial) CHECK(out.fragment.l <= 8);
    }
}

TEST_CASE("grounded resampling keeps run sets disjoint") {
    int n = 14;
    auto [lay, f] = plant_diamonds(n, 1);
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.push_back({u, v});
    Graph full(n, es);
    SampleParams p;
    p.l0 = 28;
    p.round_cap = 3;
    p.length_threshold = 4; // aggressive grounding
    p.exact = true;
    p.seed = 11;
    SampleOutcome out = sample_fragment(f, lay, full, p);
    CHECK(out.run_sets_disjoint);
}

TEST_CASE("schedule plans pin the day formulas") {
    ScheduleConfig cfg;
    cfg.preset = PresetKind::square_days;
    cfg.n = 100;
    cfg.eps = 0.1;
    cfg.population = 0; // plan only, no instances
    FragmentTrace t = run_schedule(cfg);
    REQUIRE(t.rounds.size() >= 2);
    CHECK(t.rounds[0].m == 897); // floor(1.1 sqrt(e/100) * 4950)
    CHECK(t.rounds[1].m == 49);  // floor(0.1 * 4950 / 10)
    // day-2 rounds: R - 1 with R = ceil(log_1.5(ln n / ln ln n)) + 1 = 4
    CHECK(t.rounds.size() == 2 + 3);
    CHECK(t.rounds[2].m == 33); // ceil(0.1 * 4950 / (ln ln 100 * 10))
    CHECK(t.cover_total == 0);
    CHECK(t.chi == std::max(1, chi_formula(100, t.config.w_effective())));
}

TEST_CASE("coarse and sharp presets") {
    ScheduleConfig cfg;
    cfg.preset = PresetKind::coarse;
    cfg.n = 64;
    cfg.coarse_B = 1.0;
    cfg.k = 2;
    cfg.population = 0;
    FragmentTrace t = run_schedule(cfg);
    CHECK(t.rounds.size() == 4); // d rounds
    CHECK(t.rounds[0].m ==
          static_cast<std::int64_t>(std::floor(std::pow(64.0, -0.5) * 2016)));

    cfg.preset = PresetKind::sharp1;
    cfg.sharp_delta = 0.34;
    cfg.eps = 0.2;
    FragmentTrace s1 = run_schedule(cfg);
    CHECK(s1.rounds.size() == 3); // 1 + (ceil(1/delta) - 1)

    cfg.preset = PresetKind::sharp2;
    FragmentTrace s2 = run_schedule(cfg);
    CHECK(s2.rounds.size() == 2);
}

TEST_CASE("a tiny exact square_days run is deterministic and nested") {
    ScheduleConfig cfg;
    cfg.preset = PresetKind::square_days;
    cfg.n = 12;
    cfg.eps = 4.0; // desk-scale density so exact search finds copies
    cfg.w = 1.0;
    cfg.bigC = 1.0;
    cfg.population = 2;
    cfg.seed = 5;
    cfg.exact = true;
    cfg.round_cap = 2;
    cfg.rounds_override = 2;
    FragmentTrace a = run_schedule(cfg);
    FragmentTrace b = run_schedule(cfg);
    REQUIRE(a.rounds.size() == b.rounds.size());
    for (std::size_t r = 0; r < a.rounds.size(); ++r) {
        CHECK(a.rounds[r].fragment_sizes == b.rounds[r].fragment_sizes);
        CHECK(a.rounds[r].m == b.rounds[r].m);
    }
    CHECK(a.covered == b.covered);
    // medians never increase across rounds (fragments are nested)
    double prev = 1e18;
    for (const auto& r : a.rounds) {
        if (r.fragment_sizes.empty()) continue;
        CHECK(r.median_size <= prev + 1e-9);
        prev = r.median_size;
    }
}
