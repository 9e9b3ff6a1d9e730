#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "spanlab/census.hpp"

using namespace spanlab;

TEST_CASE("excess values for d = 4") {
    CHECK(excess(4, {5, 4, 1}) == 0.0);  // diamond
    CHECK(excess(4, {2, 4, 2}) == 0.0);  // two disjoint edges
    CHECK(excess(4, {4, 4, 1}) == 1.0);  // 4-cycle
    CHECK_THROWS_AS(excess(4, {1, 3, 1}), ParameterError); // x > l + c
    CHECK_THROWS_AS(excess(4, {3, 2, 2}), ParameterError); // x < 2c
}

TEST_CASE("excess is additive over disjoint unions") {
    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        int d = 3 + static_cast<int>(rng.below(4));
        CensusKey a{1 + static_cast<int>(rng.below(8)), 0,
                    1 + static_cast<int>(rng.below(3))};
        CensusKey b{1 + static_cast<int>(rng.below(8)), 0,
                    1 + static_cast<int>(rng.below(3))};
        if (a.c > a.l || b.c > b.l) continue;
        // make x admissible for each
        auto pick_x = [&](CensusKey& k) {
            std::int64_t lo = (2 * k.l + delta_of(d) * k.c + d - 1) / d;
            lo = std::max<std::int64_t>(lo, 2 * k.c);
            std::int64_t hi = k.l + k.c;
            if (lo > hi) return false;
            k.x = static_cast<int>(lo + rng.below(hi - lo + 1));
            return true;
        };
        if (!pick_x(a) || !pick_x(b)) continue;
        if (sigma2_of(d, a) < 0 || sigma2_of(d, b) < 0) continue;
        CensusKey u{a.l + b.l, a.x + b.x, a.c + b.c};
        CHECK(sigma2_of(d, u) == sigma2_of(d, a) + sigma2_of(d, b));
    }
}

TEST_CASE("full census of the square of C_10") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 10);
    CensusTable t = census_powerset(f);
    CHECK(t.total_count() == (1u << 20) - 1); // every nonempty edge subset
    CHECK(t.buckets.at({1, 2, 1}).count == 20);
    CHECK(t.buckets.at({5, 4, 1}).count == 10); // one diamond per window
    // direct recount of 4-vertex 5-edge connected subsets
    std::uint64_t diamonds = 0;
    for (std::uint32_t mask = 1; mask < (1u << 20); ++mask) {
        if (__builtin_popcount(mask) != 5) continue;
        std::set<int> vs;
        for (int i = 0; i < 20; ++i)
            if (mask >> i & 1) {
                vs.insert(f.edges()[i].first);
                vs.insert(f.edges()[i].second);
            }
        if (vs.size() == 4) ++diamonds;
    }
    CHECK(t.buckets.at({5, 4, 1}).count + 0 == diamonds); // all are connected here
}

TEST_CASE("census engines agree bucket by bucket") {
    for (int n : {8, 10}) {
        Graph f = build_family(FamilySpec::square_of_cycle(), n);
        CensusTable a = census_powerset(f);
        CensusTable b = census_connected_growth(f, static_cast<int>(f.edge_count()));
        CHECK_FALSE(b.partial);
        REQUIRE(a.buckets.size() == b.buckets.size());
        for (const auto& [k, e] : a.buckets) {
            REQUIRE(b.buckets.count(k) == 1);
            CHECK(b.buckets.at(k).count == e.count);
        }
    }
}

TEST_CASE("edge-limited connected-growth census flags itself partial") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 10);
    CensusTable t = census_connected_growth(f, 8);
    CHECK(t.partial);
    CHECK(t.lmax_reached == 8);
    // completed levels agree with the powerset engine
    CensusTable full = census_powerset(f);
    for (const auto& [k, e] : t.buckets) {
        REQUIRE(k.l <= 8);
        CHECK(full.buckets.at(k).count == e.count);
    }
    // a too-small enumeration budget errors instead of lying
    CHECK_THROWS_AS(census_connected_growth(f, 20, 1'000), BudgetError);
}

TEST_CASE("extension counting on the square of C_8") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 8);
    std::int64_t aut = automorphism_count(f);
    REQUIRE(aut == 16);
    SECTION("the full copy extends only to itself") {
        CHECK(count_extensions(f, f, aut) == 1);
    }
    SECTION("the empty graph extends to every copy") {
        Graph empty(8, {});
        CHECK(count_extensions(empty, f, aut) == 40320 / 16);
    }
    SECTION("a single edge: cross-checked against |F_8| * P(edge in copy)") {
        Graph edge(8, {{0, 1}});
        // 2520 copies, each contains 16 of the 28 pairs by symmetry
        CHECK(count_extensions(edge, f, aut) == 2520 * 16 / 28);
        CHECK(count_extensions(edge, f, aut) == 1440);
    }
    SECTION("mon * (n-x)! = ext * |Aut| integrality on random subsets") {
        Rng rng(5);
        const auto& es = f.edges();
        for (int t = 0; t < 200; ++t) {
            std::vector<Edge> sub;
            for (const auto& e : es)
                if (rng.bernoulli(0.4)) sub.push_back(e);
            Graph h(8, sub);
            std::uint64_t mon = count_monomorphisms(h, f);
            int x = 0;
            for (int v = 0; v < 8; ++v)
                if (h.degree(v) > 0) ++x;
            unsigned __int128 full = mon;
            for (int i = 2; i <= 8 - x; ++i) full *= static_cast<unsigned>(i);
            CHECK(full % 16 == 0);
            CHECK(count_extensions(h, f, aut) ==
                  static_cast<std::uint64_t>(full / 16));
        }
    }
}

TEST_CASE("alpha bound evaluates the stated formula") {
    // key (1,2,1): sigma = 0, bound = C(10,1) C(2,1) e^{a1} = 20 e
    double ln_b = alpha_bound_ln(4, 10, {1, 2, 1}, 1, 1);
    CHECK(std::exp(ln_b) == Catch::Approx(20.0 * std::exp(1.0)).epsilon(1e-12));
    CHECK(count_le_bound(20, ln_b));
    // sigma = 0 collapses the max-binomial factor to 1
    double with_large_a2 = alpha_bound_ln(4, 10, {1, 2, 1}, 1, 9);
    CHECK(ln_b == Catch::Approx(with_large_a2));
    CHECK_THROWS_AS(alpha_bound_ln(4, 10, {20, 10, 1}, 1, 1), ParameterError);
}

TEST_CASE("jhc bound on census buckets") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 10);
    CensusTable t = census_powerset(f);
    double ln_b = jhc_bound_ln(20, 10, {1, 2, 1}, 4);
    CHECK(std::exp(ln_b) == Catch::Approx(640.0).epsilon(1e-9));
    for (const auto& [k, e] : t.buckets)
        CHECK(count_le_bound(e.count, jhc_bound_ln(20, 10, k, 4)));
    CHECK_THROWS_AS(jhc_bound_ln(20, 10, {1, 2, 0}, 4), ParameterError);
}

TEST_CASE("calibrated constants make both bounds hold on the reference census") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 10);
    std::int64_t aut = automorphism_count(f);
    CensusTable t = census_powerset(f, true, aut);
    auto cal = calibrate_constants(t, aut);
    REQUIRE(cal.alpha_ok);
    REQUIRE(cal.beta_ok);
    for (const auto& [k, e] : t.buckets) {
        if (!e.in_window || sigma2_of(4, k) < 0) continue;
        CHECK(count_le_bound(e.count,
                             alpha_bound_ln(4, 10, k, cal.consts.a1, cal.consts.a2)));
        CHECK(count_le_bound(
            e.ext_max, beta_bound_ln(4, 10, k, cal.consts.b1, cal.consts.b2, aut)));
    }
    // minimality: lowering the sum breaks at least one bucket
    bool alpha_tight = true;
    if (cal.consts.a1 + cal.consts.a2 > 0) {
        alpha_tight = false;
        for (std::int64_t a1 = 0; a1 <= cal.consts.a1 + cal.consts.a2 - 1; ++a1) {
            std::int64_t a2 = cal.consts.a1 + cal.consts.a2 - 1 - a1;
            bool ok = true;
            for (const auto& [k, e] : t.buckets) {
                if (!e.in_window || sigma2_of(4, k) < 0) continue;
                if (!count_le_bound(e.count, alpha_bound_ln(4, 10, k, a1, a2))) ok = false;
            }
            if (!ok) alpha_tight = true;
        }
    }
    CHECK(alpha_tight);
}

TEST_CASE("spread profile") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 8);
    std::int64_t aut = automorphism_count(f);
    auto rep = spread_profile_exhaustive(f, aut);
    CHECK(rep.family_size == 2520);
    CHECK(rep.examined == (1u << 16) - 1);
    // the single-edge ratio alone gives per-edge spread (16/28) * sqrt(8)
    CHECK(rep.max_per_edge_spread >=
          (16.0 / 28.0) * std::sqrt(8.0) - 1e-9);
    auto sampled = spread_profile_sampled(f, aut, 64, 3);
    CHECK(sampled.max_per_edge_spread <= rep.max_per_edge_spread + 1e-9);
}

TEST_CASE("component automorphisms stay under x (d-1)^x") {
    // the cited bound for connected components, checked on every connected
    // subgraph of the square of C_8
    Graph f = build_family(FamilySpec::square_of_cycle(), 8);
    int checked = 0;
    for (std::uint32_t mask = 1; mask < (1u << 16); mask += 7) {
        std::vector<Edge> es;
        for (int i = 0; i < 16; ++i)
            if (mask >> i & 1) es.push_back(f.edges()[i]);
        Graph h(8, es);
        auto s = lxc_of(h);
        if (s.c != 1) continue;
        std::int64_t aut = automorphism_count_brute(h);
        // isolated vertices inflate brute-force counts; strip them
        double bound = s.x * std::pow(3.0, static_cast<double>(s.x));
        double iso_perms = std::tgamma(8 - s.x + 1.0);
        CHECK(static_cast<double>(aut) <= bound * iso_perms);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("expectation threshold against the reference scaling") {
    // d = 4, |Aut| = 2n
    double p50 = expectation_threshold(100, 50, 4);
    CHECK(p50 / std::sqrt(std::exp(1.0) / 50.0) == Catch::Approx(1.0).margin(0.02));
    double p200 = expectation_threshold(400, 200, 4);
    CHECK(p200 / std::sqrt(std::exp(1.0) / 200.0) == Catch::Approx(1.0).margin(0.01));
    // tiny n stays well defined and positive
    CHECK(expectation_threshold(120, 5, 4) > 0.0);
    CHECK(reference_threshold(100, 4) == Catch::Approx(0.1648721).epsilon(1e-6));
    CHECK(reference_threshold(64, 6) ==
          Catch::Approx(std::pow(std::exp(1.0) / 64.0, 1.0 / 3.0)).epsilon(1e-12));
}
