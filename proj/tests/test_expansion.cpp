#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "spanlab/expansion.hpp"

using namespace spanlab;

namespace {

// independent oracle: filter all vertex subsets directly
std::vector<std::uint64_t> closed_by_filter(const Graph& f, int v_max) {
    int n = f.n();
    int delta = delta_of(f.regular_degree());
    std::vector<std::uint64_t> out;
    for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
        int size = __builtin_popcountll(mask);
        if (size < 3 || size > v_max) continue;
        if (edge_boundary_mask(f, mask) != delta) continue;
        // connectivity of the induced subgraph
        std::uint64_t seen = mask & (~mask + 1);
        for (;;) {
            std::uint64_t grow = seen;
            std::uint64_t rest = seen;
            while (rest) {
                int v = __builtin_ctzll(rest);
                rest &= rest - 1;
                grow |= f.adj64(v) & mask;
            }
            if (grow == seen) break;
            seen = grow;
        }
        if (seen == mask) out.push_back(mask);
    }
    return out;
}

} // namespace

TEST_CASE("edge boundary values") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 8);
    CHECK(edge_boundary(f, {0, 1, 2, 3}) == 6); // a diamond: d + 2
    std::vector<int> all(8);
    for (int i = 0; i < 8; ++i) all[i] = i;
    CHECK(edge_boundary(f, all) == 0);
    CHECK(edge_boundary(f, {}) == 0);
    // identity d|S| - 2 l(F[S]) over random subsets
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        std::uint64_t mask = rng.next() & 0xFF;
        std::int64_t induced = 0;
        for (auto [u, v] : f.edges())
            if ((mask >> u & 1) && (mask >> v & 1)) ++induced;
        CHECK(edge_boundary_mask(f, mask) ==
              4 * __builtin_popcountll(mask) - 2 * induced);
    }
}

TEST_CASE("a K4 subset of a 4-regular host has boundary 4, never Delta") {
    Graph f = build_family(FamilySpec::random_regular(4, 3), 12);
    for (std::uint64_t mask = 1; mask < (1ULL << 12); ++mask) {
        if (__builtin_popcountll(mask) != 4) continue;
        std::int64_t induced = 0;
        for (auto [u, v] : f.edges())
            if ((mask >> u & 1) && (mask >> v & 1)) ++induced;
        if (induced == 6) CHECK(edge_boundary_mask(f, mask) == 4);
    }
}

TEST_CASE("closed subgraphs of the square of C_10 are the windows") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 10);
    auto closed = enumerate_closed_subgraphs(f, 6);
    CHECK(closed.size() == 40); // 10 windows for each v in {3,..,6}
    std::map<int, int> by_size;
    for (auto m : closed) ++by_size[__builtin_popcountll(m)];
    for (int v = 3; v <= 6; ++v) CHECK(by_size[v] == 10);
    // each is a cyclic window of consecutive vertices
    for (auto m : closed) {
        auto vs = mask_to_vec(m);
        int size = static_cast<int>(vs.size());
        bool window = false;
        for (int s = 0; s < 10 && !window; ++s) {
            std::uint64_t w = 0;
            for (int j = 0; j < size; ++j) w |= 1ULL << ((s + j) % 10);
            window = (w == m);
        }
        CHECK(window);
    }
    auto oracle = closed_by_filter(f, 6);
    CHECK(closed == oracle);
}

TEST_CASE("closed enumeration agrees with the naive filter on random hosts") {
    for (std::uint64_t seed : {1ULL, 2ULL}) {
        Graph f = build_family(FamilySpec::random_regular(4, seed), 12);
        auto fast = enumerate_closed_subgraphs(f, 9);
        auto slow = closed_by_filter(f, 9);
        CHECK(fast == slow);
    }
}

TEST_CASE("triangle-free 3-regular host has no closed triangles") {
    Graph f = build_family(FamilySpec::overlapping_four_cycles(), 12);
    auto closed = enumerate_closed_subgraphs(f, 4);
    for (auto m : closed) {
        auto vs = mask_to_vec(m);
        if (vs.size() == 3) {
            int induced = 0;
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i + 1; j < 3; ++j)
                    if (f.adjacent(vs[i], vs[j])) ++induced;
            CHECK(induced < 3);
        }
    }
}

TEST_CASE("local sparsity verdicts on the square of C_12") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 12);
    SECTION("d+1 rule holds, minimum boundary is d+2") {
        auto v = check_local_sparsity(f, SparsityRule::min_d_plus_1, 3, 9);
        CHECK(v.holds);
        CHECK_FALSE(v.inconclusive);
        CHECK(v.min_boundary_seen == 6);
    }
    SECTION("2d rule fails with a minimal lexicographic witness") {
        auto v = check_local_sparsity(f, SparsityRule::riordan_2d, 3, 9);
        CHECK_FALSE(v.holds);
        CHECK(v.witness == std::vector<int>{0, 1, 2});
        CHECK(v.witness_boundary == 6);
        CHECK(edge_boundary(f, v.witness) == v.witness_boundary);
        CHECK(v.witness_boundary < 2 * 4);
    }
    SECTION("tiny budget goes inconclusive with the reached size") {
        auto v = check_local_sparsity(f, SparsityRule::min_d_plus_1, 3, 9, 10);
        CHECK(v.inconclusive);
        CHECK(v.reached_v < 9);
    }
}

TEST_CASE("a triangle in a 3-regular host violates the d+1 rule") {
    // triangular prism
    Graph f(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}, {2, 5}},
            3);
    auto v = check_local_sparsity(f, SparsityRule::min_d_plus_1, 3, 3);
    CHECK_FALSE(v.holds);
    CHECK(v.witness == std::vector<int>{0, 1, 2});
    CHECK(v.witness_boundary == 3);
}

TEST_CASE("closed-subgraph claims hold on squares of cycles") {
    for (int n : {8, 10, 12}) {
        Graph f = build_family(FamilySpec::square_of_cycle(), n);
        auto rep = verify_closed_claims(f, std::min(6, n - 3));
        CHECK(rep.min_degree_ok);
        CHECK(rep.pair_count_ok);
        CHECK(rep.prefix_count_ok);
        if (n == 10) {
            CHECK(rep.closed_count == 40);
            CHECK(rep.max_pair_count == 2); // windows ending at x, for y = x+2
        }
    }
}

TEST_CASE("complement duality of closed subgraphs") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 10);
    auto closed = enumerate_closed_subgraphs(f, 7);
    std::set<std::uint64_t> closed_set(closed.begin(), closed.end());
    std::uint64_t full = (1ULL << 10) - 1;
    int checked = 0;
    for (auto m : closed) {
        std::uint64_t cm = full & ~m;
        int csize = __builtin_popcountll(cm);
        if (csize >= 3 && csize <= 7) {
            CHECK(closed_set.count(cm) == 1);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("theorem-hypothesis classification") {
    Graph f = build_family(FamilySpec::square_of_cycle(), 12);
    ConditionParams p;
    p.eps = 1.0;
    auto verdicts = classify_conditions(f, p);
    REQUIRE(verdicts.size() == 4);
    CHECK(verdicts[0].condition == "thm12_local");
    CHECK(verdicts[0].vacuous); // [3, floor(ln 12)] = [3, 2] is empty
    CHECK(verdicts[0].holds);
    CHECK(verdicts[3].condition == "riordan_2d");
    CHECK_FALSE(verdicts[3].holds);
    CHECK(edge_boundary(f, verdicts[3].witness) < 8);
}

TEST_CASE("boundary-fixing automorphism counts") {
    Graph path(3, {{0, 1}, {1, 2}});
    CHECK(automorphisms_fixing(path, {}) == 2);
    CHECK(automorphisms_fixing(path, {0, 2}) == 1);
    CHECK(automorphisms_fixing(path, {1}) == 2);
}
