#ifndef SPANLAB_MATCHING_HPP
#define SPANLAB_MATCHING_HPP

#include <limits>
#include <queue>
#include <vector>

namespace spanlab {

// Hopcroft-Karp maximum bipartite matching. Left vertices 0..nl-1,
// right vertices 0..nr-1, adjacency as left -> sorted right lists.
// Deterministic for a fixed adjacency order.
class BipartiteMatcher {
public:
    BipartiteMatcher(int nl, int nr) : nl_(nl), nr_(nr), adj_(nl) {}

    void add_edge(int l, int r) { adj_[l].push_back(r); }

    int solve() {
        match_l_.assign(nl_, -1);
        match_r_.assign(nr_, -1);
        int matched = 0;
        for (;;) {
            if (!bfs()) break;
            int found = 0;
            for (int l = 0; l < nl_; ++l)
                if (match_l_[l] == -1 && dfs(l)) ++found;
            if (found == 0) break;
            matched += found;
        }
        return matched;
    }

    const std::vector<int>& left_match() const { return match_l_; }
    const std::vector<int>& right_match() const { return match_r_; }

private:
    static constexpr int kInf = std::numeric_limits<int>::max();

    bool bfs() {
        dist_.assign(nl_, kInf);
        std::queue<int> q;
        for (int l = 0; l < nl_; ++l)
            if (match_l_[l] == -1) {
                dist_[l] = 0;
                q.push(l);
            }
        bool reachable = false;
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj_[l]) {
                int l2 = match_r_[r];
                if (l2 == -1) reachable = true;
                else if (dist_[l2] == kInf) {
                    dist_[l2] = dist_[l] + 1;
                    q.push(l2);
                }
            }
        }
        return reachable;
    }

    bool dfs(int l) {
        for (int r : adj_[l]) {
            int l2 = match_r_[r];
            if (l2 == -1 || (dist_[l2] == dist_[l] + 1 && dfs(l2))) {
                match_l_[l] = r;
                match_r_[r] = l;
                return true;
            }
        }
        dist_[l] = kInf;
        return false;
    }

    int nl_, nr_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_l_, match_r_, dist_;
};

} // namespace spanlab

#endif
