#ifndef SPANLAB_THRESHOLD_HPP
#define SPANLAB_THRESHOLD_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "combinat.hpp"
#include "embed.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace spanlab {

struct CurvePoint {
    double p = 0.0;
    std::int64_t successes = 0;
    std::int64_t decided = 0;
    std::int64_t inconclusive = 0;
    WilsonInterval ci;

    double fraction() const {
        return decided ? static_cast<double>(successes) / decided : 0.0;
    }
};

// all C(n,2) edge weights for one trial; host(p) keeps weights < p
inline std::vector<double> trial_weights(int n, std::uint64_t trial_seed) {
    Rng rng(trial_seed);
    std::vector<double> w(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (auto& x : w) x = rng.uniform01();
    return w;
}

inline Graph host_from_weights(int n, const std::vector<double>& w, double p) {
    std::vector<Edge> es;
    std::size_t idx = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++idx)
            if (w[idx] < p) es.push_back({u, v});
    return Graph(n, std::move(es));
}

// Success fraction at a single density. Shared mode keys the weight stream
// by trial only, so different densities couple through the same weights;
// independent mode keys by (p-index, trial).
inline CurvePoint containment_prob(int n, double p, const FamilySpec& spec,
                                   int trials, std::int64_t budget,
                                   std::uint64_t seed, int p_index = 0,
                                   bool shared_weights = true) {
    if (p < 0.0 || p > 1.0) throw ParameterError("containment_prob: p outside [0,1]");
    if (trials < 1) throw ParameterError("containment_prob: trials >= 1");
    CurvePoint pt;
    pt.p = p;
    for (int t = 0; t < trials; ++t) {
        std::uint64_t ts = shared_weights
                               ? derive_seed(seed, "trial", static_cast<std::uint64_t>(t))
                               : derive_seed(seed, "trial",
                                             (static_cast<std::uint64_t>(p_index) << 32) |
                                                 static_cast<std::uint64_t>(t));
        Graph host = host_from_weights(n, trial_weights(n, ts), p);
        ContainResult r = find_spanning_copy(host, spec, budget, ts, true);
        if (r.status == SearchStatus::inconclusive) ++pt.inconclusive;
        else {
            ++pt.decided;
            if (r.status == SearchStatus::found) ++pt.successes;
        }
    }
    pt.ci = wilson_ci(pt.successes, pt.decided);
    return pt;
}

struct ThresholdEstimate {
    int n = 0;
    std::string family;
    double p_hat = -1.0;
    std::vector<CurvePoint> curve;
    int trials_per_probe = 0;
    std::uint64_t seed = 0;
    bool anomaly = false;
    bool degenerate_bracket = false;
};

// Bisection for the density where the success fraction crosses 1/2. Probes
// whose CI straddles 1/2 settle the estimate; probes with more than 5%
// inconclusive trials are discarded from bracketing.
inline ThresholdEstimate bisect_threshold(int n, const FamilySpec& spec,
                                          int trials_per_probe, double tol,
                                          std::uint64_t seed,
                                          std::int64_t budget = 100'000'000) {
    ThresholdEstimate est;
    est.n = n;
    est.family = spec.name();
    est.trials_per_probe = trials_per_probe;
    est.seed = seed;
    if (tol > 1.0) {
        est.degenerate_bracket = true;
        est.p_hat = 0.5;
        return est;
    }
    double lo = 0.0, hi = 1.0;
    int probe_idx = 0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        CurvePoint pt = containment_prob(n, mid, spec, trials_per_probe, budget,
                                         derive_seed(seed, "probe", probe_idx),
                                         probe_idx, false);
        ++probe_idx;
        est.curve.push_back(pt);
        double incon_frac =
            static_cast<double>(pt.inconclusive) / std::max<std::int64_t>(1, trials_per_probe);
        if (incon_frac > 0.05) {
            // discard the probe; shrink towards the denser side to stay decided
            hi = mid + 0.45 * (hi - mid);
            continue;
        }
        if (pt.ci.hi < 0.5) lo = mid;
        else if (pt.ci.lo > 0.5) hi = mid;
        else {
            est.p_hat = mid;
            break;
        }
        if (probe_idx > 64) break;
    }
    if (est.p_hat < 0) est.p_hat = 0.5 * (lo + hi);
    // anomaly scan: probes must not contradict monotonicity beyond CI noise
    for (std::size_t a = 0; a < est.curve.size(); ++a)
        for (std::size_t b = 0; b < est.curve.size(); ++b)
            if (est.curve[a].p < est.curve[b].p &&
                est.curve[a].ci.lo > est.curve[b].ci.hi)
                est.anomaly = true;
    return est;
}

} // namespace spanlab

#endif
