#ifndef SPANLAB_COMBINAT_HPP
#define SPANLAB_COMBINAT_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spanlab {

inline double ln_factorial(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("ln_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

// Exact sum of logs; used where lgamma round-off matters.
inline double ln_factorial_exact(std::int64_t n) {
    double s = 0.0;
    for (std::int64_t k = 2; k <= n; ++k) s += std::log(static_cast<double>(k));
    return s;
}

inline double ln_choose(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (k == 0 || k == n) return 0.0;
    return ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
}

// Exact binomial while it fits; throws on overflow.
inline std::uint64_t choose_u64(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned __int128>(n - k + i) /
            static_cast<unsigned __int128>(i);
        if (r > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("choose_u64 overflow");
    }
    return static_cast<std::uint64_t>(r);
}

struct WilsonInterval {
    double lo = 0.0, hi = 1.0, center = 0.0;
};

// 95% Wilson score interval on k successes out of n decided trials.
inline WilsonInterval wilson_ci(std::int64_t k, std::int64_t n, double z = 1.959963985) {
    WilsonInterval w;
    if (n <= 0) return w;
    double phat = static_cast<double>(k) / static_cast<double>(n);
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double centre = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    w.lo = std::max(0.0, centre - half);
    w.hi = std::min(1.0, centre + half);
    w.center = centre;
    return w;
}

struct MeanStderr {
    double mean = 0.0, se = 0.0;
    std::int64_t n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr m;
    m.n = static_cast<std::int64_t>(xs.size());
    if (m.n == 0) return m;
    double s = 0.0;
    for (double x : xs) s += x;
    m.mean = s / m.n;
    if (m.n > 1) {
        double v = 0.0;
        for (double x : xs) v += (x - m.mean) * (x - m.mean);
        m.se = std::sqrt(v / (m.n - 1) / m.n);
    }
    return m;
}

} // namespace spanlab

#endif
