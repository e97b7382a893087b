#ifndef WEBGEOM_ROOTS_HPP
#define WEBGEOM_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "webgeom/rational.hpp"

namespace webgeom {

struct RootFindOptions {
    int max_iterations = 800;
    double update_tolerance = 1e-14;
};

inline std::complex<double> horner(const std::vector<std::complex<double>>& c,
                                   std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

/// All complex roots of sum c[i] z^i by Durand-Kerner simultaneous iteration.
/// Near-zero leading coefficients (relative to the largest one) are trimmed,
/// so the numeric degree can be lower than c.size()-1. Clusters of nearly
/// equal roots converge to about sqrt(machine epsilon); callers that need to
/// detect multiplicities should group roots afterwards.
inline std::vector<std::complex<double>> durand_kerner(std::vector<std::complex<double>> c,
                                                       const RootFindOptions& opts = {}) {
    double maxc = 0.0;
    for (const auto& v : c) maxc = std::max(maxc, std::abs(v));
    if (maxc == 0.0) throw error("durand_kerner: zero polynomial");
    while (!c.empty() && std::abs(c.back()) <= 1e-13 * maxc) c.pop_back();
    long n = (long)c.size() - 1;
    if (n <= 0) return {};
    for (auto& v : c) v /= c.back();  // monic

    if (n == 1) return {-c[0]};

    double radius = 1.0;
    for (long i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
    radius = 1.0 + radius;  // Cauchy bound for monic polynomials

    const std::complex<double> seed(0.4, 0.9);
    std::vector<std::complex<double>> z(n);
    std::complex<double> w = 1.0;
    for (long j = 0; j < n; ++j) {
        w *= seed;
        z[j] = radius * w;
    }

    double max_update = 0.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        max_update = 0.0;
        for (long j = 0; j < n; ++j) {
            std::complex<double> denom = 1.0;
            for (long k = 0; k < n; ++k)
                if (k != j) denom *= z[j] - z[k];
            if (denom == std::complex<double>(0.0)) {
                z[j] += 1e-8 * radius;  // nudge coincident iterates apart
                continue;
            }
            std::complex<double> dz = horner(c, z[j]) / denom;
            z[j] -= dz;
            max_update = std::max(max_update, std::abs(dz));
        }
        if (max_update <= opts.update_tolerance * radius) break;
    }

    // Accept on small residuals; Durand-Kerner stalls near multiple roots
    // while the residual there is already tiny.
    for (long j = 0; j < n; ++j) {
        double scale = 1.0;
        double az = std::abs(z[j]);
        for (long i = 0; i <= n; ++i) scale += std::abs(c[i]) * std::pow(std::max(1.0, az), (double)i);
        if (std::abs(horner(c, z[j])) > 1e-8 * scale)
            throw error("durand_kerner: no convergence after iteration cap");
    }
    return z;
}

/// Group roots whose mutual distance is below `radius` (union-find style);
/// returns index groups of size >= 2.
inline std::vector<std::vector<size_t>> root_clusters(
    const std::vector<std::complex<double>>& roots, double radius) {
    size_t n = roots.size();
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);
    std::vector<std::vector<size_t>> groups;
    for (size_t r = 0; r < n; ++r) {
        if (find(r) != r) continue;
        std::vector<size_t> g;
        for (size_t i = 0; i < n; ++i)
            if (find(i) == r) g.push_back(i);
        if (g.size() >= 2) groups.push_back(std::move(g));
    }
    return groups;
}

}  // namespace webgeom

#endif
