#ifndef WEBGEOM_CLASSIFY_HPP
#define WEBGEOM_CLASSIFY_HPP

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <utility>

#include "webgeom/contact.hpp"
#include "webgeom/trace.hpp"

namespace webgeom {

/// Best rational p/q with q <= max_denominator within tol of x >= 0, by
/// continued-fraction convergents. Convergents are automatically reduced.
inline std::optional<std::pair<long, long>> rational_approx(double x, long max_denominator,
                                                            double tol) {
    if (!(x >= 0.0)) return std::nullopt;
    long h0 = 0, k0 = 1, h1 = 1, k1 = 0;
    double v = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fa = std::floor(v);
        if (fa > 1e17) break;
        long a = (long)fa;
        long h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_denominator || k2 <= 0) break;
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
        if (std::abs(x - (double)h1 / (double)k1) <= tol) return std::make_pair(h1, k1);
        double frac = v - fa;
        if (frac < 1e-12) break;
        v = 1.0 / frac;
    }
    if (k1 > 0 && k1 <= max_denominator && std::abs(x - (double)h1 / (double)k1) <= tol)
        return std::make_pair(h1, k1);
    return std::nullopt;
}

struct SingularityReport {
    enum class Verdict { saddle_with_first_integral_candidate, non_reduced, other };
    std::array<std::complex<double>, 3> location{};
    std::complex<double> lambda1, lambda2;  // |lambda1| <= |lambda2|
    std::complex<double> ratio;             // lambda2 / lambda1 (when defined)
    Verdict verdict = Verdict::other;
    std::optional<std::pair<long, long>> rational_approx;  // ratio ~ -p/q, gcd(p,q)=1
};

/// Linearize the lifted field in a 2-chart of the surface at a singular
/// point (projecting out the coordinate with the largest |dF| component),
/// compute the eigenvalue ratio and recognize negative rationals. The ratio
/// is scale-free, so any constant rescaling of the field gives the same
/// verdict.
inline SingularityReport classify_singularity(const ImplicitOde& ode,
                                              std::array<std::complex<double>, 3> point,
                                              double tol = 1e-6, long max_denominator = 50) {
    detail::OdeFlow flow(ode);
    auto vals = flow.at(point);
    if (std::abs(flow.F.eval(vals)) > tol)
        throw error("classify_singularity: point is not on the surface");
    auto v = flow.field(point);
    if (detail::OdeFlow::norm(v) > tol)
        throw error("classify_singularity: the lifted field does not vanish at the point");

    const std::string names[3] = {ode.x(), ode.y(), "p"};
    std::complex<double> gradF[3];
    double gmax = 0.0;
    int m = 0;
    for (int j = 0; j < 3; ++j) {
        gradF[j] = flow.F.derivative(names[j]).eval(vals);
        if (std::abs(gradF[j]) > gmax) {
            gmax = std::abs(gradF[j]);
            m = j;
        }
    }
    if (gmax < 1e-8)
        throw error("classify_singularity: dF vanishes (singular surface point, not classified)");

    // Jacobian of (Vx, Vy, Vp), then the restriction to the chart that skips
    // coordinate m: A_ab = J_ab - J_am * F_b / F_m.
    MultiPoly comps[3] = {flow.Fp,
                          MultiPoly::variable(flow.F.vars(), "p") * flow.Fp,
                          -(flow.Fx + MultiPoly::variable(flow.F.vars(), "p") * flow.Fy)};
    std::complex<double> J[3][3];
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) J[r][s] = comps[r].derivative(names[s]).eval(vals);

    int idx[2], w = 0;
    for (int j = 0; j < 3; ++j)
        if (j != m) idx[w++] = j;
    std::complex<double> A[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            A[a][b] = J[idx[a]][idx[b]] - J[idx[a]][m] * gradF[idx[b]] / gradF[m];

    std::complex<double> tr = A[0][0] + A[1][1];
    std::complex<double> det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
    std::complex<double> l1 = 0.5 * (tr - disc), l2 = 0.5 * (tr + disc);
    if (std::abs(l1) > std::abs(l2)) std::swap(l1, l2);

    SingularityReport report;
    report.location = point;
    report.lambda1 = l1;
    report.lambda2 = l2;
    if (std::abs(l1) <= tol * std::max(1.0, std::abs(l2))) {
        report.verdict = SingularityReport::Verdict::non_reduced;
        return report;
    }
    report.ratio = l2 / l1;
    if (std::abs(report.ratio.imag()) <= tol * std::max(1.0, std::abs(report.ratio)) &&
        report.ratio.real() < 0.0) {
        auto pq = rational_approx(-report.ratio.real(), max_denominator, tol);
        if (pq) {
            report.rational_approx = pq;
            report.verdict = SingularityReport::Verdict::saddle_with_first_integral_candidate;
            return report;
        }
    }
    report.verdict = SingularityReport::Verdict::other;
    return report;
}

}  // namespace webgeom

#endif
