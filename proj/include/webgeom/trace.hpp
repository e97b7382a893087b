#ifndef WEBGEOM_TRACE_HPP
#define WEBGEOM_TRACE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "webgeom/contact.hpp"
#include "webgeom/hermitian.hpp"

namespace webgeom {

struct TraceOptions {
    double step = 1e-3;
    long steps = 10000;
    double theta = 0.0;             // real-time direction e^{i theta} in complex time
    double residual_bound = 1e-6;   // hard failure above this
    double start_tolerance = 1e-8;  // the start must lie on the surface
    double criminant_guard = 1e-8;  // stop (do not switch sheets) when |F_p| drops below
};

struct LeafTrace {
    enum class Stop { completed, near_criminant, stationary };
    std::vector<std::array<std::complex<double>, 3>> points;  // (x, y, p)
    double step = 0.0;
    double residual_max = 0.0;
    Stop reason = Stop::completed;
};

namespace detail {

/// Evaluator bundle for F and the lifted field along a trace.
struct OdeFlow {
    explicit OdeFlow(const ImplicitOde& ode)
        : xname(ode.x()),
          yname(ode.y()),
          F(ode.F()),
          Fx(ode.Fx()),
          Fy(ode.Fy()),
          Fp(ode.Fp()) {}

    std::string xname, yname;
    MultiPoly F, Fx, Fy, Fp;

    std::map<std::string, std::complex<double>> at(const std::array<std::complex<double>, 3>& q) const {
        return {{xname, q[0]}, {yname, q[1]}, {"p", q[2]}};
    }
    std::array<std::complex<double>, 3> field(const std::array<std::complex<double>, 3>& q) const {
        auto vals = at(q);
        std::complex<double> fp = Fp.eval(vals);
        std::complex<double> fx = Fx.eval(vals);
        std::complex<double> fy = Fy.eval(vals);
        return {fp, q[2] * fp, -(fx + q[2] * fy)};
    }
    static double norm(const std::array<std::complex<double>, 3>& v) {
        return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
    }
};

}  // namespace detail

/// Integrate the lifted foliation from an on-surface start: classical
/// fourth-order steps on the unit-speed field e^{i theta} V/|V| with one
/// Newton correction in p per step to stay on {F = 0}. Stops early at the
/// criminant guard or a stationary point; throws if the start is off the
/// surface or the residual bound is exceeded (step too large).
inline LeafTrace trace_leaf(const ImplicitOde& ode, std::array<std::complex<double>, 3> start,
                            const TraceOptions& opts = {}) {
    detail::OdeFlow flow(ode);
    if (std::abs(flow.F.eval(flow.at(start))) >= opts.start_tolerance)
        throw error("trace_leaf: start point is not on the surface");

    LeafTrace trace;
    trace.step = opts.step;
    trace.points.push_back(start);
    std::complex<double> dir = std::polar(1.0, opts.theta);

    auto rhs = [&](const std::array<std::complex<double>, 3>& q)
        -> std::array<std::complex<double>, 3> {
        auto v = flow.field(q);
        double n = detail::OdeFlow::norm(v);
        if (n < 1e-14) return {0.0, 0.0, 0.0};
        return {dir * v[0] / n, dir * v[1] / n, dir * v[2] / n};
    };

    std::array<std::complex<double>, 3> q = start;
    for (long s = 0; s < opts.steps; ++s) {
        auto vals = flow.at(q);
        if (std::abs(flow.Fp.eval(vals)) < opts.criminant_guard) {
            trace.reason = LeafTrace::Stop::near_criminant;
            return trace;
        }
        if (detail::OdeFlow::norm(flow.field(q)) < 1e-14) {
            trace.reason = LeafTrace::Stop::stationary;
            return trace;
        }

        double h = opts.step;
        auto k1 = rhs(q);
        auto at2 = q, at3 = q, at4 = q;
        for (int i = 0; i < 3; ++i) at2[i] += 0.5 * h * k1[i];
        auto k2 = rhs(at2);
        for (int i = 0; i < 3; ++i) at3[i] += 0.5 * h * k2[i];
        auto k3 = rhs(at3);
        for (int i = 0; i < 3; ++i) at4[i] += h * k3[i];
        auto k4 = rhs(at4);
        for (int i = 0; i < 3; ++i) q[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        vals = flow.at(q);
        std::complex<double> f = flow.F.eval(vals);
        std::complex<double> fp = flow.Fp.eval(vals);
        if (std::abs(fp) > opts.criminant_guard) {
            q[2] -= f / fp;
            vals = flow.at(q);
            f = flow.F.eval(vals);
        }
        double residual = std::abs(f);
        if (residual > opts.residual_bound)
            throw error("trace_leaf: residual " + std::to_string(residual) +
                        " exceeded bound (step too large near the criminant)");
        trace.residual_max = std::max(trace.residual_max, residual);
        trace.points.push_back(q);
    }
    return trace;
}

struct LeviflatTraceReport {
    double max_residual = 0.0;
    size_t worst_index = 0;
    bool pass = false;
};

/// Evaluate the Levi-flat defining function along a traced leaf; the base
/// projection (x, y) of every trace point is tested.
inline LeviflatTraceReport leaf_in_leviflat(const LeafTrace& trace, const ImplicitOde& ode,
                                            const HermitianPoly& h, double tolerance) {
    LeviflatTraceReport report;
    for (size_t i = 0; i < trace.points.size(); ++i) {
        const auto& q = trace.points[i];
        double r = std::abs(h.value_at({{ode.x(), q[0]}, {ode.y(), q[1]}}));
        if (r > report.max_residual) {
            report.max_residual = r;
            report.worst_index = i;
        }
    }
    report.pass = report.max_residual <= tolerance;
    return report;
}

}  // namespace webgeom

#endif
