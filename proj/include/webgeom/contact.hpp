#ifndef WEBGEOM_CONTACT_HPP
#define WEBGEOM_CONTACT_HPP

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "webgeom/gcd.hpp"
#include "webgeom/multipoly.hpp"
#include "webgeom/resultant.hpp"
#include "webgeom/roots.hpp"
#include "webgeom/web.hpp"

namespace webgeom {

/// Contact-chart surface F(x, y, p) = 0 of a planar web, p = dy/dx. The
/// polynomial is stored exactly as constructed (webs hand over their
/// canonical form); invariants: degree k in p with unit content, square-free
/// in p over the fraction field of the coefficient ring.
class ImplicitOde {
public:
    ImplicitOde(MultiPoly f, std::string x, std::string y, long k)
        : F_(std::move(f)), x_(std::move(x)), y_(std::move(y)), k_(k) {
        if (k_ < 1) throw error("implicit ode: degree must be positive");
        std::vector<std::string> ring = {x_, y_, "p"};
        F_ = F_.with_variables(ring);
        if (F_.degree_in("p") != k_)
            throw error("implicit ode: degree in p is not " + std::to_string(k_));
        MultiPoly content(std::vector<std::string>{x_, y_});
        for (const auto& c : F_.coefficients_in("p"))
            if (!c.is_zero()) content = gcd(content, c);
        if (!content.is_constant()) throw error("implicit ode: content in p is not a unit");
        if (k_ >= 2 && !square_free_in(F_, "p"))
            throw error("implicit ode: F is not square-free in p");
    }

    const MultiPoly& F() const { return F_; }
    long k() const { return k_; }
    const std::string& x() const { return x_; }
    const std::string& y() const { return y_; }

    MultiPoly Fx() const { return F_.derivative(x_); }
    MultiPoly Fy() const { return F_.derivative(y_); }
    MultiPoly Fp() const { return F_.derivative("p"); }

private:
    MultiPoly F_;
    std::string x_, y_;
    long k_;
};

/// Substitute dx -> 1, dy -> p into the form of a planar web. Errors when
/// the dy^k coefficient vanishes identically (degree drop: the web is
/// tangent to the chart everywhere; change charts upstream).
inline ImplicitOde to_implicit_ode(const Web& w) {
    if (w.n() != 2) throw error("to_implicit_ode: planar webs only");
    const std::string& x = w.base_vars()[0];
    const std::string& y = w.base_vars()[1];
    std::vector<std::string> ring = {x, y, "p"};
    std::map<std::string, MultiPoly> repl;
    repl.emplace(w.diff_vars()[0], MultiPoly::constant(ring, GaussianRational(1)));
    repl.emplace(w.diff_vars()[1], MultiPoly::variable(ring, "p"));
    MultiPoly F = w.form().substitute(repl);
    if (F.degree_in("p") < w.k())
        throw error("to_implicit_ode: leading coefficient a0 vanishes identically "
                    "(web tangent to the chart; change coordinates first)");
    return ImplicitOde(F, x, y, w.k());
}

/// Homogenize back: F(x, y, dy/dx) * dx^k as a planar web.
inline Web web_from_implicit_ode(const ImplicitOde& ode) {
    std::vector<std::string> ring = {ode.x(), ode.y(), diff_name(ode.x()), diff_name(ode.y())};
    MultiPoly form(ring);
    auto coeffs = ode.F().coefficients_in("p");
    MultiPoly dx = MultiPoly::variable(ring, diff_name(ode.x()));
    MultiPoly dy = MultiPoly::variable(ring, diff_name(ode.y()));
    for (long j = 0; j < (long)coeffs.size(); ++j)
        form += coeffs[j].with_variables(ring) * dy.pow(j) * dx.pow(ode.k() - j);
    return make_web(form, {ode.x(), ode.y()}, ode.k());
}

/// Defining equations of the criminant: F = dF/dp = 0 on the surface.
inline std::pair<MultiPoly, MultiPoly> criminant_ideal(const ImplicitOde& ode) {
    return {ode.F(), ode.Fp()};
}

/// Reduced defining polynomial of the discriminant curve in the base:
/// Res_p(F, F_p)/lc, content-free and square-free. Needs k >= 2.
inline MultiPoly discriminant_curve(const ImplicitOde& ode) {
    if (ode.k() < 2) throw error("discriminant_curve: needs degree >= 2 (empty discriminant)");
    return discriminant_in(ode.F(), "p");
}

/// Vector field generating the lifted foliation on {F = 0}: annihilated by
/// the contact form dy - p dx and tangent to the surface. Both identities
/// hold exactly by construction and are re-verified here.
struct LiftedField {
    MultiPoly Vx, Vy, Vp;
};

inline LiftedField lifted_field(const ImplicitOde& ode) {
    MultiPoly fp = ode.Fp();
    MultiPoly p = MultiPoly::variable(ode.F().vars(), "p");
    LiftedField v{fp, p * fp, -(ode.Fx() + p * ode.Fy())};
    if (!(v.Vx * ode.Fx() + v.Vy * ode.Fy() + v.Vp * ode.Fp()).is_zero())
        throw error("lifted_field: tangency identity failed");
    if (!(v.Vy - p * v.Vx).is_zero()) throw error("lifted_field: contact identity failed");
    return v;
}

struct FiberPoints {
    std::vector<std::complex<double>> roots;
    std::vector<std::vector<size_t>> clusters;  // index groups within cluster_radius
    double discriminant_abs = std::numeric_limits<double>::infinity();
    bool near_discriminant = false;
};

/// Numeric fiber of the projection over (x0, y0): all roots p of
/// F(x0, y0, p) = 0. Multiplicity clusters are grouped by mutual distance;
/// the discriminant value flags fibers with fewer than k distinct points.
/// Callers iterating over many base points can pass the discriminant
/// polynomial to avoid recomputing the elimination.
inline FiberPoints fiber_points(const ImplicitOde& ode, std::complex<double> x0,
                                std::complex<double> y0, double tolerance,
                                double cluster_radius = 1e-4,
                                const MultiPoly* discriminant = nullptr) {
    std::map<std::string, std::complex<double>> at{{ode.x(), x0}, {ode.y(), y0}};
    std::vector<std::complex<double>> cs;
    for (const auto& c : ode.F().coefficients_in("p")) cs.push_back(c.eval(at));
    FiberPoints out;
    out.roots = durand_kerner(cs);
    out.clusters = root_clusters(out.roots, cluster_radius);
    if (ode.k() >= 2) {
        MultiPoly local(ode.F().vars());
        if (!discriminant) {
            local = discriminant_curve(ode);
            discriminant = &local;
        }
        out.discriminant_abs = std::abs(discriminant->eval(at));
        out.near_discriminant = out.discriminant_abs < tolerance;
    }
    return out;
}

}  // namespace webgeom

#endif
