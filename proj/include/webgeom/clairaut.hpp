#ifndef WEBGEOM_CLAIRAUT_HPP
#define WEBGEOM_CLAIRAUT_HPP

#include <string>
#include <utility>
#include <vector>

#include "webgeom/contact.hpp"
#include "webgeom/first_integral.hpp"
#include "webgeom/multipoly.hpp"

namespace webgeom {

/// Clairaut equation y = x p + f(p) with f a univariate polynomial in p of
/// degree k >= 2, normalized monic (dividing by the unit leading coefficient
/// leaves the web unchanged).
class ClairautEquation {
public:
    explicit ClairautEquation(const MultiPoly& f_in) {
        MultiPoly f = f_in.pruned();
        for (const auto& v : f.vars())
            if (v != "p") throw error("clairaut: f must be univariate in p");
        f_ = f.with_variables({"p"});
        k_ = f_.degree_in("p");
        if (k_ < 2) throw error("clairaut: deg f >= 2 required");
        GaussianRational lc = f_.coefficient_of("p", k_).constant_value();
        f_ = f_.scaled(GaussianRational(1) / lc);
    }

    const MultiPoly& f() const { return f_; }
    long k() const { return k_; }

private:
    MultiPoly f_;  // monic, in the single variable p
    long k_ = 0;
};

/// Surface of the equation: F = y - x p - f(p).
inline ImplicitOde clairaut_ode(const ClairautEquation& eq) {
    std::vector<std::string> ring = {"x", "y", "p"};
    MultiPoly F = MultiPoly::variable(ring, "y") -
                  MultiPoly::variable(ring, "x") * MultiPoly::variable(ring, "p") -
                  eq.f().with_variables(ring);
    return ImplicitOde(F, "x", "y", eq.k());
}

/// The leaves are -y + s x + f(s) = 0; monic in the parameter this is
/// P(z) = f(z) + x z - y.
inline FirstIntegral clairaut_first_integral(const ClairautEquation& eq) {
    std::vector<std::string> ring = {"x", "y", "z"};
    MultiPoly P = eq.f().renamed({{"p", "z"}}).with_variables(ring) +
                  MultiPoly::variable(ring, "x") * MultiPoly::variable(ring, "z") -
                  MultiPoly::variable(ring, "y");
    return FirstIntegral::from_poly(P, {"x", "y"});
}

/// Criminant equations in the classical sign convention:
/// (y - x p - f(p), x + f'(p)).
inline std::pair<MultiPoly, MultiPoly> clairaut_criminant(const ClairautEquation& eq) {
    std::vector<std::string> ring = {"x", "y", "p"};
    MultiPoly F = MultiPoly::variable(ring, "y") -
                  MultiPoly::variable(ring, "x") * MultiPoly::variable(ring, "p") -
                  eq.f().with_variables(ring);
    MultiPoly second = MultiPoly::variable(ring, "x") + eq.f().derivative("p").with_variables(ring);
    return {F, second};
}

/// Restrict the contact form to the surface in the (x, p) chart:
/// dy = p dx + (x + f'(p)) dp there, so alpha = dy - p dx = (x + f'(p)) dp.
/// Computes the substitution symbolically, checks that the dx part cancels
/// exactly, and returns the dp coefficient.
inline MultiPoly clairaut_alpha_restriction(const ClairautEquation& eq) {
    std::vector<std::string> ring = {"x", "p", "dx", "dp"};
    MultiPoly x = MultiPoly::variable(ring, "x");
    MultiPoly p = MultiPoly::variable(ring, "p");
    MultiPoly dx = MultiPoly::variable(ring, "dx");
    MultiPoly dp = MultiPoly::variable(ring, "dp");
    // d(x p + f(p)) along the chart coordinates
    MultiPoly dy = p * dx + (x + eq.f().derivative("p").with_variables(ring)) * dp;
    MultiPoly alpha = dy - p * dx;
    if (!alpha.coefficient_of("dx", 1).is_zero())
        throw error("clairaut_alpha_restriction: dx coefficient did not cancel");
    return alpha.coefficient_of("dp", 1).with_variables({"x", "p"});
}

}  // namespace webgeom

#endif
