#ifndef WEBGEOM_GCD_HPP
#define WEBGEOM_GCD_HPP

#include <string>
#include <utility>

#include "webgeom/multipoly.hpp"

namespace webgeom {

inline MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// Pseudo-remainder: returns R with lc_v(B)^(deg A - deg B + 1) * A = Q*B + R
/// and deg_v R < deg_v B. Requires deg_v B >= 1.
inline MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, const std::string& v) {
    auto [A, B] = MultiPoly::aligned(a, b);
    long db = B.degree_in(v);
    if (db < 1) throw error("pseudo_remainder: divisor has no " + v);
    long da = A.degree_in(v);
    if (da < db) return A;
    MultiPoly lcB = B.leading_coefficient_in(v);
    long scale_left = da - db + 1;
    MultiPoly r = A;
    while (!r.is_zero() && r.degree_in(v) >= db) {
        long dr = r.degree_in(v);
        MultiPoly lead = r.coefficient_of(v, dr);
        MultiPoly shift = MultiPoly::variable(r.vars(), v).pow(dr - db);
        r = lcB * r - lead * shift * B;
        --scale_left;
    }
    // prem is defined with exactly deg A - deg B + 1 multiplications by lc(B);
    // top up when the degree fell by more than one per step.
    while (scale_left-- > 0) r = lcB * r;
    return r;
}

/// Content with respect to one variable: gcd of the coefficient polynomials.
inline MultiPoly content_in(const MultiPoly& p, const std::string& v) {
    MultiPoly g(p.vars());
    for (const auto& c : p.coefficients_in(v))
        if (!c.is_zero()) g = gcd(g, c);
    return g;
}

inline MultiPoly primitive_part_in(const MultiPoly& p, const std::string& v) {
    if (p.is_zero()) return p;
    return divide_exact(p, content_in(p, v));
}

namespace detail {

/// Subresultant polynomial remainder sequence on primitive inputs with
/// deg_v A >= deg_v B >= 1. Returns the last nonzero remainder (the gcd up
/// to content and unit).
inline MultiPoly subresultant_prs_last(MultiPoly A, MultiPoly B, const std::string& v) {
    MultiPoly g = MultiPoly::constant(A.vars(), GaussianRational(1));
    MultiPoly h = g;
    for (;;) {
        long delta = A.degree_in(v) - B.degree_in(v);
        MultiPoly R = pseudo_remainder(A, B, v);
        if (R.is_zero()) return B;
        R = divide_exact(R, g * h.pow(delta));
        A = std::move(B);
        B = std::move(R);
        if (B.degree_in(v) == 0) return B;
        g = A.leading_coefficient_in(v);
        if (delta > 0) h = (delta == 1) ? g : divide_exact(g.pow(delta), h.pow(delta - 1));
    }
}

}  // namespace detail

/// Greatest common divisor over Q(i)[x1..xn], normalized so the grlex
/// leading coefficient is 1. Recurses over the variable tower; the
/// univariate steps use the subresultant PRS to tame coefficient growth.
inline MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    auto [A0, B0] = MultiPoly::aligned(a, b);
    if (A0.is_constant() || B0.is_constant())
        return MultiPoly::constant(A0.vars(), GaussianRational(1));

    // Main variable: last one carrying positive degree in either operand.
    std::string v;
    for (auto it = A0.vars().rbegin(); it != A0.vars().rend(); ++it)
        if (A0.degree_in(*it) > 0 || B0.degree_in(*it) > 0) {
            v = *it;
            break;
        }
    long da = A0.degree_in(v), db = B0.degree_in(v);
    if (da == 0) return gcd(A0, content_in(B0, v));
    if (db == 0) return gcd(content_in(A0, v), B0);

    MultiPoly ca = content_in(A0, v);
    MultiPoly cb = content_in(B0, v);
    MultiPoly c = gcd(ca, cb);
    MultiPoly A = divide_exact(A0, ca);
    MultiPoly B = divide_exact(B0, cb);
    if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);

    MultiPoly last = detail::subresultant_prs_last(std::move(A), std::move(B), v);
    if (last.degree_in(v) == 0) return c.normalized();
    return (c * primitive_part_in(last, v)).normalized();
}

/// p / gcd(p, dp/dv), normalized: strips repeated factors involving v.
inline MultiPoly square_free_part(const MultiPoly& p, const std::string& v) {
    if (p.degree_in(v) < 1) throw error("square_free_part: degree in " + v + " is zero");
    MultiPoly g = gcd(p, p.derivative(v));
    return divide_exact(p, g).normalized();
}

/// Square-free part with respect to every variable: p / gcd(p, all partials).
inline MultiPoly square_free_part_total(const MultiPoly& p) {
    if (p.is_zero()) return p;
    if (p.is_constant()) return p.normalized();
    MultiPoly g = p;
    for (const auto& v : p.vars())
        if (p.degree_in(v) > 0) g = gcd(g, p.derivative(v));
    if (g.is_constant()) return p.normalized();
    return divide_exact(p, g).normalized();
}

}  // namespace webgeom

#endif
