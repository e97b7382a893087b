#ifndef WEBGEOM_FIRST_INTEGRAL_HPP
#define WEBGEOM_FIRST_INTEGRAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "webgeom/contact.hpp"
#include "webgeom/gcd.hpp"
#include "webgeom/hermitian.hpp"
#include "webgeom/multipoly.hpp"
#include "webgeom/resultant.hpp"
#include "webgeom/web.hpp"

namespace webgeom {

/// Monic polynomial family P(z) = f0 + f1 z + ... + f_{k-1} z^{k-1} + z^k
/// with coefficients in the coordinate ring; the hypersurfaces P(., z0) = 0
/// sweep out the leaves of a web. Square-free in z over the fraction field.
class FirstIntegral {
public:
    FirstIntegral(std::vector<std::string> xvars, std::vector<MultiPoly> coeffs)
        : xvars_(std::move(xvars)), coeffs_(std::move(coeffs)) {
        if (xvars_.empty()) throw error("first integral: no coordinates");
        for (const auto& v : xvars_) {
            if (v == "z" || v == "i" || v == "p")
                throw error("first integral: variable name '" + v + "' is reserved");
            if (v.size() > 4 && v.substr(v.size() - 4) == "_bar")
                throw error("first integral: variable names may not end in _bar");
        }
        if (coeffs_.empty()) throw error("first integral: degree must be positive");
        for (auto& c : coeffs_) c = c.with_variables(xvars_);
        if (k() >= 2) {
            if (!square_free_in(as_poly(), "z"))
                throw error("first integral: P is not square-free in z");
        }
    }

    /// Extract from a polynomial monic (up to a constant unit) in `zname`.
    static FirstIntegral from_poly(const MultiPoly& P, const std::vector<std::string>& xvars,
                                   const std::string& zname = "z") {
        long k = P.degree_in(zname);
        if (k < 1) throw error("first integral: degree in " + zname + " must be positive");
        MultiPoly lead = P.coefficient_of(zname, k);
        if (!lead.is_constant())
            throw error("first integral: leading z-coefficient is not a unit constant");
        MultiPoly monic = P.scaled(GaussianRational(1) / lead.constant_value());
        std::vector<MultiPoly> cs;
        for (long j = 0; j < k; ++j) cs.push_back(monic.coefficient_of(zname, j).with_variables(xvars));
        return FirstIntegral(xvars, std::move(cs));
    }

    long k() const { return (long)coeffs_.size(); }
    const std::vector<std::string>& vars() const { return xvars_; }
    const MultiPoly& coefficient(long j) const { return coeffs_.at(j); }

    /// P as a polynomial over xvars + [zname].
    MultiPoly as_poly(const std::string& zname = "z") const {
        std::vector<std::string> ring = xvars_;
        ring.push_back(zname);
        MultiPoly z = MultiPoly::variable(ring, zname);
        MultiPoly P = z.pow(k());
        for (long j = 0; j < k(); ++j) P += coeffs_[j].with_variables(ring) * z.pow(j);
        return P;
    }

    /// Same leaf family with the parameter shifted: P(z - c).
    FirstIntegral reparametrized(const GaussianRational& c) const {
        std::vector<std::string> ring = xvars_;
        ring.push_back("z");
        MultiPoly shifted = MultiPoly::variable(ring, "z") - MultiPoly::constant(ring, c);
        return from_poly(as_poly().substitute({{"z", shifted}}), xvars_);
    }

    friend bool operator==(const FirstIntegral& a, const FirstIntegral& b) {
        return a.xvars_ == b.xvars_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const FirstIntegral& a, const FirstIntegral& b) { return !(a == b); }

private:
    std::vector<std::string> xvars_;
    std::vector<MultiPoly> coeffs_;  // ascending, z^k implicit
};

/// Eliminate z from {P = 0, dP = 0}: the web swept by the leaf family.
/// Errors when the elimination collapses (resultant identically zero, or the
/// reduced form has degree below k in the differentials).
inline Web web_from_first_integral(const FirstIntegral& fi) {
    const auto& xv = fi.vars();
    if (xv.size() < 2) throw error("web_from_first_integral: need at least two coordinates");
    std::vector<std::string> diffs;
    for (const auto& v : xv) diffs.push_back(diff_name(v));
    std::vector<std::string> ring = xv;
    ring.push_back("z");
    ring.insert(ring.end(), diffs.begin(), diffs.end());

    MultiPoly P = fi.as_poly().with_variables(ring);
    MultiPoly dP(ring);
    for (size_t j = 0; j < xv.size(); ++j)
        dP += P.derivative(xv[j]) * MultiPoly::variable(ring, diffs[j]);
    if (dP.is_zero())
        throw error("web_from_first_integral: dP vanishes identically (constant leaf family)");

    long dz = dP.degree_in("z");
    MultiPoly R = (dz == 0) ? dP.pow(fi.k()) : resultant(P, dP, "z");
    if (R.is_zero())
        throw error("web_from_first_integral: resultant vanished identically (degenerate family)");

    auto strip_content = [&](MultiPoly r) {
        auto coeffs = detail::diff_monomial_coefficients(r, xv, diffs);
        MultiPoly content(xv);
        for (const auto& c : coeffs) content = gcd(content, c);
        if (!content.is_constant()) r = divide_exact(r, content.with_variables(ring));
        return r;
    };
    R = strip_content(std::move(R));
    if (!detail::diff_block_square_free(R, xv, diffs, R.degree_in_block(diffs)))
        R = strip_content(square_free_part_total(R));
    if (R.degree_in_block(diffs) != fi.k())
        throw error("web_from_first_integral: degenerate degree (leaf family collapses to degree " +
                    std::to_string(R.degree_in_block(diffs)) + ")");
    validate_base_names(xv);
    return make_web_presumed_valid(R, xv, fi.k());
}

struct VerifyResult {
    enum class Status { verified, degree_mismatch, coefficient_mismatch, degenerate };
    Status status = Status::degenerate;
    std::string detail;
    bool ok() const { return status == Status::verified; }
    explicit operator bool() const { return ok(); }
};

/// Exact leaf-family check: the web eliminated from P must equal the given
/// web as canonical forms. Degree and coefficient mismatches are reported
/// apart.
inline VerifyResult verify_first_integral(const Web& w, const FirstIntegral& fi) {
    if (w.base_vars() != fi.vars())
        throw error("verify_first_integral: coordinate mismatch between web and first integral");
    std::optional<Web> eliminated;
    try {
        eliminated = web_from_first_integral(fi);
    } catch (const error& e) {
        return {VerifyResult::Status::degenerate, e.what()};
    }
    const Web& candidate = *eliminated;
    if (candidate.k() != w.k())
        return {VerifyResult::Status::degree_mismatch,
                "eliminated web has degree " + std::to_string(candidate.k()) + ", expected " +
                    std::to_string(w.k())};
    if (candidate == w) return {VerifyResult::Status::verified, ""};
    return {VerifyResult::Status::coefficient_mismatch,
            "eliminated form " + candidate.form().str() + " differs from " + w.form().str()};
}

struct CharPoly {
    MultiPoly poly;  // monic in z, coefficients in the base ring
    std::optional<FirstIntegral> first_integral;
    bool degenerate = false;  // g collapsed sheets (z-repeated factors)
};

/// Characteristic polynomial of a function on the branched cover {F = 0}:
/// P_g(z) = Res_p(F, z - g), monic-normalized. Satisfies P_g(g) = 0 modulo
/// F; see char_poly_annihilates.
inline CharPoly char_poly_of_function(const ImplicitOde& ode, const MultiPoly& g) {
    std::vector<std::string> ring = {ode.x(), ode.y(), "p", "z"};
    MultiPoly G = g.with_variables(ring);
    MultiPoly zg = MultiPoly::variable(ring, "z") - G;
    MultiPoly R;
    if (G.degree_in("p") == 0) {
        R = zg.pow(ode.k());  // g does not separate the sheets
    } else {
        R = resultant(ode.F().with_variables(ring), zg, "p");
    }
    long k = R.degree_in("z");
    MultiPoly lead = R.coefficient_of("z", k);
    if (!lead.is_constant())
        throw error("char_poly_of_function: leading z-coefficient is not a unit "
                    "(normalize F in p first)");
    MultiPoly P = R.scaled(GaussianRational(1) / lead.constant_value());

    CharPoly out;
    out.poly = P.with_variables({ode.x(), ode.y(), "z"});
    out.degenerate = (k >= 2) && !square_free_in(out.poly, "z");
    if (!out.degenerate)
        out.first_integral = FirstIntegral::from_poly(out.poly, {ode.x(), ode.y()});
    return out;
}

/// Exact check that P(g) lies in the ideal of the surface.
inline bool char_poly_annihilates(const ImplicitOde& ode, const MultiPoly& g,
                                  const MultiPoly& P_in_z) {
    std::vector<std::string> ring = {ode.x(), ode.y(), "p", "z"};
    MultiPoly Pg = P_in_z.with_variables(ring).substitute({{"z", g.with_variables(ring)}});
    return try_divide_exact(Pg, ode.F()).has_value();
}

/// Eliminate z between P and its conjugate family: the defining function of
/// the Levi-flat hypersurface swept by the leaves with real parameter.
/// Realness normalization: Res(P, conj P) is conj_swap-(anti)invariant with
/// sign (-1)^(k^2); odd k is fixed by the factor -i, and the result is
/// scaled by a real rational so the leading coefficient has unit real (or
/// purely imaginary) part.
inline HermitianPoly leviflat_from_first_integral(const FirstIntegral& fi) {
    auto pairing = bar_pairing(fi.vars());
    MultiPoly P = fi.as_poly();
    MultiPoly Q = conj_swap(P, pairing);  // z is a fixed point of the pairing
    MultiPoly raw = resultant(P, Q, "z");
    if (raw.is_zero())
        throw error("leviflat_from_first_integral: resultant vanished identically "
                    "(P shares a factor with its conjugate family)");
    MultiPoly swapped = conj_swap(raw, pairing);
    MultiPoly F;
    if (swapped == raw)
        F = raw;
    else if (swapped == -raw)
        F = raw.scaled(GaussianRational(mpq_class(0), mpq_class(-1)));
    else
        throw error("leviflat_from_first_integral: realness normalization failed");

    GaussianRational lead = F.leading_coefficient();
    mpq_class r = (lead.re() != 0) ? lead.re() : lead.im();
    F = F.scaled(GaussianRational(mpq_class(1) / r));

    std::vector<std::string> ring = fi.vars();
    for (const auto& v : fi.vars()) ring.push_back(v + "_bar");
    return HermitianPoly(F.pruned().with_variables(ring), pairing);
}

}  // namespace webgeom

#endif
