#ifndef WEBGEOM_HERMITIAN_HPP
#define WEBGEOM_HERMITIAN_HPP

#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "webgeom/multipoly.hpp"

namespace webgeom {

/// Conjugate every coefficient and rename variables by the pairing.
/// The pairing must be an involution; variables it does not mention are
/// fixed points. Applying conj_swap twice is the identity.
inline MultiPoly conj_swap(const MultiPoly& p, const std::map<std::string, std::string>& pairing) {
    for (const auto& [a, b] : pairing) {
        auto back = pairing.find(b);
        if (b != a && (back == pairing.end() || back->second != a))
            throw error("conj_swap: pairing is not an involution (" + a + " -> " + b + ")");
    }
    std::map<std::string, std::string> ren;
    for (const auto& v : p.vars()) {
        auto it = pairing.find(v);
        if (it != pairing.end()) ren[v] = it->second;
    }
    return p.conj_coefficients().renamed(ren);
}

/// The x <-> x_bar pairing over a list of unbarred variable names.
inline std::map<std::string, std::string> bar_pairing(const std::vector<std::string>& unbarred) {
    std::map<std::string, std::string> m;
    for (const auto& v : unbarred) {
        m[v] = v + "_bar";
        m[v + "_bar"] = v;
    }
    return m;
}

struct LeviflatMembership {
    double residual = 0.0;  // |F(x, conj x)|
    bool member = false;    // residual <= tolerance
};

/// Polynomial in paired variables (x_j, x_j_bar), invariant under conj_swap.
/// Evaluated on the diagonal x_bar = conj(x) it is real-valued; that is the
/// defining function of the associated real-analytic hypersurface.
class HermitianPoly {
public:
    HermitianPoly(MultiPoly base, std::map<std::string, std::string> pairing)
        : base_(std::move(base)), pairing_(std::move(pairing)) {
        if (conj_swap(base_, pairing_) != base_)
            throw error("HermitianPoly: polynomial is not conj_swap invariant");
    }

    const MultiPoly& poly() const { return base_; }
    const std::map<std::string, std::string>& pairing() const { return pairing_; }

    /// Real value at a point; `point` assigns the unbarred variables and the
    /// barred partners take the complex conjugates. Variables fixed by the
    /// pairing are real coordinates and must be given real values.
    double value_at(const std::map<std::string, std::complex<double>>& point) const {
        std::map<std::string, std::complex<double>> vals;
        for (const auto& v : base_.vars()) {
            if (base_.degree_in(v) <= 0) continue;
            auto pit = pairing_.find(v);
            const std::string& partner = (pit == pairing_.end()) ? v : pit->second;
            if (partner == v) {
                auto it = point.find(v);
                if (it == point.end()) throw error("membership: missing coordinate " + v);
                if (std::abs(it->second.imag()) > 1e-12 * std::max(1.0, std::abs(it->second)))
                    throw error("membership: fixed variable " + v + " must be real");
                vals[v] = it->second;
            } else if (partner < v) {
                auto it = point.find(partner);  // v is the conjugated copy
                if (it == point.end()) throw error("membership: missing coordinate " + partner);
                vals[v] = std::conj(it->second);
            } else {
                auto it = point.find(v);
                if (it == point.end()) throw error("membership: missing coordinate " + v);
                vals[v] = it->second;
            }
        }
        std::complex<double> value = base_.eval(vals);
        if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value)))
            throw error("membership: evaluation is not real (normalization bug)");
        return value.real();
    }

    LeviflatMembership membership(const std::map<std::string, std::complex<double>>& point,
                                  double tolerance) const {
        double r = std::abs(value_at(point));
        return {r, r <= tolerance};
    }

private:
    MultiPoly base_;
    std::map<std::string, std::string> pairing_;
};

inline LeviflatMembership leviflat_membership(
    const HermitianPoly& h, const std::map<std::string, std::complex<double>>& point,
    double tolerance) {
    return h.membership(point, tolerance);
}

}  // namespace webgeom

#endif
