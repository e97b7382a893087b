#ifndef WEBGEOM_RESULTANT_HPP
#define WEBGEOM_RESULTANT_HPP

#include <random>
#include <string>
#include <vector>

#include "webgeom/gcd.hpp"
#include "webgeom/multipoly.hpp"

namespace webgeom {

/// Sylvester matrix of f, g with respect to `var`, built from the nominal
/// degrees as given (no projective normalization; callers wanting that must
/// normalize first). Both degrees must be >= 1.
inline std::vector<std::vector<MultiPoly>> sylvester_matrix(const MultiPoly& f,
                                                            const MultiPoly& g,
                                                            const std::string& var) {
    auto [F, G] = MultiPoly::aligned(f, g);
    long m = F.degree_in(var), n = G.degree_in(var);
    if (m < 1 || n < 1) throw error("sylvester_matrix: degree in " + var + " must be positive");
    std::vector<MultiPoly> fc, gc;  // descending coefficients
    for (long i = m; i >= 0; --i) fc.push_back(F.coefficient_of(var, i));
    for (long i = n; i >= 0; --i) gc.push_back(G.coefficient_of(var, i));
    size_t size = m + n;
    std::vector<std::vector<MultiPoly>> M(size, std::vector<MultiPoly>(size, MultiPoly(F.vars())));
    for (long r = 0; r < n; ++r)
        for (long j = 0; j <= m; ++j) M[r][r + j] = fc[j];
    for (long r = 0; r < m; ++r)
        for (long j = 0; j <= n; ++j) M[n + r][r + j] = gc[j];
    return M;
}

/// Fraction-free determinant (Bareiss) with row pivoting. Exact over the
/// polynomial ring; every division is by a previous pivot and is exact.
inline MultiPoly determinant(std::vector<std::vector<MultiPoly>> M) {
    size_t n = M.size();
    if (n == 0) throw error("determinant of empty matrix");
    int sign = 1;
    MultiPoly prev = MultiPoly::constant(M[0][0].vars(), GaussianRational(1));
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].is_zero()) {
            size_t r = k + 1;
            while (r < n && M[r][k].is_zero()) ++r;
            if (r == n) return MultiPoly(M[0][0].vars());
            std::swap(M[k], M[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                M[i][j] = divide_exact(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
            M[i][k] = MultiPoly(M[0][0].vars());
        }
        prev = M[k][k];
    }
    return sign < 0 ? -M[n - 1][n - 1] : M[n - 1][n - 1];
}

/// Resultant of f and g with respect to `var`: the Sylvester determinant.
/// Convention: Res(f,g) = lc(f)^deg(g) * prod g(alpha) over the roots of f.
inline MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, const std::string& var) {
    return determinant(sylvester_matrix(f, g, var));
}

/// Exact square-freeness of f in `var` over the fraction field of the other
/// variables. Cheap route first: a rational specialization that keeps the
/// leading coefficient alive and has nonzero discriminant certifies
/// square-freeness; only when every sample degenerates does the symbolic
/// resultant decide.
inline bool square_free_in(const MultiPoly& f, const std::string& var) {
    long d = f.degree_in(var);
    if (d < 2) return true;
    MultiPoly fp = f.derivative(var);
    MultiPoly lc = f.leading_coefficient_in(var);
    std::vector<std::string> others;
    for (const auto& v : f.vars())
        if (v != var && f.degree_in(v) > 0) others.push_back(v);
    if (others.empty()) return !resultant(f, fp, var).is_zero();
    for (unsigned attempt = 0; attempt < 6; ++attempt) {
        std::mt19937_64 rng(0x5eedf00d + attempt);
        std::map<std::string, GaussianRational> at;
        for (const auto& v : others) at[v] = GaussianRational((long)(rng() % 61) - 30);
        if (lc.substitute_values(at).is_zero()) continue;
        MultiPoly f0 = f.substitute_values(at);
        if (!resultant(f0, f0.derivative(var), var).is_zero()) return true;
    }
    return !resultant(f, fp, var).is_zero();
}

/// Res_var(p, dp/dvar) / lc_var(p), canonicalized and square-free.
/// Requires degree >= 2 in `var`; the result is a polynomial in the
/// remaining variables, zero iff p has a repeated factor involving var.
inline MultiPoly discriminant_in(const MultiPoly& p, const std::string& var) {
    if (p.degree_in(var) < 2) throw error("discriminant_in: degree in " + var + " is below 2");
    MultiPoly r = resultant(p, p.derivative(var), var);
    r = divide_exact(r, p.leading_coefficient_in(var));
    if (r.is_zero()) return r;
    return square_free_part_total(r);
}

}  // namespace webgeom

#endif
