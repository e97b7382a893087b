#ifndef WEBGEOM_WEB_HPP
#define WEBGEOM_WEB_HPP

#include <complex>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "webgeom/gcd.hpp"
#include "webgeom/multipoly.hpp"
#include "webgeom/resultant.hpp"
#include "webgeom/roots.hpp"

namespace webgeom {

inline std::string diff_name(const std::string& base) { return "d" + base; }

/// Base coordinate names must be usable together with their d-prefixed
/// differentials and the reserved chart/parameter names.
inline void validate_base_names(const std::vector<std::string>& base) {
    if (base.size() < 2) throw error("web: need at least two coordinates");
    std::vector<std::string> all;
    for (const auto& b : base) {
        if (b.empty()) throw error("web: empty variable name");
        if (b == "i" || b == "p" || b == "z") throw error("web: variable name '" + b + "' is reserved");
        if (b.size() > 4 && b.substr(b.size() - 4) == "_bar")
            throw error("web: variable names may not end in _bar");
        all.push_back(b);
        all.push_back(diff_name(b));
    }
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            if (all[i] == all[j]) throw error("web: coordinate name clash on '" + all[i] + "'");
}

/// A k-web germ as a degree-k symmetric form: a polynomial in x1..xn and
/// dx1..dxn, homogeneous of degree k in the dx block, square-free there over
/// the fraction field of the coefficient ring, with unit coefficient gcd.
/// Canonical representative: grlex leading coefficient 1.
class Web {
public:
    long n() const { return (long)base_.size(); }
    long k() const { return k_; }
    const MultiPoly& form() const { return form_; }
    const std::vector<std::string>& base_vars() const { return base_; }
    const std::vector<std::string>& diff_vars() const { return diffs_; }

    friend bool operator==(const Web& a, const Web& b) {
        return a.base_ == b.base_ && a.k_ == b.k_ && a.form_ == b.form_;
    }
    friend bool operator!=(const Web& a, const Web& b) { return !(a == b); }

    friend Web make_web(const MultiPoly&, const std::vector<std::string>&, long);
    friend Web make_web_presumed_valid(const MultiPoly&, const std::vector<std::string>&, long);

private:
    Web(std::vector<std::string> base, std::vector<std::string> diffs, long k, MultiPoly form)
        : base_(std::move(base)), diffs_(std::move(diffs)), k_(k), form_(std::move(form)) {}
    std::vector<std::string> base_;
    std::vector<std::string> diffs_;
    long k_;
    MultiPoly form_;
};

namespace detail {

/// Coefficients of the distinct dx-monomials, as polynomials in the base ring.
inline std::vector<MultiPoly> diff_monomial_coefficients(const MultiPoly& form,
                                                         const std::vector<std::string>& base,
                                                         const std::vector<std::string>& diffs) {
    std::vector<std::string> ring = base;
    ring.insert(ring.end(), diffs.begin(), diffs.end());
    MultiPoly f = form.with_variables(ring);
    size_t nb = base.size();
    std::map<Exponents, MultiPoly> by_diff;
    for (const auto& [e, c] : f.terms()) {
        Exponents diff_part(e.begin() + nb, e.end());
        Exponents base_part(e.begin(), e.begin() + nb);
        auto [it, fresh] = by_diff.emplace(diff_part, MultiPoly(base));
        it->second += MultiPoly::monomial(base, base_part, c);
    }
    std::vector<MultiPoly> out;
    for (auto& [e, p] : by_diff) out.push_back(std::move(p));
    return out;
}

/// Square-freeness of `form` in the diff block over the fraction field of
/// the base ring. For n = 2 the dehomogenized chart polynomial must carry
/// no dx^2 factor and have nonvanishing discriminant (a determinant test,
/// much cheaper than a gcd); for higher n, the gcd with all diff partials.
inline bool diff_block_square_free(const MultiPoly& form, const std::vector<std::string>& base,
                                   const std::vector<std::string>& diffs, long k) {
    if (base.size() == 2) {
        std::map<std::string, MultiPoly> repl;
        std::vector<std::string> tring = {base[0], base[1], "#t"};
        repl.emplace(diffs[0], MultiPoly::constant(tring, GaussianRational(1)));
        repl.emplace(diffs[1], MultiPoly::variable(tring, "#t"));
        MultiPoly f = form.substitute(repl);
        long dt = f.degree_in("#t");
        if (dt < k - 1) return false;  // dx^2 divides the form
        return square_free_in(f, "#t");
    }
    MultiPoly g = form;
    for (const auto& d : diffs)
        if (form.degree_in(d) > 0) g = gcd(g, form.derivative(d));
    return g.degree_in_block(diffs) == 0;
}

}  // namespace detail

/// Validate and canonicalize a symmetric form into a Web. Rejects forms that
/// are not homogeneous of degree k in the differentials, have a square
/// factor, or share a coefficient factor (codimension-one zero set).
inline Web make_web(const MultiPoly& form, const std::vector<std::string>& base, long k) {
    validate_base_names(base);
    if (form.is_zero()) throw error("make_web: zero form");
    if (k < 1) throw error("make_web: degree must be positive");
    std::vector<std::string> diffs;
    for (const auto& b : base) diffs.push_back(diff_name(b));
    std::vector<std::string> ring = base;
    ring.insert(ring.end(), diffs.begin(), diffs.end());
    MultiPoly used = form.pruned();
    for (const auto& v : used.vars()) {
        bool known = std::find(ring.begin(), ring.end(), v) != ring.end();
        if (!known) throw error("make_web: form uses unknown variable " + v);
    }
    MultiPoly f = form.with_variables(ring);
    if (!f.is_homogeneous_in_block(diffs, k))
        throw error("make_web: form is not homogeneous of degree " + std::to_string(k) +
                    " in the differentials");

    auto coeffs = detail::diff_monomial_coefficients(f, base, diffs);
    MultiPoly content(base);
    for (const auto& c : coeffs) content = gcd(content, c);
    if (!content.is_constant())
        throw error("make_web: common coefficient factor (" + content.str() +
                    "): zero set has codimension one");

    if (!detail::diff_block_square_free(f, base, diffs, k))
        throw error("make_web: square factor in the differential block");

    return Web(base, diffs, k, f.normalized());
}

/// Internal fast path: the caller guarantees the invariants already hold
/// (used where they follow by construction, e.g. products of validated
/// pairwise-coprime webs, whose primitivity and square-freeness are
/// preserved by Gauss's lemma).
inline Web make_web_presumed_valid(const MultiPoly& form, const std::vector<std::string>& base,
                                   long k) {
    std::vector<std::string> diffs;
    for (const auto& b : base) diffs.push_back(diff_name(b));
    std::vector<std::string> ring = base;
    ring.insert(ring.end(), diffs.begin(), diffs.end());
    return Web(base, diffs, k, form.with_variables(ring).normalized());
}

/// Product of webs over the same coordinates; degrees add. Inputs must be
/// pairwise coprime or the product would not be square-free.
inline Web superpose(const std::vector<Web>& webs) {
    if (webs.empty()) throw error("superpose: no webs");
    const auto& base = webs[0].base_vars();
    long k = 0;
    MultiPoly product = MultiPoly::constant(webs[0].form().vars(), GaussianRational(1));
    for (size_t i = 0; i < webs.size(); ++i) {
        if (webs[i].base_vars() != base) throw error("superpose: coordinate mismatch");
        for (size_t j = i + 1; j < webs.size(); ++j)
            if (!gcd(webs[i].form(), webs[j].form()).is_constant())
                throw error("superpose: inputs share a factor");
        k += webs[i].k();
        product *= webs[i].form();
    }
    return make_web_presumed_valid(product, base, k);
}

/// x_old = matrix * x_new on both the base and differential blocks, reusing
/// the original variable names.
inline Web apply_linear_change(const Web& w,
                               const std::vector<std::vector<GaussianRational>>& matrix) {
    long n = w.n();
    if ((long)matrix.size() != n) throw error("apply_linear_change: matrix size mismatch");
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n));
    for (long i = 0; i < n; ++i) {
        if ((long)matrix[i].size() != n) throw error("apply_linear_change: matrix size mismatch");
        for (long j = 0; j < n; ++j) m[i][j] = MultiPoly::constant({}, matrix[i][j]);
    }
    if (determinant(m).is_zero()) throw error("apply_linear_change: singular matrix");

    std::map<std::string, std::string> ren;
    std::map<std::string, MultiPoly> subs;
    const auto& base = w.base_vars();
    const auto& diffs = w.diff_vars();
    std::vector<std::string> ring = base;
    ring.insert(ring.end(), diffs.begin(), diffs.end());
    for (long j = 0; j < n; ++j) {
        ren[base[j]] = "#b" + std::to_string(j);
        ren[diffs[j]] = "#d" + std::to_string(j);
        MultiPoly bx(ring), dx(ring);
        for (long l = 0; l < n; ++l) {
            bx += MultiPoly::variable(ring, base[l]).scaled(matrix[j][l]);
            dx += MultiPoly::variable(ring, diffs[l]).scaled(matrix[j][l]);
        }
        subs.emplace("#b" + std::to_string(j), std::move(bx));
        subs.emplace("#d" + std::to_string(j), std::move(dx));
    }
    return make_web(w.form().renamed(ren).substitute(subs), base, w.k());
}

struct ChartChange {
    std::vector<std::vector<GaussianRational>> matrix;  // x_old = matrix * x_new
    bool identity = false;
};

/// Deterministic search for a linear change making the coefficient of
/// dx_n^k nonzero at the origin (candidate last columns with entries in
/// {-3..3}, identity first). Throws when the budget is exhausted, which
/// happens exactly when the symbol at the origin vanishes on the whole box.
inline std::pair<Web, ChartChange> adapt_chart(const Web& w) {
    long n = w.n();
    std::map<std::string, GaussianRational> origin;
    for (const auto& b : w.base_vars()) origin[b] = GaussianRational(0);
    MultiPoly symbol = w.form().substitute_values(origin);

    auto symbol_at = [&](const std::vector<GaussianRational>& v) {
        std::map<std::string, GaussianRational> vals;
        for (long j = 0; j < n; ++j) vals[w.diff_vars()[j]] = v[j];
        return symbol.substitute_values(vals).constant_value();
    };

    auto change_for = [&](const std::vector<GaussianRational>& v) {
        std::vector<std::vector<GaussianRational>> A(n, std::vector<GaussianRational>(n, 0));
        for (long i = 0; i < n; ++i) A[i][i] = GaussianRational(1);
        for (long i = 0; i < n; ++i) A[i][n - 1] = v[i];
        return A;
    };

    std::vector<GaussianRational> en(n, 0);
    en[n - 1] = GaussianRational(1);
    if (!symbol_at(en).is_zero()) return {w, ChartChange{change_for(en), true}};

    static const long order[] = {0, 1, -1, 2, -2, 3, -3};
    std::vector<size_t> odo(n, 0);
    for (;;) {
        std::vector<GaussianRational> v(n);
        for (long j = 0; j < n; ++j) v[j] = GaussianRational(order[odo[j]]);
        bool skip = v[n - 1].is_zero();  // keep the change invertible
        if (!skip) {
            bool is_en = true;
            for (long j = 0; j < n; ++j)
                if (v[j] != en[j]) {
                    is_en = false;
                    break;
                }
            if (!is_en && !symbol_at(v).is_zero())
                return {apply_linear_change(w, change_for(v)), ChartChange{change_for(v), false}};
        }
        long pos = n - 1;
        while (pos >= 0 && ++odo[pos] == 7) odo[pos--] = 0;
        if (pos < 0) break;
    }
    throw error("adapt_chart: search budget exhausted (last-column entries in {-3..3})");
}

/// Monte-Carlo necessary test of Brill's condition: at sampled base points,
/// the symbol must look like a product of linear forms, i.e. its Hessian
/// quadratic form vanishes on the tangent hyperplane at sampled smooth cone
/// points. True is evidence, not proof; automatic for n = 2.
inline bool brill_check(const Web& w, int samples, double tolerance, unsigned long seed) {
    long n = w.n();
    if (n <= 2) return true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-5, 5);
    std::uniform_int_distribution<long> small(-4, 4);
    const auto& diffs = w.diff_vars();

    for (int s = 0; s < samples; ++s) {
        MultiPoly symbol(w.form().vars());
        bool found_symbol = false;
        for (int attempt = 0; attempt < 20 && !found_symbol; ++attempt) {
            std::map<std::string, GaussianRational> at;
            for (const auto& b : w.base_vars()) at[b] = GaussianRational(coord(rng));
            symbol = w.form().substitute_values(at);
            found_symbol = !symbol.is_zero();
        }
        if (!found_symbol) throw error("brill_check: symbol vanishes at every sampled point");

        std::vector<MultiPoly> grad(n), hess(n * n, MultiPoly(symbol.vars()));
        for (long j = 0; j < n; ++j) grad[j] = symbol.derivative(diffs[j]);
        for (long j = 0; j < n; ++j)
            for (long l = j; l < n; ++l) hess[j * n + l] = grad[j].derivative(diffs[l]);

        int cone_points = 0;
        for (int attempt = 0; attempt < 40 && cone_points < 2; ++attempt) {
            // Random exact line dx = a + t b; its intersection with the cone.
            std::vector<GaussianRational> a(n), b(n);
            for (long j = 0; j < n; ++j) {
                a[j] = GaussianRational(mpq_class(small(rng)), mpq_class(small(rng)));
                b[j] = GaussianRational(mpq_class(small(rng)), mpq_class(small(rng)));
            }
            std::vector<std::string> tring = {"#t"};
            std::map<std::string, MultiPoly> repl;
            for (long j = 0; j < n; ++j)
                repl.emplace(diffs[j], MultiPoly::constant(tring, a[j]) +
                                           MultiPoly::variable(tring, "#t").scaled(b[j]));
            MultiPoly psi = symbol.substitute(repl);
            if (psi.degree_in("#t") < 1) continue;
            std::vector<std::complex<double>> cs;
            for (const auto& c : psi.coefficients_in("#t")) cs.push_back(c.constant_value().to_complex());
            std::vector<std::complex<double>> ts;
            try {
                ts = durand_kerner(cs);
            } catch (const error&) {
                continue;
            }

            for (const auto& t0 : ts) {
                std::map<std::string, std::complex<double>> at;
                double vmax = 0.0;
                for (long j = 0; j < n; ++j) {
                    at[diffs[j]] = a[j].to_complex() + t0 * b[j].to_complex();
                    vmax = std::max(vmax, std::abs(at[diffs[j]]));
                }
                std::vector<std::complex<double>> g(n);
                double gmax = 0.0;
                for (long j = 0; j < n; ++j) {
                    g[j] = grad[j].eval(at);
                    gmax = std::max(gmax, std::abs(g[j]));
                }
                std::vector<std::complex<double>> H(n * n);
                double hmax = 0.0;
                for (long j = 0; j < n; ++j)
                    for (long l = j; l < n; ++l) {
                        H[j * n + l] = H[l * n + j] = hess[j * n + l].eval(at);
                        hmax = std::max(hmax, std::abs(H[j * n + l]));
                    }
                if (gmax <= 1e-8 * (1.0 + hmax) * (1.0 + vmax)) continue;  // not a smooth point

                long m = 0;
                for (long j = 0; j < n; ++j)
                    if (std::abs(g[j]) > std::abs(g[m])) m = j;
                // Kernel basis of the gradient: w_j = e_j - (g_j/g_m) e_m.
                std::vector<std::vector<std::complex<double>>> ker;
                for (long j = 0; j < n; ++j) {
                    if (j == m) continue;
                    std::vector<std::complex<double>> wv(n, 0.0);
                    wv[j] = 1.0;
                    wv[m] = -g[j] / g[m];
                    ker.push_back(std::move(wv));
                }
                for (size_t aidx = 0; aidx < ker.size(); ++aidx)
                    for (size_t bidx = aidx; bidx < ker.size(); ++bidx) {
                        std::complex<double> q = 0.0;
                        double na = 0.0, nb = 0.0;
                        for (long j = 0; j < n; ++j) {
                            na = std::max(na, std::abs(ker[aidx][j]));
                            nb = std::max(nb, std::abs(ker[bidx][j]));
                            for (long l = 0; l < n; ++l)
                                q += ker[aidx][j] * H[j * n + l] * ker[bidx][l];
                        }
                        if (std::abs(q) > tolerance * std::max(1e-12, hmax) * na * nb * n * n)
                            return false;
                    }
                ++cone_points;
                if (cone_points >= 2) break;
            }
        }
        if (cone_points == 0)
            throw error("brill_check: failed to locate smooth cone points (degenerate symbol)");
    }
    return true;
}

/// Exact Frobenius integrability of explicit 1-form factors: theta ^ dtheta
/// must vanish identically for each factor.
inline bool frobenius_check_decomposable(const std::vector<MultiPoly>& factors,
                                         const std::vector<std::string>& base) {
    std::vector<std::string> diffs;
    for (const auto& b : base) diffs.push_back(diff_name(b));
    long n = (long)base.size();
    for (const auto& theta : factors) {
        if (!theta.is_homogeneous_in_block(diffs, 1))
            throw error("frobenius_check: factor is not a 1-form");
        std::vector<MultiPoly> c(n);
        for (long m = 0; m < n; ++m) c[m] = theta.coefficient_of(diffs[m], 1);
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j)
                for (long l = j + 1; l < n; ++l) {
                    auto A = [&](long r, long m) {
                        return c[m].derivative(base[r]) - c[r].derivative(base[m]);
                    };
                    MultiPoly t = c[i] * A(j, l) - c[j] * A(i, l) + c[l] * A(i, j);
                    if (!t.is_zero()) return false;
                }
    }
    return true;
}

/// Full-rank n x 2 matrix embedding a 2-plane through the origin.
struct PlaneEmbedding {
    explicit PlaneEmbedding(std::vector<std::vector<GaussianRational>> m) : matrix(std::move(m)) {
        if (matrix.size() < 2) throw error("plane embedding needs dimension >= 2");
        bool full_rank = false;
        for (size_t i = 0; i < matrix.size() && !full_rank; ++i) {
            if (matrix[i].size() != 2) throw error("plane embedding must have two columns");
            for (size_t j = i + 1; j < matrix.size() && !full_rank; ++j)
                full_rank = !(matrix[i][0] * matrix[j][1] - matrix[i][1] * matrix[j][0]).is_zero();
        }
        for (const auto& row : matrix)
            if (row.size() != 2) throw error("plane embedding must have two columns");
        if (!full_rank) throw error("plane embedding is not of rank 2");
    }
    std::vector<std::vector<GaussianRational>> matrix;  // n rows, 2 columns
};

/// Pull the web back along x = M (u, v); rejects non-transverse planes,
/// detected after the fact by a degenerate pullback (zero form, degree drop
/// or square factor).
inline Web restrict_to_plane(const Web& w, const PlaneEmbedding& plane) {
    long n = w.n();
    if ((long)plane.matrix.size() != n) throw error("restrict_to_plane: dimension mismatch");
    std::vector<std::string> uv = {"u", "v"};
    std::vector<std::string> ring = {"u", "v", "du", "dv"};
    std::map<std::string, std::string> ren;
    std::map<std::string, MultiPoly> subs;
    for (long j = 0; j < n; ++j) {
        ren[w.base_vars()[j]] = "#b" + std::to_string(j);
        ren[w.diff_vars()[j]] = "#d" + std::to_string(j);
        MultiPoly bx = MultiPoly::variable(ring, "u").scaled(plane.matrix[j][0]) +
                       MultiPoly::variable(ring, "v").scaled(plane.matrix[j][1]);
        MultiPoly dx = MultiPoly::variable(ring, "du").scaled(plane.matrix[j][0]) +
                       MultiPoly::variable(ring, "dv").scaled(plane.matrix[j][1]);
        subs.emplace("#b" + std::to_string(j), std::move(bx));
        subs.emplace("#d" + std::to_string(j), std::move(dx));
    }
    MultiPoly pulled = w.form().renamed(ren).substitute(subs);
    if (pulled.is_zero()) throw error("restrict_to_plane: pullback vanishes (non-transverse plane)");
    try {
        return make_web(pulled, uv, w.k());
    } catch (const error& e) {
        throw error(std::string("restrict_to_plane: degenerate pullback (") + e.what() + ")");
    }
}

}  // namespace webgeom

#endif
