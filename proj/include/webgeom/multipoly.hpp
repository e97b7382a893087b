#ifndef WEBGEOM_MULTIPOLY_HPP
#define WEBGEOM_MULTIPOLY_HPP

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "webgeom/rational.hpp"

namespace webgeom {

using Exponents = std::vector<int>;

/// Graded lexicographic order on exponent vectors: total degree first, then
/// lexicographic with earlier variables weighing more.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        long da = std::accumulate(a.begin(), a.end(), 0L);
        long db = std::accumulate(b.begin(), b.end(), 0L);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Sparse multivariate polynomial over Q(i) with a fixed ordered variable
/// list. The term map is canonical: no zero coefficients are stored and two
/// polynomials are equal iff their term maps agree after aligning the
/// variable lists. Values are immutable in spirit; every operation returns a
/// fresh polynomial.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, GaussianRational, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(std::vector<std::string> vars, GaussianRational c) {
        MultiPoly p(std::move(vars));
        if (!c.is_zero()) p.terms_[Exponents(p.vars_.size(), 0)] = std::move(c);
        return p;
    }
    static MultiPoly variable(const std::vector<std::string>& vars, const std::string& name) {
        MultiPoly p(vars);
        Exponents e(vars.size(), 0);
        e[p.index_of(name)] = 1;
        p.terms_[std::move(e)] = GaussianRational(1);
        return p;
    }
    static MultiPoly monomial(std::vector<std::string> vars, Exponents exps, GaussianRational c) {
        MultiPoly p(std::move(vars));
        if (exps.size() != p.vars_.size()) throw error("monomial exponent length mismatch");
        if (!c.is_zero()) p.terms_[std::move(exps)] = std::move(c);
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        const Exponents& e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
    }
    /// Value of a constant polynomial (zero for the empty one).
    GaussianRational constant_value() const {
        if (!is_constant()) throw error("constant_value on non-constant polynomial");
        return terms_.empty() ? GaussianRational(0) : terms_.begin()->second;
    }

    bool has_variable(const std::string& name) const {
        return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
    }

    long total_degree() const {
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0L));
        return d;
    }

    long degree_in(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) return terms_.empty() ? -1 : 0;
        size_t idx = it - vars_.begin();
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, (long)e[idx]);
        return d;
    }

    long degree_in_block(const std::vector<std::string>& names) const {
        std::vector<size_t> idx = indices_of(names);
        long d = -1;
        for (const auto& [e, c] : terms_) {
            long s = 0;
            for (size_t j : idx) s += e[j];
            d = std::max(d, s);
        }
        return d;
    }

    bool is_homogeneous_in_block(const std::vector<std::string>& names, long degree) const {
        std::vector<size_t> idx = indices_of(names);
        for (const auto& [e, c] : terms_) {
            long s = 0;
            for (size_t j : idx) s += e[j];
            if (s != degree) return false;
        }
        return true;
    }

    /// Grlex-leading term; the polynomial must be nonzero.
    std::pair<Exponents, GaussianRational> leading_term() const {
        if (terms_.empty()) throw error("leading term of zero polynomial");
        auto it = terms_.rbegin();
        return {it->first, it->second};
    }
    GaussianRational leading_coefficient() const { return leading_term().second; }

    MultiPoly operator-() const {
        MultiPoly r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ == b.vars_) {
            MultiPoly r = a;
            for (const auto& [e, c] : b.terms_) r.add_term(e, c);
            return r;
        }
        auto [x, y] = aligned(a, b);
        for (const auto& [e, c] : y.terms_) x.add_term(e, c);
        return x;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ == b.vars_) {
            MultiPoly r = a;
            for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
            return r;
        }
        auto [x, y] = aligned(a, b);
        for (const auto& [e, c] : y.terms_) x.add_term(e, -c);
        return x;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ == b.vars_) return multiply_same_ring(a, b);
        auto [x, y] = aligned(a, b);
        return multiply_same_ring(x, y);
    }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly scaled(const GaussianRational& c) const {
        MultiPoly r(vars_);
        if (c.is_zero()) return r;
        r.terms_ = terms_;
        for (auto& [e, t] : r.terms_) t *= c;
        return r;
    }

    MultiPoly pow(long n) const {
        if (n < 0) throw error("negative polynomial power");
        MultiPoly r = constant(vars_, GaussianRational(1));
        MultiPoly base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = (n >>= 1) ? base * base : base;
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
        auto [x, y] = aligned(a, b);
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly derivative(const std::string& name) const {
        size_t idx = index_of(name);
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[idx] == 0) continue;
            Exponents d = e;
            --d[idx];
            r.add_term(d, c * GaussianRational(e[idx]));
        }
        return r;
    }

    /// Coefficient of name^k as a polynomial over the same variable list
    /// (the exponent of `name` is zero in the result).
    MultiPoly coefficient_of(const std::string& name, long k) const {
        size_t idx = index_of(name);
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_)
            if (e[idx] == k) {
                Exponents d = e;
                d[idx] = 0;
                r.terms_[std::move(d)] = c;
            }
        return r;
    }

    /// Ascending coefficient list with respect to one variable.
    std::vector<MultiPoly> coefficients_in(const std::string& name) const {
        long d = degree_in(name);
        std::vector<MultiPoly> out;
        for (long j = 0; j <= std::max(d, 0L); ++j) out.push_back(coefficient_of(name, j));
        return out;
    }

    MultiPoly leading_coefficient_in(const std::string& name) const {
        return coefficient_of(name, std::max(degree_in(name), 0L));
    }

    /// Exact substitution variable -> polynomial; untouched variables keep
    /// their meaning. All replacement polynomials join the result's ring.
    MultiPoly substitute(const std::map<std::string, MultiPoly>& repl) const {
        // Result variable list: untouched own vars, then new vars from
        // replacements in encounter order.
        std::vector<std::string> rvars;
        for (const auto& v : vars_)
            if (!repl.count(v)) rvars.push_back(v);
        for (const auto& [name, p] : repl) {
            (void)name;
            for (const auto& v : p.vars())
                if (std::find(rvars.begin(), rvars.end(), v) == rvars.end()) rvars.push_back(v);
        }
        MultiPoly result(rvars);
        for (const auto& [e, c] : terms_) {
            MultiPoly term = constant(rvars, c);
            for (size_t i = 0; i < vars_.size(); ++i) {
                if (e[i] == 0) continue;
                auto it = repl.find(vars_[i]);
                MultiPoly factor =
                    (it == repl.end()) ? variable(rvars, vars_[i]) : it->second;
                term = term * factor.pow(e[i]);
            }
            result += term;
        }
        return result;
    }

    MultiPoly substitute_values(const std::map<std::string, GaussianRational>& vals) const {
        std::map<std::string, MultiPoly> repl;
        for (const auto& [name, v] : vals)
            if (has_variable(name)) repl.emplace(name, constant({}, v));
        return substitute(repl);
    }

    /// Rename variables; `ren` need not mention every variable. The renaming
    /// must stay injective on the variable list.
    MultiPoly renamed(const std::map<std::string, std::string>& ren) const {
        std::vector<std::string> nv = vars_;
        for (auto& v : nv) {
            auto it = ren.find(v);
            if (it != ren.end()) v = it->second;
        }
        for (size_t i = 0; i < nv.size(); ++i)
            for (size_t j = i + 1; j < nv.size(); ++j)
                if (nv[i] == nv[j]) throw error("variable renaming is not injective");
        MultiPoly r(nv);
        r.terms_ = terms_;
        return r;
    }

    /// Re-expresses the polynomial over a variable list that must contain
    /// every variable it actually uses.
    MultiPoly with_variables(const std::vector<std::string>& nvars) const {
        std::vector<long> where(vars_.size(), -1);
        for (size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(nvars.begin(), nvars.end(), vars_[i]);
            where[i] = (it == nvars.end()) ? -1 : (it - nvars.begin());
        }
        MultiPoly r(nvars);
        for (const auto& [e, c] : terms_) {
            Exponents ne(nvars.size(), 0);
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (where[i] < 0) throw error("with_variables drops used variable " + vars_[i]);
                ne[where[i]] = e[i];
            }
            r.terms_[std::move(ne)] = c;
        }
        return r;
    }

    /// Variable list restricted to the variables that actually occur.
    MultiPoly pruned() const {
        std::vector<std::string> used;
        for (size_t i = 0; i < vars_.size(); ++i)
            for (const auto& [e, c] : terms_)
                if (e[i] > 0) {
                    used.push_back(vars_[i]);
                    break;
                }
        return with_variables(used);
    }

    /// Numeric evaluation; every occurring variable must be assigned.
    /// Horner recursion over the variable tower, last variable innermost.
    std::complex<double> eval(const std::map<std::string, std::complex<double>>& vals) const {
        return eval_rec(*this, vals);
    }

    /// Canonical representative of the unit class: leading grlex coefficient
    /// scaled to 1. Zero stays zero.
    MultiPoly normalized() const {
        if (terms_.empty()) return *this;
        return scaled(GaussianRational(1) / leading_coefficient());
    }

    /// Conjugate every coefficient (variables untouched).
    MultiPoly conj_coefficients() const {
        MultiPoly r(vars_);
        r.terms_ = terms_;
        for (auto& [e, c] : r.terms_) c = c.conj();
        return r;
    }

    std::string str() const;

    static std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ == b.vars_) return {a, b};
        std::vector<std::string> merged = a.vars_;
        for (const auto& v : b.vars_)
            if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
        return {a.with_variables(merged), b.with_variables(merged)};
    }

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    size_t index_of(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) throw error("unknown variable " + name);
        return it - vars_.begin();
    }
    std::vector<size_t> indices_of(const std::vector<std::string>& names) const {
        std::vector<size_t> idx;
        for (const auto& n : names) {
            auto it = std::find(vars_.begin(), vars_.end(), n);
            if (it != vars_.end()) idx.push_back(it - vars_.begin());
        }
        return idx;
    }
    void add_term(const Exponents& e, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static MultiPoly multiply_same_ring(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(a.vars_);
        Exponents e(a.vars_.size());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend std::optional<MultiPoly> try_divide_exact(const MultiPoly& a, const MultiPoly& b);

    static std::complex<double> eval_rec(const MultiPoly& p,
                                         const std::map<std::string, std::complex<double>>& vals) {
        // Innermost occurring variable first; each level strips one variable.
        const auto& vars = p.vars();
        long idx = -1;
        for (long i = (long)vars.size() - 1; i >= 0; --i)
            if (p.degree_in(vars[i]) > 0) {
                idx = i;
                break;
            }
        if (idx < 0) return p.constant_value().to_complex();
        auto vit = vals.find(vars[idx]);
        if (vit == vals.end()) throw error("eval: unassigned variable " + vars[idx]);
        std::complex<double> x = vit->second;
        std::vector<MultiPoly> cs = p.coefficients_in(vars[idx]);
        std::complex<double> acc = 0.0;
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * x + eval_rec(*it, vals);
        return acc;
    }
};

// ---------------------------------------------------------------------------
// Printing. The output re-parses (see parse.hpp) to the identical canonical
// polynomial: terms in descending grlex order, pure-real and pure-imaginary
// coefficients inline, mixed coefficients parenthesized.

namespace detail {

inline std::string coeff_magnitude(const GaussianRational& c, bool has_monomial, bool& negative) {
    negative = false;
    if (c.is_real()) {
        mpq_class r = c.re();
        if (r < 0) {
            negative = true;
            r = -r;
        }
        if (r == 1 && has_monomial) return "";
        return r.get_str();
    }
    if (c.re() == 0) {
        mpq_class m = c.im();
        if (m < 0) {
            negative = true;
            m = -m;
        }
        if (m == 1) return "i";
        return m.get_str() + "*i";
    }
    // Mixed coefficient: pull the sign of the real part out front.
    mpq_class a = c.re(), b = c.im();
    if (a < 0) {
        negative = true;
        a = -a;
        b = -b;
    }
    std::string inner = a.get_str();
    if (b > 0) inner += "+";
    if (b == 1)
        inner += "i";
    else if (b == -1)
        inner += "-i";
    else
        inner += b.get_str() + "*i";
    return "(" + inner + ")";
}

}  // namespace detail

inline std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Exponents& e = it->first;
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        bool neg = false;
        std::string mag = detail::coeff_magnitude(it->second, !mono.empty(), neg);
        std::string term = mag;
        if (!mono.empty()) {
            if (!mag.empty()) term += "*";
            term += mono;
        }
        if (first) {
            out += (neg ? "-" : "") + term;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + term;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact division.

/// Quotient a/b when the division is exact, std::nullopt otherwise.
/// Leading-term elimination under grlex; complete for exact quotients.
inline std::optional<MultiPoly> try_divide_exact(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw error("exact division by zero polynomial");
    auto [r, d] = MultiPoly::aligned(a, b);
    MultiPoly q(r.vars());
    auto [eb, cb] = d.leading_term();
    Exponents shifted(eb.size());
    while (!r.is_zero()) {
        auto [er, cr] = r.leading_term();
        Exponents diff(er.size());
        for (size_t i = 0; i < er.size(); ++i) {
            diff[i] = er[i] - eb[i];
            if (diff[i] < 0) return std::nullopt;
        }
        GaussianRational qc = cr / cb;
        q.add_term(diff, qc);
        for (const auto& [e, c] : d.terms()) {
            for (size_t i = 0; i < e.size(); ++i) shifted[i] = e[i] + diff[i];
            r.add_term(shifted, -(c * qc));
        }
    }
    return q;
}

inline MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
    auto q = try_divide_exact(a, b);
    if (!q) throw error("inexact polynomial division");
    return *q;
}

}  // namespace webgeom

#endif
