#ifndef WEBGEOM_FORMATS_HPP
#define WEBGEOM_FORMATS_HPP

#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "webgeom/clairaut.hpp"
#include "webgeom/first_integral.hpp"
#include "webgeom/parse.hpp"
#include "webgeom/trace.hpp"
#include "webgeom/web.hpp"

namespace webgeom {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct HeaderFields {
    long n = -1, k = -1;
    std::vector<std::string> vars;
};

inline HeaderFields parse_header(const std::string& line, const std::string& tag) {
    auto tokens = split(strip(line), ' ');
    if (tokens.empty() || tokens[0] != tag)
        throw parse_error("expected '" + tag + "' header", 1, 1);
    HeaderFields h;
    for (size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i].empty()) continue;
        auto kv = split(tokens[i], '=');
        if (kv.size() != 2) throw parse_error("bad header field '" + tokens[i] + "'", 1, 1);
        if (kv[0] == "n")
            h.n = std::stol(kv[1]);
        else if (kv[0] == "k")
            h.k = std::stol(kv[1]);
        else if (kv[0] == "vars")
            h.vars = split(kv[1], ',');
        else
            throw parse_error("unknown header field '" + kv[0] + "'", 1, 1);
    }
    return h;
}

}  // namespace detail

// --- Web text format -------------------------------------------------------
// header:  web n=<n> k=<k> vars=x,y
// body:    one polynomial in the base variables and their d-differentials

inline Web read_web(const std::string& text) {
    size_t nl = text.find('\n');
    std::string header = (nl == std::string::npos) ? text : text.substr(0, nl);
    std::string body = (nl == std::string::npos) ? "" : text.substr(nl + 1);
    auto h = detail::parse_header(header, "web");
    if (h.vars.empty()) throw parse_error("web header needs vars=", 1, 1);
    if (h.n >= 0 && h.n != (long)h.vars.size())
        throw parse_error("web header: n does not match vars", 1, 1);
    if (h.k < 1) throw parse_error("web header needs k>=1", 1, 1);
    std::vector<std::string> ring = h.vars;
    for (const auto& v : h.vars) ring.push_back(diff_name(v));
    return make_web(parse_poly(body, ring), h.vars, h.k);
}

/// Inline convenience: either the full header format or a bare planar form
/// in x, y, dx, dy (degree inferred from the differential block).
inline Web read_web_flexible(const std::string& text) {
    std::string t = detail::strip(text);
    if (t.rfind("web", 0) == 0) return read_web(t);
    std::vector<std::string> ring = {"x", "y", "dx", "dy"};
    MultiPoly form = parse_poly(t, ring);
    long k = form.degree_in_block({"dx", "dy"});
    if (k < 1) throw error("web expression has no differentials");
    return make_web(form, {"x", "y"}, k);
}

inline std::string write_web(const Web& w) {
    std::ostringstream os;
    os << "web n=" << w.n() << " k=" << w.k() << " vars=";
    for (long j = 0; j < w.n(); ++j) os << (j ? "," : "") << w.base_vars()[j];
    os << "\n" << w.form().str() << "\n";
    return os.str();
}

// --- First-integral text format ---------------------------------------------
// header:  fi k=<k> vars=x,y
// body:    k lines "f<j> = <polynomial>", leading coefficient implicitly 1

inline FirstIntegral read_first_integral(const std::string& text) {
    auto lines = detail::split(text, '\n');
    if (lines.empty()) throw parse_error("empty first-integral input", 1, 1);
    auto h = detail::parse_header(lines[0], "fi");
    if (h.vars.empty()) throw parse_error("fi header needs vars=", 1, 1);
    if (h.k < 1) throw parse_error("fi header needs k>=1", 1, 1);
    std::vector<MultiPoly> coeffs((size_t)h.k, MultiPoly(h.vars));
    std::vector<bool> seen((size_t)h.k, false);
    for (size_t li = 1; li < lines.size(); ++li) {
        std::string line = detail::strip(lines[li]);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw parse_error("expected f<j> = <polynomial>", li + 1, 1);
        std::string lhs = detail::strip(line.substr(0, eq));
        if (lhs.size() < 2 || lhs[0] != 'f') throw parse_error("bad coefficient name " + lhs, li + 1, 1);
        long j = std::stol(lhs.substr(1));
        if (j < 0 || j >= h.k) throw parse_error("coefficient index out of range", li + 1, 1);
        coeffs[j] = parse_poly(line.substr(eq + 1), h.vars);
        seen[j] = true;
    }
    for (long j = 0; j < h.k; ++j)
        if (!seen[j]) throw parse_error("missing coefficient f" + std::to_string(j), 1, 1);
    return FirstIntegral(h.vars, std::move(coeffs));
}

/// Inline convenience: full format, or a bare monic polynomial in z over x, y.
inline FirstIntegral read_first_integral_flexible(const std::string& text) {
    std::string t = detail::strip(text);
    if (t.rfind("fi", 0) == 0 && (t.size() == 2 || t[2] == ' ')) return read_first_integral(t);
    MultiPoly P = parse_poly(t, {"x", "y", "z"});
    return FirstIntegral::from_poly(P, {"x", "y"});
}

inline std::string write_first_integral(const FirstIntegral& fi) {
    std::ostringstream os;
    os << "fi k=" << fi.k() << " vars=";
    for (size_t j = 0; j < fi.vars().size(); ++j) os << (j ? "," : "") << fi.vars()[j];
    os << "\n";
    for (long j = 0; j < fi.k(); ++j) os << "f" << j << " = " << fi.coefficient(j).str() << "\n";
    return os.str();
}

// --- Trace CSV ---------------------------------------------------------------

inline std::string trace_csv(const LeafTrace& trace, const ImplicitOde& ode) {
    detail::OdeFlow flow(ode);
    std::ostringstream os;
    os.precision(17);
    os << "x_re,x_im,y_re,y_im,p_re,p_im,residual\n";
    for (const auto& q : trace.points) {
        double residual = std::abs(flow.F.eval(flow.at(q)));
        os << q[0].real() << "," << q[0].imag() << "," << q[1].real() << "," << q[1].imag() << ","
           << q[2].real() << "," << q[2].imag() << "," << residual << "\n";
    }
    return os.str();
}

}  // namespace webgeom

#endif
