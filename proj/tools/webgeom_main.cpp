// Command-line front end: validate webs, lift them to the contact chart,
// eliminate first integrals, build Levi-flat defining functions, trace
// leaves and classify singular points. Reports are plain text or JSON
// (--json); JSON output is byte-identical for identical jobs and seeds.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "webgeom/webgeom.hpp"

using json = nlohmann::ordered_json;
using namespace webgeom;

namespace {

struct Options {
    std::string web, fi, clairaut, plane, at, leaf;
    unsigned long seed = 1;
    int samples = 20;
    double tol = 1e-6;
    double step = 1e-3;
    long steps = 10000;
    double theta = 0.0;
    long max_denominator = 50;
    long branch = 0;
    bool as_json = false;
};

std::string read_input(const std::string& arg) {
    std::ifstream f(arg);
    if (f.good()) {
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
    return arg;
}

std::complex<double> parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s += c;
    size_t pos = 0;
    auto read_signed = [&](bool* pure_i) -> double {
        double sign = 1.0;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) sign = (s[pos++] == '-') ? -1.0 : 1.0;
        size_t digits = pos;
        while (pos < s.size() && (std::isdigit((unsigned char)s[pos]) || s[pos] == '.')) ++pos;
        if (pos == digits) {
            if (pos < s.size() && s[pos] == 'i') {  // bare i with a sign
                *pure_i = true;
                return sign;
            }
            throw error("bad complex literal '" + text + "'");
        }
        *pure_i = false;
        return sign * std::stod(s.substr(digits, pos - digits));
    };
    double re = 0, im = 0;
    bool pure_i = false;
    double v = read_signed(&pure_i);
    if (pure_i || (pos < s.size() && s[pos] == 'i')) {
        ++pos;
        im = v;
    } else {
        re = v;
        if (pos < s.size()) {
            double w = read_signed(&pure_i);
            if (!pure_i && (pos >= s.size() || s[pos] != 'i'))
                throw error("bad complex literal '" + text + "'");
            ++pos;
            im = w;
        }
    }
    if (pos != s.size()) throw error("bad complex literal '" + text + "'");
    return {re, im};
}

std::vector<std::complex<double>> parse_point(const std::string& text) {
    std::vector<std::complex<double>> out;
    std::string cur;
    for (char c : text + ";") {
        if (c == ';') {
            if (!cur.empty()) out.push_back(parse_complex(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

PlaneEmbedding parse_plane(const std::string& text, long n) {
    std::vector<GaussianRational> entries;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty())
                entries.push_back(parse_poly(cur, {}).constant_value());
            cur.clear();
        } else {
            cur += c;
        }
    }
    if ((long)entries.size() != 2 * n)
        throw error("--plane needs " + std::to_string(2 * n) + " comma-separated entries (rows of the n x 2 matrix)");
    std::vector<std::vector<GaussianRational>> m(n, std::vector<GaussianRational>(2));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < 2; ++j) m[i][j] = entries[2 * i + j];
    return PlaneEmbedding(m);
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json options_json(const Options& o) {
    json j;
    j["seed"] = o.seed;
    j["samples"] = o.samples;
    j["tol"] = o.tol;
    j["step"] = o.step;
    j["steps"] = o.steps;
    j["theta"] = o.theta;
    j["max_denominator"] = o.max_denominator;
    j["branch"] = o.branch;
    return j;
}

struct Report {
    json body;
    int exit_code = 0;
    std::string human;
};

Web load_web(const Options& o) {
    if (o.web.empty()) throw error("this command needs --web");
    Web w = read_web_flexible(read_input(o.web));
    if (!o.plane.empty()) w = restrict_to_plane(w, parse_plane(o.plane, w.n()));
    return w;
}

ImplicitOde load_ode(const Options& o) {
    if (!o.clairaut.empty()) return clairaut_ode(ClairautEquation(parse_poly(o.clairaut, {"p"})));
    Web w = load_web(o);
    if (w.n() != 2) throw error("lifting needs a planar web (restrict with --plane first)");
    return to_implicit_ode(w);
}

Report run_validate(const Options& o) {
    Report r;
    Web w = load_web(o);
    bool brill = brill_check(w, o.samples, o.tol, o.seed);
    r.body["result"] = {{"n", w.n()},
                        {"k", w.k()},
                        {"form", w.form().str()},
                        {"valid", true},
                        {"brill", brill}};
    r.exit_code = brill ? 0 : 1;
    std::ostringstream os;
    os << "web: n=" << w.n() << " k=" << w.k() << "\nform: " << w.form().str()
       << "\nvalid: true\nbrill: " << (brill ? "true" : "false") << "\n";
    r.human = os.str();
    return r;
}

Report run_lift(const Options& o) {
    Report r;
    ImplicitOde ode = load_ode(o);
    LiftedField v = lifted_field(ode);
    auto [F, Fp] = criminant_ideal(ode);
    r.body["result"] = {{"F", ode.F().str()},
                        {"k", ode.k()},
                        {"criminant", {F.str(), Fp.str()}},
                        {"field", {{"Vx", v.Vx.str()}, {"Vy", v.Vy.str()}, {"Vp", v.Vp.str()}}}};
    std::ostringstream os;
    os << "F(x,y,p) = " << ode.F().str() << "\ncriminant: F = 0, " << Fp.str() << " = 0\n"
       << "lifted field: Vx = " << v.Vx.str() << ", Vy = " << v.Vy.str()
       << ", Vp = " << v.Vp.str() << "\n";
    r.human = os.str();
    return r;
}

Report run_discriminant(const Options& o) {
    Report r;
    ImplicitOde ode = load_ode(o);
    MultiPoly d = discriminant_curve(ode);
    r.body["result"] = {{"discriminant", d.str()}};
    r.human = "discriminant: " + d.str() + "\n";
    return r;
}

Report run_verify_fi(const Options& o) {
    Report r;
    Web w = load_web(o);
    if (o.fi.empty()) throw error("verify-fi needs --fi");
    FirstIntegral fi = read_first_integral_flexible(read_input(o.fi));
    VerifyResult v = verify_first_integral(w, fi);
    const char* status = v.status == VerifyResult::Status::verified          ? "verified"
                         : v.status == VerifyResult::Status::degree_mismatch ? "degree_mismatch"
                         : v.status == VerifyResult::Status::coefficient_mismatch
                             ? "coefficient_mismatch"
                             : "degenerate";
    r.body["result"] = {{"verified", v.ok()}, {"status", status}, {"detail", v.detail}};
    r.exit_code = v.ok() ? 0 : 1;
    r.human = std::string("verified: ") + (v.ok() ? "true" : "false") + " (" + status + ")\n";
    return r;
}

Report run_leviflat(const Options& o) {
    Report r;
    if (o.fi.empty() && o.clairaut.empty()) throw error("leviflat needs --fi or --clairaut");
    FirstIntegral fi = o.fi.empty()
                           ? clairaut_first_integral(ClairautEquation(parse_poly(o.clairaut, {"p"})))
                           : read_first_integral_flexible(read_input(o.fi));
    HermitianPoly h = leviflat_from_first_integral(fi);
    r.body["result"] = {{"leviflat", h.poly().str()}, {"k", fi.k()}};
    r.human = "leviflat: " + h.poly().str() + "\n";
    return r;
}

Report run_charpoly(const Options& o) {
    Report r;
    ImplicitOde ode = load_ode(o);
    MultiPoly g = MultiPoly::variable({ode.x(), ode.y(), "p"}, "p");
    CharPoly cp = char_poly_of_function(ode, g);
    bool annihilates = char_poly_annihilates(ode, g, cp.poly);
    r.body["result"] = {{"char_poly", cp.poly.str()},
                        {"degenerate", cp.degenerate},
                        {"annihilates", annihilates}};
    r.human = "char poly of p: " + cp.poly.str() + "\n";
    return r;
}

Report run_clairaut(const Options& o) {
    Report r;
    if (o.clairaut.empty()) throw error("clairaut needs --clairaut \"<polynomial in p>\"");
    ClairautEquation eq(parse_poly(o.clairaut, {"p"}));
    ImplicitOde ode = clairaut_ode(eq);
    FirstIntegral fi = clairaut_first_integral(eq);
    auto [F, G] = clairaut_criminant(eq);
    MultiPoly alpha = clairaut_alpha_restriction(eq);
    MultiPoly envelope = discriminant_curve(ode);
    bool verified = verify_first_integral(web_from_implicit_ode(ode), fi).ok();
    json fij;
    for (long j = 0; j < fi.k(); ++j) fij["f" + std::to_string(j)] = fi.coefficient(j).str();
    r.body["result"] = {{"f", eq.f().str()},
                        {"F", ode.F().str()},
                        {"first_integral", fij},
                        {"criminant", {F.str(), G.str()}},
                        {"alpha_restriction", alpha.str()},
                        {"envelope", envelope.str()},
                        {"verified", verified}};
    r.exit_code = verified ? 0 : 1;
    std::ostringstream os;
    os << "f = " << eq.f().str() << "\nF = " << ode.F().str() << "\nfirst integral P(z) = "
       << fi.as_poly().str() << "\ncriminant: " << F.str() << " = 0, " << G.str() << " = 0\n"
       << "alpha|_S = (" << alpha.str() << ") dp\nenvelope: " << envelope.str()
       << "\nverified: " << (verified ? "true" : "false") << "\n";
    r.human = os.str();
    return r;
}

std::array<std::complex<double>, 3> seed_point(const Options& o, const ImplicitOde& ode) {
    if (!o.leaf.empty()) {
        if (o.clairaut.empty()) throw error("--leaf seeding needs --clairaut");
        ClairautEquation eq(parse_poly(o.clairaut, {"p"}));
        std::complex<double> s0 = parse_complex(o.leaf);
        std::complex<double> x0(0.3, 0.0);
        if (!o.at.empty()) {
            auto pt = parse_point(o.at);
            if (!pt.empty()) x0 = pt[0];
        }
        std::complex<double> fs = eq.f().eval({{"p", s0}});
        return {x0, x0 * s0 + fs, s0};
    }
    if (o.at.empty()) throw error("trace/classify need --at \"x;y[;p]\" or --leaf");
    auto pt = parse_point(o.at);
    if (pt.size() == 3) return {pt[0], pt[1], pt[2]};
    if (pt.size() == 2) {
        FiberPoints fp = fiber_points(ode, pt[0], pt[1], 1e-6);
        if (fp.roots.empty()) throw error("empty fiber over the base point");
        std::vector<std::complex<double>> roots = fp.roots;
        std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        long idx = std::min(std::max(o.branch, 0L), (long)roots.size() - 1);
        return {pt[0], pt[1], roots[idx]};
    }
    throw error("--at needs two or three semicolon-separated complex coordinates");
}

Report run_trace(const Options& o) {
    Report r;
    ImplicitOde ode = load_ode(o);
    TraceOptions topts;
    topts.step = o.step;
    topts.steps = o.steps;
    topts.theta = o.theta;
    LeafTrace trace = trace_leaf(ode, seed_point(o, ode), topts);
    std::string csv = trace_csv(trace, ode);
    const char* reason = trace.reason == LeafTrace::Stop::completed        ? "completed"
                         : trace.reason == LeafTrace::Stop::near_criminant ? "near_criminant"
                                                                           : "stationary";
    r.body["result"] = {{"points", trace.points.size()},
                        {"residual_max", trace.residual_max},
                        {"reason", reason}};
    if (!o.fi.empty() || !o.clairaut.empty()) {
        FirstIntegral fi =
            o.fi.empty() ? clairaut_first_integral(ClairautEquation(parse_poly(o.clairaut, {"p"})))
                         : read_first_integral_flexible(read_input(o.fi));
        LeviflatTraceReport rep =
            leaf_in_leviflat(trace, ode, leviflat_from_first_integral(fi), o.tol);
        r.body["result"]["leviflat_residual_max"] = rep.max_residual;
        r.body["result"]["leviflat_pass"] = rep.pass;
    }
    r.body["result"]["csv"] = csv;
    r.human = csv;
    return r;
}

Report run_classify(const Options& o) {
    Report r;
    ImplicitOde ode = load_ode(o);
    SingularityReport rep = classify_singularity(ode, seed_point(o, ode), o.tol, o.max_denominator);
    const char* verdict =
        rep.verdict == SingularityReport::Verdict::saddle_with_first_integral_candidate
            ? "saddle_with_first_integral_candidate"
        : rep.verdict == SingularityReport::Verdict::non_reduced ? "non_reduced"
                                                                 : "other";
    r.body["result"] = {{"location",
                         {complex_json(rep.location[0]), complex_json(rep.location[1]),
                          complex_json(rep.location[2])}},
                        {"lambda1", complex_json(rep.lambda1)},
                        {"lambda2", complex_json(rep.lambda2)},
                        {"ratio", complex_json(rep.ratio)},
                        {"verdict", verdict}};
    if (rep.rational_approx)
        r.body["result"]["rational_approx"] = {rep.rational_approx->first,
                                               rep.rational_approx->second};
    std::ostringstream os;
    os << "eigenvalues: (" << rep.lambda1.real() << (rep.lambda1.imag() < 0 ? "" : "+")
       << rep.lambda1.imag() << "i, " << rep.lambda2.real() << (rep.lambda2.imag() < 0 ? "" : "+")
       << rep.lambda2.imag() << "i)\nratio: " << rep.ratio.real() << (rep.ratio.imag() < 0 ? "" : "+")
       << rep.ratio.imag() << "i\nverdict: " << verdict << "\n";
    if (rep.rational_approx)
        os << "rational approx: -" << rep.rational_approx->first << "/"
           << rep.rational_approx->second << "\n";
    r.human = os.str();
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic-numeric toolkit for planar holomorphic webs, first integrals "
                 "and Levi-flat hypersurfaces"};
    app.require_subcommand(1);

    Options o;
    std::string command;
    for (const char* name : {"validate", "lift", "discriminant", "verify-fi", "leviflat",
                             "charpoly", "clairaut", "trace", "classify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--web", o.web, "web (file, 'web ...' text, or a bare planar form)");
        sub->add_option("--fi", o.fi, "first integral (file, 'fi ...' text, or monic P(z))");
        sub->add_option("--clairaut", o.clairaut, "Clairaut equation f(p), monic, deg >= 2");
        sub->add_option("--plane", o.plane, "restrict the web to a 2-plane (n x 2 matrix entries)");
        sub->add_option("--at", o.at, "base/surface point \"x;y\" or \"x;y;p\" (complex literals)");
        sub->add_option("--leaf", o.leaf, "seed on the Clairaut leaf with this parameter");
        sub->add_option("--branch", o.branch, "fiber branch index when --at has no p");
        sub->add_option("--seed", o.seed, "RNG seed for sampled checks");
        sub->add_option("--samples", o.samples, "sample count for sampled checks");
        sub->add_option("--tol", o.tol, "numeric tolerance");
        sub->add_option("--step", o.step, "integration step");
        sub->add_option("--steps", o.steps, "integration step count");
        sub->add_option("--theta", o.theta, "complex-time direction angle");
        sub->add_option("--max-denominator", o.max_denominator, "rational recognition bound");
        sub->add_flag("--json", o.as_json, "emit a JSON report");
        sub->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    json out;
    out["command"] = command;
    out["options"] = options_json(o);
    try {
        Report r;
        if (command == "validate") r = run_validate(o);
        else if (command == "lift") r = run_lift(o);
        else if (command == "discriminant") r = run_discriminant(o);
        else if (command == "verify-fi") r = run_verify_fi(o);
        else if (command == "leviflat") r = run_leviflat(o);
        else if (command == "charpoly") r = run_charpoly(o);
        else if (command == "clairaut") r = run_clairaut(o);
        else if (command == "trace") r = run_trace(o);
        else if (command == "classify") r = run_classify(o);
        out.update(r.body);
        out["diagnostics"] = json::array();
        if (o.as_json)
            std::cout << out.dump(2) << "\n";
        else
            std::cout << r.human;
        return r.exit_code;
    } catch (const parse_error& e) {
        out["result"] = nullptr;
        out["diagnostics"] = json::array({e.what()});
        if (o.as_json)
            std::cout << out.dump(2) << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        out["result"] = nullptr;
        out["diagnostics"] = json::array({e.what()});
        if (o.as_json)
            std::cout << out.dump(2) << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
