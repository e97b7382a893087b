#include <catch2/catch.hpp>

#include <algorithm>
#include <complex>
#include <random>

#include "webgeom/classify.hpp"
#include "webgeom/clairaut.hpp"
#include "webgeom/first_integral.hpp"
#include "webgeom/formats.hpp"
#include "webgeom/parse.hpp"
#include "webgeom/roots.hpp"
#include "webgeom/trace.hpp"
#include "test_support.hpp"

using namespace webgeom;

static const std::vector<std::string> P = {"p"};
static const std::vector<std::string> XY = {"x", "y"};
static const std::vector<std::string> XYP = {"x", "y", "p"};
static const std::vector<std::string> XYZ = {"x", "y", "z"};

static std::array<std::complex<double>, 3> pt(std::complex<double> a, std::complex<double> b,
                                              std::complex<double> c) {
    return {a, b, c};
}

TEST_CASE("durand-kerner on known polynomials") {
    SECTION("distinct real roots") {
        // (z-1)(z-2)(z-3) = z^3 - 6z^2 + 11z - 6
        auto roots = durand_kerner({{-6, 0}, {11, 0}, {-6, 0}, {1, 0}});
        REQUIRE(roots.size() == 3);
        std::vector<double> re;
        for (auto r : roots) {
            CHECK(std::abs(r.imag()) < 1e-9);
            re.push_back(r.real());
        }
        std::sort(re.begin(), re.end());
        CHECK(re[0] == Approx(1.0).margin(1e-9));
        CHECK(re[1] == Approx(2.0).margin(1e-9));
        CHECK(re[2] == Approx(3.0).margin(1e-9));
    }
    SECTION("conjugate pair") {
        auto roots = durand_kerner({{1, 0}, {0, 0}, {1, 0}});  // z^2 + 1
        REQUIRE(roots.size() == 2);
        for (auto r : roots) CHECK(std::abs(std::abs(r.imag()) - 1.0) < 1e-10);
    }
    SECTION("double root clusters") {
        auto roots = durand_kerner({{1, 0}, {-2, 0}, {1, 0}});  // (z-1)^2
        REQUIRE(roots.size() == 2);
        auto clusters = root_clusters(roots, 1e-4);
        REQUIRE(clusters.size() == 1);
        CHECK(std::abs(roots[0] - std::complex<double>(1.0)) < 1e-4);
    }
    SECTION("near-zero leading coefficients are trimmed") {
        auto roots = durand_kerner({{-2, 0}, {1, 0}, {1e-16, 0}});
        REQUIRE(roots.size() == 1);
        CHECK(std::abs(roots[0] - std::complex<double>(2.0)) < 1e-10);
    }
    CHECK_THROWS_AS(durand_kerner({{0, 0}, {0, 0}}), error);
}

TEST_CASE("rational recognition") {
    auto two = rational_approx(2.0, 50, 1e-6);
    REQUIRE(two.has_value());
    CHECK(two->first == 2);
    CHECK(two->second == 1);

    auto twothirds = rational_approx(0.6666667, 50, 1e-5);
    REQUIRE(twothirds.has_value());
    CHECK(twothirds->first == 2);
    CHECK(twothirds->second == 3);

    CHECK_FALSE(rational_approx(0.57721566, 50, 1e-9).has_value());
}

TEST_CASE("trace_leaf follows leaves") {
    SECTION("xy = 1 is a leaf of x dy + y dx") {
        ImplicitOde ode(parse_poly("x*p + y", XYP), "x", "y", 1);
        TraceOptions opts;
        opts.steps = 800;
        LeafTrace trace = trace_leaf(ode, pt(1, 1, -1), opts);
        CHECK(trace.points.size() == 801);
        CHECK(trace.residual_max < 1e-6);
        double worst = 0;
        for (const auto& q : trace.points) worst = std::max(worst, std::abs(q[0] * q[1] - 1.0));
        CHECK(worst < 1e-6);
    }
    SECTION("p is constant along clairaut leaves") {
        ImplicitOde ode = clairaut_ode(ClairautEquation(parse_poly("p^2", P)));
        std::complex<double> s0(2.0, 0.0), x0(0.4, 0.0);
        std::complex<double> y0 = x0 * s0 + s0 * s0;
        TraceOptions opts;
        opts.steps = 1000;
        LeafTrace trace = trace_leaf(ode, pt(x0, y0, s0), opts);
        double drift = 0;
        for (const auto& q : trace.points) drift = std::max(drift, std::abs(q[2] - s0));
        CHECK(drift < 1e-9);
        CHECK(trace.residual_max < 1e-9);
    }
    SECTION("zero steps returns only the start") {
        ImplicitOde ode(parse_poly("x*p + y", XYP), "x", "y", 1);
        TraceOptions opts;
        opts.steps = 0;
        LeafTrace trace = trace_leaf(ode, pt(1, 1, -1), opts);
        CHECK(trace.points.size() == 1);
    }
    SECTION("off-surface starts are rejected") {
        ImplicitOde ode(parse_poly("x*p + y", XYP), "x", "y", 1);
        CHECK_THROWS_WITH(trace_leaf(ode, pt(1, 1, 1), {}),
                          Catch::Contains("not on the surface"));
    }
    SECTION("arc length per step stays within twice the nominal step") {
        ImplicitOde ode(parse_poly("x*p + y", XYP), "x", "y", 1);
        TraceOptions opts;
        opts.steps = 300;
        LeafTrace trace = trace_leaf(ode, pt(1, 1, -1), opts);
        for (size_t i = 1; i < trace.points.size(); ++i) {
            double d = 0;
            for (int c = 0; c < 3; ++c) d += std::norm(trace.points[i][c] - trace.points[i - 1][c]);
            CHECK(std::sqrt(d) <= 2 * opts.step);
        }
    }
    SECTION("starts on the criminant abort instead of switching sheets") {
        ImplicitOde ode(parse_poly("p^2 - x", XYP), "x", "y", 2);
        TraceOptions opts;
        opts.steps = 100;
        LeafTrace trace = trace_leaf(ode, pt(0, 0, 0), opts);
        CHECK(trace.reason == LeafTrace::Stop::near_criminant);
        CHECK(trace.points.size() == 1);
    }
    SECTION("crossing the fold transversally keeps the residual bounded") {
        ImplicitOde ode(parse_poly("p^2 - x", XYP), "x", "y", 2);
        TraceOptions opts;
        opts.steps = 3000;
        opts.theta = 3.14159265358979;  // run toward the fold at x = 0
        LeafTrace trace = trace_leaf(ode, pt(1, 2.0 / 3.0, 1), opts);
        CHECK(trace.residual_max < 1e-6);
    }
}

TEST_CASE("traced clairaut leaves live inside the levi-flat hypersurface") {
    ClairautEquation eq(parse_poly("p^2", P));
    ImplicitOde ode = clairaut_ode(eq);
    HermitianPoly h = leviflat_from_first_integral(clairaut_first_integral(eq));

    TraceOptions opts;
    opts.steps = 500;

    SECTION("real parameters stay on the hypersurface") {
        for (double s : {-1.0, 0.0, 1.0, 2.0}) {
            std::complex<double> s0(s, 0.0), x0(0.3, 0.0);
            LeafTrace trace = trace_leaf(ode, pt(x0, x0 * s0 + s0 * s0, s0), opts);
            LeviflatTraceReport rep = leaf_in_leviflat(trace, ode, h, 1e-8);
            CHECK(rep.pass);
        }
    }
    SECTION("an imaginary parameter leaves it") {
        std::complex<double> s0(0.0, 1.0), x0(0.3, 0.0);
        LeafTrace trace = trace_leaf(ode, pt(x0, x0 * s0 + s0 * s0, s0), opts);
        LeviflatTraceReport rep = leaf_in_leviflat(trace, ode, h, 1e-3);
        CHECK_FALSE(rep.pass);
        CHECK(rep.max_residual > 1e-3);
    }
    SECTION("a single on-hypersurface point has its pointwise residual") {
        std::complex<double> s0(1.0, 0.0), x0(0.3, 0.0);
        TraceOptions zero;
        zero.steps = 0;
        LeafTrace trace = trace_leaf(ode, pt(x0, x0 * s0 + s0 * s0, s0), zero);
        LeviflatTraceReport rep = leaf_in_leviflat(trace, ode, h, 1e-10);
        CHECK(rep.max_residual ==
              Approx(std::abs(h.value_at({{"x", x0}, {"y", x0 * s0 + s0 * s0}}))));
    }
}

TEST_CASE("trace csv export") {
    ImplicitOde ode(parse_poly("x*p + y", XYP), "x", "y", 1);
    TraceOptions opts;
    opts.steps = 3;
    LeafTrace trace = trace_leaf(ode, pt(1, 1, -1), opts);
    std::string csv = trace_csv(trace, ode);
    CHECK(csv.rfind("x_re,x_im,y_re,y_im,p_re,p_im,residual\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 points
}

TEST_CASE("classify_singularity") {
    SECTION("the model saddle x dy + y dx") {
        ImplicitOde ode(parse_poly("x*p + y", XYP), "x", "y", 1);
        SingularityReport rep = classify_singularity(ode, pt(0, 0, 0), 1e-6, 50);
        CHECK(rep.verdict == SingularityReport::Verdict::saddle_with_first_integral_candidate);
        CHECK(std::abs(rep.ratio - std::complex<double>(-2.0)) < 1e-9);
        REQUIRE(rep.rational_approx.has_value());
        CHECK(rep.rational_approx->first == 2);
        CHECK(rep.rational_approx->second == 1);
    }
    SECTION("the verdict is invariant under rescaling the surface equation") {
        ImplicitOde a(parse_poly("x*p + y", XYP), "x", "y", 1);
        ImplicitOde b(parse_poly("5*x*p + 5*y", XYP), "x", "y", 1);
        SingularityReport ra = classify_singularity(a, pt(0, 0, 0));
        SingularityReport rb = classify_singularity(b, pt(0, 0, 0));
        CHECK(ra.verdict == rb.verdict);
        CHECK(std::abs(ra.ratio - rb.ratio) < 1e-9);
        CHECK(ra.rational_approx == rb.rational_approx);
    }
    SECTION("clairaut criminant points are non-reduced") {
        ImplicitOde ode = clairaut_ode(ClairautEquation(parse_poly("p^2", P)));
        // p0 = 1 on the criminant: x = -2 p0, y = x p0 + p0^2
        SingularityReport rep = classify_singularity(ode, pt(-2, -1, 1), 1e-6, 50);
        CHECK(rep.verdict == SingularityReport::Verdict::non_reduced);
    }
    SECTION("regular points are rejected") {
        ImplicitOde ode(parse_poly("p - x", XYP), "x", "y", 1);
        CHECK_THROWS_WITH(classify_singularity(ode, pt(0, 0, 0)),
                          Catch::Contains("does not vanish"));
    }
}

TEST_CASE("fiber-seeded traces produce k distinct leaves") {
    ImplicitOde ode(parse_poly("p^2 + x*p - y", XYP), "x", "y", 2);
    std::complex<double> x0(0.0, 0.0), y0(1.0, 0.0);
    FiberPoints fp = fiber_points(ode, x0, y0, 1e-6);
    REQUIRE(fp.roots.size() == 2);
    TraceOptions opts;
    opts.steps = 400;
    // march both sheets toward increasing Re x, whichever time direction
    // that needs, and compare y where the traces reach equal x
    std::vector<LeafTrace> traces;
    for (auto root : fp.roots) {
        LeafTrace t = trace_leaf(ode, pt(x0, y0, root), opts);
        if (t.points.back()[0].real() < x0.real()) {
            TraceOptions back = opts;
            back.theta = 3.14159265358979;
            t = trace_leaf(ode, pt(x0, y0, root), back);
        }
        traces.push_back(t);
    }
    double target = 0.1;
    std::vector<std::complex<double>> y_at;
    for (const auto& t : traces) {
        size_t best = 0;
        for (size_t i = 0; i < t.points.size(); ++i)
            if (std::abs(t.points[i][0].real() - target) <
                std::abs(t.points[best][0].real() - target))
                best = i;
        REQUIRE(std::abs(t.points[best][0] - std::complex<double>(target)) < 0.01);
        y_at.push_back(t.points[best][1]);
    }
    CHECK(std::abs(y_at[0] - y_at[1]) > opts.step);
}
