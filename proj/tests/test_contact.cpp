#include <catch2/catch.hpp>

#include <complex>
#include <random>

#include "webgeom/clairaut.hpp"
#include "webgeom/contact.hpp"
#include "webgeom/parse.hpp"
#include "test_support.hpp"

using namespace webgeom;

static const std::vector<std::string> XY = {"x", "y"};
static const std::vector<std::string> XYP = {"x", "y", "p"};
static const std::vector<std::string> PLANAR = {"x", "y", "dx", "dy"};

TEST_CASE("to_implicit_ode substitutes the chart") {
    Web w = make_web(parse_poly("dy^2 + x*dx*dy - y*dx^2", PLANAR), XY, 2);
    ImplicitOde ode = to_implicit_ode(w);
    CHECK(ode.F() == parse_poly("p^2 + x*p - y", XYP));
    CHECK(ode.k() == 2);

    Web product = make_web(parse_poly("dx*dy", PLANAR), XY, 2);
    CHECK_THROWS_WITH(to_implicit_ode(product), Catch::Contains("a0 vanishes"));

    Web one = make_web(parse_poly("(x+1)*dy - y*dx", PLANAR), XY, 1);
    CHECK(to_implicit_ode(one).F() == parse_poly("(x+1)*p - y", XYP).normalized());
}

TEST_CASE("proportional forms give the identical implicit ode") {
    MultiPoly form = parse_poly("dy^2 + x*dx*dy - y*dx^2", PLANAR);
    Web a = make_web(form, XY, 2);
    Web b = make_web(form.scaled(GaussianRational(5, 7)), XY, 2);
    CHECK(to_implicit_ode(a).F() == to_implicit_ode(b).F());
}

TEST_CASE("implicit ode round trips through homogenization") {
    Web w = make_web(parse_poly("dy^2 + x*dx*dy - y*dx^2", PLANAR), XY, 2);
    CHECK(web_from_implicit_ode(to_implicit_ode(w)) == w);
}

TEST_CASE("criminant pairs") {
    ImplicitOde clairaut = clairaut_ode(ClairautEquation(parse_poly("p^2", {"p"})));
    auto [F, Fp] = criminant_ideal(clairaut);
    CHECK(F == parse_poly("y - x*p - p^2", XYP));
    CHECK(Fp == parse_poly("-x - 2*p", XYP));

    ImplicitOde quad(parse_poly("p^2 + x*p - y", XYP), "x", "y", 2);
    auto [F2, Fp2] = criminant_ideal(quad);
    CHECK(F2 == parse_poly("p^2 + x*p - y", XYP));
    CHECK(Fp2 == parse_poly("2*p + x", XYP));

    ImplicitOde single(parse_poly("p - x*y", XYP), "x", "y", 1);
    CHECK(criminant_ideal(single).second == MultiPoly::constant(XYP, GaussianRational(1)));
}

TEST_CASE("discriminant curve") {
    ImplicitOde quad(parse_poly("p^2 + x*p - y", XYP), "x", "y", 2);
    CHECK(discriminant_curve(quad) == parse_poly("x^2 + 4*y", XYP).normalized());

    ImplicitOde fold(parse_poly("p^2 - x", XYP), "x", "y", 2);
    CHECK(discriminant_curve(fold) == parse_poly("x", XYP).normalized());

    ImplicitOde split(parse_poly("(p-1)*(p-2)", XYP), "x", "y", 2);
    MultiPoly d = discriminant_curve(split);
    CHECK(d.is_constant());
    CHECK_FALSE(d.is_zero());

    ImplicitOde one(parse_poly("p - x", XYP), "x", "y", 1);
    CHECK_THROWS_WITH(discriminant_curve(one), Catch::Contains("degree >= 2"));
}

TEST_CASE("lifted field and contact identities") {
    SECTION("clairaut lifts have Vp = 0") {
        for (const char* f : {"p^2", "p^3", "p^2 + p"}) {
            ImplicitOde ode = clairaut_ode(ClairautEquation(parse_poly(f, {"p"})));
            CHECK(lifted_field(ode).Vp.is_zero());
        }
    }
    SECTION("the hyperbola pencil x dy + y dx") {
        ImplicitOde ode(parse_poly("x*p + y", XYP), "x", "y", 1);
        LiftedField v = lifted_field(ode);
        CHECK(v.Vx == parse_poly("x", XYP));
        CHECK(v.Vy == parse_poly("p*x", XYP));
        CHECK(v.Vp == parse_poly("-2*p", XYP));
    }
    SECTION("trivial slope field") {
        ImplicitOde ode(parse_poly("p", XYP), "x", "y", 1);
        LiftedField v = lifted_field(ode);
        CHECK(v.Vx == MultiPoly::constant(XYP, GaussianRational(1)));
        CHECK(v.Vy == parse_poly("p", XYP));
        CHECK(v.Vp.is_zero());
    }
    SECTION("identities hold exactly on random odes") {
        std::mt19937_64 rng(2718);
        int produced = 0;
        while (produced < 8) {
            MultiPoly F = MultiPoly::variable(XYP, "p").pow(2);
            for (long j = 0; j < 2; ++j)
                F += wgtest::random_poly(rng, XY, 2, 0.6, 2).with_variables(XYP) *
                     MultiPoly::variable(XYP, "p").pow(j);
            try {
                ImplicitOde ode(F, "x", "y", 2);
                LiftedField v = lifted_field(ode);
                CHECK((v.Vx * ode.Fx() + v.Vy * ode.Fy() + v.Vp * ode.Fp()).is_zero());
                CHECK((v.Vy - MultiPoly::variable(XYP, "p") * v.Vx).is_zero());
                ++produced;
            } catch (const error&) {
                continue;
            }
        }
    }
}

TEST_CASE("fiber points") {
    ImplicitOde quad(parse_poly("p^2 + x*p - y", XYP), "x", "y", 2);

    SECTION("square fiber") {
        FiberPoints fp = fiber_points(quad, {0, 0}, {1, 0}, 1e-6);
        REQUIRE(fp.roots.size() == 2);
        std::vector<double> got = {fp.roots[0].real(), fp.roots[1].real()};
        std::sort(got.begin(), got.end());
        CHECK(got[0] == Approx(-1.0).margin(1e-9));
        CHECK(got[1] == Approx(1.0).margin(1e-9));
        CHECK(fp.clusters.empty());
        CHECK_FALSE(fp.near_discriminant);
    }
    SECTION("double root at the discriminant") {
        double x0 = 0.8;
        FiberPoints fp = fiber_points(quad, {x0, 0}, {-x0 * x0 / 4.0, 0}, 1e-6);
        REQUIRE(fp.roots.size() == 2);
        REQUIRE(fp.clusters.size() == 1);
        CHECK(fp.near_discriminant);
        CHECK(std::abs(fp.roots[fp.clusters[0][0]] - std::complex<double>(-x0 / 2.0)) < 1e-3);
    }
    SECTION("k distinct roots off the discriminant for random webs") {
        std::mt19937_64 rng(9001);
        std::uniform_real_distribution<double> pt(-1.5, 1.5);
        int produced = 0;
        while (produced < 6) {
            long k = 2 + (long)(rng() % 2);
            MultiPoly F = MultiPoly::variable(XYP, "p").pow(k);
            for (long j = 0; j < k; ++j)
                F += wgtest::random_poly(rng, XY, 2, 0.6, 2).with_variables(XYP) *
                     MultiPoly::variable(XYP, "p").pow(j);
            ImplicitOde ode = [&] {
                try {
                    return ImplicitOde(F, "x", "y", k);
                } catch (const error&) {
                    return ImplicitOde(parse_poly("p^2 - x", XYP), "x", "y", 2);
                }
            }();
            MultiPoly disc = discriminant_curve(ode);
            for (int j = 0; j < 5; ++j) {
                std::complex<double> x0(pt(rng), pt(rng)), y0(pt(rng), pt(rng));
                FiberPoints fp = fiber_points(ode, x0, y0, 1e-6, 1e-4, &disc);
                if (!fp.near_discriminant && fp.discriminant_abs > 1e-6) {
                    CHECK(fp.roots.size() == (size_t)ode.k());
                    CHECK(fp.clusters.empty());
                }
            }
            ++produced;
        }
    }
}
