#include <catch2/catch.hpp>

#include <random>

#include "webgeom/formats.hpp"
#include "webgeom/parse.hpp"
#include "webgeom/web.hpp"
#include "test_support.hpp"

using namespace webgeom;

static const std::vector<std::string> XY = {"x", "y"};
static const std::vector<std::string> PLANAR = {"x", "y", "dx", "dy"};
static const std::vector<std::string> UVW = {"u", "v", "w"};
static const std::vector<std::string> SPACE = {"u", "v", "w", "du", "dv", "dw"};

TEST_CASE("make_web validates the defining conditions") {
    Web w = make_web(parse_poly("dy^2 + x*dx*dy - y*dx^2", PLANAR), XY, 2);
    CHECK(w.k() == 2);
    CHECK(w.n() == 2);

    CHECK_THROWS_WITH(make_web(parse_poly("(dy-dx)^2", PLANAR), XY, 2),
                      Catch::Contains("square factor"));
    CHECK_THROWS_WITH(make_web(parse_poly("x*dy - x*dx", PLANAR), XY, 1),
                      Catch::Contains("common coefficient factor"));
    CHECK_THROWS_WITH(make_web(parse_poly("dy^2 + dx", PLANAR), XY, 2),
                      Catch::Contains("homogeneous"));
    CHECK_THROWS_AS(make_web(MultiPoly(PLANAR), XY, 1), error);
}

TEST_CASE("web canonicalization ignores unit factors") {
    MultiPoly form = parse_poly("dy^2 + x*dx*dy - y*dx^2", PLANAR);
    Web a = make_web(form, XY, 2);
    Web b = make_web(form.scaled(GaussianRational(-7, 3)), XY, 2);
    CHECK(a == b);
}

TEST_CASE("superpose multiplies coprime webs") {
    Web dx = make_web(parse_poly("dx", PLANAR), XY, 1);
    Web dy = make_web(parse_poly("dy", PLANAR), XY, 1);
    Web two = superpose({dx, dy});
    CHECK(two.k() == 2);
    CHECK(two.form() == parse_poly("dx*dy", PLANAR));

    Web m = make_web(parse_poly("dy - y*dx", PLANAR), XY, 1);
    Web p = make_web(parse_poly("dy + y*dx", PLANAR), XY, 1);
    CHECK(superpose({m, p}).form() == parse_poly("dy^2 - y^2*dx^2", PLANAR).normalized());

    CHECK_THROWS_WITH(superpose({dx, dx}), Catch::Contains("share a factor"));
}

TEST_CASE("superpose is associative and commutative up to canonical form") {
    Web a = make_web(parse_poly("dy - y*dx", PLANAR), XY, 1);
    Web b = make_web(parse_poly("dy + x*dx", PLANAR), XY, 1);
    Web c = make_web(parse_poly("dx", PLANAR), XY, 1);
    CHECK(superpose({a, superpose({b, c})}) == superpose({superpose({a, b}), c}));
    CHECK(superpose({a, b, c}) == superpose({c, b, a}));
}

TEST_CASE("adapt_chart") {
    SECTION("already adapted web returns the identity") {
        Web w = make_web(parse_poly("dy^2 + x*dx*dy - y*dx^2", PLANAR), XY, 2);
        auto [w2, change] = adapt_chart(w);
        CHECK(change.identity);
        CHECK(w2 == w);
    }
    SECTION("dx*dy needs a shear") {
        Web w = make_web(parse_poly("dx*dy", PLANAR), XY, 2);
        auto [w2, change] = adapt_chart(w);
        CHECK_FALSE(change.identity);
        MultiPoly a0 = w2.form().coefficient_of("dy", 2);
        auto at0 = a0.substitute_values({{"x", GaussianRational(0)}, {"y", GaussianRational(0)}});
        CHECK_FALSE(at0.constant_value().is_zero());
    }
    SECTION("the pure dx direction mixes x into y with the first candidate") {
        Web w = make_web(parse_poly("dx", PLANAR), XY, 1);
        auto [w2, change] = adapt_chart(w);
        CHECK_FALSE(change.identity);
        // search order yields the unit shear x = u + v, y = v
        CHECK(change.matrix[0][1] == GaussianRational(1));
        MultiPoly a0 = w2.form().coefficient_of("dy", 1);
        auto at0 = a0.substitute_values({{"x", GaussianRational(0)}, {"y", GaussianRational(0)}});
        CHECK_FALSE(at0.constant_value().is_zero());
    }
    SECTION("vanishing symbol exhausts the budget") {
        Web w = make_web(parse_poly("x*dy - y*dx", PLANAR), XY, 1);
        CHECK_THROWS_WITH(adapt_chart(w), Catch::Contains("budget"));
    }
}

TEST_CASE("adapt_chart postcondition holds on random webs") {
    std::mt19937_64 rng(8080);
    int produced = 0;
    while (produced < 10) {
        MultiPoly form(PLANAR);
        for (long j = 0; j <= 2; ++j)
            form += wgtest::random_poly(rng, XY, 1, 0.7, 2).with_variables(PLANAR) *
                    parse_poly("dy", PLANAR).pow(j) * parse_poly("dx", PLANAR).pow(2 - j);
        try {
            Web w = make_web(form, XY, 2);
            auto [w2, change] = adapt_chart(w);
            MultiPoly a0 = w2.form().coefficient_of("dy", 2);
            auto at0 =
                a0.substitute_values({{"x", GaussianRational(0)}, {"y", GaussianRational(0)}});
            CHECK_FALSE(at0.constant_value().is_zero());
            ++produced;
        } catch (const error&) {
            continue;  // degenerate random form; draw again
        }
    }
}

TEST_CASE("brill_check") {
    SECTION("planar webs are automatic") {
        Web w = make_web(parse_poly("dy^2 + x*dx*dy - y*dx^2", PLANAR), XY, 2);
        CHECK(brill_check(w, 5, 1e-8, 1));
    }
    SECTION("du*dv is a product of linear forms") {
        Web w = make_web(parse_poly("du*dv", SPACE), UVW, 2);
        CHECK(brill_check(w, 6, 1e-7, 42));
    }
    SECTION("a rank-three quadric is not") {
        Web w = make_web(parse_poly("du^2 + dv^2 + dw^2", SPACE), UVW, 2);
        CHECK_FALSE(brill_check(w, 6, 1e-7, 42));
    }
    SECTION("superpositions of 1-webs always pass") {
        std::mt19937_64 rng(1234);
        for (unsigned long seed : {7UL, 8UL, 9UL}) {
            std::vector<Web> ones;
            while (ones.size() < 2) {
                MultiPoly theta(SPACE);
                for (long j = 0; j < 3; ++j)
                    theta += wgtest::random_poly(rng, UVW, 1, 0.8, 2).with_variables(SPACE) *
                             MultiPoly::variable(SPACE, diff_name(UVW[j]));
                try {
                    ones.push_back(make_web(theta, UVW, 1));
                } catch (const error&) {
                    continue;
                }
            }
            try {
                Web w = superpose(ones);
                CHECK(brill_check(w, 4, 1e-7, seed));
            } catch (const error&) {
                // superposition shared a factor; draw again next seed
            }
        }
    }
}

TEST_CASE("frobenius_check_decomposable") {
    CHECK(frobenius_check_decomposable({parse_poly("x*dy + y*dx", PLANAR)}, XY));
    CHECK_FALSE(frobenius_check_decomposable(
        {parse_poly("w*du + u*dv + v*dw", SPACE)}, UVW));
    CHECK(frobenius_check_decomposable(
        {parse_poly("du", SPACE), parse_poly("dv", SPACE), parse_poly("dw", SPACE)}, UVW));
    CHECK(frobenius_check_decomposable({parse_poly("u*du + v*dv + w*dw", SPACE)}, UVW));
    CHECK_THROWS_AS(frobenius_check_decomposable({parse_poly("du^2", SPACE)}, UVW), error);
}

TEST_CASE("restrict_to_plane") {
    SECTION("a 1-web restricts to a direction form") {
        Web w = make_web(parse_poly("dw", SPACE), UVW, 1);
        PlaneEmbedding plane({{GaussianRational(1), GaussianRational(0)},
                              {GaussianRational(0), GaussianRational(1)},
                              {GaussianRational(1), GaussianRational(1)}});
        Web r = restrict_to_plane(w, plane);
        CHECK(r.k() == 1);
        CHECK(r.form() == parse_poly("du + dv", {"u", "v", "du", "dv"}).normalized());
    }
    SECTION("plane inside a leaf is rejected") {
        Web w = make_web(parse_poly("du", SPACE), UVW, 1);
        PlaneEmbedding plane({{GaussianRational(0), GaussianRational(0)},
                              {GaussianRational(1), GaussianRational(0)},
                              {GaussianRational(0), GaussianRational(1)}});
        CHECK_THROWS_WITH(restrict_to_plane(w, plane), Catch::Contains("transverse"));
    }
    SECTION("restriction distributes over superposition") {
        Web a = make_web(parse_poly("du + 2*dv + w*dw", SPACE), UVW, 1);
        Web b = make_web(parse_poly("dv - u*du", SPACE), UVW, 1);
        PlaneEmbedding plane({{GaussianRational(1), GaussianRational(0)},
                              {GaussianRational(0), GaussianRational(1)},
                              {GaussianRational(2), GaussianRational(1)}});
        Web lhs = restrict_to_plane(superpose({a, b}), plane);
        Web rhs = superpose({restrict_to_plane(a, plane), restrict_to_plane(b, plane)});
        CHECK(lhs == rhs);
    }
    CHECK_THROWS_AS(PlaneEmbedding({{GaussianRational(1), GaussianRational(2)},
                                    {GaussianRational(2), GaussianRational(4)}}),
                    error);
}

TEST_CASE("web text format round trip") {
    Web w = make_web(parse_poly("dy^2 + x*dx*dy - y*dx^2", PLANAR), XY, 2);
    Web again = read_web(write_web(w));
    CHECK(again == w);

    Web inline_form = read_web_flexible("dy^2 + x*dx*dy - y*dx^2");
    CHECK(inline_form == w);

    Web spatial = make_web(parse_poly("du*dv", SPACE), UVW, 2);
    CHECK(read_web(write_web(spatial)) == spatial);

    CHECK_THROWS_AS(read_web("web n=2 k=2 vars=x,y\n dy^2 + q"), parse_error);
    CHECK_THROWS_AS(read_web("nonsense"), parse_error);
}
