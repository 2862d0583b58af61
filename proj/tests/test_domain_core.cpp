#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fracgeo/grid.hpp"
#include "fracgeo/params.hpp"
#include "fracgeo/spec_lang.hpp"

using namespace fracgeo;

TEST_SUITE("params") {
    TEST_CASE("valid ranges") {
        CHECK_NOTHROW(validate_params(1, 0.25, 2.0, true));
        CHECK_NOTHROW(validate_params(3, 0.9, 1.0, false));
        CHECK_THROWS_AS(validate_params(0, 0.5, 2.0, false), param_error);
        CHECK_THROWS_AS(validate_params(4, 0.5, 2.0, false), param_error);
        CHECK_THROWS_AS(validate_params(2, 0.0, 2.0, false), param_error);
        CHECK_THROWS_AS(validate_params(2, 1.0, 2.0, false), param_error);
        CHECK_THROWS_AS(validate_params(2, 0.5, 0.9, false), param_error);
    }

    TEST_CASE("projection window needs p < n/s") {
        CHECK_NOTHROW(validate_params(2, 0.5, 3.9, true));
        CHECK_THROWS_AS(validate_params(2, 0.5, 4.0, true), param_error);
        CHECK_THROWS_AS(validate_params(1, 0.99, 2.0, true), param_error);
        CHECK_THROWS_AS(validate_params(1, 0.5, 1.0, true), param_error);
        const Params prm{2, 0.3, 2.0};
        CHECK(prm.ps() == doctest::Approx(0.6));
        CHECK(prm.kernel_exponent() == doctest::Approx(2.6));
    }
}

TEST_SUITE("grid") {
    TEST_CASE("cell geometry and flat layout") {
        GridFunction f = make_grid_function(2, 1.0, 4);
        CHECK(f.dx() == doctest::Approx(0.5));
        CHECK(f.values.size() == 16);
        CHECK(f.center(0) == doctest::Approx(-0.75));
        CHECK(f.center(3) == doctest::Approx(0.75));
        f.at(1, 2) = 7.0;
        CHECK(f.values[1 * 4 + 2] == 7.0);
        CHECK(f.coord(1 * 4 + 2, 0) == 1);
        CHECK(f.coord(1 * 4 + 2, 1) == 2);
        Vec c = f.center_of(1 * 4 + 2);
        CHECK(c[0] == doctest::Approx(-0.25));
        CHECK(c[1] == doctest::Approx(0.25));
    }

    TEST_CASE("eval interpolates and vanishes outside the box") {
        GridFunction f = make_grid_function(1, 1.0, 4);
        for (int i = 0; i < 4; ++i) f.at(i) = 1.0;
        CHECK(eval(f, vec(0.0)) == doctest::Approx(1.0));
        // Zero ghosts: linear falloff over the outermost half cell.
        CHECK(eval(f, vec(0.9)) == doctest::Approx(0.7));
        CHECK(eval(f, vec(1.0)) == 0.0);
        CHECK(eval(f, vec(1.5)) == 0.0);
        CHECK(eval(f, vec(-2.0)) == 0.0);
    }

    TEST_CASE("lp norms and mass") {
        GridFunction f = make_grid_function(1, 1.0, 4);
        f.at(0) = 2.0;
        f.at(2) = 2.0;
        CHECK(l1_mass(f) == doctest::Approx(2.0));
        CHECK(lp_power_sum(f, 2.0) == doctest::Approx(4.0));
        CHECK(lp_norm(f, 2.0) == doctest::Approx(2.0));
    }

    TEST_CASE("coarsen block-averages") {
        GridFunction f = make_grid_function(1, 1.0, 4);
        f.at(0) = 1.0;
        f.at(1) = 3.0;
        f.at(2) = 5.0;
        f.at(3) = 7.0;
        GridFunction c = coarsen(f);
        CHECK(c.m == 2);
        CHECK(c.L == 1.0);
        CHECK(c.at(0) == doctest::Approx(2.0));
        CHECK(c.at(1) == doctest::Approx(6.0));
        CHECK(l1_mass(c) == doctest::Approx(l1_mass(f)));
        GridFunction odd = make_grid_function(1, 1.0, 5);
        CHECK_THROWS_AS(coarsen(odd), param_error);
    }

    TEST_CASE("embed re-centers on a wider box") {
        GridFunction f = make_grid_function(2, 1.0, 4);
        f.at(1, 2) = 3.5;
        GridFunction g = embed(f, 1.5);
        CHECK(g.m == 6);
        CHECK(g.L == doctest::Approx(1.5));
        CHECK(g.at(2, 3) == 3.5);
        CHECK(l1_mass(g) == doctest::Approx(l1_mass(f)));
        // Center positions are preserved exactly.
        CHECK(g.center(2) == doctest::Approx(f.center(1)));
        CHECK_THROWS_AS(embed(f, 0.5), size_error);
        CHECK_THROWS_AS(embed(f, 1.3), size_error);
        GridFunction same = embed(f, 1.0);
        CHECK(same.m == f.m);
    }

    TEST_CASE("support box") {
        GridFunction f = make_grid_function(2, 1.0, 8);
        f.at(3, 5) = 1.0;
        SupportBox box = support_box(f, 1);
        CHECK_FALSE(box.empty);
        CHECK(box.lo[0] == 2);
        CHECK(box.hi[0] == 4);
        CHECK(box.lo[1] == 4);
        CHECK(box.hi[1] == 6);
        GridFunction z = make_grid_function(2, 1.0, 8);
        CHECK(support_box(z, 1).empty);
    }

    TEST_CASE("grid file IO round-trips") {
        GridFunction f = make_grid_function(2, 1.5, 6);
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = double(i) * 0.25;
        std::stringstream ss;
        write_grid(ss, f);
        GridFunction g = read_grid(ss);
        CHECK(g.n == f.n);
        CHECK(g.m == f.m);
        CHECK(g.L == doctest::Approx(f.L));
        CHECK(g.values == f.values);
    }

    TEST_CASE("affine image: whole-cell shifts are exact") {
        GridFunction f = make_grid_function(1, 1.0, 8);
        f.at(2) = 1.0;
        f.at(3) = 2.0;
        AffineMap shift = make_affine(1, identity_mat(), vec(2.0 * f.dx()));
        GridFunction g = affine_image(f, shift);
        CHECK(g.dx() == doctest::Approx(f.dx()));
        CHECK(l1_mass(g) == doctest::Approx(l1_mass(f)));
        bool found = false;
        for (int i = 0; i < g.m; ++i) {
            if (g.at(i) == 2.0) {
                found = true;
                CHECK(g.center(i) == doctest::Approx(f.center(3) + 2.0 * f.dx()));
            }
        }
        CHECK(found);
    }

    TEST_CASE("affine image: volume-preserving shear preserves mass") {
        GridFunction f = make_grid_function(2, 1.0, 32);
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            Vec x = f.center_of(i);
            f.values[i] = std::exp(-8.0 * (x[0] * x[0] + x[1] * x[1]));
        }
        Mat S = identity_mat();
        S[0][1] = 0.5;
        AffineMap map = make_affine(2, S, Vec{});
        CHECK(map.is_volume_preserving());
        GridFunction g = affine_image(f, map);
        CHECK(g.dx() == doctest::Approx(f.dx()));
        CHECK(l1_mass(g) == doctest::Approx(l1_mass(f)).epsilon(0.01));
    }
}

TEST_SUITE("spec language") {
    TEST_CASE("parse and evaluate") {
        SpecPtr s = parse_spec("sum(box_indicator([0],[1],1), gaussian([0.5],0.2,2))");
        CHECK_NOTHROW(validate_spec(s, 1));
        CHECK(eval_spec(s, 1, vec(0.5)) == doctest::Approx(1.0 + 2.0));
        CHECK(eval_spec(s, 1, vec(-0.5)) == doctest::Approx(0.0));
        CHECK(analytic_mass(s, 1) ==
              doctest::Approx(1.0 + 2.0 * 0.2 * std::sqrt(2.0 * pi_v)).epsilon(1e-6));
    }

    TEST_CASE("whitespace is insignificant") {
        SpecPtr a = parse_spec("max(ball_indicator([0,0],0.5,1),\n  box_indicator([-1,-1],[0,0],2))");
        CHECK_NOTHROW(validate_spec(a, 2));
        CHECK(eval_spec(a, 2, vec(-0.5, -0.5)) == doctest::Approx(2.0));
    }

    TEST_CASE("parse errors carry the byte position") {
        try {
            parse_spec("gaussian([0], 0.2,)");
            CHECK(false);
        } catch (const parse_error& e) {
            CHECK(e.position > 0);
            CHECK(std::string(e.what()).find("position") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_spec("frob([0],1,1)"), parse_error);
        CHECK_THROWS_AS(parse_spec(""), parse_error);
    }

    TEST_CASE("validation catches dimension mismatches") {
        SpecPtr s = parse_spec("gaussian([0,0],0.2,1)");
        CHECK_NOTHROW(validate_spec(s, 2));
        CHECK_THROWS_AS(validate_spec(s, 1), param_error);
        SpecPtr bad = parse_spec("gaussian([0],-0.2,1)");
        CHECK_THROWS_AS(validate_spec(bad, 1), param_error);
    }

    TEST_CASE("sampling hits the analytic mass") {
        SpecPtr s = parse_spec("box_indicator([0],[1],1)");
        GridFunction f = sample_spec(s, 1, 1.25, 200);
        CHECK(l1_mass(f) == doctest::Approx(1.0));
        CHECK(f.notes.empty());
        SpecPtr g = parse_spec("gaussian([0,0],0.35,1)");
        GridFunction fg = sample_spec(g, 2, 1.6, 64);
        CHECK(l1_mass(fg) == doctest::Approx(2.0 * pi_v * 0.35 * 0.35).epsilon(0.01));
    }

    TEST_CASE("affine and scale_arg nodes") {
        SpecPtr g0 = spec_gaussian({0.0, 0.0}, 0.3, 1.0);
        // Pushforward: f(x) = g(S^{-1} x), so f(S y) = g(y).
        SpecPtr sheared = spec_affine({1.0, 0.5, 0.0, 1.0}, {0.0, 0.0}, g0);
        const double direct = eval_spec(g0, 2, vec(0.1, -0.2));
        CHECK(direct > 0.5);
        CHECK(eval_spec(sheared, 2, vec(0.0, -0.2)) == doctest::Approx(direct));
        CHECK(analytic_mass(sheared, 2) == doctest::Approx(analytic_mass(g0, 2)));
        SpecPtr half = spec_scale_arg(2.0, g0);
        CHECK(eval_spec(half, 2, vec(0.1, 0.0)) ==
              doctest::Approx(eval_spec(g0, 2, vec(0.2, 0.0))));
        std::string round = to_string(sheared);
        SpecPtr back = parse_spec(round);
        CHECK(eval_spec(back, 2, vec(0.0, -0.2)) == doctest::Approx(direct));
    }
}
