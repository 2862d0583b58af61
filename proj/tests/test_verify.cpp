#include "doctest.h"

#include <cmath>

#include "json.hpp"

#include "fracgeo/spec_lang.hpp"
#include "fracgeo/verify.hpp"

using namespace fracgeo;

namespace {
TermValue term(const std::string& name, double value, double uncertainty = 0.0,
               bool infinite = false) {
    TermValue t;
    t.name = name;
    t.value = value;
    t.uncertainty = uncertainty;
    t.infinite = infinite;
    return t;
}
} // namespace

TEST_SUITE("verdicts") {
    TEST_CASE("compare_terms covers the four outcomes") {
        CHECK(compare_terms("a >= b", term("a", 10.0, 0.01), term("b", 5.0, 0.01)).status
              == "holds");
        CHECK(compare_terms("a >= b", term("a", 10.05), term("b", 10.0)).status
              == "holds-with-equality");
        CHECK(compare_terms("a >= b", term("a", 5.0, 0.01), term("b", 10.0, 0.01)).status
              == "violated-within-uncertainty");
        CHECK(compare_terms("a >= b", term("a", 0.0, 0.0, true), term("b", 1.0)).status
              == "vacuous-infinite");
        CHECK(compare_terms("a >= b", term("a", 1.0), term("b", 0.0, 0.0, true)).status
              == "violated-within-uncertainty");
        // Large uncertainties widen the equality band.
        CHECK(compare_terms("a >= b", term("a", 10.0, 0.5), term("b", 9.0, 0.5)).status
              == "holds-with-equality");
    }

    TEST_CASE("extrapolate_term applies the refinement order") {
        TermValue t = extrapolate_term("j", 1.0, 1.1, false, false, 100, 200);
        const double corr = 0.1 / (std::pow(2.0, refinement_order) - 1.0);
        CHECK(t.value == doctest::Approx(1.1 + corr).epsilon(1e-12));
        CHECK(t.uncertainty == doctest::Approx(corr).epsilon(1e-12));
        CHECK(t.refinement == "richardson(m=100,200)");
        REQUIRE(t.level_values.size() == 2);
        CHECK(t.level_values[0].first == "m=100");
        CHECK(t.level_values[1].second == 1.1);
        TermValue inf = extrapolate_term("j", 1.0, 0.0, false, true, 100, 200);
        CHECK(inf.infinite);
    }

    TEST_CASE("append_comparison keeps margins and verdicts aligned") {
        ChainReport rep;
        append_comparison(rep, "gap", "a >= b", term("a", 3.0, 0.1), term("b", 1.0, 0.1));
        append_comparison(rep, "bad", "a >= b", term("a", 1.0), term("b", 3.0));
        REQUIRE(rep.margins.size() == 2);
        REQUIRE(rep.verdicts.size() == 2);
        CHECK(rep.margins[0].value == doctest::Approx(2.0));
        CHECK(rep.margins[0].uncertainty == doctest::Approx(0.2));
        CHECK(rep.any_violation());
        CHECK(rep.verdict("a >= b") != nullptr);
        append_comparison(rep, "nan", "a >= b", term("a", 0.0, 0.0, true), term("b", 1.0));
        CHECK(std::isnan(rep.margins[2].value));
    }
}

TEST_SUITE("chain verifiers") {
    TEST_CASE("indicator chain is an equality chain") {
        GridFunction f = sample_spec(parse_spec("box_indicator([0],[1],1)"), 1, 1.25, 200);
        const Params prm{1, 0.25, 2.0};
        KernelPolicy pol;
        ChainReport rep = verify_chain_symmetric(f, f, prm, default_quadrature(1), pol,
                                                 "golden-sym");
        CHECK(rep.case_id == "golden-sym");
        REQUIRE(rep.terms.size() == 3);
        CHECK(rep.term("seminorm") != nullptr);
        for (const char* name : {"seminorm", "affine_energy", "rearranged_seminorm"})
            CHECK(rep.term(name)->value == doctest::Approx(16.0).epsilon(0.03));
        CHECK_FALSE(rep.any_violation());
        REQUIRE(rep.verdicts.size() == 2);
        for (const Verdict& v : rep.verdicts)
            CHECK(v.status == "holds-with-equality");

        GridFunction h = f;
        for (double& v : h.values) v *= 2.0;
        ChainReport asym = verify_chain_asymmetric(f, h, prm, default_quadrature(1), pol);
        for (const char* name : {"seminorm", "affine_energy", "rearranged_seminorm"})
            CHECK(asym.term(name)->value == doctest::Approx(8.0).epsilon(0.03));
        CHECK_FALSE(asym.any_violation());
    }

    TEST_CASE("separated bumps drop strictly under rearrangement") {
        // m = 96 so the coarse Richardson level (m = 48) still resolves the
        // sigma = 0.18 bumps; at m = 64 the coarse level is pure noise.
        GridFunction f = sample_spec(
            parse_spec("sum(gaussian([0.6,0],0.18,1), gaussian([-0.6,0],0.18,1))"),
            2, 1.6, 96);
        const Params prm{2, 0.3, 2.0};
        KernelPolicy pol;
        ChainReport rep = verify_chain_symmetric(f, f, prm, default_quadrature(2, 64), pol,
                                                 "two-bumps");
        CHECK_FALSE(rep.any_violation());
        const double lhs = rep.term("seminorm")->value;
        const double rhs = rep.term("rearranged_seminorm")->value;
        CHECK(lhs > 1.05 * rhs);
        // The margins bracket the energy term between the seminorms.
        REQUIRE(rep.margins.size() == 2);
        CHECK(rep.margins[0].value > 0.0);
        CHECK(rep.margins[1].value > 0.0);
    }

    TEST_CASE("divergent pair reports a vacuous chain") {
        GridFunction f = sample_spec(parse_spec("box_indicator([0],[1],1)"), 1, 1.25, 200);
        GridFunction h = f;
        for (double& v : h.values) v *= 2.0;
        KernelPolicy pol;
        ChainReport rep = verify_chain_symmetric(f, h, Params{1, 0.25, 2.0},
                                                 default_quadrature(1), pol, "vacuous");
        for (const Verdict& v : rep.verdicts) CHECK(v.status == "vacuous-infinite");
        CHECK(rep.term("seminorm")->infinite);
        CHECK_FALSE(rep.any_violation());
    }

    TEST_CASE("strict window is enforced for chains") {
        GridFunction f = sample_spec(parse_spec("gaussian([0],0.3,1)"), 1, 1.25, 100);
        KernelPolicy pol;
        CHECK_THROWS_AS(verify_chain_symmetric(f, f, Params{1, 0.99, 2.0},
                                               default_quadrature(1), pol),
                        param_error);
        CHECK_THROWS_AS(verify_chain_symmetric(f, f, Params{1, 0.25, 1.0},
                                               default_quadrature(1), pol),
                        param_error);
    }
}

TEST_SUITE("auxiliary verifiers") {
    TEST_CASE("anisotropic inequality on a sheared body") {
        GridFunction f = sample_spec(parse_spec("gaussian([0.3,-0.2],0.3,1)"), 2, 1.6, 48);
        Mat A = identity_mat();
        A[0][0] = 0.5;
        A[1][1] = 2.0;
        ChainReport rep = verify_anisotropic(f, f, StarBody::ellipsoid(2, A),
                                             Params{2, 0.3, 2.0},
                                             {DiffMode::abs, DiffMode::plus},
                                             KernelPolicy{}, default_quadrature(2, 128));
        CHECK_FALSE(rep.any_violation());
        CHECK(rep.term("lhs-abs") != nullptr);
        CHECK(rep.term("rhs-plus") != nullptr);
        REQUIRE(rep.verdicts.size() == 2);
    }

    TEST_CASE("volume power monotonicity") {
        GridFunction f = sample_spec(
            parse_spec("sum(gaussian([0.5,0.1],0.2,1), gaussian([-0.4,-0.2],0.25,0.7))"),
            2, 1.6, 48);
        ChainReport rep = verify_volume_monotonicity(f, f, Params{2, 0.3, 2.0},
                                                     default_quadrature(2, 64),
                                                     DiffMode::abs);
        CHECK_FALSE(rep.any_violation());
        CHECK(rep.term("pi_volume_power") != nullptr);
        CHECK(rep.term("rearranged_pi_volume_power") != nullptr);
        CHECK(rep.margins.size() == 1);
    }

    TEST_CASE("s to 1 limit closes on a smooth function") {
        GridFunction f = sample_spec(parse_spec("gaussian([0],0.3,1)"), 1, 2.0, 200);
        ChainReport rep = verify_limit_s1(f, StarBody::ball(1, 1.0), 2.0,
                                          {0.9, 0.95}, default_quadrature(1));
        CHECK(rep.term("gradient_side") != nullptr);
        CHECK(rep.term("ratio(s=0.95)") != nullptr);
        REQUIRE(rep.margins.size() == 2);
        // Structural expectations; the tight 10% gate runs at acceptance scale.
        CHECK(std::isfinite(rep.margins[0].value));
        CHECK(rep.term("ratio(s=0.95)")->value == doctest::Approx(1.0).epsilon(0.25));
    }

    TEST_CASE("dilation slope and shear invariance") {
        GridFunction f = sample_spec(parse_spec("gaussian([0.1,0],0.3,1)"), 2, 1.6, 64);
        ChainReport rep = verify_invariance(f, f, Params{2, 0.3, 2.0},
                                            default_quadrature(2, 64));
        CHECK_FALSE(rep.any_violation());
        const TermValue* slope = rep.term("scaling_slope");
        REQUIRE(slope != nullptr);
        CHECK(slope->value == doctest::Approx(0.6 - 2.0).epsilon(0.05));
        CHECK(rep.term("pi_volume_sheared") != nullptr);
    }
}

TEST_SUITE("report serialization") {
    TEST_CASE("json schema round-trips the fields in order") {
        ChainReport rep;
        rep.case_id = "demo";
        rep.params = Params{2, 0.3, 2.0};
        rep.L = 1.6;
        rep.m = 64;
        TermValue t = term("seminorm", 12.5, 0.2);
        t.refinement = "richardson(m=32,64)";
        rep.terms.push_back(t);
        rep.terms.push_back(term("bad", 0.0, 0.0, true));
        append_comparison(rep, "gap", "seminorm >= energy", rep.terms[0], rep.terms[0]);
        rep.runtime_seconds = 0.25;

        nlohmann::json j = nlohmann::json::parse(report_to_json(rep));
        CHECK(j["case"] == "demo");
        CHECK(j["params"]["n"] == 2);
        CHECK(j["params"]["s"] == 0.3);
        CHECK(j["grid"]["L"] == 1.6);
        CHECK(j["grid"]["m"] == 64);
        REQUIRE(j["terms"].size() == 2);
        CHECK(j["terms"][0]["name"] == "seminorm");
        CHECK(j["terms"][0]["value"] == 12.5);
        CHECK(j["terms"][0]["infinite"] == false);
        CHECK(j["terms"][0]["refinement"] == "richardson(m=32,64)");
        CHECK(j["terms"][1]["value"].is_null());
        CHECK(j["terms"][1]["infinite"] == true);
        REQUIRE(j["margins"].size() == 1);
        CHECK(j["margins"][0]["name"] == "gap");
        CHECK(j["verdicts"][0]["status"] == "holds-with-equality");
        CHECK(j["runtime_seconds"] == 0.25);
        // Field order is part of the schema.
        std::string text = report_to_json(rep);
        CHECK(text.find("\"case\"") < text.find("\"params\""));
        CHECK(text.find("\"params\"") < text.find("\"grid\""));
        CHECK(text.find("\"grid\"") < text.find("\"terms\""));
        CHECK(text.find("\"terms\"") < text.find("\"margins\""));
        CHECK(text.find("\"margins\"") < text.find("\"verdicts\""));
        CHECK(text.find("\"verdicts\"") < text.find("\"runtime_seconds\""));
    }

    TEST_CASE("csv exports") {
        ChainReport rep;
        rep.case_id = "demo";
        TermValue t = extrapolate_term("j", 1.0, 1.1, false, false, 100, 200);
        rep.terms.push_back(t);
        append_comparison(rep, "gap", "a >= b", t, term("b", 0.5));
        std::string tc = terms_csv({rep});
        CHECK(tc.rfind("case,term,refinement,value,uncertainty\n", 0) == 0);
        CHECK(tc.find("demo,j,m=100,1,") != std::string::npos);
        CHECK(tc.find("richardson(m=100,200)") != std::string::npos);
        std::string mc = margins_csv({rep});
        CHECK(mc.rfind("case,margin,value,uncertainty,status\n", 0) == 0);
        CHECK(mc.find("demo,gap,") != std::string::npos);
        CHECK(mc.find("holds") != std::string::npos);
    }
}
