#include "fracgeo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "fracgeo/rearrange.hpp"
#include "fracgeo/spec_lang.hpp"

namespace fracgeo {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void require_shared_grid(const GridFunction& f, const GridFunction& h, const char* who) {
    if (f.n != h.n || f.m != h.m || f.L != h.L)
        throw size_error(std::string(who) + ": f and h must share a grid");
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t k = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) { mx += x[i]; my += y[i]; }
    mx /= double(k);
    my /= double(k);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return den > 0.0 ? num / den : 0.0;
}

} // namespace

QuadPtr default_quadrature(int n, std::size_t requested) {
    std::size_t want = requested;
    if (want == 0) want = (n == 1) ? 2 : (n == 2 ? 256 : 128);
    return std::make_shared<SphereQuadrature>(make_sphere_quadrature(n, want));
}

TermValue extrapolate_term(const std::string& name, double coarse, double fine,
                           bool coarse_infinite, bool fine_infinite,
                           int m_coarse, int m_fine) {
    TermValue t;
    t.name = name;
    t.level_values.emplace_back("m=" + std::to_string(m_coarse), coarse);
    t.level_values.emplace_back("m=" + std::to_string(m_fine), fine);
    t.refinement = "richardson(m=" + std::to_string(m_coarse) + "," + std::to_string(m_fine) + ")";
    if (coarse_infinite || fine_infinite) {
        t.infinite = true;
        return t;
    }
    Extrapolated e = richardson(coarse, fine, refinement_order);
    t.value = e.value;
    t.uncertainty = e.uncertainty;
    return t;
}

Verdict compare_terms(const std::string& inequality, const TermValue& lhs,
                      const TermValue& rhs) {
    Verdict v;
    v.inequality = inequality;
    if (lhs.infinite) { v.status = "vacuous-infinite"; return v; }
    if (rhs.infinite) { v.status = "violated-within-uncertainty"; return v; }
    const double margin = lhs.value - rhs.value;
    const double u = lhs.uncertainty + rhs.uncertainty;
    const double band =
        std::max(0.02 * std::max(std::abs(lhs.value), std::abs(rhs.value)), 3.0 * u);
    if (std::abs(margin) <= band) { v.status = "holds-with-equality"; return v; }
    if (margin < -u) { v.status = "violated-within-uncertainty"; return v; }
    v.status = "holds";
    return v;
}

void append_comparison(ChainReport& report, const std::string& margin_name,
                       const std::string& inequality, const TermValue& lhs,
                       const TermValue& rhs) {
    MarginValue mv;
    mv.name = margin_name;
    if (lhs.infinite || rhs.infinite) {
        mv.value = std::numeric_limits<double>::quiet_NaN();
    } else {
        mv.value = lhs.value - rhs.value;
        mv.uncertainty = lhs.uncertainty + rhs.uncertainty;
    }
    report.margins.push_back(mv);
    report.verdicts.push_back(compare_terms(inequality, lhs, rhs));
}

namespace {

struct ChainLevel {
    double seminorm = 0.0, energy = 0.0, rearranged = 0.0;
    bool seminorm_inf = false, energy_inf = false, rearranged_inf = false;
};

ChainLevel eval_chain_level(const GridFunction& f, const GridFunction& h,
                            const Params& params, DiffMode mode,
                            const KernelPolicy& policy, QuadPtr quad) {
    ChainLevel out;
    const StarBody ball = StarBody::ball(params.n, 1.0);
    KernelPolicy pol = policy;
    pol.diagnose = true;
    SeminormResult sr = frac_seminorm(f, h, ball, params, mode, pol, *quad);
    out.seminorm = sr.value;
    out.seminorm_inf = sr.infinite;

    PolarProjectionBody body = pi_body(f, h, params, mode, quad);
    const double e = affine_energy(body);
    out.energy_inf = std::isinf(e);
    out.energy = out.energy_inf ? 0.0 : e;

    const GridFunction fs = rearrange(f);
    const GridFunction hs = rearrange(h);
    SeminormResult sr2 = frac_seminorm(fs, hs, ball, params, mode, pol, *quad);
    out.rearranged = sr2.value;
    out.rearranged_inf = sr2.infinite;
    return out;
}

ChainReport run_chain(const GridFunction& f, const GridFunction& h,
                      const Params& params, QuadPtr quad, const KernelPolicy& policy,
                      DiffMode mode, const std::string& case_id) {
    const auto t0 = Clock::now();
    validate_params(params.n, params.s, params.p, true);
    require_shared_grid(f, h, "verify_chain");
    if (f.m % 2 != 0) throw param_error("verify_chain: m must be even for two-level refinement");

    ChainReport rep;
    rep.case_id = case_id;
    rep.params = params;
    rep.L = f.L;
    rep.m = f.m;

    const GridFunction fc = coarsen(f);
    const GridFunction hc = coarsen(h);
    const ChainLevel lo = eval_chain_level(fc, hc, params, mode, policy, quad);
    const ChainLevel hi = eval_chain_level(f, h, params, mode, policy, quad);

    rep.terms.push_back(extrapolate_term("seminorm", lo.seminorm, hi.seminorm,
                                         lo.seminorm_inf, hi.seminorm_inf, fc.m, f.m));
    rep.terms.push_back(extrapolate_term("affine_energy", lo.energy, hi.energy,
                                         lo.energy_inf, hi.energy_inf, fc.m, f.m));
    rep.terms.push_back(extrapolate_term("rearranged_seminorm", lo.rearranged, hi.rearranged,
                                         lo.rearranged_inf, hi.rearranged_inf, fc.m, f.m));
    append_comparison(rep, "seminorm-vs-energy", "seminorm >= affine_energy",
                      rep.terms[0], rep.terms[1]);
    append_comparison(rep, "energy-vs-rearranged", "affine_energy >= rearranged_seminorm",
                      rep.terms[1], rep.terms[2]);
    rep.runtime_seconds = elapsed(t0);
    return rep;
}

} // namespace

ChainReport verify_chain_symmetric(const GridFunction& f, const GridFunction& h,
                                   const Params& params, QuadPtr quad,
                                   const KernelPolicy& policy,
                                   const std::string& case_id) {
    return run_chain(f, h, params, quad, policy, DiffMode::abs, case_id);
}

ChainReport verify_chain_asymmetric(const GridFunction& f, const GridFunction& h,
                                    const Params& params, QuadPtr quad,
                                    const KernelPolicy& policy,
                                    const std::string& case_id) {
    return run_chain(f, h, params, quad, policy, DiffMode::plus, case_id);
}

ChainReport verify_anisotropic(const GridFunction& f, const GridFunction& h,
                               const StarBody& K, const Params& params,
                               const std::vector<DiffMode>& modes,
                               const KernelPolicy& policy, QuadPtr quad,
                               const std::string& case_id) {
    const auto t0 = Clock::now();
    validate_params(params.n, params.s, params.p, false);
    require_shared_grid(f, h, "verify_anisotropic");
    if (f.m % 2 != 0)
        throw param_error("verify_anisotropic: m must be even for two-level refinement");
    if (K.dim() != params.n) throw param_error("verify_anisotropic: body dimension mismatch");

    ChainReport rep;
    rep.case_id = case_id;
    rep.params = params;
    rep.L = f.L;
    rep.m = f.m;

    const StarBody Ks = schwarz_symmetral(K, *quad);
    const GridFunction fc = coarsen(f);
    const GridFunction hc = coarsen(h);
    const GridFunction fs = rearrange(f);
    const GridFunction hs = rearrange(h);
    const GridFunction fcs = rearrange(fc);
    const GridFunction hcs = rearrange(hc);
    KernelPolicy pol = policy;
    pol.diagnose = true;

    for (DiffMode mode : modes) {
        const SeminormResult lc = frac_seminorm(fc, hc, K, params, mode, pol, *quad);
        const SeminormResult lf = frac_seminorm(f, h, K, params, mode, pol, *quad);
        const SeminormResult rc = frac_seminorm(fcs, hcs, Ks, params, mode, pol, *quad);
        const SeminormResult rf = frac_seminorm(fs, hs, Ks, params, mode, pol, *quad);
        const std::string tag = to_string(mode);
        TermValue lhs = extrapolate_term("lhs-" + tag, lc.value, lf.value,
                                         lc.infinite, lf.infinite, fc.m, f.m);
        TermValue rhs = extrapolate_term("rhs-" + tag, rc.value, rf.value,
                                         rc.infinite, rf.infinite, fc.m, f.m);
        rep.terms.push_back(lhs);
        rep.terms.push_back(rhs);
        append_comparison(rep, "aniso-" + tag,
                          "seminorm(f,h,K) >= seminorm(f*,h*,K*) [" + tag + "]", lhs, rhs);
    }
    rep.runtime_seconds = elapsed(t0);
    return rep;
}

ChainReport verify_volume_monotonicity(const GridFunction& f, const GridFunction& h,
                                       const Params& params, QuadPtr quad,
                                       DiffMode mode, const std::string& case_id) {
    const auto t0 = Clock::now();
    validate_params(params.n, params.s, params.p, true);
    require_shared_grid(f, h, "verify_volume_monotonicity");
    if (f.m % 2 != 0)
        throw param_error("verify_volume_monotonicity: m must be even for two-level refinement");

    ChainReport rep;
    rep.case_id = case_id;
    rep.params = params;
    rep.L = f.L;
    rep.m = f.m;

    const double expnt = -params.ps() / double(params.n);
    auto vol_power = [&](const GridFunction& a, const GridFunction& b, double& val, bool& inf) {
        const double v = body_volume(pi_body(a, b, params, mode, quad));
        if (v == 0.0) { inf = true; val = 0.0; return; }
        if (std::isinf(v)) { inf = false; val = 0.0; return; }
        inf = false;
        val = std::pow(v, expnt);
    };

    const GridFunction fc = coarsen(f);
    const GridFunction hc = coarsen(h);
    double lc = 0, lf = 0, rc = 0, rf = 0;
    bool lci = false, lfi = false, rci = false, rfi = false;
    vol_power(fc, hc, lc, lci);
    vol_power(f, h, lf, lfi);
    vol_power(rearrange(fc), rearrange(hc), rc, rci);
    vol_power(rearrange(f), rearrange(h), rf, rfi);

    TermValue lhs = extrapolate_term("pi_volume_power", lc, lf, lci, lfi, fc.m, f.m);
    TermValue rhs = extrapolate_term("rearranged_pi_volume_power", rc, rf, rci, rfi, fc.m, f.m);
    rep.terms.push_back(lhs);
    rep.terms.push_back(rhs);
    append_comparison(rep, "volume-monotonicity",
                      "|Pi(f,h)|^{-ps/n} >= |Pi(f*,h*)|^{-ps/n}", lhs, rhs);
    rep.runtime_seconds = elapsed(t0);
    return rep;
}

ChainReport verify_limit_s1(const GridFunction& f, const StarBody& K, double p,
                            const std::vector<double>& s_list, QuadPtr quad,
                            const std::string& case_id) {
    const auto t0 = Clock::now();
    if (s_list.empty()) throw param_error("verify_limit_s1: s_list must be non-empty");
    for (double s : s_list) validate_params(f.n, s, p, false);
    if (!(p > 1.0)) throw param_error("verify_limit_s1: p must satisfy p > 1");
    if (K.dim() != f.n) throw param_error("verify_limit_s1: body dimension mismatch");

    ChainReport rep;
    rep.case_id = case_id;
    rep.params = Params{f.n, s_list.back(), p};
    rep.L = f.L;
    rep.m = f.m;

    // Gradient side: (2/p) * Delta^n * sum ||grad f(x)||_{Z*_p K}^p with
    // centered differences (zero ghosts).
    const int n = f.n;
    const double dx = f.dx();
    const double cellvol = std::pow(dx, n);
    std::vector<double> contrib(f.values.size(), 0.0);
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        int c[3] = {0, 0, 0};
        for (int a = 0; a < n; ++a) c[a] = f.coord(flat, a);
        Vec grad{};
        bool nonzero = false;
        for (int a = 0; a < n; ++a) {
            int lo[3] = {c[0], c[1], c[2]};
            int hi[3] = {c[0], c[1], c[2]};
            lo[a] -= 1;
            hi[a] += 1;
            const double vl = lo[a] >= 0 ? f.at(lo[0], lo[1], lo[2]) : 0.0;
            const double vh = hi[a] < f.m ? f.at(hi[0], hi[1], hi[2]) : 0.0;
            grad[a] = (vh - vl) / (2.0 * dx);
            nonzero = nonzero || grad[a] != 0.0;
        }
        if (!nonzero) continue;
        const double nrm = moment_body_norm(K, grad, p, *quad);
        contrib[flat] = std::pow(nrm, p);
    }
    const double grad_side = (2.0 / p) * cellvol * pairwise_sum(contrib);
    TermValue gterm;
    gterm.name = "gradient_side";
    gterm.value = grad_side;
    gterm.refinement = "direct(m=" + std::to_string(f.m) + ")";
    rep.terms.push_back(gterm);

    // Seminorm side per s, through the projection body with the small-t
    // exponent pinned to p (valid for smooth f; integrates the near-diagonal
    // mass that dominates as s -> 1 analytically).
    std::vector<double> gaps;
    for (double s : s_list) {
        const Params prm{n, s, p};
        ProjOptions opts;
        opts.head_exponent_override = p;
        const PolarProjectionBody body = pi_body(f, f, prm, DiffMode::abs, quad, opts);
        const double J = seminorm_via_body(K, body);
        const double lhs = (1.0 - s) * J;
        TermValue t1;
        t1.name = "scaled_seminorm(s=" + fmt(s) + ")";
        t1.value = lhs;
        t1.infinite = std::isinf(lhs);
        t1.refinement = "direct(m=" + std::to_string(f.m) + ")";
        rep.terms.push_back(t1);
        const double ratio = lhs / grad_side;
        TermValue t2;
        t2.name = "ratio(s=" + fmt(s) + ")";
        t2.value = ratio;
        t2.infinite = std::isinf(ratio);
        t2.refinement = t1.refinement;
        rep.terms.push_back(t2);
        gaps.push_back(std::abs(ratio - 1.0));
    }

    MarginValue gap;
    gap.name = "limit-gap(s=" + fmt(s_list.back()) + ")";
    gap.value = gaps.back();
    rep.margins.push_back(gap);
    Verdict v1;
    v1.inequality = "(1-s)*seminorm within 10% of gradient limit at s=" + fmt(s_list.back());
    v1.status = gaps.back() <= 0.10 ? "holds" : "violated-within-uncertainty";
    rep.verdicts.push_back(v1);

    MarginValue trend;
    trend.name = "limit-trend";
    trend.value = gaps.front() - gaps.back();
    rep.margins.push_back(trend);
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i)
        if (gaps[i + 1] > gaps[i] + 1e-9) monotone = false;
    Verdict v2;
    v2.inequality = "|ratio-1| non-increasing over s grid";
    v2.status = monotone ? "holds" : "violated-within-uncertainty";
    rep.verdicts.push_back(v2);

    rep.runtime_seconds = elapsed(t0);
    return rep;
}

ChainReport verify_invariance(const GridFunction& f, const GridFunction& h,
                              const Params& params, QuadPtr quad,
                              const std::string& case_id) {
    const auto t0 = Clock::now();
    validate_params(params.n, params.s, params.p, true);
    require_shared_grid(f, h, "verify_invariance");

    ChainReport rep;
    rep.case_id = case_id;
    rep.params = params;
    rep.L = f.L;
    rep.m = f.m;

    const int n = params.n;
    const double ps = params.ps();

    // Dilation: f(r x) on the box of half-width L/r reuses the sample values
    // exactly, so the fitted slope isolates the scaling law.
    const double rs[3] = {0.5, 1.0, 2.0};
    std::vector<double> logr, logv;
    double vol_unit = 0.0;
    for (double r : rs) {
        GridFunction fr = f;
        GridFunction hr = h;
        fr.L = f.L / r;
        hr.L = h.L / r;
        const double v = body_volume(pi_body(fr, hr, params, DiffMode::abs, quad));
        if (r == 1.0) vol_unit = v;
        if (v <= 0.0 || std::isinf(v))
            throw param_error("verify_invariance: projection body volume not finite-positive");
        logr.push_back(std::log(r));
        logv.push_back(std::log(std::pow(v, -ps / double(n))));
    }
    const double slope = ls_slope(logr, logv);
    const double target = ps - double(n);
    TermValue ts;
    ts.name = "scaling_slope";
    ts.value = slope;
    ts.refinement = "fit(r=1/2,1,2)";
    rep.terms.push_back(ts);
    MarginValue ms;
    ms.name = "scaling-slope-gap";
    ms.value = slope - target;
    rep.margins.push_back(ms);
    Verdict vs;
    vs.inequality = "log-log dilation slope of |Pi|^{-ps/n} = ps - n (+/- 0.05)";
    vs.status = std::abs(slope - target) <= 0.05 ? "holds" : "violated-within-uncertainty";
    rep.verdicts.push_back(vs);

    if (n >= 2) {
        Mat S = identity_mat();
        S[0][1] = 0.5;   // volume-preserving shear
        const AffineMap map = make_affine(n, S, Vec{});
        GridFunction fT = affine_image(f, map);
        GridFunction hT = affine_image(h, map);
        const double Lmax = std::max(fT.L, hT.L);
        fT = embed(fT, Lmax);
        hT = embed(hT, Lmax);
        const double volT = body_volume(pi_body(fT, hT, params, DiffMode::abs, quad));

        TermValue t0v;
        t0v.name = "pi_volume";
        t0v.value = vol_unit;
        t0v.refinement = "direct(m=" + std::to_string(f.m) + ")";
        rep.terms.push_back(t0v);
        TermValue t1v;
        t1v.name = "pi_volume_sheared";
        t1v.value = volT;
        t1v.refinement = "direct(m=" + std::to_string(fT.m) + ")";
        rep.terms.push_back(t1v);

        MarginValue md;
        md.name = "shear-drift";
        md.value = volT - vol_unit;
        md.uncertainty = 0.02 * std::abs(vol_unit);
        rep.margins.push_back(md);
        Verdict vd;
        vd.inequality = "|Pi| invariant under volume-preserving shear (2%)";
        vd.status = std::abs(volT - vol_unit) <= 0.02 * std::abs(vol_unit)
                        ? "holds"
                        : "violated-within-uncertainty";
        rep.verdicts.push_back(vd);
    }
    rep.runtime_seconds = elapsed(t0);
    return rep;
}

namespace {

// Union-of-random-indicators test function; never identically zero.
GridFunction random_blobs(int n, double L, int m, std::mt19937_64& rng,
                          double wlo, double whi, int max_blobs) {
    GridFunction g = make_grid_function(n, L, m);
    std::uniform_int_distribution<int> nb(1, max_blobs);
    std::uniform_real_distribution<double> uc(-0.6, 0.6), uw(wlo, whi);
    std::uniform_int_distribution<int> shape(0, 1);
    const int blobs = nb(rng);
    for (int b = 0; b < blobs; ++b) {
        Vec c{};
        for (int a = 0; a < n; ++a) c[a] = uc(rng) * L;
        const double w = uw(rng) * L;
        const bool ball = shape(rng) == 1;
        for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
            const Vec x = g.center_of(flat);
            bool inside;
            if (ball) {
                inside = norm2(sub(x, c)) <= w;
            } else {
                inside = true;
                for (int a = 0; a < n; ++a)
                    if (std::abs(x[a] - c[a]) > w) { inside = false; break; }
            }
            if (inside) g.values[flat] = 1.0;
        }
    }
    bool any = false;
    for (double v : g.values)
        if (v != 0.0) { any = true; break; }
    if (!any) g.at(m / 2, n > 1 ? m / 2 : 0, n > 2 ? m / 2 : 0) = 1.0;
    return g;
}

// Sum of 1-2 random Gaussians, supported well inside the box.
GridFunction random_smooth(int n, double L, int m, std::mt19937_64& rng, int bumps) {
    std::uniform_real_distribution<double> uc(-0.35, 0.35), us(0.18, 0.32), ua(0.5, 1.5);
    std::vector<SpecPtr> parts;
    for (int b = 0; b < bumps; ++b) {
        std::vector<double> c(n);
        for (int a = 0; a < n; ++a) c[a] = uc(rng) * L;
        parts.push_back(spec_gaussian(c, us(rng) * L, ua(rng)));
    }
    const SpecPtr spec = parts.size() == 1 ? parts[0] : spec_sum(parts);
    return sample_spec(spec, n, L, m);
}

} // namespace

ChainReport battery_riesz(int count, std::uint64_t seed) {
    const auto t0 = Clock::now();
    ChainReport rep;
    rep.case_id = "riesz-battery";
    rep.params = Params{1, 0.5, 2.0};
    rep.L = 1.0;
    rep.m = 200;

    for (int i = 0; i < count; ++i) {
        std::mt19937_64 rng(seed * 1000003ULL + std::uint64_t(i));
        const int n = (i % 2) + 1;
        const int m = n == 1 ? 200 : 48;
        const double L = 1.0;
        const GridFunction f = random_blobs(n, L, m, rng, 0.05, 0.30, 3);
        const GridFunction g = random_blobs(n, L, m, rng, 0.05, 0.30, 3);
        const GridFunction k = random_blobs(n, 2.0 * L, 2 * m, rng, 0.05, 0.45, 3);

        const GridFunction fc = coarsen(f), gc = coarsen(g), kc = coarsen(k);
        const double rhs_c = riesz_functional(fc, kc, gc);
        const double rhs_f = riesz_functional(f, k, g);
        const double lhs_c = riesz_functional(rearrange(fc), rearrange(kc), rearrange(gc));
        const double lhs_f = riesz_functional(rearrange(f), rearrange(k), rearrange(g));

        const std::string idx = std::to_string(i);
        TermValue lhs = extrapolate_term("riesz-rearranged[" + idx + "]", lhs_c, lhs_f,
                                         false, false, fc.m, f.m);
        TermValue rhs = extrapolate_term("riesz[" + idx + "]", rhs_c, rhs_f,
                                         false, false, fc.m, f.m);
        rep.terms.push_back(lhs);
        rep.terms.push_back(rhs);
        append_comparison(rep, "riesz[" + idx + "]",
                          "riesz(f*,k*,g*) >= riesz(f,k,g) [case " + idx + "]", lhs, rhs);
    }
    rep.runtime_seconds = elapsed(t0);
    return rep;
}

ChainReport battery_dual_mixed(int pairs, std::uint64_t seed) {
    const auto t0 = Clock::now();
    ChainReport rep;
    rep.case_id = "dualmix-battery";
    rep.params = Params{2, 0.5, 2.0};

    const QuadPtr quad2 = default_quadrature(2);
    const QuadPtr quad3 = default_quadrature(3);

    auto exact_term = [](const std::string& name, double value) {
        TermValue t;
        t.name = name;
        t.value = value;
        t.refinement = "exact-node";
        return t;
    };

    for (int j = 0; j < pairs; ++j) {
        const int n = 2 + (j % 2);
        const QuadPtr quad = n == 2 ? quad2 : quad3;
        const StarBody K = random_star_body(n, quad, seed + 2 * std::uint64_t(j) + 1);
        const bool dilate = (j % 5 == 0);
        const double c = 0.5 + 0.25 * double(j % 7);
        const StarBody Lb = dilate ? K.scaled(c)
                                   : random_star_body(n, quad, seed + 2 * std::uint64_t(j) + 2);
        const double volK = volume(K, *quad);
        const double volL = volume(Lb, *quad);
        const std::string idx = std::to_string(j) + (dilate ? ",dilate" : "");

        // alpha = 1 (0 < alpha < n): Vt_1(K,L) <= |K|^{(n-1)/n} |L|^{1/n}.
        {
            TermValue lhs = exact_term("holder-bound[" + idx + "]",
                                       std::pow(volK, double(n - 1) / n) * std::pow(volL, 1.0 / n));
            TermValue rhs = exact_term("dualmix-a1[" + idx + "]",
                                       dual_mixed_volume(K, Lb, 1.0, *quad));
            rep.terms.push_back(lhs);
            rep.terms.push_back(rhs);
            append_comparison(rep, "dualmix[" + idx + "]alpha=1",
                              "|K|^{(n-1)/n}|L|^{1/n} >= Vt_1(K,L) [case " + idx + "]", lhs, rhs);
        }
        // alpha = -1: the inequality reverses.
        {
            TermValue lhs = exact_term("dualmix-am1[" + idx + "]",
                                       dual_mixed_volume(K, Lb, -1.0, *quad));
            TermValue rhs = exact_term("holder-bound-neg[" + idx + "]",
                                       std::pow(volK, double(n + 1) / n) * std::pow(volL, -1.0 / n));
            rep.terms.push_back(lhs);
            rep.terms.push_back(rhs);
            append_comparison(rep, "dualmix[" + idx + "]alpha=-1",
                              "Vt_{-1}(K,L) >= |K|^{(n+1)/n}|L|^{-1/n} [case " + idx + "]", lhs, rhs);
        }
        // Dual Brunn-Minkowski for the q-radial sum, q in {1, 2}.
        for (double q : {1.0, 2.0}) {
            const StarBody M = q_radial_sum(K, Lb, q, quad);
            TermValue lhs = exact_term("radial-sum-split[" + idx + "]q=" + fmt(q),
                                       std::pow(volK, q / n) + std::pow(volL, q / n));
            TermValue rhs = exact_term("radial-sum[" + idx + "]q=" + fmt(q),
                                       std::pow(volume(M, *quad), q / n));
            rep.terms.push_back(lhs);
            rep.terms.push_back(rhs);
            append_comparison(rep, "dualbm[" + idx + "]q=" + fmt(q),
                              "|K|^{q/n}+|L|^{q/n} >= |K +q L|^{q/n} [case " + idx + "]", lhs, rhs);
        }
    }
    rep.runtime_seconds = elapsed(t0);
    return rep;
}

std::vector<ChainReport> battery_anisotropic(int cases, std::uint64_t seed) {
    std::vector<ChainReport> out;
    const int n = 2;
    const int m = 64;
    const double L = 1.6;
    const QuadPtr quad = default_quadrature(n, 128);
    const double slist[3] = {0.25, 0.4, 0.55};
    const double plist[3] = {2.0, 1.5, 3.0};

    for (int i = 0; i < cases; ++i) {
        std::mt19937_64 rng(seed + 7000 + std::uint64_t(i));
        const Params params{n, slist[i % 3], plist[i % 3]};
        StarBody K = StarBody::ball(n, 1.0);
        GridFunction f = random_smooth(n, L, m, rng, 1 + (i % 2));
        GridFunction h = f;
        if (i == 0) {
            // Elliptical equality case: f = g o S^{-1} with g radial and a
            // volume-preserving shear S; gauge_K(x) = |S^{-1} x| undoes the
            // shear inside the kernel, so both sides of the anisotropic
            // inequality agree with the radial pair against the ball.
            const SpecPtr g0 = spec_gaussian({0.0, 0.0}, 0.35, 1.0);
            f = sample_spec(spec_affine({1.0, 0.5, 0.0, 1.0}, {0.0, 0.0}, g0), n, L, m);
            h = f;
            Mat Sinv = identity_mat();
            Sinv[0][1] = -0.5;
            K = StarBody::ellipsoid(n, Sinv);
        } else {
            switch (i % 5) {
                case 1: {
                    Mat A = identity_mat();
                    A[0][0] = 0.5;   // semiaxes (2, 1/2)
                    A[1][1] = 2.0;
                    K = StarBody::ellipsoid(n, A);
                    break;
                }
                case 2:
                    K = random_star_body(n, quad, seed + 9000 + std::uint64_t(i));
                    break;
                case 3:
                    K = StarBody::lq_ball(n, 1.5, 1.0);
                    break;
                case 4: {
                    Mat S = identity_mat();
                    S[0][1] = 0.4;
                    K = StarBody::linear_image(S, StarBody::ball(n, 1.0));
                    break;
                }
                default: break;
            }
            if (i % 2 == 1) {
                GridFunction bump = random_smooth(n, L, m, rng, 1);
                h = f;
                for (std::size_t k = 0; k < h.values.size(); ++k)
                    h.values[k] += 0.5 * bump.values[k];
            }
        }
        out.push_back(verify_anisotropic(f, h, K, params,
                                         {DiffMode::abs, DiffMode::plus}, KernelPolicy{},
                                         quad, "aniso-battery-" + std::to_string(i)));
    }
    return out;
}

std::vector<ChainReport> battery_chains(int sym_cases, int asym_cases, std::uint64_t seed) {
    std::vector<ChainReport> out;
    const double spairs[5][2] = {
        {0.25, 2.0}, {0.30, 1.8}, {0.20, 2.5}, {0.45, 1.2}, {0.15, 3.0}};

    auto make_case = [&](int i, bool sym) {
        std::mt19937_64 rng(seed + (sym ? 100 : 200) + std::uint64_t(i));
        const int n = (i % 2) + 1;
        const int m = n == 1 ? 200 : 64;
        const double L = n == 1 ? 1.25 : 1.6;
        const Params params{n, spairs[i % 5][0], spairs[i % 5][1]};
        const QuadPtr quad = default_quadrature(n, n == 2 ? 128 : 0);
        GridFunction f = (i % 3 == 0) ? random_blobs(n, L, m, rng, 0.08, 0.3, 2)
                                      : random_smooth(n, L, m, rng, 1 + (i % 2));
        if (sym) {
            return verify_chain_symmetric(f, f, params, quad, KernelPolicy{},
                                          "chain-sym-" + std::to_string(i));
        }
        // One-sided chain needs h >= f near the diagonal; h = f + bump or a
        // uniform multiple keeps the plus integrand zero at coincident points.
        GridFunction h = f;
        if (i % 2 == 0) {
            for (double& v : h.values) v *= 1.0 + 0.5 * double(1 + (i % 3));
        } else {
            GridFunction bump = random_smooth(n, L, m, rng, 1);
            for (std::size_t k = 0; k < h.values.size(); ++k)
                h.values[k] += 0.75 * bump.values[k];
        }
        return verify_chain_asymmetric(f, h, params, quad, KernelPolicy{},
                                       "chain-asym-" + std::to_string(i));
    };

    for (int i = 0; i < sym_cases; ++i) out.push_back(make_case(i, true));
    for (int i = 0; i < asym_cases; ++i) out.push_back(make_case(i, false));
    return out;
}

namespace {

bool close_rel(double a, double b, double tol) {
    if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0);
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

CriterionResult make_criterion(int id, const std::string& name, bool warn_only = false) {
    CriterionResult c;
    c.id = id;
    c.name = name;
    c.warn_only = warn_only;
    return c;
}

std::string verdict_summary(const ChainReport& rep) {
    std::string s;
    for (const Verdict& v : rep.verdicts) {
        if (!s.empty()) s += "; ";
        s += v.inequality + ": " + v.status;
    }
    return s;
}

} // namespace

AcceptanceOutcome run_acceptance(bool include_slow) {
    AcceptanceOutcome out;
    const QuadPtr quad1 = default_quadrature(1);

    // 1. Golden symmetric chain: f = h = 1_{[0,1]}, p = 2, s = 0.25; all three
    // chain terms equal 16 within 2% after refinement over m in {200, 400}.
    {
        auto t0 = Clock::now();
        CriterionResult c = make_criterion(1, "golden symmetric chain (16,16,16)");
        const GridFunction f = sample_spec(spec_box({0.0}, {1.0}, 1.0), 1, 1.25, 400);
        const Params prm{1, 0.25, 2.0};
        ChainReport rep = verify_chain_symmetric(f, f, prm, quad1, KernelPolicy{}, "golden-sym");
        bool ok = true;
        std::string detail;
        for (const TermValue& t : rep.terms) {
            const bool good = !t.infinite && std::abs(t.value - 16.0) <= 0.02 * 16.0;
            ok = ok && good;
            detail += t.name + "=" + (t.infinite ? "inf" : fmt(t.value)) + " ";
        }
        c.seconds = elapsed(t0);
        ok = ok && !rep.any_violation() && c.seconds < 30.0;
        c.passed = ok;
        c.detail = detail + "(target 16 +/- 2%), " + verdict_summary(rep) + ", " +
                   fmt(c.seconds) + "s";
        out.reports.push_back(rep);
        out.criteria.push_back(c);
    }

    // 2. Golden asymmetric chain: f = 1_{[0,1]}, h = 2 f, plus mode; terms
    // (8, 8, 8) within 2%.
    {
        auto t0 = Clock::now();
        CriterionResult c = make_criterion(2, "golden asymmetric chain (8,8,8)");
        const GridFunction f = sample_spec(spec_box({0.0}, {1.0}, 1.0), 1, 1.25, 400);
        const GridFunction h = sample_spec(spec_box({0.0}, {1.0}, 2.0), 1, 1.25, 400);
        const Params prm{1, 0.25, 2.0};
        ChainReport rep = verify_chain_asymmetric(f, h, prm, quad1, KernelPolicy{}, "golden-asym");
        bool ok = true;
        std::string detail;
        for (const TermValue& t : rep.terms) {
            const bool good = !t.infinite && std::abs(t.value - 8.0) <= 0.02 * 8.0;
            ok = ok && good;
            detail += t.name + "=" + (t.infinite ? "inf" : fmt(t.value)) + " ";
        }
        c.seconds = elapsed(t0);
        ok = ok && !rep.any_violation() && c.seconds < 30.0;
        c.passed = ok;
        c.detail = detail + "(target 8 +/- 2%), " + fmt(c.seconds) + "s";
        out.reports.push_back(rep);
        out.criteria.push_back(c);
    }

    // 3. Identity frac_seminorm(f,h,K) = n * Vt_{-ps}(K, Pi(f,h)) within 2%
    // for a 2-d Gaussian against the disk and the (2, 1/2) ellipse.
    {
        auto t0 = Clock::now();
        CriterionResult c = make_criterion(3, "seminorm = n*Vt_{-ps}(K, Pi) identity (2%)");
        const int m = 128;
        const double L = 2.5;
        const Params prm{2, 0.25, 2.0};
        const QuadPtr quad = default_quadrature(2, 256);
        const GridFunction f = sample_spec(spec_gaussian({0.0, 0.0}, 0.4, 1.0), 2, L, m);
        const PolarProjectionBody body = pi_body(f, f, prm, DiffMode::abs, quad);
        Mat A = identity_mat();
        A[0][0] = 0.5;
        A[1][1] = 2.0;
        const StarBody bodies[2] = {StarBody::ball(2, 1.0), StarBody::ellipsoid(2, A)};
        const char* names[2] = {"disk", "ellipse(2,1/2)"};
        bool ok = true;
        std::string detail;
        ChainReport rep;
        rep.case_id = "identity";
        rep.params = prm;
        rep.L = L;
        rep.m = m;
        for (int k = 0; k < 2; ++k) {
            const double lhs =
                frac_seminorm(f, f, bodies[k], prm, DiffMode::abs, KernelPolicy{}, *quad).value;
            const double rhs = seminorm_via_body(bodies[k], body);
            const double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
            ok = ok && rel <= 0.02;
            detail += std::string(names[k]) + ": pair-sum=" + fmt(lhs) +
                      " via-body=" + fmt(rhs) + " rel=" + fmt(rel) + "; ";
            TermValue tl;
            tl.name = std::string("seminorm-") + names[k];
            tl.value = lhs;
            tl.refinement = "direct(m=128)";
            TermValue tr;
            tr.name = std::string("via-body-") + names[k];
            tr.value = rhs;
            tr.refinement = "direct(m=128)";
            rep.terms.push_back(tl);
            rep.terms.push_back(tr);
        }
        c.seconds = elapsed(t0);
        ok = ok && c.seconds < 300.0;
        c.passed = ok;
        c.detail = detail + fmt(c.seconds) + "s";
        rep.runtime_seconds = c.seconds;
        out.reports.push_back(rep);
        out.criteria.push_back(c);
    }

    // 4. Batteries: Riesz (100), dual mixed volume / dual Brunn-Minkowski
    // (50 pairs, dilate equality to 1e-10), anisotropic (10), chains (10+10).
    {
        auto t0 = Clock::now();
        CriterionResult c = make_criterion(4, "inequality batteries, zero violations");
        int violations = 0;
        ChainReport riesz = battery_riesz(100, 41);
        violations += riesz.any_violation();
        ChainReport dual = battery_dual_mixed(50, 43);
        violations += dual.any_violation();
        bool dilate_ok = true;
        for (std::size_t i = 0; i < dual.margins.size(); ++i) {
            if (dual.margins[i].name.find("dilate") == std::string::npos) continue;
            if (dual.verdicts[i].status != "holds-with-equality") dilate_ok = false;
            // scale-free check against the lhs term of the same comparison
            const double scale = std::max(1.0, std::abs(dual.terms[2 * i].value));
            if (std::abs(dual.margins[i].value) > 1e-10 * scale) dilate_ok = false;
        }
        std::vector<ChainReport> aniso = battery_anisotropic(10, 47);
        std::vector<ChainReport> chains = battery_chains(10, 10, 53);
        int cases = int(riesz.margins.size() + dual.margins.size());
        for (const ChainReport& r : aniso) {
            violations += r.any_violation();
            cases += int(r.margins.size());
        }
        for (const ChainReport& r : chains) {
            violations += r.any_violation();
            cases += int(r.margins.size());
        }
        out.reports.push_back(riesz);
        out.reports.push_back(dual);
        out.reports.insert(out.reports.end(), aniso.begin(), aniso.end());
        out.reports.insert(out.reports.end(), chains.begin(), chains.end());
        c.seconds = elapsed(t0);
        c.passed = violations == 0 && dilate_ok;
        c.detail = std::to_string(cases) + " comparisons, " + std::to_string(violations) +
                   " violations, dilate equality " + (dilate_ok ? "1e-10 ok" : "FAILED") +
                   ", " + fmt(c.seconds) + "s";
        out.criteria.push_back(c);
    }

    // 5. Machine identities at 1e-10: G_abs = G_plus + G_minus nodewise,
    // minus body antipodal to the swapped plus body, Vt_alpha(K,K) = |K|,
    // and Vt_alpha additivity under the alpha-radial sum.
    {
        auto t0 = Clock::now();
        CriterionResult c = make_criterion(5, "exact algebraic identities (1e-10)");
        bool ok = true;
        std::string detail;

        const int n = 2, m = 48;
        const double L = 1.5;
        const Params prm{n, 0.3, 2.0};
        const QuadPtr quad = default_quadrature(n, 64);
        std::mt19937_64 rng(7);
        const GridFunction fa = random_smooth(n, L, m, rng, 2);   // asymmetric smooth
        GridFunction hb = fa;
        {
            const GridFunction bump = random_smooth(n, L, m, rng, 1);
            for (std::size_t k = 0; k < hb.values.size(); ++k)
                hb.values[k] += 0.5 * bump.values[k];
        }
        const std::pair<const GridFunction*, const GridFunction*> pairs[2] = {
            {&fa, &fa}, {&fa, &hb}};
        double worst = 0.0;
        for (const auto& pr : pairs) {
            const PolarProjectionBody bp = pi_body(*pr.first, *pr.second, prm, DiffMode::plus, quad);
            const PolarProjectionBody bm = pi_body(*pr.first, *pr.second, prm, DiffMode::minus, quad);
            const PolarProjectionBody ba = pi_body(*pr.first, *pr.second, prm, DiffMode::abs, quad);
            const PolarProjectionBody bsw = pi_body(*pr.second, *pr.first, prm, DiffMode::plus, quad);
            for (std::size_t i = 0; i < quad->count(); ++i) {
                if (!close_rel(ba.gauge_ps[i], bp.gauge_ps[i] + bm.gauge_ps[i], 1e-10)) ok = false;
                if (!close_rel(bm.gauge_ps[i], bsw.gauge_ps[quad->antipode[i]], 1e-10)) ok = false;
                if (!std::isinf(ba.gauge_ps[i]))
                    worst = std::max(worst, std::abs(ba.gauge_ps[i] - bp.gauge_ps[i] -
                                                     bm.gauge_ps[i]) /
                                                std::max(1.0, ba.gauge_ps[i]));
            }
        }
        detail += "mode identities worst rel=" + fmt(worst) + "; ";

        for (int dim = 2; dim <= 3; ++dim) {
            const QuadPtr q = default_quadrature(dim, 64);
            const StarBody K = random_star_body(dim, q, 11 + dim);
            const StarBody Lb = random_star_body(dim, q, 29 + dim);
            const StarBody Q = random_star_body(dim, q, 31 + dim);
            const double volK = volume(K, *q);
            for (double alpha : {-1.0, 0.5, 1.0}) {
                if (!close_rel(dual_mixed_volume(K, K, alpha, *q), volK, 1e-10)) ok = false;
                const StarBody M = q_radial_sum(K, Lb, alpha, q);
                const double lhs = dual_mixed_volume(Q, M, alpha, *q);
                const double rhs = dual_mixed_volume(Q, K, alpha, *q) +
                                   dual_mixed_volume(Q, Lb, alpha, *q);
                if (!close_rel(lhs, rhs, 1e-10)) ok = false;
            }
        }
        detail += "dual-mixed diagonal and additivity checked for alpha in {-1,1/2,1}, n in {2,3}";
        c.seconds = elapsed(t0);
        c.passed = ok;
        c.detail = detail + ", " + fmt(c.seconds) + "s";
        out.criteria.push_back(c);
    }

    // 6. Covariance and scaling of the projection body.
    {
        auto t0 = Clock::now();
        CriterionResult c = make_criterion(6, "SL(2) covariance and dilation scaling");
        const int n = 2, m = 96;
        const double L = 1.6;
        const Params prm{n, 0.3, 2.0};
        const QuadPtr quad = default_quadrature(n, 128);
        std::mt19937_64 rng(13);
        const GridFunction f = random_smooth(n, L, m, rng, 2);
        ChainReport rep = verify_invariance(f, f, prm, quad, "invariance");
        c.seconds = elapsed(t0);
        c.passed = !rep.any_violation();
        c.detail = verdict_summary(rep) + ", slope=" + fmt(rep.term("scaling_slope")->value) +
                   " target=" + fmt(prm.ps() - n) + ", " + fmt(c.seconds) + "s";
        rep.runtime_seconds = c.seconds;
        out.reports.push_back(rep);
        out.criteria.push_back(c);
    }

    // 7. Rearrangement module: ||f*||_p = ||f||_p within 0.5% at m = 256,
    // idempotence within one cell shell, monotonicity exact on shared grids.
    {
        auto t0 = Clock::now();
        CriterionResult c = make_criterion(7, "rearrangement equimeasurability/idempotence/monotonicity");
        bool ok = true;
        std::string detail;
        const int n = 2, m = 256;
        const double L = 1.5;
        std::mt19937_64 rng(17);
        const GridFunction f = random_smooth(n, L, m, rng, 2);
        const GridFunction fs = rearrange(f);
        for (double p : {1.0, 2.0, 3.0}) {
            const double a = lp_norm(f, p), b = lp_norm(fs, p);
            const double rel = std::abs(a - b) / std::max(a, 1e-300);
            if (rel > 0.005) ok = false;
            if (p == 2.0) detail += "||f||_2 rel drift=" + fmt(rel) + "; ";
        }
        // Idempotence: rearranging the rearrangement reproduces it on the
        // embedded grid, except possibly within a one-cell shell of a level
        // boundary.
        const GridFunction fss = rearrange(fs);
        const GridFunction fse = embed(fs, fss.L);
        const double diag = fss.dx() * std::sqrt(double(n));
        int mismatches = 0;
        double shell_violation = 0.0;
        for (std::size_t flat = 0; flat < fss.values.size(); ++flat) {
            const double a = fss.values[flat], b = fse.values[flat];
            if (a == b) continue;
            ++mismatches;
            const double hi = std::max(a, b);
            const double r_cell = norm2(fss.center_of(flat));
            const double vol_hi = superlevel_measure(fss, hi);
            const double r_level = std::pow(vol_hi / unit_ball_volume(n), 1.0 / n);
            shell_violation = std::max(shell_violation, std::abs(r_cell - r_level) - diag);
        }
        if (shell_violation > 0.0) ok = false;
        detail += "idempotence mismatches=" + std::to_string(mismatches) +
                  " (all within one cell shell: " + (shell_violation <= 0.0 ? "yes" : "NO") + "); ";
        // Monotonicity: f <= g cellwise implies f* <= g* cellwise, exactly.
        GridFunction g = f;
        const GridFunction bump = random_smooth(n, L, m, rng, 1);
        for (std::size_t k = 0; k < g.values.size(); ++k) g.values[k] += bump.values[k];
        const GridFunction gs = rearrange(g);
        bool mono = true;
        for (std::size_t k = 0; k < fs.values.size(); ++k)
            if (fs.values[k] > gs.values[k]) { mono = false; break; }
        if (!mono) ok = false;
        detail += std::string("monotonicity exact: ") + (mono ? "yes" : "NO");
        c.seconds = elapsed(t0);
        c.passed = ok;
        c.detail = detail + ", " + fmt(c.seconds) + "s";
        out.criteria.push_back(c);
    }

    // 8. Soft limit s -> 1 (warning only): ratio within 10% at s = 0.99 and a
    // non-increasing gap over s in {0.9, 0.95, 0.99} for a 1-d Gaussian, K = B^1.
    {
        auto t0 = Clock::now();
        CriterionResult c = make_criterion(8, "limit s->1 against gradient energy (soft)", true);
        const GridFunction f = sample_spec(spec_gaussian({0.0}, 0.3, 1.0), 1, 2.0, 400);
        ChainReport rep = verify_limit_s1(f, StarBody::ball(1, 1.0), 2.0,
                                          {0.9, 0.95, 0.99}, quad1, "limit");
        c.seconds = elapsed(t0);
        c.passed = !rep.any_violation();
        std::string ratios;
        for (const TermValue& t : rep.terms)
            if (t.name.rfind("ratio", 0) == 0) ratios += t.name + "=" + fmt(t.value) + " ";
        c.detail = ratios + verdict_summary(rep) + ", " + fmt(c.seconds) + "s";
        rep.runtime_seconds = c.seconds;
        out.reports.push_back(rep);
        out.criteria.push_back(c);
    }

    // 9. Divergence diagnostics: for f != h in abs mode the fitted
    // eps-exponent is -ps +/- 0.1 and every chain verdict is vacuous-infinite.
    {
        auto t0 = Clock::now();
        CriterionResult c = make_criterion(9, "divergence classification and vacuous verdicts");
        const GridFunction f = sample_spec(spec_box({0.0}, {1.0}, 1.0), 1, 1.25, 400);
        const GridFunction h = sample_spec(spec_box({0.0}, {1.0}, 2.0), 1, 1.25, 400);
        const Params prm{1, 0.25, 2.0};
        MembershipReport mem = membership_check(f, h, prm, StarBody::ball(1, 1.0), *quad1);
        bool ok = mem.divergent && std::abs(mem.exponent - (-prm.ps())) <= 0.1;
        ChainReport rep = verify_chain_symmetric(f, h, prm, quad1, KernelPolicy{}, "divergent-pair");
        bool vacuous = !rep.verdicts.empty();
        for (const Verdict& v : rep.verdicts)
            if (v.status != "vacuous-infinite") vacuous = false;
        ok = ok && vacuous;
        c.seconds = elapsed(t0);
        c.passed = ok;
        c.detail = "exponent=" + fmt(mem.exponent) + " (target " + fmt(-prm.ps()) +
                   " +/- 0.1), verdicts " + (vacuous ? "all vacuous-infinite" : "NOT vacuous") +
                   ", " + fmt(c.seconds) + "s";
        rep.runtime_seconds = c.seconds;
        out.reports.push_back(rep);
        out.criteria.push_back(c);
    }

    // Optional coarse 3-d chain, gated because of its runtime.
    if (include_slow) {
        auto t0 = Clock::now();
        CriterionResult c = make_criterion(10, "coarse n=3 symmetric chain (slow)");
        const GridFunction f = sample_spec(spec_gaussian({0.0, 0.0, 0.0}, 0.25, 1.0), 3, 1.0, 24);
        const Params prm{3, 0.3, 2.0};
        const QuadPtr quad = default_quadrature(3, 64);
        ChainReport rep = verify_chain_symmetric(f, f, prm, quad, KernelPolicy{}, "chain-n3");
        c.seconds = elapsed(t0);
        c.passed = !rep.any_violation();
        c.detail = verdict_summary(rep) + ", " + fmt(c.seconds) + "s";
        rep.runtime_seconds = c.seconds;
        out.reports.push_back(rep);
        out.criteria.push_back(c);
    }

    return out;
}

} // namespace fracgeo
