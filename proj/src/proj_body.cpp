#include "fracgeo/proj_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracgeo {

namespace {

// Exit distance from z (inside the grid box) along unit direction th.
double box_exit(const Vec& z, const Vec& th, double L, int n) {
    double t = infinity();
    for (int a = 0; a < n; ++a) {
        if (th[a] > 0.0)
            t = std::min(t, (L - z[a]) / th[a]);
        else if (th[a] < 0.0)
            t = std::min(t, (-L - z[a]) / th[a]);
    }
    return t;
}

double powp(double d, double p, bool p2) {
    if (p2) return d * d;
    if (d == 0.0) return 0.0;
    return std::pow(d, p);
}

// Shared machinery for one (f, h, xi) profile.  Holds the support geometry,
// escape prefix sums, and evaluates g at arbitrary t.
struct ProfileCore {
    const GridFunction* f;
    const GridFunction* h;
    Vec xi{};
    DiffMode mode;
    double p = 2.0;
    bool p2 = true;
    int n = 1;
    double dx = 0.0;
    double cellvol = 0.0;
    double t_star = 0.0;
    double tail = 0.0;          // exact g beyond t_star
    bool empty = true;          // no overlap regime at all (f or h vanish)
    SupportBox bf, bh;
    // Cells of supp f sorted by the t at which their image y = z - t*xi
    // leaves the grid box, with prefix sums of D(f, 0)^p * cellvol.
    std::vector<double> esc_t;
    std::vector<double> esc_prefix;

    ProfileCore(const GridFunction& ff, const GridFunction& hh, const Vec& dir,
                DiffMode md, double pp) {
        f = &ff;
        h = &hh;
        xi = dir;
        mode = md;
        p = pp;
        p2 = (pp == 2.0);
        n = ff.n;
        dx = ff.dx();
        cellvol = std::pow(dx, n);

        double fp = lp_power_sum(ff, p), hp = lp_power_sum(hh, p);
        if (mode == DiffMode::abs) tail = fp + hp;
        else if (mode == DiffMode::plus) tail = fp;
        else tail = hp;

        bf = support_box(ff, 0);
        bh = support_box(hh, 0);
        empty = bf.empty || bh.empty;

        // Disjointness threshold along xi: beyond it the shifted copy of f
        // clears the support of h with a margin covering cell width and the
        // interpolation reach, so g equals the tail constant exactly.
        if (!empty) {
            double pf_max = -infinity(), ph_min = infinity();
            for (std::size_t i = 0; i < ff.values.size(); ++i)
                if (ff.values[i] != 0.0)
                    pf_max = std::max(pf_max, dot(ff.center_of(i), xi));
            for (std::size_t i = 0; i < hh.values.size(); ++i)
                if (hh.values[i] != 0.0)
                    ph_min = std::min(ph_min, dot(hh.center_of(i), xi));
            t_star = pf_max - ph_min + 4.0 * dx;
        }
        if (!(t_star > 0.0)) t_star = 0.0;

        // Escape thresholds: the f-side integrand at y = z - t*xi keeps
        // contributing D(f(z), 0)^p after y leaves the grid box (h = 0 there).
        double dout;
        if (mode == DiffMode::abs || mode == DiffMode::plus) dout = 1.0;
        else dout = 0.0;   // (0 - f)_- ... minus mode never sees the f side
        if (dout > 0.0) {
            Vec back = negate(xi);
            std::vector<std::pair<double, double>> entries;
            for (std::size_t i = 0; i < ff.values.size(); ++i) {
                double v = ff.values[i];
                if (v == 0.0) continue;
                entries.emplace_back(box_exit(ff.center_of(i), back, ff.L, n),
                                     powp(v, p, p2) * cellvol);
            }
            std::sort(entries.begin(), entries.end());
            esc_t.reserve(entries.size());
            esc_prefix.reserve(entries.size());
            double run = 0.0;
            for (auto& e : entries) {
                run += e.second;
                esc_t.push_back(e.first);
                esc_prefix.push_back(run);
            }
        }
    }

    double escape_mass(double t) const {
        if (esc_t.empty()) return 0.0;
        std::size_t k = std::size_t(std::lower_bound(esc_t.begin(), esc_t.end(), t)
                                    - esc_t.begin());
        return k == 0 ? 0.0 : esc_prefix[k - 1];
    }

    double g_at(double t) const {
        if (t >= t_star) return tail;
        // Sweep the cells where either side can be nonzero: the bounding box
        // of supp h united with supp f shifted by -t*xi, padded one cell for
        // the interpolation reach.
        const GridFunction& ff = *f;
        const GridFunction& hh = *h;
        int lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
        for (int a = 0; a < n; ++a) {
            double sh_f = -t * xi[a];
            int flo = bf.empty ? 0 : int(std::floor(bf.lo[a] + sh_f / dx)) - 1;
            int fhi = bf.empty ? -1 : int(std::ceil(bf.hi[a] + sh_f / dx)) + 1;
            int l = bh.empty ? flo : std::min(bh.lo[a] - 1, flo);
            int hgh = bh.empty ? fhi : std::max(bh.hi[a] + 1, fhi);
            lo[a] = std::max(0, l);
            hi[a] = std::min(ff.m - 1, hgh);
            if (lo[a] > hi[a]) return escape_mass(t) + 0.0;
        }
        std::vector<double> rows;
        rows.reserve(std::size_t(hi[0] - lo[0] + 1));
        for (int i = lo[0]; i <= hi[0]; ++i) {
            double row = 0.0;
            for (int j = (n >= 2 ? lo[1] : 0); j <= (n >= 2 ? hi[1] : 0); ++j)
                for (int k = (n >= 3 ? lo[2] : 0); k <= (n >= 3 ? hi[2] : 0); ++k) {
                    Vec y = vec(ff.center(i), n >= 2 ? ff.center(j) : 0.0,
                                n >= 3 ? ff.center(k) : 0.0);
                    double fv = eval(ff, add(y, scale(t, xi)));
                    double hv = hh.at(i, j, k);
                    double d;
                    if (mode == DiffMode::abs) d = std::fabs(fv - hv);
                    else if (mode == DiffMode::plus) d = std::max(fv - hv, 0.0);
                    else d = std::max(hv - fv, 0.0);
                    if (d != 0.0) row += powp(d, p, p2);
                }
            rows.push_back(row);
        }
        return pairwise_sum(rows) * cellvol + escape_mass(t);
    }
};

std::vector<double> log_lattice(double t_min, double t_max, int per_decade) {
    int count = std::max(2, int(std::ceil(std::log10(t_max / t_min) * per_decade)) + 1);
    std::vector<double> ts(static_cast<std::size_t>(count));
    double u0 = std::log(t_min), u1 = std::log(t_max);
    for (int i = 0; i < count; ++i)
        ts[std::size_t(i)] = std::exp(u0 + (u1 - u0) * double(i) / double(count - 1));
    return ts;
}

// The plus-mode primitive: full gauge^{ps} assembly for one direction.
// Minus and abs are derived from it in the public entry points.
double plus_gauge(const GridFunction& f, const GridFunction& h, const Vec& xi,
                  const Params& params, const ProjOptions& opts) {
    const double ps = params.ps();
    ProfileCore core(f, h, xi, DiffMode::plus, params.p);
    if (core.tail == 0.0) return 0.0;   // f vanishes: zero gauge

    double t_min = opts.t_min_cells * f.dx();
    double t_top = std::max(core.t_star, 2.0 * t_min);
    std::vector<double> ts = log_lattice(t_min, t_top, opts.t_per_decade);
    std::vector<double> gs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) gs[i] = core.g_at(ts[i]);

    // Trapezoid of t^{-ps} g(t) in u = log t.
    std::vector<double> contrib(ts.size() - 1);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        double fi = std::pow(ts[i], -ps) * gs[i];
        double fj = std::pow(ts[i + 1], -ps) * gs[i + 1];
        contrib[i] = 0.5 * (fi + fj) * (std::log(ts[i + 1]) - std::log(ts[i]));
    }
    double body = pairwise_sum(contrib);
    double tail = core.tail * std::pow(ts.back(), -ps) / ps;

    // Head: local model g(t) = C t^a below t_min.  The model integrates to
    // g(t_min) t_min^{-ps} / (a - ps); a <= ps means the integral diverges.
    double head = 0.0;
    if (gs[0] > 0.0) {
        double a;
        if (std::isfinite(opts.head_exponent_override)) {
            a = opts.head_exponent_override;
            if (!(a > ps))
                throw param_error("pi_gauge: head exponent override must exceed p*s");
        } else {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < ts.size() && ts[i] <= 4.0 * t_min; ++i) {
                if (gs[i] <= 0.0) continue;
                double lx = std::log(ts[i]), ly = std::log(gs[i]);
                sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
                ++cnt;
            }
            a = cnt >= 2
                ? (double(cnt) * sxy - sx * sy) / (double(cnt) * sxx - sx * sx)
                : params.p;
            if (a <= ps + 0.05) return infinity();
        }
        head = gs[0] * std::pow(ts[0], -ps) / (a - ps);
    }
    return body + tail + head;
}

} // namespace

ShiftProfile shift_profile(const GridFunction& f, const GridFunction& h,
                           const Vec& xi, DiffMode mode,
                           const std::vector<double>& t_nodes, double p) {
    if (f.n != h.n || f.L != h.L || f.m != h.m)
        throw size_error("shift_profile: f and h must share a grid");
    if (!(p >= 1.0)) throw param_error("shift_profile: p must satisfy p >= 1");
    for (std::size_t i = 0; i < t_nodes.size(); ++i) {
        if (!(t_nodes[i] > 0.0))
            throw param_error("shift_profile: t nodes must be positive");
        if (i > 0 && !(t_nodes[i] > t_nodes[i - 1]))
            throw param_error("shift_profile: t nodes must be increasing");
    }
    ProfileCore core(f, h, xi, mode, p);
    ShiftProfile prof;
    prof.direction = xi;
    prof.mode = mode;
    prof.t_nodes = t_nodes;
    prof.tail_constant = core.tail;
    prof.t_star = core.t_star;
    prof.g_values.resize(t_nodes.size());
    for (std::size_t i = 0; i < t_nodes.size(); ++i)
        prof.g_values[i] = core.g_at(t_nodes[i]);
    return prof;
}

double pi_gauge(const GridFunction& f, const GridFunction& h, const Vec& xi,
                const Params& params, DiffMode mode, const ProjOptions& opts) {
    // p > 1 suffices for the body itself; the window p < n/s is a chain
    // requirement and is enforced by the chain verifiers, not here.
    validate_params(params.n, params.s, params.p, false);
    if (!(params.p > 1.0)) throw param_error("pi_gauge: p must satisfy p > 1");
    if (f.n != params.n || h.n != params.n)
        throw param_error("pi_gauge: grid dimension does not match params.n");
    if (f.L != h.L || f.m != h.m)
        throw size_error("pi_gauge: f and h must share a grid");
    switch (mode) {
        case DiffMode::plus: return plus_gauge(f, h, xi, params, opts);
        case DiffMode::minus: return plus_gauge(h, f, negate(xi), params, opts);
        default:
            return plus_gauge(f, h, xi, params, opts)
                 + plus_gauge(h, f, negate(xi), params, opts);
    }
}

PolarProjectionBody pi_body(const GridFunction& f, const GridFunction& h,
                            const Params& params, DiffMode mode,
                            std::shared_ptr<const SphereQuadrature> quad,
                            const ProjOptions& opts) {
    validate_params(params.n, params.s, params.p, false);
    if (!(params.p > 1.0)) throw param_error("pi_body: p must satisfy p > 1");
    if (!quad || quad->n != params.n)
        throw param_error("pi_body: quadrature dimension mismatch");
    if (f.n != params.n || h.n != params.n)
        throw param_error("pi_body: grid dimension does not match params.n");
    if (f.L != h.L || f.m != h.m)
        throw size_error("pi_body: f and h must share a grid");

    const std::size_t nq = quad->count();
    // All modes are assembled from plus-mode gauges so that the mode
    // identities (abs = plus + minus per node, minus(f,h) antipodal to
    // plus(h,f)) hold exactly in floating point.
    std::vector<double> plus_fh, plus_hf;
    auto fill = [&](const GridFunction& a, const GridFunction& b, std::vector<double>& out) {
        out.resize(nq);
        parallel_for(nq, 1, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                out[i] = plus_gauge(a, b, quad->nodes[i], params, opts);
        });
    };
    if (mode == DiffMode::plus || mode == DiffMode::abs) fill(f, h, plus_fh);
    if (mode == DiffMode::minus || mode == DiffMode::abs) fill(h, f, plus_hf);

    PolarProjectionBody body;
    body.quad = quad;
    body.mode = mode;
    body.params = params;
    body.gauge_ps.resize(nq);
    for (std::size_t i = 0; i < nq; ++i) {
        std::size_t ai = quad->antipode[i];
        if (mode == DiffMode::plus) body.gauge_ps[i] = plus_fh[i];
        else if (mode == DiffMode::minus) body.gauge_ps[i] = plus_hf[ai];
        else body.gauge_ps[i] = plus_fh[i] + plus_hf[ai];
    }
    return body;
}

bool PolarProjectionBody::degenerate() const {
    for (double g : gauge_ps)
        if (std::isinf(g)) return true;
    return false;
}

bool PolarProjectionBody::unbounded() const {
    for (double g : gauge_ps)
        if (g == 0.0) return true;
    return false;
}

double PolarProjectionBody::radial(std::size_t node) const {
    double g = gauge_ps[node];
    if (std::isinf(g)) return 0.0;
    if (g == 0.0) return infinity();
    return std::pow(g, -1.0 / params.ps());
}

double body_volume(const PolarProjectionBody& body) {
    if (body.degenerate()) return 0.0;
    if (body.unbounded()) return infinity();
    const std::size_t nq = body.quad->count();
    std::vector<double> terms(nq);
    for (std::size_t i = 0; i < nq; ++i)
        terms[i] = body.quad->weights[i] * std::pow(body.radial(i), double(body.params.n));
    return pairwise_sum(terms) / double(body.params.n);
}

double affine_energy(const PolarProjectionBody& body) {
    if (body.degenerate()) return infinity();
    double vol = body_volume(body);
    if (std::isinf(vol)) return 0.0;
    const int n = body.params.n;
    const double ps = body.params.ps();
    return double(n) * std::pow(unit_ball_volume(n), (double(n) + ps) / double(n))
           * std::pow(vol, -ps / double(n));
}

double seminorm_via_body(const StarBody& K, const PolarProjectionBody& body) {
    const SphereQuadrature& quad = *body.quad;
    if (K.dim() != body.params.n)
        throw param_error("seminorm_via_body: body dimension mismatch");
    const double kexp = body.params.kernel_exponent();
    std::vector<double> terms(quad.count());
    for (std::size_t i = 0; i < quad.count(); ++i) {
        if (std::isinf(body.gauge_ps[i])) return infinity();
        terms[i] = quad.weights[i] * std::pow(K.radial(quad.nodes[i]), kexp)
                   * body.gauge_ps[i];
    }
    return pairwise_sum(terms);
}

StarBody to_star_body(const PolarProjectionBody& body) {
    if (body.degenerate() || body.unbounded())
        throw param_error("to_star_body: body is degenerate or unbounded");
    std::vector<double> rho(body.quad->count());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = body.radial(i);
    return StarBody::sampled(body.quad, std::move(rho));
}

namespace {

// Smallest cell radius enclosing at least theta^p of the p-mass.
double mass_radius(const GridFunction& f, double p, double theta) {
    std::vector<std::pair<double, double>> cells;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        double v = f.values[i];
        if (v == 0.0) continue;
        cells.emplace_back(norm2(f.center_of(i)), std::pow(v, p));
    }
    std::sort(cells.begin(), cells.end());
    double total = 0.0;
    for (auto& c : cells) total += c.second;
    if (total <= 0.0) return 0.0;
    double need = std::pow(theta, p) * total, run = 0.0;
    for (auto& c : cells) {
        run += c.second;
        if (run >= need) return std::max(c.first, f.dx());
    }
    return cells.back().first;
}

} // namespace

double radial_upper_bound(const GridFunction& f, const GridFunction& h,
                          const Params& params, DiffMode mode) {
    const double p = params.p, ps = params.ps();
    const double theta = 0.9;
    const double eta = std::pow(1.0 - std::pow(theta, p), 1.0 / p);
    double fp = lp_norm(f, p), hp = lp_norm(h, p);
    double beta_plus = theta * fp - eta * hp;
    double beta_minus = theta * hp - eta * fp;
    double beta;
    if (mode == DiffMode::plus) beta = beta_plus;
    else if (mode == DiffMode::minus) beta = beta_minus;
    else beta = std::max(beta_plus, beta_minus);
    if (!(beta > 0.0)) return infinity();
    double r = std::max(mass_radius(f, p, theta), mass_radius(h, p, theta));
    return 2.0 * r * std::pow(ps / std::pow(beta, p), 1.0 / ps);
}

} // namespace fracgeo
