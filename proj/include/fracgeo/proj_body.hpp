#ifndef FRACGEO_PROJ_BODY_HPP
#define FRACGEO_PROJ_BODY_HPP

#include <limits>
#include <memory>
#include <vector>

#include "fracgeo/grid.hpp"
#include "fracgeo/params.hpp"
#include "fracgeo/seminorm.hpp"
#include "fracgeo/sphere.hpp"
#include "fracgeo/star_body.hpp"

namespace fracgeo {

// Knobs of the t-quadrature that assembles gauge^{ps}.
struct ProjOptions {
    double t_min_cells = 2.0;   // lower lattice end, in cells
    int t_per_decade = 64;      // log-spaced node density
    // When finite, pins the small-t model exponent instead of fitting it and
    // suppresses the divergence classification (must exceed ps).  Used where
    // the exponent is known analytically, e.g. smooth f = h has g(t) ~ t^p.
    double head_exponent_override = std::numeric_limits<double>::quiet_NaN();
};

// One direction's shift profile g(t) = int D(f(x + t xi), h(x))^p dx at the
// requested t nodes, together with the exact constant g attains once the
// shifted supports are disjoint.
struct ShiftProfile {
    Vec direction{};
    DiffMode mode = DiffMode::abs;
    std::vector<double> t_nodes;
    std::vector<double> g_values;
    double tail_constant = 0.0;   // exact g for t >= t_star
    double t_star = 0.0;          // disjointness threshold along the direction
};

// f and h must share a grid; t_nodes positive and increasing.  Nodes at or
// beyond t_star evaluate to the exact tail constant; below it, f is shifted
// by multilinear interpolation against h's cells, with the mass shifted past
// the grid box accounted for by exact per-cell escape terms.
ShiftProfile shift_profile(const GridFunction& f, const GridFunction& h,
                           const Vec& xi, DiffMode mode,
                           const std::vector<double>& t_nodes, double p = 2.0);

// gauge^{ps} of the polar projection body in one direction:
//   int_0^inf t^{-ps-1} g(t) dt
// as trapezoid in log t over [t_min, t_star] + analytic tail
// (tail constant * t_star^{-ps} / ps) + fitted power-law head below t_min.
// Returns +inf when the head fit classifies the t->0 end divergent
// (fitted exponent <= ps).  Minus mode is evaluated as the plus-mode
// machinery on (h, f, -xi), and abs as the sum of the two plus gauges, so
// the mode identities hold exactly in floating point.
double pi_gauge(const GridFunction& f, const GridFunction& h, const Vec& xi,
                const Params& params, DiffMode mode,
                const ProjOptions& opts = {});

struct PolarProjectionBody {
    std::shared_ptr<const SphereQuadrature> quad;
    std::vector<double> gauge_ps;   // G(xi_i); +inf marks a divergent direction
    DiffMode mode = DiffMode::abs;
    Params params;

    bool degenerate() const;              // some direction divergent: body is {0}
    bool unbounded() const;               // some gauge is 0: infinite radial
    double radial(std::size_t node) const; // G^{-1/ps}
};

PolarProjectionBody pi_body(const GridFunction& f, const GridFunction& h,
                            const Params& params, DiffMode mode,
                            std::shared_ptr<const SphereQuadrature> quad,
                            const ProjOptions& opts = {});

// (1/n) sum w_i rho_i^n; 0 when degenerate, +inf when unbounded.
double body_volume(const PolarProjectionBody& body);

// n * omega_n^{(n+ps)/n} * |body|^{-ps/n}; +inf when degenerate, 0 when
// unbounded.
double affine_energy(const PolarProjectionBody& body);

// sum_i w_i rho_K(xi_i)^{n+ps} G_i = n * Vtilde_{-ps}(K, body): the seminorm
// evaluated through the body on shared quadrature nodes.
double seminorm_via_body(const StarBody& K, const PolarProjectionBody& body);

// Radial samples as a StarBody (throws if degenerate or unbounded).
StarBody to_star_body(const PolarProjectionBody& body);

// Uniform upper bound for the body's radial function from the concentration
// argument: with r the common 0.9-mass radius of f and h and beta the
// certified lower bound on the shifted L_p difference for t >= 2r,
//   rho <= 2r * (ps / beta^p)^{1/ps}.
// Returns +inf when the mass split does not certify beta > 0.
double radial_upper_bound(const GridFunction& f, const GridFunction& h,
                          const Params& params, DiffMode mode);

} // namespace fracgeo

#endif
