#ifndef FRACGEO_STAR_BODY_HPP
#define FRACGEO_STAR_BODY_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fracgeo/sphere.hpp"
#include "fracgeo/vec.hpp"

namespace fracgeo {

// Star body about the origin, described by its radial function rho (distance
// to the boundary along a unit direction) and gauge (Minkowski functional);
// the two are reciprocal on rays.  Value type over an immutable
// implementation, cheap to copy.
class StarBody {
public:
    static StarBody ball(int n, double radius);
    // gauge(x) = |A x|_2; an ellipsoid with semiaxes (a1..an) is A = diag(1/ai).
    static StarBody ellipsoid(int n, const Mat& A);
    static StarBody lq_ball(int n, double q, double radius);
    static StarBody linear_image(const Mat& map, const StarBody& inner);
    static StarBody sampled(std::shared_ptr<const SphereQuadrature> quad,
                            std::vector<double> radial_values);

    int dim() const;
    // rho_K at a unit direction.
    double radial(const Vec& direction) const;
    // inf{ lam > 0 : x in lam*K }; gauge(0) = 0.
    double gauge(const Vec& x) const;
    StarBody scaled(double c) const;
    StarBody negated() const;
    std::string describe() const;

    struct Impl;

private:
    explicit StarBody(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

double volume(const StarBody& K, const SphereQuadrature& quad);
StarBody schwarz_symmetral(const StarBody& K, const SphereQuadrature& quad);

// Radial q-sum: rho^q = rho_K^q + rho_L^q at every node (q != 0).
StarBody q_radial_sum(const StarBody& K, const StarBody& L, double q,
                      std::shared_ptr<const SphereQuadrature> quad);

// (1/n) sum w_i rho_K^{n-alpha} rho_L^{alpha}; alpha outside {0, n}.
double dual_mixed_volume(const StarBody& K, const StarBody& L, double alpha,
                         const SphereQuadrature& quad);

// ((n+p)/2 int_K |v.x|^p dx)^{1/p} via the radial power formula.
double moment_body_norm(const StarBody& K, const Vec& v, double p,
                        const SphereQuadrature& quad);

// Largest |rho_i - rho_j| / (|xi_i - xi_j| * min rho) over near-neighbour node
// pairs: a discrete stand-in for the Lipschitz regularity that finitely many
// samples cannot certify.
double radial_lipschitz_ratio(const StarBody& K, const SphereQuadrature& quad);

// Smooth positive random radial (exponential of a clamped low-order angular
// series), sampled on the quadrature nodes.  Deterministic in the seed.
StarBody random_star_body(int n, std::shared_ptr<const SphereQuadrature> quad,
                          std::uint64_t seed);

// FRACGEO-BODY v1: header lines n=, nodes=, optional extra headers, then one
// line per node (components then rho).
void write_body(std::ostream& os, const StarBody& K, const SphereQuadrature& quad,
                const std::map<std::string, std::string>& extra_headers = {});
StarBody read_body(std::istream& is, std::map<std::string, std::string>* headers = nullptr);
void write_body_file(const std::string& path, const StarBody& K, const SphereQuadrature& quad,
                     const std::map<std::string, std::string>& extra_headers = {});
StarBody read_body_file(const std::string& path, std::map<std::string, std::string>* headers = nullptr);

// Parses CLI body descriptions: "ball:r", "ellipsoid:a1,a2[,a3]" (semiaxes),
// "lqball:q,r", "file:path".
StarBody parse_body_spec(const std::string& text, int n);

} // namespace fracgeo

#endif
