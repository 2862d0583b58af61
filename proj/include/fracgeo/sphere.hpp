#ifndef FRACGEO_SPHERE_HPP
#define FRACGEO_SPHERE_HPP

#include <cstddef>
#include <vector>

#include "fracgeo/vec.hpp"

namespace fracgeo {

// Quadrature on the unit sphere S^{n-1}, antipodally closed by construction:
// node i has an exact negation at index antipode[i] with equal weight.
//   n=1: the two signs with weight 1 each (total 2)
//   n=2: equally spaced angles, weight 2*pi/M (total 2*pi)
//   n=3: Gauss-Legendre in cos(theta) x uniform azimuth (total 4*pi)
struct SphereQuadrature {
    int n = 1;
    std::vector<Vec> nodes;
    std::vector<double> weights;
    std::vector<std::size_t> antipode;

    std::size_t count() const { return nodes.size(); }
};

// requested is a target for the total node count; the actual count is the
// nearest admissible value (n=1: always 2; n=2: even M >= 4; n=3: 2*N^2 with
// N even polar levels).
SphereQuadrature make_sphere_quadrature(int n, std::size_t requested);

// Gauss-Legendre nodes and weights on (-1, 1), Newton-refined to full
// precision.  Exposed for tests.
void gauss_legendre(int N, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace fracgeo

#endif
