#ifndef FRACGEO_REARRANGE_HPP
#define FRACGEO_REARRANGE_HPP

#include "fracgeo/grid.hpp"

namespace fracgeo {

// Super-level structure of a grid function in the exact cell-counting model.
struct DistributionProfile {
    std::vector<double> thresholds;   // distinct positive values, ascending
    std::vector<double> measures;     // mu(t) = |{f >= t}| in volume units
};

DistributionProfile distribution_profile(const GridFunction& f);

// Delta^n times the number of cells with value >= t (t > 0).
double superlevel_measure(const GridFunction& f, double t);

// Symmetric decreasing rearrangement.  Cells of the output grid are ranked by
// (|center|, flat index) and receive the input values in descending order, so
// the value multiset is preserved exactly: equimeasurability and idempotence
// hold in the discrete model, and monotonicity is exact on shared grids.
// The output grid keeps the spacing and is padded by whole cells (by a rule
// depending only on n, L, m) so the centered ball of full-box volume fits.
GridFunction rearrange(const GridFunction& f);

// Delta^{2n} sum_{x,y} f(x) k(x-y) g(y) with k evaluated by interpolation.
double riesz_functional(const GridFunction& f, const GridFunction& k, const GridFunction& g);

} // namespace fracgeo

#endif
