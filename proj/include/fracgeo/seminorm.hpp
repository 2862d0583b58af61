#ifndef FRACGEO_SEMINORM_HPP
#define FRACGEO_SEMINORM_HPP

#include <string>
#include <vector>

#include "fracgeo/grid.hpp"
#include "fracgeo/params.hpp"
#include "fracgeo/star_body.hpp"

namespace fracgeo {

// Integrand variants: |f(x)-h(y)|, (f(x)-h(y))_+, (f(x)-h(y))_-.
enum class DiffMode { abs, plus, minus };

std::string to_string(DiffMode mode);
DiffMode parse_diff_mode(const std::string& text);

// Singular-kernel policy.  `truncate` clamps the gauge from below at epsilon
// (gauge units), which keeps the kernel a superposition of scaled-body
// indicator layers over the sub-range of scales >= epsilon — so rearrangement
// inequalities survive truncation exactly.  `exclude_diagonal` drops only the
// x == y cell pairs.
struct KernelPolicy {
    enum class Mode { truncate, exclude_diagonal };
    Mode mode = Mode::truncate;
    // epsilon <= 0 requests the resolution default Delta / (2 * rho_mean(K)),
    // i.e. a clamp ball of physical radius about half a cell.
    double epsilon = 0.0;
    // Also evaluate a clamp ladder at {2,4,8,16} lattice gauge units and fit
    // the truncation exponent of the divergent part.
    bool diagnose = false;
};

struct SeminormResult {
    double value = 0.0;        // value under the policy (always a finite float)
    // The untruncated integral diverges; exact for cellwise data, where it
    // reduces to the mode difference being nonzero somewhere on the diagonal.
    bool infinite = false;
    DiffMode mode = DiffMode::abs;
    KernelPolicy policy;       // echo with the resolved epsilon filled in

    // Diagnostics; NaN / empty unless policy.diagnose was set.
    double divergence_exponent = 0.0;   // value ~ eps^q fit, reported negative
    double classification_slope = 0.0;  // least-squares d log value / d log eps
    std::vector<double> ladder_epsilons;
    std::vector<double> ladder_values;
};

// Delta^{2n} sum over cell pairs of D(x,y)^p / gauge_K(x-y)^{n+ps}, with the
// pair sum restricted to the padded union support box and the exterior of
// that box integrated analytically in the radial variable (exact power-law
// tails, angular sphere quadrature).  Anchoring the split to the support box
// makes the value independent of the surrounding grid box and bitwise
// invariant under whole-cell translations.  f and h must share a grid.
SeminormResult frac_seminorm(const GridFunction& f, const GridFunction& h,
                             const StarBody& K, const Params& params,
                             DiffMode mode, const KernelPolicy& policy,
                             const SphereQuadrature& quad);

struct MembershipReport {
    bool divergent = false;
    std::string classification;     // "convergent" or "divergent"
    double exponent = 0.0;          // fitted eps-exponent (NaN when convergent)
    double slope = 0.0;
    std::vector<double> epsilons;
    std::vector<double> values;
};

// Classifies membership of (f, h) in the underlying function space (abs
// mode): divergent when the difference survives on the diagonal, with the
// truncation exponent fitted from the diagnostic clamp ladder.
MembershipReport membership_check(const GridFunction& f, const GridFunction& h,
                                  const Params& params, const StarBody& K,
                                  const SphereQuadrature& quad);

} // namespace fracgeo

#endif
