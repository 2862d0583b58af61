#ifndef FRACGEO_SPEC_LANG_HPP
#define FRACGEO_SPEC_LANG_HPP

#include <memory>
#include <string>
#include <vector>

#include "fracgeo/grid.hpp"

namespace fracgeo {

// Expression tree for test-function construction.  Concrete syntax is prefix
// notation with parenthesized arguments and bracketed points, e.g.
//   sum(box_indicator([0],[1],1), gaussian([0.5],0.2,2))
// One expression per file; whitespace (including newlines) is insignificant.
struct SpecNode;
using SpecPtr = std::shared_ptr<const SpecNode>;

struct SpecNode {
    enum class Kind { gaussian, box_indicator, ball_indicator, sum, max, affine, scale_arg };
    Kind kind;
    std::vector<double> point_a;   // center / corner_lo / matrix entries (row-major)
    std::vector<double> point_b;   // corner_hi / affine shift
    double scalar_a = 0.0;         // sigma / radius / scale factor
    double scalar_b = 0.0;         // amplitude
    std::vector<SpecPtr> children;
};

SpecPtr spec_gaussian(const std::vector<double>& center, double sigma, double amplitude);
SpecPtr spec_box(const std::vector<double>& lo, const std::vector<double>& hi, double amplitude);
SpecPtr spec_ball(const std::vector<double>& center, double radius, double amplitude);
SpecPtr spec_sum(const std::vector<SpecPtr>& children);
SpecPtr spec_max(const std::vector<SpecPtr>& children);
SpecPtr spec_affine(const std::vector<double>& matrix, const std::vector<double>& shift, SpecPtr child);
SpecPtr spec_scale_arg(double r, SpecPtr child);

// Parses one expression; throws parse_error with byte position on failure.
SpecPtr parse_spec(const std::string& text);
SpecPtr parse_spec_file(const std::string& path);
std::string to_string(const SpecPtr& spec);

// Checks point dimensions, positivity of sigma/radius/scale, non-negative
// amplitudes and matrix invertibility for dimension n.
void validate_spec(const SpecPtr& spec, int n);

// Pointwise evaluation.  Gaussians are truncated at 6 sigma so every spec has
// compact support.
double eval_spec(const SpecPtr& spec, int n, const Vec& x);

// Exact L1 mass where the tree admits one (NaN for max-combinators).
double analytic_mass(const SpecPtr& spec, int n);

// Samples at cell centers.  If the analytic mass is known and the grid mass
// falls short by more than 1e-6 relative, a truncation warning is recorded in
// the result's notes.
GridFunction sample_spec(const SpecPtr& spec, int n, double L, int m);

} // namespace fracgeo

#endif
