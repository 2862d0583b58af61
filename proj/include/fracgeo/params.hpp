#ifndef FRACGEO_PARAMS_HPP
#define FRACGEO_PARAMS_HPP

#include <string>

#include "fracgeo/common.hpp"

namespace fracgeo {

// Core parameter triple (n, s, p).  The seminorm alone needs p >= 1; the
// projection-body and chain operations need the strict window 1 < p < n/s,
// which keeps the exponent n + p*s inside (n, 2n).
struct Params {
    int n = 1;
    double s = 0.5;
    double p = 2.0;

    double ps() const { return p * s; }
    double kernel_exponent() const { return n + p * s; }
};

inline Params validate_params(int n, double s, double p, bool need_projection_range) {
    if (n < 1 || n > 3)
        throw param_error("validate_params: n must be 1, 2 or 3, got " + std::to_string(n));
    if (!(s > 0.0 && s < 1.0))
        throw param_error("validate_params: s must satisfy 0 < s < 1, got " + std::to_string(s));
    if (need_projection_range) {
        if (!(p > 1.0))
            throw param_error("validate_params: p must satisfy p > 1, got " + std::to_string(p));
        if (!(p < double(n) / s))
            throw param_error("validate_params: p must satisfy p < n/s = "
                              + std::to_string(double(n) / s) + ", got " + std::to_string(p));
    } else {
        if (!(p >= 1.0))
            throw param_error("validate_params: p must satisfy p >= 1, got " + std::to_string(p));
    }
    return Params{n, s, p};
}

} // namespace fracgeo

#endif
