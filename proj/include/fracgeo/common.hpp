#ifndef FRACGEO_COMMON_HPP
#define FRACGEO_COMMON_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracgeo {

struct param_error : std::runtime_error {
    explicit param_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse failures carry a position so CLI errors can point at the offending byte.
struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct size_error : std::runtime_error {
    explicit size_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr double pi_v = 3.14159265358979323846;

// Volume of the n-dimensional unit ball, n <= 3.
inline double unit_ball_volume(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return pi_v;
        case 3: return 4.0 * pi_v / 3.0;
        default: throw param_error("unit_ball_volume: dimension must be 1, 2 or 3");
    }
}

inline double infinity() { return std::numeric_limits<double>::infinity(); }

// Pairwise (tree) summation: deterministic and far less rounding drift than a
// running sum.  All reductions in the library funnel through this.
inline double pairwise_sum(const double* v, std::size_t count) {
    if (count == 0) return 0.0;
    if (count <= 8) {
        double s = v[0];
        for (std::size_t i = 1; i < count; ++i) s += v[i];
        return s;
    }
    std::size_t half = count / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

// Thread count used by parallel_blocks.  The block decomposition is fixed by
// the problem size, never by the thread count, so results are identical for
// any setting (deterministic reduction contract).
void set_threads(int k);
int threads();

// Splits [0, count) into fixed-size blocks, evaluates fn(begin, end) per block
// (sequentially within a block), and pairwise-sums the per-block partials in
// block order.  fn must be pure.
double parallel_blocks(std::size_t count, std::size_t block_size,
                       const std::function<double(std::size_t, std::size_t)>& fn);

// Same block decomposition without a reduction; fn(begin, end) must write only
// to slots it owns (one writer per index).
void parallel_for(std::size_t count, std::size_t block_size,
                  const std::function<void(std::size_t, std::size_t)>& fn);

// Richardson extrapolation for a quantity with error ~ C * Delta^q, evaluated
// at grid spacings Delta and Delta/2: returns the extrapolated value and the
// magnitude of the applied correction (used as the reported uncertainty).
struct Extrapolated {
    double value;
    double uncertainty;
};

inline Extrapolated richardson(double coarse, double fine, double q) {
    double corr = (fine - coarse) / (std::pow(2.0, q) - 1.0);
    return {fine + corr, std::fabs(corr)};
}

} // namespace fracgeo

#endif
