#include "fracgeo/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fracgeo {

DistributionProfile distribution_profile(const GridFunction& f) {
    std::vector<double> vals;
    vals.reserve(f.values.size());
    for (double v : f.values)
        if (v > 0.0) vals.push_back(v);
    std::sort(vals.begin(), vals.end());
    DistributionProfile prof;
    double cellvol = std::pow(f.dx(), f.n);
    std::size_t total = vals.size();
    for (std::size_t i = 0; i < total; ++i) {
        if (i > 0 && vals[i] == vals[i - 1]) continue;
        prof.thresholds.push_back(vals[i]);
        // values are sorted ascending: cells with value >= vals[i] are the
        // suffix starting at i
        prof.measures.push_back(double(total - i) * cellvol);
    }
    return prof;
}

double superlevel_measure(const GridFunction& f, double t) {
    if (!(t > 0.0)) throw param_error("superlevel_measure: t must be positive");
    std::size_t count = 0;
    for (double v : f.values)
        if (v >= t) ++count;
    return double(count) * std::pow(f.dx(), f.n);
}

GridFunction rearrange(const GridFunction& f) {
    const double dx = f.dx();
    // Pad so a centered ball holding the whole box volume fits: its radius is
    // 2L / omega_n^{1/n}.  The rule uses only (n, L, m), so functions that
    // share a grid keep sharing one after rearrangement.
    double need = 2.0 * f.L / std::pow(unit_ball_volume(f.n), 1.0 / f.n);
    int extra = std::max(0, int(std::ceil((need - f.L) / dx - 1e-12)));
    GridFunction out = make_grid_function(f.n, f.L + extra * dx, f.m + 2 * extra);

    // Rank output cells by distance from the origin, flat index as the final
    // tie-break inside a shell.
    std::vector<std::size_t> order(out.values.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::vector<double> r2(out.values.size());
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        Vec c = out.center_of(i);
        r2[i] = dot(c, c);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (r2[a] != r2[b]) return r2[a] < r2[b];
        return a < b;
    });

    std::vector<double> vals = f.values;
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    for (std::size_t k = 0; k < vals.size() && vals[k] > 0.0; ++k)
        out.values[order[k]] = vals[k];
    return out;
}

double riesz_functional(const GridFunction& f, const GridFunction& k, const GridFunction& g) {
    struct Cell {
        Vec x;
        double v;
    };
    auto support = [](const GridFunction& fn) {
        std::vector<Cell> cells;
        for (std::size_t i = 0; i < fn.values.size(); ++i)
            if (fn.values[i] != 0.0) cells.push_back({fn.center_of(i), fn.values[i]});
        return cells;
    };
    std::vector<Cell> fs = support(f), gs = support(g);
    if (fs.empty() || gs.empty()) return 0.0;

    double meas = std::pow(f.dx(), f.n) * std::pow(g.dx(), g.n);
    double total = parallel_blocks(fs.size(), 64, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> rows;
        rows.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) {
            double row = 0.0;
            for (const Cell& cg : gs)
                row += cg.v * eval(k, sub(fs[i].x, cg.x));
            rows.push_back(fs[i].v * row);
        }
        return pairwise_sum(rows);
    });
    return total * meas;
}

} // namespace fracgeo
