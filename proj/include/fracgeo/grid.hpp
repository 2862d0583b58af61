#ifndef FRACGEO_GRID_HPP
#define FRACGEO_GRID_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracgeo/common.hpp"
#include "fracgeo/vec.hpp"

namespace fracgeo {

// Non-negative function sampled at the cell centers of a uniform grid on
// [-L, L]^n, row-major with the last axis fastest.  Identically zero outside
// the box.
struct GridFunction {
    int n = 1;
    double L = 1.0;
    int m = 1;
    std::vector<double> values;
    std::vector<std::string> notes;   // sampling warnings (e.g. truncated mass)

    double dx() const { return 2.0 * L / m; }
    std::size_t size() const { return values.size(); }

    // Coordinate of the cell center along one axis.
    double center(int i) const { return -L + (i + 0.5) * dx(); }

    // Cell index of a flat offset along the given axis (last axis fastest).
    int coord(std::size_t flat, int axis) const {
        std::size_t stride = 1;
        for (int a = n - 1; a > axis; --a) stride *= std::size_t(m);
        return int((flat / stride) % std::size_t(m));
    }

    Vec center_of(std::size_t flat) const {
        Vec x{};
        for (int a = 0; a < n; ++a) x[a] = center(coord(flat, a));
        return x;
    }

    double& at(int i, int j = 0, int k = 0) {
        std::size_t f = std::size_t(i);
        if (n >= 2) f = f * std::size_t(m) + std::size_t(j);
        if (n >= 3) f = f * std::size_t(m) + std::size_t(k);
        return values[f];
    }
    double at(int i, int j = 0, int k = 0) const {
        return const_cast<GridFunction*>(this)->at(i, j, k);
    }
};

GridFunction make_grid_function(int n, double L, int m);

// Multilinear interpolation of cell-center values, with zero ghost values
// beyond the outermost centers; exactly 0 on and outside the box boundary.
double eval(const GridFunction& f, const Vec& x);

// (sum values^p dx^n)^(1/p), pairwise-summed.
double lp_norm(const GridFunction& f, double p);

// sum values^p dx^n (the p-th power of lp_norm, kept separate because the
// seminorm and projection-body tails consume it directly).
double lp_power_sum(const GridFunction& f, double p);

double l1_mass(const GridFunction& f);

// Block-average onto an m/2 grid (m must be even).  Used to produce the
// coarse member of every refinement pair.
GridFunction coarsen(const GridFunction& f);

// Re-centers f on a wider box of half-width L_target, which must exceed f.L
// by a whole number of cells; values are copied onto the matching lattice
// positions.  Used to put two functions whose boxes grew differently (e.g.
// under affine_image) back on a shared grid.
GridFunction embed(const GridFunction& f, double L_target);

// Tight lattice-aligned index bounds of the nonzero cells, padded by `pad`
// cells and clamped to the grid.  lo[a] > hi[a] means the function is zero.
struct SupportBox {
    std::array<int, 3> lo{};
    std::array<int, 3> hi{};
    bool empty = true;
};
SupportBox support_box(const GridFunction& f, int pad);

// Affine map x -> matrix*x + shift acting on R^n.
struct AffineMap {
    int n = 1;
    Mat matrix = identity_mat();
    Vec shift{};

    double determinant() const { return det(matrix, n); }
    bool is_volume_preserving() const { return std::fabs(std::fabs(determinant()) - 1.0) <= 1e-12; }
    Vec apply(const Vec& x) const { return add(mat_apply(matrix, x), shift); }
    Vec apply_inverse(const Vec& x) const { return mat_apply(inverse(matrix, n), sub(x, shift)); }
};

AffineMap make_affine(int n, const Mat& matrix, const Vec& shift);

// Image function (f composed with the inverse map), sampled on a grid with
// the same spacing whose half-width is expanded by whole cells to cover the
// image support.  Whole-cell lattice translations take an exact index-copy
// path.  Throws size_error if the needed half-width exceeds max_half_width.
GridFunction affine_image(const GridFunction& f, const AffineMap& map,
                          double max_half_width = 64.0);

// FRACGEO-GRID v1 text format.
void write_grid(std::ostream& os, const GridFunction& f);
GridFunction read_grid(std::istream& is);
void write_grid_file(const std::string& path, const GridFunction& f);
GridFunction read_grid_file(const std::string& path);

} // namespace fracgeo

#endif
