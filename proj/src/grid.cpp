#include "fracgeo/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace fracgeo {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int k) { g_threads.store(k > 0 ? k : 0); }

int threads() {
    int k = g_threads.load();
    if (k > 0) return k;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

double parallel_blocks(std::size_t count, std::size_t block_size,
                       const std::function<double(std::size_t, std::size_t)>& fn) {
    if (count == 0) return 0.0;
    if (block_size == 0) block_size = 1;
    std::size_t nblocks = (count + block_size - 1) / block_size;
    std::vector<double> partials(nblocks, 0.0);
    int nthreads = threads();
    if (nthreads <= 1 || nblocks == 1) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            std::size_t lo = b * block_size;
            partials[b] = fn(lo, std::min(lo + block_size, count));
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t b = next.fetch_add(1);
                if (b >= nblocks) return;
                std::size_t lo = b * block_size;
                partials[b] = fn(lo, std::min(lo + block_size, count));
            }
        };
        std::vector<std::thread> pool;
        int spawn = int(std::min<std::size_t>(std::size_t(nthreads), nblocks));
        pool.reserve(std::size_t(spawn));
        for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    // Combination order is fixed by the block decomposition, not the thread
    // count, so the result is identical for any number of workers.
    return pairwise_sum(partials);
}

void parallel_for(std::size_t count, std::size_t block_size,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    if (block_size == 0) block_size = 1;
    std::size_t nblocks = (count + block_size - 1) / block_size;
    int nthreads = threads();
    if (nthreads <= 1 || nblocks == 1) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            std::size_t lo = b * block_size;
            fn(lo, std::min(lo + block_size, count));
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            std::size_t lo = b * block_size;
            fn(lo, std::min(lo + block_size, count));
        }
    };
    std::vector<std::thread> pool;
    int spawn = int(std::min<std::size_t>(std::size_t(nthreads), nblocks));
    pool.reserve(std::size_t(spawn));
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

GridFunction make_grid_function(int n, double L, int m) {
    if (n < 1 || n > 3) throw param_error("make_grid_function: n must be 1, 2 or 3");
    if (!(L > 0.0)) throw param_error("make_grid_function: L must be positive");
    if (m < 1) throw param_error("make_grid_function: m must be positive");
    GridFunction f;
    f.n = n;
    f.L = L;
    f.m = m;
    std::size_t total = 1;
    for (int a = 0; a < n; ++a) total *= std::size_t(m);
    f.values.assign(total, 0.0);
    return f;
}

double eval(const GridFunction& f, const Vec& x) {
    const double L = f.L, dx = f.dx();
    for (int a = 0; a < f.n; ++a)
        if (!(x[a] > -L && x[a] < L)) return 0.0;

    // Locate the interpolation cell on the center lattice; corners with
    // indices outside [0, m-1] contribute value 0.
    int base[3] = {0, 0, 0};
    double w[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < f.n; ++a) {
        double u = (x[a] + L) / dx - 0.5;
        double fl = std::floor(u);
        base[a] = int(fl);
        w[a] = u - fl;
    }
    double result = 0.0;
    int corners = 1 << f.n;
    for (int c = 0; c < corners; ++c) {
        double weight = 1.0;
        std::size_t flat = 0;
        bool inside = true;
        for (int a = 0; a < f.n; ++a) {
            int bit = (c >> a) & 1;
            int idx = base[a] + bit;
            weight *= bit ? w[a] : 1.0 - w[a];
            if (idx < 0 || idx >= f.m) { inside = false; break; }
            flat = flat * std::size_t(f.m) + std::size_t(idx);
        }
        if (inside && weight != 0.0) result += weight * f.values[flat];
    }
    return result;
}

double lp_power_sum(const GridFunction& f, double p) {
    if (!(p >= 1.0)) throw param_error("lp_norm: p must satisfy p >= 1");
    const double cellvol = std::pow(f.dx(), f.n);
    std::vector<double> terms(f.values.size());
    if (p == 1.0) {
        for (std::size_t i = 0; i < f.values.size(); ++i) terms[i] = f.values[i];
    } else if (p == 2.0) {
        for (std::size_t i = 0; i < f.values.size(); ++i) terms[i] = f.values[i] * f.values[i];
    } else {
        for (std::size_t i = 0; i < f.values.size(); ++i) terms[i] = std::pow(f.values[i], p);
    }
    return pairwise_sum(terms) * cellvol;
}

double lp_norm(const GridFunction& f, double p) {
    return std::pow(lp_power_sum(f, p), 1.0 / p);
}

double l1_mass(const GridFunction& f) { return lp_power_sum(f, 1.0); }

GridFunction coarsen(const GridFunction& f) {
    if (f.m % 2 != 0) throw param_error("coarsen: m must be even");
    GridFunction c = make_grid_function(f.n, f.L, f.m / 2);
    const int cm = c.m;
    const double scale = 1.0 / double(1 << f.n);
    for (std::size_t flat = 0; flat < c.values.size(); ++flat) {
        int ci[3] = {0, 0, 0};
        for (int a = 0; a < f.n; ++a) ci[a] = c.coord(flat, a);
        (void)cm;
        double sum = 0.0;
        int children = 1 << f.n;
        for (int ch = 0; ch < children; ++ch) {
            int fi[3] = {0, 0, 0};
            for (int a = 0; a < f.n; ++a) fi[a] = 2 * ci[a] + ((ch >> a) & 1);
            sum += f.at(fi[0], fi[1], fi[2]);
        }
        c.values[flat] = sum * scale;
    }
    return c;
}

GridFunction embed(const GridFunction& f, double L_target) {
    const double dx = f.dx();
    const double diff = L_target - f.L;
    if (diff < -1e-12 * std::max(1.0, f.L)) throw size_error("embed: target box smaller than source");
    const double extra_real = diff / dx;
    const int extra = int(std::llround(extra_real));
    if (std::abs(extra_real - double(extra)) > 1e-9)
        throw size_error("embed: box widths differ by a non-integer number of cells");
    if (extra == 0) return f;
    GridFunction g = make_grid_function(f.n, f.L + extra * dx, f.m + 2 * extra);
    g.notes = f.notes;
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        int gi[3] = {0, 0, 0};
        for (int a = 0; a < f.n; ++a) gi[a] = f.coord(flat, a) + extra;
        g.at(gi[0], gi[1], gi[2]) = f.values[flat];
    }
    return g;
}

SupportBox support_box(const GridFunction& f, int pad) {
    SupportBox box;
    for (int a = 0; a < 3; ++a) { box.lo[a] = f.m; box.hi[a] = -1; }
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        if (f.values[flat] == 0.0) continue;
        box.empty = false;
        for (int a = 0; a < f.n; ++a) {
            int i = f.coord(flat, a);
            box.lo[a] = std::min(box.lo[a], i);
            box.hi[a] = std::max(box.hi[a], i);
        }
    }
    if (!box.empty) {
        for (int a = 0; a < f.n; ++a) {
            box.lo[a] = std::max(0, box.lo[a] - pad);
            box.hi[a] = std::min(f.m - 1, box.hi[a] + pad);
        }
    }
    return box;
}

AffineMap make_affine(int n, const Mat& matrix, const Vec& shift) {
    AffineMap map;
    map.n = n;
    map.matrix = matrix;
    map.shift = shift;
    if (det(matrix, n) == 0.0) throw param_error("make_affine: matrix must be invertible");
    return map;
}

namespace {

bool is_identity_matrix(const Mat& m, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m[i][j] != (i == j ? 1.0 : 0.0)) return false;
    return true;
}

bool whole_cell_shift(const AffineMap& map, double dx, int shift_cells[3]) {
    if (!is_identity_matrix(map.matrix, map.n)) return false;
    for (int a = 0; a < map.n; ++a) {
        double cells = map.shift[a] / dx;
        double rounded = std::round(cells);
        if (std::fabs(cells - rounded) > 1e-12 * std::max(1.0, std::fabs(cells))) return false;
        shift_cells[a] = int(rounded);
    }
    return true;
}

} // namespace

GridFunction affine_image(const GridFunction& f, const AffineMap& map, double max_half_width) {
    if (map.n != f.n) throw param_error("affine_image: dimension mismatch");
    const double dx = f.dx();

    // Needed half-width: image of the support-box corners, plus one cell.
    SupportBox sup = support_box(f, 0);
    double need = 0.0;
    if (!sup.empty) {
        int corners = 1 << f.n;
        for (int c = 0; c < corners; ++c) {
            Vec corner{};
            for (int a = 0; a < f.n; ++a) {
                int i = ((c >> a) & 1) ? sup.hi[a] : sup.lo[a];
                corner[a] = f.center(i) + (((c >> a) & 1) ? 0.5 : -0.5) * dx;
            }
            Vec img = map.apply(corner);
            for (int a = 0; a < f.n; ++a) need = std::max(need, std::fabs(img[a]));
        }
    }
    need += dx;
    if (need > max_half_width)
        throw size_error("affine_image: image support half-width "
                         + std::to_string(need) + " exceeds maximum "
                         + std::to_string(max_half_width));

    // Expand by whole cells so the output lattice extends the input lattice.
    int extra = std::max(0, int(std::ceil((need - f.L) / dx)));
    double L_out = f.L + extra * dx;
    int m_out = f.m + 2 * extra;
    GridFunction out = make_grid_function(f.n, L_out, m_out);

    int shift_cells[3] = {0, 0, 0};
    if (whole_cell_shift(map, dx, shift_cells)) {
        // Exact path: values are copied to shifted indices bit for bit.
        for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
            if (f.values[flat] == 0.0) continue;
            int oi[3] = {0, 0, 0};
            bool inside = true;
            for (int a = 0; a < f.n; ++a) {
                oi[a] = f.coord(flat, a) + extra + shift_cells[a];
                if (oi[a] < 0 || oi[a] >= m_out) { inside = false; break; }
            }
            if (inside) out.at(oi[0], oi[1], oi[2]) = f.values[flat];
        }
        return out;
    }

    for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
        Vec x = out.center_of(flat);
        out.values[flat] = eval(f, map.apply_inverse(x));
    }
    return out;
}

void write_grid(std::ostream& os, const GridFunction& f) {
    os << "FRACGEO-GRID v1\n";
    os << "n=" << f.n << "\n";
    os.precision(17);
    os << "L=" << f.L << "\n";
    os << "m=" << f.m << "\n";
    std::size_t per_line = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        os << f.values[i];
        if (++per_line == 8 || i + 1 == f.values.size()) {
            os << "\n";
            per_line = 0;
        } else {
            os << " ";
        }
    }
}

namespace {

std::string expect_header(std::istream& is, const std::string& key) {
    std::string line;
    if (!std::getline(is, line))
        throw parse_error("grid file: missing header line '" + key + "'", 0);
    if (line.rfind(key + "=", 0) != 0)
        throw parse_error("grid file: expected '" + key + "=', got '" + line + "'", 0);
    return line.substr(key.size() + 1);
}

} // namespace

GridFunction read_grid(std::istream& is) {
    std::string magic;
    if (!std::getline(is, magic) || magic != "FRACGEO-GRID v1")
        throw parse_error("grid file: bad magic line, expected 'FRACGEO-GRID v1'", 0);
    int n = std::stoi(expect_header(is, "n"));
    double L = std::stod(expect_header(is, "L"));
    int m = std::stoi(expect_header(is, "m"));
    GridFunction f = make_grid_function(n, L, m);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (!(is >> f.values[i]))
            throw parse_error("grid file: expected " + std::to_string(f.values.size())
                              + " values, got " + std::to_string(i), i);
        if (!(f.values[i] >= 0.0) || !std::isfinite(f.values[i]))
            throw parse_error("grid file: values must be finite and non-negative", i);
    }
    return f;
}

void write_grid_file(const std::string& path, const GridFunction& f) {
    std::ofstream os(path);
    if (!os) throw size_error("cannot open for writing: " + path);
    write_grid(os, f);
}

GridFunction read_grid_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw parse_error("cannot open grid file: " + path, 0);
    return read_grid(is);
}

} // namespace fracgeo
