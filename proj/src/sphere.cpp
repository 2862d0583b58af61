#include "fracgeo/sphere.hpp"

#include <cmath>

#include "fracgeo/common.hpp"

namespace fracgeo {

void gauss_legendre(int N, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(std::size_t(N), 0.0);
    weights.assign(std::size_t(N), 0.0);
    // Roots come in symmetric pairs; solve the upper half by Newton iteration
    // on the three-term recurrence and mirror.
    int half = (N + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi_v * (i + 0.75) / (N + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= N; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = N * (x * p1 - p0) / (x * x - 1.0);
            double step = p1 / dp;
            x -= step;
            if (std::fabs(step) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[std::size_t(N - 1 - i)] = x;
        nodes[std::size_t(i)] = -x;
        weights[std::size_t(N - 1 - i)] = w;
        weights[std::size_t(i)] = w;
    }
    if (N % 2 == 1) nodes[std::size_t(N / 2)] = 0.0;
}

SphereQuadrature make_sphere_quadrature(int n, std::size_t requested) {
    SphereQuadrature q;
    q.n = n;
    if (n == 1) {
        q.nodes = {vec(1.0), vec(-1.0)};
        q.weights = {1.0, 1.0};
        q.antipode = {1, 0};
        return q;
    }
    if (n == 2) {
        std::size_t M = requested < 4 ? 4 : requested;
        if (M % 2 != 0) ++M;
        double w = 2.0 * pi_v / double(M);
        q.nodes.resize(M);
        q.weights.assign(M, w);
        q.antipode.resize(M);
        std::size_t half = M / 2;
        for (std::size_t k = 0; k < half; ++k) {
            double theta = 2.0 * pi_v * double(k) / double(M);
            q.nodes[k] = vec(std::cos(theta), std::sin(theta));
            q.nodes[k + half] = negate(q.nodes[k]);   // exact antipode
            q.antipode[k] = k + half;
            q.antipode[k + half] = k;
        }
        return q;
    }
    if (n == 3) {
        // total = Np * Maz with Maz = 2*Np; Np even so no polar level sits at
        // the equator and antipodes can be stored as exact negations.
        std::size_t Np = std::size_t(std::lround(std::sqrt(double(requested) / 2.0)));
        if (Np < 2) Np = 2;
        if (Np % 2 != 0) ++Np;
        std::size_t Maz = 2 * Np;
        std::vector<double> u, wu;
        gauss_legendre(int(Np), u, wu);
        double waz = 2.0 * pi_v / double(Maz);

        std::size_t total = Np * Maz;
        q.nodes.resize(total);
        q.weights.resize(total);
        q.antipode.resize(total);
        // Fill the u > 0 hemisphere, then mirror.  GL nodes are symmetric:
        // u[Np-1-i] = -u[i], so hemisphere levels are i >= Np/2.
        std::size_t idx = 0;
        std::vector<std::size_t> first_half;
        for (std::size_t i = Np / 2; i < Np; ++i) {
            double su = std::sqrt(std::max(0.0, 1.0 - u[i] * u[i]));
            for (std::size_t j = 0; j < Maz; ++j) {
                double phi = 2.0 * pi_v * double(j) / double(Maz);
                q.nodes[idx] = vec(su * std::cos(phi), su * std::sin(phi), u[i]);
                q.weights[idx] = wu[i] * waz;
                first_half.push_back(idx);
                ++idx;
            }
        }
        for (std::size_t k : first_half) {
            q.nodes[idx] = negate(q.nodes[k]);
            q.weights[idx] = q.weights[k];
            q.antipode[k] = idx;
            q.antipode[idx] = k;
            ++idx;
        }
        return q;
    }
    throw param_error("make_sphere_quadrature: n must be 1, 2 or 3");
}

} // namespace fracgeo
