#include "fracgeo/star_body.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "fracgeo/common.hpp"

namespace fracgeo {

struct StarBody::Impl {
    int n = 1;
    virtual ~Impl() = default;
    virtual double radial(const Vec& dir) const {
        double g = gauge(dir);
        if (!(g > 0.0)) throw param_error("star body: non-positive gauge at a direction");
        return 1.0 / g;
    }
    virtual double gauge(const Vec& x) const {
        double r = norm2(x);
        if (r == 0.0) return 0.0;
        return r / radial(scale(1.0 / r, x));
    }
    virtual std::string describe() const = 0;
};

namespace {

struct BallImpl : StarBody::Impl {
    double r;
    double radial(const Vec&) const override { return r; }
    double gauge(const Vec& x) const override { return norm2(x) / r; }
    std::string describe() const override {
        std::ostringstream os;
        os << "ball:" << r;
        return os.str();
    }
};

struct EllipsoidImpl : StarBody::Impl {
    Mat A;
    double gauge(const Vec& x) const override { return norm2(mat_apply(A, x)); }
    std::string describe() const override { return "ellipsoid"; }
};

struct LqBallImpl : StarBody::Impl {
    double q, r;
    double gauge(const Vec& x) const override {
        double s = 0.0;
        for (int a = 0; a < n; ++a) s += std::pow(std::fabs(x[a]), q);
        return std::pow(s, 1.0 / q) / r;
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "lqball:" << q << "," << r;
        return os.str();
    }
};

struct LinearImageImpl : StarBody::Impl {
    Mat inv;                         // inverse of the defining map
    std::shared_ptr<const StarBody::Impl> inner;
    double gauge(const Vec& x) const override { return inner->gauge(mat_apply(inv, x)); }
    std::string describe() const override { return "linear_image(" + inner->describe() + ")"; }
};

struct SampledImpl : StarBody::Impl {
    std::shared_ptr<const SphereQuadrature> quad;
    std::vector<double> rho;

    // n=2: nodes sorted by angle.  n=3: polar levels sorted by cos(theta),
    // each holding its azimuth-sorted node list.
    std::vector<std::pair<double, std::size_t>> by_angle;
    std::vector<double> levels;
    std::vector<std::vector<std::pair<double, std::size_t>>> rings;

    void build_index() {
        const auto& nodes = quad->nodes;
        if (n == 2) {
            by_angle.reserve(nodes.size());
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                double a = std::atan2(nodes[i][1], nodes[i][0]);
                if (a < 0.0) a += 2.0 * pi_v;
                by_angle.emplace_back(a, i);
            }
            std::sort(by_angle.begin(), by_angle.end());
        } else if (n == 3) {
            std::vector<std::pair<double, std::size_t>> by_u;
            for (std::size_t i = 0; i < nodes.size(); ++i) by_u.emplace_back(nodes[i][2], i);
            std::sort(by_u.begin(), by_u.end());
            for (const auto& [u, i] : by_u) {
                if (levels.empty() || u - levels.back() > 1e-9) {
                    levels.push_back(u);
                    rings.emplace_back();
                }
                double a = std::atan2(nodes[i][1], nodes[i][0]);
                if (a < 0.0) a += 2.0 * pi_v;
                rings.back().emplace_back(a, i);
            }
            for (auto& ring : rings) std::sort(ring.begin(), ring.end());
        }
    }

    static double interp_ring(const std::vector<std::pair<double, std::size_t>>& ring,
                              const std::vector<double>& rho, double angle) {
        if (ring.size() == 1) return rho[ring[0].second];
        auto it = std::lower_bound(ring.begin(), ring.end(),
                                   std::make_pair(angle, std::size_t(0)));
        double a0, a1, v0, v1;
        if (it == ring.begin() || it == ring.end()) {
            // wrap between the last and first angles
            a0 = ring.back().first;
            a1 = ring.front().first + 2.0 * pi_v;
            v0 = rho[ring.back().second];
            v1 = rho[ring.front().second];
            if (angle < a0) angle += 2.0 * pi_v;
        } else {
            a0 = (it - 1)->first;
            a1 = it->first;
            v0 = rho[(it - 1)->second];
            v1 = rho[it->second];
        }
        double t = (a1 > a0) ? (angle - a0) / (a1 - a0) : 0.0;
        return v0 + t * (v1 - v0);
    }

    double radial(const Vec& dir) const override {
        if (n == 1) {
            for (std::size_t i = 0; i < quad->nodes.size(); ++i)
                if ((dir[0] > 0.0) == (quad->nodes[i][0] > 0.0)) return rho[i];
            throw param_error("sampled body: no matching direction");
        }
        if (n == 2) {
            double a = std::atan2(dir[1], dir[0]);
            if (a < 0.0) a += 2.0 * pi_v;
            return interp_ring(by_angle, rho, a);
        }
        // n == 3: bilinear in (cos(theta), azimuth); constant beyond the
        // extreme polar levels (documented first-order interpolation).
        double u = dir[2];
        double a = std::atan2(dir[1], dir[0]);
        if (a < 0.0) a += 2.0 * pi_v;
        if (u <= levels.front()) return interp_ring(rings.front(), rho, a);
        if (u >= levels.back()) return interp_ring(rings.back(), rho, a);
        auto it = std::lower_bound(levels.begin(), levels.end(), u);
        std::size_t hi = std::size_t(it - levels.begin());
        std::size_t lo = hi - 1;
        double t = (u - levels[lo]) / (levels[hi] - levels[lo]);
        double vlo = interp_ring(rings[lo], rho, a);
        double vhi = interp_ring(rings[hi], rho, a);
        return vlo + t * (vhi - vlo);
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "sampled:" << rho.size() << " nodes";
        return os.str();
    }
};

} // namespace

StarBody::StarBody(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

int StarBody::dim() const { return impl_->n; }
double StarBody::radial(const Vec& direction) const { return impl_->radial(direction); }
double StarBody::gauge(const Vec& x) const { return impl_->gauge(x); }
std::string StarBody::describe() const { return impl_->describe(); }

StarBody StarBody::ball(int n, double radius) {
    if (!(radius > 0.0)) throw param_error("StarBody::ball: radius must be positive");
    auto impl = std::make_shared<BallImpl>();
    impl->n = n;
    impl->r = radius;
    return StarBody(impl);
}

StarBody StarBody::ellipsoid(int n, const Mat& A) {
    if (det(A, n) == 0.0) throw param_error("StarBody::ellipsoid: matrix must be invertible");
    auto impl = std::make_shared<EllipsoidImpl>();
    impl->n = n;
    impl->A = A;
    return StarBody(impl);
}

StarBody StarBody::lq_ball(int n, double q, double radius) {
    if (!(q > 0.0) || !(radius > 0.0))
        throw param_error("StarBody::lq_ball: q and radius must be positive");
    auto impl = std::make_shared<LqBallImpl>();
    impl->n = n;
    impl->q = q;
    impl->r = radius;
    return StarBody(impl);
}

StarBody StarBody::linear_image(const Mat& map, const StarBody& inner) {
    auto impl = std::make_shared<LinearImageImpl>();
    impl->n = inner.dim();
    impl->inv = inverse(map, inner.dim());
    impl->inner = inner.impl_;
    return StarBody(impl);
}

StarBody StarBody::sampled(std::shared_ptr<const SphereQuadrature> quad,
                           std::vector<double> radial_values) {
    if (radial_values.size() != quad->count())
        throw param_error("StarBody::sampled: one radial value per quadrature node required");
    for (double r : radial_values)
        if (!(r > 0.0) || !std::isfinite(r))
            throw param_error("StarBody::sampled: radial values must be positive and finite");
    auto impl = std::make_shared<SampledImpl>();
    impl->n = quad->n;
    impl->quad = std::move(quad);
    impl->rho = std::move(radial_values);
    impl->build_index();
    return StarBody(impl);
}

StarBody StarBody::scaled(double c) const {
    if (!(c > 0.0)) throw param_error("StarBody::scaled: factor must be positive");
    return linear_image(diag_mat(c, c, c), *this);
}

StarBody StarBody::negated() const {
    return linear_image(diag_mat(-1.0, -1.0, -1.0), *this);
}

double volume(const StarBody& K, const SphereQuadrature& quad) {
    std::vector<double> terms(quad.count());
    for (std::size_t i = 0; i < quad.count(); ++i) {
        double rho = K.radial(quad.nodes[i]);
        terms[i] = quad.weights[i] * std::pow(rho, K.dim());
    }
    return pairwise_sum(terms) / K.dim();
}

StarBody schwarz_symmetral(const StarBody& K, const SphereQuadrature& quad) {
    double vol = volume(K, quad);
    double r = std::pow(vol / unit_ball_volume(K.dim()), 1.0 / K.dim());
    return StarBody::ball(K.dim(), r);
}

StarBody q_radial_sum(const StarBody& K, const StarBody& L, double q,
                      std::shared_ptr<const SphereQuadrature> quad) {
    if (q == 0.0) throw param_error("q_radial_sum: q must be nonzero");
    std::vector<double> rho(quad->count());
    for (std::size_t i = 0; i < quad->count(); ++i) {
        double rk = K.radial(quad->nodes[i]);
        double rl = L.radial(quad->nodes[i]);
        rho[i] = std::pow(std::pow(rk, q) + std::pow(rl, q), 1.0 / q);
    }
    return StarBody::sampled(std::move(quad), std::move(rho));
}

double dual_mixed_volume(const StarBody& K, const StarBody& L, double alpha,
                         const SphereQuadrature& quad) {
    int n = K.dim();
    if (alpha == 0.0 || alpha == double(n))
        throw param_error("dual_mixed_volume: alpha must avoid 0 and n");
    std::vector<double> terms(quad.count());
    for (std::size_t i = 0; i < quad.count(); ++i) {
        double rk = K.radial(quad.nodes[i]);
        double rl = L.radial(quad.nodes[i]);
        terms[i] = quad.weights[i] * std::pow(rk, n - alpha) * std::pow(rl, alpha);
    }
    return pairwise_sum(terms) / n;
}

double moment_body_norm(const StarBody& K, const Vec& v, double p,
                        const SphereQuadrature& quad) {
    if (!(p >= 1.0)) throw param_error("moment_body_norm: p must satisfy p >= 1");
    int n = K.dim();
    // (n+p)/2 * int_K |v.x|^p dx = (1/2) sum w_i |v.xi_i|^p rho^{n+p}
    std::vector<double> terms(quad.count());
    for (std::size_t i = 0; i < quad.count(); ++i) {
        double rho = K.radial(quad.nodes[i]);
        terms[i] = quad.weights[i] * std::pow(std::fabs(dot(v, quad.nodes[i])), p)
                 * std::pow(rho, n + p);
    }
    return std::pow(0.5 * pairwise_sum(terms), 1.0 / p);
}

double radial_lipschitz_ratio(const StarBody& K, const SphereQuadrature& quad) {
    std::size_t N = quad.count();
    std::vector<double> rho(N);
    double rho_min = infinity();
    for (std::size_t i = 0; i < N; ++i) {
        rho[i] = K.radial(quad.nodes[i]);
        rho_min = std::min(rho_min, rho[i]);
    }
    // Neighbour scale: twice the smallest node separation.
    double sep = infinity();
    for (std::size_t i = 1; i < N; ++i)
        sep = std::min(sep, norm2(sub(quad.nodes[i], quad.nodes[0])));
    double cutoff = 2.5 * sep;
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            double d = norm2(sub(quad.nodes[i], quad.nodes[j]));
            if (d > cutoff || d == 0.0) continue;
            worst = std::max(worst, std::fabs(rho[i] - rho[j]) / (d * rho_min));
        }
    return worst;
}

StarBody random_star_body(int n, std::shared_ptr<const SphereQuadrature> quad,
                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> rho(quad->count());
    if (n == 1) {
        for (std::size_t i = 0; i < quad->count(); ++i)
            rho[i] = std::exp(0.45 * coef(rng));
        return StarBody::sampled(std::move(quad), std::move(rho));
    }
    if (n == 2) {
        // log rho = sum_{k=1..4} a_k cos(k theta) + b_k sin(k theta), total
        // amplitude clamped below 0.5 so positivity is guaranteed.
        std::vector<double> a(4), b(4);
        double amp = 0.0;
        for (int k = 0; k < 4; ++k) {
            a[std::size_t(k)] = coef(rng);
            b[std::size_t(k)] = coef(rng);
            amp += std::fabs(a[std::size_t(k)]) + std::fabs(b[std::size_t(k)]);
        }
        double clamp = 0.45 / std::max(amp, 0.45);
        for (std::size_t i = 0; i < quad->count(); ++i) {
            double theta = std::atan2(quad->nodes[i][1], quad->nodes[i][0]);
            double series = 0.0;
            for (int k = 1; k <= 4; ++k)
                series += a[std::size_t(k - 1)] * std::cos(k * theta)
                        + b[std::size_t(k - 1)] * std::sin(k * theta);
            rho[i] = std::exp(clamp * series);
        }
        return StarBody::sampled(std::move(quad), std::move(rho));
    }
    // n == 3: low-order polynomial basis in the direction components.
    std::vector<double> c(8);
    double amp = 0.0;
    for (auto& ck : c) {
        ck = coef(rng);
        amp += std::fabs(ck);
    }
    double clamp = 0.45 / std::max(amp, 0.45);
    for (std::size_t i = 0; i < quad->count(); ++i) {
        const Vec& xi = quad->nodes[i];
        double basis[8] = {xi[0], xi[1], xi[2], xi[0] * xi[1], xi[0] * xi[2],
                           xi[1] * xi[2], xi[0] * xi[0] - xi[2] * xi[2],
                           xi[1] * xi[1] - xi[2] * xi[2]};
        double series = 0.0;
        for (int k = 0; k < 8; ++k) series += c[std::size_t(k)] * basis[k];
        rho[i] = std::exp(clamp * series);
    }
    return StarBody::sampled(std::move(quad), std::move(rho));
}

void write_body(std::ostream& os, const StarBody& K, const SphereQuadrature& quad,
                const std::map<std::string, std::string>& extra_headers) {
    os << "FRACGEO-BODY v1\n";
    os << "n=" << K.dim() << "\n";
    os << "nodes=" << quad.count() << "\n";
    for (const auto& [k, v] : extra_headers) os << k << "=" << v << "\n";
    os.precision(17);
    for (std::size_t i = 0; i < quad.count(); ++i) {
        for (int a = 0; a < K.dim(); ++a) os << quad.nodes[i][a] << " ";
        os << K.radial(quad.nodes[i]) << "\n";
    }
}

StarBody read_body(std::istream& is, std::map<std::string, std::string>* headers) {
    std::string line;
    if (!std::getline(is, line) || line != "FRACGEO-BODY v1")
        throw parse_error("body file: bad magic line, expected 'FRACGEO-BODY v1'", 0);
    int n = -1;
    std::size_t count = 0;
    // header lines key=value until the first node line
    std::streampos node_start = is.tellg();
    while (std::getline(is, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) break;
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "n") n = std::stoi(val);
        else if (key == "nodes") count = std::size_t(std::stoul(val));
        else if (headers) (*headers)[key] = val;
        node_start = is.tellg();
    }
    if (n < 1 || n > 3) throw parse_error("body file: missing or invalid n header", 0);
    if (count == 0) throw parse_error("body file: missing nodes header", 0);
    is.clear();
    is.seekg(node_start);

    std::vector<Vec> nodes(count);
    std::vector<double> rho(count);
    for (std::size_t i = 0; i < count; ++i) {
        Vec xi{};
        for (int a = 0; a < n; ++a)
            if (!(is >> xi[a])) throw parse_error("body file: truncated node list", i);
        if (!(is >> rho[i])) throw parse_error("body file: truncated node list", i);
        nodes[i] = xi;
    }

    // If the node set matches our own quadrature layout, adopt its weights;
    // otherwise fall back to equal weights over the sphere measure.
    auto quad = std::make_shared<SphereQuadrature>(make_sphere_quadrature(n, count));
    bool matches = quad->count() == count;
    if (matches)
        for (std::size_t i = 0; i < count && matches; ++i)
            matches = norm2(sub(quad->nodes[i], nodes[i])) < 1e-9;
    if (!matches) {
        auto q = std::make_shared<SphereQuadrature>();
        q->n = n;
        q->nodes = nodes;
        double surface = (n == 1) ? 2.0 : (n == 2 ? 2.0 * pi_v : 4.0 * pi_v);
        q->weights.assign(count, surface / double(count));
        q->antipode.assign(count, 0);
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t best = i;
            double best_d = infinity();
            for (std::size_t j = 0; j < count; ++j) {
                double d = norm2(add(nodes[i], nodes[j]));
                if (d < best_d) { best_d = d; best = j; }
            }
            q->antipode[i] = best;
        }
        quad = q;
    }
    return StarBody::sampled(quad, std::move(rho));
}

void write_body_file(const std::string& path, const StarBody& K, const SphereQuadrature& quad,
                     const std::map<std::string, std::string>& extra_headers) {
    std::ofstream os(path);
    if (!os) throw size_error("cannot open for writing: " + path);
    write_body(os, K, quad, extra_headers);
}

StarBody read_body_file(const std::string& path, std::map<std::string, std::string>* headers) {
    std::ifstream is(path);
    if (!is) throw parse_error("cannot open body file: " + path, 0);
    return read_body(is, headers);
}

StarBody parse_body_spec(const std::string& text, int n) {
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto nums = [&]() {
        std::vector<double> v;
        std::stringstream ss(args);
        std::string tok;
        while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
        return v;
    };
    if (name == "ball") {
        auto v = nums();
        if (v.size() != 1) throw parse_error("body spec: ball:r", 0);
        return StarBody::ball(n, v[0]);
    }
    if (name == "ellipsoid" || name == "ellipse") {
        auto v = nums();
        if (int(v.size()) != n) throw parse_error("body spec: ellipsoid needs n semiaxes", 0);
        Mat A = identity_mat();
        for (int a = 0; a < n; ++a) A[a][a] = 1.0 / v[std::size_t(a)];
        return StarBody::ellipsoid(n, A);
    }
    if (name == "lqball") {
        auto v = nums();
        if (v.size() != 2) throw parse_error("body spec: lqball:q,r", 0);
        return StarBody::lq_ball(n, v[0], v[1]);
    }
    if (name == "file") return read_body_file(args);
    throw parse_error("body spec: unknown body '" + name + "'", 0);
}

} // namespace fracgeo
