#include "fracgeo/spec_lang.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fracgeo {

namespace {

SpecPtr node(SpecNode&& n) { return std::make_shared<const SpecNode>(std::move(n)); }

} // namespace

SpecPtr spec_gaussian(const std::vector<double>& center, double sigma, double amplitude) {
    SpecNode n;
    n.kind = SpecNode::Kind::gaussian;
    n.point_a = center;
    n.scalar_a = sigma;
    n.scalar_b = amplitude;
    return node(std::move(n));
}

SpecPtr spec_box(const std::vector<double>& lo, const std::vector<double>& hi, double amplitude) {
    SpecNode n;
    n.kind = SpecNode::Kind::box_indicator;
    n.point_a = lo;
    n.point_b = hi;
    n.scalar_b = amplitude;
    return node(std::move(n));
}

SpecPtr spec_ball(const std::vector<double>& center, double radius, double amplitude) {
    SpecNode n;
    n.kind = SpecNode::Kind::ball_indicator;
    n.point_a = center;
    n.scalar_a = radius;
    n.scalar_b = amplitude;
    return node(std::move(n));
}

SpecPtr spec_sum(const std::vector<SpecPtr>& children) {
    SpecNode n;
    n.kind = SpecNode::Kind::sum;
    n.children = children;
    return node(std::move(n));
}

SpecPtr spec_max(const std::vector<SpecPtr>& children) {
    SpecNode n;
    n.kind = SpecNode::Kind::max;
    n.children = children;
    return node(std::move(n));
}

SpecPtr spec_affine(const std::vector<double>& matrix, const std::vector<double>& shift, SpecPtr child) {
    SpecNode n;
    n.kind = SpecNode::Kind::affine;
    n.point_a = matrix;
    n.point_b = shift;
    n.children = {std::move(child)};
    return node(std::move(n));
}

SpecPtr spec_scale_arg(double r, SpecPtr child) {
    SpecNode n;
    n.kind = SpecNode::Kind::scale_arg;
    n.scalar_a = r;
    n.children = {std::move(child)};
    return node(std::move(n));
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over a flat byte buffer.

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

    char peek() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        return text[pos];
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    bool try_consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size()
               && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected identifier");
        return text.substr(start, pos - start);
    }

    double number() {
        skip_ws();
        std::size_t start = pos;
        const char* begin = text.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected number");
        pos = start + std::size_t(end - begin);
        if (!std::isfinite(v)) fail("number must be finite");
        return v;
    }

    std::vector<double> point() {
        expect('[');
        std::vector<double> vals;
        if (!try_consume(']')) {
            vals.push_back(number());
            while (try_consume(',')) vals.push_back(number());
            expect(']');
        }
        if (vals.empty()) fail("empty point");
        return vals;
    }

    SpecPtr expr() {
        std::string name = identifier();
        expect('(');
        SpecPtr result;
        if (name == "gaussian") {
            auto c = point();
            expect(',');
            double sigma = number();
            expect(',');
            double amp = number();
            result = spec_gaussian(c, sigma, amp);
        } else if (name == "box_indicator") {
            auto lo = point();
            expect(',');
            auto hi = point();
            expect(',');
            double amp = number();
            result = spec_box(lo, hi, amp);
        } else if (name == "ball_indicator") {
            auto c = point();
            expect(',');
            double r = number();
            expect(',');
            double amp = number();
            result = spec_ball(c, r, amp);
        } else if (name == "sum" || name == "max") {
            std::vector<SpecPtr> kids;
            kids.push_back(expr());
            while (try_consume(',')) kids.push_back(expr());
            result = (name == "sum") ? spec_sum(kids) : spec_max(kids);
        } else if (name == "affine") {
            auto matrix = point();
            expect(',');
            auto shift = point();
            expect(',');
            auto child = expr();
            result = spec_affine(matrix, shift, child);
        } else if (name == "scale_arg") {
            double r = number();
            expect(',');
            auto child = expr();
            result = spec_scale_arg(r, child);
        } else {
            fail("unknown primitive '" + name + "'");
        }
        expect(')');
        return result;
    }
};

} // namespace

SpecPtr parse_spec(const std::string& text) {
    Parser p(text);
    SpecPtr s = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input after expression");
    return s;
}

SpecPtr parse_spec_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw parse_error("cannot open spec file: " + path, 0);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_spec(ss.str());
}

namespace {

void print_point(std::ostream& os, const std::vector<double>& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << "]";
}

void print_spec(std::ostream& os, const SpecPtr& s) {
    using K = SpecNode::Kind;
    switch (s->kind) {
        case K::gaussian:
            os << "gaussian(";
            print_point(os, s->point_a);
            os << "," << s->scalar_a << "," << s->scalar_b << ")";
            break;
        case K::box_indicator:
            os << "box_indicator(";
            print_point(os, s->point_a);
            os << ",";
            print_point(os, s->point_b);
            os << "," << s->scalar_b << ")";
            break;
        case K::ball_indicator:
            os << "ball_indicator(";
            print_point(os, s->point_a);
            os << "," << s->scalar_a << "," << s->scalar_b << ")";
            break;
        case K::sum:
        case K::max:
            os << (s->kind == K::sum ? "sum(" : "max(");
            for (std::size_t i = 0; i < s->children.size(); ++i) {
                if (i) os << ",";
                print_spec(os, s->children[i]);
            }
            os << ")";
            break;
        case K::affine:
            os << "affine(";
            print_point(os, s->point_a);
            os << ",";
            print_point(os, s->point_b);
            os << ",";
            print_spec(os, s->children[0]);
            os << ")";
            break;
        case K::scale_arg:
            os << "scale_arg(" << s->scalar_a << ",";
            print_spec(os, s->children[0]);
            os << ")";
            break;
    }
}

} // namespace

std::string to_string(const SpecPtr& spec) {
    std::ostringstream os;
    os.precision(17);
    print_spec(os, spec);
    return os.str();
}

void validate_spec(const SpecPtr& spec, int n) {
    using K = SpecNode::Kind;
    auto need = [&](bool ok, const std::string& msg) {
        if (!ok) throw param_error("validate_spec: " + msg);
    };
    switch (spec->kind) {
        case K::gaussian:
            need(spec->point_a.size() == std::size_t(n), "gaussian center has wrong dimension");
            need(spec->scalar_a > 0.0, "gaussian sigma must be positive");
            need(spec->scalar_b >= 0.0, "gaussian amplitude must be non-negative");
            break;
        case K::box_indicator:
            need(spec->point_a.size() == std::size_t(n) && spec->point_b.size() == std::size_t(n),
                 "box corners have wrong dimension");
            for (int a = 0; a < n; ++a)
                need(spec->point_a[a] < spec->point_b[a], "box corner_lo must be below corner_hi");
            need(spec->scalar_b >= 0.0, "box amplitude must be non-negative");
            break;
        case K::ball_indicator:
            need(spec->point_a.size() == std::size_t(n), "ball center has wrong dimension");
            need(spec->scalar_a > 0.0, "ball radius must be positive");
            need(spec->scalar_b >= 0.0, "ball amplitude must be non-negative");
            break;
        case K::sum:
        case K::max:
            need(!spec->children.empty(), "combinator needs children");
            for (const auto& c : spec->children) validate_spec(c, n);
            break;
        case K::affine: {
            need(spec->point_a.size() == std::size_t(n) * std::size_t(n),
                 "affine matrix needs n*n entries");
            need(spec->point_b.size() == std::size_t(n), "affine shift has wrong dimension");
            Mat mat = identity_mat();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) mat[i][j] = spec->point_a[std::size_t(i * n + j)];
            need(det(mat, n) != 0.0, "affine matrix must be invertible");
            validate_spec(spec->children[0], n);
            break;
        }
        case K::scale_arg:
            need(spec->scalar_a > 0.0, "scale_arg factor must be positive");
            validate_spec(spec->children[0], n);
            break;
    }
}

double eval_spec(const SpecPtr& spec, int n, const Vec& x) {
    using K = SpecNode::Kind;
    switch (spec->kind) {
        case K::gaussian: {
            double r2 = 0.0;
            for (int a = 0; a < n; ++a) {
                double d = x[a] - spec->point_a[std::size_t(a)];
                r2 += d * d;
            }
            double sigma = spec->scalar_a;
            if (r2 > 36.0 * sigma * sigma) return 0.0;
            return spec->scalar_b * std::exp(-r2 / (2.0 * sigma * sigma));
        }
        case K::box_indicator:
            for (int a = 0; a < n; ++a)
                if (x[a] < spec->point_a[std::size_t(a)] || x[a] > spec->point_b[std::size_t(a)])
                    return 0.0;
            return spec->scalar_b;
        case K::ball_indicator: {
            double r2 = 0.0;
            for (int a = 0; a < n; ++a) {
                double d = x[a] - spec->point_a[std::size_t(a)];
                r2 += d * d;
            }
            return r2 <= spec->scalar_a * spec->scalar_a ? spec->scalar_b : 0.0;
        }
        case K::sum: {
            double s = 0.0;
            for (const auto& c : spec->children) s += eval_spec(c, n, x);
            return s;
        }
        case K::max: {
            double s = 0.0;
            for (const auto& c : spec->children) s = std::max(s, eval_spec(c, n, x));
            return s;
        }
        case K::affine: {
            Mat mat = identity_mat();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) mat[i][j] = spec->point_a[std::size_t(i * n + j)];
            Vec shift{};
            for (int a = 0; a < n; ++a) shift[a] = spec->point_b[std::size_t(a)];
            Vec y = mat_apply(inverse(mat, n), sub(x, shift));
            return eval_spec(spec->children[0], n, y);
        }
        case K::scale_arg:
            return eval_spec(spec->children[0], n, scale(spec->scalar_a, x));
    }
    return 0.0;
}

double analytic_mass(const SpecPtr& spec, int n) {
    using K = SpecNode::Kind;
    switch (spec->kind) {
        case K::gaussian: {
            double sigma = spec->scalar_a;
            return spec->scalar_b * std::pow(2.0 * pi_v * sigma * sigma, 0.5 * n);
        }
        case K::box_indicator: {
            double vol = 1.0;
            for (int a = 0; a < n; ++a) vol *= spec->point_b[std::size_t(a)] - spec->point_a[std::size_t(a)];
            return spec->scalar_b * vol;
        }
        case K::ball_indicator:
            return spec->scalar_b * unit_ball_volume(n) * std::pow(spec->scalar_a, n);
        case K::sum: {
            double s = 0.0;
            for (const auto& c : spec->children) s += analytic_mass(c, n);
            return s;
        }
        case K::max:
            return std::nan("");   // no closed form for pointwise maxima
        case K::affine: {
            Mat mat = identity_mat();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) mat[i][j] = spec->point_a[std::size_t(i * n + j)];
            return std::fabs(det(mat, n)) * analytic_mass(spec->children[0], n);
        }
        case K::scale_arg:
            return std::pow(spec->scalar_a, -n) * analytic_mass(spec->children[0], n);
    }
    return std::nan("");
}

GridFunction sample_spec(const SpecPtr& spec, int n, double L, int m) {
    validate_spec(spec, n);
    GridFunction f = make_grid_function(n, L, m);
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        double v = eval_spec(spec, n, f.center_of(flat));
        if (!(v >= 0.0) || !std::isfinite(v))
            throw param_error("sample_spec: spec produced a negative or non-finite value");
        f.values[flat] = v;
    }
    double mass = analytic_mass(spec, n);
    if (std::isfinite(mass) && mass > 0.0) {
        double grid_mass = l1_mass(f);
        if (grid_mass < mass * (1.0 - 1e-6)) {
            std::ostringstream os;
            os << "truncation warning: grid mass " << grid_mass
               << " below analytic mass " << mass;
            f.notes.push_back(os.str());
        }
    }
    return f;
}

} // namespace fracgeo
