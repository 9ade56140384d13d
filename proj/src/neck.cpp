#include "bw/neck.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "bw/error.hpp"

namespace bw {

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 mul(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double len(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<double> component(const std::vector<Vec3>& v, int a) {
    std::vector<double> out(v.size());
    for (std::size_t p = 0; p < v.size(); ++p) out[p] = v[p][a];
    return out;
}

// d/ds on every row: centered inside, one-sided second order on the two boundary rows.
std::vector<double> ds_rows(const WenteGrid& g, const std::vector<double>& v) {
    const int K = g.K, M = g.M;
    const double h = g.h();
    std::vector<double> out(v.size());
    auto at = [&](int i, int j) { return v[static_cast<std::size_t>(i) * K + j]; };
    for (int j = 0; j < K; ++j) {
        out[j] = (-3.0 * at(0, j) + 4.0 * at(1, j) - at(2, j)) / (2.0 * h);
        out[static_cast<std::size_t>(M) * K + j] = (3.0 * at(M, j) - 4.0 * at(M - 1, j) + at(M - 2, j)) / (2.0 * h);
        for (int i = 1; i < M; ++i) out[static_cast<std::size_t>(i) * K + j] = (at(i + 1, j) - at(i - 1, j)) / (2.0 * h);
    }
    return out;
}

std::vector<Vec3> ds_vec(const WenteGrid& g, const std::vector<Vec3>& v) {
    std::vector<Vec3> out(v.size());
    for (int a = 0; a < 3; ++a) {
        auto d = ds_rows(g, component(v, a));
        for (std::size_t p = 0; p < v.size(); ++p) out[p][a] = d[p];
    }
    return out;
}

std::vector<Vec3> dt_vec(const WenteGrid& g, const std::vector<Vec3>& v) {
    std::vector<Vec3> out(v.size());
    for (int a = 0; a < 3; ++a) {
        auto d = dtheta(g, component(v, a));
        for (std::size_t p = 0; p < v.size(); ++p) out[p][a] = d[p];
    }
    return out;
}

// Cartesian derivatives from log-polar ones at node p.
void to_xy(const WenteGrid& g, int i, int j, const Vec3& fs, const Vec3& ft, Vec3& fx, Vec3& fy) {
    double r = g.radius(i), c = std::cos(g.theta(j)), s = std::sin(g.theta(j));
    fx = mul(sub(mul(fs, c), mul(ft, s)), 1.0 / r);
    fy = mul(add(mul(fs, s), mul(ft, c)), 1.0 / r);
}

double wrap(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}

std::vector<Vec3> positions(const WenteGrid& g, cplx center, const std::function<Vec3(cplx)>& f) {
    std::vector<Vec3> pos(g.size());
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.K; ++j)
            pos[static_cast<std::size_t>(i) * g.K + j] = f(center + std::polar(g.radius(i), g.theta(j)));
    return pos;
}

}  // namespace

ConformalImmersionSample sample_from_derivatives(const WenteGrid& g, const std::vector<Vec3>& phi_s,
                                                 const std::vector<Vec3>& phi_t, cplx center, std::string label) {
    if (g.disk) fail(Errc::domain, "samples live on annulus grids");
    if (phi_s.size() != g.size() || phi_t.size() != g.size()) fail(Errc::shape, "derivatives do not match grid");
    ConformalImmersionSample c;
    c.grid = g;
    c.center = center;
    c.label = std::move(label);
    const std::size_t n = g.size();
    c.phi_x.resize(n);
    c.phi_y.resize(n);
    c.lambda.resize(n);
    c.e1.resize(n);
    c.e2.resize(n);
    c.normal.resize(n);
    double emax = 0.0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.K; ++j) {
            std::size_t p = static_cast<std::size_t>(i) * g.K + j;
            to_xy(g, i, j, phi_s[p], phi_t[p], c.phi_x[p], c.phi_y[p]);
            double e2l = 0.5 * (dot(c.phi_x[p], c.phi_x[p]) + dot(c.phi_y[p], c.phi_y[p]));
            emax = std::max(emax, e2l);
            c.lambda[p] = 0.5 * std::log(e2l);
        }
    for (std::size_t p = 0; p < n; ++p) {
        double e2l = std::exp(2.0 * c.lambda[p]);
        if (!(e2l > 1e-60 * emax)) fail(Errc::degenerate, "conformal factor below floor: immersion degenerates");
        double el = std::exp(-c.lambda[p]);
        c.e1[p] = mul(c.phi_x[p], el);
        c.e2[p] = mul(c.phi_y[p], el);
        Vec3 nn = cross(c.e1[p], c.e2[p]);
        c.normal[p] = mul(nn, 1.0 / len(nn));
        double re = 0.25 * (dot(c.phi_x[p], c.phi_x[p]) - dot(c.phi_y[p], c.phi_y[p]));
        double im = -0.5 * dot(c.phi_x[p], c.phi_y[p]);
        c.conformality_residual = std::max(c.conformality_residual, std::hypot(re, im) / e2l);
    }
    return c;
}

ConformalImmersionSample sample_from_positions(const WenteGrid& g, std::vector<Vec3> pos, cplx center,
                                               std::string label) {
    if (pos.size() != g.size()) fail(Errc::shape, "positions do not match grid");
    auto c = sample_from_derivatives(g, ds_vec(g, pos), dt_vec(g, pos), center, std::move(label));
    c.position = std::move(pos);
    return c;
}

ConformalImmersionSample monomial_sheet(int theta0, double rmin, double R, int M, int K) {
    if (theta0 < 1) fail(Errc::domain, "theta0 must be positive");
    auto g = WenteGrid::make_annulus(rmin, R, M, K);
    auto pos = positions(g, 0.0, [theta0](cplx z) {
        cplx w = std::pow(z, theta0);
        return Vec3{w.real(), w.imag(), 0.0};
    });
    return sample_from_positions(g, std::move(pos), 0.0, "monomial");
}

ConformalImmersionSample perturbed_graph(int theta0, double eps, double rmin, double R, int M, int K) {
    if (theta0 < 1) fail(Errc::domain, "theta0 must be positive");
    auto g = WenteGrid::make_annulus(rmin, R, M, K);
    auto pos = positions(g, 0.0, [theta0, eps](cplx z) {
        cplx w = std::pow(z, theta0);
        return Vec3{w.real(), w.imag(), eps * std::pow(z, theta0 + 1).real()};
    });
    return sample_from_positions(g, std::move(pos), 0.0, "perturbed-graph");
}

ConformalImmersionSample sphere_patch(double rmin, double R, int M, int K) {
    auto g = WenteGrid::make_annulus(rmin, R, M, K);
    auto pos = positions(g, 0.0, [](cplx z) {
        double q = std::norm(z);
        return Vec3{2.0 * z.real() / (1.0 + q), 2.0 * z.imag() / (1.0 + q), (q - 1.0) / (1.0 + q)};
    });
    return sample_from_positions(g, std::move(pos), 0.0, "sphere");
}

ConformalImmersionSample random_minimal_graph(std::uint64_t seed, double rmin, double R, int M, int K) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    // |g| <= 0.4 on |z| <= R keeps the Gauss map in one hemisphere
    std::vector<cplx> gc(4);
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
        gc[k] = cplx(N(rng), N(rng));
        s += std::abs(gc[k]) * std::pow(R, k);
    }
    for (auto& a : gc) a *= 0.4 / s;
    Polynomial gp(gc);
    Polynomial one({1.0});
    Polynomial g2 = gp * gp;
    std::array<Polynomial, 3> f = {one - g2, (one + g2) * cplx(0.0, 1.0), gp * cplx(2.0)};
    std::array<Polynomial, 3> F;
    for (int a = 0; a < 3; ++a) {
        std::vector<cplx> c(f[a].c.size() + 1, 0.0);
        for (std::size_t k = 0; k < f[a].c.size(); ++k) c[k + 1] = f[a].c[k] / static_cast<double>(k + 1);
        F[a] = Polynomial(c);
    }
    auto grid = WenteGrid::make_annulus(rmin, R, M, K);
    auto pos = positions(grid, 0.0, [&F](cplx z) { return Vec3{F[0].eval(z).real(), F[1].eval(z).real(), F[2].eval(z).real()}; });
    return sample_from_positions(grid, std::move(pos), 0.0, "random-minimal-graph");
}

ConformalImmersionSample load_sample_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io, "cannot open " + path);
    struct Row {
        double r, t;
        Vec3 p;
    };
    std::vector<Row> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        Row r;
        if (!(ss >> r.r >> r.t >> r.p[0] >> r.p[1] >> r.p[2])) {
            if (rows.empty() && lineno == 1) continue;  // header
            fail(Errc::io, path + ":" + std::to_string(lineno) + ": expected r,theta,x,y,z");
        }
        rows.push_back(r);
    }
    if (rows.empty()) fail(Errc::io, path + ": no data rows");
    std::vector<double> rs, ts;
    for (const auto& r : rows) {
        rs.push_back(r.r);
        ts.push_back(r.t);
    }
    auto uniq = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        std::vector<double> u;
        for (double x : v)
            if (u.empty() || std::abs(x - u.back()) > 1e-9 * (1.0 + std::abs(x))) u.push_back(x);
        return u;
    };
    auto ur = uniq(rs), ut = uniq(ts);
    int M = static_cast<int>(ur.size()) - 1, K = static_cast<int>(ut.size());
    if (M < 2 || K < 4 || static_cast<std::size_t>((M + 1) * K) != rows.size())
        fail(Errc::shape, path + ": rows do not form a full log-polar grid");
    auto g = WenteGrid::make_annulus(ur.front(), ur.back(), M, K);
    for (int i = 0; i <= M; ++i)
        if (std::abs(g.radius(i) - ur[i]) > 1e-6 * ur[i]) fail(Errc::shape, path + ": radii are not log-spaced");
    for (int j = 0; j < K; ++j)
        if (std::abs(g.theta(j) - ut[j]) > 1e-6) fail(Errc::shape, path + ": angles are not 2 pi j / K");
    std::vector<Vec3> pos(g.size());
    for (const auto& r : rows) {
        int i = static_cast<int>(std::lower_bound(ur.begin(), ur.end(), r.r - 1e-9 * (1.0 + r.r)) - ur.begin());
        int j = static_cast<int>(std::lower_bound(ut.begin(), ut.end(), r.t - 1e-9 * (1.0 + std::abs(r.t))) - ut.begin());
        pos[static_cast<std::size_t>(i) * K + j] = r.p;
    }
    return sample_from_positions(g, std::move(pos), 0.0, path);
}

NeckDecomposition decompose(const ConformalImmersionSample& c, int measure_row) {
    const WenteGrid& g = c.grid;
    NeckDecomposition out;
    out.mu = DiskField{g, std::vector<double>(g.size(), 0.0)};
    for (int a = 0; a < 3; ++a) {
        DiskField e1{g, component(c.e1, a)}, e2{g, component(c.e2, a)};
        DiskField u = solve_poisson(g, jacobian(e1, e2));
        for (std::size_t p = 0; p < g.size(); ++p) out.mu.values[p] -= u.values[p];
        double E1 = dirichlet_energy(e1), E2 = dirichlet_energy(e2);
        out.frame_energy += 0.5 * (E1 + E2);
        out.wente_bound += std::sqrt(std::max(E1, 0.0) * std::max(E2, 0.0)) / (2.0 * kPi);
    }
    out.nu.resize(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) out.nu[p] = c.lambda[p] - out.mu.values[p];
    for (double v : out.mu.values) out.mu_sup = std::max(out.mu_sup, std::abs(v));

    auto dnu = ds_rows(g, out.nu);
    out.d_by_row.resize(g.rows());
    for (int i = 0; i < g.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < g.K; ++j) s += dnu[static_cast<std::size_t>(i) * g.K + j];
        out.d_by_row[i] = s / g.K;
    }
    out.measure_row = measure_row < 0 ? g.M / 2 : std::min(measure_row, g.M);
    out.d = out.d_by_row[out.measure_row];
    int lo = std::max(1, g.M / 8), hi = std::min(g.M - 1, g.M - g.M / 8);
    double mn = out.d_by_row[lo], mx = mn;
    for (int i = lo; i <= hi; ++i) {
        mn = std::min(mn, out.d_by_row[i]);
        mx = std::max(mx, out.d_by_row[i]);
    }
    out.d_spread = mx - mn;
    out.degree = static_cast<int>(std::lround(out.d));
    out.distance = std::abs(out.d - out.degree);
    out.integral = out.distance <= 0.2;

    auto lap = discrete_laplacian(DiskField{g, out.nu});
    for (int i = 2; i <= g.M - 2; ++i) {
        double r2 = g.radius(i) * g.radius(i);
        for (int j = 0; j < g.K; ++j)
            out.nu_harmonic_residual = std::max(out.nu_harmonic_residual, std::abs(lap[static_cast<std::size_t>(i) * g.K + j]) * r2);
    }
    return out;
}

RotationCheck rotation_field_check(const ConformalImmersionSample& c, const std::vector<Vec3>& f1,
                                   const std::vector<Vec3>& f2) {
    const WenteGrid& g = c.grid;
    if (f1.size() != g.size() || f2.size() != g.size()) fail(Errc::shape, "frame does not match grid");
    for (std::size_t p = 0; p < g.size(); ++p)
        if (std::abs(dot(f1[p], c.normal[p])) > 1e-6 || std::abs(dot(f2[p], c.normal[p])) > 1e-6)
            fail(Errc::precondition, "frames span different tangent planes");
    // e1 = cos t f1 + sin t f2
    std::vector<double> ang(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) ang[p] = std::atan2(dot(c.e1[p], f2[p]), dot(c.e1[p], f1[p]));

    RotationCheck rc;
    int mid = g.M / 2;
    double acc = 0.0;
    for (int j = 0; j < g.K; ++j) {
        std::size_t p = static_cast<std::size_t>(mid) * g.K + j, q = static_cast<std::size_t>(mid) * g.K + (j + 1) % g.K;
        acc += wrap(ang[q] - ang[p]);
    }
    rc.winding_raw = acc / (2.0 * kPi);
    rc.winding = static_cast<int>(std::lround(rc.winding_raw));

    // d(angle) from wrapped increments so the multivalued angle never enters a derivative
    const double h = g.h(), dt = 2.0 * kPi / g.K;
    auto nd = decompose(c);
    auto dnu_s = ds_rows(g, nd.nu);
    auto dnu_t = dtheta(g, nd.nu);
    // rows next to the boundary see the one-sided differences of the positions
    for (int i = 2; i <= g.M - 2; ++i) {
        for (int j = 0; j < g.K; ++j) {
            std::size_t p = static_cast<std::size_t>(i) * g.K + j;
            auto A = [&](int ii, int jj) { return ang[static_cast<std::size_t>(ii) * g.K + ((jj + g.K) % g.K)]; };
            double as = wrap(A(i + 1, j) - A(i - 1, j)) / (2.0 * h);
            double at = wrap(A(i, j + 1) - A(i, j - 1)) / (2.0 * dt);
            // *d nu = -nu_theta ds + nu_s dtheta
            double rs = -dnu_t[p] - as, rt = dnu_s[p] - at;
            rc.identity_residual = std::max(rc.identity_residual, std::hypot(rs, rt));
        }
    }
    return rc;
}

std::pair<std::vector<Vec3>, std::vector<Vec3>> cartesian_frame(const ConformalImmersionSample& c) {
    return {std::vector<Vec3>(c.size(), Vec3{1.0, 0.0, 0.0}), std::vector<Vec3>(c.size(), Vec3{0.0, 1.0, 0.0})};
}

double gauss_identity_check(const ConformalImmersionSample& c) {
    const WenteGrid& g = c.grid;
    auto ns = ds_vec(g, c.normal), nt = dt_vec(g, c.normal);
    // Laplacian of phi from its Cartesian derivatives: d_x phi_x + d_y phi_y
    auto xs = ds_vec(g, c.phi_x), xt = dt_vec(g, c.phi_x);
    auto ys = ds_vec(g, c.phi_y), yt = dt_vec(g, c.phi_y);
    double worst = 0.0;
    for (int i = 1; i < g.M; ++i)
        for (int j = 0; j < g.K; ++j) {
            std::size_t p = static_cast<std::size_t>(i) * g.K + j;
            Vec3 nx, ny, xx, xy, yx, yy;
            to_xy(g, i, j, ns[p], nt[p], nx, ny);
            to_xy(g, i, j, xs[p], xt[p], xx, xy);
            to_xy(g, i, j, ys[p], yt[p], yx, yy);
            Vec3 lap = add(xx, yy);
            double H = 0.5 * std::exp(-2.0 * c.lambda[p]) * dot(lap, c.normal[p]);
            const Vec3& n = c.normal[p];
            // grad^perp n = (d_y n, -d_x n)
            Vec3 dx = add(sub(nx, cross(n, ny)), mul(c.phi_x[p], 2.0 * H));
            Vec3 dy = add(sub(ny, cross(n, mul(nx, -1.0))), mul(c.phi_y[p], 2.0 * H));
            worst = std::max({worst, len(dx), len(dy)});
        }
    return worst;
}

MultiDiskSample holomorphic_multi_disk(const RationalMap& dF, const std::vector<Hole>& holes, int M, int K) {
    if (holes.empty()) fail(Errc::domain, "at least one hole");
    for (std::size_t a = 0; a < holes.size(); ++a) {
        const Hole& h = holes[a];
        if (!(h.radius > 0.0) || std::abs(h.center) + h.radius >= 1.0) fail(Errc::geometry, "hole must lie inside the unit disk");
        for (std::size_t b = 0; b < a; ++b)
            if (std::abs(h.center - holes[b].center) <= h.radius + holes[b].radius) fail(Errc::geometry, "holes overlap");
    }
    // the singular set of the sheet must sit inside the holes
    auto inside = [&](cplx z) {
        return std::any_of(holes.begin(), holes.end(), [z](const Hole& h) { return std::abs(z - h.center) < h.radius; });
    };
    for (cplx z : roots(dF.num))
        if (std::abs(z) < 1.0 && !inside(z)) fail(Errc::geometry, "zero of the sheet derivative outside the holes");
    for (cplx z : dF.poles())
        if (std::abs(z) < 1.0 && !inside(z)) fail(Errc::geometry, "pole of the sheet derivative outside the holes");

    auto sheet = [&](const WenteGrid& g, cplx center, const std::string& label) {
        std::vector<Vec3> ps(g.size()), pt(g.size());
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.K; ++j) {
                cplx e = std::polar(g.radius(i), g.theta(j));
                cplx f = dF.eval(center + e);
                // phi_s = Re/Im(F' z_s) with z_s = e, z_theta = i e
                cplx a = f * e, b = f * e * cplx(0.0, 1.0);
                std::size_t p = static_cast<std::size_t>(i) * g.K + j;
                ps[p] = {a.real(), a.imag(), 0.0};
                pt[p] = {b.real(), b.imag(), 0.0};
            }
        return sample_from_derivatives(g, ps, pt, center, label);
    };

    MultiDiskSample s;
    s.holes = holes;
    double reach = 0.0;
    for (std::size_t a = 0; a < holes.size(); ++a) {
        const Hole& h = holes[a];
        double room = 1.0 - std::abs(h.center);
        for (std::size_t b = 0; b < holes.size(); ++b)
            if (b != a) room = std::min(room, std::abs(h.center - holes[b].center) - holes[b].radius);
        double outer = h.radius + 0.5 * (room - h.radius);
        reach = std::max(reach, std::abs(h.center) + h.radius);
        s.around.push_back(sheet(WenteGrid::make_annulus(h.radius, outer, M, K), h.center, "hole-" + std::to_string(a)));
    }
    double rin = reach + 0.5 * (1.0 - reach);
    s.outer = sheet(WenteGrid::make_annulus(rin, 1.0, M, K), 0.0, "outer");
    return s;
}

MultiDiskResult multi_disk_decompose(const MultiDiskSample& s) {
    MultiDiskResult r;
    for (std::size_t a = 0; a < s.around.size(); ++a) {
        auto d = decompose(s.around[a]);
        r.flux.push_back(d.d);
        r.degrees.push_back(d.degree);
        r.total += d.degree;
        if (!d.integral) {
            r.integral = false;
            r.diagnostics.push_back("hole " + std::to_string(a) + ": flux " + std::to_string(d.d) + " is not near an integer");
        }
    }
    auto o = decompose(s.outer);
    r.outer_flux = o.d;
    r.outer_degree = o.degree;
    if (!o.integral) {
        r.integral = false;
        r.diagnostics.push_back("outer boundary: flux " + std::to_string(o.d) + " is not near an integer");
    }
    r.consistent = r.integral && r.total == r.outer_degree;
    return r;
}

}  // namespace bw
