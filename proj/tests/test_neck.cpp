#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "bw/error.hpp"
#include "bw/neck.hpp"

using namespace bw;

namespace {

Vec3 rotate(const Vec3& a, const Vec3& b, double t) {
    return {std::cos(t) * a[0] + std::sin(t) * b[0], std::cos(t) * a[1] + std::sin(t) * b[1],
            std::cos(t) * a[2] + std::sin(t) * b[2]};
}

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::usage;  // not thrown
}

}  // namespace

TEST_SUITE("neck") {

TEST_CASE("monomial sheets have d = theta0 - 1") {
    for (int t : {1, 2, 3, 5}) {
        auto s = monomial_sheet(t, 1e-3, 1.0, 128, 256);
        auto d = decompose(s);
        CAPTURE(t);
        CHECK(d.degree == t - 1);
        CHECK(std::abs(d.d - (t - 1)) < 1e-4);
        CHECK(d.integral);
        CHECK(d.mu_sup < 1e-4);
        CHECK(d.d_spread < 1e-6);
    }
}

TEST_CASE("monomial conformal factor") {
    auto s = monomial_sheet(3, 1e-2, 1.0, 64, 128);
    for (int i : {5, 30, 60}) {
        double rho = s.grid.radius(i);
        // e^lambda = 3 rho^2, up to the second-order radial differences
        CHECK(std::abs(s.lambda[static_cast<std::size_t>(i) * s.grid.K + 7] - 2.0 * std::log(rho) - std::log(3.0)) < 1e-2);
    }
}

TEST_CASE("perturbed graph rounds to theta0 - 1") {
    for (int t : {1, 2, 3}) {
        auto d = decompose(perturbed_graph(t, 0.05, 1e-3, 1.0, 128, 256));
        CHECK(std::abs(d.d - (t - 1)) <= 0.05);
        CHECK(d.degree == t - 1);
        CHECK(d.mu_sup <= d.wente_bound * 1.03);
    }
}

TEST_CASE("rotation fields") {
    // plane from exact derivatives: phi_s = z, phi_theta = i z
    auto pg = WenteGrid::make_annulus(1e-2, 1.0, 32, 64);
    std::vector<Vec3> ps(pg.size()), pt(pg.size());
    for (int i = 0; i <= pg.M; ++i)
        for (int j = 0; j < pg.K; ++j) {
            cplx z = std::polar(pg.radius(i), pg.theta(j));
            ps[static_cast<std::size_t>(i) * pg.K + j] = {z.real(), z.imag(), 0.0};
            pt[static_cast<std::size_t>(i) * pg.K + j] = {-z.imag(), z.real(), 0.0};
        }
    auto plane = sample_from_derivatives(pg, ps, pt);
    auto same = rotation_field_check(plane, plane.e1, plane.e2);
    CHECK(same.winding == 0);
    CHECK(same.identity_residual < 1e-10);
    std::vector<Vec3> f1(plane.size()), f2(plane.size());
    for (std::size_t p = 0; p < plane.size(); ++p) {
        f1[p] = rotate(plane.e1[p], plane.e2[p], 0.7);
        f2[p] = rotate(plane.e1[p], plane.e2[p], 0.7 + 1.5707963267948966);
    }
    CHECK(rotation_field_check(plane, f1, f2).winding == 0);

    double prev = 0.0;
    for (int M : {32, 64, 128}) {
        auto s = monomial_sheet(3, 1e-2, 1.0, M, 2 * M);
        auto [c1, c2] = cartesian_frame(s);
        auto r = rotation_field_check(s, c1, c2);
        CHECK(r.winding == 2);
        if (prev > 0.0) CHECK(prev / r.identity_residual > 3.0);
        prev = r.identity_residual;
    }
    auto bad = plane.e1;
    for (auto& v : bad) v = {0.0, 0.0, 1.0};
    CHECK(code_of([&] { rotation_field_check(plane, bad, plane.e2); }) == Errc::precondition);
}

TEST_CASE("Gauss map identity") {
    CHECK(gauss_identity_check(monomial_sheet(1, 1e-2, 1.0, 32, 64)) < 1e-10);
    double sp[2], rg[2];
    for (int i = 0; i < 2; ++i) {
        int M = 64 << i;
        sp[i] = gauss_identity_check(sphere_patch(0.1, 1.0, M, 2 * M));
        rg[i] = gauss_identity_check(random_minimal_graph(42, 0.1, 1.0, M, 2 * M));
    }
    CHECK(std::log2(sp[0] / sp[1]) > 1.8);
    CHECK(std::log2(rg[0] / rg[1]) > 1.8);
    CHECK(sp[1] < 1e-3);
    CHECK(rg[1] < 1e-3);
}

TEST_CASE("multi-disk degrees") {
    Hole a{cplx(-0.3, 0.0), 0.05}, b{cplx(0.3, 0.0), 0.05};
    // d phi = (z - .3)(z + .3) dz
    RationalMap p1 = RationalMap::from_poly(Polynomial({-0.09, 0.0, 1.0}));
    auto r1 = multi_disk_decompose(holomorphic_multi_disk(p1, {a, b}, 64, 128));
    CHECK(r1.degrees == std::vector<int>{1, 1});
    CHECK(r1.outer_degree == 2);
    CHECK(r1.consistent);
    // (z + .3)^2 / (z - .3)
    RationalMap p2(Polynomial({0.09, 0.6, 1.0}), Polynomial({-0.3, 1.0}));
    auto r2 = multi_disk_decompose(holomorphic_multi_disk(p2, {a, b}, 64, 128));
    CHECK(r2.degrees == std::vector<int>{2, -1});
    CHECK(r2.total == 1);
    CHECK(r2.outer_degree == 1);
    CHECK(r2.consistent);
    // one hole reduces to a single annulus
    RationalMap p3 = RationalMap::from_poly(Polynomial({0.0, 0.0, 1.0}));
    auto r3 = multi_disk_decompose(holomorphic_multi_disk(p3, {{cplx(0.0, 0.0), 0.05}}, 64, 128));
    CHECK(r3.degrees == std::vector<int>{2});
    CHECK(r3.outer_degree == 2);
    CHECK(code_of([&] { holomorphic_multi_disk(p1, {a}, 32, 64); }) == Errc::geometry);
}

TEST_CASE("CSV samples") {
    auto s = monomial_sheet(2, 1e-2, 1.0, 32, 64);
    std::string path = "neck_sample_test.csv";
    {
        std::ofstream out(path);
        out << "r,theta,x,y,z\n";
        out.precision(17);
        for (int i = 0; i <= s.grid.M; ++i)
            for (int j = 0; j < s.grid.K; ++j) {
                const Vec3& p = s.position[static_cast<std::size_t>(i) * s.grid.K + j];
                out << s.grid.radius(i) << ',' << s.grid.theta(j) << ',' << p[0] << ',' << p[1] << ',' << p[2] << '\n';
            }
    }
    auto c = load_sample_csv(path);
    CHECK(decompose(c).d == doctest::Approx(decompose(s).d).epsilon(1e-9));
    std::remove(path.c_str());
    CHECK(code_of([] { load_sample_csv("no_such_sample.csv"); }) == Errc::io);
}

TEST_CASE("degenerate immersion") {
    auto g = WenteGrid::make_annulus(0.1, 1.0, 8, 16);
    std::vector<Vec3> zero(g.size(), Vec3{0.0, 0.0, 0.0});
    CHECK(code_of([&] { sample_from_derivatives(g, zero, zero); }) == Errc::degenerate);
}

}
