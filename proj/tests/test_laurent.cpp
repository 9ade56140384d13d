#include <doctest.h>

#include <cmath>
#include <random>

#include "bw/error.hpp"
#include "bw/laurent.hpp"

using namespace bw;

namespace {
constexpr double kPi = 3.14159265358979323846;

double grid_grad_l2(const LaurentField& u, const Annulus& a, int nr, int nt) {
    LogPolarGrid g(a.r, a.R, nr, nt);
    auto s = grad_abs_samples(u, g);
    double sum = 0.0;
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) sum += s[static_cast<std::size_t>(i) * nt + j] * s[static_cast<std::size_t>(i) * nt + j] * g.ring_area(i);
    return std::sqrt(sum);
}
}  // namespace

TEST_SUITE("laurent") {

TEST_CASE("pointwise evaluation follows the harmonic convention") {
    // u = 3 + 2 log|z| + Re(z^2) + Re(4/z)
    auto u = LaurentField::harmonic({{0, 3.0}, {2, 0.5}, {-1, 2.0}}, 2.0);
    cplx z(0.4, -0.3);
    double ref = 3.0 + 2.0 * std::log(std::abs(z)) + (z * z).real() + (4.0 / z).real();
    CHECK(u.value(z).real() == doctest::Approx(ref).epsilon(1e-14));
    // |grad u| = 2 |d_z u| against central differences
    double h = 1e-6;
    double ux = (u.value(z + h).real() - u.value(z - h).real()) / (2 * h);
    double uy = (u.value(z + cplx(0, h)).real() - u.value(z - cplx(0, h)).real()) / (2 * h);
    CHECK(u.grad_abs(z) == doctest::Approx(std::hypot(ux, uy)).epsilon(1e-8));
}

TEST_CASE("flux") {
    Annulus a(0.1, 2.0);
    CHECK(flux_integral(LaurentField::harmonic({}, 1.0), 1.0, a) == doctest::Approx(2 * kPi));
    CHECK(flux_integral(LaurentField::harmonic({{3, 0.5}}), 1.0, a) == 0.0);
    auto u = LaurentField::harmonic({{1, 0.1}, {-1, 1.0}}, 3.0);
    CHECK(flux_integral(u, 0.5, a) == doctest::Approx(6 * kPi));
    for (double rho : {0.2, 0.7, 1.9}) CHECK(std::abs(flux_by_quadrature(u, rho, 4096) - 6 * kPi) < 1e-10);
    CHECK_THROWS_AS(flux_integral(u, 3.0, a), Error);
}

TEST_CASE("Dirichlet energy from the series") {
    Annulus a(0.1, 1.0);
    cplx a1(0.7, -0.2);
    auto u = LaurentField::harmonic({{1, a1 / 2.0}});
    double e = grad_l2_norm(u, a);
    CHECK(e * e == doctest::Approx(kPi * std::norm(a1) * (1.0 - 0.01)).epsilon(1e-12));
    CHECK(e == doctest::Approx(grid_grad_l2(u, a, 256, 64)).epsilon(1e-6));
    CHECK(grad_l2_norm(LaurentField::harmonic({{0, 5.0}}), a) == 0.0);
    double d = 1.5;
    double el = grad_l2_norm(LaurentField::harmonic({}, d), a);
    CHECK(el * el == doctest::Approx(2 * kPi * d * d * std::log(10.0)).epsilon(1e-12));

    std::mt19937_64 rng(9);
    for (int s = 0; s < 5; ++s) {
        auto v = random_harmonic(rng, 16, a, false);
        // midpoint rule in log r is second order: one Richardson step
        double q1 = grid_grad_l2(v, a, 512, 128), q2 = grid_grad_l2(v, a, 1024, 128);
        double q = std::sqrt((4.0 * q2 * q2 - q1 * q1) / 3.0);
        CHECK(grad_l2_norm(v, a) == doctest::Approx(q).epsilon(1e-6));
    }
}

TEST_CASE("shrunk L^{2,1} bound") {
    Annulus a(0.01, 1.0);
    auto u = LaurentField::harmonic({{1, 0.5}});  // Re z
    auto b = verify_shrink_l21(u, a, 0.25, GridSpec{256, 256});
    double area = kPi * (0.0625 - 0.04 * 0.04);
    CHECK(b.lhs == doctest::Approx(4.0 * std::sqrt(area)).epsilon(1e-3));
    CHECK(b.lhs / grad_l2_norm(u, a) <= 32.0 * std::sqrt(2.0 / 15.0) / 3.0);
    CHECK(b.bound == doctest::Approx(shrink_l21_constant(0.25) * grad_l2_norm(u, a)));
    auto z = verify_shrink_l21(LaurentField::harmonic({}), a, 0.25, GridSpec{32, 32});
    CHECK(z.lhs == 0.0);
    CHECK(z.bound == 0.0);
    CHECK_THROWS_AS(verify_shrink_l21(LaurentField::harmonic({}, 1.0), a, 0.25), Error);
}

TEST_CASE("Hessian L^1 bound") {
    Annulus a(1e-3, 1.0);
    auto lin = verify_hessian_l1(LaurentField::harmonic({{1, 0.5}}), a, 0.25, GridSpec{64, 64});
    CHECK(lin.lhs == doctest::Approx(0.0));
    CHECK(lin.bound > 0.0);
    // Re z^2: |grad^2 u| = 4 |d_z^2 u| = 4, so lhs = 4 * area of the shrunk annulus
    auto q = verify_hessian_l1(LaurentField::harmonic({{2, 0.5}}), a, 0.25, GridSpec{128, 128});
    CHECK(q.lhs == doctest::Approx(4.0 * kPi * (0.0625 - 0.004 * 0.004)).epsilon(1e-6));
    CHECK(q.lhs <= q.bound);
    std::mt19937_64 rng(21);
    for (int s = 0; s < 50; ++s) {
        auto v = random_harmonic(rng, 16, a, true);
        auto r = verify_hessian_l1(v, a, 0.25, GridSpec{128, 128});
        CHECK(r.lhs <= r.bound * 1.02);
    }
}

TEST_CASE("L^2 from weak ratio for a constant gradient") {
    Annulus a(0.01, 1.0);
    double alpha = 0.25;
    double ratio = verify_l2_from_weak(LaurentField::harmonic({{1, 0.5}}), a, alpha, GridSpec{256, 256});
    // constant |grad u| = 1: ||1||_2 = sqrt(area'), weak maximal norm of 1 = sqrt(area)
    double inner = kPi * (alpha * alpha - std::pow(a.r / alpha, 2)), outer = kPi * (1.0 - 1e-4);
    CHECK(ratio == doctest::Approx(std::sqrt(inner / outer)).epsilon(1e-3));
}

TEST_CASE("radial average") {
    auto rad = LaurentField::harmonic({{0, 2.0}}, 0.7);
    auto ra = radial_average(rad);
    CHECK(ra.coeffs == rad.coeffs);
    CHECK(ra.log_coefficient == rad.log_coefficient);
    auto x = radial_average(LaurentField::harmonic({{1, 0.5}}));
    CHECK(x.value(cplx(0.3, 0.4)).real() == 0.0);
    LogPolarGrid g(0.1, 1.0, 8, 16);
    auto u = LaurentField::harmonic({{0, 1.0}, {1, 0.5}, {-2, cplx(0.1, 0.2)}}, 0.3);
    auto avg = radial_average_samples(value_samples(u, g), g);
    auto exact = value_samples(radial_average(u), g);
    for (std::size_t i = 0; i < avg.size(); ++i) CHECK(avg[i] == doctest::Approx(exact[i]).epsilon(1e-13));
}

TEST_CASE("oscillation ratio") {
    Annulus a(1.0, 4.0);
    auto c = oscillation_bound_check(LaurentField::harmonic({{0, 3.0}}), a, GridSpec{32, 64});
    CHECK(c.osc == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.norm == doctest::Approx(0.0).epsilon(1e-12));
    auto l1 = oscillation_bound_check(LaurentField::harmonic({}, 1.0), a, GridSpec{128, 64});
    auto l2 = oscillation_bound_check(LaurentField::harmonic({}, 1.0), Annulus(10.0, 40.0), GridSpec{128, 64});
    CHECK(std::isfinite(l1.ratio()));
    CHECK(l1.ratio() == doctest::Approx(l2.ratio()).epsilon(1e-10));
    CHECK_THROWS_AS(oscillation_bound_check(LaurentField::harmonic({}, 1.0), Annulus(1.0, 1.5)), Error);
}

TEST_CASE("single-disk Schwarz envelope") {
    Annulus a(1e-3, 1.0);
    auto c = LaurentField::holo({{0, cplx(0.3, 0.4)}});
    auto rc = schwarz_envelope(c, a, 0.5);
    CHECK(rc.worst_slack >= 0.5 - 1e-12);
    auto z = LaurentField::holo({{1, 1.0}});
    auto rz = schwarz_envelope(z, a, a.r);
    CHECK(rz.worst_slack >= 0.0);
    CHECK_THROWS_AS(schwarz_envelope(z, a, 0.5 * a.r), Error);
    CHECK_THROWS_AS(schwarz_envelope(z, Annulus(0.3, 1.0), 0.3), Error);
    // classical Schwarz: u(0) = 0 holomorphic on the disk stays under (1/R) sup |u| |z|
    auto s = LaurentField::holo({{1, 0.3}, {2, cplx(0, 0.2)}, {5, 0.1}});
    double sup = boundary_sup(s, 0.0, 1.0);
    for (double t : {0.1, 0.5, 0.9})
        for (int j = 0; j < 16; ++j) {
            cplx p = std::polar(t, 2 * kPi * j / 16);
            CHECK(std::abs(s.value(p)) <= sup * t + 1e-12);
        }
}

TEST_CASE("multi-disk Schwarz envelope") {
    MultiPoleField zero;
    zero.regular = {0.0};
    std::vector<Disk> two = {{cplx(-0.3, 0), 0.05, 0.1}, {cplx(0.3, 0), 0.05, 0.1}};
    auto r0 = schwarz_envelope_multi(zero, two, 1.0, 120);
    CHECK(r0.worst_slack > 0.0);
    CHECK(r0.worst_slack == doctest::Approx(multi_envelope_bound(r0.worst_point, two, 1.0, 0.0)));
    std::vector<Disk> overlap = {{cplx(0, 0), 0.1, 1.0}, {cplx(0.15, 0), 0.1, 1.0}};
    CHECK_THROWS_AS(check_multi_disks(overlap, 1.0), Error);
    CHECK_THROWS_AS(check_multi_disks({{cplx(0.8, 0), 0.1, 1.0}}, 1.0), Error);
    MultiPoleField f;
    f.regular = {0.2, 0.5};
    f.poles.push_back({cplx(0.1, 0.1), {cplx(0.01, 0.0)}});
    double sup = 0.0;
    for (int j = 0; j < 4096; ++j) sup = std::max(sup, std::abs(f.value(cplx(0.1, 0.1) + std::polar(0.05, 2 * kPi * j / 4096))));
    auto r1 = schwarz_envelope_multi(f, {{cplx(0.1, 0.1), 0.05, sup * (1 + 1e-13)}}, 1.0, 120);
    CHECK(r1.worst_slack >= -1e-8);
}

TEST_CASE("truncation limit") {
    auto u = LaurentField::harmonic({{70, 1.0}});
    CHECK_THROWS_AS(u.check_truncation(), Error);
}

}
