#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bw/kernels.hpp"

namespace k = bw::kernels;

namespace {

std::vector<double> randv(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> U(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = U(rng);
    return v;
}

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-13 * std::max(1.0, scale); }

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("avx2 reductions agree with the scalar path") {
    if (!k::avx2_available()) {
        MESSAGE("no AVX2 on this machine; dispatch falls back to scalar");
        k::force_isa(k::Isa::avx2);
        CHECK(k::active_isa() == k::Isa::scalar);
        k::reset_isa();
        return;
    }
    std::mt19937_64 rng(7);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 1000u, 4099u}) {
        auto v = randv(rng, n), w = randv(rng, n, 0.0, 2.0), b = randv(rng, n);
        double s1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) s1 += std::abs(v[i] * w[i]) + std::abs(v[i] * v[i] * w[i]);
        CHECK(close(k::scalar::weighted_sum(v.data(), w.data(), n), k::avx2::weighted_sum(v.data(), w.data(), n), s1));
        CHECK(close(k::scalar::weighted_sum_sq(v.data(), w.data(), n), k::avx2::weighted_sum_sq(v.data(), w.data(), n), s1));
        CHECK(close(k::scalar::weighted_dot(v.data(), b.data(), w.data(), n),
                    k::avx2::weighted_dot(v.data(), b.data(), w.data(), n), s1 * 2));
        CHECK(k::scalar::max_abs(v.data(), n) == k::avx2::max_abs(v.data(), n));

        std::vector<std::complex<double>> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = {v[i], b[i]};
        std::vector<double> o1(n), o2(n);
        k::scalar::abs_scaled(z.data(), 2.5, o1.data(), n);
        k::avx2::abs_scaled(z.data(), 2.5, o2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(o1[i], o2[i], o1[i]));
    }
}

TEST_CASE("avx2 horner agrees with the scalar path") {
    if (!k::avx2_available()) return;
    std::mt19937_64 rng(11);
    for (std::size_t nc : {1u, 2u, 5u, 17u, 33u}) {
        for (std::size_t np : {1u, 3u, 4u, 13u, 256u}) {
            auto cr = randv(rng, nc), ci = randv(rng, nc);
            std::vector<std::complex<double>> c(nc);
            for (std::size_t i = 0; i < nc; ++i) c[i] = {cr[i], ci[i]};
            auto zr = randv(rng, np, -1.1, 1.1), zi = randv(rng, np, -1.1, 1.1);
            std::vector<double> ar(np), ai(np), br(np), bi(np);
            k::scalar::horner(c.data(), nc, zr.data(), zi.data(), ar.data(), ai.data(), np);
            k::avx2::horner(c.data(), nc, zr.data(), zi.data(), br.data(), bi.data(), np);
            for (std::size_t i = 0; i < np; ++i) {
                double s = std::abs(std::complex<double>(ar[i], ai[i]));
                CHECK(close(ar[i], br[i], 10 * s + 1));
                CHECK(close(ai[i], bi[i], 10 * s + 1));
            }
        }
    }
}

TEST_CASE("scalar horner matches direct evaluation") {
    std::vector<std::complex<double>> c = {{1, 2}, {-3, 0.5}, {0.25, -1}};
    double zr = 0.3, zi = -0.7, outr, outi;
    k::horner(c.data(), c.size(), &zr, &zi, &outr, &outi, 1);
    std::complex<double> z(zr, zi), ref = c[0] + c[1] * z + c[2] * z * z;
    CHECK(outr == doctest::Approx(ref.real()).epsilon(1e-14));
    CHECK(outi == doctest::Approx(ref.imag()).epsilon(1e-14));
}

TEST_CASE("forcing the isa switches the dispatched path") {
    k::force_isa(k::Isa::scalar);
    CHECK(k::active_isa() == k::Isa::scalar);
    k::reset_isa();
    CHECK(k::active_isa() == (k::avx2_available() ? k::Isa::avx2 : k::Isa::scalar));
}

}
