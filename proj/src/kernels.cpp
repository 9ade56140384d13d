#include "bw/kernels.hpp"

#include <atomic>
#include <cmath>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define BW_X86 1
#else
#define BW_X86 0
#endif

namespace bw::kernels {

namespace {

bool detect_avx2() {
#if BW_X86
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<int> g_forced{-1};

bool use_avx2() {
    static const bool have = detect_avx2();
    int f = g_forced.load(std::memory_order_relaxed);
    if (f < 0) return have;
    return have && f == static_cast<int>(Isa::avx2);
}

}  // namespace

bool avx2_available() {
    static const bool have = detect_avx2();
    return have;
}

Isa active_isa() { return use_avx2() ? Isa::avx2 : Isa::scalar; }
void force_isa(Isa isa) { g_forced.store(static_cast<int>(isa)); }
void reset_isa() { g_forced.store(-1); }

namespace scalar {

double weighted_sum(const double* v, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i];
    return s;
}

double weighted_sum_sq(const double* v, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i] * v[i];
    return s;
}

double weighted_dot(const double* a, const double* b, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * w[i];
    return s;
}

double max_abs(const double* v, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(v[i]));
    return m;
}

void abs_scaled(const std::complex<double>* z, double scale, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double x = z[i].real(), y = z[i].imag();
        out[i] = std::sqrt(x * x + y * y) * scale;
    }
}

void horner(const std::complex<double>* c, std::size_t ncoef,
            const double* zr, const double* zi,
            double* outr, double* outi, std::size_t npts) {
    for (std::size_t p = 0; p < npts; ++p) {
        double ar = 0.0, ai = 0.0;
        for (std::size_t j = ncoef; j-- > 0;) {
            double tr = ar * zr[p] - ai * zi[p] + c[j].real();
            double ti = ar * zi[p] + ai * zr[p] + c[j].imag();
            ar = tr;
            ai = ti;
        }
        outr[p] = ar;
        outi[p] = ai;
    }
}

}  // namespace scalar

namespace avx2 {

#if BW_X86

namespace {
__attribute__((target("avx2,fma"))) inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}
}  // namespace

__attribute__((target("avx2,fma")))
double weighted_sum(const double* v, const double* w, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(v + i + 4), acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += w[i] * v[i];
    return s;
}

__attribute__((target("avx2,fma")))
double weighted_sum_sq(const double* v, const double* w, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d a = _mm256_loadu_pd(v + i), b = _mm256_loadu_pd(v + i + 4);
        acc0 = _mm256_fmadd_pd(_mm256_mul_pd(a, a), _mm256_loadu_pd(w + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_mul_pd(b, b), _mm256_loadu_pd(w + i + 4), acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += w[i] * v[i] * v[i];
    return s;
}

__attribute__((target("avx2,fma")))
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        __m256d p1 = _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(p0, _mm256_loadu_pd(w + i), acc0);
        acc1 = _mm256_fmadd_pd(p1, _mm256_loadu_pd(w + i + 4), acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i] * w[i];
    return s;
}

__attribute__((target("avx2,fma")))
double max_abs(const double* v, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(v + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double r = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
    for (; i < n; ++i) r = std::fmax(r, std::fabs(v[i]));
    return r;
}

__attribute__((target("avx2,fma")))
void abs_scaled(const std::complex<double>* z, double scale, double* out, std::size_t n) {
    const __m256d s = _mm256_set1_pd(scale);
    const double* d = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(d + 2 * i), b = _mm256_loadu_pd(d + 2 * i + 4);
        // hadd gives [|z0|^2, |z2|^2, |z1|^2, |z3|^2]
        __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        h = _mm256_permute4x64_pd(h, 0xD8);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sqrt_pd(h), s));
    }
    if (i < n) scalar::abs_scaled(z + i, scale, out + i, n - i);
}

__attribute__((target("avx2,fma")))
void horner(const std::complex<double>* c, std::size_t ncoef,
            const double* zr, const double* zi,
            double* outr, double* outi, std::size_t npts) {
    std::size_t p = 0;
    for (; p + 4 <= npts; p += 4) {
        __m256d xr = _mm256_loadu_pd(zr + p), xi = _mm256_loadu_pd(zi + p);
        __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
        for (std::size_t j = ncoef; j-- > 0;) {
            __m256d cr = _mm256_set1_pd(c[j].real()), ci = _mm256_set1_pd(c[j].imag());
            // match the scalar operation order: (ar*xr - ai*xi) + cr
            __m256d tr = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(ar, xr), _mm256_mul_pd(ai, xi)), cr);
            __m256d ti = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ar, xi), _mm256_mul_pd(ai, xr)), ci);
            ar = tr;
            ai = ti;
        }
        _mm256_storeu_pd(outr + p, ar);
        _mm256_storeu_pd(outi + p, ai);
    }
    if (p < npts) scalar::horner(c, ncoef, zr + p, zi + p, outr + p, outi + p, npts - p);
}

#else

double weighted_sum(const double* v, const double* w, std::size_t n) { return scalar::weighted_sum(v, w, n); }
double weighted_sum_sq(const double* v, const double* w, std::size_t n) { return scalar::weighted_sum_sq(v, w, n); }
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n) { return scalar::weighted_dot(a, b, w, n); }
double max_abs(const double* v, std::size_t n) { return scalar::max_abs(v, n); }
void abs_scaled(const std::complex<double>* z, double scale, double* out, std::size_t n) { scalar::abs_scaled(z, scale, out, n); }
void horner(const std::complex<double>* c, std::size_t ncoef, const double* zr, const double* zi,
            double* outr, double* outi, std::size_t npts) { scalar::horner(c, ncoef, zr, zi, outr, outi, npts); }

#endif

}  // namespace avx2

double weighted_sum(const double* v, const double* w, std::size_t n) {
    return use_avx2() ? avx2::weighted_sum(v, w, n) : scalar::weighted_sum(v, w, n);
}
double weighted_sum_sq(const double* v, const double* w, std::size_t n) {
    return use_avx2() ? avx2::weighted_sum_sq(v, w, n) : scalar::weighted_sum_sq(v, w, n);
}
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n) {
    return use_avx2() ? avx2::weighted_dot(a, b, w, n) : scalar::weighted_dot(a, b, w, n);
}
double max_abs(const double* v, std::size_t n) {
    return use_avx2() ? avx2::max_abs(v, n) : scalar::max_abs(v, n);
}
void abs_scaled(const std::complex<double>* z, double scale, double* out, std::size_t n) {
    if (use_avx2()) avx2::abs_scaled(z, scale, out, n);
    else scalar::abs_scaled(z, scale, out, n);
}
void horner(const std::complex<double>* c, std::size_t ncoef,
            const double* zr, const double* zi,
            double* outr, double* outi, std::size_t npts) {
    if (use_avx2()) avx2::horner(c, ncoef, zr, zi, outr, outi, npts);
    else scalar::horner(c, ncoef, zr, zi, outr, outi, npts);
}

}  // namespace bw::kernels
