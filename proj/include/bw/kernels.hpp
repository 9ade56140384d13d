#pragma once

// Data-parallel reductions and polynomial evaluation.
// Each kernel has a scalar reference path and an AVX2 path; the active path is
// picked at runtime from CPUID and can be forced for equivalence testing.

#include <complex>
#include <cstddef>

namespace bw::kernels {

enum class Isa { scalar, avx2 };

bool avx2_available();
Isa active_isa();
// Forcing avx2 on a machine without it falls back to scalar.
void force_isa(Isa isa);
void reset_isa();

// sum_i w[i] * v[i]
double weighted_sum(const double* v, const double* w, std::size_t n);
// sum_i w[i] * v[i]^2
double weighted_sum_sq(const double* v, const double* w, std::size_t n);
// sum_i a[i] * b[i] * w[i]
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n);
// max_i |v[i]|
double max_abs(const double* v, std::size_t n);
// out[i] = |z[i]| * scale
void abs_scaled(const std::complex<double>* z, double scale, double* out, std::size_t n);

// Evaluates p(z) = sum_{j<ncoef} c[j] z^j at npts points given as split re/im
// arrays. Horner across coefficients, vectorized across points.
void horner(const std::complex<double>* c, std::size_t ncoef,
            const double* zr, const double* zi,
            double* outr, double* outi, std::size_t npts);

namespace scalar {
double weighted_sum(const double* v, const double* w, std::size_t n);
double weighted_sum_sq(const double* v, const double* w, std::size_t n);
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n);
double max_abs(const double* v, std::size_t n);
void abs_scaled(const std::complex<double>* z, double scale, double* out, std::size_t n);
void horner(const std::complex<double>* c, std::size_t ncoef,
            const double* zr, const double* zi,
            double* outr, double* outi, std::size_t npts);
}  // namespace scalar

namespace avx2 {
double weighted_sum(const double* v, const double* w, std::size_t n);
double weighted_sum_sq(const double* v, const double* w, std::size_t n);
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n);
double max_abs(const double* v, std::size_t n);
void abs_scaled(const std::complex<double>* z, double scale, double* out, std::size_t n);
void horner(const std::complex<double>* c, std::size_t ncoef,
            const double* zr, const double* zi,
            double* outr, double* outi, std::size_t npts);
}  // namespace avx2

}  // namespace bw::kernels
