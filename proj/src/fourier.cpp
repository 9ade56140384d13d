#include "bw/fourier.hpp"

#include <cstring>
#include <mutex>

#include <fftw3.h>

namespace bw {

namespace {
// The FFTW planner is not reentrant.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct Fourier::Impl {
    fftw_complex* cin = nullptr;
    fftw_complex* cout = nullptr;
    double* rbuf = nullptr;
    fftw_plan fwd = nullptr, bwd = nullptr, pr2c = nullptr, pc2r = nullptr;
};

Fourier::Fourier(int n) : n_(n), impl_(std::make_unique<Impl>()) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    impl_->cin = fftw_alloc_complex(n);
    impl_->cout = fftw_alloc_complex(n);
    impl_->rbuf = fftw_alloc_real(n);
    impl_->fwd = fftw_plan_dft_1d(n, impl_->cin, impl_->cout, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_1d(n, impl_->cin, impl_->cout, FFTW_BACKWARD, FFTW_ESTIMATE);
    impl_->pr2c = fftw_plan_dft_r2c_1d(n, impl_->rbuf, impl_->cout, FFTW_ESTIMATE);
    impl_->pc2r = fftw_plan_dft_c2r_1d(n, impl_->cin, impl_->rbuf, FFTW_ESTIMATE);
}

Fourier::~Fourier() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(impl_->fwd);
    fftw_destroy_plan(impl_->bwd);
    fftw_destroy_plan(impl_->pr2c);
    fftw_destroy_plan(impl_->pc2r);
    fftw_free(impl_->cin);
    fftw_free(impl_->cout);
    fftw_free(impl_->rbuf);
}

void Fourier::backward(const std::complex<double>* in, std::complex<double>* out) {
    std::memcpy(impl_->cin, in, sizeof(fftw_complex) * n_);
    fftw_execute(impl_->bwd);
    std::memcpy(static_cast<void*>(out), impl_->cout, sizeof(fftw_complex) * n_);
}

void Fourier::forward(const std::complex<double>* in, std::complex<double>* out) {
    std::memcpy(impl_->cin, in, sizeof(fftw_complex) * n_);
    fftw_execute(impl_->fwd);
    std::memcpy(static_cast<void*>(out), impl_->cout, sizeof(fftw_complex) * n_);
}

void Fourier::r2c(const double* in, std::complex<double>* out) {
    std::memcpy(impl_->rbuf, in, sizeof(double) * n_);
    fftw_execute(impl_->pr2c);
    std::memcpy(static_cast<void*>(out), impl_->cout, sizeof(fftw_complex) * (n_ / 2 + 1));
}

void Fourier::c2r(const std::complex<double>* in, double* out) {
    // c2r destroys its input, so work on the private copy
    std::memcpy(impl_->cin, in, sizeof(fftw_complex) * (n_ / 2 + 1));
    fftw_execute(impl_->pc2r);
    std::memcpy(out, impl_->rbuf, sizeof(double) * n_);
}

}  // namespace bw
