#pragma once

// Thin FFTW wrapper for periodic transforms in the angular variable.
// Plans use FFTW_ESTIMATE so results are reproducible run to run.

#include <complex>
#include <memory>
#include <vector>

namespace bw {

class Fourier {
public:
    explicit Fourier(int n);
    ~Fourier();
    Fourier(const Fourier&) = delete;
    Fourier& operator=(const Fourier&) = delete;

    int size() const { return n_; }

    // out[j] = sum_k in[k] e^{+2 pi i jk/n}
    void backward(const std::complex<double>* in, std::complex<double>* out);
    // out[k] = sum_j in[j] e^{-2 pi i jk/n}  (unnormalized)
    void forward(const std::complex<double>* in, std::complex<double>* out);
    // real -> n/2+1 half spectrum, unnormalized
    void r2c(const double* in, std::complex<double>* out);
    // half spectrum -> real, unnormalized
    void c2r(const std::complex<double>* in, double* out);

private:
    struct Impl;
    int n_;
    std::unique_ptr<Impl> impl_;
};

// Index of signed mode k in an FFT buffer of length n.
inline int mode_index(int k, int n) { return ((k % n) + n) % n; }
// Signed mode stored at buffer index i.
inline int signed_mode(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace bw
